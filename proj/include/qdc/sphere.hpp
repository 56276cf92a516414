#pragma once

// The standard quantum 2-sphere realized inside the quantum SU(2)
// coordinate algebra: the unital *-subalgebra generated by
//
//   x+ = ba,  x- = cd,  y0 = bc,   with the shorthand  x0 = lambda_+ y0 + 1.
//
// Membership is a grading condition on normal monomials, so it is decidable
// exactly.  The restriction of the 3d calculus to this subalgebra is
// two-dimensional; this header verifies its structure: the generator
// differentials, the complete table of commutation relations between
// differentials and generators, and the module dependency criterion that
// characterizes when z+ d(x+) + z- d(x-) + z0 d(y0) vanishes.
//
// Two entries of the commutation table circulate with wrong coefficients
// (a flipped sign and a q^3 that should be q^-3).  The corrected forms are
// verified exact and the variants are checked to fail, so both facts are
// pinned by tests.

#include <string>
#include <vector>

#include <qdc/calculus.hpp>

namespace qdc {

struct SphereGenerators {
  Element xp, xm, y0, x0;
};

inline const SphereGenerators& sphere_generators() {
  static const SphereGenerators g = [] {
    SphereGenerators s;
    s.xp = Element::parse("b*a");
    s.xm = Element::parse("c*d");
    s.y0 = Element::parse("b*c");
    s.x0 = ScalarQ::lambda_plus() * s.y0 + Element::unit();
    return s;
  }();
  return g;
}

// Exact membership test: a normal monomial a^p b^m c^r lies in the
// subalgebra iff m = p + r, and b^m c^r d^s iff r = m + s.  Localized
// monomials never belong to it.
inline bool in_sphere(const Element& x) {
  for (const auto& [m, s] : x.terms()) {
    if (m.is_localized()) return false;
    if (m.d == 0) {
      if (m.b != m.a + m.c) return false;
    } else {
      if (m.c != m.b + m.d) return false;
    }
  }
  return true;
}

inline std::vector<CheckResult> verify_sphere_algebra() {
  std::vector<CheckResult> out;
  const auto& G = sphere_generators();
  const ScalarQ q = ScalarQ::q();
  const ScalarQ lp = ScalarQ::lambda_plus();
  auto E = [](const std::string& s) { return Element::parse(s); };

  auto exact_check = [&](const std::string& name, bool ok, const std::string& witness) {
    CheckResult r;
    r.group = "sphere";
    r.name = name;
    r.pass = ok;
    r.exact = true;
    if (!ok) r.detail = witness;
    out.push_back(r);
  };

  // the generators coact within the subalgebra
  {
    TensorElement lhs = coproduct(G.xp);
    TensorElement rhs = TensorElement::of(E("a^2"), G.xp) +
                        TensorElement::of(E("b^2"), G.xm, ScalarQ::q_power(-1)) +
                        TensorElement::of(E("b*a"), G.y0, lp) +
                        TensorElement::of(E("b*a"), Element::unit());
    exact_check("coaction on x+", lhs == rhs, (lhs - rhs).render());
  }
  {
    TensorElement lhs = coproduct(G.xm);
    TensorElement rhs = TensorElement::of(E("c^2"), G.xp, q) +
                        TensorElement::of(E("d^2"), G.xm) +
                        TensorElement::of(E("c*d"), G.y0, lp) +
                        TensorElement::of(E("c*d"), Element::unit());
    exact_check("coaction on x-", lhs == rhs, (lhs - rhs).render());
  }
  {
    TensorElement lhs = coproduct(G.y0);
    TensorElement rhs = TensorElement::of(E("a*c"), G.xp) +
                        TensorElement::of(E("d*b"), G.xm) +
                        TensorElement::of(G.x0, G.y0) +
                        TensorElement::of(G.y0, Element::unit());
    exact_check("coaction on y0", lhs == rhs, (lhs - rhs).render());
  }

  // defining relations of the subalgebra
  {
    Element lhs = G.xp * G.xm - ScalarQ::q_power(2) * (G.xm * G.xp);
    Element rhs = (ScalarQ::q_power(2) - ScalarQ(1)) * (G.y0 * G.y0);
    exact_check("x+ x- - q^2 x- x+ = (q^2 - 1) y0^2", lhs == rhs, (lhs - rhs).render());
  }
  {
    Element lhs = G.xp * G.xm - ScalarQ::q_power(4) * (G.xm * G.xp);
    Element rhs = (ScalarQ(1) - ScalarQ::q_power(2)) * (q * G.y0);
    exact_check("x+ x- - q^4 x- x+ = (1 - q^2) q y0", lhs == rhs, (lhs - rhs).render());
  }
  exact_check("x+ y0 = q^2 y0 x+", G.xp * G.y0 == ScalarQ::q_power(2) * (G.y0 * G.xp),
              (G.xp * G.y0 - ScalarQ::q_power(2) * (G.y0 * G.xp)).render());
  exact_check("q^2 x- y0 = y0 x-",
              ScalarQ::q_power(2) * (G.xm * G.y0) == G.y0 * G.xm,
              (ScalarQ::q_power(2) * (G.xm * G.y0) - G.y0 * G.xm).render());
  // the degenerate variant x+ y0 = q^2 x+ y0 would force x+ y0 = 0
  exact_check("x+ y0 does not commute into itself",
              G.xp * G.y0 != ScalarQ::q_power(2) * (G.xp * G.y0),
              "x+ y0 vanished");

  // normal forms of the products
  exact_check("x+ x- = q y0 + q^2 y0^2",
              G.xp * G.xm == q * G.y0 + ScalarQ::q_power(2) * (G.y0 * G.y0),
              (G.xp * G.xm).render());
  exact_check("x- x+ = q^-1 y0 + q^-2 y0^2",
              G.xm * G.xp ==
                  ScalarQ::q_power(-1) * G.y0 + ScalarQ::q_power(-2) * (G.y0 * G.y0),
              (G.xm * G.xp).render());

  // star structure: the involution of the ambient algebra sends
  // x+ to -x- (not x-; the sign comes from b* = -qc, c* = -q^-1 b)
  exact_check("star(x+) = -x-", G.xp.star() == -G.xm, G.xp.star().render());
  exact_check("star(x-) = -x+", G.xm.star() == -G.xp, G.xm.star().render());
  exact_check("star(y0) = y0", G.y0.star() == G.y0, G.y0.star().render());
  exact_check("star(x0) = x0", G.x0.star() == G.x0, G.x0.star().render());

  // membership of the generators and some products
  for (const auto* e : {&G.xp, &G.xm, &G.y0, &G.x0})
    exact_check("generator " + e->render() + " lies in the subalgebra", in_sphere(*e),
                e->render());
  exact_check("x+ x- y0 lies in the subalgebra", in_sphere(G.xp * G.xm * G.y0), "");
  exact_check("a*b lies in the subalgebra (= q x+)", in_sphere(E("a*b")), "");
  exact_check("b does not lie in the subalgebra", !in_sphere(E("b")), "");
  exact_check("a*b*c does not lie in the subalgebra", !in_sphere(E("a*b*c")), "");
  exact_check("b*d does not lie in the subalgebra", !in_sphere(E("b*d")), "");
  exact_check("localized elements never lie in the subalgebra",
              !in_sphere(E("b^-1*c^-1")), "");

  // invariant state on the subalgebra
  exact_check("h(y0) = -q/(1+q^2)",
              haar_state(G.y0) == ScalarQ(-1) * q * (ScalarQ(1) + ScalarQ::q_power(2)).inv(),
              haar_state(G.y0).render());
  exact_check("h(x+ x-) = h applied to q y0 + q^2 y0^2",
              haar_state(G.xp * G.xm) ==
                  q * haar_state(G.y0) + ScalarQ::q_power(2) * haar_state(G.y0 * G.y0),
              "");

  return out;
}

// One commutation relation of the induced two-dimensional calculus:
// d(u) . v  equals  rhs, a left-coefficient combination of differentials.
struct SphereRelation {
  std::string name;
  OneForm lhs;
  OneForm rhs;
  bool corrected = false;  // a wrong variant of this relation circulates
  OneForm variant;         // that variant (only meaningful when corrected)
  std::string note;        // which coefficient the variant gets wrong
};

inline std::vector<SphereRelation> sphere_relations() {
  const auto& C = calculus(CalculusId::three_d);
  const auto& G = sphere_generators();
  const ScalarQ q = ScalarQ::q();
  const ScalarQ l = ScalarQ::lambda();
  const ScalarQ lp2 = ScalarQ::lambda_plus() * ScalarQ::lambda_plus();
  auto d = [&](const Element& x) { return differential(C, x); };
  auto P = [&](const OneForm& f, const Element& v) { return push_left(C, f, v); };
  auto qe = [](int e) { return ScalarQ::q_power(e); };

  const Element one = Element::unit();
  const Element& xp = G.xp;
  const Element& xm = G.xm;
  const Element& x0 = G.x0;
  const OneForm dxp = d(xp), dxm = d(xm), dx0 = d(x0);

  std::vector<SphereRelation> rels;
  auto plain = [&](const std::string& name, OneForm lhs, OneForm rhs) {
    SphereRelation r;
    r.name = name;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    rels.push_back(std::move(r));
  };

  plain("d(x+) . x+", P(dxp, xp),
        xp * dxp - (qe(-1) * l) * ((xp * xp) * dx0) + (q * l) * ((xp * x0) * dxp));
  plain("d(x+) . x-", P(dxp, xm),
        qe(2) * (xm * dxp) + (q * l) * ((xp * xm) * dx0) -
            (qe(-1) * l) * ((xp * (x0 - one)) * dxm));
  plain("d(x+) . x0", P(dxp, x0),
        x0 * dxp + (q * l) * ((xp * (x0 + Element(qe(-2)))) * dx0) -
            (qe(-1) * l * lp2) * ((xp * xp) * dxm));

  {
    SphereRelation r;
    r.name = "d(x-) . x+";
    r.lhs = P(dxm, xp);
    OneForm common = qe(-2) * (xp * dxm) - (qe(-1) * l) * ((xm * xp) * dx0);
    OneForm tail = ((xm * (x0 - one)) * dxp);
    r.rhs = common + (q * l) * tail;
    r.corrected = true;
    r.variant = common - (q * l) * tail;
    r.note = "the x-(x0-1)d(x+) term carries +q*lambda, not -q*lambda";
    rels.push_back(std::move(r));
  }

  plain("d(x-) . x-", P(dxm, xm),
        xm * dxm + (q * l) * ((xm * xm) * dx0) - (qe(-1) * l) * ((xm * x0) * dxm));
  plain("d(x-) . x0", P(dxm, x0),
        x0 * dxm - (qe(-1) * l) * ((xm * (x0 + Element(qe(2)))) * dx0) +
            (q * l * lp2) * ((xm * xm) * dxp));

  {
    SphereRelation r;
    r.name = "d(x0) . x+";
    r.lhs = P(dx0, xp);
    OneForm common = qe(-2) * (xp * dx0) +
                     (qe(-1) * l) * ((xp * (x0 + Element(qe(-2)))) * dx0) -
                     (qe(-1) * l) * ((x0 - one) * dxp);
    OneForm tail = ((xp * xp) * dxm);
    r.rhs = common - (qe(-3) * l * lp2) * tail;
    r.corrected = true;
    r.variant = common - (qe(3) * l * lp2) * tail;
    r.note = "the x+^2 d(x-) term carries q^-3, not q^3";
    rels.push_back(std::move(r));
  }

  plain("d(x0) . x-", P(dx0, xm),
        qe(2) * (xm * dx0) + (q * l) * ((x0 - one) * dxm) -
            (q * l) * ((xm * (x0 + Element(qe(2)))) * dx0) +
            (qe(3) * l * lp2) * ((xm * xm) * dxp));
  plain("d(x0) . x0", P(dx0, x0),
        x0 * dx0 - (qe(-1) * l * lp2) * (((x0 - one) * xp) * dxm) +
            (q * l) * ((x0 * (x0 - one)) * dx0));

  return rels;
}

inline std::vector<CheckResult> verify_sphere_calculus() {
  std::vector<CheckResult> out;
  const auto& C = calculus(CalculusId::three_d);
  const auto& G = sphere_generators();
  auto E = [](const std::string& s) { return Element::parse(s); };
  auto exact_check = [&](const std::string& name, bool ok, const std::string& witness) {
    CheckResult r;
    r.group = "sphere-calculus";
    r.name = name;
    r.pass = ok;
    r.exact = true;
    if (!ok) r.detail = witness;
    out.push_back(r);
  };

  // generator differentials collapse onto the w0/w2 components
  {
    OneForm expect(CalculusId::three_d);
    expect.add_component(0, E("q^-1*a^2"));
    expect.add_component(2, E("b^2"));
    exact_check("d(x+) = q^-1 a^2 w0 + b^2 w2", differential(C, G.xp) == expect,
                differential(C, G.xp).render());
  }
  {
    OneForm expect(CalculusId::three_d);
    expect.add_component(0, E("c^2"));
    expect.add_component(2, E("q*d^2"));
    exact_check("d(x-) = c^2 w0 + q d^2 w2", differential(C, G.xm) == expect,
                differential(C, G.xm).render());
  }
  {
    OneForm expect(CalculusId::three_d);
    expect.add_component(0, E("c*a"));
    expect.add_component(2, E("b*d"));
    exact_check("d(y0) = ca w0 + bd w2", differential(C, G.y0) == expect,
                differential(C, G.y0).render());
  }

  // the canonical left-module relation among the three differentials
  {
    OneForm rel = G.xp * differential(C, G.xm) +
                  ScalarQ::q_power(2) * (G.xm * differential(C, G.xp)) -
                  (ScalarQ::q() * G.x0) * differential(C, G.y0);
    exact_check("x+ d(x-) + q^2 x- d(x+) - q x0 d(y0) = 0", rel.is_zero(), rel.render());
  }

  for (const auto& r : sphere_relations()) {
    exact_check(r.name, r.lhs == r.rhs, (r.lhs - r.rhs).render());
    if (r.corrected) {
      exact_check(r.name + " rejects the wrong-coefficient variant",
                  r.lhs != r.variant, r.note);
    }
  }

  return out;
}

// Result of the dependency test for z+ d(x+) + z- d(x-) + z0 d(y0).
struct DependencyResult {
  bool dependent = false;  // the combination vanishes
  Element w0_coeff;        // witness coefficients when it does not
  Element w2_coeff;
  bool has_z = false;      // a generating element z was reconstructed
  Element z;               // z+ = q^2 z x-,  z- = z x+,  z0 = -q z x0
};

inline DependencyResult solve_dependency(const Element& zp, const Element& zm,
                                         const Element& z0) {
  const auto& C = calculus(CalculusId::three_d);
  const auto& G = sphere_generators();
  if (!in_sphere(zp) || !in_sphere(zm) || !in_sphere(z0))
    throw CalculusError("dependency test requires subalgebra elements");

  DependencyResult res;
  OneForm comb = zp * differential(C, G.xp) + zm * differential(C, G.xm) +
                 z0 * differential(C, G.y0);
  res.w0_coeff = comb.component(0);
  res.w2_coeff = comb.component(2);
  res.dependent = comb.is_zero();
  if (!res.dependent) return res;

  const ScalarQ q = ScalarQ::q();
  const ScalarQ lp = ScalarQ::lambda_plus();
  const ScalarQ lp2 = lp * lp;
  // two closed forms for z; they agree exactly when the combination vanishes
  Element z1 = -(lp2 * (zm * G.xm)) - z0 * (q * lp * G.y0 + Element(ScalarQ::q_power(-1)));
  Element z2 = -(ScalarQ::q_power(-2) * lp2 * (zp * G.xp)) -
               z0 * (ScalarQ::q_power(-3) * lp * G.y0 + Element(ScalarQ::q_power(-1)));
  if (z1 != z2) return res;

  bool ok = (zp == ScalarQ::q_power(2) * (z1 * G.xm)) && (zm == z1 * G.xp) &&
            (z0 == -(q * (z1 * G.x0)));
  if (ok) {
    res.has_z = true;
    res.z = z1;
  }
  return res;
}

}  // namespace qdc
