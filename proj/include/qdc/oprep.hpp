#pragma once

// Operator models of the quantum lattice representation.
//
// The coordinate generators act as weighted shift operators on a truncated
// lattice; a self-adjoint operator F is assembled level by level from an
// admissible pair of block operators (T, R).  Conjugating F with the
// coproduct words of an algebra element produces the one-form operator
// associated to that element, and i[F, pi(x)] realizes the differential.
// Everything downstream of the representation is floating point; symbolic
// coefficients are evaluated exactly in GMP rationals first and converted
// once.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdc/algebra.hpp"
#include "qdc/calculus.hpp"
#include "qdc/lattice.hpp"
#include "qdc/report.hpp"
#include "qdc/sphere.hpp"
#include "qdc/util.hpp"

namespace qdc {

// ---------------------------------------------------------------------------
// The generator representation
// ---------------------------------------------------------------------------
//
//   a e_{n,k,l} = lambda_n e_{n-1,k,l}      (lambda_0 = 0: n = 0 is a floor)
//   d e_{n,k,l} = lambda_{n+1} e_{n+1,k,l}
//   c e_{n,k,l} = q^n e_{n,k-1,l}
//   b e_{n,k,l} = -q^{n+1} e_{n,k+1,l}
//   w e_{n,k,l} = e_{n,k-1,l}               (the unitary k-shift)
//
// b and c are invertible on the bilateral k-axis, so localized elements
// are representable as well.

struct Rep {
  LatticeWindow win;
  LatticeOperator a, b, c, d, b_inv, c_inv, w;
};

using ColumnSink = std::vector<std::pair<Site, Complex>>;

inline Rep build_rep(const LatticeWindow& win) {
  win.validate();
  const double q = win.q();
  Rep r;
  r.win = win;
  r.a = build_operator(win, [&](const Site& s, ColumnSink& out) {
    if (s.n >= 1) out.push_back({{s.n - 1, s.k, s.l}, win.lambda_n(s.n)});
  });
  r.d = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n + 1, s.k, s.l}, win.lambda_n(s.n + 1)});
  });
  r.c = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k - 1, s.l}, std::pow(q, s.n)});
  });
  r.b = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k + 1, s.l}, -std::pow(q, s.n + 1)});
  });
  r.b_inv = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k - 1, s.l}, -std::pow(q, -(s.n + 1))});
  });
  r.c_inv = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k + 1, s.l}, std::pow(q, -s.n)});
  });
  r.w = build_operator(win, [&](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k - 1, s.l}, 1.0});
  });
  // Every algebra letter is budgeted one unit of reach on both lattice axes,
  // even when its matrix only moves one of them.  Products then carry a radius
  // equal to their letter count, which is the contract the interior masks and
  // the window-size error messages are written against.  The ladder operator w
  // is not an algebra letter and keeps its exact reach.
  for (LatticeOperator* g : {&r.a, &r.b, &r.c, &r.d, &r.b_inv, &r.c_inv})
    g->set_radius({1, 1, 0});
  return r;
}

inline const LatticeOperator& rep_gen(const Rep& r, Gen g) {
  switch (g) {
    case Gen::a: return r.a;
    case Gen::b: return r.b;
    case Gen::c: return r.c;
    case Gen::d: return r.d;
    case Gen::b_inv: return r.b_inv;
    case Gen::c_inv: return r.c_inv;
  }
  throw OperatorError("unknown generator");
}

inline LatticeOperator represent(const Rep& rep, const Element& x) {
  LatticeOperator out(rep.win);
  for (const auto& [m, s] : x.terms()) {
    LatticeOperator term = LatticeOperator::identity(rep.win);
    for (Gen g : m.letters()) term = term * rep_gen(rep, g);
    out = out + Complex(s.to_double(rep.win.q_value)) * term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block operator families
// ---------------------------------------------------------------------------
//
// A family describes the action of a level-diagonal block operator through
// its column at a (possibly virtual) site; insertion into a window performs
// the truncation.  F assembly evaluates families at virtual sites, which is
// what keeps the conjugated middle blocks w^n R w*^n exact deep inside the
// window instead of inheriting edge artifacts from a materialized R.

struct OpFamily {
  std::string name = "0";
  SupportRadius radius;
  std::function<void(const LatticeWindow&, const Site&, ColumnSink&)> col =
      [](const LatticeWindow&, const Site&, ColumnSink&) {};
};

inline LatticeOperator materialize(const LatticeWindow& win, const OpFamily& fam) {
  LatticeOperator op = build_operator(win, [&](const Site& s, ColumnSink& out) {
    fam.col(win, s, out);
  });
  op.set_radius(op.radius().max_with(fam.radius));
  return op;
}

inline OpFamily fam_zero() { return {}; }

inline OpFamily fam_T_shift() {
  OpFamily f;
  f.name = "T = q^k back-shift";
  f.radius = {0, 1, 0};
  f.col = [](const LatticeWindow& w, const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k - 1, s.l}, std::pow(w.q(), s.k)});
  };
  return f;
}

inline OpFamily fam_T_identity() {
  OpFamily f;
  f.name = "T = identity";
  f.col = [](const LatticeWindow&, const Site& s, ColumnSink& out) {
    out.push_back({s, 1.0});
  };
  return f;
}

inline OpFamily fam_T_alternating() {
  OpFamily f;
  f.name = "T = diag((-1)^k)";
  f.col = [](const LatticeWindow&, const Site& s, ColumnSink& out) {
    out.push_back({s, (s.k % 2 != 0) ? -1.0 : 1.0});
  };
  return f;
}

// Block-sum model: T also steps the copy index down.
inline OpFamily fam_T_regular(double alpha) {
  OpFamily f;
  f.name = "T = alpha (1+q^2)^{1/2} q^k double back-shift";
  f.radius = {0, 1, 1};
  f.col = [alpha](const LatticeWindow& w, const Site& s, ColumnSink& out) {
    const double q = w.q();
    out.push_back({{s.n, s.k - 1, s.l - 1},
                   alpha * std::sqrt(1.0 + q * q) * std::pow(q, s.k)});
  };
  return f;
}

inline OpFamily fam_Rp_diag() {
  OpFamily f;
  f.name = "R' = diag(q^{2k})";
  f.col = [](const LatticeWindow& w, const Site& s, ColumnSink& out) {
    out.push_back({s, std::pow(w.q(), 2 * s.k)});
  };
  return f;
}

inline OpFamily fam_Rp_regular(double beta) {
  OpFamily f;
  f.name = "R' = beta q^2 (1+q^2+q^4)^{1/2} diag(q^{2k})";
  f.col = [beta](const LatticeWindow& w, const Site& s, ColumnSink& out) {
    const double q = w.q();
    const double q2 = q * q;
    out.push_back(
        {s, beta * q2 * std::sqrt(1.0 + q2 + q2 * q2) * std::pow(q, 2 * s.k)});
  };
  return f;
}

// diag((eps q)^{-k}); the unique shape (up to the two-parameter mixing)
// compatible with the three-term recurrence of the signed model.
inline OpFamily fam_R_geometric(int eps) {
  OpFamily f;
  f.name = eps > 0 ? "R = diag(q^{-k})" : "R = diag((-q)^{-k})";
  f.col = [eps](const LatticeWindow& w, const Site& s, ColumnSink& out) {
    double v = std::pow(w.q(), -s.k);
    if (eps < 0 && s.k % 2 != 0) v = -v;
    out.push_back({s, v});
  };
  return f;
}

// Symmetric k-convolution sum_r taps[r] e_{k-r}; taps are centered, so
// taps.size() must be odd and palindromic taps keep the operator
// self-adjoint and shift-invariant.
inline OpFamily fam_R_convolution(std::vector<double> taps) {
  if (taps.size() % 2 == 0)
    throw OperatorError("convolution taps must have a center entry");
  OpFamily f;
  f.name = "R'' = symmetric k-convolution";
  const int center = static_cast<int>(taps.size()) / 2;
  f.radius = {0, center, 0};
  f.col = [taps, center](const LatticeWindow&, const Site& s, ColumnSink& out) {
    for (int i = 0; i < static_cast<int>(taps.size()); ++i) {
      if (taps[i] == 0.0) continue;
      out.push_back({{s.n, s.k - (i - center), s.l}, taps[i]});
    }
  };
  return f;
}

// ---------------------------------------------------------------------------
// F assembly
// ---------------------------------------------------------------------------

struct FSpec {
  enum class Variant { theorem_1, remark_4, disk };
  Variant variant = Variant::theorem_1;
  int eps = +1;  // remark_4 sign
  OpFamily T = fam_T_shift();
  OpFamily Rprime = fam_Rp_diag();      // theorem_1 split parts
  OpFamily Rdoubleprime = fam_zero();
  OpFamily R = fam_zero();              // remark_4 undecomposed part
};

inline FSpec standard_fspec() { return {}; }

inline FSpec remark4_fspec(int eps) {
  FSpec s;
  s.variant = FSpec::Variant::remark_4;
  s.eps = eps;
  s.T = eps > 0 ? fam_T_identity() : fam_T_alternating();
  s.Rprime = fam_zero();
  s.R = fam_R_geometric(eps);
  return s;
}

inline FSpec disk_fspec() {
  FSpec s;
  s.variant = FSpec::Variant::disk;
  s.Rprime = fam_zero();
  return s;
}

namespace detail {

inline LatticeOperator k_shift(const LatticeWindow& win) {
  return build_operator(win, [](const Site& s, ColumnSink& out) {
    out.push_back({{s.n, s.k - 1, s.l}, 1.0});
  });
}

inline void require_condition(const LatticeOperator& expr, const std::string& name) {
  const double r = interior_residual(expr, "condition " + name);
  if (!(r < 1e-12))
    throw OperatorError("F family rejected: condition " + name +
                        " fails (residual=" + format_residual(r) + ")");
}

}  // namespace detail

// Admissibility of an (T, R) family.  Violations are refused by name so a
// caller knows which structural requirement the family breaks.
inline void check_f_conditions(const LatticeWindow& win, const FSpec& spec) {
  win.validate();
  const double q = win.q();
  const LatticeOperator W = detail::k_shift(win);
  const LatticeOperator Ws = W.adjoint();
  const LatticeOperator T = materialize(win, spec.T);
  switch (spec.variant) {
    case FSpec::Variant::theorem_1: {
      detail::require_condition(W * T * Ws - Complex(q) * T, "wTw* = q T");
      const LatticeOperator Rp = materialize(win, spec.Rprime);
      const LatticeOperator Rpp = materialize(win, spec.Rdoubleprime);
      detail::require_condition(W * Rp * Ws - Complex(q * q) * Rp, "wR'w* = q^2 R'");
      detail::require_condition(W * Rpp * Ws - Rpp, "wR''w* = R''");
      break;
    }
    case FSpec::Variant::remark_4: {
      const double e = spec.eps;
      detail::require_condition(W * T * Ws - Complex(e) * T, "wTw* = eps T");
      const LatticeOperator R = materialize(win, spec.R);
      const LatticeOperator lhs =
          W * W * R * Ws * Ws + Complex(e / q) * R - Complex(1.0 + e / q) * (W * R * Ws);
      detail::require_condition(lhs, "w^2 R w*^2 + eps q^-1 R = (1 + eps q^-1) w R w*");
      break;
    }
    case FSpec::Variant::disk:
      detail::require_condition(W * T * Ws - Complex(q) * T, "wTw* = q T");
      break;
  }
}

// F columns at a source site (n, k, l):
//   level n-1:  lambda_n [T]           (remark_4: extra (eps q)^{1-n})
//   level n  :  w^n R w*^n             (theorem_1: R = R' + R''; disk: none)
//   level n+1:  lambda_{n+1} [T*]      (remark_4: extra (eps q)^{-n})
// The up blocks are the exact adjoints of the down blocks, so F = F* holds
// on the whole window, truncation included.
inline LatticeOperator build_F_unchecked(const LatticeWindow& win, const FSpec& spec) {
  win.validate();
  const double q = win.q();
  const bool r4 = spec.variant == FSpec::Variant::remark_4;
  auto signed_q_pow = [&](int p) {
    double v = std::pow(q, p);
    if (r4 && spec.eps < 0 && p % 2 != 0) v = -v;
    return v;
  };

  LatticeOperator down(win);
  ColumnSink cols;
  for (int i = 0; i < win.dim(); ++i) {
    const Site s = win.site(i);
    if (s.n < 1) continue;
    double f = win.lambda_n(s.n);
    if (r4) f *= signed_q_pow(1 - s.n);
    cols.clear();
    spec.T.col(win, s, cols);
    for (const auto& [t, v] : cols) down.add({s.n - 1, t.k, t.l}, s, f * v);
  }

  LatticeOperator mid(win);
  std::vector<const OpFamily*> parts;
  if (spec.variant == FSpec::Variant::theorem_1)
    parts = {&spec.Rprime, &spec.Rdoubleprime};
  else if (r4)
    parts = {&spec.R};
  for (const OpFamily* part : parts) {
    for (int i = 0; i < win.dim(); ++i) {
      const Site s = win.site(i);
      cols.clear();
      part->col(win, {s.n, s.k + s.n, s.l}, cols);
      for (const auto& [t, v] : cols) mid.add({s.n, t.k - s.n, t.l}, s, v);
    }
  }

  LatticeOperator F = down + mid + down.adjoint();
  SupportRadius rad{1, spec.T.radius.k, spec.T.radius.l};
  for (const OpFamily* part : parts) rad = rad.max_with({1, part->radius.k, part->radius.l});
  F.set_radius(F.radius().max_with(rad));
  return F;
}

inline LatticeOperator build_F(const LatticeWindow& win, const FSpec& spec) {
  check_f_conditions(win, spec);
  return build_F_unchecked(win, spec);
}

// F together with the materialized blocks it was assembled from.
struct FBundle {
  FSpec spec;
  LatticeOperator F, That, Rp_hat, Rpp_hat, R_hat;
};

inline FBundle make_f_bundle(const LatticeWindow& win, const FSpec& spec) {
  check_f_conditions(win, spec);
  FBundle b;
  b.spec = spec;
  b.F = build_F_unchecked(win, spec);
  b.That = materialize(win, spec.T);
  b.Rp_hat = materialize(win, spec.Rprime);
  b.Rpp_hat = materialize(win, spec.Rdoubleprime);
  b.R_hat = materialize(win, spec.R);
  return b;
}

// Canonical split of an admissible R into the q^2-homogeneous and the
// shift-invariant part:
//   R'  = (R - wRw*) / (1 - q^2)
//   R'' = (wRw* - q^2 R) / (1 - q^2)
// Then R' + R'' = R, and when R satisfies the three-term recurrence the
// parts satisfy wR'w* = q^2 R' and wR''w* = R''.
inline std::pair<LatticeOperator, LatticeOperator> decompose_R(
    const LatticeWindow& win, const LatticeOperator& R) {
  const double q = win.q();
  const LatticeOperator W = detail::k_shift(win);
  const LatticeOperator conj = W * R * W.adjoint();
  const Complex inv(1.0 / (1.0 - q * q));
  return {inv * (R - conj), inv * (conj - Complex(q * q) * R)};
}

// ---------------------------------------------------------------------------
// One-form operators and the differential
// ---------------------------------------------------------------------------

// Omega(x) = sum pi(S(x_(1))) F pi(x_(2)) - counit(x) F
inline LatticeOperator omega_op(const Rep& rep, const LatticeOperator& F, const Element& x) {
  LatticeOperator out(rep.win);
  const TensorElement words = omega_words(x);
  for (const auto& [uv, s] : words.terms()) {
    const Complex c(s.to_double(rep.win.q_value));
    out = out + c * (represent(rep, Element::monomial(uv.first)) * F *
                     represent(rep, Element::monomial(uv.second)));
  }
  return out;
}

inline LatticeOperator commutator_d(const Rep& rep, const LatticeOperator& F, const Element& x) {
  const LatticeOperator px = represent(rep, x);
  return Complex(0, 1) * (F * px - px * F);
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_representation(const Rep& rep) {
  std::vector<CheckResult> out;
  const double q = rep.win.q();
  auto residual_check = [&](const std::string& name, const LatticeOperator& expr,
                            double tol) {
    CheckResult c;
    c.group = "rep";
    c.name = name;
    c.exact = false;
    c.tolerance = tol;
    c.residual = interior_residual(expr, name);
    c.pass = c.residual < tol;
    out.push_back(c);
  };

  const LatticeOperator I = LatticeOperator::identity(rep.win);
  residual_check("a b = q b a", rep.a * rep.b - Complex(q) * (rep.b * rep.a), 1e-12);
  residual_check("a c = q c a", rep.a * rep.c - Complex(q) * (rep.c * rep.a), 1e-12);
  residual_check("b d = q d b", rep.b * rep.d - Complex(q) * (rep.d * rep.b), 1e-12);
  residual_check("c d = q d c", rep.c * rep.d - Complex(q) * (rep.d * rep.c), 1e-12);
  residual_check("b c = c b", rep.b * rep.c - rep.c * rep.b, 1e-12);
  residual_check("a d - q b c = 1", rep.a * rep.d - Complex(q) * (rep.b * rep.c) - I, 1e-12);
  residual_check("d a - q^-1 b c = 1",
                 rep.d * rep.a - Complex(1.0 / q) * (rep.b * rep.c) - I, 1e-12);
  residual_check("b b^-1 = 1", rep.b * rep.b_inv - I, 1e-12);
  residual_check("b^-1 b = 1", rep.b_inv * rep.b - I, 1e-12);
  residual_check("c c^-1 = 1", rep.c * rep.c_inv - I, 1e-12);
  residual_check("c^-1 c = 1", rep.c_inv * rep.c - I, 1e-12);

  // sampled consistency of the rewrite normal form with operator products
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_int_distribution<int> loc(-2, 2);
  auto random_monomial = [&](bool localized) {
    Monomial m;
    if (rng() % 2 == 0)
      m.a = deg(rng);
    else
      m.d = deg(rng);
    if (localized) {
      m.b = loc(rng);
      m.c = loc(rng);
    } else {
      m.b = deg(rng);
      m.c = deg(rng);
    }
    return m;
  };

  // Localized words can reach entries ~q^{-4(n+k)} on wide windows, so these
  // sampled checks compare per column relative to the column scale.
  double worst_hom = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Element x = Element::monomial(random_monomial(t % 3 == 0));
    const Element y = Element::monomial(random_monomial(t % 4 == 0));
    worst_hom = std::max(
        worst_hom, relative_residual(represent(rep, x * y),
                                     represent(rep, x) * represent(rep, y),
                                     "product consistency"));
  }
  CheckResult hom;
  hom.group = "rep";
  hom.name = "pi(x y) = pi(x) pi(y) on 20 sampled pairs";
  hom.exact = false;
  hom.tolerance = 1e-10;
  hom.residual = worst_hom;
  hom.pass = worst_hom < 1e-10;
  hom.detail = "relative per-column residual";
  out.push_back(hom);

  double worst_star = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Element x = Element::monomial(random_monomial(t % 2 == 0));
    worst_star = std::max(worst_star,
                          relative_residual(represent(rep, x.star()),
                                            represent(rep, x).adjoint(),
                                            "star adjoint"));
  }
  CheckResult st;
  st.group = "rep";
  st.name = "pi(x*) = pi(x)* on 100 sampled monomials";
  st.exact = false;
  st.tolerance = 1e-10;
  st.residual = worst_star;
  st.pass = worst_star < 1e-10;
  out.push_back(st);

  return out;
}

inline std::vector<CheckResult> verify_f_properties(const Rep& rep, const FBundle& fb) {
  std::vector<CheckResult> out;
  CheckResult sym;
  sym.group = "F";
  sym.name = "F is self-adjoint on the whole window";
  sym.exact = false;
  sym.tolerance = 1e-13;
  const LatticeOperator diff = fb.F - fb.F.adjoint();
  const std::vector<char> all(rep.win.dim(), 1);
  sym.residual = max_masked_column_norm(diff, all);
  sym.pass = sym.residual < sym.tolerance;
  out.push_back(sym);

  CheckResult tri;
  tri.group = "F";
  tri.name = "F is tridiagonal across levels";
  tri.exact = true;
  tri.pass = fb.F.radius().n <= 1;
  tri.detail = "level radius " + std::to_string(fb.F.radius().n);
  out.push_back(tri);
  return out;
}

inline std::vector<CheckResult> verify_omega_vanishing(const Rep& rep, const FBundle& fb,
                                                       CalculusId id, double tol = 1e-10) {
  const CalculusDescriptor& C = calculus(id);
  std::vector<CheckResult> out(C.ideal.size());
  std::vector<LatticeOperator> oms(C.ideal.size(), LatticeOperator(rep.win));
  parallel_for(static_cast<int>(C.ideal.size()), [&](int i) {
    oms[i] = omega_op(rep, fb.F, C.ideal[i]);
  });
  // One interior domain for the whole suite, sized by the widest word radius,
  // so the residuals of all generators are read off the same set of sites.
  SupportRadius rad;
  for (const auto& om : oms) rad = rad.max_with(om.radius());
  const std::vector<char> mask =
      require_interior(rep.win, rad, std::string("the ") + calculus_name(id) + " suite");
  const std::string rad_text = "(" + std::to_string(rad.n) + "," + std::to_string(rad.k) +
                               "," + std::to_string(rad.l) + ")";
  for (size_t i = 0; i < C.ideal.size(); ++i) {
    CheckResult c;
    c.group = std::string("omega/") + calculus_name(id);
    c.name = "Omega(" + C.ideal[i].render() + ") = 0";
    c.exact = false;
    c.tolerance = tol;
    c.residual = max_masked_column_norm(oms[i], mask);
    c.pass = c.residual < tol;
    c.mask_radius = rad_text;
    out[i] = c;
  }
  return out;
}

// Closed forms of the three invariant one-form operators and their mutual
// relations, for the standard split family.
inline std::vector<CheckResult> verify_invariant_forms(const Rep& rep, const FBundle& fb,
                                                       double tol = 1e-10) {
  std::vector<CheckResult> out;
  const double q = rep.win.q();
  const Complex lam(q - 1.0 / q, 0.0);

  // Both sides of each identity scale like q^{2k} across the window, so the
  // meaningful agreement measure is per column relative to the columns being
  // compared, not a single absolute number dominated by the largest k.
  auto compare = [&](const std::string& name, const LatticeOperator& got,
                     const LatticeOperator& want) {
    CheckResult c;
    c.group = "forms";
    c.name = name;
    c.exact = false;
    c.tolerance = tol;
    c.residual = relative_residual(got, want, name);
    c.pass = c.residual < tol;
    c.detail = "relative per-column residual";
    out.push_back(c);
  };

  const LatticeOperator om_b = omega_op(rep, fb.F, Element::generator(Gen::b));
  const LatticeOperator om_a = omega_op(rep, fb.F, Element::generator(Gen::a));
  const LatticeOperator om_c = omega_op(rep, fb.F, Element::generator(Gen::c));
  const LatticeOperator om_d = omega_op(rep, fb.F, Element::generator(Gen::d));

  compare("Omega(b) = lambda pi(b) T", om_b, lam * (rep.b * fb.That));
  compare("Omega(c) = -lambda pi(c) T*", om_c,
          Complex(-1.0) * lam * (rep.c * fb.That.adjoint()));
  compare("Omega(a) = q^-2 lambda pi(bc) R'", om_a,
          (lam / Complex(q * q)) * ((rep.b * rep.c) * fb.Rp_hat));
  compare("Omega(d) = -q^2 Omega(a)", om_d, Complex(-q * q) * om_a);

  // pointwise anchor for the single-copy shift family, where the b-form is
  // diagonal with eigenvalue (1-q^2) q^{n+k}; the copy-axis families shift l
  // and have no such fixed state
  if (!rep.win.has_copies()) {
    CheckResult anchor;
    anchor.group = "forms";
    anchor.name = "Omega(b) e_00 = (1-q^2) e_00";
    anchor.exact = false;
    anchor.tolerance = 1e-12;
    CVec e0(rep.win.dim(), 0.0);
    e0[rep.win.index({0, 0, rep.win.l_min})] = 1.0;
    CVec y = om_b.apply(e0);
    const double expected = 1.0 - q * q;
    double res = 0.0;
    for (int i = 0; i < rep.win.dim(); ++i) {
      Complex want =
          (i == rep.win.index({0, 0, rep.win.l_min})) ? Complex(expected) : Complex(0);
      res = std::max(res, std::abs(y[i] - want));
    }
    anchor.residual = res;
    anchor.pass = res < anchor.tolerance;
    anchor.detail = "eigenvalue " + std::to_string(expected);
    out.push_back(anchor);
  }

  return out;
}

// The k-uniform identities stack three operator factors, so their float
// round-off grows like the square of the largest diagonal entry q^{-2|k|}.
// Beyond |k| = 12 at q = 1/2 that exceeds a 1e-10 absolute tolerance, so
// the module-relation suite runs on a k-clamped copy of the user window.
inline LatticeWindow clamp_k(LatticeWindow win, int halfwidth) {
  win.k_min = std::max(win.k_min, -halfwidth);
  win.k_max = std::min(win.k_max, halfwidth);
  return win;
}

// The right-module commutation of the flat one-forms, realized through the
// commutator differential: for each basis form w_j = sum u_t d(v_t) and
// generator g,
//   sum pi(u_t) D(v_t) pi(g) = sigma_j(g) sum pi(g u_t) D(v_t).
inline std::vector<CheckResult> verify_bimodule_relations(const Rep& rep,
                                                          const LatticeOperator& F,
                                                          double tol = 1e-10) {
  std::vector<CheckResult> out;
  const double q = rep.win.q();
  const Gen form_words[3] = {Gen::b, Gen::a, Gen::c};
  const Gen gens[4] = {Gen::a, Gen::b, Gen::c, Gen::d};
  auto sigma = [&](int j, Gen g) {
    double base = (g == Gen::a || g == Gen::c) ? 1.0 / q : q;
    return (j == 1) ? base * base : base;
  };

  for (int j = 0; j < 3; ++j) {
    const TensorElement words = omega_words(Element::generator(form_words[j]));
    for (Gen g : gens) {
      LatticeOperator lhs(rep.win), rhs(rep.win);
      const Element ge = Element::generator(g);
      for (const auto& [uv, s] : words.terms()) {
        const Complex c(s.to_double(rep.win.q_value));
        const LatticeOperator Dv = commutator_d(rep, F, Element::monomial(uv.second));
        lhs = lhs + c * (represent(rep, Element::monomial(uv.first)) * Dv * represent(rep, ge));
        rhs = rhs + c * (represent(rep, ge * Element::monomial(uv.first)) * Dv);
      }
      CheckResult chk;
      chk.group = "bimodule";
      chk.name = std::string("w") + std::to_string(j) + " . " + gen_name(g) +
                 " = sigma(" + gen_name(g) + ") " + gen_name(g) + " . w" + std::to_string(j);
      chk.exact = false;
      chk.tolerance = tol;
      chk.residual = interior_residual(lhs - Complex(sigma(j, g)) * rhs, chk.name);
      chk.pass = chk.residual < tol;
      out.push_back(chk);
    }
  }
  return out;
}

inline std::vector<CheckResult> verify_omega_linearity(const Rep& rep,
                                                       const LatticeOperator& F1,
                                                       const LatticeOperator& F2,
                                                       double tol = 1e-12) {
  std::vector<CheckResult> out;
  for (Gen g : {Gen::b, Gen::a}) {
    const Element x = Element::generator(g);
    LatticeOperator diff =
        omega_op(rep, F1 + F2, x) - omega_op(rep, F1, x) - omega_op(rep, F2, x);
    CheckResult c;
    c.group = "omega";
    c.name = std::string("Omega_{F1+F2}(") + gen_name(g) + ") = Omega_{F1} + Omega_{F2}";
    c.exact = false;
    c.tolerance = tol;
    c.residual = interior_residual(diff, c.name);
    c.pass = c.residual < tol;
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Faithfulness of the form module
// ---------------------------------------------------------------------------

inline std::vector<Monomial> pbw_monomials(int degree) {
  std::vector<Monomial> out;
  for (int p = 0; p <= degree; ++p)
    for (int m = 0; m + p <= degree; ++m)
      for (int r = 0; r + m + p <= degree; ++r) out.push_back({p, m, r, 0});
  for (int s = 1; s <= degree; ++s)
    for (int m = 0; m + s <= degree; ++m)
      for (int r = 0; r + m + s <= degree; ++r) out.push_back({0, m, r, s});
  return out;
}

struct IndependenceResult {
  int monomials = 0;
  int columns = 0;
  int rows = 0;
  int zero_columns = 0;
  int rank = 0;
};

// Numerical rank of { pi(m) Omega_j : m in the degree-bounded basis,
// j = 0,1,2 }, vectorized over interior source columns, with unit-norm
// columns and a relative 1e-8 singular value cutoff.
inline IndependenceResult independence_rank(const Rep& rep, const FBundle& fb,
                                            int degree = 2) {
  const std::vector<Monomial> monomials = pbw_monomials(degree);
  const Gen form_words[3] = {Gen::b, Gen::a, Gen::c};
  std::array<LatticeOperator, 3> omega;
  for (int j = 0; j < 3; ++j)
    omega[j] = omega_op(rep, fb.F, Element::generator(form_words[j]));

  const int ncols = static_cast<int>(monomials.size()) * 3;
  std::vector<LatticeOperator> cols(ncols, LatticeOperator(rep.win));
  parallel_for(ncols, [&](int idx) {
    const Monomial& m = monomials[idx / 3];
    cols[idx] = represent(rep, Element::monomial(m)) * omega[idx % 3];
  });

  SupportRadius rad;
  for (const auto& op : cols) rad = rad.max_with(op.radius());
  const std::vector<char> mask = require_interior(rep.win, rad, "independence columns");

  std::map<std::pair<int, int>, int> row_of;
  for (const auto& op : cols)
    for (int s = 0; s < rep.win.dim(); ++s) {
      if (!mask[s]) continue;
      const auto* col = op.column(s);
      if (!col) continue;
      for (const auto& [t, v] : *col) row_of.try_emplace({t, s}, 0);
    }
  int nrows = 0;
  for (auto& [key, idx] : row_of) idx = nrows++;

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nrows, ncols);
  for (int c = 0; c < ncols; ++c)
    for (int s = 0; s < rep.win.dim(); ++s) {
      if (!mask[s]) continue;
      const auto* col = cols[c].column(s);
      if (!col) continue;
      for (const auto& [t, v] : *col) M(row_of.at({t, s}), c) = v;
    }

  IndependenceResult res;
  res.monomials = static_cast<int>(monomials.size());
  res.columns = ncols;
  res.rows = nrows;
  // Columns are scaled to unit norm so the SVD cutoff is a uniform relative
  // threshold.  A column whose norm sits at round-off level relative to the
  // largest one carries no information; normalizing it would promote noise to
  // a full-strength direction, so such columns are zeroed and counted instead.
  double col_max = 0.0;
  for (int c = 0; c < ncols; ++c) col_max = std::max(col_max, M.col(c).norm());
  for (int c = 0; c < ncols; ++c) {
    const double nn = M.col(c).norm();
    if (nn > 1e-8 * col_max) {
      M.col(c) /= nn;
    } else {
      M.col(c).setZero();
      ++res.zero_columns;
    }
  }
  if (nrows == 0) return res;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return res;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++res.rank;
  return res;
}

// ---------------------------------------------------------------------------
// Block-sum model, invariant state, gram matrix
// ---------------------------------------------------------------------------

inline FSpec regular_fspec(double alpha, double beta) {
  FSpec s;
  s.T = fam_T_regular(alpha);
  s.Rprime = fam_Rp_regular(beta);
  return s;
}

struct RegularBundle {
  Rep rep;
  FBundle fb;
  CVec phi;  // unit-normalized invariant state vector
  double alpha = 1.0;
  double beta = 1.0;
};

inline RegularBundle build_regular(const LatticeWindow& win, double alpha, double beta) {
  if (!win.has_copies())
    throw WindowError("block-sum model needs a copy axis (l range)");
  if (win.l_max < win.n_max - 1 || win.l_min > 0)
    throw WindowError("copy range too short for the invariant state (need l range "
                      "covering [0, n_max-1])");
  RegularBundle rb;
  rb.rep = build_rep(win);
  rb.fb = make_f_bundle(win, regular_fspec(alpha, beta));
  rb.alpha = alpha;
  rb.beta = beta;
  CVec phi(win.dim(), 0.0);
  for (int n = 0; n < win.n_max; ++n) {
    const Site s{n, 0, n};
    if (win.contains(s)) phi[win.index(s)] = std::pow(win.q(), n);
  }
  const double nn = vec_norm(phi);
  if (nn == 0.0) throw WindowError("copy range misses the invariant state diagonal");
  for (auto& v : phi) v /= nn;
  rb.phi = std::move(phi);
  return rb;
}

inline Complex haar_expectation(const RegularBundle& rb, const Element& x) {
  return inner(represent(rb.rep, x).apply(rb.phi), rb.phi);
}

// Closed-form one-form operators; agreement with omega_op is a separate
// check, after which these give the gram matrix without truncation noise.
inline LatticeOperator invariant_form_op(const Rep& rep, const FBundle& fb, int j) {
  const double q = rep.win.q();
  const Complex lam(q - 1.0 / q, 0.0);
  switch (j) {
    case 0: return lam * (rep.b * fb.That);
    case 1: return (lam / Complex(q * q)) * ((rep.b * rep.c) * fb.Rp_hat);
    case 2: return Complex(-1.0) * lam * (rep.c * fb.That.adjoint());
    default: throw OperatorError("form index out of range");
  }
}

inline std::array<std::array<Complex, 3>, 3> gram_matrix(const RegularBundle& rb) {
  std::array<CVec, 3> v;
  for (int j = 0; j < 3; ++j) v[j] = invariant_form_op(rb.rep, rb.fb, j).apply(rb.phi);
  std::array<std::array<Complex, 3>, 3> g;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) g[j][l] = inner(v[j], v[l]);
  return g;
}

inline std::vector<CheckResult> verify_invariant_state(const LatticeWindow& win,
                                                       double alpha, double beta) {
  std::vector<CheckResult> out;
  const RegularBundle rb = build_regular(win, alpha, beta);
  const double q = win.q();
  const double q2 = q * q;

  auto numeric = [&](const std::string& name, double residual, double tol,
                     const std::string& detail = "") {
    CheckResult c;
    c.group = "state";
    c.name = name;
    c.exact = false;
    c.tolerance = tol;
    c.residual = residual;
    c.pass = residual < tol;
    c.detail = detail;
    out.push_back(c);
  };

  numeric("invariant state has unit norm", std::abs(vec_norm(rb.phi) - 1.0), 1e-12);

  double kill = 0.0;
  for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d})
    kill = std::max(kill, std::abs(haar_expectation(rb, Element::generator(g))));
  numeric("state expectation kills a, b, c, d", kill, 1e-12);

  const Element bc = Element::parse("b*c");
  const double want_bc = haar_state(bc).to_double(win.q_value);
  const Complex got_bc = haar_expectation(rb, bc);
  numeric("state expectation of bc matches the exact invariant state",
          std::abs(got_bc - Complex(want_bc)), 1e-12,
          "value " + std::to_string(got_bc.real()));

  const auto g = gram_matrix(rb);
  double offdiag = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l)
      if (j != l) offdiag = std::max(offdiag, std::abs(g[j][l]));
  numeric("gram off-diagonals vanish (forms live in disjoint copy sectors)", offdiag,
          1e-12);
  numeric("<w0,w0> = <w2,w2>", std::abs(g[0][0] - g[2][2]), 1e-12);

  const double want00 = (1.0 - q2) * (1.0 - q2) * alpha * alpha;
  const double want11 = (1.0 - q2) * (1.0 - q2) * beta * beta;
  char note[160];
  std::snprintf(note, sizeof(note),
                "computed %.6g vs claimed alpha^2 = %.6g: constant factor (1-q^2)^2 from "
                "the unit state vector (prefactor (1-q^2)^{-1/2} restores alpha^2)",
                g[0][0].real(), alpha * alpha);
  numeric("<w0,w0> = (1-q^2)^2 alpha^2", std::abs(g[0][0] - Complex(want00)), 1e-10,
          note);
  std::snprintf(note, sizeof(note),
                "computed %.6g vs claimed beta^2 = %.6g: constant factor (1-q^2)^2 from "
                "the unit state vector (prefactor (1-q^2)^{-1/2} restores beta^2)",
                g[1][1].real(), beta * beta);
  numeric("<w1,w1> = (1-q^2)^2 beta^2", std::abs(g[1][1] - Complex(want11)), 1e-10,
          note);

  const RegularBundle rb2 = build_regular(win, 2.0 * alpha, 3.0 * beta);
  const auto g2 = gram_matrix(rb2);
  numeric("<w0,w0> scales quadratically in alpha",
          std::abs(g2[0][0] / g[0][0] - Complex(4.0)), 1e-10);
  numeric("<w1,w1> scales quadratically in beta",
          std::abs(g2[1][1] / g[1][1] - Complex(9.0)), 1e-10);

  return out;
}

// ---------------------------------------------------------------------------
// Growth probe
// ---------------------------------------------------------------------------

struct GrowthProbe {
  std::vector<int> k_mins;
  std::vector<double> omega_vals, db_vals, control_vals;
};

// Sup of interior column norms of the b-form and of d(b) as the k-window
// is extended toward -infinity.  For the shift family the sup scales like
// q^{k_min}, so consecutive values grow by 1/q; a w-commuting T keeps every
// column norm k-independent and the sup flat.  The control family violates
// the admissibility conditions on purpose and is assembled unchecked.
inline GrowthProbe growth_probe(const mpq_class& q, int n_max, int k_min_first,
                                int k_min_last, int k_max = 2) {
  if (k_min_first <= k_min_last)
    throw OperatorError("probe expects k_min_first > k_min_last (shrinking k_min)");
  GrowthProbe p;
  for (int k = k_min_first; k >= k_min_last; --k) p.k_mins.push_back(k);
  const int count = static_cast<int>(p.k_mins.size());
  p.omega_vals.resize(count);
  p.db_vals.resize(count);
  p.control_vals.resize(count);

  FSpec control;
  control.T = fam_T_identity();
  control.Rprime = fam_zero();

  // exceptions must not escape a worker thread; collect and rethrow
  std::vector<std::string> errors(count);
  parallel_for(count, [&](int i) {
    try {
      LatticeWindow win;
      win.n_max = n_max;
      win.k_min = p.k_mins[i];
      win.k_max = k_max;
      win.q_value = q;
      const Rep rep = build_rep(win);
      const LatticeOperator F = build_F(win, standard_fspec());
      const Element b = Element::generator(Gen::b);

      const LatticeOperator om = omega_op(rep, F, b);
      p.omega_vals[i] = max_masked_column_norm(om, interior_mask(win, om.radius()));

      // d(b) picks up an extra [R', pi(b)] term whose entries scale like q^{2k},
      // doubling the growth exponent under the diagonal R'.  The probe tracks
      // the shift part alone, so d(b) is taken from the R-free member of the
      // admissible family; the b-form above is R-independent either way.
      FSpec shift_only;
      shift_only.T = fam_T_shift();
      shift_only.Rprime = fam_zero();
      const LatticeOperator Fs = build_F(win, shift_only);
      const LatticeOperator db = commutator_d(rep, Fs, b);
      p.db_vals[i] = max_masked_column_norm(db, interior_mask(win, db.radius()));

      const LatticeOperator Fc = build_F_unchecked(win, control);
      const LatticeOperator omc = omega_op(rep, Fc, b);
      p.control_vals[i] = max_masked_column_norm(omc, interior_mask(win, omc.radius()));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const std::string& e : errors)
    if (!e.empty()) throw WindowError(e);
  return p;
}

inline std::vector<CheckResult> verify_growth_probe(const mpq_class& q, int n_max = 8,
                                                    int k_min_first = -6,
                                                    int k_min_last = -14) {
  const GrowthProbe p = growth_probe(q, n_max, k_min_first, k_min_last);
  std::vector<CheckResult> out;
  const double inv_q = 1.0 / mpq_class(q).get_d();
  auto ratio_check = [&](const std::string& label, double got, double want, double tol,
                         int i) {
    CheckResult c;
    c.group = "growth";
    c.name = label + " (k_min " + std::to_string(p.k_mins[i]) + " vs " +
             std::to_string(p.k_mins[i - 1]) + ")";
    c.exact = false;
    c.tolerance = tol;
    c.residual = std::abs(got - want);
    c.pass = c.residual < tol;
    c.detail = "ratio " + std::to_string(got);
    out.push_back(c);
  };
  for (size_t i = 1; i < p.k_mins.size(); ++i) {
    ratio_check("b-form sup grows by 1/q", p.omega_vals[i] / p.omega_vals[i - 1], inv_q,
                0.05 * inv_q, static_cast<int>(i));
    ratio_check("d(b) sup grows by 1/q (R-free member)", p.db_vals[i] / p.db_vals[i - 1],
                inv_q, 0.05 * inv_q, static_cast<int>(i));
    ratio_check("w-commuting control stays bounded",
                p.control_vals[i] / p.control_vals[i - 1], 1.0, 0.05,
                static_cast<int>(i));
  }
  CheckResult overall;
  overall.group = "growth";
  overall.name = "b-form sup is unbounded as k_min decreases";
  overall.exact = false;
  overall.tolerance = 0.0;
  overall.pass = p.omega_vals.back() > 100.0 * p.omega_vals.front();
  overall.detail = "sup " + std::to_string(p.omega_vals.front()) + " -> " +
                   std::to_string(p.omega_vals.back());
  out.push_back(overall);
  return out;
}

// ---------------------------------------------------------------------------
// Unit disk model
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_disk(const LatticeWindow& win, double tol = 1e-10) {
  std::vector<CheckResult> out;
  const double q = win.q();
  const double q2 = q * q;
  const Complex lam(q - 1.0 / q, 0.0);
  const Complex I01(0.0, 1.0);

  const Rep rep = build_rep(win);
  const FBundle fb = make_f_bundle(win, disk_fspec());
  const Element z = Element::parse("a*c^-1");
  const Element zs = z.star();

  {
    CheckResult c;
    c.group = "disk";
    c.name = "z* z - q^2 z z* = q^2 - 1 (symbolic)";
    c.exact = true;
    const Element rel = zs * z - ScalarQ::q_power(2) * (z * zs) -
                        Element(ScalarQ::q_power(2) - ScalarQ(1));
    c.pass = rel.is_zero();
    out.push_back(c);
  }

  auto residual_check = [&](const std::string& name, const LatticeOperator& expr) {
    CheckResult c;
    c.group = "disk";
    c.name = name;
    c.exact = false;
    c.tolerance = tol;
    c.residual = interior_residual(expr, name);
    c.pass = c.residual < tol;
    out.push_back(c);
  };

  const LatticeOperator Pz = represent(rep, z);
  const LatticeOperator Pzs = represent(rep, zs);
  residual_check("pi(z*) = pi(z)*", Pzs - Pz.adjoint());
  residual_check("pi(z*) pi(z) - q^2 pi(z) pi(z*) = (q^2-1) 1",
                 Pzs * Pz - Complex(q2) * (Pz * Pzs) -
                     Complex(q2 - 1.0) * LatticeOperator::identity(win));

  const LatticeOperator Dz = commutator_d(rep, fb.F, z);
  const LatticeOperator Dzs = commutator_d(rep, fb.F, zs);
  residual_check("d(z) z = q^2 z d(z)", Dz * Pz - Complex(q2) * (Pz * Dz));
  residual_check("d(z) z* = q^-2 z* d(z)", Dz * Pzs - Complex(1.0 / q2) * (Pzs * Dz));
  residual_check("d(z*) z = q^2 z d(z*)", Dzs * Pz - Complex(q2) * (Pz * Dzs));
  residual_check("d(z*) z* = q^-2 z* d(z*)", Dzs * Pzs - Complex(1.0 / q2) * (Pzs * Dzs));

  const LatticeOperator dz_closed =
      build_operator(win, [&](const Site& s, ColumnSink& outc) {
        outc.push_back({{s.n, s.k + 2, s.l},
                        I01 * lam * std::pow(q, s.k + 1 - s.n)});
      });
  residual_check("d(z) = i lambda q^-n w* T*", Dz - dz_closed);

  const LatticeOperator dzs_closed =
      build_operator(win, [&](const Site& s, ColumnSink& outc) {
        outc.push_back({{s.n, s.k - 2, s.l},
                        -I01 * lam * std::pow(q, s.k - s.n - 1)});
      });
  residual_check("d(z*) = -i lambda q^-n-1 w T", Dzs - dzs_closed);

  const LatticeOperator pz_closed =
      build_operator(win, [&](const Site& s, ColumnSink& outc) {
        if (s.n >= 1)
          outc.push_back({{s.n - 1, s.k + 1, s.l},
                          win.lambda_n(s.n) * std::pow(q, -s.n)});
      });
  residual_check("pi(z) = lambda_n q^-n shift", Pz - pz_closed);

  return out;
}

// ---------------------------------------------------------------------------
// Sphere generators under the commutator differential
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_sphere_operators(const Rep& rep, const FBundle& fb,
                                                        double tol = 1e-10) {
  std::vector<CheckResult> out;
  const double q = rep.win.q();
  const Complex lam(q - 1.0 / q, 0.0);
  const Complex I01(0.0, 1.0);
  const SphereGenerators gen = sphere_generators();

  auto P = [&](const Element& e) { return represent(rep, e); };
  const LatticeOperator T = fb.That;
  const LatticeOperator Ts = fb.That.adjoint();
  const LatticeOperator Pxp = P(gen.xp), Pxm = P(gen.xm), Py0 = P(gen.y0);
  const LatticeOperator Dxp = commutator_d(rep, fb.F, gen.xp);
  const LatticeOperator Dxm = commutator_d(rep, fb.F, gen.xm);
  const LatticeOperator Dy0 = commutator_d(rep, fb.F, gen.y0);

  auto agree = [&](const std::string& name, const LatticeOperator& got,
                   const LatticeOperator& want) {
    CheckResult c;
    c.group = "sphere-op";
    c.name = name;
    c.exact = false;
    c.tolerance = tol;
    c.residual = interior_residual(got - want, name);
    c.pass = c.residual < tol;
    out.push_back(c);
  };
  auto reject = [&](const std::string& name, const LatticeOperator& got,
                    const LatticeOperator& want, const std::string& note) {
    CheckResult c;
    c.group = "sphere-op";
    c.name = name;
    c.exact = false;
    c.tolerance = 1e-3;
    c.residual = interior_residual(got - want, name);
    c.pass = c.residual > 1e-3;  // a degenerate variant must NOT match
    c.detail = note;
    out.push_back(c);
  };

  agree("d(x+) = i q^-1 lam a T x+ - i lam b T* y0", Dxp,
        (I01 * lam / Complex(q)) * (rep.a * T * Pxp) -
            I01 * lam * (rep.b * Ts * Py0));

  agree("d(x-) = -i q lam d T* x- + i lam c T y0", Dxm,
        Complex(-1.0) * I01 * Complex(q) * lam * (rep.d * Ts * Pxm) +
            I01 * lam * (rep.c * T * Py0));
  reject("d(x-) with a plain T in the first term is rejected", Dxm,
         Complex(-1.0) * I01 * Complex(q) * lam * (rep.d * T * Pxm) +
             I01 * lam * (rep.c * T * Py0),
         "the first term requires the adjoint shift T*");

  const LatticeOperator expr1 = (I01 * lam / Complex(q)) * (rep.a * T * Py0) -
                                I01 * Complex(q) * lam * (rep.d * Ts * Py0);
  const LatticeOperator expr2 =
      I01 * lam * (rep.c * T * Pxp) - I01 * lam * (rep.b * Ts * Pxm);
  agree("d(y0) = i q^-1 lam a T y0 - i q lam d T* y0", Dy0, expr1);
  agree("d(y0) = i lam c T x+ - i lam b T* x-", Dy0, expr2);
  agree("the two d(y0) factorizations agree", expr1, expr2);
  reject("d(y0) with a plain T in the second term is rejected", Dy0,
         (I01 * lam / Complex(q)) * (rep.a * T * Py0) -
             I01 * Complex(q) * lam * (rep.d * T * Py0),
         "the second term requires the adjoint shift T*");

  // reconstruction of the block operators from localized differentials
  const LatticeOperator Trec =
      (I01 / lam) * (rep.b * commutator_d(rep, fb.F, Element::parse("d*b^-1")));
  agree("T = i lambda^-1 b d(d b^-1)", Trec, T);
  const LatticeOperator Tsrec =
      (Complex(-1.0) * I01 / lam) * (rep.c * commutator_d(rep, fb.F, Element::parse("a*c^-1")));
  agree("T* = -i lambda^-1 c d(a c^-1)", Tsrec, Ts);

  return out;
}

}  // namespace qdc
