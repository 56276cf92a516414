#pragma once

// The coordinate Hopf *-algebra of the quantum group, realized as an exact
// rewrite system over Q(q).  Elements are kept in PBW normal form with
// monomial basis
//     a^p b^m c^r        (p >= 0, "A side")
//     b^m c^r d^s        (s >= 1, "D side")
// subject to  ab=qba, ac=qca, bd=qdb, cd=qdc, bc=cb, ad-qbc=1, da-q^{-1}bc=1.
// The localized algebra additionally inverts b and c (negative exponents).

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdc/scalar_q.hpp"

namespace qdc {

class AlgebraError : public std::runtime_error {
 public:
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

enum class Gen : int { a, b, c, d, b_inv, c_inv };

inline const char* gen_name(Gen g) {
  switch (g) {
    case Gen::a: return "a";
    case Gen::b: return "b";
    case Gen::c: return "c";
    case Gen::d: return "d";
    case Gen::b_inv: return "b^-1";
    case Gen::c_inv: return "c^-1";
  }
  return "?";
}

// Normal-ordered monomial.  Invariant: a >= 0, d >= 0, a*d == 0.
// Negative b or c exponents mark localized monomials.
struct Monomial {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;

  auto operator<=>(const Monomial&) const = default;

  static Monomial unit() { return {}; }
  bool is_unit() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_localized() const { return b < 0 || c < 0; }
  int degree() const { return a + std::abs(b) + std::abs(c) + d; }

  // Generator word in normal order.
  std::vector<Gen> letters() const {
    std::vector<Gen> w;
    for (int i = 0; i < a; ++i) w.push_back(Gen::a);
    for (int i = 0; i < (b >= 0 ? b : -b); ++i) w.push_back(b >= 0 ? Gen::b : Gen::b_inv);
    for (int i = 0; i < (c >= 0 ? c : -c); ++i) w.push_back(c >= 0 ? Gen::c : Gen::c_inv);
    for (int i = 0; i < d; ++i) w.push_back(Gen::d);
    return w;
  }

  std::string render() const {
    if (is_unit()) return "1";
    std::string out;
    auto piece = [&out](const char* g, int e) {
      if (e == 0) return;
      if (!out.empty()) out += "*";
      out += g;
      if (e != 1) out += "^" + std::to_string(e);
    };
    piece("a", a);
    piece("b", b);
    piece("c", c);
    piece("d", d);
    return out;
  }
};

class Element;
Element operator*(const Element& x, const Element& y);

class Element {
 public:
  using Terms = std::map<Monomial, ScalarQ>;

  Element() = default;
  Element(const ScalarQ& s) {
    if (!s.is_zero()) terms_[Monomial::unit()] = s;
  }
  Element(int v) : Element(ScalarQ(v)) {}

  static Element zero() { return {}; }
  static Element unit() { return Element(ScalarQ(1)); }
  static Element monomial(const Monomial& m, const ScalarQ& coeff = ScalarQ(1)) {
    Element e;
    if (!coeff.is_zero()) e.terms_[m] = coeff;
    return e;
  }
  static Element generator(Gen g) {
    Monomial m;
    switch (g) {
      case Gen::a: m.a = 1; break;
      case Gen::b: m.b = 1; break;
      case Gen::c: m.c = 1; break;
      case Gen::d: m.d = 1; break;
      case Gen::b_inv: m.b = -1; break;
      case Gen::c_inv: m.c = -1; break;
    }
    return monomial(m);
  }

  const Terms& terms() const { return terms_; }
  ScalarQ coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ScalarQ(0) : it->second;
  }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  ScalarQ scalar_part() const {
    auto it = terms_.find(Monomial::unit());
    return it == terms_.end() ? ScalarQ(0) : it->second;
  }
  bool is_localized() const {
    for (const auto& [m, s] : terms_)
      if (m.is_localized()) return true;
    return false;
  }
  int degree() const {
    int d = 0;
    for (const auto& [m, s] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Monomial& m, const ScalarQ& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, s);
    if (!inserted) {
      it->second += s;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend Element operator+(const Element& x, const Element& y) {
    Element r = x;
    for (const auto& [m, s] : y.terms_) r.add_term(m, s);
    return r;
  }
  friend Element operator-(const Element& x, const Element& y) {
    Element r = x;
    for (const auto& [m, s] : y.terms_) r.add_term(m, -s);
    return r;
  }
  friend Element operator-(const Element& x) {
    Element r;
    for (const auto& [m, s] : x.terms_) r.terms_[m] = -s;
    return r;
  }
  friend Element operator*(const ScalarQ& s, const Element& x) {
    Element r;
    if (s.is_zero()) return r;
    for (const auto& [m, v] : x.terms_) r.terms_[m] = s * v;
    return r;
  }
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.terms_ == y.terms_;
  }

  // Right-multiplication by a single generator, the heart of the rewrite
  // system.  All other products reduce to this.
  Element times_gen(Gen g) const {
    Element out;
    for (const auto& [mo, s] : terms_) {
      if (mo.d == 0) {
        const int p = mo.a, m = mo.b, r = mo.c;
        switch (g) {
          case Gen::a:
            out.add_term({p + 1, m, r, 0}, s * ScalarQ::q_power(-(m + r)));
            break;
          case Gen::b:
            out.add_term({p, m + 1, r, 0}, s);
            break;
          case Gen::c:
            out.add_term({p, m, r + 1, 0}, s);
            break;
          case Gen::d:
            if (p >= 1) {
              out.add_term({p - 1, m, r, 0}, s * ScalarQ::q_power(m + r));
              out.add_term({p - 1, m + 1, r + 1, 0}, s * ScalarQ::q_power(m + r + 1));
            } else {
              out.add_term({0, m, r, 1}, s);
            }
            break;
          case Gen::b_inv:
            out.add_term({p, m - 1, r, 0}, s);
            break;
          case Gen::c_inv:
            out.add_term({p, m, r - 1, 0}, s);
            break;
        }
      } else {
        const int m = mo.b, r = mo.c, sd = mo.d;
        switch (g) {
          case Gen::a: {
            Monomial t1 = (sd == 1) ? Monomial{0, m, r, 0} : Monomial{0, m, r, sd - 1};
            Monomial t2 = (sd == 1) ? Monomial{0, m + 1, r + 1, 0}
                                    : Monomial{0, m + 1, r + 1, sd - 1};
            out.add_term(t1, s);
            out.add_term(t2, s * ScalarQ::q_power(1 - 2 * sd));
            break;
          }
          case Gen::b:
            out.add_term({0, m + 1, r, sd}, s * ScalarQ::q_power(-sd));
            break;
          case Gen::c:
            out.add_term({0, m, r + 1, sd}, s * ScalarQ::q_power(-sd));
            break;
          case Gen::d:
            out.add_term({0, m, r, sd + 1}, s);
            break;
          case Gen::b_inv:
            out.add_term({0, m - 1, r, sd}, s * ScalarQ::q_power(sd));
            break;
          case Gen::c_inv:
            out.add_term({0, m, r - 1, sd}, s * ScalarQ::q_power(sd));
            break;
        }
      }
    }
    return out;
  }

  // *-structure: a*=d, b*=-qc, c*=-q^{-1}b, d*=a, extended antimultiplicatively.
  // Closed form on normal monomials.
  Element star() const {
    Element out;
    for (const auto& [mo, s] : terms_) {
      ScalarQ f = ScalarQ::q_power(mo.b - mo.c);
      if (((mo.b + mo.c) % 2 + 2) % 2 == 1) f = -f;
      if (mo.d == 0) {
        Monomial t = (mo.a >= 1) ? Monomial{0, mo.c, mo.b, mo.a} : Monomial{0, mo.c, mo.b, 0};
        out.add_term(t, s * f);
      } else {
        out.add_term({mo.d, mo.c, mo.b, 0}, s * f);
      }
    }
    return out;
  }

  // Antipode: S(a)=d, S(b)=-q^{-1}b, S(c)=-qc, S(d)=a; closed form.
  Element antipode() const {
    Element out;
    for (const auto& [mo, s] : terms_) {
      ScalarQ f = ScalarQ::q_power(mo.c - mo.b);
      if (((mo.b + mo.c) % 2 + 2) % 2 == 1) f = -f;
      if (mo.d == 0) {
        Monomial t = (mo.a >= 1) ? Monomial{0, mo.b, mo.c, mo.a} : Monomial{0, mo.b, mo.c, 0};
        out.add_term(t, s * f);
      } else {
        out.add_term({mo.d, mo.b, mo.c, 0}, s * f);
      }
    }
    return out;
  }

  ScalarQ counit() const {
    ScalarQ tot(0);
    for (const auto& [mo, s] : terms_) {
      if (mo.is_localized())
        throw AlgebraError("counit is undefined on localized elements");
      if (mo.b == 0 && mo.c == 0) tot += s;
    }
    return tot;
  }

  std::string render() const;
  static Element parse(const std::string& text);

 private:
  Terms terms_;
};

inline Element operator*(const Element& x, const Element& y) {
  Element out;
  for (const auto& [mo, s] : y.terms()) {
    Element cur = s * x;
    for (Gen g : mo.letters()) cur = cur.times_gen(g);
    out += cur;
  }
  return out;
}

// Product of a factor list in the given order.
inline Element normal_form(const std::vector<Element>& factors) {
  Element acc = Element::unit();
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

// The unique invariant state: kills every normal monomial except the
// balanced ones a^0 b^k c^k, where it takes the value
// (-q)^k (1-q^2) / (1-q^{2k+2}).
inline ScalarQ haar_state(const Element& x) {
  ScalarQ total(0);
  const ScalarQ q2 = ScalarQ::q_power(2);
  for (const auto& [m, s] : x.terms()) {
    if (m.is_localized())
      throw AlgebraError("invariant state is undefined on localized elements");
    if (m.a != 0 || m.d != 0 || m.b != m.c) continue;
    const int k = m.b;
    ScalarQ val = (ScalarQ(1) - q2) / (ScalarQ(1) - ScalarQ::q_power(2 * k + 2));
    val = val * ScalarQ::q_power(k);
    if (k % 2 == 1) val = -val;
    total += s * val;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Tensor square, used for coproducts.
// ---------------------------------------------------------------------------

class TensorElement {
 public:
  using Key = std::pair<Monomial, Monomial>;
  using Terms = std::map<Key, ScalarQ>;

  TensorElement() = default;
  static TensorElement of(const Element& x, const Element& y,
                          const ScalarQ& coeff = ScalarQ(1)) {
    TensorElement t;
    for (const auto& [mx, sx] : x.terms())
      for (const auto& [my, sy] : y.terms()) t.add_term({mx, my}, coeff * sx * sy);
    return t;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& k, const ScalarQ& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, s);
    if (!inserted) {
      it->second += s;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend TensorElement operator+(const TensorElement& x, const TensorElement& y) {
    TensorElement r = x;
    for (const auto& [k, s] : y.terms_) r.add_term(k, s);
    return r;
  }
  friend TensorElement operator-(const TensorElement& x, const TensorElement& y) {
    TensorElement r = x;
    for (const auto& [k, s] : y.terms_) r.add_term(k, -s);
    return r;
  }
  friend TensorElement operator*(const ScalarQ& s, const TensorElement& x) {
    TensorElement r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : x.terms_) r.terms_[k] = s * v;
    return r;
  }
  // Componentwise algebra product (u1 (x) v1)(u2 (x) v2) = u1u2 (x) v1v2.
  friend TensorElement operator*(const TensorElement& x, const TensorElement& y) {
    TensorElement r;
    for (const auto& [kx, sx] : x.terms_)
      for (const auto& [ky, sy] : y.terms_) {
        Element left = Element::monomial(kx.first) * Element::monomial(ky.first);
        Element right = Element::monomial(kx.second) * Element::monomial(ky.second);
        for (const auto& [ml, sl] : left.terms())
          for (const auto& [mr, sr] : right.terms())
            r.add_term({ml, mr}, sx * sy * sl * sr);
      }
    return r;
  }
  friend bool operator==(const TensorElement& x, const TensorElement& y) {
    return x.terms_ == y.terms_;
  }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, s] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + s.render() + ")*" + k.first.render() + "(x)" + k.second.render();
    }
    return out;
  }

 private:
  Terms terms_;
};

inline TensorElement coproduct(const Element& x) {
  static const auto delta_gen = [] {
    auto E = [](Gen g) { return Element::generator(g); };
    std::map<Gen, std::vector<std::pair<Element, Element>>> t;
    t[Gen::a] = {{E(Gen::a), E(Gen::a)}, {E(Gen::b), E(Gen::c)}};
    t[Gen::b] = {{E(Gen::a), E(Gen::b)}, {E(Gen::b), E(Gen::d)}};
    t[Gen::c] = {{E(Gen::c), E(Gen::a)}, {E(Gen::d), E(Gen::c)}};
    t[Gen::d] = {{E(Gen::c), E(Gen::b)}, {E(Gen::d), E(Gen::d)}};
    return t;
  }();
  TensorElement out;
  for (const auto& [mo, s] : x.terms()) {
    if (mo.is_localized())
      throw AlgebraError("coproduct is undefined on localized elements");
    TensorElement cur = TensorElement::of(Element::unit(), Element::unit());
    for (Gen g : mo.letters()) {
      TensorElement next;
      for (const auto& [uv, cc] : cur.terms())
        for (const auto& [gu, gv] : delta_gen.at(g)) {
          Element left = Element::monomial(uv.first) * gu;
          Element right = Element::monomial(uv.second) * gv;
          for (const auto& [ml, sl] : left.terms())
            for (const auto& [mr, sr] : right.terms())
              next.add_term({ml, mr}, cc * sl * sr);
        }
      cur = next;
    }
    out = out + s * cur;
  }
  return out;
}

// Tensor words (S (x) id) Delta(x) - counit(x) 1(x)1.  Feeding the left slot
// to an operator conjugation turns these into the F-sandwich associated to x.
inline TensorElement omega_words(const Element& x) {
  TensorElement out;
  const TensorElement cp = coproduct(x);
  for (const auto& [uv, s] : cp.terms())
    out = out +
          TensorElement::of(Element::monomial(uv.first).antipode(),
                            Element::monomial(uv.second), s);
  ScalarQ e = x.counit();
  if (!e.is_zero())
    out.add_term({Monomial::unit(), Monomial::unit()}, -e);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing and rendering
// ---------------------------------------------------------------------------

inline std::string Element::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, s] : terms_) {
    std::string coeff = s.render();
    bool atomic = coeff.find(' ') == std::string::npos &&
                  coeff.find('/') == std::string::npos;
    std::string piece;
    if (m.is_unit()) {
      piece = atomic ? coeff : "(" + coeff + ")";
    } else if (s == ScalarQ(1)) {
      piece = m.render();
    } else if (s == ScalarQ(-1)) {
      piece = "-" + m.render();
    } else {
      piece = (atomic ? coeff : "(" + coeff + ")") + "*" + m.render();
    }
    if (out.empty()) {
      out = piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

namespace detail {

class ElementParser {
 public:
  explicit ElementParser(const std::string& s) : s_(s) {}

  Element parse() {
    Element v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  Element expr() {
    skip_ws();
    bool neg = false;
    while (peek() == '+' || peek() == '-') {
      if (get() == '-') neg = !neg;
      skip_ws();
    }
    Element v = term();
    if (neg) v = -v;
    for (;;) {
      skip_ws();
      char ch = peek();
      if (ch == '+' || ch == '-') {
        get();
        Element rhs = term();
        v = (ch == '+') ? v + rhs : v - rhs;
      } else {
        return v;
      }
    }
  }

  Element term() {
    Element v = factor();
    for (;;) {
      skip_ws();
      char ch = peek();
      if (ch == '*' || ch == '/') {
        get();
        Element rhs = factor();
        if (ch == '*') {
          v = v * rhs;
        } else {
          if (!rhs.is_scalar()) fail("division only by scalars");
          v = rhs.scalar_part().inv() * v;
        }
      } else {
        return v;
      }
    }
  }

  Element factor() {
    skip_ws();
    char ch = peek();
    Element base;
    bool is_gen = false;
    Gen gen{};
    if (ch == '(') {
      get();
      base = expr();
      skip_ws();
      if (get() != ')') fail("expected ')'");
    } else if (ch == 'q') {
      get();
      base = Element(ScalarQ::q());
    } else if (ch == 'a' || ch == 'b' || ch == 'c' || ch == 'd') {
      get();
      gen = (ch == 'a') ? Gen::a : (ch == 'b') ? Gen::b : (ch == 'c') ? Gen::c : Gen::d;
      base = Element::generator(gen);
      is_gen = true;
    } else if (ch == '-') {
      get();
      return -factor();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      base = Element(ScalarQ(mpq_class(read_integer())));
    } else {
      fail("unexpected character");
    }
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        get();
        neg = true;
      }
      long e = read_integer();
      long exp = neg ? -e : e;
      if (is_gen) {
        if (exp < 0 && gen != Gen::b && gen != Gen::c)
          fail("only b and c are invertible");
        Gen use = gen;
        if (exp < 0) use = (gen == Gen::b) ? Gen::b_inv : Gen::c_inv;
        Element acc = Element::unit();
        for (long i = 0; i < std::labs(exp); ++i) acc = acc * Element::generator(use);
        base = acc;
      } else {
        if (!base.is_scalar()) fail("exponent on non-scalar expression");
        base = Element(base.scalar_part().pow(static_cast<int>(exp)));
      }
    }
    return base;
  }

  long read_integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& why) const {
    throw AlgebraError("element parse error at position " + std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Element Element::parse(const std::string& text) {
  return detail::ElementParser(text).parse();
}

}  // namespace qdc
