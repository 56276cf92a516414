#pragma once

// Exact arithmetic in the field Q(q) of rational functions of a formal
// parameter q, represented as ratios of Laurent polynomials with GMP
// rational coefficients.  Values are kept canonical at all times:
//   * numerator and denominator polynomial parts are coprime,
//   * the denominator is a plain polynomial (lowest exponent 0) whose
//     lowest-order coefficient is exactly 1,
//   * any overall power of q sits in the numerator's Laurent offset.
// Equality is therefore structural.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdc {

class ScalarError : public std::runtime_error {
 public:
  explicit ScalarError(const std::string& what) : std::runtime_error(what) {}
};

// A Laurent polynomial sum_i c[i] * q^(lo+i).  Zero <=> c empty.
struct LaurentPoly {
  int lo = 0;
  std::vector<mpq_class> c;

  LaurentPoly() = default;
  LaurentPoly(const mpq_class& v) {
    if (v != 0) c.push_back(v);
  }
  static LaurentPoly q_power(int e, const mpq_class& coeff = 1) {
    LaurentPoly p;
    if (coeff != 0) {
      p.lo = e;
      p.c.push_back(coeff);
    }
    return p;
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return lo + static_cast<int>(c.size()) - 1; }

  void normalize() {
    size_t front = 0;
    while (front < c.size() && c[front] == 0) ++front;
    size_t back = c.size();
    while (back > front && c[back - 1] == 0) --back;
    if (front > 0 || back < c.size()) {
      c = std::vector<mpq_class>(c.begin() + front, c.begin() + back);
      lo += static_cast<int>(front);
    }
    if (c.empty()) lo = 0;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.lo, b.lo);
    int hi = std::max(a.degree(), b.degree());
    LaurentPoly r;
    r.lo = lo;
    r.c.assign(static_cast<size_t>(hi - lo + 1), mpq_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[a.lo - lo + i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[b.lo - lo + i] += b.c[i];
    r.normalize();
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + (-b);
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LaurentPoly r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.normalize();
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo == b.lo && a.c == b.c;
  }

  // Exact evaluation at q = q0 (q0 must be nonzero when lo < 0).
  mpq_class evaluate(const mpq_class& q0) const {
    if (is_zero()) return 0;
    mpq_class acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * q0 + c[i];
    if (lo > 0) {
      for (int i = 0; i < lo; ++i) acc *= q0;
    } else if (lo < 0) {
      if (q0 == 0) throw ScalarError("Laurent evaluation at q=0");
      for (int i = 0; i < -lo; ++i) acc /= q0;
    }
    return acc;
  }
};

namespace detail {

// Polynomial long division on the poly parts (requires b != 0, a.lo,b.lo >= 0).
inline void poly_divmod(const LaurentPoly& a, const LaurentPoly& b,
                        LaurentPoly& quot, LaurentPoly& rem) {
  quot = LaurentPoly{};
  rem = a;
  if (b.is_zero()) throw ScalarError("polynomial division by zero");
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    mpq_class f = rem.c.back() / b.c.back();
    LaurentPoly t = LaurentPoly::q_power(shift, f);
    quot = quot + t;
    rem = rem - t * b;
  }
}

inline LaurentPoly make_monic(LaurentPoly p) {
  if (p.is_zero()) return p;
  mpq_class lead = p.c.back();
  for (auto& x : p.c) x /= lead;
  return p;
}

// Monic gcd of the polynomial parts (Laurent offsets ignored by the caller).
inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
  a.lo = 0;
  b.lo = 0;
  while (!b.is_zero()) {
    LaurentPoly q, r;
    poly_divmod(a, b, q, r);
    a = b;
    b = make_monic(r);
  }
  return make_monic(a);
}

}  // namespace detail

class ScalarQ {
 public:
  ScalarQ() : den_(mpq_class(1)) {}
  ScalarQ(int v) : num_(mpq_class(v)), den_(mpq_class(1)) {}
  ScalarQ(const mpq_class& v) : num_(v), den_(mpq_class(1)) {}
  ScalarQ(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  static ScalarQ q_power(int e) { return ScalarQ(LaurentPoly::q_power(e), LaurentPoly(1)); }
  static ScalarQ q() { return q_power(1); }
  // q - q^-1 and q + q^-1
  static ScalarQ lambda() { return q_power(1) - q_power(-1); }
  static ScalarQ lambda_plus() { return q_power(1) + q_power(-1); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_ == LaurentPoly(1) && num_ == LaurentPoly(1); }
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  friend ScalarQ operator+(const ScalarQ& a, const ScalarQ& b) {
    return ScalarQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ScalarQ operator-(const ScalarQ& a, const ScalarQ& b) {
    return ScalarQ(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ScalarQ operator-(const ScalarQ& a) {
    ScalarQ r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend ScalarQ operator*(const ScalarQ& a, const ScalarQ& b) {
    return ScalarQ(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend ScalarQ operator/(const ScalarQ& a, const ScalarQ& b) { return a * b.inv(); }
  ScalarQ& operator+=(const ScalarQ& o) { return *this = *this + o; }
  ScalarQ& operator-=(const ScalarQ& o) { return *this = *this - o; }
  ScalarQ& operator*=(const ScalarQ& o) { return *this = *this * o; }
  ScalarQ& operator/=(const ScalarQ& o) { return *this = *this / o; }

  ScalarQ inv() const {
    if (is_zero()) throw ScalarError("inverse of zero scalar");
    return ScalarQ(den_, num_);
  }

  ScalarQ pow(int e) const {
    if (e == 0) return ScalarQ(1);
    ScalarQ base = e > 0 ? *this : inv();
    int n = std::abs(e);
    ScalarQ acc(1);
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
  }

  friend bool operator==(const ScalarQ& a, const ScalarQ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ScalarQ& a, const ScalarQ& b) { return !(a == b); }

  mpq_class evaluate(const mpq_class& q0) const {
    mpq_class d = den_.evaluate(q0);
    if (d == 0) throw ScalarError("denominator vanishes at evaluation point");
    return num_.evaluate(q0) / d;
  }
  double to_double(const mpq_class& q0) const { return evaluate(q0).get_d(); }

  std::string render() const;
  static ScalarQ parse(const std::string& text);

 private:
  void canonicalize() {
    if (den_.is_zero()) throw ScalarError("zero denominator");
    if (num_.is_zero()) {
      num_ = LaurentPoly{};
      den_ = LaurentPoly(1);
      return;
    }
    // Move Laurent offsets into the numerator.
    int num_off = num_.lo;
    int den_off = den_.lo;
    num_.lo = 0;
    den_.lo = 0;
    LaurentPoly g = detail::poly_gcd(num_, den_);
    if (!(g == LaurentPoly(1))) {
      LaurentPoly q, r;
      detail::poly_divmod(num_, g, q, r);
      num_ = q;
      detail::poly_divmod(den_, g, q, r);
      den_ = q;
    }
    // The reduced den may still carry a q-power; shift it to the numerator.
    num_off -= den_off + den_.lo;
    den_.lo = 0;
    mpq_class lead = den_.c.front();
    for (auto& x : den_.c) x /= lead;
    for (auto& x : num_.c) x /= lead;
    num_.lo += num_off;
  }

  LaurentPoly num_;
  LaurentPoly den_{mpq_class(1)};
};

// ---------------------------------------------------------------------------
// Rendering: canonical text form, one term per monomial in ascending powers.
// Round-trips through parse().
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_mpq(const mpq_class& v) { return v.get_str(); }

inline std::string render_poly(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < p.c.size(); ++i) {
    const mpq_class& coeff = p.c[i];
    if (coeff == 0) continue;
    int e = p.lo + static_cast<int>(i);
    mpq_class abs_coeff = abs(coeff);
    std::string term;
    if (e == 0) {
      term = render_mpq(abs_coeff);
    } else {
      std::string qpart = (e == 1) ? "q" : "q^" + std::to_string(e);
      term = (abs_coeff == 1) ? qpart : render_mpq(abs_coeff) + "*" + qpart;
    }
    if (out.empty()) {
      out = (coeff < 0 ? "-" : "") + term;
    } else {
      out += (coeff < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

}  // namespace detail

inline std::string ScalarQ::render() const {
  if (den_ == LaurentPoly(1)) return detail::render_poly(num_);
  return "(" + detail::render_poly(num_) + ")/(" + detail::render_poly(den_) + ")";
}

// ---------------------------------------------------------------------------
// Parsing: full expression grammar over +,-,*,/,^,parentheses,q,rationals.
// ---------------------------------------------------------------------------

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}

  ScalarQ parse() {
    ScalarQ v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  ScalarQ expr() {
    skip_ws();
    bool neg = false;
    while (peek() == '+' || peek() == '-') {
      if (get() == '-') neg = !neg;
      skip_ws();
    }
    ScalarQ v = term();
    if (neg) v = -v;
    for (;;) {
      skip_ws();
      char ch = peek();
      if (ch == '+' || ch == '-') {
        get();
        ScalarQ rhs = term();
        v = (ch == '+') ? v + rhs : v - rhs;
      } else {
        return v;
      }
    }
  }

  ScalarQ term() {
    ScalarQ v = factor();
    for (;;) {
      skip_ws();
      char ch = peek();
      if (ch == '*' || ch == '/') {
        get();
        ScalarQ rhs = factor();
        v = (ch == '*') ? v * rhs : v / rhs;
      } else {
        return v;
      }
    }
  }

  ScalarQ factor() {
    skip_ws();
    char ch = peek();
    ScalarQ base;
    if (ch == '(') {
      get();
      base = expr();
      skip_ws();
      if (get() != ')') fail("expected ')'");
    } else if (ch == 'q') {
      get();
      base = ScalarQ::q();
    } else if (ch == '-') {
      get();
      return -factor();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      base = ScalarQ(mpq_class(read_integer()));
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
      base = base.pow(static_cast<int>(neg ? -e : e));
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
    throw ScalarError("scalar parse error at position " + std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline ScalarQ ScalarQ::parse(const std::string& text) {
  return detail::ScalarParser(text).parse();
}

}  // namespace qdc
