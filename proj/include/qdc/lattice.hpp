#pragma once

// Truncated index lattices and sparse operators on them.
//
// The Hilbert space is spanned by sites (n, k, l) with n a level index
// (n = 0 is a genuine floor of the model, not a truncation), k a bilateral
// shift index, and l an optional copy index used by the block-sum
// representation.  Operators are stored column-major and track a
// conservative per-axis support radius: products add radii, sums take the
// maximum.  Identities are evaluated only on sources whose distance from
// every truncated boundary is at least that radius, which makes residuals
// pure floating round-off rather than truncation error.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qdc {

class OperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a window is too small to leave any interior site for the
// requested support radius.
class WindowError : public OperatorError {
 public:
  using OperatorError::OperatorError;
};

struct Site {
  int n = 0;
  int k = 0;
  int l = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct LatticeWindow {
  int n_max = 1;  // levels n = 0 .. n_max-1
  int k_min = -1;
  int k_max = 1;
  int l_min = 0;  // copy axis; l_min = l_max = 0 means a single copy
  int l_max = 0;
  mpq_class q_value = mpq_class(1, 2);

  void validate() const {
    if (n_max < 1) throw OperatorError("window needs at least one level");
    if (!(k_min < 0 && 0 < k_max))
      throw OperatorError("window must straddle k = 0 (k_min < 0 < k_max)");
    if (l_min > l_max) throw OperatorError("window has an empty copy range");
    if (!(q_value > 0 && q_value < 1))
      throw OperatorError("q must lie strictly between 0 and 1");
  }

  int k_count() const { return k_max - k_min + 1; }
  int l_count() const { return l_max - l_min + 1; }
  int dim() const { return n_max * k_count() * l_count(); }
  bool has_copies() const { return l_count() > 1; }

  bool contains(const Site& s) const {
    return s.n >= 0 && s.n < n_max && s.k >= k_min && s.k <= k_max &&
           s.l >= l_min && s.l <= l_max;
  }

  int index(const Site& s) const {
    return (s.n * k_count() + (s.k - k_min)) * l_count() + (s.l - l_min);
  }

  Site site(int idx) const {
    Site s;
    s.l = l_min + idx % l_count();
    idx /= l_count();
    s.k = k_min + idx % k_count();
    s.n = idx / k_count();
    return s;
  }

  double q() const { return q_value.get_d(); }
  // lambda_n = (1 - q^{2n})^{1/2}; lambda_0 = 0
  double lambda_n(int n) const { return std::sqrt(1.0 - std::pow(q(), 2 * n)); }

  friend bool operator==(const LatticeWindow& a, const LatticeWindow& b) {
    return a.n_max == b.n_max && a.k_min == b.k_min && a.k_max == b.k_max &&
           a.l_min == b.l_min && a.l_max == b.l_max && a.q_value == b.q_value;
  }
};

struct SupportRadius {
  int n = 0;
  int k = 0;
  int l = 0;

  SupportRadius max_with(const SupportRadius& o) const {
    return {std::max(n, o.n), std::max(k, o.k), std::max(l, o.l)};
  }
  SupportRadius plus(const SupportRadius& o) const {
    return {n + o.n, k + o.k, l + o.l};
  }
};

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

class LatticeOperator {
 public:
  LatticeOperator() = default;
  explicit LatticeOperator(LatticeWindow w) : win_(std::move(w)) {}

  static LatticeOperator identity(const LatticeWindow& w) {
    LatticeOperator op(w);
    for (int i = 0; i < w.dim(); ++i) op.cols_[i][i] = 1.0;
    return op;
  }

  const LatticeWindow& window() const { return win_; }
  const SupportRadius& radius() const { return radius_; }
  void set_radius(SupportRadius r) { radius_ = r; }

  bool is_zero() const {
    for (const auto& [s, col] : cols_)
      if (!col.empty()) return false;
    return true;
  }

  // Adds v at (target, source); sites outside the window are dropped,
  // which is the truncation semantics of the model.
  void add(const Site& target, const Site& source, Complex v) {
    if (v == 0.0) return;
    if (!win_.contains(target) || !win_.contains(source)) return;
    radius_ = radius_.max_with({std::abs(target.n - source.n),
                                std::abs(target.k - source.k),
                                std::abs(target.l - source.l)});
    Complex& slot = cols_[win_.index(source)][win_.index(target)];
    slot += v;
    if (slot == 0.0) cols_[win_.index(source)].erase(win_.index(target));
  }

  const std::map<int, Complex>* column(int source) const {
    auto it = cols_.find(source);
    return it == cols_.end() ? nullptr : &it->second;
  }

  CVec apply(const CVec& x) const {
    CVec y(win_.dim(), 0.0);
    for (const auto& [s, col] : cols_) {
      if (x[s] == 0.0) continue;
      for (const auto& [t, v] : col) y[t] += v * x[s];
    }
    return y;
  }

  LatticeOperator operator+(const LatticeOperator& o) const {
    require_same(o);
    LatticeOperator r = *this;
    for (const auto& [s, col] : o.cols_)
      for (const auto& [t, v] : col) {
        Complex& slot = r.cols_[s][t];
        slot += v;
        if (slot == 0.0) r.cols_[s].erase(t);
      }
    r.radius_ = radius_.max_with(o.radius_);
    return r;
  }

  LatticeOperator operator-(const LatticeOperator& o) const {
    return *this + (Complex(-1.0) * o);
  }

  friend LatticeOperator operator*(Complex s, const LatticeOperator& op) {
    LatticeOperator r(op.win_);
    r.radius_ = op.radius_;
    if (s == 0.0) return r;
    for (const auto& [src, col] : op.cols_)
      for (const auto& [t, v] : col) r.cols_[src][t] = s * v;
    return r;
  }

  LatticeOperator operator*(const LatticeOperator& o) const {
    require_same(o);
    LatticeOperator r(win_);
    for (const auto& [s, colB] : o.cols_) {
      std::map<int, Complex>& out = r.cols_[s];
      for (const auto& [mid, vB] : colB) {
        auto itA = cols_.find(mid);
        if (itA == cols_.end()) continue;
        for (const auto& [t, vA] : itA->second) {
          Complex& slot = out[t];
          slot += vA * vB;
          if (slot == 0.0) out.erase(t);
        }
      }
      if (out.empty()) r.cols_.erase(s);
    }
    r.radius_ = radius_.plus(o.radius_);
    return r;
  }

  LatticeOperator adjoint() const {
    LatticeOperator r(win_);
    r.radius_ = radius_;
    for (const auto& [s, col] : cols_)
      for (const auto& [t, v] : col) r.cols_[t][s] = std::conj(v);
    return r;
  }

  double column_norm(int source) const {
    auto it = cols_.find(source);
    if (it == cols_.end()) return 0.0;
    double acc = 0.0;
    for (const auto& [t, v] : it->second) acc += std::norm(v);
    return std::sqrt(acc);
  }

 private:
  void require_same(const LatticeOperator& o) const {
    if (!(win_ == o.win_)) throw OperatorError("operators live on different windows");
  }

  LatticeWindow win_;
  std::map<int, std::map<int, Complex>> cols_;  // source -> target -> value
  SupportRadius radius_;
};

// Convenience builder: fn(site) appends (target, value) pairs for the
// column of a single source site.
template <typename Fn>
LatticeOperator build_operator(const LatticeWindow& w, Fn&& fn) {
  LatticeOperator op(w);
  std::vector<std::pair<Site, Complex>> out;
  for (int i = 0; i < w.dim(); ++i) {
    out.clear();
    Site s = w.site(i);
    fn(s, out);
    for (const auto& [t, v] : out) op.add(t, s, v);
  }
  return op;
}

// Mask of sites whose distance to every truncated boundary is at least the
// given radius.  n = 0 is a genuine floor, so only the n_max side counts.
inline std::vector<char> interior_mask(const LatticeWindow& w, const SupportRadius& r) {
  std::vector<char> mask(w.dim(), 0);
  for (int i = 0; i < w.dim(); ++i) {
    Site s = w.site(i);
    bool ok = s.n + r.n < w.n_max && s.k - r.k >= w.k_min && s.k + r.k <= w.k_max;
    if (w.has_copies() || r.l > 0)
      ok = ok && s.l - r.l >= w.l_min && s.l + r.l <= w.l_max;
    mask[i] = ok ? 1 : 0;
  }
  return mask;
}

inline int mask_count(const std::vector<char>& mask) {
  int c = 0;
  for (char m : mask) c += m;
  return c;
}

inline std::vector<char> require_interior(const LatticeWindow& w, const SupportRadius& r,
                                          const std::string& what) {
  std::vector<char> mask = interior_mask(w, r);
  if (mask_count(mask) == 0)
    throw WindowError("window too small: no interior sites remain for " + what +
                      " (support radius n=" + std::to_string(r.n) +
                      " k=" + std::to_string(r.k) + " l=" + std::to_string(r.l) + ")");
  return mask;
}

// Largest column norm of op over masked source sites.
inline double max_masked_column_norm(const LatticeOperator& op,
                                     const std::vector<char>& mask) {
  double best = 0.0;
  for (int i = 0; i < op.window().dim(); ++i)
    if (mask[i]) best = std::max(best, op.column_norm(i));
  return best;
}

// Residual of an identity: the operator is expected to vanish on its own
// interior, computed from the tracked support radius.
inline double interior_residual(const LatticeOperator& op, const std::string& what) {
  std::vector<char> mask = require_interior(op.window(), op.radius(), what);
  return max_masked_column_norm(op, mask);
}

// Column-wise relative residual of "A = B": per interior source column,
// the difference norm divided by max(1, column scale of either side).
// Used for sampled identities whose operands can reach huge magnitudes
// (localized monomial words), where absolute residuals are uninformative.
inline double relative_residual(const LatticeOperator& A, const LatticeOperator& B,
                                const std::string& what) {
  const SupportRadius r = A.radius().max_with(B.radius());
  std::vector<char> mask = require_interior(A.window(), r, what);
  LatticeOperator diff = A - B;
  double worst = 0.0;
  for (int i = 0; i < A.window().dim(); ++i) {
    if (!mask[i]) continue;
    const double scale = std::max({1.0, A.column_norm(i), B.column_norm(i)});
    worst = std::max(worst, diff.column_norm(i) / scale);
  }
  return worst;
}

inline double vec_norm(const CVec& x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

inline Complex inner(const CVec& x, const CVec& y) {
  // <x, y> linear in the first argument
  Complex acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

}  // namespace qdc
