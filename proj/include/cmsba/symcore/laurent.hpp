#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cmsba {

// Truncated Laurent series sum_{k=lo}^{hi} c_k t^k. `hi` is the truncation
// order: every coefficient above it is unknown, not zero. Orders below `lo`
// are exactly zero.
template <class C>
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int lo, int hi) : lo_(lo), hi_(hi), coeffs_(hi >= lo ? hi - lo + 1 : 0) {}
  LaurentSeries(int lo, std::vector<C> coeffs, int hi) : lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
    coeffs_.resize(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0);
  }

  int low_order() const { return lo_; }
  int truncation() const { return hi_; }

  // Throws std::out_of_range above the truncation order.
  const C& coeff(int k) const {
    if (k > hi_) throw std::out_of_range("Laurent coefficient beyond truncation order");
    if (k < lo_) return zero();
    return coeffs_[static_cast<std::size_t>(k - lo_)];
  }
  C& mutable_coeff(int k) {
    if (k > hi_ || k < lo_) throw std::out_of_range("Laurent coefficient outside stored range");
    return coeffs_[static_cast<std::size_t>(k - lo_)];
  }

  LaurentSeries& operator+=(const LaurentSeries& o) {
    int lo = std::min(lo_, o.lo_);
    int hi = std::min(hi_, o.hi_);
    LaurentSeries out(lo, hi);
    for (int k = lo; k <= hi; ++k) {
      C v = k >= lo_ ? coeff(k) : C{};
      if (k >= o.lo_) v += o.coeff(k);
      out.mutable_coeff(k) = std::move(v);
    }
    return *this = std::move(out);
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    int lo = a.lo_ + b.lo_;
    int hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
    LaurentSeries out(lo, hi);
    for (int i = a.lo_; i <= a.hi_; ++i) {
      if (is_zero_coeff(a.coeff(i))) continue;
      for (int j = b.lo_; i + j <= hi && j <= b.hi_; ++j) {
        if (is_zero_coeff(b.coeff(j))) continue;
        out.mutable_coeff(i + j) += a.coeff(i) * b.coeff(j);
      }
    }
    return out;
  }

  // Multiplies by t^k.
  LaurentSeries shifted(int k) const {
    LaurentSeries out = *this;
    out.lo_ += k;
    out.hi_ += k;
    return out;
  }

 private:
  static const C& zero() {
    static const C z{};
    return z;
  }
  static bool is_zero_coeff(const C& c) { return c.is_zero(); }

  int lo_ = 0;
  int hi_ = -1;
  std::vector<C> coeffs_;
};

}  // namespace cmsba
