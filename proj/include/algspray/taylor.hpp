#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace algspray {

// Pointwise evaluation failure: log of a non-positive value, division by
// zero, negative radicand, non-finite intermediate, ...  Callers sampling
// many points catch this and count the point as skipped.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dense multi-index bookkeeping for truncated Taylor expansions in a fixed
// number of variables.  Multi-indices are enumerated by total degree, then
// lexicographically, so the enumeration for order k is a prefix of the one
// for order k+1; positions are therefore consistent across instances with
// the same variable count.  Instances are immutable and cached per
// (nvars, order).
class JetSpace {
public:
  struct Triple {
    int32_t a, b, out;
  };

  static std::shared_ptr<const JetSpace> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }

  // number of multi-indices of total degree <= k
  int count(int k) const { return counts_[k]; }
  int total_count() const { return static_cast<int>(degree_.size()); }

  int degree(int pos) const { return degree_[pos]; }
  std::span<const int> exponents(int pos) const {
    return {exps_.data() + static_cast<size_t>(pos) * nvars_,
            static_cast<size_t>(nvars_)};
  }
  // position of the given multi-index, -1 if its degree exceeds order()
  int position(std::span<const int> exps) const;
  // position of exponents(pos) + e_var, -1 if that exceeds order()
  int bump(int pos, int var) const { return bump_[static_cast<size_t>(pos) * nvars_ + var]; }
  double factorial(int pos) const { return factorial_[pos]; }  // mu!

  // all position pairs (a, b) with degree(a) + degree(b) <= k
  std::span<const Triple> products(int k) const { return products_[k]; }

private:
  JetSpace(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<int> counts_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<int> bump_;
  std::vector<double> factorial_;
  std::vector<std::vector<Triple>> products_;
};

// Truncated multivariate Taylor expansion of a scalar function about a
// point, carried to a given total degree.  Coefficients follow the Taylor
// convention (partial derivative divided by the factorial of the
// multi-index).  Arithmetic truncates to the smaller operand order.
class TaylorPoly {
public:
  TaylorPoly() = default;

  static TaylorPoly constant(std::shared_ptr<const JetSpace> space, int order, double v);
  static TaylorPoly variable(std::shared_ptr<const JetSpace> space, int order, int var,
                             double value);

  bool valid() const { return space_ != nullptr; }
  int order() const { return order_; }
  int nvars() const { return space_->nvars(); }
  const std::shared_ptr<const JetSpace>& space() const { return space_; }

  double value() const { return c_[0]; }
  double coeff(int pos) const { return c_[pos]; }
  // plain partial derivative (Taylor coefficient times factorial)
  double partial(std::span<const int> exps) const;

  TaylorPoly derivative(int var) const;  // order drops by one
  TaylorPoly pow_int(int k) const;

  friend TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b);
  friend TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b);
  friend TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b);
  friend TaylorPoly operator/(const TaylorPoly& a, const TaylorPoly& b);
  friend TaylorPoly operator+(const TaylorPoly& a, double s);
  friend TaylorPoly operator*(const TaylorPoly& a, double s);
  friend TaylorPoly operator-(const TaylorPoly& a);

  friend TaylorPoly sin(const TaylorPoly&);
  friend TaylorPoly cos(const TaylorPoly&);
  friend TaylorPoly tan(const TaylorPoly&);
  friend TaylorPoly exp(const TaylorPoly&);
  friend TaylorPoly log(const TaylorPoly&);
  friend TaylorPoly sqrt(const TaylorPoly&);
  friend TaylorPoly sinh(const TaylorPoly&);
  friend TaylorPoly cosh(const TaylorPoly&);

  bool all_finite() const;

private:
  TaylorPoly(std::shared_ptr<const JetSpace> space, int order)
      : space_(std::move(space)), order_(order), c_(space_->count(order), 0.0) {}

  // this with the constant term dropped, composed into the power series
  // sum_r series[r] * w^r via Horner
  TaylorPoly apply_series(std::span<const double> series) const;
  TaylorPoly reciprocal() const;

  std::shared_ptr<const JetSpace> space_;
  int order_ = -1;
  std::vector<double> c_;
};

}  // namespace algspray
