#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "algspray/expr.hpp"
#include "algspray/taylor.hpp"

namespace algspray {

// Derivative container returned by public jet evaluation.  Partials are
// plain derivatives (already multiplied by the multi-index factorial) and
// are indexed either by exponent vector over (x1..xn, y1..ym) or by a list
// of variable slots; mixed-partial symmetry holds by representation.
class Jet {
public:
  Jet(std::shared_ptr<const JetSpace> space, int order, std::vector<double> point,
      std::vector<double> partials)
      : space_(std::move(space)), order_(order), point_(std::move(point)),
        partials_(std::move(partials)) {}

  int order() const { return order_; }
  int nvars() const { return space_->nvars(); }
  std::span<const double> point() const { return point_; }

  double value() const { return partials_[0]; }
  double partial(std::span<const int> exponents) const;
  double partial(std::initializer_list<int> exponents) const {
    return partial(std::span<const int>(exponents.begin(), exponents.size()));
  }
  // variable slots, repeated per derivative order: x_i is slot i-1,
  // y_a is slot n+a-1
  double partial_slots(std::span<const int> slots) const;

private:
  std::shared_ptr<const JetSpace> space_;
  int order_;
  std::vector<double> point_;
  std::vector<double> partials_;
};

class EvalContext;

// Immutable scalar function on the total space: a DAG of expression leaves,
// constants, coordinate projections, arithmetic nodes and partial-derivative
// closures.  Copies share nodes; evaluation is pure and deterministic.
// Derivative closures evaluate their child one order higher internally, so
// fields built from repeated dx/dy stay exact to the requested order.
class ScalarField {
public:
  ScalarField() = default;

  static ScalarField constant(int n, int m, double v);
  static ScalarField coord_x(int n, int m, int i);  // zero-based
  static ScalarField coord_y(int n, int m, int a);  // zero-based
  static ScalarField from_expr(int n, int m, ExprPtr expr);
  static ScalarField from_expr(int n, int m, const std::string& text);

  bool valid() const { return node_ != nullptr; }
  int base_dim() const { return n_; }
  int fiber_dim() const { return m_; }

  bool is_constant(double* value = nullptr) const;

  ScalarField dx(int i) const;  // partial along x_{i+1}
  ScalarField dy(int a) const;  // partial along y_{a+1}

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);
  friend ScalarField operator*(double s, const ScalarField& a);

  // sum of coefficient * field, flattened into one node
  static ScalarField lincomb(std::span<const std::pair<double, ScalarField>> terms);
  static ScalarField sum(std::span<const ScalarField> fields);

  TaylorPoly eval(EvalContext& ctx, int order) const;

  // public jet evaluation; order is capped at 4
  Jet eval_jet(std::span<const double> x, std::span<const double> y, int order) const;
  double eval_value(std::span<const double> x, std::span<const double> y) const;

  struct Node;

private:
  ScalarField(int n, int m, std::shared_ptr<const Node> node)
      : n_(n), m_(m), node_(std::move(node)) {}

  int n_ = 0, m_ = 0;
  std::shared_ptr<const Node> node_;
};

// Per-point evaluation state: the sample point plus a memo keyed by
// (node, order) so shared subgraphs are expanded once.  Reuse one context
// for every field evaluated at the same point.
class EvalContext {
public:
  EvalContext(int n, int m, std::span<const double> x, std::span<const double> y);

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  int nvars() const { return static_cast<int>(x_.size() + y_.size()); }

  const std::shared_ptr<const JetSpace>& space(int order);

private:
  friend class ScalarField;
  std::vector<double> x_, y_;
  std::vector<std::shared_ptr<const JetSpace>> spaces_;
  struct KeyHash {
    size_t operator()(const std::pair<const void*, int>& k) const {
      return std::hash<const void*>()(k.first) ^ (static_cast<size_t>(k.second) * 0x9e3779b97f4a7c15ull);
    }
  };
  std::unordered_map<std::pair<const void*, int>, TaylorPoly, KeyHash> memo_;
};

}  // namespace algspray
