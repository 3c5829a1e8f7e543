#include "algspray/scalar_field.hpp"

#include <cmath>
#include <stdexcept>

namespace algspray {

struct ScalarField::Node {
  enum class Kind { Constant, CoordX, CoordY, Leaf, LinComb, Product, Quotient, PartialX, PartialY };
  Kind kind;
  double value = 0.0;  // Constant, or the constant bias of a LinComb
  int index = 0;       // CoordX / CoordY / PartialX / PartialY
  ExprPtr expr;        // Leaf
  std::vector<std::pair<double, std::shared_ptr<const Node>>> terms;  // LinComb
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ScalarField::Node>;
using Kind = ScalarField::Node::Kind;

NodePtr make_node(ScalarField::Node n) {
  return std::make_shared<const ScalarField::Node>(std::move(n));
}

NodePtr make_constant(double v) {
  ScalarField::Node n;
  n.kind = Kind::Constant;
  n.value = v;
  return make_node(std::move(n));
}

bool node_is_constant(const NodePtr& n, double* out = nullptr) {
  if (n->kind != Kind::Constant) return false;
  if (out) *out = n->value;
  return true;
}

// flattens one level of nested combinations and folds constants
NodePtr make_lincomb(std::span<const std::pair<double, NodePtr>> terms, double bias) {
  ScalarField::Node n;
  n.kind = Kind::LinComb;
  n.value = bias;
  for (const auto& [c, child] : terms) {
    if (c == 0.0) continue;
    if (child->kind == Kind::Constant) {
      n.value += c * child->value;
    } else if (child->kind == Kind::LinComb) {
      n.value += c * child->value;
      for (const auto& [ci, ni] : child->terms) n.terms.emplace_back(c * ci, ni);
    } else {
      n.terms.emplace_back(c, child);
    }
  }
  if (n.terms.empty()) return make_constant(n.value);
  if (n.terms.size() == 1 && n.terms[0].first == 1.0 && n.value == 0.0)
    return n.terms[0].second;
  return make_node(std::move(n));
}

NodePtr node_add(const NodePtr& a, const NodePtr& b) {
  std::pair<double, NodePtr> t[2] = {{1.0, a}, {1.0, b}};
  return make_lincomb(t, 0.0);
}

NodePtr node_scale(double s, const NodePtr& a) {
  std::pair<double, NodePtr> t[1] = {{s, a}};
  return make_lincomb(t, 0.0);
}

NodePtr node_mul(const NodePtr& a, const NodePtr& b) {
  double va, vb;
  const bool ca = node_is_constant(a, &va), cb = node_is_constant(b, &vb);
  if (ca && cb) return make_constant(va * vb);
  if (ca) return node_scale(va, b);
  if (cb) return node_scale(vb, a);
  ScalarField::Node n;
  n.kind = Kind::Product;
  n.a = a;
  n.b = b;
  return make_node(std::move(n));
}

NodePtr node_div(const NodePtr& a, const NodePtr& b) {
  double va, vb;
  if (node_is_constant(b, &vb)) {
    if (vb == 0.0) throw std::invalid_argument("ScalarField: division by constant zero");
    return node_scale(1.0 / vb, a);
  }
  if (node_is_constant(a, &va) && va == 0.0) return a;
  ScalarField::Node n;
  n.kind = Kind::Quotient;
  n.a = a;
  n.b = b;
  return make_node(std::move(n));
}

NodePtr node_derivative(const NodePtr& node, bool along_x, int index) {
  switch (node->kind) {
    case Kind::Constant:
      return make_constant(0.0);
    case Kind::CoordX:
      return make_constant(along_x && node->index == index ? 1.0 : 0.0);
    case Kind::CoordY:
      return make_constant(!along_x && node->index == index ? 1.0 : 0.0);
    case Kind::LinComb: {
      std::vector<std::pair<double, NodePtr>> terms;
      terms.reserve(node->terms.size());
      for (const auto& [c, child] : node->terms)
        terms.emplace_back(c, node_derivative(child, along_x, index));
      return make_lincomb(terms, 0.0);
    }
    default: {
      ScalarField::Node n;
      n.kind = along_x ? Kind::PartialX : Kind::PartialY;
      n.index = index;
      n.a = node;
      return make_node(std::move(n));
    }
  }
}

}  // namespace

ScalarField ScalarField::constant(int n, int m, double v) {
  return ScalarField(n, m, make_constant(v));
}

ScalarField ScalarField::coord_x(int n, int m, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("ScalarField::coord_x: index out of range");
  Node node;
  node.kind = Kind::CoordX;
  node.index = i;
  return ScalarField(n, m, make_node(std::move(node)));
}

ScalarField ScalarField::coord_y(int n, int m, int a) {
  if (a < 0 || a >= m) throw std::invalid_argument("ScalarField::coord_y: index out of range");
  Node node;
  node.kind = Kind::CoordY;
  node.index = a;
  return ScalarField(n, m, make_node(std::move(node)));
}

ScalarField ScalarField::from_expr(int n, int m, ExprPtr expr) {
  if (expr->kind == Expr::Kind::Number) return constant(n, m, expr->number);
  Node node;
  node.kind = Kind::Leaf;
  node.expr = std::move(expr);
  return ScalarField(n, m, make_node(std::move(node)));
}

ScalarField ScalarField::from_expr(int n, int m, const std::string& text) {
  return from_expr(n, m, parse_expr(text, n, m));
}

bool ScalarField::is_constant(double* value) const {
  return node_is_constant(node_, value);
}

namespace {
void check_arity(const ScalarField& a, const ScalarField& b) {
  if (a.base_dim() != b.base_dim() || a.fiber_dim() != b.fiber_dim())
    throw std::invalid_argument("ScalarField: arity mismatch");
}
}  // namespace

ScalarField ScalarField::dx(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("ScalarField::dx: index out of range");
  return ScalarField(n_, m_, node_derivative(node_, true, i));
}

ScalarField ScalarField::dy(int a) const {
  if (a < 0 || a >= m_) throw std::invalid_argument("ScalarField::dy: index out of range");
  return ScalarField(n_, m_, node_derivative(node_, false, a));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  check_arity(a, b);
  return ScalarField(a.n_, a.m_, node_add(a.node_, b.node_));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  check_arity(a, b);
  std::pair<double, std::shared_ptr<const ScalarField::Node>> t[2] = {{1.0, a.node_},
                                                                      {-1.0, b.node_}};
  return ScalarField(a.n_, a.m_, make_lincomb(t, 0.0));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  check_arity(a, b);
  return ScalarField(a.n_, a.m_, node_mul(a.node_, b.node_));
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  check_arity(a, b);
  return ScalarField(a.n_, a.m_, node_div(a.node_, b.node_));
}

ScalarField operator-(const ScalarField& a) {
  return ScalarField(a.n_, a.m_, node_scale(-1.0, a.node_));
}

ScalarField operator*(double s, const ScalarField& a) {
  return ScalarField(a.n_, a.m_, node_scale(s, a.node_));
}

ScalarField ScalarField::lincomb(std::span<const std::pair<double, ScalarField>> terms) {
  if (terms.empty()) throw std::invalid_argument("ScalarField::lincomb: empty");
  const int n = terms[0].second.base_dim(), m = terms[0].second.fiber_dim();
  std::vector<std::pair<double, NodePtr>> ts;
  ts.reserve(terms.size());
  for (const auto& [c, f] : terms) {
    check_arity(terms[0].second, f);
    ts.emplace_back(c, f.node_);
  }
  return ScalarField(n, m, make_lincomb(ts, 0.0));
}

ScalarField ScalarField::sum(std::span<const ScalarField> fields) {
  if (fields.empty()) throw std::invalid_argument("ScalarField::sum: empty");
  std::vector<std::pair<double, ScalarField>> terms;
  terms.reserve(fields.size());
  for (const auto& f : fields) terms.emplace_back(1.0, f);
  return lincomb(terms);
}

EvalContext::EvalContext(int n, int m, std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != m)
    throw std::invalid_argument("EvalContext: point arity mismatch");
}

const std::shared_ptr<const JetSpace>& EvalContext::space(int order) {
  if (static_cast<int>(spaces_.size()) <= order) spaces_.resize(order + 1);
  if (!spaces_[order]) spaces_[order] = JetSpace::get(nvars(), order);
  return spaces_[order];
}

TaylorPoly ScalarField::eval(EvalContext& ctx, int order) const {
  if (static_cast<int>(ctx.x_.size()) != n_ || static_cast<int>(ctx.y_.size()) != m_)
    throw std::invalid_argument("ScalarField::eval: context arity mismatch");
  struct Rec {
    EvalContext& ctx;
    int n;
    TaylorPoly operator()(const NodePtr& node, int order) {
      auto key = std::make_pair(static_cast<const void*>(node.get()), order);
      auto it = ctx.memo_.find(key);
      if (it != ctx.memo_.end()) return it->second;
      TaylorPoly result;
      switch (node->kind) {
        case Kind::Constant:
          result = TaylorPoly::constant(ctx.space(order), order, node->value);
          break;
        case Kind::CoordX:
          result = TaylorPoly::variable(ctx.space(order), order, node->index, ctx.x_[node->index]);
          break;
        case Kind::CoordY:
          result = TaylorPoly::variable(ctx.space(order), order, n + node->index,
                                        ctx.y_[node->index]);
          break;
        case Kind::Leaf:
          result = node->expr->eval(ctx.x_, ctx.y_, ctx.space(order), order);
          break;
        case Kind::LinComb: {
          result = TaylorPoly::constant(ctx.space(order), order, node->value);
          for (const auto& [c, child] : node->terms) result = result + (*this)(child, order) * c;
          break;
        }
        case Kind::Product:
          result = (*this)(node->a, order) * (*this)(node->b, order);
          break;
        case Kind::Quotient:
          result = (*this)(node->a, order) / (*this)(node->b, order);
          break;
        case Kind::PartialX:
          result = (*this)(node->a, order + 1).derivative(node->index);
          break;
        case Kind::PartialY:
          result = (*this)(node->a, order + 1).derivative(n + node->index);
          break;
      }
      if (!result.all_finite()) throw EvalError("non-finite value in evaluation");
      ctx.memo_.emplace(key, result);
      return result;
    }
  };
  return Rec{ctx, n_}(node_, order);
}

Jet ScalarField::eval_jet(std::span<const double> x, std::span<const double> y, int order) const {
  if (order < 0 || order > 4)
    throw std::invalid_argument("ScalarField::eval_jet: order must be between 0 and 4");
  EvalContext ctx(n_, m_, x, y);
  TaylorPoly p = eval(ctx, order);
  const auto& space = p.space();
  std::vector<double> partials(space->count(order));
  for (int pos = 0; pos < space->count(order); ++pos)
    partials[pos] = p.coeff(pos) * space->factorial(pos);
  std::vector<double> point(x.begin(), x.end());
  point.insert(point.end(), y.begin(), y.end());
  return Jet(space, order, std::move(point), std::move(partials));
}

double ScalarField::eval_value(std::span<const double> x, std::span<const double> y) const {
  EvalContext ctx(n_, m_, x, y);
  return eval(ctx, 0).value();
}

double Jet::partial(std::span<const int> exponents) const {
  const int pos = space_->position(exponents);
  if (pos < 0) throw std::invalid_argument("Jet::partial: order exceeds jet order");
  return partials_[pos];
}

double Jet::partial_slots(std::span<const int> slots) const {
  std::vector<int> exps(space_->nvars(), 0);
  for (int s : slots) {
    if (s < 0 || s >= space_->nvars())
      throw std::invalid_argument("Jet::partial_slots: slot out of range");
    exps[s] += 1;
  }
  return partial(exps);
}

}  // namespace algspray
