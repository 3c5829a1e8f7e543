#include "algspray/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace algspray {

namespace {

// all exponent vectors of total degree exactly `deg`, ascending lexicographic
void enumerate_degree(int nvars, int deg, std::vector<int>& current, size_t var,
                      std::vector<std::vector<int>>& out) {
  if (var + 1 == static_cast<size_t>(nvars)) {
    current[var] = deg;
    out.push_back(current);
    return;
  }
  for (int e = 0; e <= deg; ++e) {
    current[var] = e;
    enumerate_degree(nvars, deg - e, current, var + 1, out);
  }
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 0 || order < 0) throw std::logic_error("JetSpace: bad parameters");
  counts_.resize(order + 1);
  std::vector<std::vector<int>> all;
  for (int deg = 0; deg <= order; ++deg) {
    if (nvars == 0) {
      if (deg == 0) all.push_back({});
    } else {
      std::vector<int> current(nvars, 0);
      enumerate_degree(nvars, deg, current, 0, all);
    }
    counts_[deg] = static_cast<int>(all.size());
  }
  const int total = static_cast<int>(all.size());
  exps_.reserve(static_cast<size_t>(total) * nvars);
  degree_.reserve(total);
  factorial_.reserve(total);
  std::map<std::vector<int>, int> lookup;
  for (int pos = 0; pos < total; ++pos) {
    const auto& mu = all[pos];
    int deg = 0;
    double fact = 1.0;
    for (int e : mu) {
      deg += e;
      for (int r = 2; r <= e; ++r) fact *= r;
    }
    exps_.insert(exps_.end(), mu.begin(), mu.end());
    degree_.push_back(deg);
    factorial_.push_back(fact);
    lookup.emplace(mu, pos);
  }
  bump_.assign(static_cast<size_t>(total) * std::max(nvars, 1), -1);
  for (int pos = 0; pos < total; ++pos) {
    std::vector<int> mu(all[pos]);
    for (int v = 0; v < nvars; ++v) {
      mu[v] += 1;
      auto it = lookup.find(mu);
      bump_[static_cast<size_t>(pos) * nvars + v] = (it == lookup.end()) ? -1 : it->second;
      mu[v] -= 1;
    }
  }
  products_.resize(order + 1);
  for (int k = 0; k <= order; ++k) {
    auto& tri = products_[k];
    for (int a = 0; a < counts_[k]; ++a) {
      const int da = degree_[a];
      for (int b = 0; b < counts_[k]; ++b) {
        if (da + degree_[b] > k) continue;
        std::vector<int> sum(nvars);
        auto ea = exponents(a);
        auto eb = exponents(b);
        for (int v = 0; v < nvars; ++v) sum[v] = ea[v] + eb[v];
        auto it = lookup.find(sum);
        tri.push_back({a, b, it->second});
      }
    }
  }
}

std::shared_ptr<const JetSpace> JetSpace::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto space = std::shared_ptr<const JetSpace>(new JetSpace(nvars, order));
  cache.emplace(key, space);
  return space;
}

int JetSpace::position(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != nvars_)
    throw std::logic_error("JetSpace::position: wrong arity");
  int deg = 0;
  for (int e : exps) deg += e;
  if (deg > order_) return -1;
  // scan within the degree band; bands are short for the orders in use
  const int lo = (deg == 0) ? 0 : counts_[deg - 1];
  const int hi = counts_[deg];
  for (int pos = lo; pos < hi; ++pos) {
    auto mine = exponents(pos);
    if (std::equal(mine.begin(), mine.end(), exps.begin())) return pos;
  }
  return -1;
}

TaylorPoly TaylorPoly::constant(std::shared_ptr<const JetSpace> space, int order, double v) {
  TaylorPoly p(std::move(space), order);
  p.c_[0] = v;
  return p;
}

TaylorPoly TaylorPoly::variable(std::shared_ptr<const JetSpace> space, int order, int var,
                                double value) {
  TaylorPoly p(std::move(space), order);
  p.c_[0] = value;
  if (order >= 1) {
    std::vector<int> mu(p.nvars(), 0);
    mu[var] = 1;
    p.c_[p.space_->position(mu)] = 1.0;
  }
  return p;
}

double TaylorPoly::partial(std::span<const int> exps) const {
  const int pos = space_->position(exps);
  int deg = 0;
  for (int e : exps) deg += e;
  if (pos < 0 || deg > order_)
    throw std::logic_error("TaylorPoly::partial: order exceeds expansion");
  return c_[pos] * space_->factorial(pos);
}

TaylorPoly TaylorPoly::derivative(int var) const {
  if (order_ < 1) throw std::logic_error("TaylorPoly::derivative: order 0 expansion");
  TaylorPoly out(space_, order_ - 1);
  const int cnt = space_->count(order_ - 1);
  for (int pos = 0; pos < cnt; ++pos) {
    const int up = space_->bump(pos, var);
    out.c_[pos] = c_[up] * (space_->exponents(up)[var]);
  }
  return out;
}

TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
  const int order = std::min(a.order_, b.order_);
  TaylorPoly out(a.space_, order);
  const int cnt = a.space_->count(order);
  for (int i = 0; i < cnt; ++i) out.c_[i] = a.c_[i] + b.c_[i];
  return out;
}

TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b) {
  const int order = std::min(a.order_, b.order_);
  TaylorPoly out(a.space_, order);
  const int cnt = a.space_->count(order);
  for (int i = 0; i < cnt; ++i) out.c_[i] = a.c_[i] - b.c_[i];
  return out;
}

TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
  const int order = std::min(a.order_, b.order_);
  TaylorPoly out(a.space_, order);
  for (const auto& t : a.space_->products(order)) {
    out.c_[t.out] += a.c_[t.a] * b.c_[t.b];
  }
  return out;
}

TaylorPoly operator+(const TaylorPoly& a, double s) {
  TaylorPoly out = a;
  out.c_[0] += s;
  return out;
}

TaylorPoly operator*(const TaylorPoly& a, double s) {
  TaylorPoly out = a;
  for (double& c : out.c_) c *= s;
  return out;
}

TaylorPoly operator-(const TaylorPoly& a) { return a * -1.0; }

TaylorPoly TaylorPoly::apply_series(std::span<const double> series) const {
  TaylorPoly w = *this;
  w.c_[0] = 0.0;
  TaylorPoly acc = TaylorPoly::constant(space_, order_, series[order_]);
  for (int r = order_ - 1; r >= 0; --r) {
    acc = acc * w;
    acc.c_[0] += series[r];
  }
  return acc;
}

TaylorPoly TaylorPoly::reciprocal() const {
  const double u = value();
  if (u == 0.0) throw EvalError("division by zero");
  std::vector<double> series(order_ + 1);
  double p = 1.0 / u;
  for (int r = 0; r <= order_; ++r) {
    series[r] = p;
    p *= -1.0 / u;
  }
  return apply_series(series);
}

TaylorPoly operator/(const TaylorPoly& a, const TaylorPoly& b) {
  const int order = std::min(a.order_, b.order_);
  TaylorPoly bt(b.space_, order);
  for (int i = 0; i < b.space_->count(order); ++i) bt.c_[i] = b.c_[i];
  return a * bt.reciprocal();
}

TaylorPoly TaylorPoly::pow_int(int k) const {
  if (k < 0) return pow_int(-k).reciprocal();
  TaylorPoly acc = TaylorPoly::constant(space_, order_, 1.0);
  TaylorPoly base = *this;
  int e = k;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

TaylorPoly sin(const TaylorPoly& p) {
  const double s = std::sin(p.value()), c = std::cos(p.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> series(p.order_ + 1);
  double fact = 1.0;
  for (int r = 0; r <= p.order_; ++r) {
    if (r > 1) fact *= r;
    series[r] = cycle[r % 4] / fact;
  }
  return p.apply_series(series);
}

TaylorPoly cos(const TaylorPoly& p) {
  const double s = std::sin(p.value()), c = std::cos(p.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> series(p.order_ + 1);
  double fact = 1.0;
  for (int r = 0; r <= p.order_; ++r) {
    if (r > 1) fact *= r;
    series[r] = cycle[r % 4] / fact;
  }
  return p.apply_series(series);
}

TaylorPoly tan(const TaylorPoly& p) { return sin(p) / cos(p); }

TaylorPoly exp(const TaylorPoly& p) {
  const double e0 = std::exp(p.value());
  std::vector<double> series(p.order_ + 1);
  double fact = 1.0;
  for (int r = 0; r <= p.order_; ++r) {
    if (r > 1) fact *= r;
    series[r] = e0 / fact;
  }
  return p.apply_series(series);
}

TaylorPoly log(const TaylorPoly& p) {
  const double u = p.value();
  if (u <= 0.0) throw EvalError("log of a non-positive value");
  std::vector<double> series(p.order_ + 1);
  series[0] = std::log(u);
  double pw = 1.0 / u;
  for (int r = 1; r <= p.order_; ++r) {
    series[r] = ((r % 2) ? 1.0 : -1.0) * pw / r;
    pw /= u;
  }
  return p.apply_series(series);
}

TaylorPoly sqrt(const TaylorPoly& p) {
  const double u = p.value();
  if (u <= 0.0) throw EvalError("sqrt of a non-positive value");
  std::vector<double> series(p.order_ + 1);
  const double s = std::sqrt(u);
  double binom = 1.0;  // binom(1/2, r)
  double pw = 1.0;     // u^-r
  for (int r = 0; r <= p.order_; ++r) {
    series[r] = s * binom * pw;
    binom *= (0.5 - r) / (r + 1);
    pw /= u;
  }
  return p.apply_series(series);
}

TaylorPoly sinh(const TaylorPoly& p) {
  const double sh = std::sinh(p.value()), ch = std::cosh(p.value());
  std::vector<double> series(p.order_ + 1);
  double fact = 1.0;
  for (int r = 0; r <= p.order_; ++r) {
    if (r > 1) fact *= r;
    series[r] = ((r % 2) ? ch : sh) / fact;
  }
  return p.apply_series(series);
}

TaylorPoly cosh(const TaylorPoly& p) {
  const double sh = std::sinh(p.value()), ch = std::cosh(p.value());
  std::vector<double> series(p.order_ + 1);
  double fact = 1.0;
  for (int r = 0; r <= p.order_; ++r) {
    if (r > 1) fact *= r;
    series[r] = ((r % 2) ? sh : ch) / fact;
  }
  return p.apply_series(series);
}

bool TaylorPoly::all_finite() const {
  for (double c : c_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

}  // namespace algspray
