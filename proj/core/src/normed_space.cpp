#include "greedylab/normed_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace greedylab {

IndexSet::IndexSet(std::initializer_list<Index> idx) : IndexSet(std::vector<Index>(idx)) {}

IndexSet::IndexSet(std::vector<Index> idx) : idx_(std::move(idx)) {
  std::sort(idx_.begin(), idx_.end());
  if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end()) {
    throw DomainError("IndexSet: duplicate index");
  }
  if (!idx_.empty() && idx_.front() < 1) throw DomainError("IndexSet: indices start at 1");
}

IndexSet IndexSet::range(Index first, Index last) {
  std::vector<Index> v;
  for (Index i = first; i <= last; ++i) v.push_back(i);
  return IndexSet(std::move(v));
}

bool IndexSet::contains(Index n) const { return std::binary_search(idx_.begin(), idx_.end(), n); }

bool precedes(const IndexSet& a, const IndexSet& b) {
  if (a.empty() || b.empty()) return true;
  return a.max() < b.min();
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

bool disjoint(const IndexSet& a, const IndexSet& b) { return set_intersection(a, b).empty(); }

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

SignPattern::SignPattern(const IndexSet& s, std::uint64_t mask) : domain_(s), signs_(s.size(), 1) {
  for (std::size_t i = 0; i < s.size() && i < 64; ++i) {
    if ((mask >> i) & 1U) signs_[i] = -1;
  }
}

SignPattern::SignPattern(const IndexSet& s, const std::vector<int>& signs) : domain_(s), signs_(signs) {
  if (signs.size() != s.size()) throw DomainError("SignPattern: size mismatch");
  for (int v : signs_) {
    if (v != 1 && v != -1) throw DomainError("SignPattern: signs must be +1 or -1");
  }
}

int SignPattern::at(Index n) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), n);
  if (it == domain_.end() || *it != n) throw DomainError("SignPattern: index not covered");
  return signs_[static_cast<std::size_t>(it - domain_.begin())];
}

CoeffVector::CoeffVector(int ambient_dim) {
  if (ambient_dim < 0) throw DomainError("CoeffVector: negative dimension");
  v_.assign(static_cast<std::size_t>(ambient_dim), 0.0);
}

CoeffVector::CoeffVector(int ambient_dim, std::initializer_list<double> prefix)
    : CoeffVector(ambient_dim, std::vector<double>(prefix)) {}

CoeffVector::CoeffVector(int ambient_dim, const std::vector<double>& prefix) : CoeffVector(ambient_dim) {
  if (static_cast<int>(prefix.size()) > ambient_dim) throw DomainError("CoeffVector: prefix exceeds dimension");
  std::copy(prefix.begin(), prefix.end(), v_.begin());
}

CoeffVector CoeffVector::from_dense(std::vector<double> values) {
  CoeffVector x;
  x.v_ = std::move(values);
  return x;
}

double CoeffVector::operator[](Index n) const {
  if (n < 1 || n > ambient_dim()) throw DomainError("CoeffVector: index out of range");
  return v_[static_cast<std::size_t>(n - 1)];
}

void CoeffVector::set(Index n, double value) {
  if (n < 1 || n > ambient_dim()) throw DomainError("CoeffVector: index out of range");
  v_[static_cast<std::size_t>(n - 1)] = value;
}

void CoeffVector::add(Index n, double value) { set(n, (*this)[n] + value); }

IndexSet CoeffVector::support() const {
  std::vector<Index> s;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] != 0.0) s.push_back(static_cast<Index>(i + 1));
  }
  return IndexSet(std::move(s));
}

bool CoeffVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](double v) { return v == 0.0; });
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& o) {
  if (o.v_.size() > v_.size()) v_.resize(o.v_.size(), 0.0);
  for (std::size_t i = 0; i < o.v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& o) {
  if (o.v_.size() > v_.size()) v_.resize(o.v_.size(), 0.0);
  for (std::size_t i = 0; i < o.v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

CoeffVector& CoeffVector::operator*=(double s) {
  for (double& v : v_) v *= s;
  return *this;
}

CoeffVector CoeffVector::resized(int ambient_dim) const {
  if (ambient_dim < this->ambient_dim()) {
    for (std::size_t i = static_cast<std::size_t>(ambient_dim); i < v_.size(); ++i) {
      if (v_[i] != 0.0) throw DomainError("CoeffVector: resize would drop support");
    }
  }
  CoeffVector out(ambient_dim);
  std::copy_n(v_.begin(), std::min<std::size_t>(v_.size(), out.v_.size()), out.v_.begin());
  return out;
}

double sup_norm(const CoeffVector& x) {
  double m = 0.0;
  for (double v : x.dense()) m = std::max(m, std::abs(v));
  return m;
}

CoeffVector indicator(int dim, const IndexSet& a, const SignPattern& eps, double scale) {
  return add_indicator(CoeffVector(dim), a, eps, scale);
}

CoeffVector add_indicator(CoeffVector x, const IndexSet& a, const SignPattern& eps, double scale) {
  for (Index n : a) x.add(n, scale * eps.at(n));
  return x;
}

NormOracle::NormOracle(std::string name, EvalFn eval, NormMetadata meta, std::vector<NormOracle> parts,
                       std::optional<int> max_dim)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      meta_(std::move(meta)),
      parts_(std::make_shared<std::vector<NormOracle>>(std::move(parts))),
      max_dim_(max_dim) {}

double NormOracle::eval_dense(std::span<const double> x) const {
  if (max_dim_ && static_cast<int>(x.size()) > *max_dim_) {
    // Coordinates beyond the oracle's range must vanish.
    for (std::size_t i = static_cast<std::size_t>(*max_dim_); i < x.size(); ++i) {
      if (x[i] != 0.0) throw DomainError("norm " + name_ + ": index out of range");
    }
    return eval_(x.first(static_cast<std::size_t>(*max_dim_)));
  }
  return eval_(x);
}

double NormOracle::operator()(const CoeffVector& x) const { return eval_dense(x.dense()); }

double norm_eval(const NormOracle& oracle, const CoeffVector& x) { return oracle(x); }

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

NormMetadata symmetric_lattice_metadata(std::string provenance) {
  NormMetadata m;
  m.K_b = m.K_s = m.C_l = m.C_w = m.C_a = m.C_g = m.C_b = 1.0;
  m.lattice = true;
  m.symmetric = true;
  m.provenance = std::move(provenance);
  return m;
}

}  // namespace

NormOracle make_lp_norm(double p) {
  if (!(p >= 1.0)) throw DomainError("make_lp_norm: p must be >= 1");
  auto meta = symmetric_lattice_metadata("canonical basis of l_p is 1-unconditional and 1-symmetric");
  if (std::isinf(p)) {
    return NormOracle("lp:inf", [](std::span<const double> x) {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }, meta);
  }
  std::string name = "lp:" + format_number(p);
  if (p == 1.0) {
    return NormOracle(name, [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }, meta);
  }
  if (p == 2.0) {
    return NormOracle(name, [](std::span<const double> x) {
      // Scaled sum of squares avoids overflow for huge entries.
      double scale = 0.0;
      for (double v : x) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) {
        double r = v / scale;
        s += r * r;
      }
      return scale * std::sqrt(s);
    }, meta);
  }
  return NormOracle(name, [p](std::span<const double> x) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v) / scale, p);
    return scale * std::pow(s, 1.0 / p);
  }, meta);
}

double tail_sum_sup(std::span<const double> x, std::span<const double> w) {
  double tail = 0.0;
  double best = 0.0;
  for (std::size_t i = x.size(); i-- > 0;) {
    tail += w[i] * x[i];
    best = std::max(best, std::abs(tail));
  }
  return best;
}

double tail_lambda(std::span<const double> w) {
  std::vector<double> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double lambda = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    sum += sorted[k];
    lambda = std::max(lambda, sum / std::sqrt(static_cast<double>(k + 1)));
  }
  return lambda;
}

NormOracle make_tail_sum_seminorm(std::vector<double> weights) {
  for (double v : weights) {
    if (!(v > 0.0)) throw DomainError("weighted tail norm: weights must be positive");
  }
  auto w = std::make_shared<const std::vector<double>>(std::move(weights));
  int dim = static_cast<int>(w->size());
  return NormOracle("tail_sum", [w](std::span<const double> x) { return tail_sum_sup(x, *w); }, {}, {}, dim);
}

NormOracle make_weighted_tail_norm(std::vector<double> weights) {
  NormOracle tail = make_tail_sum_seminorm(weights);
  NormOracle l2 = make_lp_norm(2.0);
  int dim = static_cast<int>(weights.size());
  NormMetadata meta;
  // nu_{m,tau} <= 3 lambda whenever ||1_{dA}||_1 <= lambda sqrt|A|.
  meta.C_b = 3.0 * tail_lambda(weights);
  meta.provenance = "C_b = 3 lambda with lambda the exact top-k weight ratio of the stored prefix";
  auto w = std::make_shared<const std::vector<double>>(std::move(weights));
  return NormOracle("weighted_tail", [w, l2](std::span<const double> x) {
    return std::max(tail_sum_sup(x, *w), l2.eval_dense(x));
  }, meta, {tail, l2}, dim);
}

NormOracle make_max_norm(std::vector<NormOracle> parts) {
  if (parts.empty()) throw DomainError("make_max_norm: no parts");
  std::string name = "max:[";
  bool lattice = true;
  bool symmetric = true;
  std::optional<int> dim;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    name += (i ? "," : "") + parts[i].name();
    lattice = lattice && parts[i].metadata().lattice;
    symmetric = symmetric && parts[i].metadata().symmetric;
    if (auto d = parts[i].max_dim()) dim = dim ? std::min(*dim, *d) : *d;
  }
  name += "]";
  NormMetadata meta;
  if (lattice && symmetric) {
    meta = symmetric_lattice_metadata("max of 1-symmetric lattice norms is 1-symmetric and lattice");
  } else {
    meta.lattice = lattice;
  }
  auto shared = std::make_shared<const std::vector<NormOracle>>(parts);
  return NormOracle(name, [shared](std::span<const double> x) {
    double m = 0.0;
    for (const auto& p : *shared) m = std::max(m, p.eval_dense(x));
    return m;
  }, meta, std::move(parts), dim);
}

}  // namespace greedylab
