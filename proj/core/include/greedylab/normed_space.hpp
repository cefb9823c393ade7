#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedylab {

// Indices are 1-based throughout, matching e_1, e_2, ...
using Index = int;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<Index> idx);
  explicit IndexSet(std::vector<Index> idx);

  // {first, ..., last}; empty when last < first.
  static IndexSet range(Index first, Index last);

  const std::vector<Index>& indices() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  Index operator[](std::size_t i) const { return idx_[i]; }
  bool contains(Index n) const;
  // 0 for the empty set.
  Index max() const { return idx_.empty() ? 0 : idx_.back(); }
  Index min() const { return idx_.empty() ? 0 : idx_.front(); }

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> idx_;
};

// A < B in the sense max A < min B; vacuous if either side is empty.
bool precedes(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool disjoint(const IndexSet& a, const IndexSet& b);
std::string to_string(const IndexSet& s);

class SignPattern {
 public:
  SignPattern() = default;
  // Bit i of mask set means the i-th smallest index of s gets sign -1.
  SignPattern(const IndexSet& s, std::uint64_t mask);
  SignPattern(const IndexSet& s, const std::vector<int>& signs);
  static SignPattern all_plus(const IndexSet& s) { return SignPattern(s, 0); }

  int at(Index n) const;
  const IndexSet& domain() const { return domain_; }
  const std::vector<int>& signs() const { return signs_; }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  IndexSet domain_;
  std::vector<int> signs_;
};

// Dense storage over {1..ambient_dim}; support is the set of nonzero entries.
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(int ambient_dim);
  CoeffVector(int ambient_dim, std::initializer_list<double> prefix);
  CoeffVector(int ambient_dim, const std::vector<double>& prefix);
  static CoeffVector from_dense(std::vector<double> values);

  int ambient_dim() const { return static_cast<int>(v_.size()); }
  // e_n^*(x); throws DomainError outside {1..ambient_dim}.
  double operator[](Index n) const;
  void set(Index n, double value);
  void add(Index n, double value);
  std::span<const double> dense() const { return v_; }
  std::span<double> dense_mut() { return v_; }

  IndexSet support() const;
  bool is_zero() const;

  CoeffVector& operator+=(const CoeffVector& o);
  CoeffVector& operator-=(const CoeffVector& o);
  CoeffVector& operator*=(double s);
  friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
  friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
  friend CoeffVector operator*(double s, CoeffVector a) { return a *= s; }
  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

  // Same coefficients in a larger (or equal) ambient dimension.
  CoeffVector resized(int ambient_dim) const;

 private:
  std::vector<double> v_;
};

double sup_norm(const CoeffVector& x);
// scale * 1_{eps A} in dimension dim.
CoeffVector indicator(int dim, const IndexSet& a, const SignPattern& eps, double scale = 1.0);
// x + scale * 1_{eps A}.
CoeffVector add_indicator(CoeffVector x, const IndexSet& a, const SignPattern& eps, double scale = 1.0);

struct NormMetadata {
  std::optional<double> K_b;
  std::optional<double> K_s;
  std::optional<double> C_l;
  std::optional<double> C_w;
  std::optional<double> C_a;
  std::optional<double> C_g;
  // Uniform property (A) constant: nu_{m,tau} <= C_b for all m and tau.
  std::optional<double> C_b;
  // |x_n| <= |y_n| for all n implies ||x|| <= ||y||. Enables the closed-form
  // best approximation on a fixed support.
  bool lattice = false;
  // Invariant under permutations of coordinates.
  bool symmetric = false;
  std::string provenance;
};

class NormOracle {
 public:
  using EvalFn = std::function<double(std::span<const double>)>;

  NormOracle() = default;
  NormOracle(std::string name, EvalFn eval, NormMetadata meta = {},
             std::vector<NormOracle> parts = {}, std::optional<int> max_dim = std::nullopt);

  double operator()(const CoeffVector& x) const;
  double eval_dense(std::span<const double> x) const;

  const std::string& name() const { return name_; }
  const NormMetadata& metadata() const { return meta_; }
  NormMetadata& metadata_mut() { return meta_; }
  const std::vector<NormOracle>& seminorm_parts() const { return *parts_; }
  std::optional<int> max_dim() const { return max_dim_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  std::string name_;
  EvalFn eval_;
  NormMetadata meta_;
  std::shared_ptr<const std::vector<NormOracle>> parts_ = std::make_shared<std::vector<NormOracle>>();
  std::optional<int> max_dim_;
};

double norm_eval(const NormOracle& oracle, const CoeffVector& x);

NormOracle make_lp_norm(double p);
// Tail-sum sup seminorm sup_N |sum_{n>=N} w_n x_n|.
NormOracle make_tail_sum_seminorm(std::vector<double> weights);
// max{tail-sum seminorm, l2}.
NormOracle make_weighted_tail_norm(std::vector<double> weights);
NormOracle make_max_norm(std::vector<NormOracle> parts);

double tail_sum_sup(std::span<const double> x, std::span<const double> w);
// max(1, max_k (sum of the k largest weights) / sqrt(k)); the constant lambda
// with ||1_{dA}||_1 <= lambda sqrt|A| for every A inside the weight prefix.
double tail_lambda(std::span<const double> w);

}  // namespace greedylab
