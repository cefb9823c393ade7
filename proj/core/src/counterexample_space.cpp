#include "greedylab/counterexample_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "greedylab/combinatorics.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

namespace {

constexpr Count kCountMax = ~static_cast<Count>(0);
constexpr Count kDirectLimit = 1000;

}  // namespace

std::string count_to_string(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

double count_to_double(Count c) { return static_cast<double>(c); }

double ce_t(double n) { return 1.0 / std::sqrt(n); }
double ce_L(double n) {
  double l = std::log(n);
  return std::exp(l * l);
}
double ce_a(double n) { return 1.0 / (std::sqrt(n) * std::log(n + 1.0)); }

double t_range_sum(Count lo, Count hi) {
  if (lo == 0) throw DomainError("t_range_sum: indices start at 1");
  if (hi < lo) return 0.0;
  double sum = 0.0;
  double comp = 0.0;
  Count direct_hi = std::min(hi, kDirectLimit - 1);
  for (Count n = lo; n <= direct_hi; ++n) {
    double term = 1.0 / std::sqrt(count_to_double(n));
    double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  Count a = std::max(lo, kDirectLimit);
  if (a <= hi) {
    double ap = count_to_double(a) - 0.5;
    double bp = count_to_double(hi) + 0.5;
    double span = count_to_double(hi - a + 1);
    double integral = 2.0 * span / (std::sqrt(bp) + std::sqrt(ap));
    double c1 = (std::pow(bp, -1.5) - std::pow(ap, -1.5)) / 48.0;
    double c2 = 7.0 * 15.0 / 46080.0 * (std::pow(ap, -3.5) - std::pow(bp, -3.5));
    double tail = integral + c1 + c2;
    double t = sum + tail;
    comp += std::abs(sum) >= std::abs(tail) ? (sum - t) + tail : (tail - t) + sum;
    sum = t;
  }
  return sum + comp;
}

Count WeightSequence::lead_index(int j) const {
  if (j < 1 || j > J + 1) throw DomainError("lead_index: block out of range");
  Count g = 1;
  for (int i = 1; i < j; ++i) g += 1 + N[static_cast<std::size_t>(i - 1)];
  return g;
}

Count WeightSequence::length() const { return lead_index(J + 1) - 1; }

double WeightSequence::weight(Count g, int* block, int* role) const {
  if (g == 0 || g > length()) throw DomainError("weight: index outside the constructed range");
  Count lead = 1;
  for (int j = 1; j <= J; ++j) {
    Count nj = N[static_cast<std::size_t>(j - 1)];
    if (g <= lead + nj) {
      if (block) *block = j;
      if (g == lead) {
        if (role) *role = 0;
        return ce_t(j);
      }
      if (role) *role = 1;
      Count prev = j == 1 ? 0 : N[static_cast<std::size_t>(j - 2)];
      return 1.0 / std::sqrt(count_to_double(prev + (g - lead)));
    }
    lead += 1 + nj;
  }
  throw DomainError("weight: index outside the constructed range");
}

std::vector<double> WeightSequence::dense_prefix(std::size_t len) const {
  if (static_cast<Count>(len) > length()) throw DomainError("dense_prefix: longer than the constructed blocks");
  std::vector<double> out;
  out.reserve(len);
  for (int j = 1; j <= J && out.size() < len; ++j) {
    out.push_back(ce_t(j));
    Count prev = j == 1 ? 0 : N[static_cast<std::size_t>(j - 2)];
    Count nj = N[static_cast<std::size_t>(j - 1)];
    for (Count i = 1; i <= nj && out.size() < len; ++i) out.push_back(1.0 / std::sqrt(count_to_double(prev + i)));
  }
  return out;
}

namespace {

double block_b(int j, Count prev, Count n) {
  return ce_a(j) * ce_t(j) / t_range_sum(prev + 1, prev + n);
}

bool admissible(int j, Count prev, double b_prev, Count n) {
  double bound = ce_a(j) / ce_L(j);
  if (j > 1) bound = std::min(bound, b_prev);
  return block_b(j, prev, n) < bound;
}

}  // namespace

WeightSequence build_weights(int J) {
  if (J < 1) throw DomainError("build_weights: J must be at least 1");
  WeightSequence w;
  w.requested = J;
  Count prev = 0;
  double b_prev = INFINITY;
  for (int j = 1; j <= J; ++j) {
    if (j > 1 && prev > (kCountMax - 1) / 10) {
      w.j_max_reached = true;
      break;
    }
    Count floor = j == 1 ? 11 : 10 * prev + 1;
    Count n = floor;
    bool overflow = false;
    if (!admissible(j, prev, b_prev, n)) {
      // b_j decreases in N_j: bracket, then bisect for the smallest value.
      Count lo = floor;
      Count hi = floor;
      while (!admissible(j, prev, b_prev, hi)) {
        if (hi > kCountMax / 4) {
          overflow = true;
          break;
        }
        lo = hi;
        hi *= 2;
      }
      if (overflow) {
        w.j_max_reached = true;
        break;
      }
      while (hi - lo > 1) {
        Count mid = lo + (hi - lo) / 2;
        if (admissible(j, prev, b_prev, mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      n = hi;
    }
    if (n > kCountMax / 4 - prev) {
      w.j_max_reached = true;
      break;
    }
    double s = t_range_sum(prev + 1, prev + n);
    w.N.push_back(n);
    w.b.push_back(ce_a(j) * ce_t(j) / s);
    w.block_weight_sum.push_back(s);
    b_prev = w.b.back();
    prev = n;
    w.J = j;
  }
  return w;
}

bool minimality_holds(const WeightSequence& w, int j) {
  if (j < 1 || j > w.J) throw DomainError("minimality_holds: block out of range");
  Count n = w.N[static_cast<std::size_t>(j - 1)];
  Count prev = j == 1 ? 0 : w.N[static_cast<std::size_t>(j - 2)];
  Count floor = j == 1 ? 11 : 10 * prev + 1;
  if (n == floor) return admissible(j, prev, j == 1 ? INFINITY : w.b[static_cast<std::size_t>(j - 2)], n);
  return admissible(j, prev, j == 1 ? INFINITY : w.b[static_cast<std::size_t>(j - 2)], n) &&
         !admissible(j, prev, j == 1 ? INFINITY : w.b[static_cast<std::size_t>(j - 2)], n - 1);
}

BlockVector make_block_vector(int K, const WeightSequence& w) {
  if (K < 0 || K > w.J) throw DomainError("make_block_vector: K exceeds the constructed blocks");
  BlockVector x;
  for (int j = 1; j <= K; ++j) {
    x.blocks.push_back({ce_a(j), -w.b[static_cast<std::size_t>(j - 1)], w.N[static_cast<std::size_t>(j - 1)]});
  }
  return x;
}

CoeffVector expand(const BlockVector& x, std::size_t dense_budget) {
  Count total = 0;
  for (const auto& b : x.blocks) total += 1 + b.count;
  if (total > static_cast<Count>(dense_budget)) throw BudgetError("expand: block vector exceeds the dense budget");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(total));
  for (const auto& b : x.blocks) {
    v.push_back(b.lead);
    v.insert(v.end(), static_cast<std::size_t>(b.count), b.repeat);
  }
  return CoeffVector::from_dense(std::move(v));
}

BlockVector threshold(const BlockVector& x, double eps) {
  if (!(eps > 0.0)) throw DomainError("threshold: eps must be positive");
  BlockVector out = x;
  for (auto& b : out.blocks) {
    if (!(std::abs(b.lead) > eps)) b.lead = 0.0;
    if (!(std::abs(b.repeat) > eps)) b.repeat = 0.0;
  }
  return out;
}

BlockNormParts block_norm_parts(const BlockVector& x, const WeightSequence& w) {
  if (x.K() > w.J) throw DomainError("block_norm: more blocks than weights");
  BlockNormParts p;
  double tail = 0.0;
  double sq = 0.0;
  for (int j = x.K(); j >= 1; --j) {
    const Block& blk = x.blocks[static_cast<std::size_t>(j - 1)];
    if (blk.repeat != 0.0 && blk.count > 0) {
      // Tail sums inside the run move monotonically between these two values.
      Count prev = j == 1 ? 0 : w.N[static_cast<std::size_t>(j - 2)];
      double last = 1.0 / std::sqrt(count_to_double(prev + blk.count));
      double full = blk.count == w.N[static_cast<std::size_t>(j - 1)]
                        ? w.block_weight_sum[static_cast<std::size_t>(j - 1)]
                        : t_range_sum(prev + 1, prev + blk.count);
      p.tail_sup = std::max({p.tail_sup, std::abs(tail + blk.repeat * last), std::abs(tail + blk.repeat * full)});
      tail += blk.repeat * full;
      sq += count_to_double(blk.count) * blk.repeat * blk.repeat;
    }
    tail += blk.lead * ce_t(j);
    sq += blk.lead * blk.lead;
    p.tail_sup = std::max(p.tail_sup, std::abs(tail));
  }
  p.l2 = std::sqrt(sq);
  p.value = std::max(p.tail_sup, p.l2);
  return p;
}

double block_norm(const BlockVector& x, const WeightSequence& w) { return block_norm_parts(x, w).value; }

double block_tail_from_lead(const BlockVector& x, const WeightSequence& w, int j) {
  if (j < 1 || j > x.K() + 1) throw DomainError("block_tail_from_lead: block out of range");
  double tail = 0.0;
  for (int i = x.K(); i >= j; --i) {
    const Block& blk = x.blocks[static_cast<std::size_t>(i - 1)];
    if (blk.repeat != 0.0) tail += blk.repeat * w.block_weight_sum[static_cast<std::size_t>(i - 1)];
    tail += blk.lead * ce_t(i);
  }
  return tail;
}

QgViolation qg_violation_ratio(int k, const WeightSequence& w, int K) {
  if (k < 1 || k + 1 > K) throw DomainError("qg_violation_ratio: requires 1 <= k and k+1 <= K");
  if (K > w.J) throw DomainError("qg_violation_ratio: K exceeds the constructed blocks");
  QgViolation q;
  q.k = k;
  q.K = K;
  q.eps = 0.5 * (w.b[static_cast<std::size_t>(k - 1)] + w.b[static_cast<std::size_t>(k)]);
  BlockVector x = make_block_vector(K, w);
  BlockVector tx = threshold(x, q.eps);
  q.original = block_norm_parts(x, w);
  q.thresholded = block_norm_parts(tx, w);
  q.ratio = q.thresholded.value / q.original.value;
  q.seminorm_ratio = q.thresholded.tail_sup / q.original.tail_sup;
  q.tail_after_k = block_tail_from_lead(tx, w, k + 1);
  for (int n = k + 1; n <= K; ++n) q.analytic_lower_bound += 1.0 / (n * std::log(n + 1.0));
  return q;
}

namespace {

// ||1_{dA}||_1 for a set given by ascending positions into w.
double indicator_tail_sup(const std::vector<double>& w, const std::vector<Index>& a, const std::vector<int>& signs) {
  double tail = 0.0;
  double best = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    tail += signs[i] * w[static_cast<std::size_t>(a[i] - 1)];
    best = std::max(best, std::abs(tail));
  }
  return best;
}

}  // namespace

UniformAReport uniform_A_check(int m, const WeightSequence& w, std::size_t trials, std::uint64_t seed,
                               std::size_t prefix, int exhaustive_max_size) {
  if (m < 1) throw DomainError("uniform_A_check: m must be at least 1");
  UniformAReport r;
  r.m = m;
  r.trials = trials;
  Count avail = w.length();
  r.prefix = static_cast<std::size_t>(std::min<Count>(avail, prefix));
  r.exhaustive_max_size = exhaustive_max_size;
  std::vector<double> wp = w.dense_prefix(r.prefix);
  std::vector<Index> pool(r.prefix);
  for (std::size_t i = 0; i < r.prefix; ++i) pool[i] = static_cast<Index>(i + 1);
  auto consider = [&](const std::vector<Index>& a, const std::vector<int>& s, double& slot) {
    double ratio = indicator_tail_sup(wp, a, s) / std::sqrt(static_cast<double>(a.size()));
    slot = std::max(slot, ratio);
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.witness = IndexSet(a);
      r.witness_signs = s;
    }
  };
  for (int k = 1; k <= exhaustive_max_size; ++k) {
    std::vector<int> signs(static_cast<std::size_t>(k));
    for_each_subset(pool, k, [&](const std::vector<Index>& a) {
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        for (int i = 0; i < k; ++i) signs[static_cast<std::size_t>(i)] = ((mask >> i) & 1U) ? -1 : 1;
        consider(a, signs, r.exhaustive_max_ratio);
        ++r.exhaustive_sets;
      }
      return true;
    });
  }
  Rng rng(seed);
  int max_size = std::min<int>(m, static_cast<int>(r.prefix));
  for (std::size_t t = 0; t < trials; ++t) {
    int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size)));
    std::vector<Index> a = sample_subset(pool, k, rng);
    std::vector<int> s(static_cast<std::size_t>(k));
    for (int& v : s) v = rng.sign();
    consider(a, s, r.random_max_ratio);
  }
  std::vector<double> sorted = wp;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double sum = 0.0;
  for (std::size_t k = 1; k <= sorted.size() && k <= static_cast<std::size_t>(std::max(m, 64)); ++k) {
    sum += sorted[k - 1];
    r.exact_sup_by_size.push_back(sum / std::sqrt(static_cast<double>(k)));
  }
  r.bound_holds = r.max_ratio <= 2.0;
  return r;
}

void write_weights_csv(const std::filesystem::path& path, const std::vector<double>& weights) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[64];
  for (double v : weights) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
}

std::vector<double> read_weights_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r,");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r,");
    std::string tok = line.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw DomainError("weights line " + std::to_string(lineno) + ": not a number");
    if (!(v > 0.0)) throw DomainError("weights line " + std::to_string(lineno) + ": weight must be positive");
    out.push_back(v);
  }
  return out;
}

}  // namespace greedylab
