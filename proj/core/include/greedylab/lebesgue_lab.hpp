#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greedylab/approx_errors.hpp"
#include "greedylab/constants_lab.hpp"
#include "greedylab/greedy_engine.hpp"
#include "greedylab/normed_space.hpp"

namespace greedylab {

enum class LebesgueKind { L, L_tilde, L_re, L_hat_re, L_ch };

std::string to_string(LebesgueKind kind);
LebesgueKind lebesgue_kind_from_string(std::string_view s);

// A known approximant x - sum_{n in support} coeffs_n e_n; its norm bounds
// the benchmark error from above when the support is admissible.
struct ApproxHint {
  IndexSet support;
  std::vector<double> coeffs;
  bool empty() const { return support.empty() && coeffs.empty(); }
};

double hint_value(const CoeffVector& x, const ApproxHint& hint, const NormOracle& oracle);

// Numerator and denominator of one candidate.
//   L, L_tilde, L_re, L_hat_re: gamma_{m,tau}(x) over sigma_m, sigma~_m,
//   ||x - S_m x||, sigma^_m.  L_ch: Chebyshev residual over sigma_m.
// An admissible hint (|support| <= m for L and L_ch, a size-m projection for
// L_tilde) caps the denominator, which keeps ratios certified when the
// solver only finds an upper estimate.
struct LebesgueRatio {
  double numerator = 0.0;
  double denominator = 0.0;
  // Greedy set attaining the numerator and support attaining the denominator.
  IndexSet lambda;
  IndexSet comparison;
  bool converged = true;
  bool truncated = false;
  // NaN when the denominator vanishes.
  double ratio() const;
};

LebesgueRatio lebesgue_ratio(LebesgueKind kind, const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                             const SolverOptions& solver = {}, const GreedyOptions& greedy = {},
                             const ApproxHint* hint = nullptr);

struct NamedVector {
  std::string generator;
  CoeffVector x;
  ApproxHint hint;
};

struct LebesgueFamily {
  int dim = 6;
  int random_vectors = 10'000;
  std::uint64_t seed = 1;
  // Add the lifted proof vectors from structured_family.
  bool structured = true;
  std::vector<NamedVector> extra;
  SolverOptions solver;
  GreedyOptions greedy;
  // Keep every finite ratio (for histograms).
  bool keep_ratios = false;
};

std::string describe(const LebesgueFamily& f);

struct LebesgueWitness {
  CoeffVector x;
  std::string generator;
  ApproxHint hint;
  IndexSet lambda;
  IndexSet comparison;
  double numerator = 0.0;
  double denominator = 0.0;
};

struct LebesgueEstimate {
  LebesgueKind kind = LebesgueKind::L;
  int m = 0;
  double tau = 1.0;
  double lower_bound = 0.0;
  bool has_witness = false;
  LebesgueWitness witness;
  std::uint64_t seed = 0;
  std::string family;
  std::size_t candidates = 0;
  std::size_t skipped = 0;
  // Candidates whose solver did not converge. Their denominators are upper
  // estimates, so L, L_tilde, L_re, L_hat_re ratios stay certified; L_ch
  // candidates with a non-converged numerator are excluded from the max.
  std::size_t nonconverged = 0;
  bool truncated = false;
  std::vector<double> ratios;
  std::vector<std::string> warnings;
};

LebesgueEstimate estimate_lebesgue(LebesgueKind kind, int m, double tau, const NormOracle& oracle,
                                   const LebesgueFamily& f = {});
LebesgueEstimate estimate_L(int m, double tau, const NormOracle& oracle, const LebesgueFamily& f = {});
LebesgueEstimate estimate_L_tilde(int m, double tau, const NormOracle& oracle, const LebesgueFamily& f = {});
LebesgueEstimate estimate_L_re(int m, double tau, const NormOracle& oracle, const LebesgueFamily& f = {});
LebesgueEstimate estimate_L_hat_re(int m, double tau, const NormOracle& oracle, const LebesgueFamily& f = {});
LebesgueEstimate estimate_L_ch(int m, double tau, const NormOracle& oracle, const LebesgueFamily& f = {});

// Largest b <= 1/tau with tau * b <= 1 in floating point, so that spikes of
// height b never break exact weak greedy ties.
double inverse_tau(double tau);

// Proof vectors. Each lift returns nullopt when the construction does not
// fit into dim coordinates. In every lift `greedy` is a tau-weak greedy set of
// y of size `order`, and the hint is the comparison approximant used by the
// corresponding lower-bound argument.
struct Lift {
  CoeffVector y;
  IndexSet greedy;
  int order = 0;
  ApproxHint hint;
  // Hint is the partial sum S_prefix(y) when prefix >= 0.
  int prefix = -1;
};

// z = 1_{eps A} + x + (1/tau) 1_{delta B} + 1_C from a nu witness, with C
// after everything and |C| = m - |A|. The hint projects onto B u C u D, D
// being |A| - |B| fresh zero coordinates, so the support has size m and
// ||z - P_{A u C} z|| / ||z - P_{B u C u D} z|| is the nu ratio over tau.
std::optional<Lift> z_lift(const Witness& nu, int m, double tau, int dim);

// y = (1/tau) 1_{delta B} + 1_D + x + 1_{eps A} from a nu' witness, with
// D inside {1..max B} \ B and |D u A| = max(|A|, max B). The hint is
// S_{max B}(y) = 1_D + (1/tau) 1_{delta B}.
std::optional<Lift> y_lift(const Witness& nu_prime, double tau, int dim);

// y = x - P_A x + M 1_{A u C} with M = ||x||_inf + 1 and C fresh after
// supp(x) u A, |A u C| = m. Hint: coefficients M - x_n on A, M on C, leaving
// residual x.
std::optional<Lift> kc_lift(const CoeffVector& x, const IndexSet& A, int m, int dim);

// y = x + alpha 1_C with alpha = min_Lambda |x| (||x||_inf / tau when Lambda
// is empty), C > supp(x) u Lambda, |C| = m - |Lambda|. The hint projects onto
// C u D with |Lambda| fresh zero coordinates D, leaving residual x.
std::optional<Lift> gc_lift(const CoeffVector& x, const IndexSet& lambda, int m, double tau, int dim);

// y = alpha 1_C + shift(x) with C = {1..m-k}, x shifted right by m-k,
// k = |Lambda|. The hint is S_{m-k}(y), leaving residual shift(x).
std::optional<Lift> gc_left_lift(const CoeffVector& x, const IndexSet& lambda, int m, double tau, int dim);

// ||y - P_G y|| / ||y - hint||, the ratio a lift certifies.
double lift_ratio(const Lift& lift, const NormOracle& oracle);

// y = x - P_A x + alpha 1_D and z = x + alpha 1_D with alpha = min_A |x|,
// D > supp(x) u A, |D| = m.
struct ChebyshevLift {
  CoeffVector y;
  CoeffVector z;
  IndexSet D;
  double alpha = 0.0;
};
std::optional<ChebyshevLift> chebyshev_lift(const CoeffVector& x, const IndexSet& A, int m, int dim);

// Lifted proof vectors for kind at (m, tau): z lifts of nu witnesses (the
// estimator's best plus flat x = 0 configurations), y lifts of nu' witnesses,
// k^c and g^c lifts, and Chebyshev lifts.
std::vector<NamedVector> structured_family(LebesgueKind kind, int m, double tau, const NormOracle& oracle, int dim,
                                           std::uint64_t seed);

// Seeded random vectors in three styles: dense uniform, tie-heavy and flat
// plus spike.
std::vector<NamedVector> random_family(int dim, int count, double tau, std::uint64_t seed);

}  // namespace greedylab
