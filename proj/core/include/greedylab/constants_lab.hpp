#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greedylab/greedy_engine.hpp"
#include "greedylab/normed_space.hpp"

namespace greedylab {

enum class ConstantKind {
  nu,
  nu_left,
  nu_left_prime,
  omega,
  omega_left,
  omega_left_prime,
  k,
  k_c,
  g,
  g_c,
  mu,
  psi,
  fundamental
};

std::string to_string(ConstantKind kind);
ConstantKind constant_kind_from_string(std::string_view s);

// Fields used per kind:
//   nu*:    x, A, B, eps, delta
//   omega*: x, A, B, eps, t
//   k, k_c: x, A
//   g, g_c: x, A (the weak greedy set), order = |A|
//   mu, psi: A, B, eps, delta
//   fundamental: A, eps
struct Witness {
  CoeffVector x;
  IndexSet A;
  IndexSet B;
  SignPattern eps;
  SignPattern delta;
  double t = 1.0;
  int order = 0;
};

struct FamilyConfig {
  int dim = 6;
  int grid_support_max = 3;
  // Grid magnitudes, as multiples of 1/tau for nu and omega kinds and of 1
  // for k and g kinds.
  std::vector<double> grid_levels{1.0, 0.5, 0.25};
  // Grid points per structural configuration before switching to sampling.
  std::size_t grid_budget = 20'000;
  // Random vectors per structural configuration (nu, omega) or in total (k, g).
  int random_vectors = 64;
  std::uint64_t seed = 1;
  int sign_budget = 20;
  int random_signs = 256;
  std::vector<CoeffVector> structured;
  GreedyOptions greedy;
};

std::string describe(const FamilyConfig& f);

struct ConstantEstimate {
  ConstantKind kind = ConstantKind::nu;
  int m = 0;
  std::optional<double> tau;
  double lower_bound = 0.0;
  bool has_witness = false;
  Witness witness;
  std::optional<double> analytic_upper;
  std::string analytic_note;
  std::string family;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool truncated = false;
  std::size_t candidates = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Defining ratio of a witness; NaN when the denominator vanishes.
double constant_ratio(ConstantKind kind, const Witness& w, const NormOracle& oracle, double tau);
// Throws DomainError when the witness violates the constraints of kind at (m, tau).
void validate_witness(ConstantKind kind, const Witness& w, int m, double tau);

ConstantEstimate estimate_nu(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_nu_left(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_nu_left_prime(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_omega(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_omega_left(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_omega_left_prime(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_k(int m, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_k_c(int m, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_g(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_g_c(int m, double tau, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_mu(int m, const NormOracle& oracle, const FamilyConfig& f = {});
ConstantEstimate estimate_psi(int m, const NormOracle& oracle, const FamilyConfig& f = {});
// f(n) = sup ||1_{eps Lambda}|| over |Lambda| = n inside {1..f.dim}.
ConstantEstimate fundamental_function(int n, const NormOracle& oracle, const FamilyConfig& f = {});

ConstantEstimate estimate_constant(ConstantKind kind, int m, double tau, const NormOracle& oracle,
                                   const FamilyConfig& f = {});

// Upper bound implied by the oracle's metadata, if any.
std::optional<double> analytic_upper(ConstantKind kind, int m, double tau, const NormOracle& oracle,
                                     std::string* note = nullptr);

// y = tau x + 1_{delta B}; A, eps carried over, t = tau. Serves the plain,
// left and left-prime variants alike.
Witness nu_omega_witness_transform(const Witness& nu_witness, double tau);

// Candidate vectors: zero, magnitude grid on small supports, seeded random.
std::vector<CoeffVector> candidate_vectors(int dim, double scale, const FamilyConfig& f, std::uint64_t seed);

}  // namespace greedylab
