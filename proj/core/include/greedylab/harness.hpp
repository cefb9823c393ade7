#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/normed_space.hpp"

namespace greedylab {

struct HarnessConfig {
  std::vector<std::string> norms{"lp:1", "lp:2", "lp:inf"};
  // "all" or any of m1 m2 m3 m4 p4 s4 s5 s6.
  std::vector<std::string> suites{"all"};
  // Exhaustive dimension (estimators, solver-backed checks).
  int dim = 6;
  // Sampled dimension for closed-form pointwise checks.
  int dim_sampled = 12;
  int m_max = 3;
  std::vector<double> tau_grid{0.25, 0.5, 0.75, 1.0};
  // Pointwise instances per (check, oracle, m, tau).
  std::size_t trials = 10'000;
  // Same, when the convex solver participates.
  std::size_t solver_trials = 200;
  // Random vectors per Lebesgue estimate.
  int estimate_random = 200;
  std::uint64_t seed = 1;
  double tol_closed = 1e-9;
  double tol_solver = 1e-6;
  // Tolerance for the witness-transform identities.
  double tol_identity = 1e-12;
  std::size_t max_violations_kept = 5;
  // Include wall-clock runtimes in reports (breaks byte-identical reruns).
  bool timings = false;
  std::filesystem::path base_dir = std::filesystem::current_path();
};

std::vector<std::string> suite_names();

// A self-contained instance of one inequality lhs <= rhs (or lhs == rhs when
// two_sided). Evaluation is a pure function of the certificate and the norm,
// so a stored certificate replays bit for bit.
struct Certificate {
  std::string check;
  std::string form;
  std::string norm;
  int dim = 0;
  int m = 0;
  double tau = 1.0;
  std::map<std::string, double> params;
  std::map<std::string, std::string> labels;
  std::map<std::string, std::vector<double>> vectors;
  std::map<std::string, IndexSet> sets;
  std::map<std::string, std::vector<int>> signs;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

struct CertificateValue {
  double lhs = 0.0;
  double rhs = 0.0;
  // Preconditions of the inequality hold.
  bool valid = true;
  bool converged = true;
  bool two_sided = false;
  std::string reason;
};

CertificateValue evaluate_certificate(const Certificate& c, const NormOracle& oracle);
bool violates(const CertificateValue& v, double tol);

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct Violation {
  Certificate certificate;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CheckReport {
  std::string check_id;
  std::string suite;
  std::string oracle;
  // exact: analytic constants on the bounding side; estimate: lower bounds
  // against analytic bounds or matched lower bounds; identity: proof
  // transforms.
  std::string mode;
  int n = 0;
  std::optional<int> m;
  std::optional<double> tau;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string reason;
  std::size_t instances = 0;
  std::size_t invalid_instances = 0;
  std::size_t excluded_nonconverged = 0;
  // max lhs / rhs over instances (|lhs - rhs| for two-sided checks).
  std::optional<double> extremal_ratio;
  std::optional<double> extremal_lhs;
  std::optional<double> extremal_rhs;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  double runtime_ms = 0.0;
  // Per-instance ratios for plots; not serialized.
  std::vector<double> ratio_sample;
};

std::vector<CheckReport> check_theorem_m1(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_theorem_m2(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_theorem_m3(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_prop_p4(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_theorem_m4(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_section4(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_section5(const std::string& norm_spec, const HarnessConfig& cfg);
std::vector<CheckReport> check_section6(const std::string& norm_spec, const HarnessConfig& cfg);

std::vector<CheckReport> run_suite(const std::string& suite, const std::string& norm_spec, const HarnessConfig& cfg);

// Every configured suite over every configured norm. A norm spec that fails
// to parse, or a suite that throws, yields one failed report and the run
// continues.
std::vector<CheckReport> run_all(const HarnessConfig& cfg);
bool any_fail(const std::vector<CheckReport>& reports);

std::string report_json(const HarnessConfig& cfg, const std::vector<CheckReport>& reports);
std::string report_csv(const std::vector<CheckReport>& reports);
// Histogram of per-instance lhs/rhs ratios over all reports.
std::string report_svg(const std::vector<CheckReport>& reports);

std::string certificate_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

struct ReplayResult {
  Certificate certificate;
  CertificateValue value;
  double tolerance = 0.0;
  bool violation = false;
  // Stored sides reproduced exactly.
  bool bit_identical = false;
};

// Accepts a full report (replays every stored violation), a single violation
// record or a bare certificate.
std::vector<ReplayResult> replay(const std::string& json_text, const std::filesystem::path& base_dir);

}  // namespace greedylab
