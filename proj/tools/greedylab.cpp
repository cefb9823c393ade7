#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "greedylab/constants_lab.hpp"
#include "greedylab/counterexample_space.hpp"
#include "greedylab/harness.hpp"
#include "greedylab/lebesgue_lab.hpp"
#include "greedylab/norm_spec.hpp"
#include "json.hpp"

namespace gl = greedylab;
using json = nlohmann::ordered_json;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json set_json(const gl::IndexSet& s) { return s.indices(); }

std::vector<double> dense(const gl::CoeffVector& x) { return {x.dense().begin(), x.dense().end()}; }

// r_k growth curve as a polyline.
std::string growth_svg(const std::vector<std::pair<int, double>>& pts, const std::string& title) {
  const double W = 640, H = 360, L = 60, R = 20, T = 30, B = 40;
  double kmin = pts.empty() ? 0 : pts.front().first, kmax = pts.empty() ? 1 : pts.back().first;
  double ymax = 1.0;
  for (auto& p : pts) ymax = std::max(ymax, p.second);
  auto X = [&](double k) { return L + (W - L - R) * (kmax > kmin ? (k - kmin) / (kmax - kmin) : 0.5); };
  auto Y = [&](double y) { return T + (H - T - B) * (1.0 - y / ymax); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
     << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (auto& p : pts) os << X(p.first) << ',' << Y(p.second) << ' ';
  os << "\"/>\n";
  for (auto& p : pts) os << "<circle cx=\"" << X(p.first) << "\" cy=\"" << Y(p.second) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  os << "<text x=\"" << L << "\" y=\"" << H - 15 << "\" font-size=\"12\">K=" << kmin << "</text>\n"
     << "<text x=\"" << W - R << "\" y=\"" << H - 15 << "\" font-size=\"12\" text-anchor=\"end\">K=" << kmax << "</text>\n"
     << "<text x=\"" << L - 5 << "\" y=\"" << T + 5 << "\" font-size=\"12\" text-anchor=\"end\">" << ymax << "</text>\n"
     << "</svg>\n";
  return os.str();
}

int cmd_verify(const gl::HarnessConfig& cfg, const std::string& out, const std::string& csv, const std::string& plot) {
  auto reports = gl::run_all(cfg);
  std::string text = gl::report_json(cfg, reports);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  if (!csv.empty()) write_file(csv, gl::report_csv(reports));
  if (!plot.empty()) write_file(plot, gl::report_svg(reports));
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports) {
    if (r.status == gl::CheckStatus::fail) {
      ++fail;
      std::cerr << "FAIL " << r.check_id << " [" << r.oracle << "]";
      if (r.m) std::cerr << " m=" << *r.m;
      if (r.tau) std::cerr << " tau=" << *r.tau;
      std::cerr << ": " << r.reason << "\n";
    } else if (r.status == gl::CheckStatus::pass) {
      ++pass;
    } else {
      ++skip;
    }
  }
  std::cerr << reports.size() << " reports: " << pass << " pass, " << fail << " fail, " << skip << " skipped\n";
  return gl::any_fail(reports) ? 1 : 0;
}

int cmd_counterexample(int K, const std::string& report, const std::string& weights_csv, std::size_t weights_len,
                       const std::string& plot, std::size_t trials, std::uint64_t seed) {
  auto w = gl::build_weights(K);
  json j;
  j["requested_blocks"] = K;
  j["blocks"] = w.J;
  j["j_max_reached"] = w.j_max_reached;
  json blocks = json::array();
  for (int b = 1; b <= w.J; ++b) {
    blocks.push_back({{"j", b},
                      {"N", gl::count_to_string(w.N[static_cast<std::size_t>(b - 1)])},
                      {"b", num(w.b[static_cast<std::size_t>(b - 1)])},
                      {"lead_index", gl::count_to_string(w.lead_index(b))},
                      {"minimal", gl::minimality_holds(w, b)}});
  }
  j["weights"] = blocks;
  json ratios = json::array();
  for (int k = 2; k <= w.J - 1; ++k) {
    auto q = gl::qg_violation_ratio(k, w, w.J);
    ratios.push_back({{"k", k}, {"ratio", num(q.ratio)}, {"seminorm_ratio", num(q.seminorm_ratio)}});
  }
  j["ratios"] = ratios;
  std::vector<std::pair<int, double>> curve;
  json growth = json::array();
  for (int KK = 3; KK <= w.J; ++KK) {
    auto q = gl::qg_violation_ratio(2, w, KK);
    curve.emplace_back(KK, q.ratio);
    growth.push_back({{"K", KK},
                      {"ratio", num(q.ratio)},
                      {"thresholded_tail", num(q.tail_after_k)},
                      {"analytic", num(q.analytic_lower_bound)}});
  }
  j["growth_k2"] = growth;
  auto ua = gl::uniform_A_check(1, w, trials, seed);
  j["uniform_A"] = {{"prefix", ua.prefix},
                    {"exhaustive_max_size", ua.exhaustive_max_size},
                    {"exhaustive_sets", ua.exhaustive_sets},
                    {"trials", ua.trials},
                    {"max_ratio", num(ua.max_ratio)},
                    {"exhaustive_max_ratio", num(ua.exhaustive_max_ratio)},
                    {"random_max_ratio", num(ua.random_max_ratio)},
                    {"witness", set_json(ua.witness)},
                    {"witness_signs", ua.witness_signs},
                    {"bound_holds", ua.bound_holds}};
  std::string text = j.dump(2) + "\n";
  if (report.empty() || report == "-") {
    std::cout << text;
  } else {
    write_file(report, text);
  }
  if (!weights_csv.empty()) {
    std::size_t len = std::min<std::size_t>(weights_len, static_cast<std::size_t>(std::min<double>(
                                                             gl::count_to_double(w.length()), 1e7)));
    gl::write_weights_csv(weights_csv, w.dense_prefix(len));
  }
  if (!plot.empty()) write_file(plot, growth_svg(curve, "r_2(K): ||T_eps x|| / ||x||"));
  return 0;
}

int cmd_replay(const std::string& path) {
  auto results = gl::replay(read_file(path), std::filesystem::path(path).parent_path());
  json arr = json::array();
  bool any = false;
  for (const auto& r : results) {
    any = any || r.violation;
    arr.push_back({{"check", r.certificate.check},
                   {"form", r.certificate.form},
                   {"norm", r.certificate.norm},
                   {"lhs", num(r.value.lhs)},
                   {"rhs", num(r.value.rhs)},
                   {"valid", r.value.valid},
                   {"tolerance", r.tolerance},
                   {"violation", r.violation},
                   {"bit_identical", r.bit_identical}});
  }
  std::cout << arr.dump(2) << "\n";
  // Exit 1 when a stored violation reproduces, mirroring verify.
  return any ? 1 : 0;
}

json witness_json(const gl::Witness& w) {
  return {{"x", dense(w.x)},        {"A", set_json(w.A)},      {"B", set_json(w.B)}, {"eps", w.eps.signs()},
          {"delta", w.delta.signs()}, {"t", w.t}, {"order", w.order}};
}

int cmd_estimate(const std::string& kind, const std::string& spec, int m, double tau, int dim, int random,
                 std::uint64_t seed) {
  auto oracle = gl::parse_norm_spec(spec, dim);
  json j;
  bool lebesgue = kind.rfind("L", 0) == 0;
  if (lebesgue) {
    gl::LebesgueFamily f;
    f.dim = dim;
    f.random_vectors = random;
    f.seed = seed;
    auto e = gl::estimate_lebesgue(gl::lebesgue_kind_from_string(kind), m, tau, oracle, f);
    j = {{"kind", kind},       {"norm", spec},
         {"m", m},             {"tau", tau},
         {"lower_bound", num(e.lower_bound)},
         {"family", e.family}, {"candidates", e.candidates},
         {"nonconverged", e.nonconverged}, {"truncated", e.truncated}};
    if (e.has_witness) {
      j["witness"] = {{"x", dense(e.witness.x)},
                      {"generator", e.witness.generator},
                      {"lambda", set_json(e.witness.lambda)},
                      {"comparison", set_json(e.witness.comparison)},
                      {"numerator", num(e.witness.numerator)},
                      {"denominator", num(e.witness.denominator)}};
    }
    j["warnings"] = e.warnings;
  } else {
    gl::FamilyConfig f;
    f.dim = dim;
    f.random_vectors = random;
    f.seed = seed;
    auto e = gl::estimate_constant(gl::constant_kind_from_string(kind), m, tau, oracle, f);
    j = {{"kind", kind},
         {"norm", spec},
         {"m", m},
         {"tau", e.tau ? json(*e.tau) : json(nullptr)},
         {"lower_bound", num(e.lower_bound)},
         {"analytic_upper", e.analytic_upper ? num(*e.analytic_upper) : json(nullptr)},
         {"exhaustive", e.exhaustive},
         {"truncated", e.truncated},
         {"family", e.family},
         {"candidates", e.candidates}};
    if (e.has_witness) j["witness"] = witness_json(e.witness);
    j["warnings"] = e.warnings;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedylab: thresholding greedy algorithm laboratory"};
  app.require_subcommand(1);

  gl::HarnessConfig cfg;
  std::string out, csv, plot;
  std::vector<std::string> norms;
  auto* verify = app.add_subcommand("verify", "Run theorem verification suites");
  verify->add_option("--suite", cfg.suites, "all|m1|m2|m3|m4|p4|s4|s5|s6 (repeatable)")->delimiter(',');
  verify->add_option("--norm", norms, "Norm spec (repeatable)");
  verify->add_option("--dim", cfg.dim, "Exhaustive dimension");
  verify->add_option("--dim-sampled", cfg.dim_sampled, "Dimension of closed-form pointwise checks");
  verify->add_option("--m-max", cfg.m_max, "Largest order m");
  verify->add_option("--tau-grid", cfg.tau_grid, "Weakness parameters")->delimiter(',');
  verify->add_option("--trials", cfg.trials, "Pointwise instances per check");
  verify->add_option("--solver-trials", cfg.solver_trials, "Instances when the convex solver participates");
  verify->add_option("--estimate-random", cfg.estimate_random, "Random vectors per Lebesgue estimate");
  verify->add_option("--seed", cfg.seed, "Master seed");
  verify->add_flag("--timings", cfg.timings, "Record runtimes in the report");
  verify->add_option("--out", out, "JSON report path (- for stdout)");
  verify->add_option("--csv", csv, "CSV summary path");
  verify->add_option("--plot", plot, "SVG ratio histogram path");
  bool empty_norms = false;
  verify->add_flag("--no-norms", empty_norms, "Run with an empty norm list");

  int blocks = 20;
  std::string ce_report, ce_weights, ce_plot;
  std::size_t ce_len = 1000, ce_trials = 10'000;
  std::uint64_t ce_seed = 1;
  auto* ce = app.add_subcommand("counterexample", "Build the weight sequence and measure non-quasi-greediness");
  ce->add_option("--blocks", blocks, "Number of blocks K")->check(CLI::Range(2, 64));
  ce->add_option("--report", ce_report, "JSON report path (- for stdout)");
  ce->add_option("--weights-csv", ce_weights, "Export a dense weight prefix as CSV");
  ce->add_option("--weights-len", ce_len, "Length of the exported prefix");
  ce->add_option("--plot", ce_plot, "SVG of r_2(K) growth");
  ce->add_option("--trials", ce_trials, "Random sets for the uniform property (A) check");
  ce->add_option("--seed", ce_seed, "Seed for the random sets");

  std::string replay_path;
  auto* rp = app.add_subcommand("replay", "Re-evaluate stored certificates");
  rp->add_option("file", replay_path, "Report, violation or certificate JSON")->required();

  std::string kind = "nu", spec = "lp:2";
  int em = 1, edim = 6, erandom = 64;
  double etau = 1.0;
  std::uint64_t eseed = 1;
  auto* est = app.add_subcommand("estimate", "Estimate one constant or Lebesgue parameter");
  est->add_option("--kind", kind, "nu, nu_left, ..., psi, fundamental, or L, L_tilde, L_re, L_hat_re, L_ch");
  est->add_option("--norm", spec, "Norm spec");
  est->add_option("--m", em, "Order");
  est->add_option("--tau", etau, "Weakness parameter");
  est->add_option("--dim", edim, "Ambient dimension");
  est->add_option("--random", erandom, "Random vectors");
  est->add_option("--seed", eseed, "Seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*verify) {
      if (!norms.empty() || empty_norms) cfg.norms = norms;
      return cmd_verify(cfg, out, csv, plot);
    }
    if (*ce) return cmd_counterexample(blocks, ce_report, ce_weights, ce_len, ce_plot, ce_trials, ce_seed);
    if (*rp) return cmd_replay(replay_path);
    if (*est) return cmd_estimate(kind, spec, em, etau, edim, erandom, eseed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
