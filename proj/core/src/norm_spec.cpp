#include "greedylab/norm_spec.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "greedylab/counterexample_space.hpp"

namespace greedylab {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw DomainError("norm spec: bad " + what + " '" + s + "'");
  return v;
}

// Splits on sep at bracket depth zero.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth < 0) throw DomainError("norm spec: unbalanced brackets");
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw DomainError("norm spec: unbalanced brackets");
  out.push_back(trim(s.substr(start)));
  return out;
}

void apply_override(NormMetadata& meta, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos) throw DomainError("norm spec: override needs key=value");
  std::string key = trim(kv.substr(0, eq));
  double v = parse_number(trim(kv.substr(eq + 1)), "override value");
  std::optional<double>* slot = nullptr;
  if (key == "K_b") slot = &meta.K_b;
  if (key == "K_s") slot = &meta.K_s;
  if (key == "C_l") slot = &meta.C_l;
  if (key == "C_w") slot = &meta.C_w;
  if (key == "C_a") slot = &meta.C_a;
  if (key == "C_g") slot = &meta.C_g;
  if (key == "C_b") slot = &meta.C_b;
  if (!slot) throw DomainError("norm spec: unknown constant '" + key + "'");
  *slot = v;
  meta.provenance += (meta.provenance.empty() ? "" : "; ") + std::string("override ") + kv;
}

NormOracle parse_base(const std::string& spec, int dim, const std::filesystem::path& base_dir) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("norm spec: missing kind in '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "lp") {
    if (arg == "inf") return make_lp_norm(INFINITY);
    return make_lp_norm(parse_number(arg, "exponent"));
  }
  if (kind == "weighted_tail") {
    std::vector<double> w;
    std::string label;
    if (arg.rfind("file=", 0) == 0) {
      std::filesystem::path p = arg.substr(5);
      if (p.is_relative()) p = base_dir / p;
      w = read_weights_csv(p);
      label = arg;
    } else if (arg.rfind("w=", 0) == 0) {
      for (const auto& tok : split_top(arg.substr(2), ';')) w.push_back(parse_number(tok, "weight"));
      label = arg;
    } else if (arg == "counterexample") {
      WeightSequence ws = build_weights(4);
      while (ws.length() < static_cast<Count>(dim) && !ws.j_max_reached) ws = build_weights(ws.J + 1);
      w = ws.dense_prefix(static_cast<std::size_t>(dim));
      label = arg;
    } else {
      throw DomainError("norm spec: weighted_tail expects file=, w= or counterexample");
    }
    if (static_cast<int>(w.size()) < dim) throw DomainError("norm spec: fewer weights than the ambient dimension");
    NormOracle o = make_weighted_tail_norm(std::move(w));
    o.set_name("weighted_tail:" + label);
    return o;
  }
  if (kind == "max") {
    if (arg.size() < 2 || arg.front() != '[' || arg.back() != ']') throw DomainError("norm spec: max:[...] expected");
    std::vector<NormOracle> parts;
    for (const auto& item : split_top(std::string_view(arg).substr(1, arg.size() - 2), ',')) {
      parts.push_back(parse_norm_spec(item, dim, base_dir));
    }
    return make_max_norm(std::move(parts));
  }
  throw DomainError("norm spec: unknown kind '" + kind + "'");
}

}  // namespace

NormOracle parse_norm_spec(std::string_view spec_in, int ambient_dim, const std::filesystem::path& base_dir) {
  std::string spec = trim(spec_in);
  auto parts = split_top(spec, '@');
  if (parts.size() > 2) throw DomainError("norm spec: more than one override block");
  NormOracle o = parse_base(parts[0], ambient_dim, base_dir);
  if (parts.size() == 2) {
    for (const auto& kv : split_top(parts[1], ',')) apply_override(o.metadata_mut(), kv);
    o.set_name(spec);
  }
  return o;
}

}  // namespace greedylab
