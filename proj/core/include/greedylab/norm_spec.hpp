#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "greedylab/normed_space.hpp"

namespace greedylab {

// Accepted forms:
//   lp:<p>                        p >= 1 or "inf"
//   weighted_tail:file=<csv>      relative paths resolve against base_dir
//   weighted_tail:w=<w1>;<w2>;... inline weights
//   weighted_tail:counterexample  prefix of the constructed weight sequence
//   max:[<spec>,<spec>,...]
// Any spec may end in @<key>=<value>,... to override metadata constants
// (K_b, K_s, C_l, C_w, C_a, C_g, C_b); an override replaces the analytic
// value used by exact-mode checks.
NormOracle parse_norm_spec(std::string_view spec, int ambient_dim,
                           const std::filesystem::path& base_dir = std::filesystem::current_path());

}  // namespace greedylab
