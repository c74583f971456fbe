#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bm3/parallel.hpp"
#include "bm3/types.hpp"

namespace bm3 {

enum class Setting { I, II, III };

enum class SubpopRule { round_robin, given };

struct SimConfig {
  int n = 100;
  int p = 10;
  int T_max = 10;
  int G = 2;
  int R = 2;
  int K = 4;
  int C = 1;
  std::vector<int> d;  // p entries; empty means all 3
  std::vector<int> T;  // n entries; empty means balanced T_max
  SubpopRule subpop_rule = SubpopRule::round_robin;
  std::vector<int> c;  // used when subpop_rule == given (0-based)
  std::uint64_t seed = 0;
};

// The realized generative state behind one simulated dataset.
struct GroundTruth {
  BlockStructure blocks;
  ParamSet params;
  LatentState state;
};

// Generative steps 3a-3c: pi_i ~ Dirichlet(alpha), z_{i,g,r} ~ Cat(pi_i),
// y_{i,j,t} ~ Cat(lambda_{j,.,z}) within each block, restricted to t < T_i.
// Per-subject RNG streams; a seed fully determines the output.
std::pair<Dataset, GroundTruth> draw_dataset(const SimConfig& config,
                                             const BlockStructure& blocks,
                                             const ParamSet& params,
                                             ThreadPool* pool = nullptr);

struct BuiltinSetting {
  SimConfig config;
  BlockStructure blocks;
  ParamSet params;
};

// The simulation designs of the source experiments:
// (p,T,G,R,K) = (10,10,2,2,4), d_j = 3, alpha = (1,1,1,1),
// s = (1x5, 2x5); I: shared cut-point 5; II: group cut-points (7), (3);
// III: C = 2 with subpopulation cut-points (3) and (7).
BuiltinSetting builtin_setting(Setting which);

// The five 3xK probability tables used by the builtin settings, cycled to
// p items (table j uses pattern j mod 5). K must be 4.
std::vector<double> repeat_lambda_tables(int p, int K);

const char* setting_name(Setting which);
Setting parse_setting(const std::string& text);

}  // namespace bm3
