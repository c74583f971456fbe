#include "bm3/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "bm3/rng.hpp"

namespace bm3 {

namespace {

// Simulator stream tags (documented in README; sampler tags live in
// sampler.cpp and use a disjoint range).
enum SimStep : std::uint32_t {
  kSimPi = 32,
  kSimZ = 33,
  kSimY = 34,
};

constexpr std::uint64_t kSimDomain = 0;

// Row-major category x profile patterns; columns are profiles.
constexpr double kLambdaPatterns[5][3][4] = {
    {{0.10, 0.30, 0.45, 0.70}, {0.80, 0.10, 0.45, 0.05}, {0.10, 0.60, 0.10, 0.25}},
    {{0.20, 0.45, 0.55, 0.80}, {0.70, 0.05, 0.40, 0.10}, {0.10, 0.50, 0.05, 0.10}},
    {{0.30, 0.45, 0.60, 0.90}, {0.60, 0.05, 0.35, 0.05}, {0.10, 0.50, 0.05, 0.05}},
    {{0.10, 0.25, 0.50, 0.90}, {0.10, 0.65, 0.05, 0.05}, {0.80, 0.10, 0.45, 0.05}},
    {{0.20, 0.45, 0.60, 0.90}, {0.70, 0.05, 0.05, 0.05}, {0.10, 0.50, 0.35, 0.05}},
};

}  // namespace

std::vector<double> repeat_lambda_tables(int p, int K) {
  if (K != 4) throw_validation("builtin lambda tables are defined for K = 4");
  std::vector<double> lambda(static_cast<std::size_t>(p) * 3 * K);
  for (int j = 0; j < p; ++j) {
    const auto& pat = kLambdaPatterns[j % 5];
    for (int cat = 0; cat < 3; ++cat) {
      for (int k = 0; k < K; ++k) {
        lambda[(static_cast<std::size_t>(j) * 3 + cat) * K + k] = pat[cat][k];
      }
    }
  }
  return lambda;
}

BuiltinSetting builtin_setting(Setting which) {
  BuiltinSetting out;
  SimConfig& cfg = out.config;
  cfg.n = 100;
  cfg.p = 10;
  cfg.T_max = 10;
  cfg.G = 2;
  cfg.R = 2;
  cfg.K = 4;
  cfg.C = (which == Setting::III) ? 2 : 1;
  cfg.d.assign(cfg.p, 3);

  std::vector<int> s(cfg.p);
  for (int j = 0; j < cfg.p; ++j) s[j] = j < 5 ? 0 : 1;

  std::vector<int> v;
  switch (which) {
    case Setting::I:
      v = {5, 5};  // (g=0,c=0), (g=1,c=0)
      break;
    case Setting::II:
      v = {7, 3};
      break;
    case Setting::III:
      // layout (g,c): (0,0)=3, (0,1)=7, (1,0)=3, (1,1)=7
      v = {3, 7, 3, 7};
      break;
  }
  out.blocks = BlockStructure::make(cfg.G, cfg.R, cfg.C, cfg.T_max,
                                    std::move(s), std::move(v));

  std::uint64_t H = binomial_coefficient(cfg.T_max - 1, cfg.R - 1);
  out.params = ParamSet::make(cfg.d, cfg.K, cfg.G, cfg.C,
                              static_cast<std::int64_t>(H));
  out.params.lambda = repeat_lambda_tables(cfg.p, cfg.K);
  out.params.alpha.assign(cfg.K, 1.0);
  return out;
}

std::pair<Dataset, GroundTruth> draw_dataset(const SimConfig& config,
                                             const BlockStructure& blocks,
                                             const ParamSet& params,
                                             ThreadPool* pool) {
  if (config.n < 1 || config.p < 1 || config.T_max < 1) {
    throw_validation("simulation dims must be positive");
  }
  if (config.G > config.p || config.R > config.T_max) {
    throw_validation("simulation dims infeasible (G > p or R > T_max)");
  }

  Dataset data;
  data.n = config.n;
  data.p = config.p;
  data.T_max = config.T_max;
  data.C = config.C;
  data.d = config.d.empty() ? std::vector<int>(config.p, 3) : config.d;
  if (static_cast<int>(data.d.size()) != config.p) {
    throw_validation("SimConfig.d has wrong length");
  }
  if (config.T.empty()) {
    data.T.assign(config.n, config.T_max);
  } else {
    if (static_cast<int>(config.T.size()) != config.n) {
      throw_validation("SimConfig.T has wrong length");
    }
    data.T = config.T;
  }
  if (config.subpop_rule == SubpopRule::given) {
    if (static_cast<int>(config.c.size()) != config.n) {
      throw_validation("SimConfig.c has wrong length");
    }
    data.c = config.c;
  } else {
    data.c.resize(config.n);
    for (int i = 0; i < config.n; ++i) data.c[i] = i % config.C;
  }
  data.y.assign(static_cast<std::size_t>(data.n) * data.p * data.T_max, 0);

  validate(data, blocks, params);

  const int G = blocks.G, R = blocks.R, K = params.K;
  LatentState state = LatentState::make(data.n, G, R, K);

  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int) {
    for (std::int64_t i = begin; i < end; ++i) {
      auto pi = state.pi_row(static_cast<int>(i));
      rng::Stream pi_stream(config.seed, kSimDomain, kSimPi, 0,
                            static_cast<std::uint64_t>(i));
      pi_stream.dirichlet(params.alpha, pi);

      rng::Stream z_stream(config.seed, kSimDomain, kSimZ, 0,
                           static_cast<std::uint64_t>(i));
      for (int g = 0; g < G; ++g) {
        for (int r = 0; r < R; ++r) {
          state.z_at(static_cast<int>(i), g, r) =
              static_cast<std::uint8_t>(z_stream.categorical(pi));
        }
      }

      rng::Stream y_stream(config.seed, kSimDomain, kSimY, 0,
                           static_cast<std::uint64_t>(i));
      const int ci = data.c[i];
      std::vector<double> probs;
      for (int j = 0; j < data.p; ++j) {
        const int g = blocks.s[j];
        const std::uint8_t* periods = blocks.period_row(g, ci);
        probs.resize(data.d[j]);
        for (int t = 0; t < data.T[i]; ++t) {
          const int k = state.z_at(static_cast<int>(i), g, periods[t]);
          for (int cat = 0; cat < data.d[j]; ++cat) {
            probs[cat] = params.lambda_at(j, cat, k);
          }
          data.y_at(static_cast<int>(i), j, t) =
              static_cast<std::uint8_t>(y_stream.categorical(probs));
        }
      }
    }
  });

  GroundTruth truth{blocks, params, std::move(state)};
  return {std::move(data), std::move(truth)};
}

const char* setting_name(Setting which) {
  switch (which) {
    case Setting::I: return "I";
    case Setting::II: return "II";
    case Setting::III: return "III";
  }
  return "?";
}

Setting parse_setting(const std::string& text) {
  if (text == "I" || text == "1" || text == "i") return Setting::I;
  if (text == "II" || text == "2" || text == "ii") return Setting::II;
  if (text == "III" || text == "3" || text == "iii") return Setting::III;
  throw_config("unknown setting '" + text + "' (expected I, II, or III)");
}

}  // namespace bm3
