#include "bm3/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "bm3/likelihood.hpp"
#include "bm3/stats.hpp"

namespace bm3 {

void SamplerConfig::check() const {
  if (iterations < 1) throw_config("iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) {
    throw_config("burn_in must lie in [0, iterations)");
  }
  if (thin < 1) throw_config("thin must be >= 1");
  if (chains < 1) throw_config("chains must be >= 1");
  if (!(a_alpha > 0.0) || !(b_alpha > 0.0)) {
    throw_config("a_alpha and b_alpha must be positive");
  }
  if (!(sigma_alpha > 0.0)) throw_config("sigma_alpha must be positive");
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw_config("target_accept must lie in (0, 1)");
  }
}

std::int64_t DrawStore::draw_count() const {
  return (iterations - burn_in) / thin;
}

std::size_t DrawStore::lambda_size() const {
  std::size_t size = 0;
  for (int dj : d) size += static_cast<std::size_t>(dj) * K;
  return size;
}

std::vector<std::size_t> DrawStore::lambda_offsets() const {
  std::vector<std::size_t> off(d.size() + 1);
  std::size_t acc = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    off[j] = acc;
    acc += static_cast<std::size_t>(d[j]) * K;
  }
  off[d.size()] = acc;
  return off;
}

BlockStructure DrawStore::blocks_at(std::int64_t l) const {
  std::vector<int> sl(p), vl(static_cast<std::size_t>(G) * C * (R - 1));
  for (int j = 0; j < p; ++j) sl[j] = s[static_cast<std::size_t>(l) * p + j];
  for (std::size_t e = 0; e < vl.size(); ++e) {
    vl[e] = v[static_cast<std::size_t>(l) * vl.size() + e];
  }
  return BlockStructure::make(G, R, C, T_max, std::move(sl), std::move(vl));
}

ParamSet DrawStore::params_at(std::int64_t l) const {
  ParamSet out = ParamSet::make(d, K, G, C, catalog_size);
  const std::size_t lsz = lambda_size();
  std::copy_n(lambda.begin() + static_cast<std::size_t>(l) * lsz, lsz,
              out.lambda.begin());
  std::copy_n(alpha.begin() + static_cast<std::size_t>(l) * K, K,
              out.alpha.begin());
  std::copy_n(xi.begin() + static_cast<std::size_t>(l) * G, G, out.xi.begin());
  std::copy_n(kappa.begin() + static_cast<std::size_t>(l) * out.kappa.size(),
              out.kappa.size(), out.kappa.begin());
  return out;
}

std::span<const double> DrawStore::pi_at(std::int64_t l) const {
  std::size_t sz = static_cast<std::size_t>(n) * K;
  return {pi.data() + static_cast<std::size_t>(l) * sz, sz};
}

std::span<const std::uint8_t> DrawStore::z_at(std::int64_t l) const {
  std::size_t sz = static_cast<std::size_t>(n) * G * R;
  return {z.data() + static_cast<std::size_t>(l) * sz, sz};
}

void DrawStore::check_consistency() const {
  const std::size_t L = static_cast<std::size_t>(draw_count());
  const std::size_t H = static_cast<std::size_t>(catalog_size);
  bool ok = lambda.size() == L * lambda_size() &&
            alpha.size() == L * K && xi.size() == L * G &&
            kappa.size() == L * G * C * H &&
            s.size() == L * p &&
            v.size() == L * static_cast<std::size_t>(G) * C * (R - 1) &&
            pi.size() == L * static_cast<std::size_t>(n) * K &&
            z.size() == L * static_cast<std::size_t>(n) * G * R &&
            accept.size() == static_cast<std::size_t>(iterations) &&
            loglik.size() == static_cast<std::size_t>(iterations);
  if (!ok) throw_validation("draw store arrays disagree with manifest dims");
}

void update_lambda(const Dataset& data, const BlockStructure& blocks,
                   const LatentState& state, const ChainRng& rng,
                   std::uint64_t iter, ParamSet& params, ThreadPool* pool) {
  const int K = params.K;
  const std::size_t size = params.lambda.size();
  const int chunks = ThreadPool::chunk_count(data.n);
  // Counts are recomputed from scratch each call.
  std::vector<std::uint64_t> counts(size * chunks, 0);
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int ci) {
    std::uint64_t* cnt = counts.data() + static_cast<std::size_t>(ci) * size;
    for (std::int64_t i = begin; i < end; ++i) {
      const int c = data.c[i];
      for (int j = 0; j < data.p; ++j) {
        const int g = blocks.s[j];
        const std::uint8_t* periods = blocks.period_row(g, c);
        const std::uint8_t* zrow = state.z_row(static_cast<int>(i), g);
        const std::uint8_t* row = data.y_row(static_cast<int>(i), j);
        std::uint64_t* base = cnt + params.lambda_offset[j];
        for (int t = 0; t < data.T[i]; ++t) {
          ++base[static_cast<std::size_t>(row[t]) * K + zrow[periods[t]]];
        }
      }
    }
  });
  for (int ci = 1; ci < chunks; ++ci) {
    const std::uint64_t* src = counts.data() + static_cast<std::size_t>(ci) * size;
    for (std::size_t e = 0; e < size; ++e) counts[e] += src[e];
  }

  std::vector<double> shape, draw;
  for (int j = 0; j < data.p; ++j) {
    const int dj = data.d[j];
    shape.resize(dj);
    draw.resize(dj);
    for (int k = 0; k < K; ++k) {
      for (int cat = 0; cat < dj; ++cat) {
        shape[cat] = 1.0 + static_cast<double>(
                               counts[params.lambda_offset[j] +
                                      static_cast<std::size_t>(cat) * K + k]);
      }
      rng::Stream stream = rng.stream(ChainRng::kLambda, iter, j,
                                      rng.profile(k));
      stream.dirichlet(shape, draw);
      for (int cat = 0; cat < dj; ++cat) params.lambda_at(j, cat, k) = draw[cat];
    }
  }
}

void update_pi(const Dataset& data, const BlockStructure& blocks,
               const ParamSet& params, const ChainRng& rng,
               std::uint64_t iter, LatentState& state, ThreadPool* pool) {
  const int K = params.K;
  const int GR = blocks.G * blocks.R;
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int) {
    std::vector<int> cnt(K);
    for (std::int64_t i = begin; i < end; ++i) {
      std::fill(cnt.begin(), cnt.end(), 0);
      const std::uint8_t* zrow = state.z.data() + i * GR;
      for (int e = 0; e < GR; ++e) ++cnt[zrow[e]];
      auto pi = state.pi_row(static_cast<int>(i));
      double total = 0.0;
      for (int k = 0; k < K; ++k) {
        rng::Stream stream = rng.stream(ChainRng::kPi, iter,
                                        static_cast<std::uint64_t>(i),
                                        rng.profile(k));
        pi[k] = stream.gamma(params.alpha[k] + cnt[k]);
        total += pi[k];
      }
      if (!(total > 0.0)) throw_numeric("pi draw underflowed to zero");
      for (int k = 0; k < K; ++k) pi[k] /= total;
    }
  });
}

void update_z(const Dataset& data, const BlockStructure& blocks,
              const ParamSet& params, const ChainRng& rng, std::uint64_t iter,
              LatentState& state, ThreadPool* pool) {
  const int K = params.K;
  const int G = blocks.G, R = blocks.R;
  std::vector<double> log_lambda = log_lambda_table(params);
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int) {
    std::vector<double> acc(static_cast<std::size_t>(G) * R * K);
    std::vector<double> logpi(K);
    for (std::int64_t i = begin; i < end; ++i) {
      auto pi = state.pi_row(static_cast<int>(i));
      for (int k = 0; k < K; ++k) logpi[k] = std::log(pi[k]);
      for (int br = 0; br < G * R; ++br) {
        double* a = acc.data() + static_cast<std::size_t>(br) * K;
        for (int k = 0; k < K; ++k) a[k] = logpi[k];
      }
      const int ci = data.c[i];
      for (int j = 0; j < data.p; ++j) {
        const int g = blocks.s[j];
        const std::uint8_t* periods = blocks.period_row(g, ci);
        const std::uint8_t* row = data.y_row(static_cast<int>(i), j);
        const double* lam = log_lambda.data() + params.lambda_offset[j];
        for (int t = 0; t < data.T[i]; ++t) {
          double* a = acc.data() +
                      (static_cast<std::size_t>(g) * R + periods[t]) * K;
          const double* l = lam + static_cast<std::size_t>(row[t]) * K;
          for (int k = 0; k < K; ++k) a[k] += l[k];
        }
      }
      // Gumbel-max draw per block; per-profile streams keep the chain
      // equivariant under profile relabeling.
      for (int g = 0; g < G; ++g) {
        for (int r = 0; r < R; ++r) {
          const double* a = acc.data() + (static_cast<std::size_t>(g) * R + r) * K;
          const std::uint64_t entity =
              (static_cast<std::uint64_t>(i) * G + g) * R + r;
          double best = -std::numeric_limits<double>::infinity();
          int best_k = 0;
          for (int k = 0; k < K; ++k) {
            if (a[k] == -std::numeric_limits<double>::infinity()) continue;
            rng::Stream stream =
                rng.stream(ChainRng::kZ, iter, entity, rng.profile(k));
            double val = a[k] + stream.gumbel();
            if (val > best) {
              best = val;
              best_k = k;
            }
          }
          if (best == -std::numeric_limits<double>::infinity()) {
            throw_numeric("all z conditional weights are zero");
          }
          state.z_at(static_cast<int>(i), g, r) =
              static_cast<std::uint8_t>(best_k);
        }
      }
    }
  });
}

void update_s(const Dataset& data, const ParamSet& params,
              const LatentState& state, const ChainRng& rng,
              std::uint64_t iter, BlockStructure& blocks, ThreadPool* pool) {
  const int K = params.K;
  const int G = blocks.G;
  const int T_max = data.T_max;
  std::vector<double> log_lambda = log_lambda_table(params);

  // zz[g][i][t]: membership governing (i, t) if the item belonged to group g.
  std::vector<std::uint8_t> zz(static_cast<std::size_t>(G) * data.n * T_max);
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int) {
    for (std::int64_t i = begin; i < end; ++i) {
      const int ci = data.c[i];
      for (int g = 0; g < G; ++g) {
        const std::uint8_t* periods = blocks.period_row(g, ci);
        const std::uint8_t* zrow = state.z_row(static_cast<int>(i), g);
        std::uint8_t* out =
            zz.data() + (static_cast<std::size_t>(g) * data.n + i) * T_max;
        for (int t = 0; t < data.T[i]; ++t) out[t] = zrow[periods[t]];
      }
    }
  });

  std::vector<double> log_xi(G);
  for (int g = 0; g < G; ++g) log_xi[g] = std::log(params.xi[g]);

  ThreadPool::for_each(pool, data.p, [&](std::int64_t jb, std::int64_t je,
                                         int) {
    std::vector<double> score(G);
    std::vector<double> weights(G);
    for (std::int64_t j = jb; j < je; ++j) {
      for (int g = 0; g < G; ++g) score[g] = log_xi[g];
      const double* lam = log_lambda.data() + params.lambda_offset[j];
      for (int i = 0; i < data.n; ++i) {
        const std::uint8_t* row = data.y_row(i, static_cast<int>(j));
        for (int g = 0; g < G; ++g) {
          const std::uint8_t* zr =
              zz.data() + (static_cast<std::size_t>(g) * data.n + i) * T_max;
          double sum = 0.0;
          for (int t = 0; t < data.T[i]; ++t) {
            sum += lam[static_cast<std::size_t>(row[t]) * K + zr[t]];
          }
          score[g] += sum;
        }
      }
      double m = *std::max_element(score.begin(), score.end());
      if (m == -std::numeric_limits<double>::infinity()) {
        throw_numeric("all group conditional weights are zero");
      }
      for (int g = 0; g < G; ++g) weights[g] = std::exp(score[g] - m);
      rng::Stream stream =
          rng.stream(ChainRng::kGroup, iter, static_cast<std::uint64_t>(j));
      blocks.s[j] = stream.categorical(weights);
    }
  });
}

void update_cutpoints(const Dataset& data, const ParamSet& params,
                      const LatentState& state, const CutpointCatalog& catalog,
                      const ChainRng& rng, std::uint64_t iter,
                      BlockStructure& blocks, ThreadPool* pool) {
  const int K = params.K;
  const int G = blocks.G, R = blocks.R, C = blocks.C;
  const int T_max = data.T_max;
  if (catalog.T_max() != T_max || catalog.R() != R ||
      catalog.size() != params.catalog_size()) {
    throw_validation("cut-point catalog disagrees with model dims");
  }
  if (R == 1) return;  // single period, nothing to sample
  std::vector<double> log_lambda = log_lambda_table(params);

  ThreadPool::tasks(pool, G * C, [&](int cell) {
    const int g = cell / C;
    const int c = cell % C;
    // A[r][t]: total log-lambda mass of visit t under period r for group g,
    // pooled over the cell's subjects; prefix sums make each candidate O(R).
    std::vector<double> A(static_cast<std::size_t>(R) * T_max, 0.0);
    for (int i = 0; i < data.n; ++i) {
      if (data.c[i] != c) continue;
      const std::uint8_t* zrow = state.z_row(i, g);
      for (int j = 0; j < data.p; ++j) {
        if (blocks.s[j] != g) continue;
        const std::uint8_t* row = data.y_row(i, j);
        const double* lam = log_lambda.data() + params.lambda_offset[j];
        for (int t = 0; t < data.T[i]; ++t) {
          const double* l = lam + static_cast<std::size_t>(row[t]) * K;
          for (int r = 0; r < R; ++r) {
            A[static_cast<std::size_t>(r) * T_max + t] += l[zrow[r]];
          }
        }
      }
    }
    // prefix[r][t] = sum_{t' <= t} A[r][t'], with prefix[r][0] = 0 slot
    std::vector<double> prefix(static_cast<std::size_t>(R) * (T_max + 1), 0.0);
    for (int r = 0; r < R; ++r) {
      double acc = 0.0;
      for (int t = 0; t < T_max; ++t) {
        acc += A[static_cast<std::size_t>(r) * T_max + t];
        prefix[static_cast<std::size_t>(r) * (T_max + 1) + t + 1] = acc;
      }
    }
    const std::int64_t H = catalog.size();
    auto kappa_row = params.kappa_row(g, c);
    std::vector<double> score(H);
    for (std::int64_t m = 0; m < H; ++m) {
      auto cuts = catalog.at(m);
      double total = std::log(kappa_row[m]);
      int lo = 0;
      for (int r = 0; r < R; ++r) {
        int hi = (r == R - 1) ? T_max : cuts[r];
        total += prefix[static_cast<std::size_t>(r) * (T_max + 1) + hi] -
                 prefix[static_cast<std::size_t>(r) * (T_max + 1) + lo];
        lo = hi;
      }
      score[m] = total;
    }
    double mx = *std::max_element(score.begin(), score.end());
    if (mx == -std::numeric_limits<double>::infinity()) {
      throw_numeric("all cut-point conditional weights are zero");
    }
    for (std::int64_t m = 0; m < H; ++m) score[m] = std::exp(score[m] - mx);
    rng::Stream stream = rng.stream(ChainRng::kCut, iter,
                                    static_cast<std::uint64_t>(g) * C + c);
    std::int64_t pick = stream.categorical(score);
    blocks.set_cutpoints(g, c, catalog.at(pick));
  });
}

void update_xi_kappa(const BlockStructure& blocks,
                     const CutpointCatalog& catalog, const ChainRng& rng,
                     std::uint64_t iter, ParamSet& params) {
  const int G = blocks.G, C = blocks.C;
  std::vector<double> shape(G, 1.0);
  for (int label : blocks.s) shape[label] += 1.0;
  rng::Stream xi_stream = rng.stream(ChainRng::kXi, iter, 0);
  xi_stream.dirichlet(shape, params.xi);

  const std::int64_t H = catalog.size();
  std::vector<double> kshape(H);
  for (int g = 0; g < G; ++g) {
    for (int c = 0; c < C; ++c) {
      std::fill(kshape.begin(), kshape.end(), 1.0);
      kshape[catalog.index_of(blocks.cutpoints(g, c))] += 1.0;
      rng::Stream stream = rng.stream(ChainRng::kKappa, iter,
                                      static_cast<std::uint64_t>(g) * C + c);
      stream.dirichlet(kshape, params.kappa_row(g, c));
    }
  }
}

bool update_alpha_mh(std::span<const double> sum_log_pi,
                     std::int64_t n_subjects, double a_alpha, double b_alpha,
                     double sigma_alpha, const ChainRng& rng,
                     std::uint64_t iter, std::vector<double>& alpha) {
  const int K = static_cast<int>(alpha.size());
  std::vector<double> prop(K);
  double a0 = 0.0, a0_star = 0.0;
  for (int k = 0; k < K; ++k) {
    rng::Stream stream =
        rng.stream(ChainRng::kAlphaProp, iter, 0, rng.profile(k));
    prop[k] = alpha[k] * std::exp(sigma_alpha * stream.normal());
    a0 += alpha[k];
    a0_star += prop[k];
  }
  double log_r = -b_alpha * (a0_star - a0) +
                 (a_alpha - 1.0) * (std::log(a0_star) - std::log(a0)) +
                 n_subjects * (std::lgamma(a0_star) - std::lgamma(a0));
  for (int k = 0; k < K; ++k) {
    log_r += std::log(prop[k]) - std::log(alpha[k]);  // proposal correction
    log_r -= n_subjects * (std::lgamma(prop[k]) - std::lgamma(alpha[k]));
    if (!sum_log_pi.empty()) {
      log_r += (prop[k] - alpha[k]) * sum_log_pi[k];
    }
  }
  rng::Stream accept_stream = rng.stream(ChainRng::kAlphaAccept, iter, 0);
  if (std::log(accept_stream.u01_open()) < log_r) {
    alpha = std::move(prop);
    return true;
  }
  return false;
}

void init_chain(const Dataset& data, const ModelDims& dims,
                const CutpointCatalog& catalog, const ChainRng& rng,
                BlockStructure& blocks, ParamSet& params, LatentState& state,
                ThreadPool* pool) {
  const int G = dims.G, R = dims.R, K = dims.K;
  std::vector<int> s(data.p);
  for (int j = 0; j < data.p; ++j) {
    rng::Stream stream = rng.stream(ChainRng::kInitS, 0, j);
    s[j] = static_cast<int>(stream.uniform_int(G));
  }
  std::vector<int> v(static_cast<std::size_t>(G) * data.C * (R - 1));
  blocks = BlockStructure::make(G, R, data.C, data.T_max, std::move(s),
                                std::move(v));
  for (int g = 0; g < G; ++g) {
    for (int c = 0; c < data.C; ++c) {
      rng::Stream stream = rng.stream(ChainRng::kInitCut, 0,
                                      static_cast<std::uint64_t>(g) * data.C + c);
      std::int64_t pick =
          static_cast<std::int64_t>(stream.uniform_int(catalog.size()));
      blocks.set_cutpoints(g, c, catalog.at(pick));
    }
  }

  params = ParamSet::make(data.d, K, G, data.C, catalog.size());
  std::vector<double> shape, draw;
  for (int j = 0; j < data.p; ++j) {
    shape.assign(data.d[j], 1.0);
    draw.resize(data.d[j]);
    for (int k = 0; k < K; ++k) {
      rng::Stream stream =
          rng.stream(ChainRng::kInitLambda, 0, j, rng.profile(k));
      stream.dirichlet(shape, draw);
      for (int cat = 0; cat < data.d[j]; ++cat) {
        params.lambda_at(j, cat, k) = draw[cat];
      }
    }
  }
  params.alpha.assign(K, 1.0);

  state = LatentState::make(data.n, G, R, K);
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int) {
    for (std::int64_t i = begin; i < end; ++i) {
      auto pi = state.pi_row(static_cast<int>(i));
      double total = 0.0;
      for (int k = 0; k < K; ++k) {
        rng::Stream stream = rng.stream(ChainRng::kInitPi, 0,
                                        static_cast<std::uint64_t>(i),
                                        rng.profile(k));
        pi[k] = stream.gamma(1.0);
        total += pi[k];
      }
      for (int k = 0; k < K; ++k) pi[k] /= total;
    }
  });
  update_z(data, blocks, params, rng, 0, state, pool);
}

DrawStore run_chain(const Dataset& data, const ModelDims& dims,
                    const SamplerConfig& config, int chain_index,
                    ThreadPool* pool) {
  config.check();
  if (dims.G < 1 || dims.G > data.p || dims.R < 1 || dims.R > data.T_max ||
      dims.K < 1) {
    throw_validation("model dims are infeasible for this dataset");
  }
  CutpointCatalog catalog(data.T_max, dims.R);
  ChainRng rng{config.seed, static_cast<std::uint64_t>(chain_index), {}};

  BlockStructure blocks;
  ParamSet params;
  LatentState state;
  init_chain(data, dims, catalog, rng, blocks, params, state, pool);
  validate(data, blocks, params);
  validate_state(data, blocks, dims.K, state);

  DrawStore store;
  store.n = data.n;
  store.p = data.p;
  store.T_max = data.T_max;
  store.C = data.C;
  store.G = dims.G;
  store.R = dims.R;
  store.K = dims.K;
  store.d = data.d;
  store.catalog_size = catalog.size();
  store.iterations = config.iterations;
  store.burn_in = config.burn_in;
  store.thin = config.thin;
  store.seed = config.seed;
  store.chain = chain_index;
  store.a_alpha = config.a_alpha;
  store.b_alpha = config.b_alpha;
  store.sigma_alpha = config.sigma_alpha;
  store.adapt_sigma = config.adapt_sigma;

  const std::int64_t L = store.draw_count();
  store.lambda.reserve(L * store.lambda_size());
  store.alpha.reserve(L * dims.K);
  store.xi.reserve(L * dims.G);
  store.kappa.reserve(L * params.kappa.size());
  store.s.reserve(L * data.p);
  store.v.reserve(L * blocks.v.size());
  store.pi.reserve(L * state.pi.size());
  store.z.reserve(L * state.z.size());
  store.accept.resize(config.iterations, 0);
  store.loglik.resize(config.iterations, 0.0);

  double sigma = config.sigma_alpha;
  std::vector<double> sum_log_pi(dims.K);
  std::int64_t accepted_post_burn = 0;

  for (std::int64_t l = 1; l <= config.iterations; ++l) {
    const auto iter = static_cast<std::uint64_t>(l);
    update_lambda(data, blocks, state, rng, iter, params, pool);
    update_pi(data, blocks, params, rng, iter, state, pool);
    update_z(data, blocks, params, rng, iter, state, pool);
    update_s(data, params, state, rng, iter, blocks, pool);
    update_cutpoints(data, params, state, catalog, rng, iter, blocks, pool);
    update_xi_kappa(blocks, catalog, rng, iter, params);

    std::fill(sum_log_pi.begin(), sum_log_pi.end(), 0.0);
    for (int i = 0; i < data.n; ++i) {
      auto pi = state.pi_row(i);
      for (int k = 0; k < dims.K; ++k) sum_log_pi[k] += std::log(pi[k]);
    }
    bool accepted = update_alpha_mh(sum_log_pi, data.n, config.a_alpha,
                                    config.b_alpha, sigma, rng, iter,
                                    params.alpha);
    store.accept[l - 1] = accepted ? 1 : 0;
    if (l > config.burn_in && accepted) ++accepted_post_burn;

    if (config.adapt_sigma && l <= config.burn_in) {
      double step = 1.0 / std::sqrt(static_cast<double>(l));
      sigma = std::exp(std::log(sigma) +
                       step * ((accepted ? 1.0 : 0.0) - config.target_accept));
      sigma = std::clamp(sigma, 1e-6, 100.0);
    }

    store.loglik[l - 1] = complete_data_loglik(data, blocks, params, state,
                                               pool);

    if (l > config.burn_in && (l - config.burn_in) % config.thin == 0) {
      store.lambda.insert(store.lambda.end(), params.lambda.begin(),
                          params.lambda.end());
      store.alpha.insert(store.alpha.end(), params.alpha.begin(),
                         params.alpha.end());
      store.xi.insert(store.xi.end(), params.xi.begin(), params.xi.end());
      store.kappa.insert(store.kappa.end(), params.kappa.begin(),
                         params.kappa.end());
      store.s.insert(store.s.end(), blocks.s.begin(), blocks.s.end());
      store.v.insert(store.v.end(), blocks.v.begin(), blocks.v.end());
      store.pi.insert(store.pi.end(), state.pi.begin(), state.pi.end());
      store.z.insert(store.z.end(), state.z.begin(), state.z.end());
    }
  }

  store.sigma_alpha_final = sigma;
  store.acceptance_rate =
      static_cast<double>(accepted_post_burn) /
      static_cast<double>(config.iterations - config.burn_in);
  store.check_consistency();
  return store;
}

}  // namespace bm3
