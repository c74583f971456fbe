#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bm3/parallel.hpp"
#include "bm3/rng.hpp"
#include "bm3/types.hpp"

namespace bm3 {

struct SamplerConfig {
  std::int64_t iterations = 10000;
  std::int64_t burn_in = 5000;
  int thin = 1;
  int chains = 1;
  double a_alpha = 2.0;
  double b_alpha = 1.0;
  double sigma_alpha = 0.02;
  bool adapt_sigma = false;     // Robbins-Monro on log sigma during burn-in
  double target_accept = 0.6;
  std::uint64_t seed = 0;

  void check() const;
};

struct ModelDims {
  int G = 1;
  int R = 1;
  int K = 1;
};

// Stream addressing for one chain. Profile-indexed draws route the profile
// label through profile_stream_map so a relabeled chain can consume
// relabeled streams (see the label-permutation equivariance tests).
struct ChainRng {
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;  // chain index
  std::vector<std::uint32_t> profile_stream_map;  // empty = identity

  enum Step : std::uint32_t {
    kInitS = 1,
    kInitCut = 2,
    kInitLambda = 3,
    kInitPi = 4,
    kLambda = 5,
    kPi = 6,
    kZ = 7,
    kGroup = 8,
    kCut = 9,
    kXi = 10,
    kKappa = 11,
    kAlphaProp = 12,
    kAlphaAccept = 13,
  };

  std::uint32_t profile(int k) const {
    return profile_stream_map.empty() ? static_cast<std::uint32_t>(k)
                                      : profile_stream_map[k];
  }
  rng::Stream stream(std::uint32_t step, std::uint64_t iter,
                     std::uint64_t entity, std::uint32_t sub = 0) const {
    return rng::Stream(seed, domain, step, iter, entity, sub);
  }
};

// Ordered post-burn-in, thinned draws of one chain, plus per-iteration
// acceptance indicators and complete-data log-likelihoods.
struct DrawStore {
  // model and data dims
  int n = 0, p = 0, T_max = 0, C = 1, G = 1, R = 1, K = 1;
  std::vector<int> d;
  std::int64_t catalog_size = 1;
  // chain configuration echo
  std::int64_t iterations = 0, burn_in = 0;
  int thin = 1;
  std::uint64_t seed = 0;
  int chain = 0;
  double a_alpha = 2.0, b_alpha = 1.0;
  double sigma_alpha = 0.02, sigma_alpha_final = 0.02;
  bool adapt_sigma = false;

  // draws, one row per stored draw
  std::vector<double> lambda;   // L x lambda_size
  std::vector<double> alpha;    // L x K
  std::vector<double> xi;       // L x G
  std::vector<double> kappa;    // L x G*C*|H|
  std::vector<std::int32_t> s;  // L x p
  std::vector<std::int32_t> v;  // L x G*C*(R-1)
  std::vector<double> pi;       // L x n*K
  std::vector<std::uint8_t> z;  // L x n*G*R

  // per-iteration traces (length = iterations)
  std::vector<std::uint8_t> accept;
  std::vector<double> loglik;

  double acceptance_rate = 0.0;  // post burn-in mean of accept
  std::optional<double> waic;    // filled by fit when the dataset is at hand

  std::int64_t draw_count() const;
  std::size_t lambda_size() const;
  std::vector<std::size_t> lambda_offsets() const;

  // Materialize draw l as value types (for diagnostics paths).
  BlockStructure blocks_at(std::int64_t l) const;
  ParamSet params_at(std::int64_t l) const;
  std::span<const double> pi_at(std::int64_t l) const;
  std::span<const std::uint8_t> z_at(std::int64_t l) const;

  void check_consistency() const;  // dims vs array lengths
};

// One full systematic scan is: update_lambda -> update_pi, update_z ->
// update_s, update_cutpoints, update_xi_kappa -> update_alpha_mh.

void update_lambda(const Dataset& data, const BlockStructure& blocks,
                   const LatentState& state, const ChainRng& rng,
                   std::uint64_t iter, ParamSet& params,
                   ThreadPool* pool = nullptr);

void update_pi(const Dataset& data, const BlockStructure& blocks,
               const ParamSet& params, const ChainRng& rng,
               std::uint64_t iter, LatentState& state,
               ThreadPool* pool = nullptr);

void update_z(const Dataset& data, const BlockStructure& blocks,
              const ParamSet& params, const ChainRng& rng, std::uint64_t iter,
              LatentState& state, ThreadPool* pool = nullptr);

void update_s(const Dataset& data, const ParamSet& params,
              const LatentState& state, const ChainRng& rng,
              std::uint64_t iter, BlockStructure& blocks,
              ThreadPool* pool = nullptr);

void update_cutpoints(const Dataset& data, const ParamSet& params,
                      const LatentState& state, const CutpointCatalog& catalog,
                      const ChainRng& rng, std::uint64_t iter,
                      BlockStructure& blocks, ThreadPool* pool = nullptr);

void update_xi_kappa(const BlockStructure& blocks,
                     const CutpointCatalog& catalog, const ChainRng& rng,
                     std::uint64_t iter, ParamSet& params);

// Lognormal random-walk Metropolis-Hastings step for alpha targeting
// alpha_0^{a-1} exp(-b alpha_0) * prod_i Dirichlet(pi_i; alpha).
// sum_log_pi[k] = sum_i log pi_{i,k}; n_subjects may be 0 (prior only).
// Returns true when the proposal was accepted.
bool update_alpha_mh(std::span<const double> sum_log_pi,
                     std::int64_t n_subjects, double a_alpha, double b_alpha,
                     double sigma_alpha, const ChainRng& rng,
                     std::uint64_t iter, std::vector<double>& alpha);

// Diffuse exchangeable initialization: s uniform, v uniform over the
// catalog, lambda columns ~ Dirichlet(1), alpha = 1, pi_i ~ Dirichlet(1),
// z from its full conditional at iteration 0.
void init_chain(const Dataset& data, const ModelDims& dims,
                const CutpointCatalog& catalog, const ChainRng& rng,
                BlockStructure& blocks, ParamSet& params, LatentState& state,
                ThreadPool* pool = nullptr);

DrawStore run_chain(const Dataset& data, const ModelDims& dims,
                    const SamplerConfig& config, int chain_index,
                    ThreadPool* pool = nullptr);

// Within-chain label alignment: profile labels are matched to a running
// mean of the lambda draws, group labels to a running majority of s; the
// chosen permutations are applied jointly to every labeled quantity.
// Likelihoods of the draws are unchanged.
void relabel_draws(DrawStore& store);

}  // namespace bm3
