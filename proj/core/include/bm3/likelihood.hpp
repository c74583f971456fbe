#pragma once

#include <span>
#include <vector>

#include "bm3/parallel.hpp"
#include "bm3/types.hpp"

namespace bm3 {

// log lambda in the ParamSet layout ([j][category][k], k fastest).
std::vector<double> log_lambda_table(const ParamSet& params);

// Log of the bracketed product of the model pmf for subject i given its
// mixed membership vector: sum over blocks (g,r) of
// log sum_k pi_k prod_{j: s_j=g} prod_{t in period r, t < T_i} lambda_{j,y,k}.
// Empty blocks contribute log sum_k pi_k = 0.
double cond_loglik_given_pi(const Dataset& data, const BlockStructure& blocks,
                            const ParamSet& params,
                            std::span<const double> pi_i, int i);

// Same, with a precomputed log-lambda table (hot path for WAIC).
double cond_loglik_given_pi(const Dataset& data, const BlockStructure& blocks,
                            std::span<const double> log_lambda,
                            const std::vector<std::size_t>& lambda_offset,
                            int K, std::span<const double> pi_i, int i);

// Oracle: explicit enumeration over all z in [K]^{G*R}. Guarded at
// K^{G*R} <= 10^6.
double brute_force_loglik(const Dataset& data, const BlockStructure& blocks,
                          const ParamSet& params,
                          std::span<const double> pi_i, int i);

// Joint log-likelihood of y given z: sum over observations of
// log lambda_{j, y_{i,j,t}, z_{i,g,r}}.
double complete_data_loglik(const Dataset& data, const BlockStructure& blocks,
                            const ParamSet& params, const LatentState& state,
                            ThreadPool* pool = nullptr);

}  // namespace bm3
