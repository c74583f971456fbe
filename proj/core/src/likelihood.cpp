#include "bm3/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bm3/stats.hpp"

namespace bm3 {

std::vector<double> log_lambda_table(const ParamSet& params) {
  std::vector<double> out(params.lambda.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::log(params.lambda[i]);
  }
  return out;
}

namespace {

// Per-block profile log-weights for one subject: acc[(g*R+r)*K + k] starts
// at log pi_k and accumulates the block's log-lambda terms.
void block_scores(const Dataset& data, const BlockStructure& blocks,
                  std::span<const double> log_lambda,
                  const std::vector<std::size_t>& lambda_offset, int K,
                  std::span<const double> pi_i, int i,
                  std::vector<double>& acc) {
  const int G = blocks.G, R = blocks.R;
  acc.resize(static_cast<std::size_t>(G) * R * K);
  for (int g = 0; g < G; ++g) {
    for (int r = 0; r < R; ++r) {
      double* a = acc.data() + (static_cast<std::size_t>(g) * R + r) * K;
      for (int k = 0; k < K; ++k) a[k] = std::log(pi_i[k]);
    }
  }
  const int ci = data.c[i];
  for (int j = 0; j < data.p; ++j) {
    const int g = blocks.s[j];
    const std::uint8_t* periods = blocks.period_row(g, ci);
    const std::uint8_t* row = data.y_row(i, j);
    const double* lam = log_lambda.data() + lambda_offset[j];
    for (int t = 0; t < data.T[i]; ++t) {
      double* a = acc.data() +
                  (static_cast<std::size_t>(g) * R + periods[t]) * K;
      const double* l = lam + static_cast<std::size_t>(row[t]) * K;
      for (int k = 0; k < K; ++k) a[k] += l[k];
    }
  }
}

}  // namespace

double cond_loglik_given_pi(const Dataset& data, const BlockStructure& blocks,
                            std::span<const double> log_lambda,
                            const std::vector<std::size_t>& lambda_offset,
                            int K, std::span<const double> pi_i, int i) {
  std::vector<double> acc;
  block_scores(data, blocks, log_lambda, lambda_offset, K, pi_i, i, acc);
  double total = 0.0;
  const int blocks_total = blocks.G * blocks.R;
  for (int br = 0; br < blocks_total; ++br) {
    total += logsumexp({acc.data() + static_cast<std::size_t>(br) * K,
                        static_cast<std::size_t>(K)});
  }
  return total;
}

double cond_loglik_given_pi(const Dataset& data, const BlockStructure& blocks,
                            const ParamSet& params,
                            std::span<const double> pi_i, int i) {
  std::vector<double> log_lambda = log_lambda_table(params);
  return cond_loglik_given_pi(data, blocks, log_lambda, params.lambda_offset,
                              params.K, pi_i, i);
}

double brute_force_loglik(const Dataset& data, const BlockStructure& blocks,
                          const ParamSet& params,
                          std::span<const double> pi_i, int i) {
  const int K = params.K;
  const int nblocks = blocks.G * blocks.R;
  double combos = std::pow(static_cast<double>(K), nblocks);
  if (combos > 1e6) {
    throw_numeric("brute-force enumeration K^(G*R) exceeds the 10^6 guard");
  }
  std::vector<double> log_lambda = log_lambda_table(params);
  std::vector<double> acc;
  block_scores(data, blocks, log_lambda, params.lambda_offset, K, pi_i, i, acc);

  // Sum over all assignments z in [K]^{G*R} of prod_blocks pi_z * W_block(z);
  // acc already holds log(pi_k) + log W per block.
  const auto total_combos = static_cast<std::int64_t>(combos);
  std::vector<double> terms;
  terms.reserve(total_combos);
  std::vector<int> assign(nblocks, 0);
  for (std::int64_t m = 0; m < total_combos; ++m) {
    double term = 0.0;
    for (int br = 0; br < nblocks; ++br) {
      term += acc[static_cast<std::size_t>(br) * K + assign[br]];
    }
    terms.push_back(term);
    for (int br = nblocks - 1; br >= 0; --br) {
      if (++assign[br] < K) break;
      assign[br] = 0;
    }
  }
  return logsumexp(terms);
}

double complete_data_loglik(const Dataset& data, const BlockStructure& blocks,
                            const ParamSet& params, const LatentState& state,
                            ThreadPool* pool) {
  std::vector<double> log_lambda = log_lambda_table(params);
  const int K = params.K;
  const int chunks = ThreadPool::chunk_count(data.n);
  std::vector<double> partial(chunks, 0.0);
  ThreadPool::for_each(pool, data.n, [&](std::int64_t begin, std::int64_t end,
                                         int ci) {
    double sum = 0.0;
    for (std::int64_t i = begin; i < end; ++i) {
      const int c = data.c[i];
      for (int j = 0; j < data.p; ++j) {
        const int g = blocks.s[j];
        const std::uint8_t* periods = blocks.period_row(g, c);
        const std::uint8_t* zrow = state.z_row(static_cast<int>(i), g);
        const std::uint8_t* row = data.y_row(static_cast<int>(i), j);
        const double* lam = log_lambda.data() + params.lambda_offset[j];
        for (int t = 0; t < data.T[i]; ++t) {
          sum += lam[static_cast<std::size_t>(row[t]) * K + zrow[periods[t]]];
        }
      }
    }
    partial[ci] = sum;
  });
  double total = 0.0;
  for (double x : partial) total += x;  // fixed chunk order
  return total;
}

}  // namespace bm3
