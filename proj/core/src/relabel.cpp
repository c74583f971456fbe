#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bm3/sampler.hpp"

namespace bm3 {

namespace {

// Enumerate permutations in lexicographic order, keeping the first strict
// optimum; ties therefore resolve to the lexicographically smallest one.
template <typename Cost>
std::vector<int> best_permutation(int m, bool minimize, Cost&& cost) {
  std::vector<int> perm(m), best(m);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  double best_val = cost(perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    double val = cost(perm);
    if (minimize ? (val < best_val) : (val > best_val)) {
      best_val = val;
      best = perm;
    }
  }
  return best;
}

std::vector<int> invert(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

void relabel_draws(DrawStore& store) {
  const std::int64_t L = store.draw_count();
  if (L == 0) throw_validation("relabel_draws requires a non-empty store");
  const int K = store.K, G = store.G, R = store.R, C = store.C;
  if (K > 8 || G > 8) {
    throw_numeric("relabeling enumerates K! and G! permutations; K, G <= 8");
  }
  const std::size_t lam_size = store.lambda_size();
  const std::size_t kap_size =
      static_cast<std::size_t>(G) * C * store.catalog_size;
  const std::size_t v_size = static_cast<std::size_t>(G) * C * (R - 1);
  const std::size_t pi_size = static_cast<std::size_t>(store.n) * K;
  const std::size_t z_size = static_cast<std::size_t>(store.n) * G * R;
  const int cols_per_k = static_cast<int>(lam_size) / K;  // stacked entries

  std::vector<double> ref_lambda(lam_size);
  std::vector<double> ref_counts(static_cast<std::size_t>(store.p) * G, 0.0);

  // profile-permutation cost: squared distance between permuted draw
  // columns and the running reference
  std::vector<double> kcost(static_cast<std::size_t>(K) * K);
  std::vector<double> gcost(static_cast<std::size_t>(G) * G);

  std::vector<double> lam_tmp(lam_size), kap_tmp(kap_size), xi_tmp(G),
      alpha_tmp(K);
  std::vector<std::int32_t> v_tmp(v_size), s_tmp(store.p);
  std::vector<double> pi_tmp(pi_size);
  std::vector<std::uint8_t> z_tmp(z_size);

  for (std::int64_t l = 0; l < L; ++l) {
    double* lam = store.lambda.data() + static_cast<std::size_t>(l) * lam_size;
    double* alp = store.alpha.data() + static_cast<std::size_t>(l) * K;
    double* xi = store.xi.data() + static_cast<std::size_t>(l) * G;
    double* kap = store.kappa.data() + static_cast<std::size_t>(l) * kap_size;
    std::int32_t* s = store.s.data() + static_cast<std::size_t>(l) * store.p;
    std::int32_t* v = store.v.data() + static_cast<std::size_t>(l) * v_size;
    double* pi = store.pi.data() + static_cast<std::size_t>(l) * pi_size;
    std::uint8_t* z = store.z.data() + static_cast<std::size_t>(l) * z_size;

    if (l > 0) {
      // profile alignment on lambda
      std::fill(kcost.begin(), kcost.end(), 0.0);
      for (int e = 0; e < cols_per_k; ++e) {
        const double* row = lam + static_cast<std::size_t>(e) * K;
        const double* ref = ref_lambda.data() + static_cast<std::size_t>(e) * K;
        for (int kold = 0; kold < K; ++kold) {
          for (int knew = 0; knew < K; ++knew) {
            double diff = row[kold] - ref[knew];
            kcost[static_cast<std::size_t>(kold) * K + knew] += diff * diff;
          }
        }
      }
      std::vector<int> kperm = best_permutation(K, true, [&](const std::vector<int>& p) {
        double total = 0.0;
        for (int knew = 0; knew < K; ++knew) {
          total += kcost[static_cast<std::size_t>(p[knew]) * K + knew];
        }
        return total;
      });
      std::vector<int> kinv = invert(kperm);
      bool k_identity = std::is_sorted(kperm.begin(), kperm.end());
      if (!k_identity) {
        for (int e = 0; e < cols_per_k; ++e) {
          double* row = lam + static_cast<std::size_t>(e) * K;
          for (int k = 0; k < K; ++k) lam_tmp[k] = row[kperm[k]];
          std::copy_n(lam_tmp.begin(), K, row);
        }
        for (int k = 0; k < K; ++k) alpha_tmp[k] = alp[kperm[k]];
        std::copy_n(alpha_tmp.begin(), K, alp);
        for (int i = 0; i < store.n; ++i) {
          double* row = pi + static_cast<std::size_t>(i) * K;
          for (int k = 0; k < K; ++k) lam_tmp[k] = row[kperm[k]];
          std::copy_n(lam_tmp.begin(), K, row);
        }
        for (std::size_t e = 0; e < z_size; ++e) {
          z[e] = static_cast<std::uint8_t>(kinv[z[e]]);
        }
      }

      // group alignment on s agreement with running counts
      std::fill(gcost.begin(), gcost.end(), 0.0);
      for (int j = 0; j < store.p; ++j) {
        const double* cnt = ref_counts.data() + static_cast<std::size_t>(j) * G;
        for (int gnew = 0; gnew < G; ++gnew) {
          gcost[static_cast<std::size_t>(s[j]) * G + gnew] += cnt[gnew];
        }
      }
      std::vector<int> gperm = best_permutation(G, false, [&](const std::vector<int>& p) {
        double total = 0.0;
        for (int gnew = 0; gnew < G; ++gnew) {
          total += gcost[static_cast<std::size_t>(p[gnew]) * G + gnew];
        }
        return total;
      });
      std::vector<int> ginv = invert(gperm);
      bool g_identity = std::is_sorted(gperm.begin(), gperm.end());
      if (!g_identity) {
        for (int j = 0; j < store.p; ++j) {
          s_tmp[j] = static_cast<std::int32_t>(ginv[s[j]]);
        }
        std::copy_n(s_tmp.begin(), store.p, s);
        for (int g = 0; g < G; ++g) xi_tmp[g] = xi[gperm[g]];
        std::copy_n(xi_tmp.begin(), G, xi);
        for (int g = 0; g < G; ++g) {
          for (int c = 0; c < C; ++c) {
            for (int r = 0; r + 1 < R; ++r) {
              v_tmp[(static_cast<std::size_t>(g) * C + c) * (R - 1) + r] =
                  v[(static_cast<std::size_t>(gperm[g]) * C + c) * (R - 1) + r];
            }
            for (std::int64_t m = 0; m < store.catalog_size; ++m) {
              kap_tmp[(static_cast<std::size_t>(g) * C + c) * store.catalog_size +
                      m] =
                  kap[(static_cast<std::size_t>(gperm[g]) * C + c) *
                          store.catalog_size +
                      m];
            }
          }
        }
        std::copy(v_tmp.begin(), v_tmp.end(), v);
        std::copy(kap_tmp.begin(), kap_tmp.end(), kap);
        for (int i = 0; i < store.n; ++i) {
          for (int g = 0; g < G; ++g) {
            for (int r = 0; r < R; ++r) {
              z_tmp[(static_cast<std::size_t>(g)) * R + r] =
                  z[(static_cast<std::size_t>(i) * G + gperm[g]) * R + r];
            }
          }
          std::copy_n(z_tmp.begin(), static_cast<std::size_t>(G) * R,
                      z + static_cast<std::size_t>(i) * G * R);
        }
      }
    }

    // running reference updates
    const double w = 1.0 / static_cast<double>(l + 1);
    for (std::size_t e = 0; e < lam_size; ++e) {
      ref_lambda[e] += (lam[e] - ref_lambda[e]) * w;
    }
    for (int j = 0; j < store.p; ++j) {
      ref_counts[static_cast<std::size_t>(j) * G + s[j]] += 1.0;
    }
  }
}

}  // namespace bm3
