#include "bm3/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bm3 {

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return std::string(buf);
}

void check_simplex(std::span<const double> x, const char* field) {
  double sum = 0.0;
  for (double e : x) {
    if (!(e >= 0.0)) {
      throw_validation(fmt("%s has negative entry %g", field, e));
    }
    sum += e;
  }
  double dev = std::abs(sum - 1.0);
  if (dev > kSimplexTol) {
    throw_validation(
        fmt("%s violates the simplex constraint (deviation %g)", field, dev));
  }
}

}  // namespace

std::uint64_t binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // out * num / i is integral at every step; guard overflow.
    if (out > std::numeric_limits<std::uint64_t>::max() / num) {
      throw_numeric("binomial coefficient overflow");
    }
    out = out * num / i;
  }
  return out;
}

CutpointCatalog::CutpointCatalog(int T_max, int R) : T_max_(T_max), R_(R) {
  if (T_max < 1 || R < 1 || R > T_max) {
    throw_validation(fmt("invalid cut-point catalog dims T_max=%d R=%d", T_max, R));
  }
  std::uint64_t count = binomial_coefficient(T_max - 1, R - 1);
  if (count > 2'000'000ULL) {
    throw_numeric(fmt("cut-point catalog too large: C(%d,%d) = %llu", T_max - 1,
                      R - 1, static_cast<unsigned long long>(count)));
  }
  size_ = static_cast<std::int64_t>(count);
  int m = R - 1;
  flat_.reserve(static_cast<std::size_t>(size_) * m);
  if (m == 0) return;  // single empty vector
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i + 1;
  for (;;) {
    flat_.insert(flat_.end(), cur.begin(), cur.end());
    // next combination in lexicographic order over {1..T_max-1}
    int i = m - 1;
    while (i >= 0 && cur[i] == T_max - 1 - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::int64_t CutpointCatalog::index_of(std::span<const int> cuts) const {
  int m = R_ - 1;
  if (static_cast<int>(cuts.size()) != m) {
    throw_validation("cut-point vector length does not match catalog R");
  }
  // Rank of a strictly increasing sequence over {1..T_max-1}.
  std::int64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < m; ++i) {
    for (int x = prev + 1; x < cuts[i]; ++x) {
      rank += static_cast<std::int64_t>(
          binomial_coefficient(T_max_ - 1 - x, m - 1 - i));
    }
    prev = cuts[i];
  }
  return rank;
}

BlockStructure BlockStructure::make(int G, int R, int C, int T_max,
                                    std::vector<int> s, std::vector<int> v) {
  BlockStructure out;
  out.G = G;
  out.R = R;
  out.C = C;
  out.T_max = T_max;
  out.s = std::move(s);
  out.v = std::move(v);
  if (static_cast<int>(out.v.size()) != G * C * (R - 1)) {
    throw_validation("cut-point array v has wrong length");
  }
  out.b.assign(static_cast<std::size_t>(G) * C * T_max, 0);
  out.rebuild_periods();
  return out;
}

void BlockStructure::set_cutpoints(int g, int c, std::span<const int> cuts) {
  if (static_cast<int>(cuts.size()) != R - 1) {
    throw_validation("cut-point vector has wrong length");
  }
  std::copy(cuts.begin(), cuts.end(),
            v.begin() + (static_cast<std::size_t>(g) * C + c) * (R - 1));
  rebuild_periods(g, c);
}

void BlockStructure::rebuild_periods() {
  for (int g = 0; g < G; ++g)
    for (int c = 0; c < C; ++c) rebuild_periods(g, c);
}

void BlockStructure::rebuild_periods(int g, int c) {
  std::uint8_t* row = b.data() + (static_cast<std::size_t>(g) * C + c) * T_max;
  auto cuts = cutpoints(g, c);
  int r = 0;
  for (int t = 0; t < T_max; ++t) {
    // cut value v_r means period r ends at visit v_r (1-based); t is 0-based.
    while (r < R - 1 && t + 1 > cuts[r]) ++r;
    row[t] = static_cast<std::uint8_t>(r);
  }
}

ParamSet ParamSet::make(std::span<const int> d, int K, int G, int C,
                        std::int64_t catalog_size) {
  ParamSet out;
  out.K = K;
  out.d.assign(d.begin(), d.end());
  out.lambda_offset.resize(d.size() + 1);
  std::size_t off = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    out.lambda_offset[j] = off;
    off += static_cast<std::size_t>(d[j]) * K;
  }
  out.lambda_offset[d.size()] = off;
  out.lambda.assign(off, 0.0);
  out.alpha.assign(K, 1.0);
  out.xi.assign(G, 1.0 / G);
  out.C_ = C;
  out.kappa_stride_ = catalog_size;
  out.kappa.assign(static_cast<std::size_t>(G) * C * catalog_size,
                   1.0 / static_cast<double>(catalog_size));
  return out;
}

LatentState LatentState::make(int n, int G, int R, int K) {
  LatentState out;
  out.n = n;
  out.G = G;
  out.R = R;
  out.K = K;
  out.pi.assign(static_cast<std::size_t>(n) * K, 1.0 / K);
  out.z.assign(static_cast<std::size_t>(n) * G * R, 0);
  return out;
}

void validate(const Dataset& data, const BlockStructure& blocks,
              const ParamSet& params) {
  if (data.n < 1) throw_validation("dataset has no subjects (n < 1)");
  if (data.p < 1) throw_validation("dataset has no items (p < 1)");
  if (static_cast<int>(data.d.size()) != data.p) {
    throw_validation(fmt("d has length %zu, expected p = %d", data.d.size(),
                         data.p));
  }
  if (static_cast<int>(data.T.size()) != data.n) {
    throw_validation(fmt("T has length %zu, expected n = %d", data.T.size(),
                         data.n));
  }
  if (static_cast<int>(data.c.size()) != data.n) {
    throw_validation(fmt("c has length %zu, expected n = %d", data.c.size(),
                         data.n));
  }
  if (data.C < 1) throw_validation("subpopulation count C < 1");
  int seen_T_max = 0;
  for (int i = 0; i < data.n; ++i) {
    if (data.T[i] < 1 || data.T[i] > data.T_max) {
      throw_validation(
          fmt("T[%d] = %d outside [1, T_max = %d]", i, data.T[i], data.T_max));
    }
    seen_T_max = std::max(seen_T_max, data.T[i]);
    if (data.c[i] < 0 || data.c[i] >= data.C) {
      throw_validation(fmt("c[%d] = %d outside [0, C)", i, data.c[i]));
    }
  }
  if (seen_T_max != data.T_max) {
    throw_validation(fmt("T_max = %d but max_i T_i = %d", data.T_max, seen_T_max));
  }
  for (int j = 0; j < data.p; ++j) {
    if (data.d[j] < 2) {
      throw_validation(fmt("d[%d] = %d, every item needs >= 2 categories", j, data.d[j]));
    }
  }
  if (data.y.size() !=
      static_cast<std::size_t>(data.n) * data.p * data.T_max) {
    throw_validation("response array y has wrong length");
  }
  for (int i = 0; i < data.n; ++i) {
    for (int j = 0; j < data.p; ++j) {
      const std::uint8_t* row = data.y_row(i, j);
      for (int t = 0; t < data.T[i]; ++t) {
        if (row[t] >= data.d[j]) {
          throw_validation(fmt("y[%d,%d,%d] = %d outside [0, d_j = %d)", i, j,
                               t, static_cast<int>(row[t]), data.d[j]));
        }
      }
    }
  }

  if (blocks.G < 1 || blocks.G > data.p) {
    throw_validation(fmt("G = %d outside [1, p = %d]", blocks.G, data.p));
  }
  if (blocks.R < 1 || blocks.R > data.T_max) {
    throw_validation(fmt("R = %d outside [1, T_max = %d]", blocks.R, data.T_max));
  }
  if (blocks.C != data.C) {
    throw_validation(fmt("block structure C = %d disagrees with dataset C = %d",
                         blocks.C, data.C));
  }
  if (blocks.T_max != data.T_max) {
    throw_validation("block structure T_max disagrees with dataset");
  }
  if (static_cast<int>(blocks.s.size()) != data.p) {
    throw_validation(fmt("s has length %zu, expected p = %d", blocks.s.size(),
                         data.p));
  }
  for (int j = 0; j < data.p; ++j) {
    if (blocks.s[j] < 0 || blocks.s[j] >= blocks.G) {
      throw_validation(fmt("s[%d] = %d outside [0, G)", j, blocks.s[j]));
    }
  }
  if (static_cast<int>(blocks.v.size()) !=
      blocks.G * blocks.C * (blocks.R - 1)) {
    throw_validation("cut-point array v has wrong length");
  }
  for (int g = 0; g < blocks.G; ++g) {
    for (int c = 0; c < blocks.C; ++c) {
      auto cuts = blocks.cutpoints(g, c);
      int prev = 0;
      for (std::size_t r = 0; r < cuts.size(); ++r) {
        if (cuts[r] <= prev) {
          throw_validation(
              fmt("cut-points v[g=%d,c=%d] are not strictly increasing "
                  "(…, %d, %d, …)",
                  g, c, prev, cuts[r]));
        }
        prev = cuts[r];
      }
      if (!cuts.empty() && cuts.back() > data.T_max - 1) {
        throw_validation(fmt("cut-point v[g=%d,c=%d] = %d exceeds T_max - 1 = %d",
                             g, c, cuts.back(), data.T_max - 1));
      }
      // derived period map must be nondecreasing and consistent
      const std::uint8_t* row = blocks.period_row(g, c);
      for (int t = 1; t < blocks.T_max; ++t) {
        if (row[t] < row[t - 1]) {
          throw_validation("derived period map is not nondecreasing");
        }
      }
    }
  }

  if (params.K < 1) throw_validation("K < 1");
  if (params.d != data.d) {
    throw_validation("parameter tables disagree with dataset category counts");
  }
  if (params.G() != blocks.G) {
    throw_validation(fmt("xi has length %d, expected G = %d", params.G(),
                         blocks.G));
  }
  std::uint64_t H = binomial_coefficient(data.T_max - 1, blocks.R - 1);
  if (params.catalog_size() != static_cast<std::int64_t>(H)) {
    throw_validation(fmt("kappa rows have length %lld, expected |H| = %llu",
                         static_cast<long long>(params.catalog_size()),
                         static_cast<unsigned long long>(H)));
  }
  if (params.kappa.size() != static_cast<std::size_t>(blocks.G) * blocks.C * H) {
    throw_validation("kappa has wrong length");
  }
  for (int j = 0; j < data.p; ++j) {
    for (int k = 0; k < params.K; ++k) {
      double sum = 0.0;
      for (int cat = 0; cat < data.d[j]; ++cat) {
        double e = params.lambda_at(j, cat, k);
        if (!(e >= 0.0)) {
          throw_validation(fmt("lambda[j=%d] column %d has negative entry", j, k));
        }
        sum += e;
      }
      double dev = std::abs(sum - 1.0);
      if (dev > kSimplexTol) {
        throw_validation(fmt(
            "lambda[j=%d] column %d violates the simplex constraint "
            "(deviation %g)",
            j, k, dev));
      }
    }
  }
  if (static_cast<int>(params.alpha.size()) != params.K) {
    throw_validation("alpha has wrong length");
  }
  for (int k = 0; k < params.K; ++k) {
    if (!(params.alpha[k] > 0.0)) {
      throw_validation(fmt("alpha[%d] = %g is not positive", k, params.alpha[k]));
    }
  }
  check_simplex(params.xi, "xi");
  for (int g = 0; g < blocks.G; ++g) {
    for (int c = 0; c < blocks.C; ++c) {
      check_simplex(params.kappa_row(g, c), "kappa");
    }
  }
}

void validate_state(const Dataset& data, const BlockStructure& blocks, int K,
                    const LatentState& state) {
  if (state.n != data.n || state.G != blocks.G || state.R != blocks.R ||
      state.K != K) {
    throw_validation("latent state dims disagree with model dims");
  }
  if (state.pi.size() != static_cast<std::size_t>(data.n) * K ||
      state.z.size() !=
          static_cast<std::size_t>(data.n) * blocks.G * blocks.R) {
    throw_validation("latent state arrays have wrong length");
  }
  for (int i = 0; i < data.n; ++i) check_simplex(state.pi_row(i), "pi");
  for (std::uint8_t zv : state.z) {
    if (zv >= K) throw_validation("z label outside [0, K)");
  }
}

}  // namespace bm3
