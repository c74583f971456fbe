#include "bm3/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "bm3/error.hpp"

namespace bm3 {

double logsumexp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;  // all -inf (or empty) stays -inf
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - m);
  return m + std::log(sum);
}

double cramers_v(std::span<const std::int64_t> counts, int rows, int cols) {
  std::vector<std::int64_t> row_sum(rows, 0), col_sum(cols, 0);
  std::int64_t total = 0;
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      std::int64_t v = counts[static_cast<std::size_t>(a) * cols + b];
      if (v < 0) throw_validation("contingency table has a negative count");
      row_sum[a] += v;
      col_sum[b] += v;
      total += v;
    }
  }
  if (total == 0) throw_validation("contingency table is empty (N = 0)");
  int nz_rows = 0, nz_cols = 0;
  for (auto v : row_sum) nz_rows += (v > 0);
  for (auto v : col_sum) nz_cols += (v > 0);
  int mindim = std::min(nz_rows, nz_cols);
  if (mindim <= 1) return 0.0;
  double chi2 = 0.0;
  const double N = static_cast<double>(total);
  for (int a = 0; a < rows; ++a) {
    if (row_sum[a] == 0) continue;
    for (int b = 0; b < cols; ++b) {
      if (col_sum[b] == 0) continue;
      double expected = static_cast<double>(row_sum[a]) * col_sum[b] / N;
      double diff = counts[static_cast<std::size_t>(a) * cols + b] - expected;
      chi2 += diff * diff / expected;
    }
  }
  double v = std::sqrt(chi2 / (N * (mindim - 1)));
  return std::min(v, 1.0);
}

double cramers_v(const std::vector<std::vector<std::int64_t>>& table) {
  int rows = static_cast<int>(table.size());
  int cols = rows > 0 ? static_cast<int>(table[0].size()) : 0;
  std::vector<std::int64_t> flat;
  flat.reserve(static_cast<std::size_t>(rows) * cols);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != cols) {
      throw_validation("contingency table is ragged");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return cramers_v(flat, rows, cols);
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw_validation("partitions have different lengths");
  }
  const std::int64_t m = static_cast<std::int64_t>(a.size());
  if (m == 0) throw_validation("partitions are empty");
  if (m == 1) return 1.0;

  auto compress = [](std::span<const int> labels, std::vector<int>& out) {
    std::unordered_map<int, int> remap;
    out.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] =
          remap.emplace(labels[i], static_cast<int>(remap.size()));
      out[i] = it->second;
    }
    return static_cast<int>(remap.size());
  };
  std::vector<int> ca, cb;
  int ka = compress(a, ca);
  int kb = compress(b, cb);

  std::vector<std::int64_t> contingency(static_cast<std::size_t>(ka) * kb, 0);
  std::vector<std::int64_t> asum(ka, 0), bsum(kb, 0);
  for (std::int64_t i = 0; i < m; ++i) {
    ++contingency[static_cast<std::size_t>(ca[i]) * kb + cb[i]];
    ++asum[ca[i]];
    ++bsum[cb[i]];
  }
  auto choose2 = [](std::int64_t x) { return 0.5 * x * (x - 1); };
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (auto v : contingency) sum_ij += choose2(v);
  for (auto v : asum) sum_a += choose2(v);
  for (auto v : bsum) sum_b += choose2(v);
  double expected = sum_a * sum_b / choose2(m);
  double max_index = 0.5 * (sum_a + sum_b);
  double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both partitions trivial and identical
  return (sum_ij - expected) / denom;
}

double median(std::vector<double> values) {
  if (values.empty()) throw_validation("median of empty sequence");
  std::sort(values.begin(), values.end());
  std::size_t m = values.size();
  if (m % 2 == 1) return values[m / 2];
  return 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

double iqr(std::vector<double> values) {
  if (values.empty()) throw_validation("iqr of empty sequence");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    double pos = q * (values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  return quantile(0.75) - quantile(0.25);
}

}  // namespace bm3
