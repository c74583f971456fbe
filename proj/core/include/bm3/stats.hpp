#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bm3 {

// log(sum(exp(x))), -inf-safe.
double logsumexp(std::span<const double> x);

// Cramér's V from a rows x cols contingency table (row-major counts).
// Degenerate margins (a single nonzero row or column after dropping all-zero
// ones) give 0; an all-zero table is an error.
double cramers_v(std::span<const std::int64_t> counts, int rows, int cols);
double cramers_v(const std::vector<std::vector<std::int64_t>>& table);

// Adjusted Rand Index (Hubert-Arabie) between two equal-length label
// sequences. Labels are arbitrary nonnegative ints.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

double median(std::vector<double> values);
// Interquartile range with linearly interpolated quartiles.
double iqr(std::vector<double> values);

}  // namespace bm3
