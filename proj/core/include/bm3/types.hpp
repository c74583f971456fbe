#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bm3/error.hpp"

namespace bm3 {

// Categorical longitudinal responses. Everything is 0-based in memory;
// 1-based labels exist only at the ingestion/serialization boundary.
struct Dataset {
  int n = 0;      // subjects
  int p = 0;      // items
  int T_max = 0;  // max visits
  int C = 1;      // observed subpopulations
  std::vector<int> d;        // p, categories per item (>= 2)
  std::vector<int> T;        // n, visits per subject (1..T_max)
  std::vector<int> c;        // n, subpopulation labels in [0, C)
  std::vector<std::uint8_t> y;  // n*p*T_max, valid for t < T[i]

  std::uint8_t y_at(int i, int j, int t) const {
    return y[(static_cast<std::size_t>(i) * p + j) * T_max + t];
  }
  std::uint8_t& y_at(int i, int j, int t) {
    return y[(static_cast<std::size_t>(i) * p + j) * T_max + t];
  }
  const std::uint8_t* y_row(int i, int j) const {
    return y.data() + (static_cast<std::size_t>(i) * p + j) * T_max;
  }
  std::int64_t total_observations() const {
    std::int64_t tot = 0;
    for (int i = 0; i < n; ++i) tot += static_cast<std::int64_t>(T[i]) * p;
    return tot;
  }
};

std::uint64_t binomial_coefficient(int n, int k);

// All strictly increasing cut-point vectors (v_1,...,v_{R-1}) with
// 1 <= v_1 < ... < v_{R-1} <= T_max-1, enumerated in lexicographic order.
class CutpointCatalog {
 public:
  CutpointCatalog() = default;
  CutpointCatalog(int T_max, int R);

  int T_max() const { return T_max_; }
  int R() const { return R_; }
  std::int64_t size() const { return size_; }
  std::span<const int> at(std::int64_t m) const {
    return {flat_.data() + m * (R_ - 1), static_cast<std::size_t>(R_ - 1)};
  }
  // Lexicographic rank of a member vector.
  std::int64_t index_of(std::span<const int> cuts) const;

 private:
  int T_max_ = 0, R_ = 0;
  std::int64_t size_ = 0;
  std::vector<int> flat_;  // size * (R-1)
};

// Item grouping and per-(group, subpopulation) period cut-points, plus the
// induced period map b.
struct BlockStructure {
  int G = 1;
  int R = 1;
  int C = 1;
  int T_max = 1;
  std::vector<int> s;           // p, group label in [0, G)
  std::vector<int> v;           // G*C*(R-1), 1-based cut times, increasing per (g,c)
  std::vector<std::uint8_t> b;  // G*C*T_max, period of visit t (0-based t)

  static BlockStructure make(int G, int R, int C, int T_max,
                             std::vector<int> s, std::vector<int> v);

  std::span<const int> cutpoints(int g, int c) const {
    return {v.data() + (static_cast<std::size_t>(g) * C + c) * (R - 1),
            static_cast<std::size_t>(R - 1)};
  }
  void set_cutpoints(int g, int c, std::span<const int> cuts);
  const std::uint8_t* period_row(int g, int c) const {
    return b.data() + (static_cast<std::size_t>(g) * C + c) * T_max;
  }
  int period_of(int g, int c, int t) const { return period_row(g, c)[t]; }

  void rebuild_periods();
  void rebuild_periods(int g, int c);
};

// Conditional probability tables, Dirichlet concentration, and the block
// proportion parameters.
struct ParamSet {
  int K = 1;
  std::vector<int> d;            // copy of item category counts
  std::vector<std::size_t> lambda_offset;  // p+1, offsets into lambda
  std::vector<double> lambda;    // [j][category][k], k fastest
  std::vector<double> alpha;     // K, positive
  std::vector<double> xi;        // G simplex
  std::vector<double> kappa;     // G*C*|H| , simplex per (g,c)

  static ParamSet make(std::span<const int> d, int K, int G, int C,
                       std::int64_t catalog_size);

  double& lambda_at(int j, int cat, int k) {
    return lambda[lambda_offset[j] + static_cast<std::size_t>(cat) * K + k];
  }
  double lambda_at(int j, int cat, int k) const {
    return lambda[lambda_offset[j] + static_cast<std::size_t>(cat) * K + k];
  }
  std::int64_t catalog_size() const {
    return kappa_stride_;
  }
  std::span<double> kappa_row(int g, int c) {
    return {kappa.data() + (static_cast<std::size_t>(g) * C_ + c) * kappa_stride_,
            static_cast<std::size_t>(kappa_stride_)};
  }
  std::span<const double> kappa_row(int g, int c) const {
    return {kappa.data() + (static_cast<std::size_t>(g) * C_ + c) * kappa_stride_,
            static_cast<std::size_t>(kappa_stride_)};
  }
  int G() const { return static_cast<int>(xi.size()); }
  int C_ = 1;
  std::int64_t kappa_stride_ = 1;
};

// Per-subject membership proportions and blockwise memberships.
struct LatentState {
  int n = 0, G = 1, R = 1, K = 1;
  std::vector<double> pi;          // n*K
  std::vector<std::uint8_t> z;     // n*G*R, label in [0, K)

  static LatentState make(int n, int G, int R, int K);

  std::span<double> pi_row(int i) {
    return {pi.data() + static_cast<std::size_t>(i) * K,
            static_cast<std::size_t>(K)};
  }
  std::span<const double> pi_row(int i) const {
    return {pi.data() + static_cast<std::size_t>(i) * K,
            static_cast<std::size_t>(K)};
  }
  std::uint8_t z_at(int i, int g, int r) const {
    return z[(static_cast<std::size_t>(i) * G + g) * R + r];
  }
  std::uint8_t& z_at(int i, int g, int r) {
    return z[(static_cast<std::size_t>(i) * G + g) * R + r];
  }
  const std::uint8_t* z_row(int i, int g) const {
    return z.data() + (static_cast<std::size_t>(i) * G + g) * R;
  }
};

inline constexpr double kSimplexTol = 1e-12;

// Checks every type invariant and cross-object dimension agreement.
// Throws bm3::error(errc::validation) naming the offending field.
void validate(const Dataset& data, const BlockStructure& blocks,
              const ParamSet& params);

// Latent-state counterpart (pi simplexes, z label ranges, shapes).
void validate_state(const Dataset& data, const BlockStructure& blocks, int K,
                    const LatentState& state);

}  // namespace bm3
