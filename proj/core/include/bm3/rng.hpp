#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

#include "bm3/error.hpp"

namespace bm3::rng {

// Philox4x64-10 counter-based generator (Salmon et al., matches numpy's
// Philox bit generator). Every random variate in the project is drawn from
// a Stream addressed by (seed, domain, step, iteration, entity, sub), so
// draws are independent of evaluation order and worker count.

namespace detail {
constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(prod >> 64);
  lo = static_cast<std::uint64_t>(prod);
}
}  // namespace detail

inline void philox4x64_10(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2,
                          std::uint64_t c3, std::uint64_t k0, std::uint64_t k1,
                          std::uint64_t out[4]) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    detail::mulhilo(detail::kPhiloxM0, c0, hi0, lo0);
    detail::mulhilo(detail::kPhiloxM1, c2, hi1, lo1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += detail::kWeyl0;
    k1 += detail::kWeyl1;
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

// One addressable random stream. The counter block index (c0) advances as
// the stream is consumed; (entity, iteration, step|sub) occupy c1..c3 and
// (seed, domain) form the key.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t domain, std::uint32_t step,
         std::uint64_t iteration, std::uint64_t entity, std::uint32_t sub = 0)
      : k0_(seed),
        k1_(domain),
        c1_(entity),
        c2_(iteration),
        c3_((static_cast<std::uint64_t>(step) << 16) | sub) {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      philox4x64_10(blk_++, c1_, c2_, c3_, k0_, k1_, buf_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on [0,1), 53-bit resolution.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe under log().
  double u01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = u01_open();
    double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double gumbel() { return -std::log(-std::log(u01_open())); }

  // Gamma(shape, 1) via Marsaglia-Tsang, with the usual boost for shape < 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw_numeric("gamma shape must be positive");
    if (shape < 1.0) {
      double u = u01_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = u01_open();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  // Dirichlet by normalized gammas, consumed sequentially from this stream.
  void dirichlet(std::span<const double> shape, std::span<double> out) {
    double total = 0.0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      out[i] = gamma(shape[i]);
      total += out[i];
    }
    if (total <= 0.0) throw_numeric("dirichlet draw underflowed to zero");
    for (std::size_t i = 0; i < shape.size(); ++i) out[i] /= total;
  }

  // Uniform integer in [0, m).
  std::uint64_t uniform_int(std::uint64_t m) {
    // Multiply-shift bounded draw; bias is < 2^-64 and irrelevant here,
    // but keep rejection to make small-m draws exact.
    std::uint64_t threshold = (0 - m) % m;
    for (;;) {
      std::uint64_t x = next_u64();
      unsigned __int128 prod = static_cast<unsigned __int128>(x) * m;
      if (static_cast<std::uint64_t>(prod) >= threshold) {
        return static_cast<std::uint64_t>(prod >> 64);
      }
    }
  }

  // Inverse-CDF draw from unnormalized nonnegative weights.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw_numeric("categorical weights sum to zero");
    double u = u01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  std::uint64_t k0_, k1_, c1_, c2_, c3_;
  std::uint64_t blk_ = 0;
  std::uint64_t buf_[4] = {0, 0, 0, 0};
  int pos_ = 4;
};

// Stable mix of (seed, index), used to derive per-replicate seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t out[4];
  philox4x64_10(index, 0, 0, 0, seed, 0x9E3779B97F4A7C15ULL, out);
  return out[0];
}

}  // namespace bm3::rng
