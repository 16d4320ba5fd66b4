#pragma once
//
// Seeded instance generation. All randomness flows through a 64-bit Mersenne
// twister whose raw output is standardized, with uniform and normal variates
// derived here from the bit stream directly, so a fixed seed yields the same
// pair on every platform and run.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twoproj/errors.hpp"
#include "twoproj/lattice.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/pairio.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform on [0, 1) with 53-bit resolution
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

inline Mat random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

// n x m frame with orthonormal columns; Gaussian columns are almost surely
// well separated, the redraw is a safety valve
inline Mat random_orthonormal_frame(Rng& rng, std::size_t n, std::size_t m) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto ortho = orthonormalize_columns(random_gaussian(rng, n, m));
    if (m == 0 || ortho.ratio > 1e-6) return std::move(ortho.q);
  }
  throw GenerationFailure("random_orthonormal_frame: degenerate draws");
}

inline Projection frame_projection(const Mat& frame, const Tolerance& tol = {}) {
  return Projection(SymMat(frame * transpose(frame), tol), tol);
}

enum class GenMode { random, generic, commuting, block };

inline std::string to_string(GenMode m) {
  switch (m) {
    case GenMode::random: return "random";
    case GenMode::generic: return "generic";
    case GenMode::commuting: return "commuting";
    case GenMode::block: return "block";
  }
  return "?";
}

struct GenSpec {
  std::size_t n = 0;
  std::size_t dim_p = 0;
  std::size_t dim_q = 0;
  GenMode mode = GenMode::random;
  std::uint64_t seed = 0;
  std::vector<double> angles;  // block mode only

  void validate() const {
    if (n == 0) throw std::invalid_argument("GenSpec: n must be positive");
    if (dim_p > n || dim_q > n)
      throw std::invalid_argument("GenSpec: dim_p and dim_q must not exceed n");
    if (mode == GenMode::block) {
      if (angles.empty()) throw std::invalid_argument("GenSpec: block mode needs angles");
      if (2 * angles.size() > n)
        throw std::invalid_argument("GenSpec: block mode needs n >= 2 * (number of angles)");
    }
  }
};

struct ProjectionPair {
  Projection p, q;
};

namespace detail {

inline ProjectionPair generate_random(Rng& rng, const GenSpec& g, const Tolerance& tol) {
  Projection p = frame_projection(random_orthonormal_frame(rng, g.n, g.dim_p), tol);
  Projection q = frame_projection(random_orthonormal_frame(rng, g.n, g.dim_q), tol);
  return {std::move(p), std::move(q)};
}

inline ProjectionPair generate_commuting(Rng& rng, const GenSpec& g, const Tolerance& tol) {
  const Mat frame = random_orthonormal_frame(rng, g.n, g.n);
  auto pick = [&](std::size_t count) {
    std::vector<std::size_t> idx(g.n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = g.n; i > 1; --i) std::swap(idx[i - 1], idx[rng.index(i)]);
    Mat sel(g.n, count);
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t i = 0; i < g.n; ++i) sel(i, j) = frame(i, idx[j]);
    return sel;
  };
  Projection p = frame_projection(pick(g.dim_p), tol);
  Projection q = frame_projection(pick(g.dim_q), tol);
  return {std::move(p), std::move(q)};
}

// Direct sum of 2 x 2 angle blocks in canonical form, with any leftover axes
// cycled through the four commuting memberships (both, p only, q only,
// neither). Unrotated: a single block with angle theta reproduces the
// textbook pair exactly.
inline ProjectionPair generate_block(const GenSpec& g, const Tolerance& tol) {
  const std::size_t k = g.angles.size();
  Mat p(g.n, g.n), q(g.n, g.n);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t b = 2 * i;
    const double c = std::cos(g.angles[i]);
    const double s = std::sin(g.angles[i]);
    p(b, b) = 1.0;
    q(b, b) = c * c;
    q(b, b + 1) = q(b + 1, b) = c * s;
    q(b + 1, b + 1) = s * s;
  }
  for (std::size_t t = 2 * k; t < g.n; ++t) {
    switch ((t - 2 * k) % 4) {
      case 0: p(t, t) = q(t, t) = 1.0; break;
      case 1: p(t, t) = 1.0; break;
      case 2: q(t, t) = 1.0; break;
      default: break;
    }
  }
  return {Projection(SymMat(p, tol), tol), Projection(SymMat(q, tol), tol)};
}

}  // namespace detail

inline ProjectionPair generate_projections(const GenSpec& g, const Tolerance& tol = {}) {
  g.validate();
  Rng rng(g.seed);
  switch (g.mode) {
    case GenMode::random:
      return detail::generate_random(rng, g, tol);
    case GenMode::commuting:
      return detail::generate_commuting(rng, g, tol);
    case GenMode::block:
      return detail::generate_block(g, tol);
    case GenMode::generic: {
      for (int attempt = 0; attempt < 64; ++attempt) {
        auto pair = detail::generate_random(rng, g, tol);
        if (is_generic(pair.p, pair.q, tol)) return pair;
      }
      throw GenerationFailure(
          "generate_projections: no generic pair within the retry budget; generic position "
          "requires dim_p = dim_q = n/2");
    }
  }
  throw std::invalid_argument("generate_projections: unknown mode");
}

inline PairFile generate_pair(const GenSpec& g, const Tolerance& tol = {}) {
  auto pair = generate_projections(g, tol);
  PairFile f;
  f.name = to_string(g.mode) + "-n" + std::to_string(g.n) + "-seed" + std::to_string(g.seed);
  f.n = g.n;
  f.encoding = PairEncoding::matrix;
  f.p = pair.p.mat();
  f.q = pair.q.mat();
  return f;
}

}  // namespace twoproj
