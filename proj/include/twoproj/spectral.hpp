#pragma once
//
// Consequences of the CS-decomposition for a pair in generic position: the
// spectrum of p + q and the structure of the joint commutant
// C(p) n C(q) = { b + jbj : b = pbp, bc = cb }.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "twoproj/calculus.hpp"
#include "twoproj/cs.hpp"
#include "twoproj/errors.hpp"
#include "twoproj/lattice.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

// sigma(p+q) = { 1 +/- gamma : gamma in sigma(c) }. In generic position the
// eigenvalues of c come in pairs (one copy on ran p, one on ran p'), so the
// n/2 distinct-by-pairing values predict the full n-point spectrum of p + q.
struct SpectrumReport {
  std::vector<double> gammas;       // distinct eigenvalues of c, descending
  std::vector<int> multiplicities;  // cluster sizes matching gammas
  std::vector<double> predicted;    // sorted ascending, n values
  std::vector<double> observed;     // sorted ascending, eigenvalues of p + q
  double max_deviation = 0.0;       // sorted pairing residual
};

inline SpectrumReport spectrum_sum(const Projection& p, const Projection& q,
                                   const Tolerance& tol = {}) {
  require_same_dim(p, q, "spectrum_sum");
  require_generic(p, q, tol, "spectrum_sum");
  const std::size_t n = p.dim();
  if (n % 2 != 0)
    throw RankMismatch("spectrum_sum: generic pair in odd dimension " + std::to_string(n));

  const auto [c, s] = cos_sin(p, q, tol);
  const auto ec = sym_eigen(c.sym());

  SpectrumReport out;
  const double cluster_tol = 1e-8 * static_cast<double>(n);
  for (double g : ec.eigenvalues) {
    if (!out.gammas.empty() && out.gammas.back() - g <= cluster_tol) {
      ++out.multiplicities.back();
    } else {
      out.gammas.push_back(g);
      out.multiplicities.push_back(1);
    }
  }

  for (std::size_t i = 0; i + 1 < n; i += 2) {
    const double g = 0.5 * (ec.eigenvalues[i] + ec.eigenvalues[i + 1]);
    out.predicted.push_back(1.0 + g);
    out.predicted.push_back(1.0 - g);
  }
  std::sort(out.predicted.begin(), out.predicted.end());

  const auto esum = sym_eigen(SymMat(p.mat() + q.mat()));
  out.observed.assign(esum.eigenvalues.rbegin(), esum.eigenvalues.rend());

  if (out.predicted.size() != out.observed.size()) {
    out.max_deviation = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < out.predicted.size(); ++i)
      out.max_deviation = std::max(out.max_deviation,
                                   std::abs(out.predicted[i] - out.observed[i]));
  }
  return out;
}

// b generates the commutant element a = b + jbj; a p = p a = b.
struct CommutantElement {
  SymMat b;  // compressed generator, b = pbp, b C c
  SymMat a;  // the embedded element b + jbj
};

inline CommutantElement commutant_embed(const SymMat& b, const Projection& p,
                                        const Projection& q, const Tolerance& tol = {}) {
  if (b.dim() != p.dim()) throw DimensionMismatch("commutant_embed: dimensions differ");
  require_same_dim(p, q, "commutant_embed");
  require_generic(p, q, tol, "commutant_embed");
  const double gate = tol.tau_eq * static_cast<double>(p.dim()) * (1.0 + max_abs(b.mat()));
  if (spec_norm(b.mat() - p.mat() * b.mat() * p.mat()) > gate)
    throw BadGenerator("commutant_embed: b != pbp");
  const auto [c, s] = cos_sin(p, q, tol);
  if (!commutes(b, c.sym(), tol))
    throw BadGenerator("commutant_embed: b does not commute with the cosine effect");
  const Symmetry j = symmetry_j(p, q, tol);
  SymMat a(b.mat() + j.mat() * b.mat() * j.mat());
  return {b, std::move(a)};
}

// b := ap = pa for a in the joint commutant; inverse of commutant_embed.
inline SymMat commutant_decompose(const SymMat& a, const Projection& p, const Projection& q,
                                  const Tolerance& tol = {}) {
  if (a.dim() != p.dim()) throw DimensionMismatch("commutant_decompose: dimensions differ");
  require_same_dim(p, q, "commutant_decompose");
  require_generic(p, q, tol, "commutant_decompose");
  if (!commutes(a, p.sym(), tol) || !commutes(a, q.sym(), tol))
    throw NotInCommutant("commutant_decompose: a does not commute with both projections");
  return SymMat(a.mat() * p.mat());
}

// For a projection z in the joint commutant: t = gp with g = |p - z'| is a
// projection with t = tp = pt in C(c) and z = t + jtj.
inline Projection commutant_projection(const Projection& z, const Projection& p,
                                       const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(z, p, "commutant_projection");
  require_same_dim(p, q, "commutant_projection");
  require_generic(p, q, tol, "commutant_projection");
  if (!commutes(z.sym(), p.sym(), tol) || !commutes(z.sym(), q.sym(), tol))
    throw NotInCommutant("commutant_projection: z does not commute with both projections");
  const Mat i = Mat::identity(p.dim());
  const SymMat g = abs(SymMat(p.mat() - (i - z.mat())), tol);
  return Projection(SymMat(g.mat() * p.mat()), tol);
}

}  // namespace twoproj
