#pragma once
//
// Functional calculus on symmetric matrices: eigendecomposition, square root,
// absolute value, carrier, signum / polar decomposition, and the commutation
// predicate. Everything is a pure function of its arguments and deterministic
// for bitwise-identical input.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "twoproj/errors.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

namespace detail {

// sum_k f(lambda_k) v_k v_k^T over the decomposition, assembled on the lower
// triangle and mirrored, so the result is bitwise symmetric
template <class F>
Mat assemble(const EigenPairs& e, F&& f) {
  const std::size_t n = e.values.size();
  Mat out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = f(e.values[k]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) out(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(j, i) = out(i, j);
  return out;
}

inline double max_abs_value(const EigenPairs& e) {
  if (e.values.empty()) return 0.0;
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

}  // namespace detail

inline EigenDecomposition sym_eigen(const SymMat& a) {
  auto e = detail::jacobi_eigen(a.mat());
  return {std::move(e.values), std::move(e.vectors)};
}

// V f(diag) V^T for a decomposition already at hand
template <class F>
SymMat spectral_transform(const EigenDecomposition& e, F&& f) {
  const std::size_t n = e.eigenvalues.size();
  Mat out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = f(e.eigenvalues[k]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) out(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(j, i) = out(i, j);
  return SymMat(std::move(out));
}

// largest |eigenvalue| of a symmetric matrix
inline double spec_norm(const SymMat& a) {
  return detail::max_abs_value(detail::jacobi_eigen(a.mat()));
}

// largest singular value of a general matrix, via the Gram matrix
inline double spec_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const auto e = detail::jacobi_eigen(transpose(a) * a);
  return std::sqrt(std::max(0.0, e.values.front()));
}

// outer * inner * outer, symmetrized
inline SymMat sandwich(const SymMat& outer, const SymMat& inner) {
  return SymMat(outer.mat() * inner.mat() * outer.mat());
}

// Square root of a positive semidefinite element. Eigenvalues below
// -tau_eq*(1+|a|) raise NotPSD; the band around zero (roundoff from sums and
// products of projections) is clamped to exactly zero, so that the root of a
// numerically-PSD matrix has the same numerical kernel as the input.
inline SymMat psd_sqrt(const SymMat& a, const Tolerance& tol = {}) {
  const auto e = detail::jacobi_eigen(a.mat());
  const double lmax = detail::max_abs_value(e);
  const double lmin = e.values.empty() ? 0.0 : e.values.back();
  if (lmin < -tol.tau_eq * (1.0 + lmax))
    throw NotPSD("psd_sqrt: minimum eigenvalue " + std::to_string(lmin));
  const double cut = tol.sqrt_cutoff(lmax);
  return SymMat(detail::assemble(e, [cut](double x) { return x > cut ? std::sqrt(x) : 0.0; }));
}

// |a| = (a^2)^{1/2}. Computed literally from the square, which makes
// abs(-a) and abs(a) bitwise identical.
inline SymMat abs(const SymMat& a, const Tolerance& tol = {}) {
  return psd_sqrt(SymMat(a.mat() * a.mat()), tol);
}

// Carrier a°: the projection onto the numerical range of a, i.e. onto the
// eigenspaces with |lambda| above the eps_rank cutoff. The smallest
// projection with a·a° = a at working precision.
inline Projection carrier(const SymMat& a, const Tolerance& tol = {}) {
  const auto e = detail::jacobi_eigen(a.mat());
  const double cut = tol.rank_cutoff(detail::max_abs_value(e));
  return Projection(
      SymMat(detail::assemble(e, [cut](double x) { return std::abs(x) > cut ? 1.0 : 0.0; })), tol);
}

struct PolarDecomposition {
  SymMat absval;  // |a|
  SymMat t;       // signum: partial symmetry with t^2 = a°
  Symmetry u;     // canonical extension t + (1 - a°); a = |a| u = u |a|
};

inline PolarDecomposition polar(const SymMat& a, const Tolerance& tol = {}) {
  const auto e = detail::jacobi_eigen(a.mat());
  const double cut = tol.rank_cutoff(detail::max_abs_value(e));
  Mat absval = detail::assemble(e, [](double x) { return std::abs(x); });
  Mat t = detail::assemble(e, [cut](double x) {
    if (x > cut) return 1.0;
    if (x < -cut) return -1.0;
    return 0.0;
  });
  Mat u = detail::assemble(e, [cut](double x) { return x < -cut ? -1.0 : 1.0; });
  return {SymMat(std::move(absval)), SymMat(std::move(t)), Symmetry(SymMat(std::move(u)), tol)};
}

// ||ab - ba||_2
inline double commutator_norm(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("commutator_norm: dimensions differ");
  return spec_norm(a.mat() * b.mat() - b.mat() * a.mat());
}

// a C b, decided against tau_eq scaled by the spectral size of both operands
inline bool commutes(const SymMat& a, const SymMat& b, const Tolerance& tol = {}) {
  const double bound = tol.tau_eq * (1.0 + spec_norm(a)) * (1.0 + spec_norm(b));
  return commutator_norm(a, b) <= bound;
}

}  // namespace twoproj
