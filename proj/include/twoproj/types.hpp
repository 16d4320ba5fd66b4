#pragma once
//
// Domain value types: the tolerance policy, symmetric matrices, projections,
// effects and symmetries. All types are immutable after construction and
// validate their defining invariant on entry; none of them silently repairs
// an input beyond the canonical symmetrization (a + a^T)/2.
//

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twoproj/errors.hpp"
#include "twoproj/matrix.hpp"

namespace twoproj {

// Every threshold is a dimensionless multiplier; operations scale it by the
// spectral size of their operands where that matters.
struct Tolerance {
  double eps_rank = 1e-9;    // relative spectral cutoff deciding numerical rank
  double tau_sym = 1e-8;     // constructor gate on symmetry defect
  double tau_orth = 1e-10;   // eigenvector orthogonality gate
  double tau_recon = 1e-10;  // eigendecomposition reconstruction gate
  double tau_eq = 1e-8;      // approximate-equality gate (idempotency, commutation, PSD slack)
  double eps_sqrt = 1e-13;   // relative cutoff zeroing near-null spectrum inside psd_sqrt

  void validate() const {
    auto positive = [](double x, const char* name) {
      if (!(x > 0.0))
        throw std::invalid_argument(std::string("Tolerance: ") + name + " must be positive");
    };
    positive(eps_rank, "eps_rank");
    positive(tau_sym, "tau_sym");
    positive(tau_orth, "tau_orth");
    positive(tau_recon, "tau_recon");
    positive(tau_eq, "tau_eq");
    positive(eps_sqrt, "eps_sqrt");
    if (!(eps_rank < 1.0)) throw std::invalid_argument("Tolerance: eps_rank must be < 1");
  }

  // cutoffs carry an absolute floor of 1 so that a near-zero matrix keeps a
  // near-zero carrier instead of amplifying roundoff into spurious rank
  double rank_cutoff(double lambda_max_abs) const {
    return eps_rank * std::max(lambda_max_abs, 1.0);
  }
  double sqrt_cutoff(double lambda_max_abs) const {
    return eps_sqrt * std::max(lambda_max_abs, 1.0);
  }
};

// Symmetric element of the ambient algebra. Stored canonically symmetrized;
// construction rejects inputs whose symmetry defect exceeds tau_sym relative
// to the magnitude of the entries.
class SymMat {
 public:
  explicit SymMat(Mat m, const Tolerance& tol = {}) {
    if (m.rows() != m.cols()) throw DimensionMismatch("SymMat: matrix not square");
    if (m.rows() == 0) throw DimensionMismatch("SymMat: dimension must be positive");
    const double defect = max_asym(m);
    if (defect > tol.tau_sym * (1.0 + max_abs(m)))
      throw NotSymmetric("SymMat: symmetry defect " + std::to_string(defect));
    mat_ = sym_part(m);
  }

  static SymMat identity(std::size_t n) { return SymMat(Mat::identity(n)); }
  static SymMat zero(std::size_t n) { return SymMat(Mat(n, n)); }

  std::size_t dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  friend bool operator==(const SymMat& a, const SymMat& b) { return a.mat_ == b.mat_; }

 private:
  Mat mat_;
};

inline SymMat operator+(const SymMat& a, const SymMat& b) { return SymMat(a.mat() + b.mat()); }
inline SymMat operator-(const SymMat& a, const SymMat& b) { return SymMat(a.mat() - b.mat()); }
inline SymMat operator-(const SymMat& a) { return SymMat(-a.mat()); }
inline SymMat operator*(double x, const SymMat& a) { return SymMat(x * a.mat()); }

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Mat vectors;                      // orthogonal; column i pairs with eigenvalues[i]
};

// Projection: symmetric idempotent. The constructor checks the idempotency
// defect; since |lambda^2 - lambda| <= ||p^2 - p||, the spectrum then lies
// within the same distance of {0, 1}.
class Projection {
 public:
  explicit Projection(SymMat m, const Tolerance& tol = {}) : mat_(std::move(m)) {
    const double defect = frob_norm(mat_.mat() * mat_.mat() - mat_.mat());
    if (defect > tol.tau_eq * (1.0 + max_abs(mat_.mat())))
      throw NotProjection("Projection: idempotency defect " + std::to_string(defect));
  }

  static Projection identity(std::size_t n) { return Projection(SymMat::identity(n)); }
  static Projection zero(std::size_t n) { return Projection(SymMat::zero(n)); }

  std::size_t dim() const { return mat_.dim(); }
  const SymMat& sym() const { return mat_; }
  const Mat& mat() const { return mat_.mat(); }

  // numerical rank; the trace of a projection is within roundoff of an integer
  std::size_t rank() const {
    const double t = trace(mat_.mat());
    return t <= 0.0 ? 0 : static_cast<std::size_t>(std::llround(t));
  }

 private:
  SymMat mat_;
};

// Effect: 0 <= e <= 1 in the spectral order, up to tau_eq slack. Stored
// unclamped; clamped() gives the nearest element of the exact unit interval.
class Effect {
 public:
  explicit Effect(SymMat m, const Tolerance& tol = {}) : mat_(std::move(m)) {
    const auto eig = detail::jacobi_eigen(mat_.mat());
    const double lo = eig.values.empty() ? 0.0 : eig.values.back();
    const double hi = eig.values.empty() ? 0.0 : eig.values.front();
    if (lo < -tol.tau_eq || hi > 1.0 + tol.tau_eq)
      throw NotEffect("Effect: spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] outside the unit interval");
  }

  std::size_t dim() const { return mat_.dim(); }
  const SymMat& sym() const { return mat_; }
  const Mat& mat() const { return mat_.mat(); }

  SymMat clamped() const {
    auto eig = detail::jacobi_eigen(mat_.mat());
    const std::size_t n = mat_.dim();
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = std::min(1.0, std::max(0.0, eig.values[k]));
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) out(i, j) += w * eig.vectors(i, k) * eig.vectors(j, k);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) out(j, i) = out(i, j);
    return SymMat(std::move(out));
  }

 private:
  SymMat mat_;
};

// Symmetry: u^2 = 1 (self-adjoint unitary), up to tau_eq slack.
class Symmetry {
 public:
  explicit Symmetry(SymMat m, const Tolerance& tol = {}) : mat_(std::move(m)) {
    const std::size_t n = mat_.dim();
    const double defect = frob_norm(mat_.mat() * mat_.mat() - Mat::identity(n));
    if (defect > tol.tau_eq * static_cast<double>(n))
      throw NotSymmetryElement("Symmetry: involution defect " + std::to_string(defect));
  }

  std::size_t dim() const { return mat_.dim(); }
  const SymMat& sym() const { return mat_; }
  const Mat& mat() const { return mat_.mat(); }

 private:
  SymMat mat_;
};

}  // namespace twoproj
