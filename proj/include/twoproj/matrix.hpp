#pragma once
//
// Dense row-major double matrices sized for desk-scale problems, plus the
// numerical plumbing everything else builds on: norms, modified Gram-Schmidt
// and a deterministic cyclic Jacobi eigensolver.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twoproj/errors.hpp"

namespace twoproj {

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  // bitwise comparison; used by determinism tests
  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline void require_same_shape(const Mat& a, const Mat& b, const char* where) {
  if (!a.same_shape(b))
    throw DimensionMismatch(std::string(where) + ": shape mismatch");
}

inline Mat operator+(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "operator+");
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline Mat operator-(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "operator-");
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline Mat operator-(const Mat& a) {
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
  return out;
}

inline Mat operator*(double x, const Mat& a) {
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = x * a(i, j);
  return out;
}

inline Mat operator*(const Mat& a, double x) { return x * a; }

inline Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("operator*: inner dimensions differ");
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Mat transpose(const Mat& a) {
  Mat out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

// (a + a^T)/2; requires square
inline Mat sym_part(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("sym_part: matrix not square");
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
  return out;
}

inline double trace(const Mat& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

inline double frob_norm(const Mat& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

inline double max_abs(const Mat& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

inline double max_asym(const Mat& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

// columns [first, first+count) as a new matrix
inline Mat columns(const Mat& a, std::size_t first, std::size_t count) {
  if (first + count > a.cols()) throw DimensionMismatch("columns: range out of bounds");
  Mat out(a.rows(), count);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = a(i, first + j);
  return out;
}

namespace detail {

struct EigenPairs {
  std::vector<double> values;  // descending
  Mat vectors;                 // orthogonal; column i pairs with values[i]
};

// Cyclic Jacobi with a fixed row-major sweep order, so the result is bitwise
// deterministic for identical input. Quadratic convergence makes the sweep
// budget generous for the matrix sizes this library targets.
inline EigenPairs jacobi_eigen(Mat a, int max_sweeps = 64) {
  if (a.rows() != a.cols()) throw DimensionMismatch("jacobi_eigen: matrix not square");
  const std::size_t n = a.rows();
  Mat v = Mat::identity(n);

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double scale = frob_norm(a);
  const double stop =
      std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(n, 1)) * scale;

  bool converged = (n < 2) || (scale == 0.0);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (off_norm() <= stop) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  if (!converged && off_norm() > stop)
    throw NonConvergence("jacobi_eigen: sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenPairs out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace detail

struct OrthonormalizeResult {
  Mat q;             // same shape as the input; dependent columns left as zero
  double ratio;      // smallest / largest post-projection column norm (0 if degenerate)
};

// Modified Gram-Schmidt with one re-orthogonalization pass. The ratio field
// lets callers reject near-dependent spanning sets.
inline OrthonormalizeResult orthonormalize_columns(const Mat& b) {
  const std::size_t n = b.rows(), m = b.cols();
  Mat q = b;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_norm = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    for (int round = 0; round < 2; ++round) {
      for (std::size_t j = 0; j < k; ++j) {
        double coef = 0.0;
        for (std::size_t i = 0; i < n; ++i) coef += q(i, j) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= coef * q(i, j);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, k) * q(i, k);
    norm = std::sqrt(norm);
    min_norm = std::min(min_norm, norm);
    max_norm = std::max(max_norm, norm);
    if (norm > 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  const double ratio = (m == 0 || max_norm == 0.0) ? 0.0 : min_norm / max_norm;
  return {std::move(q), ratio};
}

}  // namespace twoproj
