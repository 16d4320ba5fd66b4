#pragma once
//
// The orthomodular lattice of projections: meet, join, orthocomplement,
// Peirce decomposition, residual projections, the Marsden commutator and the
// sixfold decomposition of the identity carried by a pair of projections.
//
// Meets and joins are carrier-based: p v q = carrier(p + q) and
// p ^ q = 1 - carrier(p' + q'). One eigendecomposition each, with the rank
// decision localized in the carrier cutoff.
//

#include <array>
#include <cstddef>
#include <utility>

#include "twoproj/calculus.hpp"
#include "twoproj/errors.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

inline void require_same_dim(const Projection& p, const Projection& q, const char* where) {
  if (p.dim() != q.dim()) throw DimensionMismatch(std::string(where) + ": dimensions differ");
}

inline Projection orthocomplement(const Projection& p) {
  return Projection(SymMat(Mat::identity(p.dim()) - p.mat()));
}

inline Projection join(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "join");
  return carrier(SymMat(p.mat() + q.mat()), tol);
}

inline Projection meet(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "meet");
  return orthocomplement(join(orthocomplement(p), orthocomplement(q), tol));
}

// The four Peirce blocks of a with respect to p. The two off-diagonal blocks
// are not individually symmetric; their sum is.
struct PeirceParts {
  Mat pap, pap_perp, p_perp_ap, p_perp_ap_perp;
};

inline PeirceParts peirce(const SymMat& a, const Projection& p) {
  if (a.dim() != p.dim()) throw DimensionMismatch("peirce: dimensions differ");
  const Mat& pm = p.mat();
  const Mat pp = Mat::identity(p.dim()) - pm;
  return {pm * a.mat() * pm, pm * a.mat() * pp, pp * a.mat() * pm, pp * a.mat() * pp};
}

struct DiagOffdiag {
  SymMat diag;     // pap + p'ap'
  SymMat offdiag;  // pap' + p'ap
};

inline DiagOffdiag diag_offdiag(const SymMat& a, const Projection& p) {
  auto parts = peirce(a, p);
  return {SymMat(parts.pap + parts.p_perp_ap_perp), SymMat(parts.pap_perp + parts.p_perp_ap)};
}

// r_p = p ^ (p' v q) ^ (p' v q'), and its three siblings; r is the Marsden
// commutator, the fourfold meet of the joins.
struct ResidualSet {
  Projection r_p, r_p_perp, r_q, r_q_perp;
  Projection r;
};

inline Projection marsden(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "marsden");
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  const Projection j_pq = join(p, q, tol), j_pqp = join(p, qp, tol);
  const Projection j_ppq = join(pp, q, tol), j_ppqp = join(pp, qp, tol);
  return meet(meet(j_pq, j_pqp, tol), meet(j_ppq, j_ppqp, tol), tol);
}

inline ResidualSet residuals(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "residuals");
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  const Projection j_pq = join(p, q, tol), j_pqp = join(p, qp, tol);
  const Projection j_ppq = join(pp, q, tol), j_ppqp = join(pp, qp, tol);
  Projection r_p = meet(p, meet(j_ppq, j_ppqp, tol), tol);
  Projection r_pp = meet(pp, meet(j_pq, j_pqp, tol), tol);
  Projection r_q = meet(q, meet(j_pqp, j_ppqp, tol), tol);
  Projection r_qp = meet(qp, meet(j_pq, j_ppq, tol), tol);
  Projection r = meet(meet(j_pq, j_pqp, tol), meet(j_ppq, j_ppqp, tol), tol);
  return {std::move(r_p), std::move(r_pp), std::move(r_q), std::move(r_qp), std::move(r)};
}

enum class Side { p, q };

// Six pairwise-orthogonal projections summing to the identity: the four
// meets plus either the (r_p, r_p') or the (r_q, r_q') completion.
struct SixfoldDecomposition {
  Projection meet_pq, meet_pq_perp, meet_p_perp_q, meet_p_perp_q_perp;
  ResidualSet residual_set;
  Side side;

  std::array<Projection, 6> parts() const {
    const Projection& fifth = side == Side::p ? residual_set.r_p : residual_set.r_q;
    const Projection& sixth = side == Side::p ? residual_set.r_p_perp : residual_set.r_q_perp;
    return {meet_pq, meet_pq_perp, meet_p_perp_q, meet_p_perp_q_perp, fifth, sixth};
  }
};

inline SixfoldDecomposition sixfold(const Projection& p, const Projection& q,
                                    Side side = Side::p, const Tolerance& tol = {}) {
  require_same_dim(p, q, "sixfold");
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  return {meet(p, q, tol), meet(p, qp, tol), meet(pp, q, tol), meet(pp, qp, tol),
          residuals(p, q, tol), side};
}

// generic position: all four meets vanish (rank 0 under the eps_rank cutoff)
inline bool is_generic(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "is_generic");
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  return meet(p, q, tol).rank() == 0 && meet(p, qp, tol).rank() == 0 &&
         meet(pp, q, tol).rank() == 0 && meet(pp, qp, tol).rank() == 0;
}

}  // namespace twoproj
