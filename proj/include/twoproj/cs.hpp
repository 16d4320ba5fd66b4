#pragma once
//
// The two-projections core: cosine and sine effects, the exchanging
// symmetries u, v, k, j, the CS-decomposition q = c^2 p + cs k + s^2 p' (valid
// for every pair) and its generic-position form with k = j = uvp + pvu,
// compression to the commutator algebra rAr, and the operator-matrix
// canonical form with blocks R, C, S.
//

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "twoproj/calculus.hpp"
#include "twoproj/errors.hpp"
#include "twoproj/lattice.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

struct CosSin {
  Effect c;  // (pqp + p'q'p')^{1/2} = |p - q'|
  Effect s;  // (pq'p + p'qp')^{1/2} = |p - q|
};

inline CosSin cos_sin(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "cos_sin");
  const Mat i = Mat::identity(p.dim());
  const Mat& pm = p.mat();
  const Mat& qm = q.mat();
  const Mat ppm = i - pm, qpm = i - qm;
  SymMat c2(pm * qm * pm + ppm * qpm * ppm);
  SymMat s2(pm * qpm * pm + ppm * qm * ppm);
  return {Effect(psd_sqrt(c2, tol), tol), Effect(psd_sqrt(s2, tol), tol)};
}

// u and v from the polar decompositions p - q' = cu and p - q = sv. On the
// kernel of c (resp. s) the canonical extension fixes the sign to +1, so
// p = q gives v = 1 and q = p' gives u = 1.
struct ExchangeSymmetries {
  Symmetry u, v;
};

inline ExchangeSymmetries symmetries_uv(const Projection& p, const Projection& q,
                                        const Tolerance& tol = {}) {
  require_same_dim(p, q, "symmetries_uv");
  const Mat i = Mat::identity(p.dim());
  Symmetry u = polar(SymMat(p.mat() - (i - q.mat())), tol).u;
  Symmetry v = polar(SymMat(p.mat() - q.mat()), tol).u;
  return {std::move(u), std::move(v)};
}

// k from the polar decomposition of the off-diagonal part pqp' + p'qp = csk.
// k is only pinned on the carrier of cs; the canonical extension fixes it.
inline Symmetry symmetry_k(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "symmetry_k");
  const SymMat offdiag = diag_offdiag(q.sym(), p).offdiag;
  return polar(offdiag, tol).u;
}

// the symmetry 2p - 1: +1 on ran p, -1 on ran p'
inline Symmetry reflection(const Projection& p) {
  return Symmetry(SymMat(2.0 * p.mat() - Mat::identity(p.dim())));
}

struct CSDecomposition {
  Effect c, s;
  Symmetry k;
  bool generic;  // true when k was built as j = uvp + pvu under generic position
};

inline CSDecomposition general_cs(const Projection& p, const Projection& q,
                                  const Tolerance& tol = {}) {
  auto cs = cos_sin(p, q, tol);
  return {std::move(cs.c), std::move(cs.s), symmetry_k(p, q, tol), false};
}

// The seven mutually equivalent commutation conditions. evaluate() computes
// each one independently; disagreement signals a tolerance problem, not
// mathematics, and raises EquivalenceViolation.
struct CommutingEquivalences {
  bool commute;                    // pCq
  bool offdiag_zero;               // pqp' + p'qp = 0
  bool diagonal_cs_form;           // q = c^2 p + s^2 p'
  bool cs_zero;                    // cs = 0
  bool complementary_projections;  // c, s projections with c' = s
  bool abs_form;                   // q = cp + c'p' = s'p + sp' = |p - s|
  bool witness_projection;         // t := s satisfies tCp and q = |p - t|

  bool all() const {
    return commute && offdiag_zero && diagonal_cs_form && cs_zero &&
           complementary_projections && abs_form && witness_projection;
  }
  bool consistent() const {
    const bool any = commute || offdiag_zero || diagonal_cs_form || cs_zero ||
                     complementary_projections || abs_form || witness_projection;
    return all() == any;
  }
};

inline CommutingEquivalences commuting_equivalences(const Projection& p, const Projection& q,
                                                    const Tolerance& tol = {}) {
  require_same_dim(p, q, "commuting_equivalences");
  const std::size_t n = p.dim();
  const double gate = tol.tau_eq * static_cast<double>(n);
  const Mat i = Mat::identity(n);

  const auto [c, s] = cos_sin(p, q, tol);
  const SymMat offdiag = diag_offdiag(q.sym(), p).offdiag;
  const Mat cm = c.mat(), sm = s.mat();
  const Mat diag_form = cm * cm * p.mat() + sm * sm * (i - p.mat());
  const SymMat abs_ps = abs(SymMat(p.mat() - sm), tol);

  CommutingEquivalences out{};
  out.commute = commutes(p.sym(), q.sym(), tol);
  out.offdiag_zero = spec_norm(offdiag) <= gate;
  out.diagonal_cs_form = spec_norm(q.mat() - diag_form) <= gate;
  out.cs_zero = spec_norm(cm * sm) <= gate;
  out.complementary_projections = frob_norm(cm * cm - cm) <= gate &&
                                  frob_norm(sm * sm - sm) <= gate &&
                                  frob_norm((i - cm) - sm) <= gate;
  out.abs_form = spec_norm(q.mat() - abs_ps.mat()) <= gate &&
                 spec_norm(q.mat() - (cm * p.mat() + (i - cm) * (i - p.mat()))) <= gate;
  out.witness_projection = frob_norm(sm * sm - sm) <= gate &&
                           commutes(s.sym(), p.sym(), tol) &&
                           spec_norm(q.mat() - abs_ps.mat()) <= gate;
  if (!out.consistent())
    throw EquivalenceViolation(
        "commuting_equivalences: the seven conditions disagree; tolerances are inconsistent "
        "for this input");
  return out;
}

// Compression of the pair to the commutator algebra rAr, r = [p,q]. The
// compressed pair (r_p, r_q) is in generic position there; m = 0 for a
// commuting pair.
struct GenericPair {
  Projection r;                  // the Marsden commutator
  Mat basis;                     // n x m, orthonormal columns spanning ran r
  std::optional<Projection> p_c; // basis^T p basis, empty when m = 0
  std::optional<Projection> q_c;
  Projection meet_pq, meet_pq_perp, meet_p_perp_q, meet_p_perp_q_perp;

  std::size_t compressed_dim() const { return basis.cols(); }
};

inline GenericPair compress_to_commutator(const Projection& p, const Projection& q,
                                          const Tolerance& tol = {}) {
  require_same_dim(p, q, "compress_to_commutator");
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  Projection r = marsden(p, q, tol);
  const std::size_t m = r.rank();
  const auto eig = sym_eigen(r.sym());
  Mat basis = columns(eig.vectors, 0, m);
  std::optional<Projection> p_c, q_c;
  if (m > 0) {
    const Mat bt = transpose(basis);
    p_c.emplace(SymMat(bt * p.mat() * basis), tol);
    q_c.emplace(SymMat(bt * q.mat() * basis), tol);
  }
  return {std::move(r),     std::move(basis),  std::move(p_c),     std::move(q_c),
          meet(p, q, tol),  meet(p, qp, tol),  meet(pp, q, tol),   meet(pp, qp, tol)};
}

// c and s restricted to the commutator algebra: c_r = cr, s_r = sr, together
// with the residuals of the identities c = c_r + |p^q - p'^q'| and
// s = s_r + |p^q' - p'^q|.
struct RestrictedCosSin {
  Effect c_r, s_r;
  double cos_residual;
  double sin_residual;
};

inline RestrictedCosSin restricted_cos_sin(const Projection& p, const Projection& q,
                                           const Tolerance& tol = {}) {
  require_same_dim(p, q, "restricted_cos_sin");
  const auto [c, s] = cos_sin(p, q, tol);
  const Projection r = marsden(p, q, tol);
  const Projection pp = orthocomplement(p), qp = orthocomplement(q);
  Effect c_r(SymMat(c.mat() * r.mat()), tol);
  Effect s_r(SymMat(s.mat() * r.mat()), tol);
  const SymMat corr_c = abs(SymMat(meet(p, q, tol).mat() - meet(pp, qp, tol).mat()), tol);
  const SymMat corr_s = abs(SymMat(meet(p, qp, tol).mat() - meet(pp, q, tol).mat()), tol);
  const double cres = spec_norm(c.mat() - (c_r.mat() + corr_c.mat()));
  const double sres = spec_norm(s.mat() - (s_r.mat() + corr_s.mat()));
  return {std::move(c_r), std::move(s_r), cres, sres};
}

inline void require_generic(const Projection& p, const Projection& q, const Tolerance& tol,
                            const char* where) {
  if (!is_generic(p, q, tol))
    throw NotGeneric(std::string(where) + ": pair is not in generic position");
}

// j = uvp + pvu, defined only in generic position; a symmetry exchanging
// p and p', equal to k there.
inline Symmetry symmetry_j(const Projection& p, const Projection& q, const Tolerance& tol = {}) {
  require_same_dim(p, q, "symmetry_j");
  require_generic(p, q, tol, "symmetry_j");
  const auto [u, v] = symmetries_uv(p, q, tol);
  const Mat x = u.mat() * v.mat() * p.mat();
  return Symmetry(SymMat(x + transpose(x)), tol);
}

inline CSDecomposition generic_cs(const Projection& p, const Projection& q,
                                  const Tolerance& tol = {}) {
  require_generic(p, q, tol, "generic_cs");
  auto cs = cos_sin(p, q, tol);
  return {std::move(cs.c), std::move(cs.s), symmetry_j(p, q, tol), true};
}

// Operator-matrix form in the eigenbasis of p: with M0 = ran p and
// M1 = ran p', the pair reads p = [[I,0],[0,0]], j = [[0,R],[R^T,0]] and
// q = diag(I,R^T) [[C^2, CS],[CS, S^2]] diag(I,R), where R is orthogonal and
// C, S are commuting symmetric PSD contractions with C^2 + S^2 = I and
// trivial kernels.
struct CanonicalForm {
  Mat basis_m0;  // n x d, eigenbasis of ran p
  Mat basis_m1;  // n x (n-d), eigenbasis of ran p'
  Mat R;         // d x d orthogonal coupling read off from j
  SymMat C, S;   // d x d compressions of c and s to M0
};

inline CanonicalForm canonical_form(const Projection& p, const Projection& q,
                                    const Tolerance& tol = {}) {
  require_same_dim(p, q, "canonical_form");
  require_generic(p, q, tol, "canonical_form");
  const std::size_t n = p.dim();
  const std::size_t d = p.rank();
  if (2 * d != n)
    throw RankMismatch("canonical_form: rank(p) = " + std::to_string(d) + " but dimension is " +
                       std::to_string(n));
  const auto eig = sym_eigen(p.sym());
  Mat m0 = columns(eig.vectors, 0, d);
  Mat m1 = columns(eig.vectors, d, n - d);
  const Symmetry j = symmetry_j(p, q, tol);
  Mat r = transpose(m0) * j.mat() * m1;
  const auto [c, s] = cos_sin(p, q, tol);
  SymMat cc(transpose(m0) * c.mat() * m0);
  SymMat ss(transpose(m0) * s.mat() * m0);
  return {std::move(m0), std::move(m1), std::move(r), std::move(cc), std::move(ss)};
}

}  // namespace twoproj
