//
// Projection lattice: meet/join against an independent subspace oracle,
// Peirce decomposition, residual projections, Marsden commutator, sixfold
// decomposition, genericity.
//

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace twoproj;
using tptest::angle_pair;
using tptest::block4_pair;
using tptest::diag;
using tptest::dist;

namespace {

const double kRoot3 = std::sqrt(3.0);

// p onto span{e1, e2}, q onto span{e1, (e2+e3)/sqrt(2)}
std::pair<Projection, Projection> three_dim_pair() {
  Mat p(3, 3), q(3, 3);
  p(0, 0) = p(1, 1) = 1.0;
  q(0, 0) = 1.0;
  q(1, 1) = q(1, 2) = q(2, 1) = q(2, 2) = 0.5;
  return {Projection(SymMat(p)), Projection(SymMat(q))};
}

}  // namespace

TEST(Orthocomplement, Examples) {
  EXPECT_LE(dist(orthocomplement(Projection::zero(3)).mat(), Mat::identity(3)), 0.0);
  EXPECT_LE(dist(orthocomplement(Projection(SymMat(diag({1.0, 0.0})))).mat(), diag({0.0, 1.0})),
            0.0);
  const auto [p, q] = angle_pair(M_PI / 3.0);
  Mat qp_expect(2, 2);
  qp_expect(0, 0) = 0.75;
  qp_expect(0, 1) = qp_expect(1, 0) = -kRoot3 / 4.0;
  qp_expect(1, 1) = 0.25;
  EXPECT_LE(dist(orthocomplement(q).mat(), qp_expect), 1e-15);
}

TEST(MeetJoin, SelfAndTrivialCases) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  EXPECT_LE(dist(meet(p, p).mat(), p.mat()), 1e-12);
  EXPECT_LE(dist(join(p, orthocomplement(p)).mat(), Mat::identity(2)), 1e-12);
  EXPECT_LE(dist(join(p, Projection::zero(2)).mat(), p.mat()), 1e-12);
}

TEST(MeetJoin, ThreeDimWorkedExample) {
  const auto [p, q] = three_dim_pair();
  Mat e11(3, 3);
  e11(0, 0) = 1.0;
  EXPECT_LE(dist(meet(p, q).mat(), e11), 1e-12);
  EXPECT_LE(dist(join(p, q).mat(), Mat::identity(3)), 1e-12);
  // independent subspace oracle agrees
  EXPECT_LE(dist(meet(p, q).mat(), tptest::oracle_meet(p, q)), 1e-10);
  EXPECT_LE(dist(join(p, q).mat(), tptest::oracle_join(p, q)), 1e-10);
}

TEST(MeetJoin, GenericPairHasTrivialMeets) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  EXPECT_EQ(meet(p, q).rank(), 0u);
  EXPECT_EQ(meet(p, orthocomplement(q)).rank(), 0u);
}

TEST(MeetJoin, OracleAgreementOnRandomPairs) {
  Rng rng(101);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t n = 2 + rng.index(11);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection m = meet(p, q), j = join(p, q);
    const Mat om = tptest::oracle_meet(p, q), oj = tptest::oracle_join(p, q);
    EXPECT_EQ(m.rank(), tptest::oracle_rank(om));
    EXPECT_EQ(j.rank(), tptest::oracle_rank(oj));
    EXPECT_LE(spec_norm(m.mat() - om), 1e-8);
    EXPECT_LE(spec_norm(j.mat() - oj), 1e-8);
  }
}

TEST(Peirce, TwoByTwoBlocks) {
  Mat a(2, 2);
  a(0, 0) = 1.5;  // alpha
  a(0, 1) = a(1, 0) = -0.25;  // gamma
  a(1, 1) = 2.0;  // beta
  const Projection p(SymMat(diag({1.0, 0.0})));
  const auto parts = peirce(SymMat(a), p);
  EXPECT_DOUBLE_EQ(parts.pap(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(parts.pap_perp(0, 1), -0.25);
  EXPECT_DOUBLE_EQ(parts.p_perp_ap(1, 0), -0.25);
  EXPECT_DOUBLE_EQ(parts.p_perp_ap_perp(1, 1), 2.0);
  EXPECT_LE(max_abs(parts.pap + parts.pap_perp + parts.p_perp_ap + parts.p_perp_ap_perp - a),
            0.0);
}

TEST(Peirce, IdentitySplitsIntoComplements) {
  Rng rng(103);
  const Projection p = tptest::random_projection(rng, 5, 2);
  const auto parts = peirce(SymMat::identity(5), p);
  EXPECT_LE(dist(parts.pap, p.mat()), 1e-13);
  EXPECT_LE(max_abs(parts.pap_perp), 1e-13);
  EXPECT_LE(max_abs(parts.p_perp_ap), 1e-13);
  EXPECT_LE(dist(parts.p_perp_ap_perp, orthocomplement(p).mat()), 1e-13);
}

TEST(Peirce, RandomReconstruction) {
  Rng rng(107);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 2 + rng.index(11);
    const SymMat a = tptest::random_sym(rng, n);
    const Projection p = tptest::random_projection(rng, n, rng.index(n + 1));
    const auto parts = peirce(a, p);
    EXPECT_LE(max_abs(parts.pap + parts.pap_perp + parts.p_perp_ap + parts.p_perp_ap_perp -
                      a.mat()),
              1e-13 * (1.0 + max_abs(a.mat())));
  }
}

TEST(DiagOffdiag, CommutingMeansNoOffdiagonal) {
  // a diagonal in the eigenbasis of p commutes with p
  Rng rng(109);
  const Mat f = random_orthonormal_frame(rng, 5, 5);
  Mat a(5, 5), pm(5, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const double w = rng.normal();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) += w * f(i, k) * f(j, k);
  }
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) pm(i, j) += f(i, k) * f(j, k);
  const auto parts = diag_offdiag(SymMat(a), Projection(SymMat(pm)));
  EXPECT_LE(spec_norm(parts.offdiag), 1e-12 * (1.0 + max_abs(a)));
}

TEST(DiagOffdiag, WorkedPairOffdiagonal) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  const auto parts = diag_offdiag(q.sym(), p);
  Mat expect(2, 2);
  expect(0, 1) = expect(1, 0) = kRoot3 / 4.0;
  EXPECT_LE(dist(parts.offdiag.mat(), expect), 1e-15);
  EXPECT_LE(dist(parts.diag.mat() + parts.offdiag.mat(), q.mat()), 1e-15);
}

TEST(DiagOffdiag, PsdIsControlledByDiagonalPart) {
  // for 0 <= a the diagonal part dominates: zero diagonal part forces a = 0
  Rng rng(113);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 2 + rng.index(9);
    const Mat g = random_gaussian(rng, n, n);
    const SymMat a(g * transpose(g));
    const Projection p = tptest::random_projection(rng, n, rng.index(n + 1));
    const auto parts = diag_offdiag(a, p);
    EXPECT_LE(spec_norm(a), 2.0 * spec_norm(parts.diag) + 1e-12);
  }
}

TEST(Residuals, CommutingPairVanishes) {
  Rng rng(127);
  GenSpec g;
  g.n = 6;
  g.dim_p = 3;
  g.dim_q = 2;
  g.mode = GenMode::commuting;
  g.seed = 7;
  const auto pair = generate_projections(g);
  const auto res = residuals(pair.p, pair.q);
  EXPECT_EQ(res.r_p.rank(), 0u);
  EXPECT_EQ(res.r_p_perp.rank(), 0u);
  EXPECT_EQ(res.r_q.rank(), 0u);
  EXPECT_EQ(res.r_q_perp.rank(), 0u);
  EXPECT_EQ(res.r.rank(), 0u);
}

TEST(Residuals, GenericPairSaturates) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  const auto res = residuals(p, q);
  EXPECT_LE(dist(res.r_p.mat(), p.mat()), 1e-12);
  EXPECT_LE(dist(res.r_q.mat(), q.mat()), 1e-12);
  EXPECT_LE(dist(res.r.mat(), Mat::identity(2)), 1e-12);
}

TEST(Residuals, BlockPairSplits) {
  const auto [p, q] = block4_pair(M_PI / 3.0);
  const auto res = residuals(p, q);
  EXPECT_LE(dist(res.r.mat(), diag({0.0, 0.0, 1.0, 1.0})), 1e-12);
  Mat rp_expect(4, 4);
  rp_expect(2, 2) = 1.0;
  EXPECT_LE(dist(res.r_p.mat(), rp_expect), 1e-12);
}

TEST(Marsden, MatchesResidualSum) {
  Rng rng(131);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t n = 2 + rng.index(9);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    const auto res = residuals(p, q);
    const Projection r = marsden(p, q);
    EXPECT_LE(spec_norm(r.mat() - res.r.mat()), 1e-10);
    EXPECT_LE(spec_norm(res.r_p.mat() + res.r_p_perp.mat() - r.mat()), 1e-9);
    EXPECT_LE(spec_norm(res.r_q.mat() + res.r_q_perp.mat() - r.mat()), 1e-9);
  }
}

TEST(Marsden, Examples) {
  const auto [p2, q2] = angle_pair(M_PI / 3.0);
  EXPECT_LE(dist(marsden(p2, q2).mat(), Mat::identity(2)), 1e-12);
  const auto [p4, q4] = block4_pair(M_PI / 3.0);
  EXPECT_LE(dist(marsden(p4, q4).mat(), diag({0.0, 0.0, 1.0, 1.0})), 1e-12);
}

TEST(Sixfold, EqualPair) {
  Rng rng(137);
  const Projection p = tptest::random_projection(rng, 5, 2);
  const auto six = sixfold(p, p);
  const auto parts = six.parts();
  EXPECT_LE(dist(parts[0].mat(), p.mat()), 1e-10);
  EXPECT_EQ(parts[1].rank(), 0u);
  EXPECT_EQ(parts[2].rank(), 0u);
  EXPECT_LE(dist(parts[3].mat(), orthocomplement(p).mat()), 1e-10);
  EXPECT_EQ(parts[4].rank(), 0u);
  EXPECT_EQ(parts[5].rank(), 0u);
}

TEST(Sixfold, GenericAndBlockExamples) {
  const auto [p2, q2] = angle_pair(M_PI / 3.0);
  const auto six2 = sixfold(p2, q2);
  const auto parts2 = six2.parts();
  for (int k = 0; k < 4; ++k) EXPECT_EQ(parts2[k].rank(), 0u);
  EXPECT_LE(dist(parts2[4].mat(), p2.mat()), 1e-12);
  EXPECT_LE(dist(parts2[5].mat(), orthocomplement(p2).mat()), 1e-12);

  const auto [p4, q4] = block4_pair(M_PI / 3.0);
  const auto six4 = sixfold(p4, q4);
  EXPECT_LE(dist(six4.meet_pq.mat(), diag({1.0, 0.0, 0.0, 0.0})), 1e-12);
  EXPECT_EQ(six4.meet_pq_perp.rank(), 0u);
  EXPECT_EQ(six4.meet_p_perp_q.rank(), 0u);
  EXPECT_LE(dist(six4.meet_p_perp_q_perp.mat(), diag({0.0, 1.0, 0.0, 0.0})), 1e-12);
}

TEST(Sixfold, OrthogonalPartitionOnRandomPairs) {
  Rng rng(139);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t n = 2 + rng.index(11);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    for (Side side : {Side::p, Side::q}) {
      const auto parts = sixfold(p, q, side).parts();
      Mat sum(n, n);
      for (std::size_t a = 0; a < parts.size(); ++a) {
        sum = sum + parts[a].mat();
        for (std::size_t b = a + 1; b < parts.size(); ++b)
          EXPECT_LE(spec_norm(parts[a].mat() * parts[b].mat()), 1e-8);
      }
      EXPECT_LE(spec_norm(sum - Mat::identity(n)), 1e-9 * static_cast<double>(n));
    }
  }
}

TEST(IsGeneric, Examples) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  EXPECT_TRUE(is_generic(p, q));
  EXPECT_FALSE(is_generic(p, orthocomplement(p)));
  const auto [p4, q4] = block4_pair(M_PI / 3.0);
  EXPECT_FALSE(is_generic(p4, q4));
}

TEST(LatticeLaws, DeMorganAndOrder) {
  Rng rng(149);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t n = 2 + rng.index(11);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    EXPECT_LE(spec_norm(orthocomplement(meet(p, q)).mat() -
                        join(orthocomplement(p), orthocomplement(q)).mat()),
              1e-9);
    // p ^ q <= p in the product sense
    const Projection m = meet(p, q);
    EXPECT_LE(spec_norm(m.mat() * p.mat() - m.mat()), 1e-9);
    EXPECT_LE(spec_norm(p.mat() * m.mat() - m.mat()), 1e-9);
  }
}

TEST(LatticeLaws, ComparableProjectionsCommute) {
  Rng rng(151);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 3 + rng.index(8);
    const std::size_t kq = 2 + rng.index(n - 2);
    const Mat frame = random_orthonormal_frame(rng, n, kq);
    const Projection q = frame_projection(frame);
    const Projection p = frame_projection(columns(frame, 0, 1 + rng.index(kq - 1)));
    EXPECT_LE(spec_norm(p.mat() * q.mat() - p.mat()), 1e-12);
    EXPECT_LE(spec_norm(q.mat() * p.mat() - p.mat()), 1e-12);
  }
}

TEST(LatticeLaws, ResidualDecompositionsOfTheFourCorners) {
  Rng rng(157);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 2 + rng.index(11);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection pp = orthocomplement(p), qp = orthocomplement(q);
    const auto res = residuals(p, q);
    const double bound = 1e-9 * static_cast<double>(n);
    EXPECT_LE(spec_norm(p.mat() - (meet(p, q).mat() + meet(p, qp).mat() + res.r_p.mat())), bound);
    EXPECT_LE(spec_norm(pp.mat() - (meet(pp, q).mat() + meet(pp, qp).mat() + res.r_p_perp.mat())),
              bound);
    EXPECT_LE(spec_norm(q.mat() - (meet(p, q).mat() + meet(pp, q).mat() + res.r_q.mat())), bound);
    EXPECT_LE(spec_norm(qp.mat() - (meet(p, qp).mat() + meet(pp, qp).mat() + res.r_q_perp.mat())),
              bound);
  }
}

TEST(LatticeLaws, CommutationPredicatesAgree) {
  Rng rng(163);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 2 + rng.index(9);
    const bool make_commuting = iter % 2 == 0;
    GenSpec g;
    g.n = n;
    g.dim_p = 1 + rng.index(n);
    g.dim_q = 1 + rng.index(n);
    g.mode = make_commuting ? GenMode::commuting : GenMode::random;
    g.seed = 1000 + static_cast<std::uint64_t>(iter);
    const auto pair = generate_projections(g);
    const Projection& p = pair.p;
    const Projection& q = pair.q;
    const Projection pp = orthocomplement(p), qp = orthocomplement(q);
    const auto res = residuals(p, q);

    const bool any_residual_zero = res.r_p.rank() == 0 || res.r_p_perp.rank() == 0 ||
                                   res.r_q.rank() == 0 || res.r_q_perp.rank() == 0;
    const bool all_residuals_zero = res.r_p.rank() == 0 && res.r_p_perp.rank() == 0 &&
                                    res.r_q.rank() == 0 && res.r_q_perp.rank() == 0;
    const bool direct = commutes(p.sym(), q.sym());
    const bool all_corners = direct && commutes(p.sym(), qp.sym()) &&
                             commutes(pp.sym(), q.sym()) && commutes(pp.sym(), qp.sym());
    const bool marsden_zero = res.r.rank() == 0;
    EXPECT_EQ(any_residual_zero, all_residuals_zero);
    EXPECT_EQ(all_residuals_zero, direct);
    EXPECT_EQ(direct, all_corners);
    EXPECT_EQ(direct, marsden_zero);
    // pCq iff r_p = r_q = 0 iff r_p C r_q
    EXPECT_EQ(direct, res.r_p.rank() == 0 && res.r_q.rank() == 0);
    EXPECT_EQ(direct, commutes(res.r_p.sym(), res.r_q.sym()));
    // the four corners commute with r
    for (const Projection* x : {&p, &pp, &q, &qp})
      EXPECT_LE(commutator_norm(x->sym(), res.r.sym()), 1e-9 * static_cast<double>(n));
  }
}

TEST(LatticeLaws, CarrierFormulas) {
  Rng rng(167);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t n = 2 + rng.index(9);
    const Projection p = tptest::random_projection(rng, n, 1 + rng.index(n));
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n));
    // (pqp)° = p ^ (p' v q)
    EXPECT_LE(spec_norm(carrier(sandwich(p.sym(), q.sym())).mat() -
                        meet(p, join(orthocomplement(p), q)).mat()),
              1e-8);
  }
}

TEST(LatticeLaws, CarrierOfCommutingProduct) {
  // (ab)° = a° ^ b° for commuting a, b built on a common eigenbasis
  Rng rng(173);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 3 + rng.index(8);
    const Mat f = random_orthonormal_frame(rng, n, n);
    Mat a(n, n), b(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double wa = (rng.index(3) == 0) ? 0.0 : rng.normal();
      const double wb = (rng.index(3) == 0) ? 0.0 : rng.normal();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) += wa * f(i, k) * f(j, k);
          b(i, j) += wb * f(i, k) * f(j, k);
        }
    }
    const SymMat sa(a), sb(b);
    const SymMat ab(a * b);
    EXPECT_LE(spec_norm(carrier(ab).mat() - meet(carrier(sa), carrier(sb)).mat()), 1e-8);
  }
}

TEST(LatticeLaws, FoulisHollandDistributivity) {
  // q v r commutes with both q and r; distributivity holds for such triples
  Rng rng(179);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 3 + rng.index(8);
    const Projection q = tptest::random_projection(rng, n, 1 + rng.index(n - 1));
    const Projection r = tptest::random_projection(rng, n, 1 + rng.index(n - 1));
    const Projection p = join(q, r);
    EXPECT_LE(spec_norm(meet(p, join(q, r)).mat() - join(meet(p, q), meet(p, r)).mat()), 1e-8);
    EXPECT_LE(spec_norm(join(p, meet(q, r)).mat() - meet(join(p, q), join(p, r)).mat()), 1e-8);
  }
}
