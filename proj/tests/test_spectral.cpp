//
// Spectrum of p + q and the joint-commutant structure theorems.
//

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace twoproj;
using tptest::angle_pair;
using tptest::block4_pair;
using tptest::dist;

namespace {

ProjectionPair generic_pair(std::size_t n, std::uint64_t seed) {
  GenSpec g;
  g.n = n;
  g.dim_p = n / 2;
  g.dim_q = n / 2;
  g.mode = GenMode::generic;
  g.seed = seed;
  return generate_projections(g);
}

// two distinct angles, each on two 2x2 blocks: an 8-dim generic pair whose
// cosine effect has two eigenvalue clusters of multiplicity four
ProjectionPair two_cluster_pair() {
  GenSpec g;
  g.n = 8;
  g.mode = GenMode::block;
  g.angles = {0.4, 0.4, 1.1, 1.1};
  return generate_projections(g);
}

}  // namespace

TEST(Spectrum, WorkedPair) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  const auto rep = spectrum_sum(p, q);
  ASSERT_EQ(rep.predicted.size(), 2u);
  EXPECT_NEAR(rep.predicted[0], 0.5, 1e-12);
  EXPECT_NEAR(rep.predicted[1], 1.5, 1e-12);
  EXPECT_NEAR(rep.observed[0], 0.5, 1e-12);
  EXPECT_NEAR(rep.observed[1], 1.5, 1e-12);
  EXPECT_LE(rep.max_deviation, 1e-12);
  ASSERT_EQ(rep.gammas.size(), 1u);
  EXPECT_NEAR(rep.gammas[0], 0.5, 1e-12);
  EXPECT_EQ(rep.multiplicities[0], 2);
}

TEST(Spectrum, RequiresGenericPosition) {
  Rng rng(307);
  const Projection p = tptest::random_projection(rng, 2, 1);
  EXPECT_THROW(spectrum_sum(p, orthocomplement(p)), NotGeneric);
  const auto [p4, q4] = block4_pair(M_PI / 3.0);
  EXPECT_THROW(spectrum_sum(p4, q4), NotGeneric);
}

TEST(Spectrum, RandomGenericPairs) {
  Rng rng(311);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 2 * (1 + rng.index(5));
    const auto pair = generic_pair(n, 700 + static_cast<std::uint64_t>(iter));
    const auto rep = spectrum_sum(pair.p, pair.q);
    EXPECT_LE(rep.max_deviation, 1e-8 * static_cast<double>(n));
    // the spectrum of p + q - 1 is symmetric about zero
    for (std::size_t a = 0; a < rep.observed.size(); ++a)
      EXPECT_NEAR(rep.observed[a] - 1.0, -(rep.observed[rep.observed.size() - 1 - a] - 1.0),
                  1e-8 * static_cast<double>(n));
  }
}

TEST(Spectrum, TwoClustersWithMultiplicities) {
  const auto pair = two_cluster_pair();
  const auto rep = spectrum_sum(pair.p, pair.q);
  ASSERT_EQ(rep.gammas.size(), 2u);
  EXPECT_NEAR(rep.gammas[0], std::cos(0.4), 1e-12);
  EXPECT_NEAR(rep.gammas[1], std::cos(1.1), 1e-12);
  EXPECT_EQ(rep.multiplicities[0], 4);
  EXPECT_EQ(rep.multiplicities[1], 4);
  EXPECT_LE(rep.max_deviation, 1e-10);
}

TEST(CommutantEmbed, ScalarGenerator) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  const auto elem = commutant_embed(SymMat(2.5 * p.mat()), p, q);
  EXPECT_LE(dist(elem.a.mat(), 2.5 * Mat::identity(2)), 1e-12);
  const auto zero = commutant_embed(SymMat::zero(2), p, q);
  EXPECT_LE(max_abs(zero.a.mat()), 1e-15);
}

TEST(CommutantEmbed, PolynomialGeneratorsCommute) {
  Rng rng(313);
  for (int iter = 0; iter < 8; ++iter) {
    const std::size_t n = 8;
    const auto pair = generic_pair(n, 800 + static_cast<std::uint64_t>(iter));
    const auto [c, s] = cos_sin(pair.p, pair.q);
    const double a0 = rng.normal(), a1 = rng.normal(), a2 = rng.normal();
    const Mat i = Mat::identity(n);
    const Mat fc = a0 * i + a1 * c.mat() + a2 * c.mat() * c.mat();
    const SymMat b(pair.p.mat() * fc * pair.p.mat());
    const auto elem = commutant_embed(b, pair.p, pair.q);
    const double bound = 1e-8 * (1.0 + max_abs(b.mat()));
    EXPECT_LE(commutator_norm(elem.a, pair.p.sym()), bound);
    EXPECT_LE(commutator_norm(elem.a, pair.q.sym()), bound);
    EXPECT_LE(spec_norm(elem.a.mat() * pair.p.mat() - b.mat()), bound);
    EXPECT_LE(spec_norm(pair.p.mat() * elem.a.mat() - b.mat()), bound);
    // round trip back to the generator
    const SymMat back = commutant_decompose(elem.a, pair.p, pair.q);
    EXPECT_LE(spec_norm(back - b), bound);
  }
}

TEST(CommutantEmbed, RejectsBadGenerators) {
  const auto pair = generic_pair(6, 901);
  // not compressed by p
  EXPECT_THROW(commutant_embed(SymMat::identity(6), pair.p, pair.q), BadGenerator);
  // compressed but not commuting with c: p e1 e1^T p generically fails
  Mat spike(6, 6);
  spike(0, 0) = 1.0;
  const SymMat bad(pair.p.mat() * spike * pair.p.mat());
  EXPECT_THROW(commutant_embed(bad, pair.p, pair.q), BadGenerator);
  // non-generic pair gates first
  const auto [p4, q4] = block4_pair(M_PI / 3.0);
  EXPECT_THROW(commutant_embed(SymMat::zero(4), p4, q4), NotGeneric);
}

TEST(CommutantDecompose, IdentityAndScalars) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  EXPECT_LE(dist(commutant_decompose(SymMat::identity(2), p, q).mat(), p.mat()), 1e-12);
  EXPECT_LE(dist(commutant_decompose(SymMat(2.5 * Mat::identity(2)), p, q).mat(),
                 2.5 * p.mat()),
            1e-12);
}

TEST(CommutantDecompose, RejectsOutsiders) {
  const auto pair = generic_pair(6, 903);
  // p + q commutes with neither projection unless they commute
  const SymMat outsider(pair.p.mat() + pair.q.mat());
  EXPECT_THROW(commutant_decompose(outsider, pair.p, pair.q), NotInCommutant);
}

TEST(CommutantProjection, TrivialCases) {
  const auto [p, q] = angle_pair(M_PI / 3.0);
  EXPECT_LE(dist(commutant_projection(Projection::identity(2), p, q).mat(), p.mat()), 1e-12);
  EXPECT_EQ(commutant_projection(Projection::zero(2), p, q).rank(), 0u);
}

TEST(CommutantProjection, SpectralClusterRoundTrip) {
  const auto pair = two_cluster_pair();
  const auto [c, s] = cos_sin(pair.p, pair.q);
  const Symmetry j = symmetry_j(pair.p, pair.q);
  // z = eigenprojection of c for the top angle cluster; a polynomial in c,
  // hence in the joint commutant
  const auto ec = sym_eigen(c.sym());
  const double top = ec.eigenvalues.front();
  const Projection z(
      spectral_transform(ec, [&](double x) { return x >= top - 1e-6 ? 1.0 : 0.0; }));
  EXPECT_EQ(z.rank(), 4u);
  const Projection t = commutant_projection(z, pair.p, pair.q);
  EXPECT_LE(spec_norm(z.mat() - (t.mat() + j.mat() * t.mat() * j.mat())), 1e-10);
  EXPECT_LE(spec_norm(t.mat() - t.mat() * pair.p.mat()), 1e-10);
  EXPECT_LE(spec_norm(t.mat() - pair.p.mat() * t.mat()), 1e-10);
  EXPECT_LE(commutator_norm(t.sym(), c.sym()), 1e-10);
  EXPECT_EQ(t.rank(), 2u);
}

TEST(CommutantProjection, RandomGenericRoundTrip) {
  Rng rng(317);
  for (int iter = 0; iter < 8; ++iter) {
    const std::size_t n = 2 * (2 + rng.index(4));
    const auto pair = generic_pair(n, 1000 + static_cast<std::uint64_t>(iter));
    const auto [c, s] = cos_sin(pair.p, pair.q);
    const Symmetry j = symmetry_j(pair.p, pair.q);
    const auto ec = sym_eigen(c.sym());
    // a mid-spectrum split still yields a commuting projection
    const double split = ec.eigenvalues[ec.eigenvalues.size() / 2];
    const Projection z(
        spectral_transform(ec, [&](double x) { return x >= split - 1e-12 ? 1.0 : 0.0; }));
    const Projection t = commutant_projection(z, pair.p, pair.q);
    EXPECT_LE(spec_norm(z.mat() - (t.mat() + j.mat() * t.mat() * j.mat())), 1e-8);
    EXPECT_LE(commutator_norm(t.sym(), c.sym()), 1e-8);
  }
}
