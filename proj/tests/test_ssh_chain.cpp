#include <gtest/gtest.h>

#include <cmath>

#include "resona/finite.hpp"
#include "resona/ssh_chain.hpp"

using namespace resona;

namespace {

// partial sums over |m| <= M averaged across one period of e^{i m theta}, theta = 2 pi p / q
cplx brute_cross(double theta, int q, double d, double L, int M)
{
    cplx s = 0, avg = 0;
    for (int m = -M; m <= M; ++m) s += std::polar(1.0, m * theta) / std::abs(m * L + d);
    for (int j = 0; j < q; ++j) {
        avg += s;
        const int m = M + 1 + j;
        s += std::polar(1.0, m * theta) / std::abs(m * L + d) + std::polar(1.0, -m * theta) / std::abs(-m * L + d);
    }
    return avg / double(q);
}

}  // namespace

TEST(ChainGeometry, Construction)
{
    auto g = make_chain_spheres(2.0, 0.6, 0.1, 0);
    EXPECT_EQ(g.mesh.n_resonators(), 2);
    EXPECT_NEAR(g.d_prime(), 1.4, 1e-15);
    EXPECT_NEAR(g.mesh.center(0).x(), -0.3, 1e-12);
    EXPECT_NEAR(g.mesh.center(1).x(), 0.3, 1e-12);
    EXPECT_THROW(make_chain_spheres(1.0, 0.15, 0.1, 0), InvalidArgument);
    EXPECT_THROW(make_chain_spheres(1.0, 0.9, 0.1, 0), InvalidArgument);
    EXPECT_THROW(make_chain_spheres(1.0, 1.2, 0.1, 0), InvalidArgument);
}

TEST(ChainSamples, HalfStepAndEdge)
{
    auto a = chain_zone_samples(1.0, 8);
    ASSERT_EQ(a.size(), 8u);
    for (double x : a) {
        EXPECT_GT(std::abs(x), 1e-6);
        EXPECT_GT(x, -pi);
        EXPECT_LT(x, pi);
    }
    auto w = chain_winding_samples(1.0, 8);
    ASSERT_EQ(w.size(), 9u);
    EXPECT_EQ(w.back(), pi);
}

TEST(ChainCapacitance, HermitianAndGammaRejected)
{
    auto g = make_chain_spheres(1.0, 0.3, 0.1, 0);
    EXPECT_THROW(chain_capacitance(g, 0.0), InvalidArgument);
    EXPECT_THROW(chain_capacitance(g, 1.5 * pi), InvalidArgument);
    auto C = chain_capacitance(g, 0.4 * pi);
    EXPECT_LT((C - C.adjoint()).norm(), 1e-6 * C.norm());
    EXPECT_GT(C(0, 0).real(), 0);
    // time reversal: C(-alpha) = conj C(alpha)
    auto Cm = chain_capacitance(g, -0.4 * pi);
    EXPECT_LT((Cm - C.conjugate()).norm(), 1e-9 * C.norm());
}

TEST(ChainBandRow, EigenpairsOfTwoByTwo)
{
    Eigen::Matrix2cd C;
    C << cplx(2.0, 0), cplx(-0.3, 0.4), cplx(-0.3, -0.4), cplx(2.0, 0);
    auto r = chain_band_row(0.7, C, 0.5, 1e-3, 2.0);
    EXPECT_NEAR(r.lambda1, 1.5, 1e-14);
    EXPECT_NEAR(r.lambda2, 2.5, 1e-14);
    EXPECT_NEAR(r.omega1, 2.0 * std::sqrt(1e-3 * 1.5 / 0.5), 1e-15);
    EXPECT_LT((C * r.v1 - r.lambda1 * r.v1).norm(), 1e-14);
    EXPECT_LT((C * r.v2 - r.lambda2 * r.v2).norm(), 1e-14);
    EXPECT_NEAR(r.v1.norm(), 1.0, 1e-15);
}

TEST(LatticeSums, SelfSumClosedForm)
{
    // theta = pi: sum_{m != 0} (-1)^m / |m| = -2 ln 2
    EXPECT_NEAR(chain_self_sum(pi, 1.0), -2 * std::log(2.0), 1e-15);
    EXPECT_NEAR(chain_self_sum(pi, 2.0), -std::log(2.0), 1e-15);
    EXPECT_THROW(chain_self_sum(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(chain_self_sum(2 * pi, 1.0), InvalidArgument);
}

TEST(LatticeSums, CrossSumAgainstBruteSums)
{
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 5}}) {
        const double th = 2 * pi * p / q;
        for (double d : {0.2, 0.5, 0.8})
            EXPECT_LT(std::abs(chain_cross_sum(th, d, 1.0) - brute_cross(th, q, d, 1.0, 200000)), 1e-8);
    }
}

TEST(LatticeSums, CrossSumSymmetries)
{
    // d = L/2, theta = pi: terms cancel pairwise
    EXPECT_LT(std::abs(chain_cross_sum(pi, 0.5, 1.0)), 1e-12);
    // scaling: sum over |mL + d| with L, d scaled by s
    EXPECT_NEAR(std::abs(chain_cross_sum(1.0, 0.6, 2.0) - chain_cross_sum(1.0, 0.3, 1.0) / 2.0), 0, 1e-12);
    // conjugation under theta -> -theta
    EXPECT_NEAR(std::abs(chain_cross_sum(-1.3, 0.3, 1.0) - std::conj(chain_cross_sum(1.3, 0.3, 1.0))), 0, 1e-12);
}

TEST(Topology, TrivialAndNontrivial)
{
    auto a = winding_and_zak(make_chain_spheres(1.0, 0.3, 0.1, 0), 16, 1e-3, 1.0, 0, SmoothRule::Centroid);
    auto b = winding_and_zak(make_chain_spheres(1.0, 0.7, 0.1, 0), 16, 1e-3, 1.0, 0, SmoothRule::Centroid);
    EXPECT_EQ(a.winding, 0);
    EXPECT_EQ(a.zak, 0.0);
    EXPECT_EQ(std::abs(b.winding), 1);
    EXPECT_EQ(b.zak, pi);
    EXPECT_GT(a.gap(), 0);
    EXPECT_GT(b.gap(), 0);
}

TEST(Topology, ClosedGapRejected)
{
    std::vector<ChainBandRow> rows(4);
    for (int j = 0; j < 4; ++j) {
        rows[j].alpha = j;
        rows[j].C12 = std::polar(1.0, 0.3 * j);
    }
    EXPECT_NO_THROW(topology_from_rows(rows));
    rows[2].C12 = 0.0;
    EXPECT_THROW(topology_from_rows(rows), NumericalError);
}

TEST(Topology, BandInversionAcrossTransition)
{
    auto inv = band_inversion(make_chain_spheres(1.0, 0.3, 0.1, 0), make_chain_spheres(1.0, 0.7, 0.1, 0),
                              {0, SmoothRule::Centroid});
    EXPECT_TRUE(inv.inverted());
}

TEST(Dilute, AsymptoticsApproachBem)
{
    auto unit = make_sphere_mesh(Vec3::Zero(), 1.0, 1);
    const double capB = capacitance_matrix(unit).C(0, 0);
    const double alpha = 0.6 * pi;
    std::vector<double> e12, e11;
    for (double eps : {0.08, 0.04}) {
        auto C = chain_capacitance(make_chain(1.0, 0.3, unit.scaled(eps)), alpha, {0, SmoothRule::Centroid});
        auto as = dilute_chain_asymptotics(eps, capB, 0.3, 1.0, alpha);
        e12.push_back(std::abs(C(0, 1) - as.C12));
        e11.push_back(std::abs(C(0, 0).real() - as.C11));
    }
    // O(eps^3) remainder
    EXPECT_GT(e12[0] / e12[1], 5.0);
    EXPECT_GT(e11[0] / e11[1], 5.0);
}
