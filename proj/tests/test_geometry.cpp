#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "resona/curve.hpp"
#include "resona/geometry.hpp"

using namespace resona;

TEST(SphereMesh, PanelCountsFollowSubdivision)
{
    for (int ref = 0; ref <= 3; ++ref) {
        auto m = make_sphere_mesh(Vec3::Zero(), 1.0, ref);
        EXPECT_EQ(m.n_panels(), std::size_t(20) << (2 * ref));
        EXPECT_EQ(m.n_resonators(), 1);
    }
}

TEST(SphereMesh, AreaDeficitBelowBound)
{
    for (int ref = 0; ref <= 4; ++ref) {
        auto m = make_sphere_mesh(Vec3(1, 2, 3), 1.0, ref);
        const double exact = 4 * pi;
        const double deficit = (exact - m.surface_area(0)) / exact;
        EXPECT_GT(deficit, 0);
        EXPECT_LT(deficit, sphere_area_constant * std::pow(4.0, -ref));
    }
}

TEST(SphereMesh, VerticesOnSphereAndNormalsOutward)
{
    const Vec3 c(0.5, -1, 2);
    auto m = make_sphere_mesh(c, 2.0, 2);
    for (const auto& v : m.vertices()) EXPECT_NEAR((v - c).norm(), 2.0, 1e-13);
    for (std::size_t p = 0; p < m.n_panels(); ++p) EXPECT_GT(m.normal(p).dot(m.centroid(p) - c), 0);
    EXPECT_NEAR((m.center(0) - c).norm(), 0, 1e-12);
}

TEST(SphereMesh, VolumeConvergesToBall)
{
    double prev = INFINITY;
    for (int ref = 1; ref <= 4; ++ref) {
        auto m = make_sphere_mesh(Vec3::Zero(), 1.0, ref);
        const double err = std::abs(m.volume(0) - 4 * pi / 3) / (4 * pi / 3);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 5e-3);
}

TEST(SphereMesh, RejectsBadInput)
{
    EXPECT_THROW(make_sphere_mesh(Vec3::Zero(), -1.0, 1), InvalidArgument);
    EXPECT_THROW(make_sphere_mesh(Vec3::Zero(), 1.0, -1), InvalidArgument);
}

TEST(GradedSphere, KeepsConnectivityAndShrinksPanelsAtFocus)
{
    auto u = make_sphere_mesh(Vec3::Zero(), 1.0, 2);
    auto g = make_graded_sphere_mesh(Vec3::Zero(), 1.0, 2, Vec3::UnitX(), 2.0);
    ASSERT_EQ(u.n_panels(), g.n_panels());
    for (const auto& v : g.vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    double near_u = 0, near_g = 0;
    for (std::size_t p = 0; p < u.n_panels(); ++p) {
        if (u.centroid(p).x() > 0.9) near_u = std::max(near_u, u.area(p));
        if (g.centroid(p).x() > 0.9) near_g = std::max(near_g, g.area(p));
    }
    EXPECT_LT(near_g, 0.6 * near_u);
}

TEST(Dimer, PointReflectedPair)
{
    auto s = make_sphere_mesh(Vec3::Zero(), 1.0, 1);
    auto d = make_dimer(s, 3.0, Vec3::UnitY());
    ASSERT_EQ(d.n_resonators(), 2);
    EXPECT_NEAR((d.center(0) - Vec3(0, -1.5, 0)).norm(), 0, 1e-12);
    EXPECT_NEAR((d.center(1) - Vec3(0, 1.5, 0)).norm(), 0, 1e-12);
    EXPECT_NEAR(d.volume(0), d.volume(1), 1e-13);
    EXPECT_GT(d.volume(1), 0);  // winding kept outward
}

TEST(Dimer, SphereDimerGap)
{
    auto d = make_sphere_dimer(1.0, 0.25, 1);
    double xmax0 = -INFINITY, xmin1 = INFINITY;
    for (std::size_t p = 0; p < d.n_panels(); ++p)
        for (const auto& v : d.panel(p)) {
            if (d.resonator(p) == 0) xmax0 = std::max(xmax0, v.x());
            else xmin1 = std::min(xmin1, v.x());
        }
    EXPECT_NEAR(xmin1 - xmax0, 0.25, 1e-12);
}

TEST(Dimer, OverlapRejected)
{
    auto s = make_sphere_mesh(Vec3::Zero(), 1.0, 0);
    EXPECT_THROW(make_dimer(s, 1.5, Vec3::UnitX()), InvalidArgument);
    EXPECT_THROW(make_sphere_dimer(1.0, -0.1, 1), InvalidArgument);
}

TEST(GradedArray, EndpointsAndConstantGap)
{
    std::vector<double> r{0.4, 0.6, 0.8, 1.0};
    auto m = make_graded_array(r, SpacingRule{8.0}, 1);
    ASSERT_EQ(m.n_resonators(), 4);
    std::vector<double> lo(4, INFINITY), hi(4, -INFINITY);
    for (std::size_t p = 0; p < m.n_panels(); ++p)
        for (const auto& v : m.panel(p)) {
            lo[m.resonator(p)] = std::min(lo[m.resonator(p)], v.x());
            hi[m.resonator(p)] = std::max(hi[m.resonator(p)], v.x());
        }
    EXPECT_NEAR(lo[0], 0.0, 1e-12);
    EXPECT_NEAR(hi[3], 8.0, 1e-12);
    const double gap = (8.0 - 2 * (0.4 + 0.6 + 0.8 + 1.0)) / 3;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(lo[i + 1] - hi[i], gap, 1e-12);
}

TEST(GradedArray, ExtentTooSmall)
{
    std::vector<double> r{1.0, 1.1};
    EXPECT_THROW(make_graded_array(r, SpacingRule{3.0}, 0), InvalidArgument);
    std::vector<double> dec{1.1, 1.0};
    EXPECT_THROW(make_graded_array(dec, SpacingRule{10.0}, 0), InvalidArgument);
}

TEST(SurfaceMesh, ScaleTranslateMerge)
{
    auto a = make_sphere_mesh(Vec3::Zero(), 1.0, 1);
    auto s = a.scaled(3.0);
    EXPECT_NEAR(s.volume(0), 27 * a.volume(0), 1e-10);
    EXPECT_NEAR(s.total_area(), 9 * a.total_area(), 1e-10);
    auto t = a.translated(Vec3(5, 0, 0));
    EXPECT_NEAR(t.volume(0), a.volume(0), 1e-12);
    auto m = SurfaceMesh::merge(a, t);
    EXPECT_EQ(m.n_resonators(), 2);
    EXPECT_EQ(m.n_panels(), 2 * a.n_panels());
    EXPECT_NO_THROW(m.check_no_overlap());
    EXPECT_THROW(SurfaceMesh::merge(a, a.translated(Vec3(1, 0, 0))).check_no_overlap(), InvalidArgument);
}

TEST(SurfaceMesh, PointReflectionKeepsOutwardNormals)
{
    auto a = make_sphere_mesh(Vec3(2, 0, 0), 1.0, 1);
    auto r = a.point_reflected();
    EXPECT_NEAR(r.volume(0), a.volume(0), 1e-12);
    EXPECT_NEAR((r.center(0) + a.center(0)).norm(), 0, 1e-12);
}

TEST(SurfaceMesh, RejectsDegenerateTriangles)
{
    std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    EXPECT_THROW(SurfaceMesh(v, {{0, 1, 2}}, {0}), InvalidArgument);
}

TEST(MeshIo, RoundTrip)
{
    auto m = make_sphere_dimer(1.0, 0.5, 1);
    auto path = std::filesystem::temp_directory_path() / "resona_mesh_roundtrip.txt";
    write_mesh(m, path);
    auto r = read_mesh(path);
    std::filesystem::remove(path);
    ASSERT_EQ(r.n_panels(), m.n_panels());
    ASSERT_EQ(r.n_resonators(), 2);
    for (std::size_t i = 0; i < m.vertices().size(); ++i) EXPECT_EQ(r.vertex(int(i)), m.vertex(int(i)));
    EXPECT_EQ(r.resonator_ids(), m.resonator_ids());
}

TEST(MeshIo, MalformedFile)
{
    auto path = std::filesystem::temp_directory_path() / "resona_mesh_bad.txt";
    {
        std::ofstream f(path);
        f << "3 1\n0 0 0\n1 0 0\n";
    }
    EXPECT_THROW(read_mesh(path), InvalidArgument);
    std::filesystem::remove(path);
    EXPECT_THROW(read_mesh("/nonexistent/mesh.txt"), InvalidArgument);
}

TEST(MaterialParams, DerivedQuantities)
{
    auto p = MaterialParams::from_contrast(1e-3, 2.0, 0.5);
    EXPECT_NEAR(p.delta(), 1e-3, 1e-18);
    EXPECT_NEAR(p.v(), 2.0, 1e-15);
    EXPECT_NEAR(p.v_b(), 0.5, 1e-15);
    EXPECT_NEAR(p.k(4.0), 2.0, 1e-15);
    auto w = MaterialParams::air_in_water();
    EXPECT_NO_THROW(w.validate());
    EXPECT_LT(w.delta(), 1e-2);
    MaterialParams bad;
    bad.rho = -1;
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Lattice, DualAndVolume)
{
    for (const Lattice& l : {Lattice::cubic(2.0), Lattice::honeycomb(1.0), Lattice::chain(3.0)}) {
        for (int i = 0; i < l.dim; ++i)
            for (int j = 0; j < l.dim; ++j)
                EXPECT_NEAR(l.vectors[i].dot(l.dual[j]), i == j ? 2 * pi : 0.0, 1e-12);
    }
    EXPECT_NEAR(Lattice::cubic(2.0).cell_volume, 8.0, 1e-12);
    EXPECT_NEAR(Lattice::honeycomb(1.0).cell_volume, std::sqrt(3.0) / 2, 1e-12);
    EXPECT_NEAR(Lattice::chain(3.0).cell_volume, 3.0, 1e-12);
}

TEST(Lattice, ColinearVectorsRejected)
{
    EXPECT_THROW(Lattice::from_vectors({Vec3(1, 0, 0), Vec3(2, 0, 0)}), InvalidArgument);
}

TEST(CurveMesh, DiskAreaAndPerimeter)
{
    const int n = 48;
    auto c = make_disk_curve(Vec2(0.3, 0.4), 0.1, n);
    EXPECT_NEAR(c.area(0), 0.5 * n * 0.01 * std::sin(2 * pi / n), 1e-14);
    EXPECT_NEAR(c.perimeter(0), 2 * n * 0.1 * std::sin(pi / n), 1e-14);
    for (std::size_t p = 0; p < c.n_panels(); ++p) EXPECT_GT(c.normal(p).dot(c.midpoint(p) - Vec2(0.3, 0.4)), 0);
}

// property: homogeneous scaling acts on every derived quantity by the right power
TEST(SurfaceMeshProperty, RandomScalings)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    auto m = make_sphere_mesh(Vec3(0.2, 0.1, -0.3), 0.7, 1);
    for (int t = 0; t < 10; ++t) {
        const double s = u(rng);
        auto ms = m.scaled(s);
        EXPECT_NEAR(ms.volume(0) / m.volume(0), s * s * s, 1e-12 * s * s * s);
        EXPECT_NEAR(ms.max_panel_diameter() / m.max_panel_diameter(), s, 1e-12 * s);
        EXPECT_NEAR(ms.bounding_radius(0) / m.bounding_radius(0), s, 1e-12 * s);
    }
}
