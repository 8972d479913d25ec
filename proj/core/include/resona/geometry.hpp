#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "resona/common.hpp"

namespace resona {

// Densities and bulk moduli outside (rho, kappa) and inside (rho_b, kappa_b).
struct MaterialParams {
    double rho = 1.0;
    double kappa = 1.0;
    double rho_b = 1.0;
    double kappa_b = 1.0;

    double v() const { return std::sqrt(kappa / rho); }
    double v_b() const { return std::sqrt(kappa_b / rho_b); }
    double delta() const { return rho_b / rho; }
    double k(double omega) const { return omega / v(); }
    double k_b(double omega) const { return omega / v_b(); }
    void validate() const;

    // rho = 1, rho_b = delta, wave speeds as given.
    static MaterialParams from_contrast(double delta, double v = 1.0, double v_b = 1.0);
    // Air bubbles in water.
    static MaterialParams air_in_water();
};

// Closed triangulated surfaces, one or more resonators. Immutable once built.
class SurfaceMesh {
public:
    SurfaceMesh() = default;
    SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles,
                std::vector<int> resonator_id);

    std::size_t n_panels() const { return tris_.size(); }
    int n_resonators() const { return n_res_; }

    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
    const std::vector<int>& resonator_ids() const { return rid_; }

    const Vec3& vertex(int i) const { return verts_[i]; }
    std::array<Vec3, 3> panel(std::size_t p) const
    {
        return {verts_[tris_[p][0]], verts_[tris_[p][1]], verts_[tris_[p][2]]};
    }
    double area(std::size_t p) const { return area_[p]; }
    const Vec3& centroid(std::size_t p) const { return cent_[p]; }
    const Vec3& normal(std::size_t p) const { return normal_[p]; }
    int resonator(std::size_t p) const { return rid_[p]; }
    const VecR& areas() const { return area_; }

    double volume(int i) const { return volume_[i]; }
    double surface_area(int i) const { return surf_[i]; }
    const std::vector<double>& volumes() const { return volume_; }
    double total_area() const { return area_.sum(); }

    // Bounding-box centre of the resonator and the largest vertex distance from it.
    Vec3 center(int i) const { return center_[i]; }
    double bounding_radius(int i) const { return bound_[i]; }
    double max_panel_diameter() const { return hmax_; }

    SurfaceMesh translated(const Vec3& t) const;
    SurfaceMesh scaled(double s) const;
    // x -> -x with winding reversed so normals stay outward.
    SurfaceMesh point_reflected() const;
    // Resonators of b are appended after those of a.
    static SurfaceMesh merge(const SurfaceMesh& a, const SurfaceMesh& b);

    // Throws InvalidArgument if two bounding spheres intersect.
    void check_no_overlap() const;

private:
    void build();

    std::vector<Vec3> verts_;
    std::vector<std::array<int, 3>> tris_;
    std::vector<int> rid_;
    int n_res_ = 0;
    VecR area_;
    std::vector<Vec3> cent_, normal_;
    std::vector<double> volume_, surf_, bound_;
    std::vector<Vec3> center_;
    double hmax_ = 0.0;
};

// Icosahedral subdivision, vertices projected to the sphere. The area deficit
// is below sphere_area_constant * 4^-refinement of the exact value.
inline constexpr double sphere_area_constant = 0.32;
SurfaceMesh make_sphere_mesh(const Vec3& center, double radius, int refinement);

// Same connectivity with vertices pulled towards the pole `focus` by a
// stereographic rescaling; panel edges near the pole shrink by ~1/grading.
SurfaceMesh make_graded_sphere_mesh(const Vec3& center, double radius, int refinement, const Vec3& focus,
                                    double grading);

// Two copies of a single-resonator shape centred at the origin: resonator 0
// at -separation/2 * orientation, resonator 1 its point reflection.
SurfaceMesh make_dimer(const SurfaceMesh& shape, double separation, const Vec3& orientation);
// grading > 1 refines both spheres towards the gap.
SurfaceMesh make_sphere_dimer(double radius, double gap, int refinement,
                              const Vec3& orientation = Vec3::UnitX(), double grading = 1.0);

// Constant gap between neighbours, first sphere's left pole at x = 0,
// last sphere's right pole at x = total_extent.
struct SpacingRule {
    double total_extent = 0.0;
};
SurfaceMesh make_graded_array(std::span<const double> radii, const SpacingRule& rule,
                              int refinement);

// Text format: "nv nt", nv lines "x y z", nt lines "i j k rid" (0-based).
SurfaceMesh read_mesh(const std::filesystem::path& path);
void write_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);

// Bravais lattice of dimension 1..3 embedded in R^3 (unused components zero).
struct Lattice {
    int dim = 3;
    std::vector<Vec3> vectors;
    std::vector<Vec3> dual;
    double cell_volume = 1.0;  // length, area or volume

    static Lattice cubic(double a = 1.0);
    // l1 = L(sqrt3/2, 1/2), l2 = L(sqrt3/2, -1/2)
    static Lattice honeycomb(double L = 1.0);
    static Lattice chain(double L = 1.0);
    static Lattice from_vectors(std::vector<Vec3> vectors);
    void validate() const;
};

}  // namespace resona
