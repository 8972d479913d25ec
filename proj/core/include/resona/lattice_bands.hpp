#pragma once

#include <string>
#include <vector>

#include "resona/bem.hpp"
#include "resona/common.hpp"
#include "resona/curve.hpp"
#include "resona/geometry.hpp"
#include "resona/green.hpp"
#include "resona/muller.hpp"

namespace resona {

// --- square (cubic) lattice ---------------------------------------------------

// -sum over the mesh of (S^{alpha,0})^-1 [chi]; Gamma is rejected.
double quasi_capacitance(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha,
                         const AssemblyOptions& opt = {});

// omega_1^alpha = omega_M sqrt(Cap_alpha / Cap_D) = v_b sqrt(delta Cap_alpha / |D|)
double band_omega1(double cap_alpha, double volume, double delta, double v_b);
double band_omega1(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha, double delta, double v_b,
                   const AssemblyOptions& opt = {});

struct BandRow {
    Vec3 alpha;
    double cap = 0;
    double omega1 = 0;
};

struct BandTable {
    std::vector<BandRow> rows;
    std::vector<std::string> labels;   // path vertex names
    std::vector<std::size_t> vertex_rows;
};

// Named symmetry points of the cubic lattice with spacing a: G, X = (pi/a,0,0),
// M = (pi/a,pi/a,pi/a).
Vec3 cubic_symmetry_point(const std::string& name, double a = 1.0);

// n samples per leg plus the final vertex; samples that land on Gamma are moved
// into the leg by gamma_offset times the leg length.
std::vector<Vec3> brillouin_path(const std::vector<Vec3>& vertices, int n_per_leg, double gamma_offset = 0.01);

BandTable band_sweep(const SurfaceMesh& mesh, const Lattice& lat, const std::vector<std::string>& path, int n_per_leg,
                     double delta, double v_b, int threads = 0, SmoothRule rule = SmoothRule::Dunavant7);

struct HomogenizedTensor {
    Eigen::Matrix3d lambda;
    Eigen::Matrix3d hessian;  // of Cap_alpha at alpha*
    double cap_star = 0;
    double step = 0;
    double residual = 0;      // off-fit quadratic residual along (1,1,1)
    double relative_residual = 0;
};

// lambda = -(v_b^2 / (2|D|)) Hess Cap_alpha at alpha*, by central differences
// along the three axes and the three face diagonals. With auto_halve the step
// is halved (up to 4 times) until the residual along (1,1,1) is below 1e-2 of
// the quadratic term.
HomogenizedTensor homogenized_tensor(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha_star, double h,
                                     double v_b, bool auto_halve = true, const AssemblyOptions& opt = {});

struct DispersionCheck {
    double beta = 0;         // ((omega1*)^2 - omega^2) / delta
    bool propagating = false;
    double alpha_sq = 0;     // |alpha~|^2 = beta / mean(lambda) when propagating
};
DispersionCheck dispersion_check_above_gap(const Eigen::Matrix3d& lambda, double omega, double omega1_star,
                                           double delta);

// Characteristic value of the quasi-periodic block system near the guess.
MullerResult refine_band_frequency(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha,
                                   const MaterialParams& params, double guess, const MullerOptions& mopt = {},
                                   const AssemblyOptions& opt = {});

// --- honeycomb (two dimensional) -----------------------------------------------

struct HoneycombGeometry {
    Lattice lattice;
    CurveMesh mesh;   // disk 1 at (l1+l2)/3, disk 2 at 2(l1+l2)/3
    double radius = 0;
    Vec2 alpha_star;  // K point (2 alpha_1 + alpha_2) / 3
};
HoneycombGeometry make_honeycomb(double L, double radius, int segments_per_disk);

// 2x2 capacitance C^alpha_ij = -int_{dD_i} psi_j^alpha.
Eigen::Matrix2cd honeycomb_capacitance(const HoneycombGeometry& geo, const Vec2& alpha, int threads = 0);

// Central-difference derivatives of c1 = C11 and c2 = C12 at alpha.
struct HoneycombGradient {
    Eigen::Vector2cd grad_c1, grad_c2;
};
HoneycombGradient honeycomb_gradient(const HoneycombGeometry& geo, const Vec2& alpha, double h, int threads = 0);

struct DiracFit {
    double omega_star = 0;
    double omega_star_formula = 0;   // sqrt(delta c1 / |D1|) v_b
    double slope_lower = 0, slope_upper = 0;
    double lambda = 0;               // mean branch slope magnitude
    cplx c;                          // d c2 / d alpha_1 at alpha*
    double lambda0 = 0;              // 1/2 sqrt(v_b^2 / (|D1| c1))
    double lambda_formula = 0;       // |c| sqrt(delta) lambda0
    double r2_lower = 0, r2_upper = 0;
    double window = 0;
    double cone_gap = 0;             // relative band separation at alpha*
};

// Samples alpha* + t e along e, 0 < |t| <= window; the window is the largest
// candidate for which both branches fit a line with R^2 >= 0.99.
DiracFit dirac_fit(const HoneycombGeometry& geo, double delta, double v_b, double max_window,
                   const Vec2& direction = Vec2(1, 0), int threads = 0);

// S_j(x) = S^{alpha,0}[psi_j](x) at points at least one panel length from the boundary.
std::vector<Eigen::Vector2cd> bloch_mode_eval(const HoneycombGeometry& geo, const Vec2& alpha,
                                              const std::vector<Vec2>& points, int threads = 0);

}  // namespace resona
