#pragma once

#include <vector>

#include "resona/bem.hpp"
#include "resona/common.hpp"
#include "resona/geometry.hpp"

namespace resona {

// psi.col(j) solves S_D psi = indicator of resonator j at the collocation points.
struct EquilibriumDensities {
    MatR psi;
    double rcond = 0.0;
};

EquilibriumDensities solve_equilibrium_densities(const SurfaceMesh& mesh, int threads = 0);

struct CapacitanceMatrix {
    MatR C;
    std::vector<double> volumes;

    int size() const { return static_cast<int>(C.rows()); }
    // rows scaled by 1/|D_i|
    MatR weighted() const;
    double asymmetry() const { return (C - C.transpose()).norm() / C.norm(); }
};

// C_ij = -sum over panels of resonator i of area * psi_j
CapacitanceMatrix capacitance_matrix(const SurfaceMesh& mesh, int threads = 0);
CapacitanceMatrix capacitance_from_densities(const SurfaceMesh& mesh, const MatR& psi);

struct Mode {
    cplx omega;
    double lambda = 0.0;  // eigenvalue of the weighted capacitance matrix
    VecR v;               // eigenvector, unit Euclidean norm, positive component sum (or first nonzero)
    double tau = 0.0;
    double nu = 1.0;      // n-th row sum of V^-1
    bool has_nu = true;
    int multiplicity = 1;
};

struct ResonanceSet {
    std::vector<Mode> modes;  // sorted by Re omega
    double v_condition = 1.0; // rcond of V
    int size() const { return static_cast<int>(modes.size()); }
};

// omega_n = sqrt(v_b^2 lambda_n delta) - i tau_n delta,
// tau_n = v_b^2/(8 pi v) v_n.CJCv_n / |v_n|_D^2
ResonanceSet resonances_leading_order(const CapacitanceMatrix& C, const MaterialParams& params);

// Single resonator:
// g = Cap / (1 - (omega_M/omega)^2 + i gamma_M)
double minnaert_frequency(double cap, double volume, const MaterialParams& params);
cplx scattering_coefficient(double omega, const MaterialParams& params, double cap, double volume);
cplx scattering_coefficient(double omega, const MaterialParams& params, const SurfaceMesh& mesh,
                            int threads = 0);

// a_n (omega^2 - omega_n^2) = -A nu_n Re(omega_n)^2
std::vector<cplx> modal_coefficients(cplx omega, cplx amplitude, const ResonanceSet& res);

struct DimerScatterer {
    cplx g0;
    Eigen::Matrix3cd g1;
    double C11 = 0, C12 = 0;
    double P = 0;
    Eigen::Matrix3d polarization;  // int S^-1[x_i] y_j
    cplx omega1, omega2;
};

// Dimer symmetric about the origin with its axis along x1.
DimerScatterer dimer_point_scatterer(const SurfaceMesh& mesh, cplx omega, const MaterialParams& params,
                                     int threads = 0);

// P = int y1 (psi_1 - psi_2)
double dipole_weight(const SurfaceMesh& mesh, const MatR& psi);
double dipole_weight(const SurfaceMesh& mesh, int threads = 0);

// Throws InvalidArgument unless the mesh is a two-resonator dimer symmetric under
// x -> -x with its axis on x1.
void check_symmetric_dimer(const SurfaceMesh& mesh, double tol = 1e-8);

}  // namespace resona
