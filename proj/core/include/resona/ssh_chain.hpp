#pragma once

#include <vector>

#include "resona/bem.hpp"
#include "resona/common.hpp"
#include "resona/geometry.hpp"
#include "resona/muller.hpp"

namespace resona {

// Period L along x1; resonator 1 at -d/2, resonator 2 at +d/2 (copies of one
// shape, the second point-reflected).
struct ChainGeometry {
    double L = 1.0;
    double d = 0.5;
    SurfaceMesh mesh;

    double d_prime() const { return L - d; }
};

ChainGeometry make_chain(double L, double d, const SurfaceMesh& shape);
ChainGeometry make_chain_spheres(double L, double d, double radius, int refinement);

// C_ij = -sum over panels of D_i of area * psi_j, S^{alpha,0} psi_j = chi_j.
Eigen::Matrix2cd chain_capacitance(const ChainGeometry& geo, double alpha, const AssemblyOptions& opt = {});

struct ChainBandRow {
    double alpha = 0;
    cplx C11, C12;
    double lambda1 = 0, lambda2 = 0;
    double omega1 = 0, omega2 = 0;
    Eigen::Vector2cd v1, v2;  // (-+ e^{i theta}, 1) / sqrt 2, e^{i theta} = C12 / |C12|
};

ChainBandRow chain_band_row(double alpha, const Eigen::Matrix2cd& C, double volume, double delta, double v_b);

// Half-step offset samples of (-pi/L, pi/L], Gamma excluded.
std::vector<double> chain_zone_samples(double L, int n);
// Zone samples followed by the edge pi/L, where C12 vanishes for d = d'.
std::vector<double> chain_winding_samples(double L, int n);

std::vector<ChainBandRow> chain_bands(const ChainGeometry& geo, const std::vector<double>& alphas, double delta,
                                      double v_b, int threads = 0, SmoothRule rule = SmoothRule::Dunavant7);

struct TopologyReport {
    int winding = 0;
    double zak = 0;  // 0 or pi
    std::vector<double> alpha;
    std::vector<cplx> c12;
    double gap_lo = 0, gap_hi = 0;  // max omega1, min omega2
    double gap() const { return gap_hi - gap_lo; }
};

// Winding from the argument increments of C12 around the zone.
TopologyReport topology_from_rows(const std::vector<ChainBandRow>& rows);
TopologyReport winding_and_zak(const ChainGeometry& geo, int n_samples, double delta = 1e-3, double v_b = 1.0,
                               int threads = 0, SmoothRule rule = SmoothRule::Dunavant7);

enum class ModeShape { Monopole, Dipole };
const char* to_string(ModeShape s);
// First-band shape at alpha = pi/L from the relative sign of v1.
ModeShape first_band_shape(const Eigen::Matrix2cd& C_at_edge);

struct BandInversion {
    ModeShape first_band_a, first_band_b;  // (d, d') and (d', d)
    bool inverted() const { return first_band_a != first_band_b; }
};
BandInversion band_inversion(const ChainGeometry& a, const ChainGeometry& b, const AssemblyOptions& opt = {});

// sum_{m != 0} e^{i m theta} / |m L| = -(2/L) ln(2 sin(theta/2)), 0 < theta < 2 pi
double chain_self_sum(double theta, double L);
// sum_m e^{i m theta} / |m L + d|, 0 < d < L
cplx chain_cross_sum(double theta, double d, double L);

struct DiluteChain {
    double C11 = 0;
    cplx C12;
};
DiluteChain dilute_chain_asymptotics(double eps, double cap_B, double d, double L, double alpha);

// Chain block system near the guess (Block form with the chain kernel).
MullerResult refine_chain_frequency(const ChainGeometry& geo, double alpha, const MaterialParams& params,
                                    double guess, const MullerOptions& mopt = {}, const AssemblyOptions& opt = {});

}  // namespace resona
