#pragma once

#include "resona/common.hpp"
#include "resona/geometry.hpp"

namespace resona {

// Two spheres of radius r, gap eps, axis along x3.
struct BisphericalFrame {
    double r = 0, eps = 0;
    double alpha_coord = 0;  // sqrt(eps (4r + eps)) / 2
    double alpha_tilde = 0;  // sqrt(eps (r + eps/4))
    double xi0 = 0;          // asinh(alpha_tilde / r)
    Vec3 c1, c2;             // centres (0, 0, -+sqrt(r^2 + alpha^2))
    bool near_degenerate = false;  // xi0 < 1e-8
};

BisphericalFrame bispherical_frame(double r, double eps);

struct TwoSphereCapacitance {
    double C11 = 0, C12 = 0;
    int terms = 0;
    double tail_bound = 0;  // bound on the neglected part of either sum
};

// Partial sums with at least n_terms terms, extended until the tail bound
// drops below 1e-12 of the value. Throws past 1e5 terms.
TwoSphereCapacitance capacitance_series(const BisphericalFrame& frame, int n_terms = 1);

// Small-gap asymptotics; warns when eps / r > 0.3.
TwoSphereCapacitance capacitance_asymptotics(double r, double eps);

struct ResonancePair {
    double omega1 = 0, omega2 = 0;
};
// Leading-order in-phase / antiphase frequencies of the close pair.
ResonancePair close_resonances(double r, double eps, double delta, double v_b);

// Predicted scales of max|grad u_1| and max|grad u_2|.
std::pair<double, double> blowup_prediction(double eps);

// eps = exp(-1 / delta^(1 - beta))
double epsilon_regime(double delta, double beta);

}  // namespace resona
