#pragma once

#include <string>
#include <vector>

#include "resona/common.hpp"

namespace resona {

// Single-resonator dilute medium: r^{1-eps0} N = Lambda, 1 - (omega_M/omega)^2 = beta0 r^eps0.
struct DiluteMediumSpec {
    double Lambda = 1.0;
    double cap = 4 * pi;  // Cap of the reference resonator
    double beta0 = 1.0;
    double V = 1.0;       // resonator density profile, constant
    double k = 1.0;
    double omega = 0, omega_M = 0;  // optional; when both are set sign(beta0) is checked against them
};

enum class MediumRegime { HighIndex, Dissipative, Neutral };
const char* to_string(MediumRegime r);

struct EffectiveCoefficient {
    double value = 0;  // k^2 - Lambda Cap V / beta0
    MediumRegime regime = MediumRegime::Neutral;
};

EffectiveCoefficient effective_coefficient(const DiluteMediumSpec& spec);
// Same for a sampled profile V(x).
std::vector<EffectiveCoefficient> effective_coefficient(const DiluteMediumSpec& spec, const std::vector<double>& V);

// 1 / |Omega|
double uniform_density_V(double omega_volume);

// Unit dimer with delta = mu^2; omega_{M,1/2} = mu v_b sqrt((C11 +- C12) / |D|).
struct DimerMediumSpec {
    double C11 = 0, C12 = 0;
    double P = 0;
    double volume = 1.0;  // |D| of one resonator
    double v_b = 1.0;
    double mu = 1.0;
    double gap = 0;       // mu^3 eta1 - a, supplied
    double Lambda = 1.0;
    double V = 1.0;
    Eigen::Matrix3d B = Eigen::Matrix3d::Constant(NAN);  // NaN: (V/3) I
};

struct DimerConstants {
    double g0 = 0, g1 = 0;
    double omega_M1 = 0, omega_M2 = 0;
};
DimerConstants dimer_constants(const DimerMediumSpec& spec);

struct DoubleNegative {
    Eigen::Matrix3d M1;
    double M2 = 0;
    double M1_eigmin = 0, M1_eigmax = 0;
    bool both_negative = false;
    double Lambda_star = 0;  // M2 = 0 threshold, k^2 / (g0 V)
};
DoubleNegative double_negative_window(const DimerMediumSpec& spec, double k);

}  // namespace resona
