#include "resona/effective_medium.hpp"

#include <cmath>

namespace resona {

const char* to_string(MediumRegime r)
{
    switch (r) {
    case MediumRegime::HighIndex: return "high-index";
    case MediumRegime::Dissipative: return "dissipative";
    default: return "neutral";
    }
}

namespace {

void check_spec(const DiluteMediumSpec& s)
{
    if (!(s.Lambda >= 0)) throw InvalidArgument("effective_coefficient: Lambda must be non-negative");
    if (!(s.cap > 0)) throw InvalidArgument("effective_coefficient: capacity must be positive");
    if (s.omega > 0 && s.omega_M > 0 && s.omega == s.omega_M)
        throw InvalidArgument("effective_coefficient: omega = omega_M; at the resonant frequency one "
                              "cannot expect any effective medium theory");
    if (s.beta0 == 0 || !std::isfinite(s.beta0))
        throw InvalidArgument("effective_coefficient: beta0 = 0 means omega = omega_M; at the resonant "
                              "frequency one cannot expect any effective medium theory");
    if (s.omega > 0 && s.omega_M > 0) {
        const double x = 1 - (s.omega_M / s.omega) * (s.omega_M / s.omega);
        if ((x > 0) != (s.beta0 > 0)) throw InvalidArgument("effective_coefficient: sign of beta0 inconsistent with omega");
    }
}

EffectiveCoefficient evaluate(const DiluteMediumSpec& s, double V)
{
    if (!(V >= 0)) throw InvalidArgument("effective_coefficient: V must be non-negative");
    EffectiveCoefficient c;
    const double shift = s.Lambda * s.cap * V / s.beta0;
    c.value = s.k * s.k - shift;
    if (s.beta0 > 0)
        c.regime = MediumRegime::Dissipative;
    else if (std::abs(shift) >= 10 * s.k * s.k)
        c.regime = MediumRegime::HighIndex;
    else
        c.regime = MediumRegime::Neutral;
    return c;
}

}  // namespace

EffectiveCoefficient effective_coefficient(const DiluteMediumSpec& spec)
{
    check_spec(spec);
    return evaluate(spec, spec.V);
}

std::vector<EffectiveCoefficient> effective_coefficient(const DiluteMediumSpec& spec, const std::vector<double>& V)
{
    check_spec(spec);
    std::vector<EffectiveCoefficient> out;
    out.reserve(V.size());
    for (double v : V) out.push_back(evaluate(spec, v));
    return out;
}

double uniform_density_V(double vol)
{
    if (!(vol > 0)) throw InvalidArgument("uniform_density_V: volume must be positive");
    return 1.0 / vol;
}

DimerConstants dimer_constants(const DimerMediumSpec& s)
{
    if (!(s.gap > 0)) throw InvalidArgument("dimer_constants: gap parameter mu^3 eta1 - a must be positive");
    if (!(s.volume > 0) || !(s.v_b > 0) || !(s.mu > 0)) throw InvalidArgument("dimer_constants: bad arguments");
    if (!(s.C12 < 0) || !(s.C11 + s.C12 > 0))
        throw InvalidArgument("dimer_constants: need C12 < 0 < C11 + C12 (omega_M1 < omega_M2)");
    DimerConstants c;
    c.omega_M1 = s.mu * s.v_b * std::sqrt((s.C11 + s.C12) / s.volume);
    c.omega_M2 = s.mu * s.v_b * std::sqrt((s.C11 - s.C12) / s.volume);
    const double q = c.omega_M1 / c.omega_M2;
    c.g0 = 2 * (s.C11 + s.C12) / (1 - q * q);
    c.g1 = s.mu * s.mu * s.v_b * s.v_b * s.P * s.P / (2 * s.volume * c.omega_M2 * s.gap);
    return c;
}

DoubleNegative double_negative_window(const DimerMediumSpec& s, double k)
{
    if (!(s.Lambda >= 0)) throw InvalidArgument("double_negative_window: Lambda must be non-negative");
    if (!(s.V > 0)) throw InvalidArgument("double_negative_window: V must be positive");
    const DimerConstants c = dimer_constants(s);
    const Eigen::Matrix3d B = s.B.allFinite() ? s.B : Eigen::Matrix3d(s.V / 3 * Eigen::Matrix3d::Identity());
    DoubleNegative out;
    out.M1 = Eigen::Matrix3d::Identity() - s.Lambda * c.g1 * B;
    out.M2 = k * k - s.Lambda * c.g0 * s.V;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (out.M1 + out.M1.transpose()), Eigen::EigenvaluesOnly);
    out.M1_eigmin = es.eigenvalues()(0);
    out.M1_eigmax = es.eigenvalues()(2);
    out.both_negative = out.M2 < 0 && out.M1_eigmax < 0;
    out.Lambda_star = k * k / (c.g0 * s.V);
    return out;
}

}  // namespace resona
