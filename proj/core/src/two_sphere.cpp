#include "resona/two_sphere.hpp"

#include <cmath>

#include "resona/bem.hpp"

namespace resona {

BisphericalFrame bispherical_frame(double r, double eps)
{
    if (!(r > 0)) throw InvalidArgument("bispherical_frame: radius must be positive");
    if (!(eps > 0)) throw InvalidArgument("bispherical_frame: gap must be positive (touching spheres are degenerate)");
    BisphericalFrame f;
    f.r = r;
    f.eps = eps;
    f.alpha_coord = std::sqrt(eps * (4 * r + eps)) / 2;
    f.alpha_tilde = std::sqrt(eps * (r + eps / 4));
    f.xi0 = std::asinh(f.alpha_tilde / r);
    f.near_degenerate = f.xi0 < 1e-8;
    const double c = std::sqrt(r * r + f.alpha_coord * f.alpha_coord);
    f.c1 = Vec3(0, 0, -c);
    f.c2 = Vec3(0, 0, c);
    return f;
}

TwoSphereCapacitance capacitance_series(const BisphericalFrame& f, int n_terms)
{
    if (n_terms < 1) throw InvalidArgument("capacitance_series: n_terms must be >= 1");
    const double pref = 8 * pi * f.alpha_tilde;
    const int cap = 100000;
    double s11 = 0, s12 = 0;
    TwoSphereCapacitance out;
    // both summands decay at least like exp(-(2n+1) xi0); the tail after n is
    // bounded by the next term over (1 - exp(-2 xi0))
    const double ratio = -std::expm1(-2 * f.xi0);
    for (int n = 0; n < cap; ++n) {
        const double x = (2 * n + 1) * f.xi0;
        const double t11 = 1.0 / (2 * std::sinh(x));       // e^x / (e^{2x} - 1)
        const double t12 = 1.0 / std::expm1(2 * x);
        s11 += t11;
        s12 += t12;
        const double xn = (2 * n + 3) * f.xi0;
        const double tail = std::max(1.0 / (2 * std::sinh(xn)), 1.0 / std::expm1(2 * xn)) / ratio;
        if (n + 1 >= n_terms && tail < 1e-12 * s12) {
            out.terms = n + 1;
            out.tail_bound = pref * tail;
            out.C11 = pref * s11;
            out.C12 = -pref * s12;
            return out;
        }
    }
    throw NumericalError("capacitance_series", "tail criterion not met within 1e5 terms");
}

TwoSphereCapacitance capacitance_asymptotics(double r, double eps)
{
    BisphericalFrame f = bispherical_frame(r, eps);
    if (eps / r > 0.3) warn("capacitance_asymptotics: eps/r above 0.3, small-gap expansion inaccurate");
    const double s = 2 * pi * f.alpha_tilde / f.xi0;
    const double lr = std::log(std::sqrt(r)) - std::log(std::sqrt(eps));
    TwoSphereCapacitance out;
    out.C11 = s * (euler_gamma + 2 * std::log(2.0) + lr);
    out.C12 = -s * (euler_gamma + lr);
    return out;
}

ResonancePair close_resonances(double r, double eps, double delta, double v_b)
{
    if (!(delta > 0 && delta < 0.1)) throw InvalidArgument("close_resonances: delta must lie in (0, 0.1)");
    if (!(eps > 0)) throw InvalidArgument("close_resonances: gap must be positive");
    if (!(r > 0) || !(v_b > 0)) throw InvalidArgument("close_resonances: r and v_b must be positive");
    ResonancePair p;
    p.omega1 = std::sqrt(delta * 3 * v_b * v_b * std::log(2.0)) / r;
    p.omega2 = std::sqrt(delta * 3 * v_b * v_b / (2 * r * r) *
                         (std::log(r / eps) + 2 * euler_gamma + 2 * std::log(2.0)));
    return p;
}

std::pair<double, double> blowup_prediction(double eps)
{
    if (!(eps > 0)) throw InvalidArgument("blowup_prediction: gap must be positive");
    return {1.0, 1.0 / eps};
}

double epsilon_regime(double delta, double beta)
{
    if (!(delta > 0) || !(beta > 0 && beta < 1)) throw InvalidArgument("epsilon_regime: need delta > 0, 0 < beta < 1");
    return std::exp(-1.0 / std::pow(delta, 1 - beta));
}

}  // namespace resona
