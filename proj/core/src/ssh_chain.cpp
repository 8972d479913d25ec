#include "resona/ssh_chain.hpp"

#include <cmath>

#include "resona/parallel.hpp"
#include "resona/quadrature.hpp"

namespace resona {

ChainGeometry make_chain(double L, double d, const SurfaceMesh& shape)
{
    if (!(L > 0)) throw InvalidArgument("make_chain: period must be positive");
    if (!(d > 0 && d < L)) throw InvalidArgument("make_chain: need 0 < d < L");
    if (shape.n_resonators() != 1) throw InvalidArgument("make_chain: shape must be a single resonator");
    const double b = shape.bounding_radius(0) + (shape.center(0)).norm();
    if (2 * b >= d || 2 * b >= L - d) throw InvalidArgument("make_chain: resonators overlap within the chain");
    ChainGeometry g;
    g.L = L;
    g.d = d;
    g.mesh = make_dimer(shape, d, Vec3::UnitX());
    return g;
}

ChainGeometry make_chain_spheres(double L, double d, double radius, int refinement)
{
    return make_chain(L, d, make_sphere_mesh(Vec3::Zero(), radius, refinement));
}

Eigen::Matrix2cd chain_capacitance(const ChainGeometry& geo, double alpha, const AssemblyOptions& opt)
{
    if (!(alpha > -pi / geo.L && alpha <= pi / geo.L))
        throw InvalidArgument("chain_capacitance: alpha must lie in (-pi/L, pi/L]");
    if (std::abs(alpha) * geo.L < 1e-9) throw InvalidArgument("chain_capacitance: alpha at Gamma is not allowed");
    ChainGreen g(geo.L, alpha, 0.0);
    MatC S = assemble_single_layer(geo.mesh, g, opt).entries;
    const auto n = static_cast<Eigen::Index>(geo.mesh.n_panels());
    MatC chi = MatC::Zero(n, 2);
    for (Eigen::Index p = 0; p < n; ++p) chi(p, geo.mesh.resonator(p)) = 1.0;
    DenseSolver lu(S, "chain_capacitance");
    MatC psi = lu.solve(chi);
    Eigen::Matrix2cd C = Eigen::Matrix2cd::Zero();
    for (Eigen::Index p = 0; p < n; ++p)
        for (int j = 0; j < 2; ++j) C(geo.mesh.resonator(p), j) -= geo.mesh.area(p) * psi(p, j);
    return C;
}

ChainBandRow chain_band_row(double alpha, const Eigen::Matrix2cd& C, double volume, double delta, double v_b)
{
    if (!(volume > 0) || !(delta > 0) || !(v_b > 0)) throw InvalidArgument("chain_band_row: bad arguments");
    ChainBandRow r;
    r.alpha = alpha;
    r.C11 = 0.5 * (C(0, 0) + C(1, 1));
    r.C12 = C(0, 1);
    const double a = std::abs(r.C12);
    r.lambda1 = r.C11.real() - a;
    r.lambda2 = r.C11.real() + a;
    r.omega1 = v_b * std::sqrt(delta * std::max(r.lambda1, 0.0) / volume);
    r.omega2 = v_b * std::sqrt(delta * std::max(r.lambda2, 0.0) / volume);
    const cplx ph = a > 0 ? r.C12 / a : cplx(1.0);
    const double s = 1 / std::sqrt(2.0);
    r.v1 = Eigen::Vector2cd(-ph * s, s);
    r.v2 = Eigen::Vector2cd(ph * s, s);
    return r;
}

std::vector<double> chain_zone_samples(double L, int n)
{
    if (n < 2) throw InvalidArgument("chain_zone_samples: need at least two samples");
    std::vector<double> a(n);
    const double step = 2 * pi / (L * n);
    for (int j = 0; j < n; ++j) a[j] = -pi / L + (j + 0.5) * step;
    // an even count puts no sample on Gamma
    for (double& x : a)
        if (std::abs(x) * L < 1e-12) x = 0.5 * step;
    return a;
}

std::vector<double> chain_winding_samples(double L, int n)
{
    std::vector<double> a = chain_zone_samples(L, n);
    a.push_back(pi / L);
    return a;
}

std::vector<ChainBandRow> chain_bands(const ChainGeometry& geo, const std::vector<double>& alphas, double delta,
                                      double v_b, int threads, SmoothRule rule)
{
    std::vector<ChainBandRow> rows(alphas.size());
    const AssemblyOptions opt{1, rule};
    parallel_for(alphas.size(), threads, [&](std::size_t i) {
        rows[i] = chain_band_row(alphas[i], chain_capacitance(geo, alphas[i], opt), geo.mesh.volume(0), delta, v_b);
    });
    return rows;
}

TopologyReport topology_from_rows(const std::vector<ChainBandRow>& rows)
{
    if (rows.size() < 2) throw InvalidArgument("topology: need at least two samples");
    TopologyReport t;
    double cmax = 0, cmin = INFINITY;
    t.gap_lo = -INFINITY;
    t.gap_hi = INFINITY;
    for (const auto& r : rows) {
        t.alpha.push_back(r.alpha);
        t.c12.push_back(r.C12);
        cmax = std::max(cmax, std::abs(r.C12));
        cmin = std::min(cmin, std::abs(r.C12));
        t.gap_lo = std::max(t.gap_lo, r.omega1);
        t.gap_hi = std::min(t.gap_hi, r.omega2);
    }
    if (!(cmin > 1e-10 * cmax)) throw NumericalError("winding_and_zak", "invariant undefined at gap closure");
    double turn = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const cplx a = t.c12[j], b = t.c12[(j + 1) % rows.size()];
        turn += std::arg(b / a);
    }
    t.winding = static_cast<int>(std::lround(turn / (2 * pi)));
    t.zak = (std::abs(t.winding) % 2) ? pi : 0.0;
    return t;
}

TopologyReport winding_and_zak(const ChainGeometry& geo, int n, double delta, double v_b, int threads,
                               SmoothRule rule)
{
    return topology_from_rows(chain_bands(geo, chain_winding_samples(geo.L, n), delta, v_b, threads, rule));
}

const char* to_string(ModeShape s) { return s == ModeShape::Monopole ? "monopole" : "dipole"; }

ModeShape first_band_shape(const Eigen::Matrix2cd& C)
{
    const ChainBandRow r = chain_band_row(0, C, 1, 1, 1);
    const double rel = (r.v1[0] * std::conj(r.v1[1])).real();
    return rel > 0 ? ModeShape::Monopole : ModeShape::Dipole;
}

BandInversion band_inversion(const ChainGeometry& a, const ChainGeometry& b, const AssemblyOptions& opt)
{
    BandInversion out;
    out.first_band_a = first_band_shape(chain_capacitance(a, pi / a.L, opt));
    out.first_band_b = first_band_shape(chain_capacitance(b, pi / b.L, opt));
    return out;
}

double chain_self_sum(double theta, double L)
{
    if (!(L > 0)) throw InvalidArgument("chain_self_sum: period must be positive");
    double t = std::fmod(theta, 2 * pi);
    if (t < 0) t += 2 * pi;
    if (t < 1e-14 || 2 * pi - t < 1e-14) throw InvalidArgument("chain lattice sum diverges at alpha L = 0 mod 2 pi");
    return -(2 / L) * std::log(2 * std::sin(t / 2));
}

namespace {

// sum_{m>=1} e^{i m theta} / (m + a) = int_0^1 t^a e^{i theta} / (1 - t e^{i theta}) dt, a > -1
cplx shifted_polylog(double theta, double a)
{
    const GaussRule& gr = gauss_legendre(16);
    const cplx z = std::polar(1.0, theta);
    auto f = [&](double t) { return std::pow(t, a) * z / (1.0 - t * z); };
    auto seg = [&](double lo, double hi) {
        cplx s = 0;
        for (std::size_t q = 0; q < gr.x.size(); ++q) s += gr.w[q] * f(lo + 0.5 * (hi - lo) * (gr.x[q] + 1));
        return 0.5 * (hi - lo) * s;
    };
    // graded towards t = 0 (t^a) and t = 1 (pole near 1 for small theta)
    cplx s = seg(0.0, std::ldexp(1.0, -60));
    for (int j = 60; j >= 2; --j) s += seg(std::ldexp(1.0, -j), std::ldexp(1.0, -j + 1));
    for (int j = 1; j < 60; ++j) s += seg(1 - std::ldexp(1.0, -j), 1 - std::ldexp(1.0, -j - 1));
    s += seg(1 - std::ldexp(1.0, -60), 1.0);
    return s;
}

}  // namespace

cplx chain_cross_sum(double theta, double d, double L)
{
    if (!(L > 0) || !(d > 0 && d < L)) throw InvalidArgument("chain_cross_sum: need 0 < d < L");
    double t = std::fmod(theta, 2 * pi);
    if (t < 0) t += 2 * pi;
    if (t < 1e-14 || 2 * pi - t < 1e-14) throw InvalidArgument("chain lattice sum diverges at alpha L = 0 mod 2 pi");
    const double a = d / L, b = 1 - a;
    // m >= 1: (1/L) F(theta, a); m <= -1: (e^{-i theta}/L)(1/b + F(-theta, b))
    const cplx pos = shifted_polylog(theta, a) / L;
    const cplx neg = std::polar(1.0, -theta) / L * (1.0 / b + shifted_polylog(-theta, b));
    return 1.0 / d + pos + neg;
}

DiluteChain dilute_chain_asymptotics(double eps, double cap_B, double d, double L, double alpha)
{
    if (!(eps > 0) || !(cap_B > 0)) throw InvalidArgument("dilute_chain_asymptotics: bad arguments");
    const double c = eps * cap_B;
    const double theta = alpha * L;
    DiluteChain out;
    out.C11 = c - c * c / (4 * pi) * chain_self_sum(theta, L);
    out.C12 = -c * c / (4 * pi) * chain_cross_sum(theta, d, L);
    return out;
}

MullerResult refine_chain_frequency(const ChainGeometry& geo, double alpha, const MaterialParams& params,
                                    double guess, const MullerOptions& mopt, const AssemblyOptions& opt)
{
    const double L = geo.L;
    CharacteristicOperator A(
        geo.mesh, params, [L, alpha](cplx k) { return std::make_unique<ChainGreen>(L, alpha, k); },
        CharacteristicOperator::Form::Block, false, opt);
    return refine_characteristic_value([&](cplx w) { return A(w); }, cplx(guess, 0.0), mopt);
}

}  // namespace resona
