#include <cmath>

#include "resona/lattice_bands.hpp"
#include "resona/parallel.hpp"

namespace resona {

HoneycombGeometry make_honeycomb(double L, double radius, int segments)
{
    if (!(L > 0)) throw InvalidArgument("make_honeycomb: period must be positive");
    if (segments < 6 || segments % 6 != 0)
        throw InvalidArgument("make_honeycomb: segments per disk must be a positive multiple of 6");
    HoneycombGeometry g;
    g.lattice = Lattice::honeycomb(L);
    const Vec2 l1 = g.lattice.vectors[0].head<2>(), l2 = g.lattice.vectors[1].head<2>();
    const Vec2 x1 = (l1 + l2) / 3.0, x2 = 2.0 * (l1 + l2) / 3.0;
    // disks must not touch each other or their images
    if (!(radius > 0) || 2 * radius >= (x2 - x1).norm())
        throw InvalidArgument("make_honeycomb: radius must lie in (0, L / (2 sqrt 3))");
    g.radius = radius;
    CurveMesh d2 = make_disk_curve(x2, radius, segments);
    CurveMesh d1 = make_disk_curve(x1, radius, segments);
    g.mesh = CurveMesh::merge(d1, d2);
    const Vec2 a1 = g.lattice.dual[0].head<2>(), a2 = g.lattice.dual[1].head<2>();
    g.alpha_star = (2 * a1 + a2) / 3.0;
    return g;
}

namespace {

// Densities psi_j with S psi_j = chi_j, columns j = 0, 1.
MatC honeycomb_densities(const HoneycombGeometry& geo, const Vec2& alpha, int threads)
{
    if (alpha.norm() < 1e-9) throw InvalidArgument("honeycomb: alpha at Gamma is not allowed");
    LatticeGreen2D g(geo.lattice, alpha);
    MatC S = assemble_single_layer_2d(geo.mesh, g, threads);
    const auto n = static_cast<Eigen::Index>(geo.mesh.n_panels());
    MatC chi = MatC::Zero(n, 2);
    for (Eigen::Index p = 0; p < n; ++p) chi(p, geo.mesh.resonator(p)) = 1.0;
    DenseSolver lu(S, "honeycomb_capacitance");
    return lu.solve(chi);
}

}  // namespace

Eigen::Matrix2cd honeycomb_capacitance(const HoneycombGeometry& geo, const Vec2& alpha, int threads)
{
    MatC psi = honeycomb_densities(geo, alpha, threads);
    Eigen::Matrix2cd C = Eigen::Matrix2cd::Zero();
    for (std::size_t p = 0; p < geo.mesh.n_panels(); ++p) {
        const int i = geo.mesh.resonator(p);
        for (int j = 0; j < 2; ++j) C(i, j) -= geo.mesh.length(p) * psi(static_cast<Eigen::Index>(p), j);
    }
    const double scale = C.cwiseAbs().maxCoeff();
    const double herm = (C - C.adjoint()).cwiseAbs().maxCoeff();
    const double diag = std::abs(C(0, 0) - C(1, 1));
    if (herm > 1e-6 * scale || diag > 1e-6 * scale)
        throw NumericalError("honeycomb_capacitance", "capacitance matrix fails the honeycomb symmetry check");
    return C;
}

HoneycombGradient honeycomb_gradient(const HoneycombGeometry& geo, const Vec2& alpha, double h, int threads)
{
    if (!(h > 0)) throw InvalidArgument("honeycomb_gradient: step must be positive");
    HoneycombGradient g;
    for (int k = 0; k < 2; ++k) {
        Vec2 e = Vec2::Zero();
        e[k] = h;
        const Eigen::Matrix2cd Cp = honeycomb_capacitance(geo, alpha + e, threads);
        const Eigen::Matrix2cd Cm = honeycomb_capacitance(geo, alpha - e, threads);
        g.grad_c1[k] = (Cp(0, 0) - Cm(0, 0)) / (2 * h);
        g.grad_c2[k] = (Cp(0, 1) - Cm(0, 1)) / (2 * h);
    }
    return g;
}

namespace {

struct LineFit {
    double intercept = 0, slope = 0, r2 = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        res += e * e;
    }
    f.r2 = syy > 0 ? 1 - res / syy : 1.0;
    return f;
}

}  // namespace

DiracFit dirac_fit(const HoneycombGeometry& geo, double delta, double v_b, double max_window, const Vec2& direction,
                   int threads)
{
    if (!(delta > 0) || !(v_b > 0) || !(max_window > 0)) throw InvalidArgument("dirac_fit: bad arguments");
    if (direction.norm() == 0) throw InvalidArgument("dirac_fit: direction must be nonzero");
    const Vec2 e = direction.normalized();
    const double D1 = geo.mesh.area(0);
    auto freq = [&](double lam) { return v_b * std::sqrt(delta * std::max(lam, 0.0) / D1); };

    const Eigen::Matrix2cd Cs = honeycomb_capacitance(geo, geo.alpha_star, threads);
    const double c1 = Cs(0, 0).real();
    if (!(c1 > 0)) throw NumericalError("dirac_fit", "non-positive c1 at the Dirac point");
    DiracFit out;
    out.omega_star_formula = freq(c1);
    out.cone_gap = (freq(c1 + std::abs(Cs(0, 1))) - freq(c1 - std::abs(Cs(0, 1)))) / out.omega_star_formula;

    // c from a central difference of c2 along alpha_1
    const double hc = 1e-3 * geo.alpha_star.norm();
    const Eigen::Matrix2cd Cp = honeycomb_capacitance(geo, geo.alpha_star + Vec2(hc, 0), threads);
    const Eigen::Matrix2cd Cm = honeycomb_capacitance(geo, geo.alpha_star - Vec2(hc, 0), threads);
    out.c = (Cp(0, 1) - Cm(0, 1)) / (2 * hc);
    out.lambda0 = 0.5 * std::sqrt(v_b * v_b / (D1 * c1));
    out.lambda_formula = std::abs(out.c) * std::sqrt(delta) * out.lambda0;

    const int per_side = 6;
    double w = max_window;
    for (int attempt = 0; attempt < 8; ++attempt, w *= 0.5) {
        std::vector<double> t, lo, up;
        for (int s = -1; s <= 1; s += 2)
            for (int j = 1; j <= per_side; ++j) {
                const double tt = s * w * j / per_side;
                const Eigen::Matrix2cd C = honeycomb_capacitance(geo, geo.alpha_star + tt * e, threads);
                const double a = C(0, 0).real(), b = std::abs(C(0, 1));
                t.push_back(std::abs(tt));
                lo.push_back(freq(a - b));
                up.push_back(freq(a + b));
            }
        const LineFit fl = fit_line(t, lo), fu = fit_line(t, up);
        if (fl.r2 < 0.99 || fu.r2 < 0.99) continue;
        out.window = w;
        out.slope_lower = fl.slope;
        out.slope_upper = fu.slope;
        out.r2_lower = fl.r2;
        out.r2_upper = fu.r2;
        out.omega_star = 0.5 * (fl.intercept + fu.intercept);
        out.lambda = 0.5 * (fu.slope - fl.slope);
        if (out.cone_gap > 1e-2 * out.lambda * w / out.omega_star)
            throw NumericalError("dirac_fit", "cone not resolved: branch gap at the Dirac point too large");
        return out;
    }
    throw NumericalError("dirac_fit", "no window with linear branches (R^2 >= 0.99)");
}

std::vector<Eigen::Vector2cd> bloch_mode_eval(const HoneycombGeometry& geo, const Vec2& alpha,
                                              const std::vector<Vec2>& points, int threads)
{
    const double hmin = geo.mesh.max_panel_length();
    const Vec2 l1 = geo.lattice.vectors[0].head<2>(), l2 = geo.lattice.vectors[1].head<2>();
    for (const Vec2& x : points) {
        for (std::size_t p = 0; p < geo.mesh.n_panels(); ++p) {
            const auto [a, b] = geo.mesh.panel(p);
            for (int i = -1; i <= 1; ++i)
                for (int j = -1; j <= 1; ++j) {
                    const Vec2 sh = i * l1 + j * l2;
                    const Vec2 ab = b - a, ap = x - a - sh;
                    const double s = std::clamp(ap.dot(ab) / ab.squaredNorm(), 0.0, 1.0);
                    if ((ap - s * ab).norm() < hmin)
                        throw InvalidArgument("bloch_mode_eval: point within one panel length of the boundary");
                }
        }
    }
    MatC psi = honeycomb_densities(geo, alpha, threads);
    LatticeGreen2D g(geo.lattice, alpha);
    std::vector<Eigen::Vector2cd> out(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        out[i][0] = evaluate_single_layer_2d(geo.mesh, g, psi.col(0), points[i]);
        out[i][1] = evaluate_single_layer_2d(geo.mesh, g, psi.col(1), points[i]);
    });
    return out;
}

}  // namespace resona
