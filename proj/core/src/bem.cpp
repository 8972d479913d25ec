#include "resona/bem.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <mutex>

#include "resona/parallel.hpp"
#include "resona/quadrature.hpp"

namespace resona {

namespace {

const cplx I(0, 1);

struct PanelPoints {
    // per panel: points and area-scaled weights for the 7-point rule and the centroid
    std::vector<std::array<Vec3, 7>> pts;
    std::vector<std::array<double, 7>> w;
};

PanelPoints panel_points(const SurfaceMesh& mesh)
{
    const auto& rule = dunavant7_rule();
    PanelPoints pp;
    pp.pts.resize(mesh.n_panels());
    pp.w.resize(mesh.n_panels());
    for (std::size_t p = 0; p < mesh.n_panels(); ++p) {
        const auto tri = mesh.panel(p);
        for (int q = 0; q < 7; ++q) {
            const auto& b = rule.bary[q];
            pp.pts[p][q] = b[0] * tri[0] + b[1] * tri[1] + b[2] * tri[2];
            pp.w[p][q] = rule.weight[q] * mesh.area(p);
        }
    }
    return pp;
}

// Sum over the rule chosen for the pair (x, y) of f(point) * weight.
template <class F>
auto panel_rule_sum(const SurfaceMesh& mesh, const PanelPoints& pp, std::size_t x, std::size_t y,
                    SmoothRule rule, F&& f) -> decltype(f(Vec3()))
{
    if (x != y && rule == SmoothRule::Centroid) return f(mesh.centroid(y)) * mesh.area(y);
    decltype(f(Vec3())) s = f(pp.pts[y][0]) * pp.w[y][0];
    for (int q = 1; q < 7; ++q) s += f(pp.pts[y][q]) * pp.w[y][q];
    return s;
}

void warn_stderr(const std::string& m) { std::cerr << "warning: " << m << '\n'; }

std::function<void(const std::string&)>& warning_handler()
{
    static std::function<void(const std::string&)> h = warn_stderr;
    return h;
}

std::mutex warn_mutex;

// R + l computed without cancellation when l < 0
double r_plus_l(double R, double l, double R0sq)
{
    return l >= 0 ? R + l : R0sq / (R - l);
}

void put_u32(std::ostream& out, std::uint32_t v)
{
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double d)
{
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le(std::istream& in, int nbytes)
{
    unsigned char b[8] = {};
    if (!in.read(reinterpret_cast<char*>(b), nbytes)) throw InvalidArgument("truncated operator dump");
    std::uint64_t v = 0;
    for (int i = 0; i < nbytes; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

}  // namespace

void set_warning_handler(std::function<void(const std::string&)> handler)
{
    std::lock_guard<std::mutex> lock(warn_mutex);
    warning_handler() = handler ? std::move(handler) : warn_stderr;
}

void warn(const std::string& msg)
{
    std::lock_guard<std::mutex> lock(warn_mutex);
    if (warning_handler()) warning_handler()(msg);
}

double laplace_triangle_potential(const Vec3& p, const std::array<Vec3, 3>& v)
{
    Vec3 n = (v[1] - v[0]).cross(v[2] - v[0]);
    n.normalize();
    const double d = (p - v[0]).dot(n);
    const double ad = std::abs(d);
    const Vec3 rho = p - d * n;
    double sum = 0;
    for (int i = 0; i < 3; ++i) {
        const Vec3& a = v[i];
        const Vec3& b = v[(i + 1) % 3];
        Vec3 l = b - a;
        l.normalize();
        const Vec3 u = l.cross(n);
        const double P0 = (a - rho).dot(u);
        const double lm = (a - rho).dot(l), lp = (b - rho).dot(l);
        const double R0sq = P0 * P0 + d * d;
        const double Rm = (a - p).norm(), Rp = (b - p).norm();
        if (std::abs(P0) > 1e-14 * (Rm + Rp))
            sum += P0 * std::log(r_plus_l(Rp, lp, R0sq) / r_plus_l(Rm, lm, R0sq));
        if (ad > 0)
            sum -= ad * (std::atan(P0 * lp / (R0sq + ad * Rp)) - std::atan(P0 * lm / (R0sq + ad * Rm)));
    }
    return sum;
}

double solid_angle(const Vec3& p, const std::array<Vec3, 3>& v)
{
    const Vec3 a = v[0] - p, b = v[1] - p, c = v[2] - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    return 2.0 * std::atan2(num, den);
}

MatR laplace_single_layer(const SurfaceMesh& mesh, int threads)
{
    const std::size_t n = mesh.n_panels();
    MatR S(n, n);
    parallel_for(n, threads, [&](std::size_t x) {
        const Vec3& cx = mesh.centroid(x);
        for (std::size_t y = 0; y < n; ++y)
            S(x, y) = -laplace_triangle_potential(cx, mesh.panel(y)) / (4 * pi);
    });
    return S;
}

DenseOperator assemble_single_layer(const SurfaceMesh& mesh, const Kernel3D& kernel, const AssemblyOptions& opt)
{
    const std::size_t n = mesh.n_panels();
    DenseOperator op;
    op.kind = OperatorKind::SingleLayer;
    op.entries.resize(n, n);
    const PanelPoints pp = panel_points(mesh);
    const bool smooth = !kernel.trivial_remainder();
    parallel_for(n, opt.threads, [&](std::size_t x) {
        const Vec3& cx = mesh.centroid(x);
        for (std::size_t y = 0; y < n; ++y) {
            cplx v = -laplace_triangle_potential(cx, mesh.panel(y)) / (4 * pi);
            if (smooth)
                v += panel_rule_sum(mesh, pp, x, y, opt.rule,
                                    [&](const Vec3& q) { return kernel.remainder(cx - q); });
            op.entries(x, y) = v;
        }
    });
    if (!op.all_finite()) throw NumericalError("assemble_single_layer", "non-finite entries");
    return op;
}

DenseOperator assemble_single_layer(const SurfaceMesh& mesh, cplx k, const AssemblyOptions& opt)
{
    FreeSpaceKernel kern(k);
    DenseOperator op = assemble_single_layer(mesh, kern, opt);
    op.wavenumber = k;
    return op;
}

DenseOperator assemble_neumann_poincare(const SurfaceMesh& mesh, const Kernel3D& kernel,
                                        const AssemblyOptions& opt)
{
    const std::size_t n = mesh.n_panels();
    DenseOperator op;
    op.kind = OperatorKind::NeumannPoincare;
    op.entries.resize(n, n);
    const PanelPoints pp = panel_points(mesh);
    const bool smooth = !kernel.trivial_remainder();
    parallel_for(n, opt.threads, [&](std::size_t x) {
        const Vec3& cx = mesh.centroid(x);
        const Vec3& nx = mesh.normal(x);
        const auto tri = mesh.panel(x);
        for (std::size_t y = 0; y < n; ++y) {
            cplx v = 0;
            if (y != x) v = mesh.area(y) * solid_angle(mesh.centroid(y), tri) / (4 * pi * mesh.area(x));
            if (smooth)
                v += panel_rule_sum(mesh, pp, x, y, opt.rule, [&](const Vec3& q) {
                    return nx.cast<cplx>().dot(kernel.remainder_gradient(cx - q));  // dot conjugates its left side
                });
            op.entries(x, y) = v;
        }
    });
    if (!op.all_finite()) throw NumericalError("assemble_neumann_poincare", "non-finite entries");
    return op;
}

DenseOperator assemble_neumann_poincare(const SurfaceMesh& mesh, cplx k, const AssemblyOptions& opt)
{
    FreeSpaceKernel kern(k);
    DenseOperator op = assemble_neumann_poincare(mesh, kern, opt);
    op.wavenumber = k;
    return op;
}

ExpansionTerm expansion_term(char op, int order)
{
    if (op == 'S' && order == 1) return ExpansionTerm::S1;
    if (op == 'S' && order == 2) return ExpansionTerm::S2;
    if (op == 'S' && order == 3) return ExpansionTerm::S3;
    if (op == 'K' && order == 2) return ExpansionTerm::K2;
    if (op == 'K' && order == 3) return ExpansionTerm::K3;
    throw InvalidArgument(std::string("unsupported expansion term ") + op + std::to_string(order));
}

std::vector<DenseOperator> assemble_expansion_terms(const SurfaceMesh& mesh,
                                                    std::span<const ExpansionTerm> terms,
                                                    const AssemblyOptions& opt)
{
    const std::size_t n = mesh.n_panels();
    const PanelPoints pp = panel_points(mesh);
    std::vector<DenseOperator> out;
    for (ExpansionTerm t : terms) {
        DenseOperator op;
        op.entries.resize(n, n);
        switch (t) {
        case ExpansionTerm::S1: op.kind = OperatorKind::ExpansionS1; break;
        case ExpansionTerm::S2: op.kind = OperatorKind::ExpansionS2; break;
        case ExpansionTerm::S3: op.kind = OperatorKind::ExpansionS3; break;
        case ExpansionTerm::K2: op.kind = OperatorKind::ExpansionK2; break;
        case ExpansionTerm::K3: op.kind = OperatorKind::ExpansionK3; break;
        }
        parallel_for(n, opt.threads, [&](std::size_t x) {
            const Vec3& cx = mesh.centroid(x);
            const Vec3& nx = mesh.normal(x);
            for (std::size_t y = 0; y < n; ++y) {
                cplx v = 0;
                switch (t) {
                case ExpansionTerm::S1:
                    v = -I / (4 * pi) * mesh.area(y);
                    break;
                case ExpansionTerm::S2:
                    v = panel_rule_sum(mesh, pp, x, y, opt.rule,
                                       [&](const Vec3& q) { return (cx - q).norm(); }) / (8 * pi);
                    break;
                case ExpansionTerm::S3:
                    v = I * panel_rule_sum(mesh, pp, x, y, opt.rule,
                                           [&](const Vec3& q) { return (cx - q).squaredNorm(); }) / (24 * pi);
                    break;
                case ExpansionTerm::K2:
                    v = panel_rule_sum(mesh, pp, x, y, opt.rule, [&](const Vec3& q) {
                            const Vec3 d = cx - q;
                            const double r = d.norm();
                            return r > 0 ? d.dot(nx) / r : 0.0;
                        }) / (8 * pi);
                    break;
                case ExpansionTerm::K3:
                    v = I * panel_rule_sum(mesh, pp, x, y, opt.rule,
                                           [&](const Vec3& q) { return (cx - q).dot(nx); }) / (12 * pi);
                    break;
                }
                op.entries(x, y) = v;
            }
        });
        out.push_back(std::move(op));
    }
    return out;
}

void dump_operator(const DenseOperator& op, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write operator dump " + path.string());
    const auto n = static_cast<std::uint32_t>(op.entries.rows());
    put_u32(out, n);
    put_u32(out, static_cast<std::uint32_t>(op.kind));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            put_f64(out, op.entries(i, j).real());
            put_f64(out, op.entries(i, j).imag());
        }
}

DenseOperator load_operator(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open operator dump " + path.string());
    DenseOperator op;
    const auto n = static_cast<Eigen::Index>(get_le(in, 4));
    op.kind = static_cast<OperatorKind>(get_le(in, 4));
    op.entries.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double re, im;
            std::uint64_t a = get_le(in, 8), b = get_le(in, 8);
            std::memcpy(&re, &a, 8);
            std::memcpy(&im, &b, 8);
            op.entries(i, j) = cplx(re, im);
        }
    return op;
}

DenseSolver::DenseSolver(const MatC& A, const std::string& op) : lu_(A)
{
    rcond_ = lu_.rcond();
    if (!(rcond_ > 0) || !std::isfinite(rcond_)) throw NumericalError(op, "singular matrix");
    if (rcond_ < 1e-12) warn(op + ": condition number estimate above 1e12");
}

DenseSolverReal::DenseSolverReal(const MatR& A, const std::string& op) : lu_(A)
{
    rcond_ = lu_.rcond();
    if (!(rcond_ > 0) || !std::isfinite(rcond_)) throw NumericalError(op, "singular matrix");
    if (rcond_ < 1e-12) warn(op + ": condition number estimate above 1e12");
}

// ---------------------------------------------------------------------------

double log_segment_integral(const Vec2& p, const Vec2& a, const Vec2& b)
{
    Vec2 e = b - a;
    const double len = e.norm();
    e /= len;
    const Vec2 nrm(e.y(), -e.x());
    const double t0 = (p - a).dot(e);
    const double h = (p - a).dot(nrm);
    auto F = [h](double u) {
        // antiderivative of ln sqrt(u^2 + h^2)
        double s = u * u + h * h;
        double v = (u != 0.0 ? 0.5 * u * std::log(s) : 0.0) - u;
        if (h != 0.0) v += h * std::atan(u / h);
        return v;
    };
    return F(len - t0) - F(-t0);
}

MatC assemble_single_layer_2d(const CurveMesh& mesh, const LatticeGreen2D& g, int threads)
{
    const std::size_t n = mesh.n_panels();
    const GaussRule& gr = gauss_legendre(3);
    MatC S(n, n);
    parallel_for(n, threads, [&](std::size_t x) {
        const Vec2& cx = mesh.midpoint(x);
        for (std::size_t y = 0; y < n; ++y) {
            const auto [a, b] = mesh.panel(y);
            cplx v = log_segment_integral(cx, a, b) / (2 * pi);
            for (int q = 0; q < 3; ++q) {
                Vec2 pt = a + 0.5 * (gr.x[q] + 1) * (b - a);
                v += 0.5 * gr.w[q] * mesh.length(y) * g.remainder(cx - pt);
            }
            S(x, y) = v;
        }
    });
    if (!S.allFinite()) throw NumericalError("assemble_single_layer_2d", "non-finite entries");
    return S;
}

cplx evaluate_single_layer_2d(const CurveMesh& mesh, const LatticeGreen2D& g, const VecC& density, const Vec2& x)
{
    const GaussRule& gr = gauss_legendre(3);
    cplx s = 0;
    for (std::size_t y = 0; y < mesh.n_panels(); ++y) {
        const auto [a, b] = mesh.panel(y);
        cplx v = log_segment_integral(x, a, b) / (2 * pi);
        for (int q = 0; q < 3; ++q) {
            Vec2 pt = a + 0.5 * (gr.x[q] + 1) * (b - a);
            v += 0.5 * gr.w[q] * mesh.length(y) * g.remainder(x - pt);
        }
        s += v * density[static_cast<Eigen::Index>(y)];
    }
    return s;
}

}  // namespace resona
