#include "resona/lattice_bands.hpp"

#include <cmath>

#include "resona/parallel.hpp"

namespace resona {

double quasi_capacitance(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha, const AssemblyOptions& opt)
{
    if (mesh.n_resonators() != 1) throw InvalidArgument("quasi_capacitance: one resonator per cell expected");
    QuasiMomentum q{alpha};
    if (q.reduced(lat).is_gamma()) throw InvalidArgument("quasi_capacitance: alpha at Gamma is not allowed");
    LatticeGreen3D g(lat, alpha, 0.0);
    MatC S = assemble_single_layer(mesh, g, opt).entries;
    DenseSolver lu(S, "quasi_capacitance");
    VecC psi = lu.solve(VecC(VecC::Ones(S.rows())));
    cplx cap = -mesh.areas().cast<cplx>().dot(psi);
    if (std::abs(cap.imag()) > 1e-6 * std::abs(cap.real()))
        warn("quasi_capacitance: imaginary residue " + std::to_string(cap.imag()));
    return cap.real();
}

double band_omega1(double cap_alpha, double volume, double delta, double v_b)
{
    if (!(cap_alpha >= 0) || !(volume > 0) || !(delta > 0) || !(v_b > 0))
        throw InvalidArgument("band_omega1: bad arguments");
    return v_b * std::sqrt(delta * cap_alpha / volume);
}

double band_omega1(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha, double delta, double v_b,
                   const AssemblyOptions& opt)
{
    return band_omega1(quasi_capacitance(mesh, lat, alpha, opt), mesh.volume(0), delta, v_b);
}

Vec3 cubic_symmetry_point(const std::string& name, double a)
{
    const double p = pi / a;
    if (name == "G" || name == "Gamma") return Vec3::Zero();
    if (name == "X") return Vec3(p, 0, 0);
    if (name == "M") return Vec3(p, p, p);
    throw InvalidArgument("unknown symmetry point '" + name + "' (use G, X, M)");
}

std::vector<Vec3> brillouin_path(const std::vector<Vec3>& v, int n, double gamma_offset)
{
    if (v.size() < 2) throw InvalidArgument("path needs at least two vertices");
    if (n < 1) throw InvalidArgument("path needs at least one sample per leg");
    std::vector<Vec3> pts;
    for (std::size_t leg = 0; leg + 1 < v.size(); ++leg) {
        const Vec3 a = v[leg], b = v[leg + 1];
        for (int j = 0; j < n; ++j) pts.push_back(a + (b - a) * (double(j) / n));
    }
    pts.push_back(v.back());
    // nudge Gamma samples into the adjacent leg
    const std::size_t total = pts.size();
    for (std::size_t i = 0; i < total; ++i) {
        if (pts[i].norm() > 1e-14) continue;
        const std::size_t leg = std::min(i / n, v.size() - 2);
        const Vec3 a = v[leg], b = v[leg + 1];
        // last vertex: move back along the final leg
        pts[i] += gamma_offset * (i == total - 1 ? a - b : b - a);
    }
    return pts;
}

BandTable band_sweep(const SurfaceMesh& mesh, const Lattice& lat, const std::vector<std::string>& path, int n,
                     double delta, double v_b, int threads, SmoothRule rule)
{
    if (lat.dim != 3) throw InvalidArgument("band_sweep: three-dimensional lattice required");
    const double a = lat.vectors[0].norm();
    std::vector<Vec3> verts;
    for (const auto& s : path) verts.push_back(cubic_symmetry_point(s, a));
    std::vector<Vec3> pts = brillouin_path(verts, n);
    BandTable t;
    t.labels = path;
    for (std::size_t i = 0; i < path.size(); ++i) t.vertex_rows.push_back(i * n);
    t.rows.resize(pts.size());
    AssemblyOptions opt{1, rule};
    parallel_for(pts.size(), threads, [&](std::size_t i) {
        BandRow r;
        r.alpha = pts[i];
        r.cap = quasi_capacitance(mesh, lat, pts[i], opt);
        r.omega1 = band_omega1(r.cap, mesh.volume(0), delta, v_b);
        t.rows[i] = r;
    });
    return t;
}

HomogenizedTensor homogenized_tensor(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& astar, double h,
                                     double v_b, bool auto_halve, const AssemblyOptions& opt)
{
    if (!(h > 0)) throw InvalidArgument("homogenized_tensor: step must be positive");
    HomogenizedTensor out;
    out.cap_star = quasi_capacitance(mesh, lat, astar, opt);
    const double c0 = out.cap_star;
    auto cap = [&](const Vec3& d) { return quasi_capacitance(mesh, lat, astar + d, opt); };
    for (int attempt = 0; attempt < 5; ++attempt) {
        Eigen::Matrix3d H;
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e[i] = h;
            H(i, i) = (cap(e) - 2 * c0 + cap(-e)) / (h * h);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                Vec3 e = Vec3::Zero();
                e[i] = h;
                e[j] = h;
                const double dd = (cap(e) - 2 * c0 + cap(-e)) / (h * h);  // H_ii + H_jj + 2 H_ij
                H(i, j) = H(j, i) = 0.5 * (dd - H(i, i) - H(j, j));
            }
        const Vec3 d = Vec3::Constant(h);
        const double quad = 0.5 * d.dot(H * d);
        out.residual = std::abs(cap(d) - c0 - quad);
        out.relative_residual = out.residual / std::max(std::abs(quad), 1e-300);
        out.hessian = H;
        out.step = h;
        out.lambda = -(v_b * v_b / (2 * mesh.volume(0))) * H;
        if (!auto_halve || out.relative_residual < 1e-2) return out;
        h *= 0.5;
    }
    throw NumericalError("homogenized_tensor", "non-quadratic residual above threshold");
}

DispersionCheck dispersion_check_above_gap(const Eigen::Matrix3d& lambda, double omega, double omega1_star,
                                           double delta)
{
    if (!(delta > 0)) throw InvalidArgument("dispersion_check_above_gap: delta must be positive");
    DispersionCheck c;
    c.beta = (omega1_star * omega1_star - omega * omega) / delta;
    c.propagating = c.beta > 0;
    const double mean = lambda.trace() / 3.0;
    if (c.propagating && mean > 0) c.alpha_sq = c.beta / mean;
    return c;
}

MullerResult refine_band_frequency(const SurfaceMesh& mesh, const Lattice& lat, const Vec3& alpha,
                                   const MaterialParams& params, double guess, const MullerOptions& mopt,
                                   const AssemblyOptions& opt)
{
    CharacteristicOperator A(
        mesh, params, [&lat, alpha](cplx k) { return std::make_unique<LatticeGreen3D>(lat, alpha, k); },
        CharacteristicOperator::Form::Block, false, opt);
    return refine_characteristic_value([&](cplx w) { return A(w); }, cplx(guess, 0.0), mopt);
}

}  // namespace resona
