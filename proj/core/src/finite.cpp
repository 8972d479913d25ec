#include "resona/finite.hpp"

#include <algorithm>
#include <numeric>

namespace resona {

namespace {

// n x N indicator matrix
MatR indicators(const SurfaceMesh& mesh)
{
    MatR X = MatR::Zero(mesh.n_panels(), mesh.n_resonators());
    for (std::size_t p = 0; p < mesh.n_panels(); ++p) X(p, mesh.resonator(p)) = 1.0;
    return X;
}

}  // namespace

EquilibriumDensities solve_equilibrium_densities(const SurfaceMesh& mesh, int threads)
{
    if (mesh.n_panels() == 0) throw InvalidArgument("empty mesh");
    MatR S = laplace_single_layer(mesh, threads);
    DenseSolverReal lu(S, "solve_equilibrium_densities");
    EquilibriumDensities out;
    out.psi = lu.solve(indicators(mesh));
    out.rcond = lu.rcond();
    if (!out.psi.allFinite()) throw NumericalError("solve_equilibrium_densities", "non-finite densities");
    return out;
}

MatR CapacitanceMatrix::weighted() const
{
    MatR W = C;
    for (int i = 0; i < size(); ++i) W.row(i) /= volumes[i];
    return W;
}

CapacitanceMatrix capacitance_from_densities(const SurfaceMesh& mesh, const MatR& psi)
{
    const int N = mesh.n_resonators();
    CapacitanceMatrix cap;
    cap.C = MatR::Zero(N, N);
    for (std::size_t p = 0; p < mesh.n_panels(); ++p)
        cap.C.row(mesh.resonator(p)) -= mesh.area(p) * psi.row(p);
    cap.volumes = mesh.volumes();
    return cap;
}

CapacitanceMatrix capacitance_matrix(const SurfaceMesh& mesh, int threads)
{
    return capacitance_from_densities(mesh, solve_equilibrium_densities(mesh, threads).psi);
}

ResonanceSet resonances_leading_order(const CapacitanceMatrix& cap, const MaterialParams& params)
{
    params.validate();
    const int N = cap.size();
    if (N == 0) throw InvalidArgument("empty capacitance matrix");
    const double delta = params.delta(), vb = params.v_b(), v = params.v();

    // W^-1 C is similar to the symmetric W^-1/2 C W^-1/2
    VecR ws(N);
    for (int i = 0; i < N; ++i) ws[i] = 1.0 / std::sqrt(cap.volumes[i]);
    MatR Csym = 0.5 * (cap.C + cap.C.transpose());
    MatR B = ws.asDiagonal() * Csym * ws.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatR> es(B);
    if (es.info() != Eigen::Success) throw NumericalError("resonances_leading_order", "eigensolver failed");

    MatR V(N, N);
    for (int n = 0; n < N; ++n) {
        VecR x = ws.asDiagonal() * es.eigenvectors().col(n);
        x.normalize();
        double s = x.sum();
        if (std::abs(s) < 1e-12) {
            for (int i = 0; i < N; ++i)
                if (std::abs(x[i]) > 1e-12) {
                    s = x[i];
                    break;
                }
        }
        if (s < 0) x = -x;
        V.col(n) = x;
    }

    ResonanceSet res;
    Eigen::PartialPivLU<MatR> lu(V);
    res.v_condition = lu.rcond();
    bool defective = !(res.v_condition > 1e-12);
    VecR nu = VecR::Ones(N);
    if (defective)
        warn("resonances_leading_order: eigenvector matrix nearly defective, nu_n not computed");
    else
        nu = lu.solve(VecR::Ones(N));

    const VecR ones = VecR::Ones(N);
    for (int n = 0; n < N; ++n) {
        Mode m;
        m.lambda = es.eigenvalues()[n];
        if (m.lambda <= 0) throw NumericalError("resonances_leading_order", "non-positive capacitance eigenvalue");
        m.v = V.col(n);
        const double cv = ones.dot(Csym * m.v);  // v.CJCv = (1.Cv)^2
        double normD = 0;
        for (int i = 0; i < N; ++i) normD += cap.volumes[i] * m.v[i] * m.v[i];
        m.tau = vb * vb / (8 * pi * v) * cv * cv / normD;
        m.omega = cplx(std::sqrt(vb * vb * m.lambda * delta), -m.tau * delta);
        m.nu = nu[n];
        m.has_nu = !defective;
        res.modes.push_back(m);
    }
    for (int n = 0; n < N; ++n) {
        int mult = 0;
        for (int j = 0; j < N; ++j)
            if (std::abs(res.modes[j].lambda - res.modes[n].lambda) <= 1e-8 * std::abs(res.modes[n].lambda)) ++mult;
        res.modes[n].multiplicity = mult;
    }
    std::stable_sort(res.modes.begin(), res.modes.end(),
                     [](const Mode& a, const Mode& b) { return a.omega.real() < b.omega.real(); });
    return res;
}

double minnaert_frequency(double cap, double volume, const MaterialParams& params)
{
    return std::sqrt(cap * params.delta() / volume) * params.v_b();
}

cplx scattering_coefficient(double omega, const MaterialParams& params, double cap, double volume)
{
    params.validate();
    if (omega == 0.0) throw InvalidArgument("scattering_coefficient: omega must be nonzero");
    const double v = params.v(), vb = params.v_b(), delta = params.delta();
    const double wM = minnaert_frequency(cap, volume, params);
    const double gamma = (v + vb) * cap * omega / (8 * pi * v * vb) -
                         (v - vb) / v * vb * cap * cap * delta / (8 * pi * volume * omega);
    return cap / cplx(1.0 - (wM / omega) * (wM / omega), gamma);
}

cplx scattering_coefficient(double omega, const MaterialParams& params, const SurfaceMesh& mesh, int threads)
{
    if (mesh.n_resonators() != 1) throw InvalidArgument("scattering_coefficient: single resonator required");
    CapacitanceMatrix c = capacitance_matrix(mesh, threads);
    return scattering_coefficient(omega, params, c.C(0, 0), c.volumes[0]);
}

std::vector<cplx> modal_coefficients(cplx omega, cplx amplitude, const ResonanceSet& res)
{
    std::vector<cplx> a;
    for (const Mode& m : res.modes) {
        cplx den = omega * omega - m.omega * m.omega;
        if (std::abs(den) <= 1e-15 * std::abs(m.omega * m.omega))
            throw InvalidArgument("modal_coefficients: omega coincides with a resonance");
        a.push_back(-amplitude * m.nu * m.omega.real() * m.omega.real() / den);
    }
    return a;
}

void check_symmetric_dimer(const SurfaceMesh& mesh, double tol)
{
    if (mesh.n_resonators() != 2) throw InvalidArgument("symmetric dimer required: need two resonators");
    const double scale = mesh.bounding_radius(0) + mesh.center(0).norm();
    const Vec3 c0 = mesh.center(0), c1 = mesh.center(1);
    if ((c0 + c1).norm() > tol * scale) throw InvalidArgument("dimer not symmetric about the origin");
    if (std::hypot(c0.y(), c0.z()) > tol * scale) throw InvalidArgument("dimer axis not along x1");
    std::vector<Vec3> a, b;
    for (std::size_t p = 0; p < mesh.n_panels(); ++p) (mesh.resonator(p) == 0 ? a : b).push_back(mesh.centroid(p));
    if (a.size() != b.size()) throw InvalidArgument("dimer halves differ in panel count");
    // nearest reflected centroid; sorting breaks on round-off ties
    for (const Vec3& x : a) {
        double best = INFINITY;
        for (const Vec3& y : b) best = std::min(best, (x + y).squaredNorm());
        if (std::sqrt(best) > tol * scale) throw InvalidArgument("dimer halves are not point reflections");
    }
}

double dipole_weight(const SurfaceMesh& mesh, const MatR& psi)
{
    if (psi.cols() != 2) throw InvalidArgument("dipole_weight: two densities required");
    double P = 0;
    for (std::size_t p = 0; p < mesh.n_panels(); ++p)
        P += mesh.area(p) * mesh.centroid(p).x() * (psi(p, 0) - psi(p, 1));
    return P;
}

double dipole_weight(const SurfaceMesh& mesh, int threads)
{
    if (mesh.n_resonators() != 2) throw InvalidArgument("dipole_weight: dimer required");
    return dipole_weight(mesh, solve_equilibrium_densities(mesh, threads).psi);
}

DimerScatterer dimer_point_scatterer(const SurfaceMesh& mesh, cplx omega, const MaterialParams& params,
                                     int threads)
{
    check_symmetric_dimer(mesh, 1e-8);
    if (omega == 0.0) throw InvalidArgument("dimer_point_scatterer: omega must be nonzero");
    MatR S = laplace_single_layer(mesh, threads);
    DenseSolverReal lu(S, "dimer_point_scatterer");
    const std::size_t n = mesh.n_panels();
    MatR rhs(n, 5);
    rhs.leftCols(2) = indicators(mesh);
    for (std::size_t p = 0; p < n; ++p)
        for (int i = 0; i < 3; ++i) rhs(p, 2 + i) = mesh.centroid(p)[i];
    MatR sol = lu.solve(rhs);

    DimerScatterer out;
    const MatR psi = sol.leftCols(2);
    CapacitanceMatrix cap = capacitance_from_densities(mesh, psi);
    out.C11 = 0.5 * (cap.C(0, 0) + cap.C(1, 1));
    out.C12 = 0.5 * (cap.C(0, 1) + cap.C(1, 0));
    out.P = dipole_weight(mesh, psi);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (std::size_t p = 0; p < n; ++p) s += mesh.area(p) * sol(p, 2 + i) * mesh.centroid(p)[j];
            out.polarization(i, j) = s;
        }
    ResonanceSet res = resonances_leading_order(cap, params);
    out.omega1 = res.modes[0].omega;
    out.omega2 = res.modes[1].omega;
    const double C11sum = cap.C.sum();
    out.g0 = C11sum / (1.0 - out.omega1 * out.omega1 / (omega * omega));
    out.g1 = out.polarization.cast<cplx>();
    const double D = mesh.volume(0);
    const double vb = params.v_b();
    out.g1(0, 0) -= params.delta() * vb * vb * out.P * out.P /
                    (omega * omega * D * (1.0 - out.omega2 * out.omega2 / (omega * omega)));
    return out;
}

}  // namespace resona
