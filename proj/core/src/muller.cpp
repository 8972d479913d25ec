#include "resona/muller.hpp"

#include <cmath>

namespace resona {

namespace {

// deterministic start vector
VecC start_vector(Eigen::Index n)
{
    VecC x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
    return x.normalized();
}

}  // namespace

cplx muller_root(const std::function<cplx(cplx)>& f, cplx x0, cplx x1, cplx x2, const MullerOptions& opt,
                 cplx center, double radius, int* iterations)
{
    cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
    for (int it = 1; it <= opt.max_iter; ++it) {
        const cplx q = (x2 - x1) / (x1 - x0);
        const cplx A = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
        const cplx B = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
        const cplx C = (1.0 + q) * f2;
        const cplx disc = std::sqrt(B * B - 4.0 * A * C);
        cplx den = std::abs(B + disc) >= std::abs(B - disc) ? B + disc : B - disc;
        cplx step;
        if (std::abs(den) == 0.0)
            step = (x2 - x1);  // degenerate parabola, nudge
        else
            step = -(x2 - x1) * 2.0 * C / den;
        const cplx x3 = x2 + step;
        if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag()))
            throw NumericalError("muller", "non-finite iterate");
        if (std::abs(x3 - center) > radius) throw NumericalError("muller", "root escaped the search disc");
        if (iterations) *iterations = it;
        if (std::abs(step) <= opt.step_tol * std::abs(x3)) return x3;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f(x2);
        if (f2 == 0.0) return x2;
    }
    throw NumericalError("muller", "no convergence in " + std::to_string(opt.max_iter) + " iterations");
}

double sigma_min_estimate(const MatC& A, int iterations)
{
    Eigen::PartialPivLU<MatC> lu(A);
    VecC x = start_vector(A.cols());
    for (int i = 0; i < iterations; ++i) {
        // x <- (A^H A)^-1 x
        VecC y = lu.adjoint().solve(x);
        y.normalize();
        VecC z = lu.solve(y);
        double nz = z.norm();
        if (!(nz > 0) || !std::isfinite(nz)) return 0.0;
        x = z / nz;
    }
    return (A * x).norm();
}

double norm2_estimate(const MatC& A, int iterations)
{
    VecC x = start_vector(A.cols());
    double s = 0;
    for (int i = 0; i < iterations; ++i) {
        VecC y = A.adjoint() * (A * x);
        s = std::sqrt(y.norm());
        x = y.normalized();
    }
    return s;
}

MullerResult refine_characteristic_value(const OperatorFamily& Aof, cplx guess, const MullerOptions& opt)
{
    if (guess == 0.0) throw InvalidArgument("refine_characteristic_value: guess must be nonzero");
    const double radius = opt.search_radius > 0 ? opt.search_radius : 0.5 * std::abs(guess);
    MullerResult res;
    cplx w = guess;
    for (int round = 0; round <= opt.restarts; ++round) {
        MatC A0 = Aof(w);
        Eigen::PartialPivLU<MatC> lu(A0);
        VecC v = start_vector(A0.cols()), u = v;
        for (int i = 0; i < 4; ++i) {
            v = lu.solve(v).normalized();
            u = lu.adjoint().solve(u).normalized();
        }
        auto f = [&](cplx z) {
            MatC Az = Aof(z);
            Eigen::PartialPivLU<MatC> l(Az);
            const VecC x = l.solve(v);
            if (!x.allFinite()) return cplx(0.0);  // exactly singular: on the root
            return 1.0 / u.dot(x);  // u.dot conjugates u
        };
        const double h = 1e-3 * std::abs(w);
        int iters = 0;
        w = muller_root(f, w - h, w + cplx(0, h), w, opt, guess, radius, &iters);
        res.iterations += iters;
        MatC Aw = Aof(w);
        res.omega = w;
        res.norm = norm2_estimate(Aw);
        res.sigma_min = sigma_min_estimate(Aw);
        res.certified = res.sigma_min < opt.residual_tol * res.norm;
        if (res.certified) return res;
    }
    throw NumericalError("refine_characteristic_value",
                         "residual sigma_min/||A|| = " + std::to_string(res.relative_residual()) +
                             " above tolerance");
}

// ---------------------------------------------------------------------------

CharacteristicOperator::CharacteristicOperator(const SurfaceMesh& mesh, const MaterialParams& params,
                                               KernelFactory factory, Form form, bool explicit_k2,
                                               const AssemblyOptions& opt)
    : mesh_(mesh), params_(params), factory_(std::move(factory)), form_(form), explicit_k2_(explicit_k2), opt_(opt)
{
    params_.validate();
    if (form_ == Form::SingleDensity && std::abs(params_.v() - params_.v_b()) > 1e-12 * params_.v())
        throw InvalidArgument("single-density form requires v = v_b");
    const auto n = static_cast<Eigen::Index>(mesh.n_panels());
    const int N = mesh.n_resonators();
    auto k0 = factory_(0.0);
    MatC S0 = assemble_single_layer(mesh, *k0, opt).entries;
    K0_ = assemble_neumann_poincare(mesh, *k0, opt).entries;

    MatC chi = MatC::Zero(n, N);
    Utilde_ = MatC::Zero(n, N);
    Ua_ = MatC::Zero(N, n);
    vol_ = VecR(N);
    for (Eigen::Index p = 0; p < n; ++p) {
        int r = mesh.resonator(p);
        chi(p, r) = 1.0;
        Utilde_(p, r) = 1.0 / mesh.surface_area(r);
        Ua_(r, p) = mesh.area(p);
    }
    for (int i = 0; i < N; ++i) vol_[i] = mesh.volume(i);
    DenseSolver lu(S0, "characteristic operator");
    Psi_ = lu.solve(chi);
    const VecC w = mesh.areas().cast<cplx>();
    MatC WPsi = w.asDiagonal() * Psi_;
    MatC G = Psi_.adjoint() * WPsi;
    Yh_ = G.partialPivLu().solve(WPsi.adjoint());
    MatC M0 = K0_;
    M0.diagonal().array() -= 0.5;
    defl_ = (M0 * Psi_) * Yh_;

    if (explicit_k2_) {
        ExpansionTerm t = ExpansionTerm::K2;
        MatC K2 = assemble_expansion_terms(mesh, std::span<const ExpansionTerm>(&t, 1), opt)[0].entries;
        MatC T = -(Ua_ * K2 * Psi_);
        for (int i = 0; i < N; ++i) T(i, i) -= vol_[i];
        F2_ = Utilde_ * T * Yh_;
    }
}

std::size_t CharacteristicOperator::size() const
{
    return form_ == Form::Block ? 2 * mesh_.n_panels() : mesh_.n_panels();
}

MatC CharacteristicOperator::corrected_np(cplx k, const MatC& K) const
{
    MatC out = K - defl_;
    if (explicit_k2_) {
        out += k * k * F2_;
    } else {
        MatC T = -(Ua_ * (K - K0_) * Psi_);
        for (Eigen::Index i = 0; i < T.rows(); ++i) T(i, i) -= k * k * vol_[i];
        out += Utilde_ * T * Yh_;
    }
    return out;
}

MatC CharacteristicOperator::operator()(cplx omega) const
{
    const cplx k = omega / params_.v(), kb = omega / params_.v_b();
    const auto n = static_cast<Eigen::Index>(mesh_.n_panels());
    const double delta = params_.delta();
    if (form_ == Form::SingleDensity) {
        auto kern = factory_(k);
        MatC A = corrected_np(k, assemble_neumann_poincare(mesh_, *kern, opt_).entries);
        A.diagonal().array() -= (1 + delta) / (2 * (1 - delta));
        return A;
    }
    auto kern = factory_(k);
    MatC S = assemble_single_layer(mesh_, *kern, opt_).entries;
    MatC K = assemble_neumann_poincare(mesh_, *kern, opt_).entries;
    MatC Sb, Kb;
    if (kb == k) {
        Sb = S;
        Kb = K;
    } else {
        auto kernb = factory_(kb);
        Sb = assemble_single_layer(mesh_, *kernb, opt_).entries;
        Kb = assemble_neumann_poincare(mesh_, *kernb, opt_).entries;
    }
    MatC A(2 * n, 2 * n);
    A.topLeftCorner(n, n) = Sb;
    A.topRightCorner(n, n) = -S;
    MatC Mb = corrected_np(kb, Kb);
    Mb.diagonal().array() -= 0.5;
    A.bottomLeftCorner(n, n) = Mb;
    K.diagonal().array() += 0.5;
    A.bottomRightCorner(n, n) = -delta * K;
    return A;
}

CharacteristicOperator finite_operator(const SurfaceMesh& mesh, const MaterialParams& params,
                                       const AssemblyOptions& opt)
{
    return CharacteristicOperator(
        mesh, params, [](cplx k) { return std::make_unique<FreeSpaceKernel>(k); },
        CharacteristicOperator::Form::Block, true, opt);
}

MullerResult refine_characteristic_value(const SurfaceMesh& mesh, const MaterialParams& params, cplx guess,
                                         const MullerOptions& opt, const AssemblyOptions& aopt)
{
    CharacteristicOperator A = finite_operator(mesh, params, aopt);
    return refine_characteristic_value([&](cplx w) { return A(w); }, guess, opt);
}

}  // namespace resona
