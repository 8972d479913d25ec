#pragma once

#include <functional>
#include <memory>

#include "resona/bem.hpp"
#include "resona/common.hpp"
#include "resona/geometry.hpp"
#include "resona/green.hpp"

namespace resona {

struct MullerOptions {
    int max_iter = 60;
    double step_tol = 1e-13;      // relative to |omega|
    double search_radius = 0.0;   // 0: half of |guess|
    double residual_tol = 1e-8;   // sigma_min / ||A||
    int restarts = 2;
};

struct MullerResult {
    cplx omega;
    int iterations = 0;
    double sigma_min = 0.0;
    double norm = 0.0;
    bool certified = false;
    double relative_residual() const { return sigma_min / norm; }
};

// Scalar Muller iteration from three starting points. Stops when the step
// falls below step_tol * |x|; throws if the iterate leaves the disc.
cplx muller_root(const std::function<cplx(cplx)>& f, cplx x0, cplx x1, cplx x2, const MullerOptions& opt,
                 cplx center, double radius, int* iterations = nullptr);

// Smallest singular value and 2-norm estimate by inverse / power iteration.
double sigma_min_estimate(const MatC& A, int iterations = 12);
double norm2_estimate(const MatC& A, int iterations = 12);

using OperatorFamily = std::function<MatC(cplx)>;

// Characteristic value of omega -> A(omega) near the guess. Muller runs on
// 1/(u^H A^-1 v) with u, v near-null vectors of A(guess); the result is then
// certified by sigma_min(A) < residual_tol * ||A||, restarting if needed.
MullerResult refine_characteristic_value(const OperatorFamily& A, cplx guess, const MullerOptions& opt = {});

using KernelFactory = std::function<std::unique_ptr<Kernel3D>(cplx k)>;

// Discretized A(omega, delta) of the transmission problem.
//   Block:         [[S^kb, -S^k], [-1/2 + K^kb*, -delta (1/2 + K^k*)]]
//   SingleDensity: -lambda I + K^k*, lambda = (1+delta)/(2(1-delta)), needs v = v_b
// K^kb* carries a right deflation so that its k = 0 kernel is exactly
// span{S_0^-1 chi_j}, and a rank-N term so that the area-weighted integrals
// of (K^k - K^0) psi_j equal -k^2 |D_i| delta_ij (explicit_k2: k^2 term only).
class CharacteristicOperator {
public:
    enum class Form { Block, SingleDensity };

    CharacteristicOperator(const SurfaceMesh& mesh, const MaterialParams& params, KernelFactory factory,
                           Form form, bool explicit_k2, const AssemblyOptions& opt = {});

    MatC operator()(cplx omega) const;
    std::size_t size() const;

private:
    MatC corrected_np(cplx k, const MatC& K) const;

    SurfaceMesh mesh_;
    MaterialParams params_;
    KernelFactory factory_;
    Form form_;
    bool explicit_k2_;
    AssemblyOptions opt_;
    MatC K0_;
    MatC defl_;   // (M0 Psi) Y^H
    MatC Utilde_; // n x N, indicators / surface area
    MatC Yh_;     // N x n
    MatC Ua_;     // N x n, area-weighted indicators
    MatC Psi_;
    MatC F2_;     // explicit k^2 correction
    VecR vol_;
};

CharacteristicOperator finite_operator(const SurfaceMesh& mesh, const MaterialParams& params,
                                       const AssemblyOptions& opt = {});

MullerResult refine_characteristic_value(const SurfaceMesh& mesh, const MaterialParams& params, cplx guess,
                                         const MullerOptions& opt = {}, const AssemblyOptions& aopt = {});

}  // namespace resona
