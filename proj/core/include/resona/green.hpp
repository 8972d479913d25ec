#pragma once

#include <vector>

#include "resona/common.hpp"
#include "resona/geometry.hpp"

namespace resona {

// -e^{ik|x|} / (4 pi |x|)
cplx green_free(const Vec3& x, cplx k);

struct QuasiMomentum {
    Vec3 alpha = Vec3::Zero();
    double gamma_tol = 1e-9;

    bool is_gamma() const { return alpha.norm() < gamma_tol; }
    // Reduced to the first Brillouin parallelepiped of the lattice, components
    // of alpha.l_i / (2 pi) in (-1/2, 1/2].
    QuasiMomentum reduced(const Lattice& lat) const;
};

// Green's function split as G(r) = -1/(4 pi |r|) + R(r). Assembly integrates
// the Laplace part analytically and R with a panel rule.
class Kernel3D {
public:
    virtual ~Kernel3D() = default;
    virtual cplx remainder(const Vec3& r) const = 0;
    virtual Vec3c remainder_gradient(const Vec3& r) const = 0;
    // True when R vanishes identically (Laplace).
    virtual bool trivial_remainder() const { return false; }

    cplx value(const Vec3& r) const { return remainder(r) - 1.0 / (4 * pi * r.norm()); }
    Vec3c gradient(const Vec3& r) const
    {
        double n = r.norm();
        return remainder_gradient(r) + (r / (4 * pi * n * n * n)).cast<cplx>();
    }
};

class FreeSpaceKernel final : public Kernel3D {
public:
    explicit FreeSpaceKernel(cplx k) : k_(k) {}
    cplx remainder(const Vec3& r) const override;
    Vec3c remainder_gradient(const Vec3& r) const override;
    bool trivial_remainder() const override { return k_ == 0.0; }
    cplx wavenumber() const { return k_; }

private:
    cplx k_;
};

// Quasi-periodic Green's function of a 3D Bravais lattice,
// (1/|Y|) sum_q e^{i(alpha+q).r} / (k^2 - |alpha+q|^2), by Ewald splitting.
class LatticeGreen3D final : public Kernel3D {
public:
    // eta <= 0 picks sqrt(pi) / cell size.
    LatticeGreen3D(const Lattice& lat, const Vec3& alpha, cplx k = 0.0, double tol = 1e-12,
                   double eta = 0.0);

    cplx remainder(const Vec3& r) const override;
    Vec3c remainder_gradient(const Vec3& r) const override;

    double eta() const { return eta_; }
    std::size_t n_images() const { return images_.size(); }
    std::size_t n_waves() const { return waves_.size(); }

private:
    // r = r0 + m0 with r0 in the centred cell; returns phase e^{i alpha.m0}.
    cplx reduce(const Vec3& r, Vec3& r0, bool& shifted) const;
    cplx spatial_term(double R) const;           // f(R) with G_m = -f(|r-m|)
    cplx spatial_term_deriv(double R) const;     // f'(R)
    cplx self_remainder(double R) const;         // 1/(4 pi R) - f(R)
    cplx self_remainder_deriv(double R) const;

    Lattice lat_;
    Vec3 alpha_;
    cplx k_;
    double eta_;
    struct Image {
        Vec3 m;
        cplx phase;
    };
    struct Wave {
        Vec3 kappa;
        cplx weight;  // -(1/|Y|) e^{(k^2-|kappa|^2)/(4 eta^2)} / (|kappa|^2 - k^2)
    };
    std::vector<Image> images_;
    std::vector<Wave> waves_;
    double rcut_;
};

cplx green_quasi_periodic(const Vec3& x, const Vec3& y, const Lattice& lat,
                          const QuasiMomentum& alpha, cplx k = 0.0, double tol = 1e-12);

// Chain of period L along x1 in 3D:
// -sum_m e^{i alpha L m} e^{ik|r - mL e1|} / (4 pi |r - mL e1|).
class ChainGreen final : public Kernel3D {
public:
    ChainGreen(double L, double alpha, cplx k = 0.0, double tol = 1e-12, double eta = 0.0);

    cplx remainder(const Vec3& r) const override;
    Vec3c remainder_gradient(const Vec3& r) const override;

    double period() const { return L_; }
    double alpha() const { return alpha_; }

private:
    cplx spatial_term(double R) const;
    cplx spatial_term_deriv(double R) const;
    cplx self_remainder(double R) const;
    cplx self_remainder_deriv(double R) const;
    // spectral part and its x1 / radial derivatives at (x1, rho)
    void spectral(double x1, double rho, cplx& val, cplx& d1, cplx& drho_over_rho) const;

    double L_, alpha_;
    cplx k_;
    double eta_, tol_;
    int jmax_images_;
    std::vector<double> kappa_;
    std::vector<std::vector<cplx>> en_;  // E_{n+1}(x_q), n = 0..nmax
    std::vector<double> inv_fact_;
};

cplx green_quasi_1d_chain(const Vec3& x, const Vec3& y, double alpha, double L, double tol = 1e-12);

// 2D quasi-periodic Laplace kernel, locally (1/2 pi) ln|r|:
// -(1/|Y|) sum_q e^{i(alpha+q).r} / |alpha+q|^2.
class LatticeGreen2D {
public:
    LatticeGreen2D(const Lattice& lat, const Vec2& alpha, double tol = 1e-12, double eta = 0.0);

    cplx value(const Vec2& r) const;
    // value - (1/2 pi) ln|r|
    cplx remainder(const Vec2& r) const;
    double eta() const { return eta_; }

private:
    cplx reduce(const Vec2& r, Vec2& r0, bool& shifted) const;

    Vec2 l1_, l2_, alpha_;
    Eigen::Matrix2d frac_;  // maps r to lattice coordinates
    double area_, eta_;
    struct Image {
        Vec2 m;
        cplx phase;
    };
    struct Wave {
        Vec2 kappa;
        double weight;
    };
    std::vector<Image> images_;
    std::vector<Wave> waves_;
};

}  // namespace resona
