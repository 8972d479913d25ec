#include <algorithm>
#include <cmath>

#include "resona/green.hpp"
#include "resona/quadrature.hpp"

namespace resona {

namespace {

const cplx I(0, 1);
const double sqrtpi = std::sqrt(pi);

// Ewald spatial image term f(R), G_image = -e^{i alpha.m} f(|r-m|).
cplx ewald_f(double R, cplx k, double eta)
{
    if (k == 0.0) return std::erfc(eta * R) / (4 * pi * R);
    const cplx b = I * k / (2 * eta);
    const cplx e = std::exp(I * k * R);
    return (e * erfc_complex(eta * R + b) + erfc_complex(eta * R - b) / e) / (8 * pi * R);
}

cplx ewald_df(double R, cplx k, double eta)
{
    if (k == 0.0) {
        return -(2 * eta / sqrtpi) * std::exp(-eta * eta * R * R) / (4 * pi * R) -
               std::erfc(eta * R) / (4 * pi * R * R);
    }
    const cplx b = I * k / (2 * eta);
    const cplx e = std::exp(I * k * R);
    const cplx ep = e * erfc_complex(eta * R + b), em = erfc_complex(eta * R - b) / e;
    const cplx g = std::exp(-eta * eta * R * R + k * k / (4 * eta * eta));
    return (I * k * (ep - em) - (4 * eta / sqrtpi) * g) / (8 * pi * R) - (ep + em) / (8 * pi * R * R);
}

// 1/(4 pi R) - f(R), smooth at R = 0.
cplx ewald_self(double R, cplx k, double eta)
{
    if (k == 0.0) {
        if (eta * R < 1e-8) return eta / (2 * pi * sqrtpi);
        return std::erf(eta * R) / (4 * pi * R);
    }
    if (eta * R < 1e-8) {
        const cplx b = I * k / (2 * eta);
        const cplx erfb = 1.0 - erfc_complex(b);
        return (2.0 * I * k * erfb + (4 * eta / sqrtpi) * std::exp(k * k / (4 * eta * eta))) / (8 * pi);
    }
    return 1.0 / (4 * pi * R) - ewald_f(R, k, eta);
}

cplx ewald_dself(double R, cplx k, double eta)
{
    if (eta * R < 1e-8) return 0.0;
    if (k == 0.0) {
        return (2 * eta / sqrtpi) * std::exp(-eta * eta * R * R) / (4 * pi * R) -
               std::erf(eta * R) / (4 * pi * R * R);
    }
    return -1.0 / (4 * pi * R * R) - ewald_df(R, k, eta);
}

// smallest x with erfc(x) < tol
double erfc_cutoff(double tol)
{
    double x = 0.5;
    while (std::erfc(x) >= tol) x += 0.01;
    return x;
}

}  // namespace

QuasiMomentum QuasiMomentum::reduced(const Lattice& lat) const
{
    QuasiMomentum q = *this;
    for (int i = 0; i < lat.dim; ++i) {
        double f = q.alpha.dot(lat.vectors[i]) / (2 * pi);
        double shift = std::ceil(f - 0.5);
        q.alpha -= shift * lat.dual[i];
    }
    return q;
}

LatticeGreen3D::LatticeGreen3D(const Lattice& lat, const Vec3& alpha, cplx k, double tol, double eta)
    : lat_(lat), alpha_(alpha), k_(k)
{
    if (lat.dim != 3) throw InvalidArgument("LatticeGreen3D needs a 3D lattice");
    if (!(tol > 0 && tol < 1e-3)) throw InvalidArgument("Ewald tolerance must lie in (0, 1e-3)");
    const double cell = std::cbrt(lat.cell_volume);
    eta_ = eta > 0 ? eta : sqrtpi / cell;

    const double xc = erfc_cutoff(tol);
    rcut_ = xc / eta_;
    double rmax = 0;
    for (const auto& l : lat.vectors) rmax += 0.5 * l.norm();
    const double rlim = rcut_ + rmax;

    int N[3];
    for (int i = 0; i < 3; ++i) N[i] = int(std::ceil(rlim * lat.dual[i].norm() / (2 * pi))) + 1;
    for (int a = -N[0]; a <= N[0]; ++a)
        for (int b = -N[1]; b <= N[1]; ++b)
            for (int c = -N[2]; c <= N[2]; ++c) {
                Vec3 m = a * lat.vectors[0] + b * lat.vectors[1] + c * lat.vectors[2];
                if (m.norm() > rlim) continue;
                images_.push_back({m, std::exp(I * alpha.dot(m))});
            }
    // m = 0 first so remainder() can skip it cheaply
    std::stable_sort(images_.begin(), images_.end(),
                     [](const Image& x, const Image& y) { return x.m.norm() < y.m.norm(); });

    const double tcut = -std::log(tol) + 3.0;
    const double kc = 2 * eta_ * std::sqrt(tcut) + alpha.norm();
    for (int i = 0; i < 3; ++i) N[i] = int(std::ceil(kc * lat.vectors[i].norm() / (2 * pi))) + 1;
    for (int a = -N[0]; a <= N[0]; ++a)
        for (int b = -N[1]; b <= N[1]; ++b)
            for (int c = -N[2]; c <= N[2]; ++c) {
                Vec3 kap = alpha + a * lat.dual[0] + b * lat.dual[1] + c * lat.dual[2];
                const double kk = kap.squaredNorm();
                if (kk / (4 * eta_ * eta_) > tcut) continue;
                const cplx den = kk - k * k;
                if (std::abs(den) < 1e-12 * std::max(1.0, kk)) {
                    if (k == 0.0)
                        throw InvalidArgument("quasi-periodic Green's function: Gamma point with k = 0");
                    throw InvalidArgument("quasi-periodic Green's function: resonant denominator k = |alpha+q|");
                }
                const cplx w = -std::exp((k * k - kk) / (4 * eta_ * eta_)) / (lat.cell_volume * den);
                waves_.push_back({kap, w});
            }
}

cplx LatticeGreen3D::reduce(const Vec3& r, Vec3& r0, bool& shifted) const
{
    Vec3 m0 = Vec3::Zero();
    shifted = false;
    for (int i = 0; i < 3; ++i) {
        double f = std::round(r.dot(lat_.dual[i]) / (2 * pi));
        if (f != 0.0) shifted = true;
        m0 += f * lat_.vectors[i];
    }
    r0 = r - m0;
    return shifted ? std::exp(I * alpha_.dot(m0)) : cplx(1.0);
}

cplx LatticeGreen3D::spatial_term(double R) const { return ewald_f(R, k_, eta_); }
cplx LatticeGreen3D::spatial_term_deriv(double R) const { return ewald_df(R, k_, eta_); }
cplx LatticeGreen3D::self_remainder(double R) const { return ewald_self(R, k_, eta_); }
cplx LatticeGreen3D::self_remainder_deriv(double R) const { return ewald_dself(R, k_, eta_); }

cplx LatticeGreen3D::remainder(const Vec3& r) const
{
    Vec3 r0;
    bool shifted;
    const cplx ph = reduce(r, r0, shifted);
    cplx sum = 0;
    for (const auto& im : images_) {
        const double R = (r0 - im.m).norm();
        if (!shifted && im.m.squaredNorm() == 0.0) {
            sum += self_remainder(R);
            continue;
        }
        if (R > rcut_) continue;
        if (R == 0.0) throw InvalidArgument("quasi-periodic Green's function evaluated at a lattice point");
        sum -= im.phase * spatial_term(R);
    }
    for (const auto& w : waves_) sum += w.weight * std::exp(I * w.kappa.dot(r0));
    if (!shifted) return sum;
    return ph * sum + 1.0 / (4 * pi * r.norm());
}

Vec3c LatticeGreen3D::remainder_gradient(const Vec3& r) const
{
    Vec3 r0;
    bool shifted;
    const cplx ph = reduce(r, r0, shifted);
    Vec3c g = Vec3c::Zero();
    for (const auto& im : images_) {
        const Vec3 d = r0 - im.m;
        const double R = d.norm();
        if (!shifted && im.m.squaredNorm() == 0.0) {
            if (R > 0) g += (d / R).cast<cplx>() * self_remainder_deriv(R);
            continue;
        }
        if (R > rcut_) continue;
        g -= (d / R).cast<cplx>() * (im.phase * spatial_term_deriv(R));
    }
    for (const auto& w : waves_) g += w.kappa.cast<cplx>() * (I * w.weight * std::exp(I * w.kappa.dot(r0)));
    if (!shifted) return g;
    const double rn = r.norm();
    return ph * g - (r / (4 * pi * rn * rn * rn)).cast<cplx>();
}

cplx green_quasi_periodic(const Vec3& x, const Vec3& y, const Lattice& lat, const QuasiMomentum& alpha,
                          cplx k, double tol)
{
    if (alpha.is_gamma() && k == 0.0)
        throw InvalidArgument("quasi-periodic Green's function: Gamma point with k = 0");
    LatticeGreen3D g(lat, alpha.alpha, k, tol);
    return g.value(x - y);
}

// ---------------------------------------------------------------------------

ChainGreen::ChainGreen(double L, double alpha, cplx k, double tol, double eta)
    : L_(L), alpha_(alpha), k_(k), tol_(tol)
{
    if (!(L > 0)) throw InvalidArgument("chain period must be positive");
    if (!(tol > 0 && tol < 1e-3)) throw InvalidArgument("chain tolerance must lie in (0, 1e-3)");
    eta_ = eta > 0 ? eta : sqrtpi / L;
    const double rcut = erfc_cutoff(tol) / eta_;
    jmax_images_ = int(std::ceil(rcut / L)) + 1;

    const int nmax = 80;
    inv_fact_.resize(nmax + 1);
    inv_fact_[0] = 1;
    for (int n = 1; n <= nmax; ++n) inv_fact_[n] = inv_fact_[n - 1] / n;

    const double xcut = -std::log(tol) + 10.0;
    const int jq = int(std::ceil((2 * eta_ * std::sqrt(xcut) + std::abs(alpha)) * L / (2 * pi))) + 1;
    for (int j = -jq; j <= jq; ++j) {
        const double kap = alpha + 2 * pi * j / L;
        const cplx x = (kap * kap - k * k) / (4 * eta_ * eta_);
        if (x.real() > xcut) continue;
        if (std::abs(x) < 1e-14) {
            if (k == 0.0) throw InvalidArgument("chain Green's function: Gamma point with k = 0");
            throw InvalidArgument("chain Green's function: resonant denominator k = |alpha+q|");
        }
        if (x.real() <= 0)
            throw InvalidArgument("chain Green's function: k exceeds |alpha+q| (radiating chain mode)");
        kappa_.push_back(kap);
        std::vector<cplx> e(nmax + 1);
        for (int n = 0; n <= nmax; ++n) e[n] = expint_n(n + 1, x);
        en_.push_back(std::move(e));
    }
}

cplx ChainGreen::spatial_term(double R) const { return ewald_f(R, k_, eta_); }
cplx ChainGreen::spatial_term_deriv(double R) const { return ewald_df(R, k_, eta_); }
cplx ChainGreen::self_remainder(double R) const { return ewald_self(R, k_, eta_); }
cplx ChainGreen::self_remainder_deriv(double R) const { return ewald_dself(R, k_, eta_); }

void ChainGreen::spectral(double x1, double rho, cplx& val, cplx& d1, cplx& dr) const
{
    const double t = eta_ * rho;
    if (t > 3.0) throw InvalidArgument("chain Green's function: transverse distance too large");
    const double t2 = t * t;
    const int nmax = static_cast<int>(inv_fact_.size()) - 1;
    val = d1 = dr = 0;
    for (std::size_t q = 0; q < kappa_.size(); ++q) {
        const auto& e = en_[q];
        cplx s = e[0], sd = 0;
        double p = 1.0;  // (-t^2)^n
        for (int n = 1; n <= nmax; ++n) {
            // d/drho of (-eta^2 rho^2)^n / n! = 2 n (-eta^2)^n rho^{2n-1} / n!
            sd += 2.0 * (-eta_ * eta_) * p * inv_fact_[n - 1] * e[n];
            p *= -t2;
            cplx term = p * inv_fact_[n] * e[n];
            s += term;
            if (std::abs(term) < 1e-18 * std::abs(s) && n > 2) break;
        }
        const cplx ph = std::exp(I * kappa_[q] * x1);
        val += ph * s;
        d1 += I * kappa_[q] * ph * s;
        dr += ph * sd;  // already divided by rho
    }
    const double c = -1.0 / (4 * pi * L_);
    val *= c;
    d1 *= c;
    dr *= c;
}

cplx ChainGreen::remainder(const Vec3& r) const
{
    const double j0 = std::round(r.x() / L_);
    const bool shifted = j0 != 0.0;
    Vec3 r0 = r;
    r0.x() -= j0 * L_;
    const double rho = std::hypot(r0.y(), r0.z());
    cplx sum = 0;
    for (int j = -jmax_images_; j <= jmax_images_; ++j) {
        Vec3 d = r0;
        d.x() -= j * L_;
        const double R = d.norm();
        if (!shifted && j == 0) {
            sum += self_remainder(R);
            continue;
        }
        if (R == 0.0) throw InvalidArgument("chain Green's function: on-axis coincidence");
        sum -= std::exp(I * (alpha_ * L_ * j)) * spatial_term(R);
    }
    cplx v, d1, dr;
    spectral(r0.x(), rho, v, d1, dr);
    sum += v;
    if (!shifted) return sum;
    return std::exp(I * (alpha_ * L_ * j0)) * sum + 1.0 / (4 * pi * r.norm());
}

Vec3c ChainGreen::remainder_gradient(const Vec3& r) const
{
    const double j0 = std::round(r.x() / L_);
    const bool shifted = j0 != 0.0;
    Vec3 r0 = r;
    r0.x() -= j0 * L_;
    const double rho = std::hypot(r0.y(), r0.z());
    Vec3c g = Vec3c::Zero();
    for (int j = -jmax_images_; j <= jmax_images_; ++j) {
        Vec3 d = r0;
        d.x() -= j * L_;
        const double R = d.norm();
        if (!shifted && j == 0) {
            if (R > 0) g += (d / R).cast<cplx>() * self_remainder_deriv(R);
            continue;
        }
        g -= (d / R).cast<cplx>() * (std::exp(I * (alpha_ * L_ * j)) * spatial_term_deriv(R));
    }
    cplx v, d1, dr;
    spectral(r0.x(), rho, v, d1, dr);
    g += Vec3c(d1, dr * r0.y(), dr * r0.z());
    if (!shifted) return g;
    const double rn = r.norm();
    return std::exp(I * (alpha_ * L_ * j0)) * g - (r / (4 * pi * rn * rn * rn)).cast<cplx>();
}

cplx green_quasi_1d_chain(const Vec3& x, const Vec3& y, double alpha, double L, double tol)
{
    if (!(alpha > -pi / L && alpha <= pi / L))
        throw InvalidArgument("chain quasi-momentum must lie in (-pi/L, pi/L]");
    ChainGreen g(L, alpha, 0.0, tol);
    return g.value(x - y);
}

// ---------------------------------------------------------------------------

LatticeGreen2D::LatticeGreen2D(const Lattice& lat, const Vec2& alpha, double tol, double eta)
    : alpha_(alpha)
{
    if (lat.dim != 2) throw InvalidArgument("LatticeGreen2D needs a 2D lattice");
    l1_ = lat.vectors[0].head<2>();
    l2_ = lat.vectors[1].head<2>();
    Eigen::Matrix2d Lm;
    Lm.col(0) = l1_;
    Lm.col(1) = l2_;
    frac_ = Lm.inverse();
    area_ = std::abs(Lm.determinant());
    eta_ = eta > 0 ? eta : sqrtpi / std::sqrt(area_);
    const Vec2 d1 = lat.dual[0].head<2>(), d2 = lat.dual[1].head<2>();

    // E1(u) < tol for u > ucut
    double ucut = 1.0;
    while (expint_e1(ucut) >= tol) ucut += 0.05;
    const double rlim = std::sqrt(ucut) / eta_ + 0.5 * (l1_.norm() + l2_.norm());
    int N1 = int(std::ceil(rlim * d1.norm() / (2 * pi))) + 1;
    int N2 = int(std::ceil(rlim * d2.norm() / (2 * pi))) + 1;
    for (int a = -N1; a <= N1; ++a)
        for (int b = -N2; b <= N2; ++b) {
            Vec2 m = a * l1_ + b * l2_;
            if (m.norm() > rlim) continue;
            images_.push_back({m, std::exp(I * alpha.dot(m))});
        }
    std::stable_sort(images_.begin(), images_.end(),
                     [](const Image& x, const Image& y) { return x.m.norm() < y.m.norm(); });

    const double tcut = -std::log(tol) + 3.0;
    const double kc = 2 * eta_ * std::sqrt(tcut) + alpha.norm();
    N1 = int(std::ceil(kc * l1_.norm() / (2 * pi))) + 1;
    N2 = int(std::ceil(kc * l2_.norm() / (2 * pi))) + 1;
    for (int a = -N1; a <= N1; ++a)
        for (int b = -N2; b <= N2; ++b) {
            Vec2 kap = alpha + a * d1 + b * d2;
            double kk = kap.squaredNorm();
            if (kk / (4 * eta_ * eta_) > tcut) continue;
            if (kk < 1e-24) throw InvalidArgument("2D quasi-periodic Green's function: Gamma point");
            waves_.push_back({kap, -std::exp(-kk / (4 * eta_ * eta_)) / (area_ * kk)});
        }
}

cplx LatticeGreen2D::reduce(const Vec2& r, Vec2& r0, bool& shifted) const
{
    Vec2 f = frac_ * r;
    double a = std::round(f.x()), b = std::round(f.y());
    shifted = a != 0.0 || b != 0.0;
    Vec2 m0 = a * l1_ + b * l2_;
    r0 = r - m0;
    return shifted ? std::exp(I * alpha_.dot(m0)) : cplx(1.0);
}

cplx LatticeGreen2D::value(const Vec2& r) const
{
    double n = r.norm();
    if (n == 0.0) throw InvalidArgument("2D Green's function evaluated at the origin");
    return remainder(r) + std::log(n) / (2 * pi);
}

cplx LatticeGreen2D::remainder(const Vec2& r) const
{
    Vec2 r0;
    bool shifted;
    const cplx ph = reduce(r, r0, shifted);
    cplx sum = 0;
    for (const auto& im : images_) {
        const double R = (r0 - im.m).norm();
        const double u = eta_ * eta_ * R * R;
        if (!shifted && im.m.squaredNorm() == 0.0) {
            sum += -(expint_ein(u) - euler_gamma - 2 * std::log(eta_)) / (4 * pi);
            continue;
        }
        if (u > 60) continue;
        if (R == 0.0) throw InvalidArgument("2D Green's function evaluated at a lattice point");
        sum -= im.phase * expint_e1(u) / (4 * pi);
    }
    for (const auto& w : waves_) sum += w.weight * std::exp(I * w.kappa.dot(r0));
    if (!shifted) return sum;
    return ph * sum - std::log(r.norm()) / (2 * pi);
}

}  // namespace resona
