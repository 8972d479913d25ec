#include "resona/green.hpp"

#include <cmath>

namespace resona {

cplx green_free(const Vec3& x, cplx k)
{
    double r = x.norm();
    if (!(r > 0)) throw InvalidArgument("green_free: x must be nonzero");
    return -std::exp(cplx(0, 1) * k * r) / (4 * pi * r);
}

cplx FreeSpaceKernel::remainder(const Vec3& rv) const
{
    if (k_ == 0.0) return 0.0;
    const double r = rv.norm();
    const cplx ik = cplx(0, 1) * k_;
    if (std::abs(k_) * r < 1e-3) {
        // -(1/4pi) sum_{n>=1} (ik)^n r^{n-1} / n!
        cplx term = ik, sum = ik;
        for (int n = 2; n <= 6; ++n) {
            term *= ik * r / double(n);
            sum += term;
        }
        return -sum / (4 * pi);
    }
    return -(std::exp(ik * r) - 1.0) / (4 * pi * r);
}

Vec3c FreeSpaceKernel::remainder_gradient(const Vec3& rv) const
{
    const double r = rv.norm();
    if (k_ == 0.0 || r == 0.0) return Vec3c::Zero();
    const cplx ik = cplx(0, 1) * k_;
    cplx d;
    if (std::abs(k_) * r < 1e-3) {
        // -(1/4pi) sum_{n>=2} (ik)^n (n-1) r^{n-2} / n!
        cplx t = ik * ik / 2.0, sum = t;  // t = (ik)^n r^{n-2} / n!
        for (int n = 3; n <= 7; ++n) {
            t *= ik * r / double(n);
            sum += t * double(n - 1);
        }
        d = -sum / (4 * pi);
    } else {
        cplx e = std::exp(ik * r);
        d = -(ik * r * e - (e - 1.0)) / (4 * pi * r * r);
    }
    return (rv / r).cast<cplx>() * d;
}

}  // namespace resona
