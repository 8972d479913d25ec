#include "resona/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace resona {

const TriangleRule& centroid_rule()
{
    static const TriangleRule r{{{1.0 / 3, 1.0 / 3, 1.0 / 3}}, {1.0}};
    return r;
}

const TriangleRule& dunavant7_rule()
{
    static const TriangleRule r = [] {
        TriangleRule t;
        const double a1 = 0.059715871789770, b1 = 0.470142064105115;
        const double a2 = 0.797426985353087, b2 = 0.101286507323456;
        const double w1 = 0.132394152788506, w2 = 0.125939180544827;
        t.bary = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
                  {a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
                  {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}};
        t.weight = {0.225, w1, w1, w1, w2, w2, w2};
        return t;
    }();
    return r;
}

const GaussRule& gauss_legendre(int n)
{
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            dp = n * (z * p0 - p1) / (z * z - 1);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        g.x[i] = -z;
        g.x[n - 1 - i] = z;
        g.w[i] = g.w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
    }
    return cache.emplace(n, std::move(g)).first->second;
}

cplx erfc_complex(cplx z)
{
    const double a = z.real(), b = z.imag();
    if (b == 0.0) return std::erfc(a);
    // erfc(a+ib) = erfc(a) - (2i/sqrt(pi)) int_0^b exp(-(a+is)^2) ds
    const double ab = std::abs(b);
    static const GaussRule& g12 = gauss_legendre(12);
    static const GaussRule& g20 = gauss_legendre(20);
    static const GaussRule& g32 = gauss_legendre(32);
    const GaussRule& g = ab < 0.3 ? g12 : ab < 1.0 ? g20 : g32;
    cplx acc = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        double s = 0.5 * b * (g.x[i] + 1);
        cplx t(a, s);
        acc += g.w[i] * std::exp(-t * t);
    }
    acc *= 0.5 * b;
    return std::erfc(a) - cplx(0, 2 / std::sqrt(pi)) * acc;
}

cplx expint_n(int n, cplx x)
{
    if (n < 1) throw InvalidArgument("expint_n needs n >= 1");
    const double eps = 1e-16;
    const int maxit = 2000;
    if (std::abs(x) > 1.0) {
        // modified Lentz continued fraction
        cplx b = x + double(n), c = 1e300, d = 1.0 / b, h = d;
        for (int i = 1; i <= maxit; ++i) {
            double an = -double(i) * (n - 1 + i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            cplx del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < eps) return h * std::exp(-x);
        }
        throw NumericalError("expint_n", "continued fraction did not converge");
    }
    const int nm1 = n - 1;
    cplx ans = nm1 != 0 ? cplx(1.0 / nm1) : -std::log(x) - euler_gamma;
    cplx fact = 1.0;
    for (int i = 1; i <= maxit; ++i) {
        fact *= -x / double(i);
        cplx del;
        if (i != nm1) {
            del = -fact / double(i - nm1);
        } else {
            double psi = -euler_gamma;
            for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * eps) return ans;
    }
    throw NumericalError("expint_n", "series did not converge");
}

double expint_e1(double x)
{
    if (!(x > 0)) throw InvalidArgument("E1 needs a positive argument");
    return -std::expint(-x);
}

double expint_ein(double x)
{
    if (x < 0.5) {
        // Ein(x) = sum_{n>=1} (-1)^{n+1} x^n / (n n!)
        double term = x, sum = x;
        for (int n = 2; n < 60; ++n) {
            term *= -x / n;
            double add = term / n;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    return expint_e1(x) + std::log(x) + euler_gamma;
}

}  // namespace resona
