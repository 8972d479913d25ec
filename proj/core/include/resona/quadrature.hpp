#pragma once

#include <array>
#include <vector>

#include "resona/common.hpp"

namespace resona {

// Barycentric points and weights (weights sum to 1) on a triangle.
struct TriangleRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weight;
};

const TriangleRule& centroid_rule();
// Degree-5, 7 points.
const TriangleRule& dunavant7_rule();

// n-point Gauss-Legendre on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// erfc for complex argument with moderate imaginary part (|Im z| <= 3),
// integrating exp(-t^2) along the vertical segment from Re z.
cplx erfc_complex(cplx z);

// Generalised exponential integral E_n(x) = int_1^inf e^{-xt} t^{-n} dt,
// n >= 1, Re x > 0 (or x real positive).
cplx expint_n(int n, cplx x);

// E1 for real x > 0.
double expint_e1(double x);

// Ein(x) = E1(x) + ln x + gamma, entire; stable for small x.
double expint_ein(double x);

}  // namespace resona
