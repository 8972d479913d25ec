#pragma once

#include <vector>

#include "resona/finite.hpp"
#include "resona/geometry.hpp"

namespace resona {

// Linear radii r1..r2 along x1 with a fixed gap; r2 follows from the extent,
// r1 by a secant search so the highest mode sits at f_high.
struct CochleaDesignSpec {
    int n = 22;
    double extent = 35e-3;    // m
    double gap = 0.5e-3;      // m
    double f_high = 10e3;     // Hz, target for Re omega_N / 2 pi
    double f_low = 500;       // Hz, reported only
    int refinement = 1;
    int threads = 0;
};

struct CochleaDesign {
    std::vector<double> radii;
    SurfaceMesh mesh;
    ResonanceSet spectrum;
    double f_min = 0, f_max = 0;  // achieved, Hz
    int iterations = 0;
    bool high_within_10pct = false;
    bool low_within_10pct = false;
};

CochleaDesign design_cochlea(const CochleaDesignSpec& spec, const MaterialParams& params);

// Leading-order spectrum of a graded array; checks N modes, Im < 0, strictly increasing Re.
ResonanceSet array_spectrum(const SurfaceMesh& mesh, const MaterialParams& params, int threads = 0);

struct FilterKernel {
    int n = 0;
    cplx omega;
    double c = 0;  // nu_n Re omega_n
    std::vector<double> h;  // h(k / fs), k = 0..
};

struct FilterBank {
    double fs = 0;
    std::vector<FilterKernel> kernels;
};

// h(t), zero for t < 0.
double kernel_value(const FilterKernel& k, double t);

// Time for every kernel envelope to fall to 1e-4 of its peak.
double kernel_decay_time(const ResonanceSet& res);
// h_n(t) = c_n e^{Im w_n t} sin(Re w_n t), t >= 0; duration <= 0 picks kernel_decay_time.
FilterBank make_kernels(const ResonanceSet& res, double fs, double duration = 0);

struct Decomposition {
    double fs = 0;
    std::size_t length = 0;
    MatR a;  // length x N, a_n[s](t_k) = dt sum_j s_j h_n(t_{k-j})
};

// FFT linear convolution per channel, truncated to the signal length.
Decomposition decompose(const std::vector<double>& signal, double fs, const FilterBank& bank, int threads = 0);
// O(n m) reference.
std::vector<double> convolve_direct(const std::vector<double>& signal, const std::vector<double>& kernel, double dt);

// Mode values at the resonators: u_n(x_i) = v_n[i]; rows resonators, columns modes.
MatR mode_samples_at_resonators(const ResonanceSet& res);
// p(x_i, t_k) = sum_n a_n(t_k) u_n(x_i); rows time, columns points.
MatR pressure_field(const Decomposition& dec, const MatR& mode_samples);

// RMS of each channel over the last `tail` fraction of the decomposition.
VecR channel_rms(const Decomposition& dec, double tail = 0.25);

}  // namespace resona
