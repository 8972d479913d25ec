#include "resona/cochlea.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "resona/parallel.hpp"

namespace resona {

namespace {

std::mutex fftw_plan_mutex;  // planner is not thread safe

std::vector<double> linear_radii(double r1, double r2, int n)
{
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = r1 + (r2 - r1) * i / double(n - 1);
    return r;
}

}  // namespace

ResonanceSet array_spectrum(const SurfaceMesh& mesh, const MaterialParams& params, int threads)
{
    ResonanceSet res = resonances_leading_order(capacitance_matrix(mesh, threads), params);
    for (std::size_t n = 0; n < res.modes.size(); ++n) {
        if (!(res.modes[n].omega.imag() < 0)) throw NumericalError("array_spectrum", "mode with Im omega >= 0");
        if (n > 0 && !(res.modes[n].omega.real() > res.modes[n - 1].omega.real()))
            throw NumericalError("array_spectrum", "resonant frequencies not strictly increasing");
    }
    return res;
}

CochleaDesign design_cochlea(const CochleaDesignSpec& s, const MaterialParams& params)
{
    if (s.n < 2) throw InvalidArgument("design_cochlea: need at least two resonators");
    if (!(s.extent > 0) || !(s.gap > 0) || !(s.f_high > 0)) throw InvalidArgument("design_cochlea: bad spec");
    const double sum = (s.extent - (s.n - 1) * s.gap) / s.n;  // r1 + r2
    if (!(sum > 0)) throw InvalidArgument("design_cochlea: gaps alone exceed the extent");

    auto top = [&](double r1, CochleaDesign& d) {
        d.radii = linear_radii(r1, sum - r1, s.n);
        d.mesh = make_graded_array(d.radii, SpacingRule{s.extent}, s.refinement);
        d.spectrum = array_spectrum(d.mesh, params, s.threads);
        return d.spectrum.modes.back().omega.real() / (2 * pi);
    };
    // isolated-bubble estimate for the smallest radius
    const double r_lo = 0.02 * sum, r_hi = 0.49 * sum;
    double x0 = std::clamp(params.v_b() * std::sqrt(3 * params.delta()) / (2 * pi * s.f_high), r_lo, r_hi);
    double x1 = std::clamp(1.2 * x0, r_lo, r_hi);
    if (x1 == x0) x1 = 0.8 * x0;
    CochleaDesign d;
    double f0 = top(x0, d) - s.f_high;
    double f1 = top(x1, d) - s.f_high;
    int it = 2;
    for (; it < 30 && std::abs(f1) > 1e-4 * s.f_high; ++it) {
        if (f1 == f0) break;
        double x2 = std::clamp(x1 - f1 * (x1 - x0) / (f1 - f0), r_lo, r_hi);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = top(x1, d) - s.f_high;
    }
    d.iterations = it;
    d.f_min = d.spectrum.modes.front().omega.real() / (2 * pi);
    d.f_max = d.spectrum.modes.back().omega.real() / (2 * pi);
    d.high_within_10pct = std::abs(d.f_max - s.f_high) <= 0.1 * s.f_high;
    d.low_within_10pct = std::abs(d.f_min - s.f_low) <= 0.1 * s.f_low;
    if (!d.high_within_10pct) warn("design_cochlea: top frequency target missed");
    if (!d.low_within_10pct)
        warn("design_cochlea: lowest mode at " + std::to_string(d.f_min) + " Hz, not reachable within the extent");
    return d;
}

double kernel_value(const FilterKernel& k, double t)
{
    if (t < 0) return 0.0;
    return k.c * std::exp(k.omega.imag() * t) * std::sin(k.omega.real() * t);
}

double kernel_decay_time(const ResonanceSet& res)
{
    double t = 0;
    for (const auto& m : res.modes) {
        if (!(m.omega.imag() < 0)) throw InvalidArgument("kernel_decay_time: Im omega must be negative");
        t = std::max(t, std::log(1e4) / -m.omega.imag());
    }
    return t;
}

FilterBank make_kernels(const ResonanceSet& res, double fs, double duration)
{
    if (!(fs > 0)) throw InvalidArgument("make_kernels: sample rate must be positive");
    double fmax = 0;
    for (const auto& m : res.modes) fmax = std::max(fmax, m.omega.real() / (2 * pi));
    if (!(fs > 2 * fmax)) throw InvalidArgument("make_kernels: sample rate below the Nyquist rate of the top mode");
    const double need = kernel_decay_time(res);
    if (duration <= 0) duration = need;
    if (duration < need) warn("make_kernels: duration shorter than the 1e-4 decay time");
    const auto len = static_cast<std::size_t>(std::ceil(duration * fs)) + 1;
    FilterBank b;
    b.fs = fs;
    bool fallback = false;
    for (std::size_t n = 0; n < res.modes.size(); ++n) {
        const Mode& m = res.modes[n];
        FilterKernel k;
        k.n = int(n);
        k.omega = m.omega;
        fallback |= !m.has_nu;
        k.c = (m.has_nu ? m.nu : 1.0) * m.omega.real();
        k.h.resize(len);
        for (std::size_t j = 0; j < len; ++j) k.h[j] = kernel_value(k, double(j) / fs);
        b.kernels.push_back(std::move(k));
    }
    if (fallback) warn("make_kernels: nu unavailable, using c_n = Re omega_n");
    return b;
}

Decomposition decompose(const std::vector<double>& s, double fs, const FilterBank& bank, int threads)
{
    if (fs != bank.fs) throw InvalidArgument("decompose: sample rate of signal and kernels differ");
    const std::size_t N = bank.kernels.size();
    Decomposition d;
    d.fs = fs;
    d.length = s.size();
    d.a = MatR::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(N));
    if (s.empty() || N == 0) return d;
    std::size_t klen = 0;
    for (const auto& k : bank.kernels) klen = std::max(klen, k.h.size());
    klen = std::min(klen, s.size());  // later kernel samples never reach t < T
    std::size_t nfft = 1;
    while (nfft < s.size() + klen - 1) nfft <<= 1;
    const std::size_t nc = nfft / 2 + 1;
    const double dt = 1.0 / fs;

    auto rbuf = [&] { return static_cast<double*>(fftw_malloc(sizeof(double) * nfft)); };
    auto cbuf = [&] { return static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc)); };
    fftw_complex* S = cbuf();
    {
        double* x = rbuf();
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lk(fftw_plan_mutex);
            p = fftw_plan_dft_r2c_1d(int(nfft), x, S, FFTW_ESTIMATE);
        }
        std::fill(x, x + nfft, 0.0);
        std::copy(s.begin(), s.end(), x);
        fftw_execute(p);
        std::lock_guard<std::mutex> lk(fftw_plan_mutex);
        fftw_destroy_plan(p);
        fftw_free(x);
    }
    parallel_for(N, threads, [&](std::size_t n) {
        double* x = rbuf();
        fftw_complex* H = cbuf();
        fftw_plan fwd, inv;
        {
            std::lock_guard<std::mutex> lk(fftw_plan_mutex);
            fwd = fftw_plan_dft_r2c_1d(int(nfft), x, H, FFTW_ESTIMATE);
            inv = fftw_plan_dft_c2r_1d(int(nfft), H, x, FFTW_ESTIMATE);
        }
        const auto& h = bank.kernels[n].h;
        std::fill(x, x + nfft, 0.0);
        std::copy(h.begin(), h.begin() + std::min(h.size(), klen), x);
        fftw_execute(fwd);
        for (std::size_t j = 0; j < nc; ++j) {
            const double re = H[j][0] * S[j][0] - H[j][1] * S[j][1];
            const double im = H[j][0] * S[j][1] + H[j][1] * S[j][0];
            H[j][0] = re;
            H[j][1] = im;
        }
        fftw_execute(inv);
        const double scale = dt / double(nfft);
        for (std::size_t k = 0; k < s.size(); ++k) d.a(Eigen::Index(k), Eigen::Index(n)) = x[k] * scale;
        std::lock_guard<std::mutex> lk(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(x);
        fftw_free(H);
    });
    fftw_free(S);
    return d;
}

std::vector<double> convolve_direct(const std::vector<double>& s, const std::vector<double>& h, double dt)
{
    std::vector<double> out(s.size(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
        double acc = 0;
        const std::size_t jmax = std::min(k, h.size() - 1);
        for (std::size_t j = 0; j <= jmax && !h.empty(); ++j) acc += h[j] * s[k - j];
        out[k] = acc * dt;
    }
    return out;
}

MatR mode_samples_at_resonators(const ResonanceSet& res)
{
    const int N = res.size();
    if (N == 0) return MatR();
    MatR u(res.modes[0].v.size(), N);
    for (int n = 0; n < N; ++n) u.col(n) = res.modes[n].v;
    return u;
}

MatR pressure_field(const Decomposition& dec, const MatR& u)
{
    if (u.cols() != dec.a.cols()) throw InvalidArgument("pressure_field: mode count mismatch");
    return dec.a * u.transpose();
}

VecR channel_rms(const Decomposition& dec, double tail)
{
    if (!(tail > 0 && tail <= 1)) throw InvalidArgument("channel_rms: tail must lie in (0, 1]");
    const auto n = dec.a.rows();
    const auto start = n - std::max<Eigen::Index>(1, Eigen::Index(std::floor(tail * double(n))));
    const MatR blk = dec.a.bottomRows(n - start);
    return (blk.colwise().squaredNorm() / double(blk.rows())).cwiseSqrt().transpose();
}

}  // namespace resona
