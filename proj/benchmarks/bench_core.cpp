#include <benchmark/benchmark.h>

#include <cmath>

#include "resona/bem.hpp"
#include "resona/cochlea.hpp"
#include "resona/finite.hpp"
#include "resona/green.hpp"
#include "resona/lattice_bands.hpp"

using namespace resona;

static void BM_LaplaceSingleLayer(benchmark::State& st)
{
    auto mesh = make_sphere_mesh(Vec3::Zero(), 1.0, int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(laplace_single_layer(mesh, 1));
    st.counters["panels"] = double(mesh.n_panels());
}
BENCHMARK(BM_LaplaceSingleLayer)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_HelmholtzSingleLayer(benchmark::State& st)
{
    auto mesh = make_sphere_mesh(Vec3::Zero(), 1.0, int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_single_layer(mesh, cplx(0.3, -0.01), {1}));
}
BENCHMARK(BM_HelmholtzSingleLayer)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_DimerCapacitance(benchmark::State& st)
{
    auto mesh = make_sphere_dimer(1.0, 0.5, int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(capacitance_matrix(mesh, 1));
}
BENCHMARK(BM_DimerCapacitance)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_LatticeGreenEval(benchmark::State& st)
{
    const LatticeGreen3D g(Lattice::cubic(), Vec3(1.0, 0.5, 0.2));
    Vec3 r(0.13, -0.21, 0.05);
    for (auto _ : st) {
        benchmark::DoNotOptimize(g.remainder(r));
        r.x() = std::fmod(r.x() + 0.0137, 0.5);
    }
}
BENCHMARK(BM_LatticeGreenEval);

static void BM_QuasiCapacitance(benchmark::State& st)
{
    auto mesh = make_sphere_mesh(Vec3::Zero(), 0.25, 1);
    for (auto _ : st) benchmark::DoNotOptimize(quasi_capacitance(mesh, Lattice::cubic(), Vec3(1.0, 0.5, 0.2)));
}
BENCHMARK(BM_QuasiCapacitance)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& st)
{
    ResonanceSet res;
    for (int n = 0; n < 22; ++n) {
        Mode m;
        m.omega = cplx(2 * pi * (500.0 + 400.0 * n), -80.0);
        m.v = VecR::Unit(22, n);
        res.modes.push_back(m);
    }
    const double fs = 44100;
    auto bank = make_kernels(res, fs);
    std::vector<double> s(std::size_t(st.range(0)));
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::sin(2 * pi * 1000.0 * k / fs);
    for (auto _ : st) benchmark::DoNotOptimize(decompose(s, fs, bank, 1));
}
BENCHMARK(BM_Decompose)->Arg(4410)->Arg(44100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
