#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>

#include "output.hpp"
#include "resona/cochlea.hpp"
#include "resona/effective_medium.hpp"
#include "resona/finite.hpp"
#include "resona/lattice_bands.hpp"
#include "resona/parallel.hpp"
#include "resona/ssh_chain.hpp"
#include "resona/two_sphere.hpp"
#include "resona/wav.hpp"

using namespace resona;
using namespace resona::cli;

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

struct Common {
    std::string out;
    std::string format = "csv";
    double tol = 1e-8;
    int threads = 0;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--out", c.out, "output file (table); summary always goes to stdout");
    sub->add_option("--format", c.format, "csv, json (cochlea also: bin)")->check(CLI::IsMember({"csv", "json", "bin"}));
    sub->add_option("--tol", c.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "worker count, 0 = RESONA_THREADS or all cores")->check(CLI::NonNegativeNumber);
}

// Writes the table if --out was given and returns the summary entry for it.
json emit(const Common& c, const Table& t)
{
    if (c.out.empty()) return t.to_json();
    if (c.format == "bin") throw InvalidArgument("--format bin is only available for cochlea");
    write_atomic(c.out, c.format == "json" ? t.to_json().dump(1) + "\n" : t.to_csv());
    return {{"path", c.out}, {"format", c.format}, {"rows", t.rows.size()}};
}

json matrix_json(const MatR& M)
{
    json j = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) r.push_back(M(i, k));
        j.push_back(r);
    }
    return j;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

// --- geometry source shared by capacitance and spectrum -----------------------

struct GeometryArgs {
    std::string mesh;
    double sphere = 0;
    std::vector<double> dimer;  // radius gap
    int refinement = 2;
    double grading = 1.0;

    void add(CLI::App* s)
    {
        s->add_option("--mesh", mesh, "mesh file")->check(CLI::ExistingFile);
        s->add_option("--sphere", sphere, "sphere radius");
        s->add_option("--dimer", dimer, "sphere dimer: radius gap")->expected(2);
        s->add_option("--refinement", refinement, "icosphere refinement")->check(CLI::Range(0, 6));
        s->add_option("--grading", grading, "dimer grading towards the gap")->check(CLI::Range(1.0, 10.0));
    }
    SurfaceMesh build() const
    {
        const int sources = int(!mesh.empty()) + int(sphere > 0) + int(!dimer.empty());
        if (sources != 1) throw InvalidArgument("exactly one geometry source required (--mesh, --sphere or --dimer)");
        if (!mesh.empty()) return read_mesh(mesh);
        if (sphere > 0) return make_sphere_mesh(Vec3::Zero(), sphere, refinement);
        return make_sphere_dimer(dimer[0], dimer[1], refinement, Vec3::UnitX(), grading);
    }
};

struct MaterialArgs {
    std::string material;
    double delta = 1e-3, v = 1.0, v_b = 1.0;

    void add(CLI::App* s)
    {
        s->add_option("--material", material, "preset")->check(CLI::IsMember({"air-water"}));
        s->add_option("--delta", delta, "density contrast rho_b / rho")->check(CLI::PositiveNumber);
        s->add_option("--v", v, "exterior wave speed")->check(CLI::PositiveNumber);
        s->add_option("--vb", v_b, "interior wave speed")->check(CLI::PositiveNumber);
    }
    MaterialParams build() const
    {
        if (material == "air-water") return MaterialParams::air_in_water();
        return MaterialParams::from_contrast(delta, v, v_b);
    }
};

// --- subcommands --------------------------------------------------------------

json run_capacitance(const Common& c, const GeometryArgs& g)
{
    SurfaceMesh mesh = g.build();
    CapacitanceMatrix C = capacitance_matrix(mesh, c.threads);
    Table t;
    t.header = {"i", "j", "C"};
    for (int i = 0; i < C.size(); ++i)
        for (int j = 0; j < C.size(); ++j) t.rows.push_back({double(i), double(j), C.C(i, j)});
    return {{"C", matrix_json(C.C)}, {"volumes", C.volumes}, {"panels", mesh.n_panels()}, {"table", emit(c, t)}};
}

json run_spectrum(const Common& c, const GeometryArgs& g, const MaterialArgs& m, bool refine)
{
    SurfaceMesh mesh = g.build();
    MaterialParams p = m.build();
    ResonanceSet res = resonances_leading_order(capacitance_matrix(mesh, c.threads), p);
    Table t;
    t.header = {"n", "re_omega", "im_omega", "lambda", "tau", "nu"};
    if (refine) t.header.insert(t.header.end(), {"re_omega_refined", "im_omega_refined", "residual"});
    MullerOptions mo;
    mo.residual_tol = c.tol;
    for (int n = 0; n < res.size(); ++n) {
        const Mode& md = res.modes[n];
        std::vector<double> r{double(n), md.omega.real(), md.omega.imag(), md.lambda, md.tau, md.nu};
        if (refine) {
            MullerResult mr = refine_characteristic_value(mesh, p, md.omega, mo, {c.threads, SmoothRule::Dunavant7});
            r.insert(r.end(), {mr.omega.real(), mr.omega.imag(), mr.relative_residual()});
        }
        t.rows.push_back(r);
    }
    return {{"modes", res.size()}, {"v_condition", res.v_condition}, {"table", emit(c, t)}};
}

json run_two_sphere(const Common& c, double r, const std::vector<double>& eps, int bem_ref, double grading,
                    const MaterialArgs& m)
{
    Table t;
    t.header = {"eps", "C11_series", "C12_series", "C11_asym", "C12_asym", "terms"};
    if (bem_ref >= 0) t.header.insert(t.header.end(), {"C11_bem", "C12_bem"});
    for (double e : eps) {
        TwoSphereCapacitance s = capacitance_series(bispherical_frame(r, e));
        TwoSphereCapacitance a = capacitance_asymptotics(r, e);
        std::vector<double> row{e, s.C11, s.C12, a.C11, a.C12, double(s.terms)};
        if (bem_ref >= 0) {
            CapacitanceMatrix C = capacitance_matrix(make_sphere_dimer(r, e, bem_ref, Vec3::UnitX(), grading), c.threads);
            row.insert(row.end(), {C.C(0, 0), C.C(0, 1)});
        }
        t.rows.push_back(row);
    }
    json j{{"r", r}, {"table", emit(c, t)}};
    MaterialParams p = m.build();
    if (!eps.empty() && p.delta() < 0.1) {
        ResonancePair pr = close_resonances(r, eps.front(), p.delta(), p.v_b());
        j["omega1"] = pr.omega1;
        j["omega2"] = pr.omega2;
    }
    return j;
}

json run_band(const Common& c, const std::vector<std::string>& path, int n, double radius, int refinement,
              const MaterialArgs& m)
{
    MaterialParams p = m.build();
    SurfaceMesh mesh = make_sphere_mesh(Vec3::Zero(), radius, refinement);
    if (2 * mesh.bounding_radius(0) >= 1.0) throw InvalidArgument("band: sphere does not fit in the unit cell");
    BandTable bt = band_sweep(mesh, Lattice::cubic(1.0), path, n, p.delta(), p.v_b(), c.threads);
    Table t;
    t.header = {"alpha_1", "alpha_2", "alpha_3", "cap_alpha", "omega_1"};
    double wmax = 0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < bt.rows.size(); ++i) {
        const auto& r = bt.rows[i];
        t.rows.push_back({r.alpha[0], r.alpha[1], r.alpha[2], r.cap, r.omega1});
        if (r.omega1 > wmax) {
            wmax = r.omega1;
            imax = i;
        }
    }
    return {{"rows", bt.rows.size()},
            {"omega1_star", wmax},
            {"argmax", {bt.rows[imax].alpha[0], bt.rows[imax].alpha[1], bt.rows[imax].alpha[2]}},
            {"table", emit(c, t)}};
}

json run_honeycomb(const Common& c, double radius, int segments, double window, const MaterialArgs& m)
{
    MaterialParams p = m.build();
    HoneycombGeometry g = make_honeycomb(1.0, radius, segments);
    const double w = window * g.alpha_star.norm();
    DiracFit f = dirac_fit(g, p.delta(), p.v_b(), w, Vec2(1, 0), c.threads);
    HoneycombGradient gr = honeycomb_gradient(g, g.alpha_star, 1e-3 * g.alpha_star.norm(), c.threads);
    Table t;
    t.header = {"t", "c1", "re_c12", "im_c12", "omega_lower", "omega_upper"};
    const double D1 = g.mesh.area(0);
    for (int j = -8; j <= 8; ++j) {
        const double tt = f.window * j / 8.0;
        Eigen::Matrix2cd C = honeycomb_capacitance(g, g.alpha_star + Vec2(tt, 0), c.threads);
        const double a = C(0, 0).real(), b = std::abs(C(0, 1));
        t.rows.push_back({tt, a, C(0, 1).real(), C(0, 1).imag(), p.v_b() * std::sqrt(p.delta() * (a - b) / D1),
                          p.v_b() * std::sqrt(p.delta() * (a + b) / D1)});
    }
    return {{"omega_star", f.omega_star},
            {"omega_star_formula", f.omega_star_formula},
            {"slope_lower", f.slope_lower},
            {"slope_upper", f.slope_upper},
            {"lambda", f.lambda},
            {"lambda_formula", f.lambda_formula},
            {"c", cplx_json(f.c)},
            {"r2", {f.r2_lower, f.r2_upper}},
            {"window", f.window},
            {"grad_c1", {cplx_json(gr.grad_c1[0]), cplx_json(gr.grad_c1[1])}},
            {"grad_c2", {cplx_json(gr.grad_c2[0]), cplx_json(gr.grad_c2[1])}},
            {"table", emit(c, t)}};
}

json run_ssh(const Common& c, double L, double d, double radius, int refinement, int n, const MaterialArgs& m)
{
    MaterialParams p = m.build();
    ChainGeometry g = make_chain_spheres(L, d, radius, refinement);
    auto rows = chain_bands(g, chain_winding_samples(L, n), p.delta(), p.v_b(), c.threads);
    Table t;
    t.header = {"alpha", "ReC12", "ImC12", "lambda1", "lambda2", "omega1", "omega2"};
    for (const auto& r : rows)
        t.rows.push_back({r.alpha, r.C12.real(), r.C12.imag(), r.lambda1, r.lambda2, r.omega1, r.omega2});
    json table = emit(c, t);
    TopologyReport rep = topology_from_rows(rows);
    return {{"winding", rep.winding}, {"zak", rep.zak}, {"gap", {rep.gap_lo, rep.gap_hi}}, {"table", table}};
}

struct EffectiveArgs {
    std::string mode = "dimer";
    double cap = 4 * pi, beta0 = -1, V = 1, k = 1;
    double C11 = 0, C12 = 0, P = 0, volume = 1, mu = 1, gap = 1, v_b = 1;
    std::vector<double> Lambda{0.0, 1.0};
    int n = 11;
};

json run_effective(const Common& c, const EffectiveArgs& a)
{
    if (a.Lambda.size() != 2 || !(a.Lambda[1] >= a.Lambda[0]) || a.n < 1)
        throw InvalidArgument("--lambda needs lo hi with lo <= hi and --n >= 1");
    Table t;
    json j;
    auto L = [&](int i) { return a.n == 1 ? a.Lambda[0] : a.Lambda[0] + (a.Lambda[1] - a.Lambda[0]) * i / (a.n - 1); };
    if (a.mode == "single") {
        t.header = {"Lambda", "coefficient", "regime"};
        for (int i = 0; i < a.n; ++i) {
            DiluteMediumSpec s{L(i), a.cap, a.beta0, a.V, a.k};
            EffectiveCoefficient e = effective_coefficient(s);
            t.rows.push_back({s.Lambda, e.value, double(int(e.regime))});
        }
        j["regimes"] = {"high-index", "dissipative", "neutral"};
    } else {
        DimerMediumSpec s;
        s.C11 = a.C11;
        s.C12 = a.C12;
        s.P = a.P;
        s.volume = a.volume;
        s.v_b = a.v_b;
        s.mu = a.mu;
        s.gap = a.gap;
        s.V = a.V;
        DimerConstants dc = dimer_constants(s);
        const double omega = dc.omega_M2;
        t.header = {"omega", "Lambda", "ReM2", "M1_eigmin", "both_negative"};
        double star = 0;
        for (int i = 0; i < a.n; ++i) {
            s.Lambda = L(i);
            DoubleNegative dn = double_negative_window(s, a.k);
            star = dn.Lambda_star;
            t.rows.push_back({omega, s.Lambda, dn.M2, dn.M1_eigmin, dn.both_negative ? 1.0 : 0.0});
        }
        j["g0"] = dc.g0;
        j["g1"] = dc.g1;
        j["Lambda_star"] = star;
    }
    j["table"] = emit(c, t);
    return j;
}

struct CochleaArgs {
    std::string wav;
    double tone = 0, duration = 1.0, fs = 44100;
    int n = 22;
    double extent = 35e-3, gap = 0.5e-3;
    int refinement = 1;
    int decimate = 1;
};

json run_cochlea(const Common& c, const CochleaArgs& a)
{
    std::vector<double> s;
    double fs = a.fs;
    if (!a.wav.empty() == (a.tone > 0)) throw InvalidArgument("cochlea: give exactly one of --wav or --tone");
    if (!a.wav.empty()) {
        WavData w = load_wav(a.wav);
        s = std::move(w.samples);
        fs = w.sample_rate;
    } else {
        s.resize(std::size_t(a.duration * fs));
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(2 * pi * a.tone * double(i) / fs);
    }
    CochleaDesignSpec spec;
    spec.n = a.n;
    spec.extent = a.extent;
    spec.gap = a.gap;
    spec.refinement = a.refinement;
    spec.threads = c.threads;
    CochleaDesign d = design_cochlea(spec, MaterialParams::air_in_water());
    FilterBank bank = make_kernels(d.spectrum, fs);
    Decomposition dec = decompose(s, fs, bank, c.threads);

    const VecR rms = channel_rms(dec);
    json modes = json::array();
    for (const auto& m : d.spectrum.modes)
        modes.push_back({{"re_omega", m.omega.real()}, {"im_omega", m.omega.imag()}, {"nu", m.nu}});
    json j{{"radii", d.radii},
           {"f_min", d.f_min},
           {"f_max", d.f_max},
           {"fs", fs},
           {"samples", s.size()},
           {"modes", modes},
           {"rms", std::vector<double>(rms.data(), rms.data() + rms.size())}};
    if (c.out.empty()) return j;
    const int step = std::max(1, a.decimate);
    if (c.format == "bin") {
        std::string buf;
        for (Eigen::Index k = 0; k < dec.a.rows(); k += step)
            for (Eigen::Index n = 0; n < dec.a.cols(); ++n) {
                double x = dec.a(k, n);
                char b[8];
                std::memcpy(b, &x, 8);  // little-endian hosts only
                buf.append(b, 8);
            }
        write_atomic(c.out, buf);
        j["table"] = {{"path", c.out}, {"format", "bin"}, {"columns", dec.a.cols()}};
        return j;
    }
    Table t;
    t.header = {"t"};
    for (Eigen::Index n = 0; n < dec.a.cols(); ++n) t.header.push_back("a_" + std::to_string(n + 1));
    for (Eigen::Index k = 0; k < dec.a.rows(); k += step) {
        std::vector<double> r{double(k) / fs};
        for (Eigen::Index n = 0; n < dec.a.cols(); ++n) r.push_back(dec.a(k, n));
        t.rows.push_back(std::move(r));
    }
    j["table"] = emit(c, t);
    return j;
}

// Appends "--key value..." from the JSON config for every option not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw CLI::ValidationError("--config", "needs a path");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg;
    try {
        cfg = json::parse(f);
    } catch (const json::exception& e) {
        throw CLI::ValidationError("--config", e.what());
    }
    if (!cfg.is_object() || cfg.value("schema", 0) != 1) throw CLI::ValidationError("--config", "schema 1 required");
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    if (args.empty() || args[0].rfind("-", 0) == 0) {
        if (!cfg.contains("subcommand")) throw CLI::ValidationError("--config", "no subcommand");
        args.insert(args.begin(), cfg["subcommand"].get<std::string>());
    }
    for (const auto& [key, val] : cfg.items()) {
        if (key == "schema" || key == "subcommand" || given.count(key)) continue;
        args.push_back("--" + key);
        auto scalar = [](const json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) return format_double(v.get<double>());
            if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
            throw CLI::ValidationError("--config", "unsupported value type");
        };
        if (val.is_array())
            for (const auto& x : val) args.push_back(scalar(x));
        else if (!val.is_boolean())
            args.push_back(scalar(val));
        else if (!val.get<bool>())
            args.pop_back();
    }
    return args;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"resona: subwavelength resonator computations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;
    GeometryArgs geo;
    MaterialArgs mat;
    bool refine = false;

    auto* cap = app.add_subcommand("capacitance", "capacitance matrix of a mesh");
    add_common(cap, common);
    geo.add(cap);

    auto* spec = app.add_subcommand("spectrum", "leading-order resonances, optional Muller refinement");
    add_common(spec, common);
    geo.add(spec);
    mat.add(spec);
    spec->add_flag("--refine", refine, "refine each mode on the block system");

    double ts_r = 1.0, ts_grading = 1.5;
    std::vector<double> ts_eps{0.1};
    int ts_bem = -1;
    auto* two = app.add_subcommand("two-sphere", "bispherical series, asymptotics and optional BEM");
    add_common(two, common);
    mat.add(two);
    two->add_option("--r", ts_r, "sphere radius")->check(CLI::PositiveNumber);
    two->add_option("--eps", ts_eps, "gaps")->check(CLI::PositiveNumber);
    two->add_option("--bem-refinement", ts_bem, "also compute BEM at this refinement")->check(CLI::Range(0, 5));
    two->add_option("--grading", ts_grading, "BEM mesh grading towards the gap")->check(CLI::Range(1.0, 10.0));

    std::vector<std::string> path{"G", "X", "M", "G"};
    int band_n = 16, band_ref = 2;
    double band_radius = 0.25;
    auto* band = app.add_subcommand("band", "square-lattice first band along a path");
    add_common(band, common);
    mat.add(band);
    band->add_option("--path", path, "vertices among G X M");
    band->add_option("--n", band_n, "samples per leg")->check(CLI::PositiveNumber);
    band->add_option("--radius", band_radius, "sphere radius in the unit cell")->check(CLI::PositiveNumber);
    band->add_option("--refinement", band_ref, "icosphere refinement")->check(CLI::Range(0, 5));

    double hc_radius = 0.05, hc_window = 0.005;
    int hc_segments = 48;
    auto* hc = app.add_subcommand("honeycomb", "honeycomb Dirac cone");
    add_common(hc, common);
    mat.add(hc);
    hc->add_option("--radius", hc_radius, "disk radius (L = 1)")->check(CLI::PositiveNumber);
    hc->add_option("--segments", hc_segments, "segments per disk, multiple of 6");
    hc->add_option("--window", hc_window, "largest fit window relative to |alpha*|")->check(CLI::PositiveNumber);

    double ssh_L = 1.0, ssh_d = 0.3, ssh_radius = 0.1;
    int ssh_ref = 1, ssh_n = 64;
    auto* ssh = app.add_subcommand("ssh", "dimer chain bands and Zak phase");
    add_common(ssh, common);
    mat.add(ssh);
    ssh->add_option("--L", ssh_L, "period")->check(CLI::PositiveNumber);
    ssh->add_option("--d", ssh_d, "intra-cell separation")->check(CLI::PositiveNumber);
    ssh->add_option("--radius", ssh_radius, "sphere radius")->check(CLI::PositiveNumber);
    ssh->add_option("--refinement", ssh_ref, "icosphere refinement")->check(CLI::Range(0, 4));
    ssh->add_option("--n", ssh_n, "zone samples")->check(CLI::Range(2, 100000));

    EffectiveArgs eff;
    auto* ef = app.add_subcommand("effective", "dilute effective-medium coefficients");
    add_common(ef, common);
    ef->add_option("--mode", eff.mode, "single or dimer")->check(CLI::IsMember({"single", "dimer"}));
    ef->add_option("--cap", eff.cap, "resonator capacity")->check(CLI::PositiveNumber);
    ef->add_option("--beta0", eff.beta0, "frequency parameter");
    ef->add_option("--V", eff.V, "density profile value")->check(CLI::PositiveNumber);
    ef->add_option("--k", eff.k, "background wavenumber")->check(CLI::NonNegativeNumber);
    ef->add_option("--C11", eff.C11, "unit dimer C11");
    ef->add_option("--C12", eff.C12, "unit dimer C12");
    ef->add_option("--P", eff.P, "dipole weight");
    ef->add_option("--volume", eff.volume, "resonator volume")->check(CLI::PositiveNumber);
    ef->add_option("--mu", eff.mu, "delta = mu^2 r^2")->check(CLI::PositiveNumber);
    ef->add_option("--gap", eff.gap, "mu^3 eta1 - a");
    ef->add_option("--vb", eff.v_b, "interior wave speed")->check(CLI::PositiveNumber);
    ef->add_option("--lambda", eff.Lambda, "Lambda range lo hi")->expected(2);
    ef->add_option("--n", eff.n, "Lambda samples")->check(CLI::PositiveNumber);

    CochleaArgs co;
    auto* coc = app.add_subcommand("cochlea", "graded bubble array filter bank");
    add_common(coc, common);
    coc->add_option("--wav", co.wav, "PCM16 mono input")->check(CLI::ExistingFile);
    coc->add_option("--tone", co.tone, "synthetic tone frequency (Hz)")->check(CLI::PositiveNumber);
    coc->add_option("--duration", co.duration, "tone duration (s)")->check(CLI::PositiveNumber);
    coc->add_option("--fs", co.fs, "tone sample rate")->check(CLI::PositiveNumber);
    coc->add_option("--n", co.n, "resonators")->check(CLI::Range(2, 200));
    coc->add_option("--extent", co.extent, "array length (m)")->check(CLI::PositiveNumber);
    coc->add_option("--gap", co.gap, "gap between neighbours (m)")->check(CLI::PositiveNumber);
    coc->add_option("--refinement", co.refinement, "icosphere refinement")->check(CLI::Range(0, 3));
    coc->add_option("--decimate", co.decimate, "write every n-th time step")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(args);
        std::reverse(args.begin(), args.end());  // CLI11 takes them reversed
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    std::vector<std::string> warnings;
    set_warning_handler([&](const std::string& w) { warnings.push_back(w); });
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    json result;
    try {
        if (name == "capacitance") result = run_capacitance(common, geo);
        else if (name == "spectrum") result = run_spectrum(common, geo, mat, refine);
        else if (name == "two-sphere") result = run_two_sphere(common, ts_r, ts_eps, ts_bem, ts_grading, mat);
        else if (name == "band") result = run_band(common, path, band_n, band_radius, band_ref, mat);
        else if (name == "honeycomb") result = run_honeycomb(common, hc_radius, hc_segments, hc_window, mat);
        else if (name == "ssh") result = run_ssh(common, ssh_L, ssh_d, ssh_radius, ssh_ref, ssh_n, mat);
        else if (name == "effective") result = run_effective(common, eff);
        else if (name == "cochlea") result = run_cochlea(common, co);
    } catch (const InvalidArgument& e) {
        std::cout << json{{"status", "error"}, {"command", name}, {"error", e.what()}}.dump() << "\n";
        std::cerr << "resona " << name << ": " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalError& e) {
        std::cout << json{{"status", "error"}, {"command", name}, {"operation", e.operation()}, {"error", e.what()}}.dump()
                  << "\n";
        std::cerr << "resona " << name << ": numerical failure in " << e.operation() << ": " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cout << json{{"status", "error"}, {"command", name}, {"error", e.what()}}.dump() << "\n";
        std::cerr << "resona " << name << ": " << e.what() << "\n";
        return exit_numeric;
    }
    result["status"] = "ok";
    result["command"] = name;
    if (!warnings.empty()) result["warnings"] = warnings;
    std::cout << result.dump() << "\n";
    return 0;
}
