// gabor: CLI front end for window generation, dual computation, convergence
// studies, Schulz iteration comparisons and DGT round trips.
//
// Exit codes: 0 success, 2 usage/input error, 3 mathematical-regime error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gabordual/dual.hpp"
#include "gabordual/discrete.hpp"
#include "gabordual/io.hpp"
#include "gabordual/schulz.hpp"

using namespace gabordual;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRegime = 3;

std::vector<double> parse_weights(const std::string& csv) {
    std::vector<double> out;
    std::string tok;
    std::istringstream ss(csv);
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument("bad number in weight list: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty weight list");
    return out;
}

// One window spec per run: tp weights, eb weights, or a Gaussian
// e^{-pi x^2 / v}.
struct WindowSpec {
    std::string tp, eb;
    double gauss = 0.0;

    void validate(bool allow_gauss) const {
        const int given = !tp.empty() + !eb.empty() + (gauss > 0.0);
        if (given != 1)
            throw std::invalid_argument(
                "exactly one of --tp, --eb" +
                std::string(allow_gauss ? ", --gauss" : "") + " is required");
        if (gauss > 0.0 && !allow_gauss)
            throw std::invalid_argument("--gauss is not valid for this command");
    }
    std::string describe() const {
        if (!tp.empty()) return "tp:" + tp;
        if (!eb.empty()) return "eb:" + eb;
        return "gauss:" + fmt_double(gauss);
    }
    VectorXcd discretize(double alpha, int a, int K) const {
        if (!tp.empty())
            return discretize_window(TpWindow(parse_weights(tp)), alpha, a, K);
        if (!eb.empty())
            return discretize_window(EbWindow(parse_weights(eb)), alpha, a, K);
        const double v = gauss;
        const double radius = 15.0 * std::sqrt(v / (2.0 * std::numbers::pi)) + 10.0;
        return discretize_by_sampling(
            [v](double x) { return std::exp(-std::numbers::pi * x * x / v); },
            alpha, a, K, radius);
    }
};

void add_window_flags(CLI::App* cmd, WindowSpec& spec) {
    cmd->add_option("--tp", spec.tp, "TP window weights (comma-separated deltas)");
    cmd->add_option("--eb", spec.eb, "EB-spline weights (comma-separated lambdas)");
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output file " + path);
    return os;
}

void write_summary(const std::string& dir, const json& j) {
    std::ofstream os = open_out(dir, "summary.json");
    os << j.dump(2) << "\n";
}

VectorXcd load_signal(const std::string& path) {
    const bool binary = path.size() > 4 && path.substr(path.size() - 4) == ".gdk";
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) throw std::invalid_argument("cannot read signal file " + path);
    return binary ? read_signal_binary(is) : read_signal_csv(is);
}

VectorXcd random_signal(int K, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    VectorXcd f(K);
    for (int n = 0; n < K; ++n) f(n) = cplx(nd(rng), nd(rng));
    return f;
}

// Shared by dual/converge/verify: dual sample set for either window family.
DualSampleSet compute_dual(const WindowSpec& spec, const Lattice& lat, int L,
                           int a, double* wr_residual, long kmax = 60) {
    if (!spec.tp.empty()) {
        TpWindow w(parse_weights(spec.tp));
        DualSampleSet set = dual_sampled(w, lat, L, a);
        if (wr_residual) *wr_residual = wexler_raz_residual(w, set, kmax);
        return set;
    }
    EbWindow w(parse_weights(spec.eb));
    DualSampleSet set = dual_sampled(w, lat, L, a);
    if (wr_residual) *wr_residual = wexler_raz_residual(w, set, kmax);
    return set;
}

// ---------------------------------------------------------------------------

int cmd_window(const WindowSpec& spec, const std::string& grid,
               const std::string& out_dir, int K, int a, double alpha,
               bool zak_out) {
    spec.validate(false);
    if (!grid.empty()) {
        double start = 0.0, step = 0.0, stop = 0.0;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 ||
            !(step > 0.0) || stop < start)
            throw std::invalid_argument("--grid must be start:step:stop");
        std::ofstream os = open_out(out_dir, "window.csv");
        os << "x,value\n";
        if (!spec.tp.empty()) {
            TpWindow w(parse_weights(spec.tp));
            for (double x = start; x <= stop + 1e-12; x += step)
                os << fmt_double(x) << "," << fmt_double(w(x)) << "\n";
        } else {
            EbWindow w(parse_weights(spec.eb));
            for (double x = start; x <= stop + 1e-12; x += step)
                os << fmt_double(x) << "," << fmt_double(w(x)) << "\n";
        }
    }
    if (zak_out) {
        if (K < 1) throw std::invalid_argument("--zak needs --K");
        std::ofstream os = open_out(out_dir, "zak.csv");
        write_signal_csv(os, spec.discretize(alpha, a, K));
    }
    json j = {{"command", "window"},
              {"window", spec.describe()},
              {"alpha", alpha},
              {"a", a},
              {"K", K},
              {"grid", grid},
              {"zak", zak_out}};
    write_summary(out_dir, j);
    return 0;
}

int cmd_dual(const WindowSpec& spec, const Lattice& lat, int L, int a,
             const std::string& out_dir) {
    spec.validate(false);
    double residual = 0.0;
    DualSampleSet set = compute_dual(spec, lat, L, a, &residual);
    std::ofstream os = open_out(out_dir, "dual.csv");
    write_sample_set_csv(os, set, spec.describe());
    json j = {{"command", "dual"},
              {"window", spec.describe()},
              {"alpha", lat.alpha},
              {"beta", lat.beta},
              {"L", L},
              {"a", a},
              {"wexler_raz_residual", residual},
              {"support_first", set.q0 * set.step()},
              {"support_last", set.q_end() * set.step()},
              {"samples", set.values.size()}};
    write_summary(out_dir, j);
    std::cout << "Wexler-Raz residual " << fmt_double(residual) << "\n";
    return 0;
}

int cmd_converge(const WindowSpec& spec, const Lattice& lat,
                 const std::string& l_list_csv, int a, int l_ref,
                 const std::string& out_dir) {
    spec.validate(false);
    std::vector<int> ls;
    for (double v : parse_weights(l_list_csv)) {
        if (v < 0.0 || v != std::floor(v))
            throw std::invalid_argument("--L-list entries must be integers >= 0");
        ls.push_back(static_cast<int>(v));
    }
    ConvergenceStudy study;
    if (!spec.tp.empty())
        study = dual_convergence(TpWindow(parse_weights(spec.tp)), lat, ls, a, l_ref);
    else
        study = dual_convergence(EbWindow(parse_weights(spec.eb)), lat, ls, a, l_ref);
    std::ofstream os = open_out(out_dir, "converge.csv");
    os << "L,err\n";
    for (const auto& p : study.points)
        os << p.L << "," << fmt_double(p.err) << "\n";
    json j = {{"command", "converge"},
              {"window", spec.describe()},
              {"alpha", lat.alpha},
              {"beta", lat.beta},
              {"a", a},
              {"L_list", l_list_csv},
              {"L_ref", l_ref},
              {"slope", study.slope},
              {"r_squared", study.r_squared}};
    write_summary(out_dir, j);
    std::cout << "fitted slope " << fmt_double(study.slope) << "\n";
    return 0;
}

int cmd_schulz(const WindowSpec& spec, double alpha, int K, int a, int M,
               int steps, double lambda, bool with_frame_algo,
               const std::string& out_dir) {
    spec.validate(true);
    DiscreteGaborSystem sys(K, a, M, spec.discretize(alpha, a, K));
    if (!(lambda > 0.0)) lambda = estimate_lambda(sys);
    json variants = json::object();
    auto run = [&](const IterationTrace& tr) {
        std::ofstream os =
            open_out(out_dir, std::string("trace_") + variant_name(tr.variant) + ".csv");
        write_trace_csv(os, tr);
        variants[variant_name(tr.variant)] = {
            {"min_error", tr.min_error()},
            {"plateau_growth_factor", tr.plateau_growth_factor()}};
    };
    run(schulz_operator(sys, lambda, steps));
    run(schulz_vector(sys, lambda, steps));
    run(schulz_janssen(sys, lambda, steps));
    if (with_frame_algo) run(frame_algo(sys, lambda, steps));
    json j = {{"command", "schulz"}, {"window", spec.describe()},
              {"alpha", alpha},     {"K", K},
              {"a", a},             {"M", M},
              {"steps", steps},     {"lambda", lambda},
              {"variants", variants}};
    write_summary(out_dir, j);
    return 0;
}

int cmd_dgt(const WindowSpec& spec, const Lattice& lat, int K, int a, int M,
            int L, const std::string& signal_path, bool canonical,
            unsigned seed, const std::string& out_dir) {
    spec.validate(true);
    DiscreteGaborSystem sys(K, a, M, spec.discretize(lat.alpha, a, K));
    VectorXcd f = signal_path.empty() ? random_signal(K, seed)
                                      : load_signal(signal_path);
    if (f.size() != K)
        throw std::invalid_argument("signal length does not match K");
    VectorXcd gamma;
    if (canonical) {
        gamma = discrete_canonical_dual(sys);
    } else {
        spec.validate(false);  // Algorithm-3/4 duals need a TP or EB window
        gamma = discretize_dual(compute_dual(spec, lat, L, a, nullptr), K);
    }
    const DgtCoefficients c = dgt(f, sys);
    const VectorXcd rec = idgt(c, gamma, sys);
    const double err = (rec - f).norm() / (f.norm() > 0.0 ? f.norm() : 1.0);
    {
        std::ofstream os = open_out(out_dir, "coefficients.csv");
        write_coefficients_csv(os, c);
    }
    {
        std::ofstream os = open_out(out_dir, "reconstruction.csv");
        write_signal_csv(os, rec);
    }
    json j = {{"command", "dgt"},
              {"window", spec.describe()},
              {"alpha", lat.alpha},
              {"beta", lat.beta},
              {"K", K},
              {"a", a},
              {"M", M},
              {"dual", canonical ? "canonical" : ("L=" + std::to_string(L))},
              {"signal", signal_path.empty() ? "random" : signal_path},
              {"seed", seed},
              {"roundtrip_error", err}};
    write_summary(out_dir, j);
    std::cout << "round-trip error " << fmt_double(err) << "\n";
    return 0;
}

int cmd_verify(const WindowSpec& spec, const Lattice& lat, int L, int a, int K,
               int M, unsigned seed, double tol, const std::string& out_dir) {
    spec.validate(false);
    double residual = 0.0;
    DualSampleSet set = compute_dual(spec, lat, L, a, &residual);
    double a_est = 0.0, b_est = 0.0;
    if (!spec.tp.empty())
        std::tie(a_est, b_est) =
            frame_bounds(TpWindow(parse_weights(spec.tp)), lat, L);
    else
        std::tie(a_est, b_est) =
            frame_bounds(EbWindow(parse_weights(spec.eb)), lat, L);
    DiscreteGaborSystem sys(K, a, M, spec.discretize(lat.alpha, a, K));
    const VectorXcd gamma = discretize_dual(set, K);
    double rt = 0.0;
    std::mt19937 rng(seed);
    for (int t = 0; t < 10; ++t) {
        std::normal_distribution<double> nd;
        VectorXcd f(K);
        for (int n = 0; n < K; ++n) f(n) = cplx(nd(rng), nd(rng));
        rt = std::max(rt, (idgt(dgt(f, sys), gamma, sys) - f).norm() / f.norm());
    }
    const bool ok = residual < tol && rt < tol;
    json j = {{"command", "verify"},
              {"window", spec.describe()},
              {"alpha", lat.alpha},
              {"beta", lat.beta},
              {"L", L},
              {"a", a},
              {"K", K},
              {"M", M},
              {"tol", tol},
              {"wexler_raz_residual", residual},
              {"frame_bound_lower", a_est},
              {"frame_bound_upper", b_est},
              {"roundtrip_error", rt},
              {"verified", ok}};
    write_summary(out_dir, j);
    std::cout << (ok ? "verified" : "NOT verified") << ": residual "
              << fmt_double(residual) << ", round-trip " << fmt_double(rt)
              << "\n";
    return ok ? 0 : kExitRegime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor dual-window toolkit"};
    app.require_subcommand(1);
    // let --out-dir/--seed/--tol appear after the subcommand name too
    app.fallthrough();
    app.set_config("--config", "", "key=value config file; flags override");

    std::string out_dir = ".";
    unsigned seed = 1;
    double tol = 1e-8;
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "seed for random test signals");
    app.add_option("--tol", tol, "verification tolerance");

    WindowSpec spec;
    double alpha = 1.0, beta = 0.5, lambda = 0.0;
    int L = 0, a = 8, K = 0, M = 0, steps = 20, l_ref = -1;
    std::string grid, l_list, signal_path, dual_kind = "canonical";
    bool zak_out = false, with_frame_algo = false;

    CLI::App* w = app.add_subcommand("window", "evaluate a window / its Zak vector");
    add_window_flags(w, spec);
    w->add_option("--grid", grid, "evaluation grid start:step:stop");
    w->add_option("--alpha", alpha);
    w->add_option("--a", a, "samples per alpha step");
    w->add_option("--K", K, "Zak vector length");
    w->add_flag("--zak", zak_out, "write the length-K Zak vector");

    CLI::App* d = app.add_subcommand("dual", "compute a compactly supported dual");
    add_window_flags(d, spec);
    d->add_option("--alpha", alpha)->required();
    d->add_option("--beta", beta)->required();
    d->add_option("--L", L);
    d->add_option("--a", a);

    CLI::App* cv = app.add_subcommand("converge", "dual convergence study in L");
    add_window_flags(cv, spec);
    cv->add_option("--alpha", alpha)->required();
    cv->add_option("--beta", beta)->required();
    cv->add_option("--L-list", l_list, "comma-separated L values")->required();
    cv->add_option("--L-ref", l_ref, "reference L (default 3*max)");
    cv->add_option("--a", a);

    CLI::App* sc = app.add_subcommand("schulz", "iteration stability traces");
    add_window_flags(sc, spec);
    sc->add_option("--gauss", spec.gauss, "Gaussian window e^{-pi x^2/v}");
    sc->add_option("--alpha", alpha)->required();
    sc->add_option("--K", K)->required();
    sc->add_option("--a", a)->required();
    sc->add_option("--M", M)->required();
    sc->add_option("--steps", steps);
    sc->add_option("--lambda", lambda, "relaxation (default 1/B_est)");
    sc->add_flag("--with-frame-algo", with_frame_algo);

    CLI::App* dg = app.add_subcommand("dgt", "transform + reconstruction round trip");
    add_window_flags(dg, spec);
    dg->add_option("--gauss", spec.gauss, "Gaussian window e^{-pi x^2/v}");
    dg->add_option("--alpha", alpha)->required();
    dg->add_option("--beta", beta)->required();
    dg->add_option("--K", K)->required();
    dg->add_option("--a", a)->required();
    dg->add_option("--M", M)->required();
    dg->add_option("--L", L, "dual support parameter when --dual=L");
    dg->add_option("--signal", signal_path, "input signal (.csv or .gdk)");
    dg->add_option("--dual", dual_kind, "canonical | L")->capture_default_str();

    CLI::App* vf = app.add_subcommand("verify", "duality + frame-bound report");
    add_window_flags(vf, spec);
    vf->add_option("--alpha", alpha)->required();
    vf->add_option("--beta", beta)->required();
    vf->add_option("--L", L);
    vf->add_option("--a", a);
    vf->add_option("--K", K)->required();
    vf->add_option("--M", M)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (w->parsed())
            return cmd_window(spec, grid, out_dir, K, a, alpha, zak_out);
        if (d->parsed())
            return cmd_dual(spec, Lattice(alpha, beta), L, a, out_dir);
        if (cv->parsed())
            return cmd_converge(spec, Lattice(alpha, beta), l_list, a, l_ref, out_dir);
        if (sc->parsed())
            return cmd_schulz(spec, alpha, K, a, M, steps, lambda,
                              with_frame_algo, out_dir);
        if (dg->parsed()) {
            if (dual_kind != "canonical" && dual_kind != "L")
                throw std::invalid_argument("--dual must be canonical or L");
            return cmd_dgt(spec, Lattice(alpha, beta), K, a, M, L, signal_path,
                           dual_kind == "canonical", seed, out_dir);
        }
        if (vf->parsed())
            return cmd_verify(spec, Lattice(alpha, beta), L, a, K, M, seed, tol,
                              out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    }
    return kExitUsage;
}
