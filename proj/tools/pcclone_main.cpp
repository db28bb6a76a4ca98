// pcclone: fidelities of phase-covariant cloning schemes for coherent states.
//
// Subcommands: fidelity, optimize, table1, fig1, fig2, simulate, check.
// Exit codes: 0 success, 1 check failure, 2 invalid flags, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcclone/fidelity.hpp"
#include "pcclone/optimizer.hpp"
#include "pcclone/quadrature.hpp"
#include "pcclone/report.hpp"
#include "pcclone/simulator.hpp"
#include "pcclone/specfun.hpp"

using nlohmann::json;
using namespace pcclone;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct SchemeFlags {
    std::string scheme;
    int n = 1;
    int m = 2;
    double alpha = 0.0;
    double eta = 1.0;
    double theta = 0.0;
    double k = 0.0;
    bool eta_set = false;
    bool theta_set = false;
    bool k_set = false;
};

void add_scheme_options(CLI::App* cmd, SchemeFlags& f, bool need_alpha = true) {
    cmd->add_option("--scheme", f.scheme, "scheme: cl-sg, cl-dh, ff-sg, ff-dh")->required();
    cmd->add_option("--n", f.n, "input copies N");
    cmd->add_option("--m", f.m, "output copies M");
    auto* alpha = cmd->add_option("--alpha", f.alpha, "amplitude modulus |alpha|");
    if (need_alpha) alpha->required();
    cmd->add_option("--eta", f.eta, "detector efficiency (double-homodyne schemes)")
        ->check(CLI::Range(1e-9, 1.0))
        ->each([&f](const std::string&) { f.eta_set = true; });
    cmd->add_option("--theta", f.theta, "splitting angle (feedforward schemes)")
        ->each([&f](const std::string&) { f.theta_set = true; });
    cmd->add_option("--k", f.k, "feedforward gain (feedforward schemes)")
        ->each([&f](const std::string&) { f.k_set = true; });
}

// Validates flag combinations and assembles the configuration.  Throws
// std::invalid_argument (exit 2) on contradictory flags.
Scheme resolve_scheme(const SchemeFlags& f, SchemeConfig& cfg,
                      std::optional<FeedforwardParams>& par, bool require_ff_params = true) {
    auto scheme = parse_scheme(f.scheme);
    if (!scheme) throw std::invalid_argument("unknown scheme '" + f.scheme + "'");

    const bool is_ff = scheme_is_feedforward(*scheme);
    const bool is_dh = scheme_kind(*scheme) == MeasurementKind::DoubleHomodyne;
    if (!is_ff && (f.theta_set || f.k_set))
        throw std::invalid_argument("--theta/--k apply only to feedforward schemes");
    if (!is_dh && f.eta_set)
        throw std::invalid_argument("--eta applies only to double-homodyne schemes");
    if (is_ff && require_ff_params && !(f.theta_set && f.k_set))
        throw std::invalid_argument("feedforward schemes require --theta and --k");

    cfg.n_in = f.n;
    cfg.m_out = f.m;
    cfg.alpha_mod = f.alpha;
    cfg.model = is_dh ? MeasurementModel::double_homodyne(f.eta) : MeasurementModel::ideal_sg();
    par = is_ff && require_ff_params ? std::optional<FeedforwardParams>({f.theta, f.k})
                                     : std::nullopt;
    return *scheme;
}

json scheme_config_json(const SchemeFlags& f, Scheme scheme) {
    json j{{"scheme", scheme_name(scheme)}, {"n", f.n}, {"m", f.m}, {"alpha", f.alpha}};
    if (scheme_kind(scheme) == MeasurementKind::DoubleHomodyne) j["eta"] = f.eta;
    if (scheme_is_feedforward(scheme)) {
        j["theta"] = f.theta;
        j["k"] = f.k;
    }
    return j;
}

const char* method_name(FidMethod m) {
    switch (m) {
        case FidMethod::Series: return "series";
        case FidMethod::Quadrature: return "quadrature";
        case FidMethod::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

int cmd_fidelity(const SchemeFlags& f, double tail_tol, const std::string& out_path) {
    SchemeConfig cfg;
    std::optional<FeedforwardParams> par;
    const Scheme scheme = resolve_scheme(f, cfg, par);

    SeriesControl ctrl;
    ctrl.tail_tol = tail_tol;
    const FidelityResult r = fid_series(cfg, par, ctrl);

    std::cout << "F = " << format_g6(r.value) << "  (method=" << method_name(r.method)
              << ", terms=" << r.terms_used << ", tail_bound=" << r.tail_bound << ")\n";
    json out{{"value", r.value},
             {"terms_used", r.terms_used},
             {"tail_bound", r.tail_bound},
             {"method", method_name(r.method)},
             {"config", scheme_config_json(f, scheme)}};
    std::cout << out.dump() << "\n";

    if (!out_path.empty()) {
        json doc{{"manifest", manifest_json(make_manifest("fidelity", scheme_config_json(f, scheme)))},
                 {"result", out}};
        write_file_or_throw(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_optimize(const SchemeFlags& f, double opt_tol, const std::string& out_path) {
    SchemeConfig cfg;
    std::optional<FeedforwardParams> par;
    const Scheme scheme = resolve_scheme(f, cfg, par, /*require_ff_params=*/false);
    if (!scheme_is_feedforward(scheme))
        throw std::invalid_argument("optimize applies only to feedforward schemes");

    const OptimumReport rep = optimize_ff(cfg, {}, opt_tol);
    std::cout << "optimum: theta = " << format_g6(rep.best.theta)
              << ", k = " << format_g6(rep.best.k) << ", F = " << format_g6(rep.fidelity.value)
              << (rep.converged ? "" : "  [not converged]") << "\n";
    json out{{"theta", rep.best.theta},
             {"k", rep.best.k},
             {"fidelity", rep.fidelity.value},
             {"tail_bound", rep.fidelity.tail_bound},
             {"grid_evals", rep.grid_evals},
             {"refine_iters", rep.refine_iters},
             {"converged", rep.converged},
             {"config", scheme_config_json(f, scheme)}};
    std::cout << out.dump() << "\n";

    if (!out_path.empty()) {
        json doc{{"manifest", manifest_json(make_manifest("optimize", scheme_config_json(f, scheme)))},
                 {"result", out}};
        write_file_or_throw(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_table1(const std::string& out_path) {
    const auto rows = compute_table1();
    const std::string csv = table1_csv(rows);
    write_output_with_manifest(out_path, csv,
                               make_manifest("table1", json{{"out", out_path}}));
    std::cout << csv;
    std::cout << "# F_cl_DH column uses eta=1; eta=0.8 alternative:";
    for (const auto& r : rows) std::cout << " " << format_g6(r.cl_dh_eta08.value);
    std::cout << "\nwrote " << out_path << "\n";
    return 0;
}

int cmd_fig1(const std::string& out_path, double alpha_min, double alpha_max, int steps) {
    const auto rows = compute_fig1(alpha_min, alpha_max, steps);
    write_output_with_manifest(
        out_path, fig1_csv(rows),
        make_manifest("fig1", json{{"out", out_path},
                                   {"alpha_min", alpha_min},
                                   {"alpha_max", alpha_max},
                                   {"steps", steps}}));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_fig2(const std::string& out_path, int m_max) {
    const auto rows = compute_fig2(fig2_default_grid(m_max));
    write_output_with_manifest(out_path, fig2_csv(rows),
                               make_manifest("fig2", json{{"out", out_path}, {"m_max", m_max}}));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_simulate(const SchemeFlags& f, std::int64_t samples, std::uint64_t seed,
                 const std::string& out_path) {
    SchemeConfig cfg;
    std::optional<FeedforwardParams> par;
    const Scheme scheme = resolve_scheme(f, cfg, par);

    const EstimateResult est = par ? simulate_feedforward(cfg, *par, samples, seed)
                                   : simulate_semiclassical(cfg, samples, seed);
    const double analytic = fid_series(cfg, par).value;
    const double dev = std::abs(est.mean - analytic);
    const bool pass = dev <= 3.0 * est.std_error || dev < 1e-12;

    std::cout << "mean = " << est.mean << " +- " << est.std_error << "  (n=" << est.samples
              << ", seed=" << est.seed << ", rng=" << kRngName << ")\n"
              << "analytic = " << analytic << ", |diff| = " << dev << " -> "
              << (pass ? "PASS" : "FAIL") << " (3 std errors)\n";

    json out{{"mean", est.mean},        {"std_error", est.std_error}, {"samples", est.samples},
             {"seed", est.seed},        {"rng", kRngName},            {"analytic", analytic},
             {"within_3se", pass},      {"config", scheme_config_json(f, scheme)}};
    std::cout << out.dump() << "\n";

    if (!out_path.empty()) {
        json doc{{"manifest",
                  manifest_json(make_manifest("simulate", scheme_config_json(f, scheme), seed))},
                 {"result", out}};
        write_file_or_throw(out_path, doc.dump(2) + "\n");
    }
    return pass ? 0 : 1;
}

// --- self-test ------------------------------------------------------------

// periodic trapezoid (spectrally accurate for these integrands); long double
// accumulation keeps the cancellation floor below tiny Fourier coefficients
template <class F>
double periodic_trapezoid(F&& fn, int nodes) {
    long double s = 0.0L;
    for (int i = 0; i < nodes; ++i) s += static_cast<long double>(fn(kTwoPi * i / nodes));
    return static_cast<double>(s * static_cast<long double>(kTwoPi) / nodes);
}

// e^{-z} I_m(z) by exact term-wise integration of e^{z cos phi} cos(m phi):
// sum_j (z/2)^{m+2j} / (j! (m+j)!), accumulated in log space.  Covers the
// coefficients too small for any fixed-precision quadrature to resolve.
double scaled_bessel_by_series(int m, double z) {
    if (z == 0.0) return m == 0 ? 1.0 : 0.0;
    const double lh = std::log(0.5 * z);
    double s = 0.0;
    for (int j = 0; j < 4000; ++j) {
        const double lt = (m + 2.0 * j) * lh - specfun::log_factorial(j) -
                          specfun::log_factorial(m + j) - z;
        const double t = std::exp(lt);
        s += t;
        if (j > z && t < 1e-18 * s) break;
    }
    return s;
}

int cmd_check(int forced_n_max) {
    struct Check {
        std::string name;
        bool ok = true;
        std::string detail;
    };
    std::vector<Check> checks;
    auto run = [&checks](const std::string& name, auto&& body) {
        Check c{name};
        try {
            body(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = e.what();
        }
        checks.push_back(c);
    };

    run("bessel-quadrature-identity", [](Check& c) {
        for (double z : {0.5, 2.0, 10.0, 50.0})
            for (int m : {0, 1, 2, 7, 20}) {
                const double by_rec = specfun::scaled_bessel_i(m, z);
                // below ~1e-8 the raw Fourier coefficient drowns in the
                // trapezoid's rounding floor; integrate term by term instead
                const double oracle =
                    (by_rec >= 1e-8)
                        ? periodic_trapezoid(
                              [&](double phi) {
                                  return std::exp(z * (std::cos(phi) - 1.0)) * std::cos(m * phi);
                              },
                              4096) /
                              kTwoPi
                        : scaled_bessel_by_series(m, z);
                if (std::abs(oracle - by_rec) > 1e-9 * std::abs(by_rec)) {
                    c.ok = false;
                    c.detail = "m=" + std::to_string(m) + " z=" + format_g6(z);
                    return;
                }
            }
    });

    run("bessel-normalization", [](Check& c) {
        for (double z : {0.5, 2.0, 10.0, 50.0}) {
            const int k_max = static_cast<int>(std::ceil(z + 40.0 * std::sqrt(z) + 40.0));
            const auto row = specfun::scaled_bessel_row(k_max, z);
            double s = row[0];
            for (int i = 1; i <= k_max; ++i) s += 2.0 * row[static_cast<std::size_t>(i)];
            if (std::abs(s - 1.0) > 1e-10) {
                c.ok = false;
                c.detail = "z=" + format_g6(z);
                return;
            }
        }
    });

    run("bessel-recurrence", [](Check& c) {
        for (double z : {0.5, 2.0, 50.0}) {
            const auto row = specfun::scaled_bessel_row(60, z);
            for (int m = 1; m < 60; ++m) {
                const double lhs = row[static_cast<std::size_t>(m - 1)] -
                                   row[static_cast<std::size_t>(m + 1)];
                const double rhs = (2.0 * m / z) * row[static_cast<std::size_t>(m)];
                if (rhs > 1e-200 && std::abs(lhs - rhs) > 1e-10 * rhs) {
                    c.ok = false;
                    c.detail = "m=" + std::to_string(m) + " z=" + format_g6(z);
                    return;
                }
            }
        }
    });

    run("loggamma-half-integer", [](Check& c) {
        const double sqrt_pi = 1.7724538509055160273;
        if (std::abs(std::exp(specfun::log_gamma(0.5)) - sqrt_pi) > 1e-13 * sqrt_pi) {
            c.ok = false;
            return;
        }
        // Gamma(7.5) by the downward half-integer product
        double prod = sqrt_pi;
        for (double v = 0.5; v < 7.0; v += 1.0) prod *= v;
        if (std::abs(specfun::log_gamma(7.5) - std::log(prod)) > 1e-13 * std::log(prod))
            c.ok = false;
    });

    run("density-normalization", [](Check& c) {
        auto norm_of = [](const PhaseDensity& p) {
            return periodic_trapezoid([&](double phi) { return p(phi); }, 8192);
        };
        for (double g : {0.0, 2.0, 5.0})
            if (std::abs(norm_of(PhaseDensity(MeasurementModel::ideal_sg(), g)) - 1.0) > 1e-9) {
                c.ok = false;
                c.detail = "sg gamma=" + format_g6(g);
                return;
            }
        for (auto [g, eta] : {std::pair{2.0, 0.8}, std::pair{5.0, 1.0}})
            if (std::abs(norm_of(PhaseDensity(MeasurementModel::double_homodyne(eta), g)) - 1.0) >
                1e-9) {
                c.ok = false;
                c.detail = "dh gamma=" + format_g6(g);
                return;
            }
    });

    run("density-symmetry", [](Check& c) {
        PhaseDensity sg(MeasurementModel::ideal_sg(), 3.0);
        PhaseDensity dh(MeasurementModel::double_homodyne(0.8), 3.0);
        for (double phi : {0.3, 1.1, 2.9})
            if (std::abs(sg(phi) - sg(kTwoPi - phi)) > 1e-12 * sg(phi) ||
                std::abs(dh(phi) - dh(kTwoPi - phi)) > 1e-12 * dh(phi)) {
                c.ok = false;
                return;
            }
    });

    run("fidelity-at-zero", [](Check& c) {
        SchemeConfig sg{1, 2, 0.0, MeasurementModel::ideal_sg()};
        SchemeConfig dh{1, 2, 0.0, MeasurementModel::double_homodyne(0.8)};
        const FeedforwardParams none{0.0, 0.0};
        for (double v : {fid_cl_sg(sg).value, fid_cl_dh(dh).value, fid_ff_sg(sg, none).value,
                         fid_ff_dh(dh, none).value})
            if (std::abs(v - 1.0) > 1e-12) {
                c.ok = false;
                return;
            }
    });

    run("m-independence", [](Check& c) {
        for (int m : {1, 2, 10}) {
            SchemeConfig sg{1, m, 3.0, MeasurementModel::ideal_sg()};
            SchemeConfig dh{1, m, 3.0, MeasurementModel::double_homodyne(0.8)};
            if (fid_cl_sg(sg).value != fid_cl_sg(SchemeConfig{1, 2, 3.0, sg.model}).value ||
                fid_cl_dh(dh).value != fid_cl_dh(SchemeConfig{1, 2, 3.0, dh.model}).value) {
                c.ok = false;
                return;
            }
        }
    });

    run("oracle-equivalence", [forced_n_max](Check& c) {
        SeriesControl ctrl;
        if (forced_n_max > 0) ctrl.n_max = forced_n_max;  // fault-injection hook
        struct Case {
            SchemeConfig cfg;
            std::optional<FeedforwardParams> par;
        };
        const std::vector<Case> cases{
            {{1, 2, 2.0, MeasurementModel::ideal_sg()}, std::nullopt},
            {{1, 2, 2.0, MeasurementModel::double_homodyne(0.8)}, std::nullopt},
            {{1, 2, 3.0, MeasurementModel::ideal_sg()}, FeedforwardParams{0.861, 0.746}},
            {{1, 2, 3.0, MeasurementModel::double_homodyne(0.8)}, FeedforwardParams{0.809, 0.697}},
        };
        for (const auto& k : cases) {
            const double series = fid_series(k.cfg, k.par, ctrl).value;
            const double quad = fid_quadrature(k.cfg, k.par).value;
            if (std::abs(series - quad) > 1e-6) {
                c.ok = false;
                c.detail = "series/quadrature mismatch";
                return;
            }
        }
    });

    run("ordering-table1", [](Check& c) {
        // representative points with the tabulated optima of the two
        // feedforward schemes
        struct P {
            double alpha, th_sg, k_sg, th_dh, k_dh;
        };
        for (const auto& p :
             {P{3.0, 0.861, 0.746, 0.809, 0.697}, P{5.0, 0.802, 0.714, 0.793, 0.703}}) {
            SchemeConfig sg{1, 2, p.alpha, MeasurementModel::ideal_sg()};
            SchemeConfig dh08{1, 2, p.alpha, MeasurementModel::double_homodyne(0.8)};
            SchemeConfig dh1{1, 2, p.alpha, MeasurementModel::double_homodyne(1.0)};
            const double ff_sg = fid_ff_sg(sg, {p.th_sg, p.k_sg}).value;
            const double cl_sg = fid_cl_sg(sg).value;
            const double ff_dh = fid_ff_dh(dh08, {p.th_dh, p.k_dh}).value;
            const double cl_dh = fid_cl_dh(dh1).value;
            const bool ordered = ff_sg > cl_sg && cl_sg > ff_dh && ff_dh > cl_dh &&
                                 cl_dh > 2.0 / 3.0;
            if (!ordered) {
                c.ok = false;
                c.detail = "alpha=" + format_g6(p.alpha);
                return;
            }
        }
    });

    run("benchmark-values", [](Check& c) {
        if (std::abs(fid_gaussian_benchmark(1, 2) - 2.0 / 3.0) > 1e-15 ||
            fid_gaussian_benchmark(3, 3) != 1.0 ||
            std::abs(fid_gaussian_benchmark(1, 5) - 5.0 / 9.0) > 1e-15)
            c.ok = false;
    });

    int failures = 0;
    std::string first_fail;
    for (const auto& c : checks) {
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
        if (!c.ok && failures++ == 0) first_fail = c.name;
    }
    if (failures) {
        std::cerr << "check failed: " << first_fail << "\n";
        return 1;
    }
    std::cout << "all " << checks.size() << " checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fidelities of phase-covariant cloning schemes for coherent states"};
    app.require_subcommand(1);
    int exit_code = 0;

    SchemeFlags fid_flags;
    double fid_tol = 1e-9;
    std::string fid_out;
    auto* fid_cmd = app.add_subcommand("fidelity", "evaluate one scheme fidelity");
    add_scheme_options(fid_cmd, fid_flags);
    fid_cmd->add_option("--tol", fid_tol, "series tail tolerance");
    fid_cmd->add_option("--out", fid_out, "write JSON result to this path");
    fid_cmd->callback([&] { exit_code = cmd_fidelity(fid_flags, fid_tol, fid_out); });

    SchemeFlags opt_flags;
    double opt_tol = 1e-6;
    std::string opt_out;
    auto* opt_cmd = app.add_subcommand("optimize", "optimize (theta, k) of a feedforward scheme");
    add_scheme_options(opt_cmd, opt_flags);
    opt_cmd->add_option("--tol", opt_tol, "optimizer fidelity tolerance");
    opt_cmd->add_option("--out", opt_out, "write JSON result to this path");
    opt_cmd->callback([&] { exit_code = cmd_optimize(opt_flags, opt_tol, opt_out); });

    std::string t1_out = "table1.csv";
    auto* t1_cmd = app.add_subcommand("table1", "reference comparison table at alpha = 3..6");
    t1_cmd->add_option("--out", t1_out, "output CSV path");
    t1_cmd->callback([&] { exit_code = cmd_table1(t1_out); });

    std::string f1_out = "fig1.csv";
    double f1_min = 0.0, f1_max = 6.0;
    int f1_steps = 61;
    auto* f1_cmd = app.add_subcommand("fig1", "fidelity versus amplitude (1-to-2)");
    f1_cmd->add_option("--out", f1_out, "output CSV path");
    f1_cmd->add_option("--alpha-min", f1_min, "lower amplitude bound");
    f1_cmd->add_option("--alpha-max", f1_max, "upper amplitude bound");
    f1_cmd->add_option("--steps", f1_steps, "number of rows");
    f1_cmd->callback([&] { exit_code = cmd_fig1(f1_out, f1_min, f1_max, f1_steps); });

    std::string f2_out = "fig2.csv";
    int f2_mmax = 200;
    auto* f2_cmd = app.add_subcommand("fig2", "fidelity versus output copies at alpha = 5");
    f2_cmd->add_option("--out", f2_out, "output CSV path");
    f2_cmd->add_option("--m-max", f2_mmax, "largest output copy number")->check(CLI::Range(2, 100000));
    f2_cmd->callback([&] { exit_code = cmd_fig2(f2_out, f2_mmax); });

    SchemeFlags sim_flags;
    std::int64_t sim_samples = 1000000;
    std::uint64_t sim_seed = 12345;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate vs analytic value");
    add_scheme_options(sim_cmd, sim_flags);
    sim_cmd->add_option("--samples", sim_samples, "sample count (>= 1000)");
    sim_cmd->add_option("--seed", sim_seed, "rng seed");
    sim_cmd->add_option("--out", sim_out, "write JSON result to this path");
    sim_cmd->callback([&] { exit_code = cmd_simulate(sim_flags, sim_samples, sim_seed, sim_out); });

    int check_forced_nmax = 0;
    auto* check_cmd = app.add_subcommand("check", "run the built-in invariant suite");
    check_cmd->add_option("--force-nmax", check_forced_nmax, "fault-injection: force series cutoff")
        ->group("");  // hidden test hook
    check_cmd->callback([&] { exit_code = cmd_check(check_forced_nmax); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
