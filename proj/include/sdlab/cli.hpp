#ifndef SDLAB_CLI_HPP
#define SDLAB_CLI_HPP

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdlab/audit.hpp"
#include "sdlab/config.hpp"
#include "sdlab/experiments.hpp"
#include "sdlab/io.hpp"

namespace sdlab::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// ---------------------------------------------------------------------------
// Config schemas (documented keys per experiment)
// ---------------------------------------------------------------------------

inline const std::set<std::string>& common_keys() {
    static const std::set<std::string> keys = {
        "grid.m",      "grid.length",      "sd.sigma",   "sd.epsilon", "run.dt",
        "run.tfinal",  "run.record_every", "data.kind",  "data.width", "data.amplitude",
        "data.center_mode", "data.mode",   "data.s",     "data.bandwidth", "data.v0kind",
        "data.v0const", "data.v0scale",    "eps.exponent", "out.dir",  "seed"};
    return keys;
}

inline std::set<std::string> with_common(std::initializer_list<std::string> extra) {
    std::set<std::string> keys = common_keys();
    keys.insert(extra.begin(), extra.end());
    return keys;
}

// ---------------------------------------------------------------------------
// Manifest helpers
// ---------------------------------------------------------------------------

struct RunContext {
    Config config;
    std::string out_dir;
    std::uint64_t seed = 0;
    double eps = 0.01;
};

inline RunContext make_context(const Config& cfg_in, const std::string& experiment,
                               std::optional<std::uint64_t> seed_override,
                               std::optional<std::string> out_override) {
    RunContext ctx;
    ctx.config = cfg_in;
    if (seed_override) ctx.config.set("seed", std::to_string(*seed_override));
    if (out_override) ctx.config.set("out.dir", *out_override);
    ctx.config.set_default("seed", "1");
    ctx.config.set_default("eps.exponent", "0.01");
    ctx.config.set_default("out.dir", "out-" + experiment);
    ctx.seed = static_cast<std::uint64_t>(ctx.config.get_long("seed"));
    ctx.eps = ctx.config.get_double("eps.exponent");
    if (!(ctx.eps > 0.0) || ctx.eps > 0.2)
        throw config_error("eps.exponent", "must lie in (0, 0.2]");
    ctx.out_dir = ctx.config.get_string("out.dir");
    return ctx;
}

inline json manifest_base(const RunContext& ctx, const std::string& experiment) {
    json j;
    j["experiment"] = experiment;
    j["seed"] = ctx.seed;
    j["eps_exponent"] = ctx.eps;
    json cfg = json::object();
    for (const auto& [k, v] : ctx.config.entries()) cfg[k] = v;
    j["config"] = cfg;
    j["config_hash"] = config_hash_hex(ctx.config.canonical_text());
    return j;
}

inline void write_manifest(const RunContext& ctx, json j) {
    ensure_directory(ctx.out_dir);
    write_text_file(ctx.out_dir + "/manifest.json", j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

inline int cmd_simulate(const Config& cfg_in, std::optional<std::uint64_t> seed,
                        std::optional<std::string> out, std::ostream& console) {
    RunContext ctx = make_context(cfg_in, "simulate", seed, out);
    ctx.config.require_known(common_keys());
    const Grid1D grid = grid_from_config(ctx.config);
    const SDParams params = params_from_config(ctx.config);
    const double t_final = ctx.config.get_double("run.tfinal", 1.0);
    const std::size_t steps = detail::step_count_for(0.0, t_final, params.dt);
    std::size_t record_every =
        static_cast<std::size_t>(ctx.config.get_long("run.record_every", 0));
    if (record_every == 0) {
        record_every = std::max<std::size_t>(1, steps / 100);
        while (steps % record_every != 0) --record_every;
    }
    const SDState initial = make_initial_state(grid, ctx.config, params.epsilon, ctx.seed);
    const Trajectory traj = evolve(initial, params, t_final, record_every);

    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv", {"t", "x", "re_u", "im_u", "v"});
    for (std::size_t k = 0; k < traj.u.num_frames(); ++k) {
        const double t = traj.u.time_of(k);
        for (std::size_t i = 0; i < grid.num_points(); ++i) {
            csv.write_row({fmt17(t), fmt17(grid.point(i)), fmt17(traj.u.frames[k].samples[i].real()),
                           fmt17(traj.u.frames[k].samples[i].imag()),
                           fmt17(traj.v.frames[k].samples[i].real())});
        }
    }
    const ConservationReport cons = run_conservation(ctx.config, ctx.seed);
    CsvWriter ccsv(ctx.out_dir + "/conservation.csv",
                   {"step", "t", "rel_mass_drift", "v_imag_defect"});
    for (std::size_t k = 0; k < cons.times.size(); ++k)
        ccsv.write_row({std::to_string(k + 1), fmt17(cons.times[k]),
                        fmt17(cons.rel_mass_drift[k]), fmt17(cons.v_imag_defect[k])});

    json man = manifest_base(ctx, "simulate");
    man["grid"] = {{"m", grid.num_points()}, {"length", grid.length()}};
    man["params"] = {{"sigma", params.sigma}, {"epsilon", params.epsilon}, {"dt", params.dt}};
    man["steps"] = steps;
    man["record_every"] = record_every;
    man["max_rel_mass_drift"] = cons.max_rel_mass_drift;
    man["max_v_imag_defect"] = cons.max_v_imag_defect;
    if (cons.oracle_max_error >= 0.0) man["plane_wave_oracle_max_error"] = cons.oracle_max_error;
    man["outputs"] = {"report.csv", "conservation.csv"};
    write_manifest(ctx, man);
    console << "simulate: " << steps << " steps, max mass drift " << cons.max_rel_mass_drift
            << ", outputs in " << ctx.out_dir << "\n";
    return kExitOk;
}

inline json report_to_json(const audit::ScalingReport& rep) {
    json j;
    j["family"] = rep.family;
    j["k"] = rep.k;
    j["s"] = rep.s;
    j["eps"] = rep.eps;
    j["N"] = rep.n_values;
    j["lhs"] = rep.lhs;
    j["rhs1"] = rep.rhs1;
    j["rhs2"] = rep.rhs2;
    j["slopes"] = {{"lhs", rep.lhs_fit.slope},
                   {"rhs1", rep.rhs1_fit.slope},
                   {"rhs2", rep.rhs2_fit.slope},
                   {"ratio", rep.ratio_slope}};
    j["predicted"] = {{"lhs", rep.pred_lhs},
                      {"rhs1", rep.pred_rhs1},
                      {"rhs2", rep.pred_rhs2},
                      {"ratio", rep.pred_ratio},
                      {"lhs_exact", rep.pred_lhs_str},
                      {"rhs1_exact", rep.pred_rhs1_str},
                      {"rhs2_exact", rep.pred_rhs2_str},
                      {"ratio_exact", rep.pred_ratio_str}};
    j["r2"] = {{"lhs", rep.lhs_fit.r2}, {"rhs1", rep.rhs1_fit.r2}, {"rhs2", rep.rhs2_fit.r2}};
    j["condition"] = rep.condition;
    j["condition_violated"] = rep.violated;
    j["verdict"] = rep.verdict;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

inline int cmd_audit(std::optional<Config> cfg_in, const std::string& family_arg, double k,
                     double s, int n_max, double eps, std::optional<std::uint64_t> seed,
                     std::optional<std::string> out, std::ostream& console) {
    Config cfg = cfg_in.value_or(Config{});
    cfg.set_default("eps.exponent", fmt17(eps));
    cfg.set("audit.family", family_arg);
    cfg.set("audit.k", fmt17(k));
    cfg.set("audit.s", fmt17(s));
    cfg.set("audit.nmax", std::to_string(n_max));
    RunContext ctx = make_context(cfg, "audit", seed, out);
    ctx.config.require_known(
        {"audit.family", "audit.k", "audit.s", "audit.nmax", "eps.exponent", "out.dir", "seed"});

    std::vector<audit::Family> fams;
    if (family_arg == "all") {
        fams = audit::all_families();
        fams.push_back(audit::Family::p_u2_1w);
    } else {
        fams.push_back(audit::parse_family(family_arg));
    }
    const std::vector<int> ns = audit::default_n_list(n_max);

    json all = json::array();
    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv",
                  {"family", "k", "s", "N", "lhs", "rhs1", "rhs2", "lhs_slope", "rhs1_slope",
                   "rhs2_slope", "ratio_slope", "pred_lhs", "pred_rhs1", "pred_rhs2",
                   "pred_ratio", "r2_lhs", "verdict"});
    for (audit::Family f : fams) {
        const audit::ScalingReport rep = audit::scaling_sweep(f, k, s, ns, ctx.eps);
        all.push_back(report_to_json(rep));
        for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
            csv.write_row({rep.family, fmt17(rep.k), fmt17(rep.s),
                           std::to_string(rep.n_values[i]), fmt17(rep.lhs[i]), fmt17(rep.rhs1[i]),
                           fmt17(rep.rhs2[i]), fmt17(rep.lhs_fit.slope), fmt17(rep.rhs1_fit.slope),
                           fmt17(rep.rhs2_fit.slope), fmt17(rep.ratio_slope), fmt17(rep.pred_lhs),
                           fmt17(rep.pred_rhs1), fmt17(rep.pred_rhs2), fmt17(rep.pred_ratio),
                           fmt17(rep.lhs_fit.r2), rep.verdict});
        }
    }
    const json out_json = all.size() == 1 ? all.front() : all;
    write_text_file(ctx.out_dir + "/report.json", out_json.dump(2) + "\n");
    json man = manifest_base(ctx, "audit");
    man["outputs"] = {"report.json", "report.csv"};
    write_manifest(ctx, man);
    console << out_json.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_almost_conservation(const Config& cfg_in, std::optional<std::uint64_t> seed,
                                   std::optional<std::string> out, std::ostream& console) {
    RunContext ctx = make_context(cfg_in, "almost-conservation", seed, out);
    ctx.config.require_known(with_common({"ac.delta", "ac.s", "ac.l", "sweep.N"}));
    const ACReport rep = run_almost_conservation(ctx.config, ctx.seed);

    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv",
                  {"N", "delta", "s", "l", "dE_endpoint", "dE_quadrature", "rel_mismatch"});
    for (std::size_t i = 0; i < rep.n_values.size(); ++i)
        csv.write_row({std::to_string(rep.n_values[i]), fmt17(rep.delta), fmt17(rep.s),
                       fmt17(rep.ell), fmt17(rep.de_endpoint[i]), fmt17(rep.de_quadrature[i]),
                       fmt17(rep.rel_mismatch[i])});
    json man = manifest_base(ctx, "almost-conservation");
    man["fitted_N_slope"] = rep.slope_fit.slope;
    man["fit_r2"] = rep.slope_fit.r2;
    man["predicted_param_slope"] = rep.predicted_param_slope;
    man["predicted_endpoint_slope"] = rep.predicted_endpoint_slope;
    man["outputs"] = {"report.csv"};
    write_manifest(ctx, man);
    console << "almost-conservation: fitted N-slope " << rep.slope_fit.slope
            << " (parameter form " << rep.predicted_param_slope << ", endpoint form "
            << rep.predicted_endpoint_slope << ")\n";
    return kExitOk;
}

inline int cmd_sigma_limit(const Config& cfg_in, std::optional<std::uint64_t> seed,
                           std::optional<std::string> out, std::ostream& console) {
    RunContext ctx = make_context(cfg_in, "sigma-limit", seed, out);
    ctx.config.require_known(with_common({"sweep.sigma"}));
    const SigmaLimitReport rep = run_sigma_limit(ctx.config, ctx.seed);

    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv", {"sigma", "err"});
    for (std::size_t i = 0; i < rep.sigmas.size(); ++i)
        csv.write_row({fmt17(rep.sigmas[i]), fmt17(rep.errs[i])});
    json man = manifest_base(ctx, "sigma-limit");
    man["fitted_order"] = rep.fitted_order;
    man["monotone_decreasing"] = rep.monotone;
    man["outputs"] = {"report.csv"};
    write_manifest(ctx, man);
    console << "sigma-limit: fitted order " << rep.fitted_order << ", monotone "
            << (rep.monotone ? "yes" : "no") << "\n";
    return kExitOk;
}

inline int cmd_norms(const Config& cfg_in, std::optional<std::uint64_t> seed,
                     std::optional<std::string> out, std::ostream& console) {
    RunContext ctx = make_context(cfg_in, "norms", seed, out);
    ctx.config.require_known(with_common({"norms.sobolev_s", "norms.bourgain_s",
                                          "norms.bourgain_b", "norms.dispersion",
                                          "norms.window_T"}));
    const Grid1D grid = grid_from_config(ctx.config);
    const SDParams params = params_from_config(ctx.config);
    const double t_final = ctx.config.get_double("run.tfinal", 1.0);
    const double window_t = ctx.config.get_double("norms.window_T", t_final / 2.0);
    const std::string disp_name = ctx.config.get_string("norms.dispersion", "half_laplacian");
    Dispersion disp = Dispersion::half_laplacian;
    if (disp_name == "unit_laplacian") disp = Dispersion::unit_laplacian;
    else if (disp_name == "conjugate_half") disp = Dispersion::conjugate_half;
    else if (disp_name == "none") disp = Dispersion::none;
    else if (disp_name != "half_laplacian")
        throw config_error("norms.dispersion", "unknown tag '" + disp_name + "'");

    const SDState initial = make_initial_state(grid, ctx.config, params.epsilon, ctx.seed);
    const Trajectory traj = evolve(initial, params, t_final, 1);
    const std::vector<double> window = time_window(window_t, traj.u.times());

    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv",
                  {"norm_kind", "s", "b", "dispersion", "window_T", "value"});
    for (double s : ctx.config.get_double_list("norms.sobolev_s", {0.0, 0.5, 1.0})) {
        csv.write_row({"sobolev_final_u", fmt17(s), "", "", "",
                       fmt17(sobolev_norm(traj.u.frames.back(), s))});
    }
    const std::vector<double> ss = ctx.config.get_double_list("norms.bourgain_s", {0.0});
    const std::vector<double> bs = ctx.config.get_double_list("norms.bourgain_b", {0.5});
    for (double s : ss) {
        for (double b : bs) {
            const double v = bourgain_norm(traj.u, BourgainIndex{s, b}, disp, window);
            csv.write_row({"bourgain_u", fmt17(s), fmt17(b), disp_name, fmt17(window_t), fmt17(v)});
            const double vm = bourgain_norm(traj.v, BourgainIndex{s, b}, Dispersion::none, window);
            csv.write_row({"mixed_v", fmt17(s), fmt17(b), "none", fmt17(window_t), fmt17(vm)});
        }
    }
    json man = manifest_base(ctx, "norms");
    man["outputs"] = {"report.csv"};
    write_manifest(ctx, man);
    console << "norms: report in " << ctx.out_dir << "\n";
    return kExitOk;
}

inline int cmd_gwp_exponent(const std::string& l_text, std::optional<std::string> out,
                            std::ostream& console) {
    Rational l;
    try {
        l = rational_from_string(l_text);
    } catch (const std::exception&) {
        throw config_error("l", "cannot parse '" + l_text + "' as a rational");
    }
    const Rational s = gwp_exponent(l);
    console << s.str() << "\n";
    if (out) {
        ensure_directory(*out);
        CsvWriter csv(*out + "/report.csv", {"l", "s_threshold", "s_threshold_decimal"});
        csv.write_row({l.str(), s.str(), fmt17(s.value())});
        json man;
        man["experiment"] = "gwp-exponent";
        man["l"] = l.str();
        man["s_threshold"] = s.str();
        write_text_file(*out + "/manifest.json", man.dump(2) + "\n");
    }
    return kExitOk;
}

inline int cmd_v_bound(const Config& cfg_in, std::optional<std::uint64_t> seed,
                       std::optional<std::string> out, std::ostream& console) {
    RunContext ctx = make_context(cfg_in, "v-bound", seed, out);
    ctx.config.require_known(common_keys());
    const VBoundReport rep = run_v_bound(ctx.config, ctx.seed);

    ensure_directory(ctx.out_dir);
    CsvWriter csv(ctx.out_dir + "/report.csv", {"t", "v_l2"});
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv.write_row({fmt17(rep.times[i]), fmt17(rep.v_norms[i])});
    json man = manifest_base(ctx, "v-bound");
    man["sup_v"] = rep.sup_v;
    man["v0_norm"] = rep.v0_norm;
    man["u0_sq"] = rep.u0_sq;
    man["c_fit"] = rep.c_fit;
    man["verdict"] = rep.verdict;
    man["outputs"] = {"report.csv"};
    write_manifest(ctx, man);
    console << "v-bound: sup ||v|| = " << rep.sup_v << ", ||v0|| = " << rep.v0_norm
            << ", C_fit = " << rep.c_fit << ", " << rep.verdict << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int cli_main(int argc, const char* const* argv, std::ostream& console = std::cout,
                    std::ostream& errs = std::cerr) {
    CLI::App app{"Numerical laboratory for the 1-D Schrodinger-Debye system"};
    app.require_subcommand(1);

    std::string config_path, family = "all", l_text, out_dir;
    bool have_out = false;
    std::int64_t seed_val = 0;
    bool have_seed = false;
    double k = 0.0, s = 0.0, eps = 0.01;
    int n_max = 128;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* copt = sub->add_option("--config", config_path, "key = value configuration file");
        if (config_required) copt->required();
        sub->add_option("--seed", seed_val, "override the config seed")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--out", out_dir, "override out.dir")
            ->each([&](const std::string&) { have_out = true; });
    };

    CLI::App* sim = app.add_subcommand("simulate", "integrate the SD system, export trajectory");
    add_common(sim, true);
    CLI::App* aud = app.add_subcommand("audit", "counter-example scaling sweep");
    add_common(aud, false);
    aud->add_option("--family", family, "family id (e.g. C-uv-1) or 'all'");
    aud->add_option("--k", k, "spatial index k");
    aud->add_option("--s", s, "spatial index s");
    aud->add_option("--nmax", n_max, "largest N in the dyadic sweep");
    aud->add_option("--eps", eps, "epsilon for the +/- exponents");
    CLI::App* ac = app.add_subcommand("almost-conservation", "E(Iu) increment decay in N");
    add_common(ac, true);
    CLI::App* sl = app.add_subcommand("sigma-limit", "sigma -> 0 convergence to cubic NLS");
    add_common(sl, true);
    CLI::App* nr = app.add_subcommand("norms", "norm battery on a trajectory");
    add_common(nr, true);
    CLI::App* gw = app.add_subcommand("gwp-exponent", "global well-posedness exponent -6l/(5+8l)");
    gw->add_option("--l", l_text, "parameter l (decimal or p/q)")->required();
    gw->add_option("--out", out_dir, "optional output directory")
        ->each([&](const std::string&) { have_out = true; });
    CLI::App* vb = app.add_subcommand("v-bound", "sup_t ||v(t)|| audit");
    add_common(vb, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            console << app.help();
            return kExitOk;
        }
        errs << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    std::optional<std::uint64_t> seed_opt;
    if (have_seed) seed_opt = static_cast<std::uint64_t>(seed_val);
    std::optional<std::string> out_opt;
    if (have_out) out_opt = out_dir;

    try {
        if (sim->parsed()) return cmd_simulate(parse_config_file(config_path), seed_opt, out_opt,
                                               console);
        if (aud->parsed()) {
            std::optional<Config> cfg;
            if (!config_path.empty()) cfg = parse_config_file(config_path);
            return cmd_audit(cfg, family, k, s, n_max, eps, seed_opt, out_opt, console);
        }
        if (ac->parsed())
            return cmd_almost_conservation(parse_config_file(config_path), seed_opt, out_opt,
                                           console);
        if (sl->parsed())
            return cmd_sigma_limit(parse_config_file(config_path), seed_opt, out_opt, console);
        if (nr->parsed()) return cmd_norms(parse_config_file(config_path), seed_opt, out_opt,
                                           console);
        if (gw->parsed()) return cmd_gwp_exponent(l_text, out_opt, console);
        if (vb->parsed()) return cmd_v_bound(parse_config_file(config_path), seed_opt, out_opt,
                                             console);
    } catch (const config_error& e) {
        errs << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        errs << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const numerical_error& e) {
        errs << "numerical abort: " << e.what() << "\n";
        return kExitNumericalError;
    }
    errs << "error: no subcommand\n";
    return kExitConfigError;
}

}  // namespace sdlab::cli

#endif
