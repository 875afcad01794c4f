// cascade: scenario runner for the linear shell-model laboratory.
//
// Subcommands: exact, integrate, stationary, inviscid, spectrum,
// asymptotics, compare, validate. Every scenario accepts --config FILE
// (JSON; flags override), --dry-run, --output PATH and --format csv|json.
// CASCADE_SEED provides the default seed. Exit codes: 0 success,
// 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cascade/asymptotics.hpp"
#include "cascade/catalog.hpp"
#include "cascade/csv.hpp"
#include "cascade/errors.hpp"
#include "cascade/generating_function.hpp"
#include "cascade/integrate.hpp"
#include "cascade/model_b.hpp"
#include "cascade/regime.hpp"
#include "cascade/scenario.hpp"
#include "cascade/sde.hpp"
#include "cascade/shell_sequence.hpp"
#include "cascade/stationary.hpp"
#include "cascade/taylor.hpp"

namespace {

using cascade::Table;
using json = nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::uint64_t default_seed() {
    const char* env = std::getenv("CASCADE_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw cascade::ValidationError("CASCADE_SEED: not a nonnegative integer");
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw cascade::ValidationError("bad number in list: " + cell);
        }
    }
    return out;
}

/// Parameter resolution: defaults, overridden by --config values, overridden
/// by explicitly passed flags. The resolved map is validated before dispatch.
class Params {
public:
    Params(std::string mode, const json& config_params)
        : mode_(std::move(mode)), resolved_(config_params) {}

    void override_if(bool given, const std::string& key, const json& value) {
        if (given) resolved_[key] = value;
    }

    void validate() const {
        auto errors = cascade::validate_parameters(mode_, resolved_);
        if (!errors.empty()) {
            std::string all;
            for (const auto& e : errors) all += e + "\n";
            throw cascade::ValidationError(all);
        }
    }

    template <typename T>
    T get(const std::string& key, T fallback) const {
        if (resolved_.contains(key)) return resolved_[key].get<T>();
        return fallback;
    }

    bool has(const std::string& key) const { return resolved_.contains(key); }

    void print_resolved(const std::string& model, const std::string& output_path,
                        const std::string& format) const {
        std::printf("mode=%s model=%s output=%s format=%s\n", mode_.c_str(), model.c_str(),
                    output_path.empty() ? "(stdout)" : output_path.c_str(), format.c_str());
        // json object keys iterate in sorted order
        for (const auto& [key, value] : resolved_.items()) {
            std::printf("  %s=%s\n", key.c_str(), value.dump().c_str());
        }
    }

    const json& resolved() const { return resolved_; }

private:
    std::string mode_;
    json resolved_;
};

struct CommonOpts {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
    cmd->add_option("--config", opts->config_path, "JSON scenario file (flags override)");
    cmd->add_option("--output,-o", opts->output_path, "output file (default: stdout)");
    cmd->add_option("--format", opts->format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--dry-run", opts->dry_run, "validate and print the resolved parameters");
}

/// Loads --config if present, checks it, and returns its parameter map.
json load_config_params(const CommonOpts& opts, const std::string& mode, std::string* model,
                        std::string* output_path, std::string* format) {
    if (opts.config_path.empty()) return json::object();
    std::ifstream in(opts.config_path);
    if (!in) throw cascade::ValidationError("cannot open config " + opts.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    cascade::ScenarioConfig cfg;
    auto errors = cascade::validate_config_text(buffer.str(), &cfg);
    if (!errors.empty()) {
        std::string all;
        for (const auto& e : errors) all += e + "\n";
        throw cascade::ValidationError(all);
    }
    if (cfg.mode != mode) {
        throw cascade::ValidationError("config mode '" + cfg.mode +
                                       "' does not match subcommand '" + mode + "'");
    }
    if (model && !cfg.model.empty()) *model = cfg.model;
    if (output_path && output_path->empty()) *output_path = cfg.output_path;
    if (format && cfg.output_format != "csv") *format = cfg.output_format;
    return cfg.parameters;
}

void emit(const Table& table, const CommonOpts& opts) {
    if (opts.output_path.empty()) {
        // CSV to stdout
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            std::printf("%s%s", i ? "," : "", table.columns[i].c_str());
        }
        std::printf("\n");
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::printf("%s%.17g", i ? "," : "", row[i]);
            }
            std::printf("\n");
        }
        return;
    }
    if (opts.format == "json") {
        cascade::write_json(table, opts.output_path);
    } else {
        cascade::write_csv(table, opts.output_path);
    }
}

std::string classify_state(const cascade::ShellSequence& state) {
    if (state.n_max() < 17) return "unclassified";
    std::vector<std::pair<int, double>> trace;
    for (int n = 8; n < state.n_max(); ++n) {
        trace.emplace_back(n, boundary_flux(state, n, cascade::CouplingFamily::model_a()));
    }
    return to_string(cascade::classify_regime(trace));
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------

struct ExactArgs {
    CommonOpts common;
    int example = 1;
    double alpha = 0.0;
    double t = 1.0;
    int n_max = 64;
    bool closed_form = false;
    bool example_given = false, alpha_given = false, t_given = false, n_max_given = false;
};

int run_exact(const ExactArgs& args) {
    std::string model = "A", output = args.common.output_path, format = args.common.format;
    json config = load_config_params(args.common, "exact", &model, &output, &format);
    Params params("exact", config);
    params.override_if(args.example_given, "example_id", args.example);
    params.override_if(args.alpha_given, "alpha", args.alpha);
    params.override_if(args.t_given, "t", args.t);
    params.override_if(args.n_max_given, "n_max", args.n_max);
    if (!params.has("example_id")) params.override_if(true, "example_id", args.example);
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    int example = params.get<int>("example_id", 1);
    double alpha = params.get<double>("alpha", 0.0);
    double t = params.get<double>("t", 1.0);
    int n_max = params.get<int>("n_max", 64);

    cascade::ShellSequence state = [&] {
        if (args.closed_form) return cascade::example_state(example, n_max, t, alpha);
        cascade::GeneratingFunction g0 = cascade::GeneratingFunction::catalog(example, alpha);
        return cascade::taylor_coeffs(cascade::apply_semigroup(g0, t), n_max);
    }();

    Table table;
    table.columns = {"time", "n", "value"};
    for (int n = 1; n <= n_max; ++n) {
        table.add_row({t, static_cast<double>(n), state.a(n)});
    }
    emit(table, opts);
    std::printf("summary: example=%d t=%.17g regime=%s\n", example, t,
                classify_state(state).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// integrate
// ---------------------------------------------------------------------------

struct IntegrateArgs {
    CommonOpts common;
    std::string model = "A";
    int n_max = 256;
    double dt = 0.0;  // unset: per-model default
    bool dt_given = false;
    double t_end = 1.0;
    std::string snapshots;
    std::string forcing = "none";
    int m = 1;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double nu = 0.0;
    int p = 0;
    std::string variant = "lambda_product";
    std::string closure = "zero_pad";
    std::string method = "rk4";
    std::string initial = "unit";
    int initial_example = 1;
    double alpha = 0.0;
};

int run_integrate(const IntegrateArgs& args) {
    std::string model = args.model, output = args.common.output_path,
                format = args.common.format;
    json config = load_config_params(args.common, "integrate", &model, &output, &format);
    Params params("integrate", config);
    params.override_if(true, "n_max", args.n_max);
    params.override_if(args.dt_given, "dt", args.dt);
    params.override_if(true, "t_end", args.t_end);
    params.override_if(true, "forcing", args.forcing);
    params.override_if(true, "m", args.m);
    params.override_if(true, "amplitude", args.amplitude);
    params.override_if(args.seed_given, "seed", args.seed);
    params.override_if(true, "nu", args.nu);
    params.override_if(true, "p", args.p);
    params.override_if(true, "variant", args.variant);
    params.override_if(true, "closure", args.closure);
    params.override_if(true, "method", args.method);
    if (!args.snapshots.empty()) {
        params.override_if(true, "snapshots", json(parse_double_list(args.snapshots)));
    }
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    const bool is_b = (model == "B");
    cascade::TruncationConfig cfg;
    cfg.n_max = params.get<int>("n_max", 256);
    cfg.step_control.dt =
        params.get<double>("dt", is_b ? cascade::default_dt_model_b(cfg.n_max) : 1e-3);
    cfg.closure = params.get<std::string>("closure", "zero_pad") == "absorbing_sponge"
                      ? cascade::Closure::absorbing_sponge
                      : cascade::Closure::zero_pad;
    cfg.step_control.method = params.get<std::string>("method", "rk4") == "euler_maruyama"
                                  ? cascade::StepMethod::euler_maruyama
                                  : cascade::StepMethod::rk4;

    cascade::ForcingSpec forcing;
    std::string fmode = params.get<std::string>("forcing", "none");
    std::uint64_t seed = params.has("seed") ? params.get<std::uint64_t>("seed", 0) : default_seed();
    if (fmode == "constant") {
        forcing = cascade::ForcingSpec::constant(params.get<int>("m", 1),
                                                 params.get<double>("amplitude", 1.0));
    } else if (fmode == "white_noise") {
        forcing = cascade::ForcingSpec::white_noise(params.get<int>("m", 1),
                                                    params.get<double>("amplitude", 1.0), seed);
    }

    cascade::ViscositySpec visc;
    visc.nu = params.get<double>("nu", 0.0);
    visc.p = params.get<int>("p", 0);
    visc.variant = params.get<std::string>("variant", "lambda_product") == "power"
                       ? cascade::ViscositySpec::Variant::power
                       : cascade::ViscositySpec::Variant::lambda_product;

    cascade::ShellSequence initial = [&] {
        if (args.initial == "zero") return cascade::ShellSequence::zeros(cfg.n_max);
        if (args.initial == "inverse_square") {
            std::vector<double> v(static_cast<std::size_t>(cfg.n_max));
            for (int n = 1; n <= cfg.n_max; ++n) {
                v[static_cast<std::size_t>(n - 1)] = 1.0 / (static_cast<double>(n) * n);
            }
            return cascade::ShellSequence(std::move(v));
        }
        if (args.initial == "example") {
            return cascade::example_initial_state(args.initial_example, cfg.n_max,
                                                  params.get<double>("alpha", args.alpha));
        }
        if (args.initial != "unit") {
            throw cascade::ValidationError("--initial must be unit|zero|inverse_square|example");
        }
        return cascade::ShellSequence::unit_mode(1, cfg.n_max);
    }();

    double t_end = params.get<double>("t_end", 1.0);
    std::vector<double> snapshots = {t_end};
    if (params.has("snapshots")) snapshots = params.get<std::vector<double>>("snapshots", {});

    cascade::TrajectoryRecord rec =
        is_b ? cascade::integrate_model_b(initial, cfg, forcing, {0.0, t_end}, snapshots)
             : cascade::integrate_model_a(initial, cfg, forcing, visc, {0.0, t_end}, snapshots);

    Table table;
    table.columns = {"time", "n", "value"};
    for (std::size_t s = 0; s < rec.states.size(); ++s) {
        for (int n = 1; n <= rec.states[s].n_max(); ++n) {
            table.add_row({rec.times[s], static_cast<double>(n), rec.states[s].a(n)});
        }
    }
    emit(table, opts);

    std::printf("summary: model=%s snapshots=%zu final_energy=%.17g instability=%d",
                model.c_str(), rec.states.size(),
                rec.diagnostics.empty() ? 0.0 : rec.diagnostics.back().block_energy,
                rec.instability_detected ? 1 : 0);
    if (!rec.forced && !rec.viscous && !rec.diagnostics.empty() &&
        rec.diagnostics.front().block_energy > 0.0) {
        std::printf(" energy_drift=%.3e", cascade::energy_drift(rec));
    }
    std::printf("\n");
    for (const auto& w : rec.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return rec.instability_detected ? kExitNumerical : 0;
}

// ---------------------------------------------------------------------------
// stationary
// ---------------------------------------------------------------------------

struct StationaryArgs {
    CommonOpts common;
    bool covariance = false, fixed_point = false, sample = false, variance = false;
    int n_max = 8;
    double nu = 0.0;
    int p = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double lookback = 0.0;
    double dt = 1e-3;
};

int run_stationary(const StationaryArgs& args) {
    std::string model = "A", output = args.common.output_path, format = args.common.format;
    json config = load_config_params(args.common, "stationary", &model, &output, &format);
    Params params("stationary", config);
    int chosen = (args.covariance ? 1 : 0) + (args.fixed_point ? 1 : 0) + (args.sample ? 1 : 0) +
                 (args.variance ? 1 : 0);
    if (chosen == 1) {
        params.override_if(true, "submode",
                           args.covariance    ? "covariance"
                           : args.fixed_point ? "fixed_point"
                           : args.sample      ? "sample"
                                              : "variance");
    }
    params.override_if(true, "n_max", args.n_max);
    params.override_if(true, "nu", args.nu);
    params.override_if(true, "p", args.p);
    params.override_if(args.seed_given, "seed", args.seed);
    params.override_if(args.lookback > 0.0, "lookback", args.lookback);
    params.override_if(true, "dt", args.dt);
    if (!params.has("submode")) {
        throw cascade::ValidationError(
            "stationary: pick exactly one of --covariance --fixed-point --sample --variance");
    }
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    std::string submode = params.get<std::string>("submode", "covariance");
    int n_max = params.get<int>("n_max", 8);
    Table table;
    if (submode == "covariance") {
        table.columns = {"n", "m", "covariance"};
        for (int n = 1; n <= n_max; ++n) {
            for (int m = 1; m <= n_max; ++m) {
                table.add_row({static_cast<double>(n), static_cast<double>(m),
                               cascade::stationary_covariance(n, m)});
            }
        }
        emit(table, opts);
        std::printf("summary: covariance n_max=%d c11=%.17g\n", n_max,
                    cascade::stationary_covariance(1, 1));
    } else if (submode == "fixed_point") {
        cascade::StationaryStateA st = cascade::constant_forced_fixed_point(n_max);
        table.columns = {"n", "value"};
        for (int n = 1; n <= n_max; ++n) table.add_row({static_cast<double>(n), st.values.a(n)});
        emit(table, opts);
        double audit = n_max >= 2 ? cascade::fixed_point_flux_audit(st, n_max - 1) : 0.0;
        std::printf("summary: fixed_point a1=%.17g flux_audit=%.3e\n", st.values.a(1), audit);
    } else if (submode == "sample") {
        std::uint64_t seed =
            params.has("seed") ? params.get<std::uint64_t>("seed", 0) : default_seed();
        double lookback =
            params.get<double>("lookback", cascade::StationarySampler::default_lookback(n_max));
        double dt = params.get<double>("dt", 1e-3);
        cascade::ShellSequence s = cascade::sample_stationary_state(n_max, seed, lookback, dt);
        table.columns = {"n", "value"};
        for (int n = 1; n <= n_max; ++n) table.add_row({static_cast<double>(n), s.a(n)});
        emit(table, opts);
        std::printf("summary: sample seed=%llu lookback=%.17g dt=%.17g\n",
                    static_cast<unsigned long long>(seed), lookback, dt);
    } else {  // variance
        double nu = params.get<double>("nu", 0.0);
        int p = params.get<int>("p", 0);
        if (p == 0) {
            table.columns = {"n", "nu", "p", "variance_quadrature", "variance_paper"};
            for (int n = 1; n <= n_max; ++n) {
                cascade::ViscousVariance v = cascade::viscous_variance(n, nu, 0);
                table.add_row({static_cast<double>(n), nu, 0.0, v.quadrature, v.printed_value});
            }
        } else {
            table.columns = {"n",           "nu",          "p",
                             "variance_quadrature", "bound_lower", "bound_upper"};
            for (int n = 1; n <= n_max; ++n) {
                cascade::ViscousVariance v = cascade::viscous_variance(n, nu, 1);
                table.add_row({static_cast<double>(n), nu, 1.0, v.quadrature, v.derived_lower,
                               v.derived_upper});
            }
        }
        emit(table, opts);
        std::printf("summary: variance nu=%.17g p=%d\n", nu, p);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// inviscid
// ---------------------------------------------------------------------------

struct InviscidArgs {
    CommonOpts common;
    int p = 0;
    int n = 1;
    std::string nu_list = "0.05,0.1,0.2";
};

int run_inviscid(const InviscidArgs& args) {
    std::string model = "A", output = args.common.output_path, format = args.common.format;
    json config = load_config_params(args.common, "inviscid", &model, &output, &format);
    Params params("inviscid", config);
    params.override_if(true, "p", args.p);
    params.override_if(true, "n", args.n);
    params.override_if(true, "nu_list", json(parse_double_list(args.nu_list)));
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    int p = params.get<int>("p", 0);
    int n = params.get<int>("n", 1);
    std::vector<double> nus = params.get<std::vector<double>>("nu_list", {});

    Table table;
    if (p == 0) {
        table.columns = {"n", "nu", "p", "gap", "bound"};
    } else {
        table.columns = {"n", "nu", "p", "gap"};
    }
    bool monotone = true;
    double prev = -1.0;
    for (double nu : nus) {
        double gap = cascade::inviscid_gap(n, nu, p);
        if (prev >= 0.0 && gap < prev) monotone = false;
        prev = gap;
        if (p == 0) {
            table.add_row({static_cast<double>(n), nu, 0.0, gap,
                           cascade::inviscid_gap_bound_p0(nu)});
        } else {
            table.add_row({static_cast<double>(n), nu, 1.0, gap});
        }
    }
    emit(table, opts);
    std::printf("summary: inviscid n=%d p=%d monotone_in_nu=%d\n", n, p, monotone ? 1 : 0);
    return 0;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumArgs {
    CommonOpts common;
    std::string model = "B";
    int n_basis = 64;
    int modes = 16;
    int eigvec = 0;
    int steady_m = 0;
    bool covariance = false;
    int n_max = 32;
    std::string feynman_kac;  // "x,t"
    std::string evolve_at;    // "x,t"
    std::string h0 = "unit";
    long paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int run_spectrum(const SpectrumArgs& args) {
    std::string model = args.model, output = args.common.output_path,
                format = args.common.format;
    json config = load_config_params(args.common, "spectrum", &model, &output, &format);
    if (model != "B") {
        throw cascade::ValidationError("spectrum: only model B has the spectral solver");
    }
    Params params("spectrum", config);
    params.override_if(true, "n_basis", args.n_basis);
    params.override_if(true, "modes", args.modes);
    params.override_if(args.eigvec > 0, "eigvec", args.eigvec);
    params.override_if(args.steady_m > 0, "m", args.steady_m);
    params.override_if(true, "n_max", args.n_max);
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    int n_basis = params.get<int>("n_basis", 64);
    int modes = std::min(params.get<int>("modes", 16), n_basis);
    int n_max = params.get<int>("n_max", 32);
    cascade::EigenBasis basis(n_basis);

    auto h0_of = [&]() {
        if (args.h0 == "inverse_square") {
            return cascade::OddSeriesFunction::from_generator(
                [](int n) { return 1.0 / (static_cast<double>(n) * n); }, "inverse_square");
        }
        if (args.h0 != "unit") {
            throw cascade::ValidationError("--h0 must be unit|inverse_square");
        }
        return cascade::OddSeriesFunction::from_sequence(cascade::ShellSequence::unit_mode(1, 2));
    };
    auto parse_point = [](const std::string& text) {
        std::vector<double> xs = parse_double_list(text);
        if (xs.size() != 2) throw cascade::ValidationError("expected \"x,t\"");
        return std::pair<double, double>(xs[0], xs[1]);
    };

    Table table;
    if (!args.feynman_kac.empty()) {
        auto [x, t] = parse_point(args.feynman_kac);
        std::uint64_t seed = args.seed_given ? args.seed : default_seed();
        cascade::FeynmanKacEstimate est =
            cascade::feynman_kac_H(h0_of(), x, t, args.paths, args.dt, seed);
        table.columns = {"x", "t", "estimate", "stderr"};
        table.add_row({x, t, est.mean, est.std_error});
        emit(table, opts);
        std::printf("summary: feynman_kac x=%.17g t=%.17g estimate=%.17g stderr=%.3e paths=%ld\n",
                    x, t, est.mean, est.std_error, est.n_paths);
        return 0;
    }
    if (!args.evolve_at.empty()) {
        auto [x, t] = parse_point(args.evolve_at);
        cascade::OddSeriesFunction h0 = h0_of();
        double acc = 0.0;
        for (int k = 1; k <= modes; ++k) {
            acc += basis.project(h0, k) * std::exp(-basis.lambda(k) * t) * basis.phi(k, x);
        }
        table.columns = {"x", "t", "estimate", "stderr"};
        table.add_row({x, t, acc, 0.0});
        emit(table, opts);
        std::printf("summary: spectral_H x=%.17g t=%.17g estimate=%.17g\n", x, t, acc);
        return 0;
    }
    if (params.has("eigvec")) {
        int k = params.get<int>("eigvec", 1);
        table.columns = {"k", "n", "p"};
        std::vector<double> p = basis.p_from_recurrence(k, n_max);
        for (int n = 1; n <= n_max; ++n) {
            table.add_row({static_cast<double>(k), static_cast<double>(n),
                           p[static_cast<std::size_t>(n - 1)]});
        }
        emit(table, opts);
        std::printf("summary: eigvec k=%d lambda=%.17g\n", k, basis.lambda(k));
    } else if (params.has("m")) {
        int m = params.get<int>("m", 1);
        cascade::ShellSequence bstar = cascade::forced_steady_state_b(basis, m, n_max);
        table.columns = {"n", "value"};
        for (int n = 1; n <= n_max; ++n) table.add_row({static_cast<double>(n), bstar.a(n)});
        emit(table, opts);
        std::printf("summary: steady m=%d b1=%.17g\n", m, bstar.a(1));
    } else if (args.covariance) {
        table.columns = {"n", "m", "covariance"};
        for (int n = 1; n <= n_max; ++n) {
            for (int m = 1; m <= n_max; ++m) {
                table.add_row({static_cast<double>(n), static_cast<double>(m),
                               cascade::stochastic_steady_covariance_b(basis, n, m, modes)});
            }
        }
        emit(table, opts);
        std::printf("summary: covariance modes=%d\n", modes);
    } else {
        table.columns = {"k", "lambda"};
        bool all_positive = true;
        for (int k = 1; k <= modes; ++k) {
            table.add_row({static_cast<double>(k), basis.lambda(k)});
            all_positive = all_positive && basis.lambda(k) > 0.0;
        }
        emit(table, opts);
        std::printf("summary: n_basis=%d lambda1=%.17g all_positive=%d shift1=%.3e\n", n_basis,
                    basis.lambda(1), all_positive ? 1 : 0, basis.lambda_shift(1));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// asymptotics
// ---------------------------------------------------------------------------

struct AsymptoticsArgs {
    CommonOpts common;
    double zeta = 1.0;
    double alpha = 0.5;
    double t = 0.0;
    int n_max = 64;
};

int run_asymptotics(const AsymptoticsArgs& args) {
    std::string model = "A", output = args.common.output_path, format = args.common.format;
    json config = load_config_params(args.common, "asymptotics", &model, &output, &format);
    Params params("asymptotics", config);
    params.override_if(true, "zeta", args.zeta);
    params.override_if(true, "alpha", args.alpha);
    params.override_if(true, "t", args.t);
    params.override_if(true, "n_max", args.n_max);
    params.validate();

    CommonOpts opts = args.common;
    opts.output_path = output;
    opts.format = format;
    if (opts.dry_run) {
        params.print_resolved(model, opts.output_path, opts.format);
        return 0;
    }

    double zeta = params.get<double>("zeta", 1.0);
    double alpha = params.get<double>("alpha", 0.5);
    double t = params.get<double>("t", 0.0);
    int n_max = params.get<int>("n_max", 64);

    cascade::GeneratingFunction g0 = cascade::GeneratingFunction::from_evaluator(
        "power_singularity",
        [zeta, alpha](std::complex<double> z) {
            return std::pow(1.0 - z / zeta, std::complex<double>(-alpha, 0.0));
        },
        {std::complex<double>(zeta, 0.0)});
    cascade::SingularityDescriptor d{std::complex<double>(zeta, 0.0), alpha,
                                     std::complex<double>(1.0, 0.0)};

    cascade::ShellSequence extracted = cascade::taylor_coeffs(cascade::apply_semigroup(g0, t), n_max);
    cascade::SingularityDescriptor evolved = cascade::evolve_singularity(d, t);

    Table table;
    table.columns = {"n", "predicted", "extracted", "relative_gap"};
    double worst_tail_gap = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        double predicted = cascade::transfer_coefficients(evolved, n);
        double actual = extracted.a(n);
        double rel = std::abs(predicted - actual) / std::max(std::abs(actual), 1e-300);
        if (n >= n_max / 2) worst_tail_gap = std::max(worst_tail_gap, rel);
        table.add_row({static_cast<double>(n), predicted, actual, rel});
    }
    emit(table, opts);
    std::printf("summary: zeta=%g alpha=%g t=%g regime=%s tail_relative_gap=%.3e\n", zeta, alpha,
                t, to_string(cascade::classify_from_descriptor(evolved)).c_str(), worst_tail_gap);
    return 0;
}

// ---------------------------------------------------------------------------
// compare / validate
// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string file_a, file_b;
    double tol = 1e-9;
    bool relative = false;
    std::string stderr_col;
    double stderr_mult = 3.0;
};

int run_compare(const CompareArgs& args) {
    Table a = cascade::read_csv(args.file_a);
    Table b = cascade::read_csv(args.file_b);
    cascade::CompareReport report =
        cascade::compare_tables(a, b, args.stderr_col, args.stderr_col.empty() ? 0.0 : args.stderr_mult);
    for (const auto& gap : report.gaps) {
        std::printf("column=%s max_abs=%.3e max_rel=%.3e\n", gap.column.c_str(), gap.max_abs,
                    gap.max_rel);
    }
    double worst = args.relative ? report.worst_rel : report.worst_abs;
    std::printf("rows=%ld worst_abs=%.3e worst_rel=%.3e tolerance=%.3e verdict=%s\n", report.rows,
                report.worst_abs, report.worst_rel, args.tol,
                worst <= args.tol ? "within" : "exceeded");
    return worst <= args.tol ? 0 : kExitNumerical;
}

int run_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
        return kExitValidation;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    cascade::ScenarioConfig cfg;
    auto errors = cascade::validate_config_text(buffer.str(), &cfg);
    if (!errors.empty()) {
        for (const auto& e : errors) std::printf("error: %s\n", e.c_str());
        std::printf("invalid: %zu error(s)\n", errors.size());
        return kExitValidation;
    }
    std::printf("ok: mode=%s model=%s parameters=%s output=%s format=%s\n", cfg.mode.c_str(),
                cfg.model.c_str(), cfg.parameters.dump().c_str(),
                cfg.output_path.empty() ? "(stdout)" : cfg.output_path.c_str(),
                cfg.output_format.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cascade: a numerical laboratory for two linear shell models"};
    app.require_subcommand(1);

    ExactArgs exact_args;
    CLI::App* exact = app.add_subcommand("exact", "closed-form solver for the catalog examples");
    auto* oe = exact->add_option("--example", exact_args.example, "example id 1..6");
    auto* oa = exact->add_option("--alpha", exact_args.alpha, "growth parameter (example 6)");
    auto* ot = exact->add_option("--t", exact_args.t, "evaluation time");
    auto* on = exact->add_option("--n-max", exact_args.n_max, "number of shells");
    exact->add_flag("--closed-form", exact_args.closed_form,
                    "emit the printed closed form instead of the semigroup solver");
    add_common(exact, &exact_args.common);

    IntegrateArgs int_args;
    CLI::App* integrate = app.add_subcommand("integrate", "truncated time integration");
    integrate->add_option("--model", int_args.model, "A or B")->check(CLI::IsMember({"A", "B"}));
    integrate->add_option("--n-max", int_args.n_max, "truncation length");
    auto* odt = integrate->add_option("--dt", int_args.dt, "time step (default: per-model)");
    integrate->add_option("--t-end", int_args.t_end, "end time");
    integrate->add_option("--snapshots", int_args.snapshots, "comma-separated snapshot times");
    integrate->add_option("--forcing", int_args.forcing, "none|constant|white_noise")
        ->check(CLI::IsMember({"none", "constant", "white_noise"}));
    integrate->add_option("--m", int_args.m, "forced shell");
    integrate->add_option("--amplitude", int_args.amplitude, "forcing amplitude");
    auto* os = integrate->add_option("--seed", int_args.seed, "noise seed (default CASCADE_SEED)");
    integrate->add_option("--nu", int_args.nu, "viscosity");
    integrate->add_option("--p", int_args.p, "dissipation order (0 or 1)");
    integrate->add_option("--variant", int_args.variant, "lambda_product|power")
        ->check(CLI::IsMember({"lambda_product", "power"}));
    integrate->add_option("--closure", int_args.closure, "zero_pad|absorbing_sponge")
        ->check(CLI::IsMember({"zero_pad", "absorbing_sponge"}));
    integrate->add_option("--method", int_args.method, "rk4|euler_maruyama")
        ->check(CLI::IsMember({"rk4", "euler_maruyama"}));
    integrate->add_option("--initial", int_args.initial, "unit|zero|inverse_square|example");
    integrate->add_option("--initial-example", int_args.initial_example,
                          "example id when --initial example");
    integrate->add_option("--alpha", int_args.alpha, "alpha for --initial example 6");
    add_common(integrate, &int_args.common);

    StationaryArgs st_args;
    CLI::App* stationary = app.add_subcommand("stationary", "steady states and measures");
    stationary->add_flag("--covariance", st_args.covariance, "emit 1/(n+m-1) table");
    stationary->add_flag("--fixed-point", st_args.fixed_point, "constant-forced steady state");
    stationary->add_flag("--sample", st_args.sample, "one stationary sample");
    stationary->add_flag("--variance", st_args.variance, "viscous stationary variances");
    stationary->add_option("--n-max", st_args.n_max, "table size");
    stationary->add_option("--nu", st_args.nu, "viscosity (variance mode)");
    stationary->add_option("--p", st_args.p, "dissipation order (variance mode)");
    auto* oss = stationary->add_option("--seed", st_args.seed, "sampler seed");
    stationary->add_option("--lookback", st_args.lookback, "stochastic-integral lookback");
    stationary->add_option("--dt", st_args.dt, "sampler step");
    add_common(stationary, &st_args.common);

    InviscidArgs inv_args;
    CLI::App* inviscid = app.add_subcommand("inviscid", "viscous-to-inviscid gap");
    inviscid->add_option("--p", inv_args.p, "dissipation order (0 or 1)");
    inviscid->add_option("--n", inv_args.n, "mode index");
    inviscid->add_option("--nu-list", inv_args.nu_list, "comma-separated viscosities");
    add_common(inviscid, &inv_args.common);

    SpectrumArgs sp_args;
    CLI::App* spectrum = app.add_subcommand("spectrum", "model-B spectral solver");
    spectrum->add_option("--model", sp_args.model, "must be B")->check(CLI::IsMember({"A", "B"}));
    spectrum->add_option("--n-basis", sp_args.n_basis, "Galerkin basis size");
    spectrum->add_option("--modes", sp_args.modes, "modes to emit");
    spectrum->add_option("--eigvec", sp_args.eigvec, "emit coefficients of eigenfunction k");
    spectrum->add_option("--steady", sp_args.steady_m, "emit the forced steady state for shell m");
    spectrum->add_flag("--covariance", sp_args.covariance, "emit the stationary covariance");
    spectrum->add_option("--n-max", sp_args.n_max, "rows to emit");
    spectrum->add_option("--feynman-kac", sp_args.feynman_kac,
                         "Monte Carlo H(x,t) at the point \"x,t\"");
    spectrum->add_option("--evolve", sp_args.evolve_at, "spectral H(x,t) at the point \"x,t\"");
    spectrum->add_option("--h0", sp_args.h0, "initial data: unit|inverse_square");
    spectrum->add_option("--paths", sp_args.paths, "Monte Carlo paths");
    spectrum->add_option("--dt", sp_args.dt, "SDE step");
    auto* osp = spectrum->add_option("--seed", sp_args.seed, "path seed (default CASCADE_SEED)");
    add_common(spectrum, &sp_args.common);

    AsymptoticsArgs as_args;
    CLI::App* asymptotics = app.add_subcommand("asymptotics", "transfer-theorem predictions");
    asymptotics->add_option("--zeta", as_args.zeta, "singularity location (+1 or -1)");
    asymptotics->add_option("--alpha", as_args.alpha, "singularity exponent");
    asymptotics->add_option("--t", as_args.t, "evolution time");
    asymptotics->add_option("--n-max", as_args.n_max, "coefficients to compare");
    add_common(asymptotics, &as_args.common);

    CompareArgs cmp_args;
    CLI::App* compare = app.add_subcommand("compare", "column-wise table comparison");
    compare->add_option("file_a", cmp_args.file_a, "first CSV")->required();
    compare->add_option("file_b", cmp_args.file_b, "second CSV")->required();
    compare->add_option("--tol", cmp_args.tol, "tolerance");
    compare->add_flag("--relative", cmp_args.relative, "compare relative gaps");
    compare->add_option("--stderr-col", cmp_args.stderr_col,
                        "column holding Monte Carlo standard errors");
    compare->add_option("--stderr-mult", cmp_args.stderr_mult, "allowance in stderr units");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "validate a JSON scenario config");
    validate->add_option("file", validate_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        exact_args.example_given = oe->count() > 0;
        exact_args.alpha_given = oa->count() > 0;
        exact_args.t_given = ot->count() > 0;
        exact_args.n_max_given = on->count() > 0;
        int_args.seed_given = os->count() > 0;
        int_args.dt_given = odt->count() > 0;
        sp_args.seed_given = osp->count() > 0;
        st_args.seed_given = oss->count() > 0;

        if (exact->parsed()) return run_exact(exact_args);
        if (integrate->parsed()) return run_integrate(int_args);
        if (stationary->parsed()) return run_stationary(st_args);
        if (inviscid->parsed()) return run_inviscid(inv_args);
        if (spectrum->parsed()) return run_spectrum(sp_args);
        if (asymptotics->parsed()) return run_asymptotics(as_args);
        if (compare->parsed()) return run_compare(cmp_args);
        if (validate->parsed()) return run_validate(validate_path);
    } catch (const cascade::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const cascade::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected failure: %s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
