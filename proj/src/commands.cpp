#include "curlwave/commands.hpp"

#include "curlwave/errors.hpp"
#include "curlwave/export.hpp"
#include "curlwave/period_maps.hpp"
#include "curlwave/potential.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

namespace curlwave {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<Vec3> synthesis_sample(const RunConfig& cfg, const GeometryProfile& geo) {
    return default_sample(geo, std::max(cfg.grid.extent * std::sqrt(3.0), 1.0), 48);
}

std::pair<double, double> default_c_range(const OdeCase& ode) {
    const double p = ode.p;
    switch (ode.variant) {
        case Variant::PlusFocusing: return {0.01, 10.0};
        case Variant::MinusDefocusing:
            return {0.01 * potential::level_gap(p), 0.99 * potential::level_gap(p)};
        case Variant::Rogue:
            return {0.99 * potential::rogue_c_min(p), 0.01 * potential::rogue_c_min(p)};
    }
    return {0.0, 0.0};
}

std::string path_or(const std::string& flag, const std::string& fallback) {
    return flag.empty() ? fallback : flag;
}

}  // namespace

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CURLWAVE_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096)
            throw ValidationError("CURLWAVE_THREADS", "expected a positive integer, got \"" +
                                                          std::string(env) + "\"");
        return static_cast<int>(v);
    }
    return 0;
}

WaveField build_field(const RunConfig& cfg) {
    const auto kind = parse_kind(cfg.kind);
    const auto geo = cfg.build_geometry();
    const auto coeffs = cfg.build_coefficients();
    const auto shift = cfg.build_phase_shift();
    SynthesisOptions so;
    so.sample = synthesis_sample(cfg, geo);
    auto need = [&](const std::optional<double>& v, const char* key) {
        if (!v) throw ValidationError(key, std::string("required for kind ") + cfg.kind);
        return *v;
    };
    const double p = cfg.p;
    switch (kind) {
        case FieldKind::BreatherPlus:
        case FieldKind::BreatherMinus: {
            auto f = synth_breather(kind == FieldKind::BreatherPlus ? 1 : -1, p, geo, coeffs, so);
            return apply_phase_shift(f, shift, so);
        }
        case FieldKind::DarkBreather:
            return apply_phase_shift(synth_dark_breather(p, geo, coeffs, need(cfg.omega, "omega"), so),
                                     shift, so);
        case FieldKind::DarkConstant: return apply_phase_shift(synth_dark_constant(p, geo, coeffs), shift, so);
        case FieldKind::RogueWave: return synth_rogue(p, geo, coeffs, shift, so);
        case FieldKind::RogueApproximantT:
            return apply_phase_shift(synth_rogue_approximant(p, geo, coeffs, need(cfg.T, "T"), so), shift, so);
        case FieldKind::Monochromatic:
            return apply_phase_shift(
                synth_monochromatic(cfg.equation, p, geo, coeffs, need(cfg.omega, "omega"), so), shift, so);
        case FieldKind::ExplicitRogue:
            return apply_phase_shift(synth_explicit_rogue(p, geo, coeffs), shift, so);
    }
    throw ValidationError("kind", "unsupported");
}

Diagnostics run_checks(const RunConfig& cfg, const WaveField& field) {
    const auto& tol = cfg.tolerances;
    ResidualOptions ro;
    ro.fd_step = tol.fd_step;
    ro.residual_tol = tol.residual;
    ro.parallel_tol = tol.parallelism;
    ro.periodicity_tol = tol.periodicity;
    const auto points = cfg.grid.points();
    const auto times = cfg.grid.times();
    Diagnostics d = ode_residual(field, points, times, ro);
    d.metadata["p"] = num(cfg.p);
    d.metadata["seed"] = std::to_string(cfg.seed);
    d.metadata["threads"] = std::to_string(max_threads());
    d.metadata["geometry"] = field.geometry().describe();
    if (field.periodic()) d.metadata["T"] = num(field.period());

    if (cfg.checks.negative_control) {
        double amplitude = 0.0;
        const auto samples = sample_field(field, points, {times.front()}, ExecMode::Parallel);
        for (const auto& v : samples.values)
            if (std::isfinite(v.re[0])) amplitude = std::max(amplitude, std::hypot(norm(v.re), norm(v.im)));
        if (amplitude > 0.0) {
            const auto bad = ode_residual(corrupt_scale(field, 1.01), points, times, ro);
            d.thresholds["negative_control"] = tol.negative_control;
            d.metadata["negative_control_residual"] = num(bad.residual_max);
            d.pass["negative_control"] = bad.residual_max > tol.negative_control;
        } else {
            d.metadata["negative_control"] = "skipped: field vanishes on the grid";
        }
    }
    if (cfg.checks.curl) {
        const std::vector<double> ts{times.front(), times[times.size() / 2], times.back()};
        d.curl_defect = discrete_curl_defect(field, points, ts, tol.curl_step);
        d.thresholds["curl"] = tol.curl;
        d.pass["curl"] = d.curl_defect <= tol.curl;
    }
    const auto kind = field.kind();
    const bool rogue = kind == FieldKind::RogueWave || kind == FieldKind::ExplicitRogue;
    if (cfg.checks.decay && (rogue || kind == FieldKind::DarkBreather)) {
        DecayOptions dopt;
        dopt.radii = cfg.checks.shells.empty() ? default_shells(cfg.checks.decay_radius) : cfg.checks.shells;
        dopt.seed = cfg.seed;
        dopt.times = times;
        d.spatial_decay = decay_fit(field, DecayMode::Spatial, dopt);
        d.pass["spatial_decay"] = !d.spatial_decay->insufficient;
        if (kind == FieldKind::DarkBreather && cfg.coefficients.delta) {
            const double target = *cfg.coefficients.delta / 2.0;
            d.thresholds["spatial_decay"] = target;
            d.pass["spatial_decay"] = !d.spatial_decay->insufficient &&
                                      d.spatial_decay->exponent + 2.0 * d.spatial_decay->stderr_ >= target;
        }
        if (rogue) {
            d.spacetime_decay = decay_fit(field, DecayMode::Spacetime, dopt);
            bool ok = !d.spacetime_decay->insufficient;
            if (std::isfinite(field.delta_tilde())) {
                d.thresholds["spacetime_decay"] = 0.9 * field.delta_tilde();
                d.metadata["delta_tilde"] = num(field.delta_tilde());
                ok = ok && d.spacetime_decay->exponent >= 0.9 * field.delta_tilde();
            }
            d.pass["spacetime_decay"] = ok;
        }
    }
    if (cfg.checks.support_R) {
        const double rho = field.geometry().support_radius(*cfg.checks.support_R);
        d.support_radius = rho;
        d.outside_support_max = max_outside_ball(field, points, times, rho);
        d.pass["compact_support"] = *d.outside_support_max == 0.0;
    }
    if (cfg.checks.holder) {
        const double cmin = potential::rogue_c_min(cfg.p);
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> level(cmin, 0.0);
        std::vector<std::pair<double, double>> pairs;
        for (int i = 0; i < cfg.checks.holder->pairs; ++i) {
            const double a = level(rng), b = level(rng);
            pairs.emplace_back(a, b);
        }
        const auto h = holder_check(cfg.p, cfg.checks.holder->T, pairs);
        d.holder_ratios = h.ratios;
        d.holder_bound = h.C_T;
        d.metadata["holder_H"] = num(h.H);
        d.pass["holder"] = h.pass;
    }
    return d;
}

int cmd_periodmap(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    const OdeCase ode{cfg.equation, cfg.p};
    const PeriodMap map(ode);
    std::ostringstream out;
    bool ok = true;
    const int n = cfg.periodmap.samples;
    if (cfg.periodmap.s_range) {
        const auto [a, b] = *cfg.periodmap.s_range;
        out << "s,M\n";
        for (int i = 0; i < n; ++i) {
            const double s = a + (b - a) * i / (n - 1);
            out << num(s) << ',' << num(map.inverse(s)) << '\n';
        }
    } else {
        const auto [a, b] = cfg.periodmap.c_range.value_or(default_c_range(ode));
        const bool rogue = ode.variant == Variant::Rogue;
        out << (rogue ? "c,L,dL,M_of_L\n" : "c,L,M_of_L\n");
        double prev = std::numeric_limits<double>::quiet_NaN();
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const double c = a + (b - a) * i / (n - 1);
            const double L = map.eval(c);
            const double back = map.inverse(L);
            worst = std::max(worst, std::abs(back - c));
            if (i > 0) ok = ok && (map.increasing() ? L > prev : L < prev) == (b > a);
            prev = L;
            out << num(c) << ',' << num(L);
            if (rogue) {
                const bool interior = c > potential::rogue_c_min(cfg.p) && c < 0.0;
                out << ',' << (interior ? num(map.derivative(c)) : "NaN");
            }
            out << ',' << num(back) << '\n';
        }
        ok = ok && worst <= 1e-9;
        log << "periodmap: monotone " << (ok ? "yes" : "no") << ", max round-trip error " << worst << '\n';
    }
    write_text(path_or(opt.out, cfg.output.table), out.str());
    return ok ? ExitPass : ExitCheckFailure;
}

int cmd_synthesize(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    const auto field = build_field(cfg);
    export_field(field, cfg.grid, path_or(opt.out, cfg.output.field));
    log << "synthesize: " << cfg.kind << " on " << cfg.grid.size() << " samples\n";
    return ExitPass;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    const auto field = build_field(cfg);
    const auto diag = run_checks(cfg, field);
    export_diagnostics(diag, path_or(opt.out, cfg.output.diagnostics));
    for (const auto& [name, ok] : diag.pass) log << "verify: " << name << (ok ? " pass" : " FAIL") << '\n';
    return diag.all_pass() ? ExitPass : ExitCheckFailure;
}

int cmd_approximate(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    const auto geo = cfg.build_geometry();
    const auto rep = convergence_check(cfg.p, geo, cfg.build_coefficients(), cfg.T_list,
                                       cfg.grid.points(), cfg.grid.times());
    std::ostringstream out;
    out << "T,sup_error\n";
    for (const auto& r : rep.rows) out << num(r.T) << ',' << num(r.sup_error) << '\n';
    write_text(path_or(opt.out, cfg.output.table), out.str());
    log << "approximate: errors " << (rep.strictly_decreasing ? "strictly decrease" : "do NOT strictly decrease")
        << '\n';
    return rep.strictly_decreasing ? ExitPass : ExitCheckFailure;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"curlwave: breathers and rogue waves of curl-curl wave equations"};
    app.require_subcommand(1);
    struct Flags {
        std::string config, out;
        std::optional<std::uint64_t> seed;
        int threads = 0;
    };
    Flags flags;
    using Handler = int (*)(const RunConfig&, const CommandOptions&, std::ostream&);
    const std::pair<const char*, const char*> names[] = {
        {"periodmap", "tabulate L, L' and M over a c or s range"},
        {"synthesize", "write the field on the grid as CSV"},
        {"verify", "run the diagnostics suite and write JSON"},
        {"approximate", "U_T convergence table for the configured T list"}};
    const Handler handlers[] = {cmd_periodmap, cmd_synthesize, cmd_verify, cmd_approximate};
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : names) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "output path ('-' for stdout)");
        sub->add_option("--seed", flags.seed, "seed for sampled checks");
        sub->add_option("--threads", flags.threads, "OpenMP threads (fallback: CURLWAVE_THREADS)")
            ->check(CLI::PositiveNumber);
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ExitPass : ExitUsage;
    }
    try {
        RunConfig cfg = flags.config.empty() ? RunConfig{} : parse_config(flags.config);
        if (flags.seed) cfg.seed = *flags.seed;
        CommandOptions opt;
        opt.out = flags.out;
        opt.seed = flags.seed;
        opt.threads = resolve_threads(flags.threads);
        set_threads(opt.threads);
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return handlers[i](cfg, opt, std::cerr);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const MissingLimit& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const GrowthError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return ExitCheckFailure;
    }
    return ExitUsage;
}

}  // namespace curlwave
