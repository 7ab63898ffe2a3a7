#include "evt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "evt/rates.hpp"

namespace evt {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParamError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ParamError("config root must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        try {
            if (k == "model_spec") cfg.model_spec = it.value().get<std::string>();
            else if (k == "beta") cfg.beta = it.value().get<double>();
            else if (k == "n_min") cfg.n_min = it.value().get<long long>();
            else if (k == "n_max") cfg.n_max = it.value().get<long long>();
            else if (k == "grid_factor") cfg.grid_factor = it.value().get<double>();
            else if (k == "quad_abs_tol") cfg.quad_abs_tol = it.value().get<double>();
            else if (k == "quad_rel_tol") cfg.quad_rel_tol = it.value().get<double>();
            else if (k == "sup_grid_points") cfg.sup_grid_points = it.value().get<int>();
            else if (k == "output_format") cfg.output_format = it.value().get<std::string>();
            else if (k == "output_path") cfg.output_path = it.value().get<std::string>();
            else if (k == "workers") cfg.workers = it.value().get<int>();
            else if (k == "single_n") cfg.single_n = it.value().get<long long>();
            else throw ParamError("unknown config key: " + k);
        } catch (const nlohmann::json::exception& e) {
            throw ParamError("config field '" + k + "': " + e.what());
        }
    }
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.n_min >= 2 && cfg.n_min < cfg.n_max && cfg.n_max <= 1000000))
        throw ParamError("need 2 <= n_min < n_max <= 1e6");
    if (!(cfg.grid_factor > 1.0)) throw ParamError("grid_factor must exceed 1");
    if (!(cfg.beta >= 1.05 && cfg.beta <= 16.0)) throw ParamError("beta must lie in [1.05, 16]");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ParamError("output_format must be csv or json");
    if (cfg.workers < 1) throw ParamError("workers must be >= 1");
    if (cfg.sup_grid_points < 16) throw ParamError("sup_grid_points must be >= 16");
    if (!(cfg.quad_abs_tol > 0.0) || !(cfg.quad_rel_tol > 0.0))
        throw ParamError("quadrature tolerances must be positive");
    if (cfg.single_n != 0 && !(cfg.single_n >= 2 && cfg.single_n <= 1000000))
        throw ParamError("--n must lie in [2, 1e6]");
}

ordered_json config_json(const std::string& command, const ExperimentConfig& cfg) {
    ordered_json j;
    j["command"] = command;
    j["model_spec"] = cfg.model_spec;
    j["beta"] = cfg.beta;
    j["n_min"] = cfg.n_min;
    j["n_max"] = cfg.n_max;
    j["grid_factor"] = cfg.grid_factor;
    j["quad_abs_tol"] = cfg.quad_abs_tol;
    j["quad_rel_tol"] = cfg.quad_rel_tol;
    j["sup_grid_points"] = cfg.sup_grid_points;
    j["output_format"] = cfg.output_format;
    j["output_path"] = cfg.output_path;
    j["workers"] = cfg.workers;
    j["single_n"] = cfg.single_n;
    return j;
}

void write_csv_meta(std::ostream& os, const std::string& command, const ExperimentConfig& cfg) {
    ordered_json j = config_json(command, cfg);
    for (auto it = j.begin(); it != j.end(); ++it) {
        os << "# " << it.key() << "=";
        if (it.value().is_string()) os << it.value().get<std::string>();
        else if (it.value().is_number_float()) os << fmt17(it.value().get<double>());
        else os << it.value().dump();
        os << "\n";
    }
}

int with_sink(const ExperimentConfig& cfg, const std::function<void(std::ostream&)>& fn) {
    if (cfg.output_path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw ParamError("cannot open output path: " + cfg.output_path);
    fn(f);
    return 0;
}

const char kRowHeader[] = "n,a_n,b_n,h_env,supnorm,H_gn,H_limit,entropy_diff,predicted_envelope";

void write_rows_csv(std::ostream& os, const std::vector<RateRow>& rows) {
    os << kRowHeader << "\n";
    for (const auto& r : rows) {
        os << r.n << ',' << fmt17(r.a_n) << ',' << fmt17(r.b_n) << ',' << fmt17(r.h_env) << ','
           << fmt17(r.supnorm) << ',' << fmt17(r.H_gn) << ',' << fmt17(r.H_limit) << ','
           << fmt17(r.entropy_diff) << ',' << fmt17(r.predicted) << "\n";
    }
}

ordered_json columns_json() {
    return ordered_json::array({"n", "a_n", "b_n", "h_env", "supnorm", "H_gn", "H_limit",
                                "entropy_diff", "predicted_envelope"});
}

ordered_json rows_json(const std::vector<RateRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(ordered_json::array({r.n, r.a_n, r.b_n, r.h_env, r.supnorm, r.H_gn,
                                           r.H_limit, r.entropy_diff, r.predicted}));
    return arr;
}

ordered_json bound_checks_json(const std::vector<BoundCheck>& checks) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json o;
        o["name"] = c.name;
        o["pass"] = c.pass;
        o["margin"] = c.margin;
        o["note"] = c.note;
        arr.push_back(o);
    }
    return arr;
}

// one measured row outside a full rate sweep (entropy command)
RateRow measure_one(const DistributionModel& model, const ExperimentConfig& cfg, long long n) {
    QuadratureSpec quad{cfg.quad_abs_tol, cfg.quad_rel_tol, 60};
    auto env = envelope_for(model);
    NormalizedMaximum nm = make_normalized(model, n);
    RateRow r;
    r.n = n;
    r.a_n = nm.norming.a;
    r.b_n = nm.norming.b;
    r.h_env = env->env(model.domain == Domain::Frechet ? nm.norming.a : nm.norming.b);
    r.predicted = predicted_envelope(model, n);
    EntropyMeasurement em = entropy_gap(nm, cfg.beta, quad, cfg.sup_grid_points);
    r.supnorm = em.supnorm;
    r.H_gn = em.H_gn;
    r.H_limit = em.H_limit;
    r.entropy_diff = em.diff;
    r.lp_integral = em.lp_integral;
    r.hypothesis_ratio = em.hypothesis_ratio;
    r.hypothesis_ok = em.hypothesis_ok;
    r.m_constant = em.m_constant;
    return r;
}

int cmd_entropy(const DistributionModel& model, const ExperimentConfig& cfg) {
    std::vector<long long> ns;
    if (cfg.single_n > 0) ns.push_back(cfg.single_n);
    else ns = geometric_grid(cfg.n_min, cfg.n_max, cfg.grid_factor);
    std::vector<RateRow> rows;
    rows.reserve(ns.size());
    for (long long n : ns) rows.push_back(measure_one(model, cfg, n));

    return with_sink(cfg, [&](std::ostream& os) {
        if (cfg.output_format == "csv") {
            write_csv_meta(os, "entropy", cfg);
            write_rows_csv(os, rows);
        } else {
            ordered_json j;
            j["metadata"] = config_json("entropy", cfg);
            j["columns"] = columns_json();
            j["rows"] = rows_json(rows);
            os << j.dump(2) << "\n";
        }
    });
}

std::string stem_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

void write_series(const std::string& path, const std::vector<RateRow>& rows,
                  double RateRow::*field) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParamError("cannot open output path: " + path);
    for (const auto& r : rows) {
        double v = r.*field;
        if (v > 0.0 && std::isfinite(v))
            f << fmt17(std::log(static_cast<double>(r.n))) << ' ' << fmt17(std::log(v)) << "\n";
    }
}

int cmd_rate(const DistributionModel& model, const ExperimentConfig& cfg) {
    std::vector<long long> grid = geometric_grid(cfg.n_min, cfg.n_max, cfg.grid_factor);
    ExperimentOptions opts;
    opts.quad = QuadratureSpec{cfg.quad_abs_tol, cfg.quad_rel_tol, 60};
    opts.sup_grid_points = cfg.sup_grid_points;
    opts.workers = cfg.workers;
    RateReport rep = run_rate_experiment(model, cfg.beta, grid, opts);

    int rc = with_sink(cfg, [&](std::ostream& os) {
        if (cfg.output_format == "csv") {
            write_csv_meta(os, "rate", cfg);
            write_rows_csv(os, rep.rows);
            os << "# fitted_supnorm_slope=" << fmt17(rep.fitted_supnorm.slope) << "\n";
            os << "# fitted_supnorm_intercept=" << fmt17(rep.fitted_supnorm.intercept) << "\n";
            os << "# fitted_supnorm_rms=" << fmt17(rep.fitted_supnorm.rms_residual) << "\n";
            os << "# fitted_entropy_slope=" << fmt17(rep.fitted_entropy.slope) << "\n";
            os << "# fitted_entropy_intercept=" << fmt17(rep.fitted_entropy.intercept) << "\n";
            os << "# fitted_entropy_rms=" << fmt17(rep.fitted_entropy.rms_residual) << "\n";
            os << "# predicted_slope=" << fmt17(rep.predicted_slope) << "\n";
            os << "# degenerate=" << (rep.degenerate ? "true" : "false") << "\n";
            os << "# note=" << rep.note << "\n";
            for (const auto& c : rep.bound_checks)
                os << "# bound " << c.name << " pass=" << (c.pass ? "true" : "false")
                   << " margin=" << fmt17(c.margin) << " note=" << c.note << "\n";
        } else {
            ordered_json j;
            j["metadata"] = config_json("rate", cfg);
            j["columns"] = columns_json();
            j["rows"] = rows_json(rep.rows);
            ordered_json fits;
            fits["supnorm"] = {{"slope", rep.fitted_supnorm.slope},
                               {"intercept", rep.fitted_supnorm.intercept},
                               {"rms_residual", rep.fitted_supnorm.rms_residual}};
            fits["entropy_diff"] = {{"slope", rep.fitted_entropy.slope},
                                    {"intercept", rep.fitted_entropy.intercept},
                                    {"rms_residual", rep.fitted_entropy.rms_residual}};
            fits["predicted_slope"] = rep.predicted_slope;
            fits["degenerate"] = rep.degenerate;
            fits["note"] = rep.note;
            j["fits"] = fits;
            j["bound_checks"] = bound_checks_json(rep.bound_checks);
            os << j.dump(2) << "\n";
        }
    });

    if (!cfg.output_path.empty()) {
        std::string stem = stem_of(cfg.output_path);
        write_series(stem + ".supnorm.dat", rep.rows, &RateRow::supnorm);
        write_series(stem + ".entropy_diff.dat", rep.rows, &RateRow::entropy_diff);
        write_series(stem + ".predicted.dat", rep.rows, &RateRow::predicted);
    }
    return rc;
}

int cmd_bounds(const DistributionModel& model, const ExperimentConfig& cfg) {
    std::vector<long long> grid = geometric_grid(cfg.n_min, cfg.n_max, cfg.grid_factor);
    std::vector<BoundCheck> checks = verify_all_bounds(model, grid);
    return with_sink(cfg, [&](std::ostream& os) {
        if (cfg.output_format == "csv") {
            write_csv_meta(os, "bounds", cfg);
            os << "name,pass,margin,note\n";
            for (const auto& c : checks)
                os << c.name << ',' << (c.pass ? "true" : "false") << ',' << fmt17(c.margin)
                   << ',' << c.note << "\n";
        } else {
            ordered_json j;
            j["metadata"] = config_json("bounds", cfg);
            j["columns"] = ordered_json::array({"name", "pass", "margin", "note"});
            j["rows"] = bound_checks_json(checks);
            os << j.dump(2) << "\n";
        }
    });
}

int cmd_norming(const DistributionModel& model, const ExperimentConfig& cfg) {
    std::vector<long long> grid = geometric_grid(cfg.n_min, cfg.n_max, cfg.grid_factor);
    auto env = envelope_for(model);
    struct Row {
        long long n;
        double a, b, u_int, u_vm, h, xi, t;
    };
    std::vector<Row> rows;
    for (long long n : grid) {
        NormalizedMaximum nm = make_normalized(model, n);
        Row r{};
        r.n = n;
        r.a = nm.norming.a;
        r.b = nm.norming.b;
        if (model.domain == Domain::Gumbel) {
            r.u_int = auxiliary_u(model, r.b);
            r.u_vm = vonmises_u(model, r.b);
            r.h = env->env(r.b);
        } else {
            r.u_int = std::nan("");
            r.u_vm = std::nan("");
            r.h = env->env(r.a);
        }
        double target = 1.0 / std::sqrt(static_cast<double>(n));
        double lo = model.quantile(std::exp(-2.0 * target));
        double hi = model.quantile(std::exp(-0.5 * target));
        r.xi = find_root([&](double t) { return neg_log_cdf(model, t) - target; }, lo, hi,
                         1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi)));
        r.t = (r.xi - r.b) / r.a;
        rows.push_back(r);
    }
    return with_sink(cfg, [&](std::ostream& os) {
        if (cfg.output_format == "csv") {
            write_csv_meta(os, "norming", cfg);
            os << "n,a_n,b_n,u_int,u_vm,h_env,xi_n,t_n\n";
            for (const auto& r : rows)
                os << r.n << ',' << fmt17(r.a) << ',' << fmt17(r.b) << ',' << fmt17(r.u_int)
                   << ',' << fmt17(r.u_vm) << ',' << fmt17(r.h) << ',' << fmt17(r.xi) << ','
                   << fmt17(r.t) << "\n";
        } else {
            ordered_json j;
            j["metadata"] = config_json("norming", cfg);
            j["columns"] = ordered_json::array(
                {"n", "a_n", "b_n", "u_int", "u_vm", "h_env", "xi_n", "t_n"});
            ordered_json arr = ordered_json::array();
            for (const auto& r : rows)
                arr.push_back(ordered_json::array(
                    {r.n, r.a, r.b, r.u_int, r.u_vm, r.h, r.xi, r.t}));
            j["rows"] = arr;
            os << j.dump(2) << "\n";
        }
    });
}

int run_cli_inner(int argc, const char* const* argv) {
    ExperimentConfig cfg;
    // the config file is resolved before flag binding so flags override it
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config") {
            if (i + 1 >= argc) throw ParamError("--config needs a path");
            load_config_file(argv[i + 1], cfg);
        } else if (a.rfind("--config=", 0) == 0) {
            load_config_file(a.substr(9), cfg);
        }
    }

    CLI::App app{"normalized-maxima entropy and convergence-rate experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its fields");
    app.add_option("--output", cfg.output_path, "output file (default: stdout)");
    app.add_option("--format", cfg.output_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", cfg.workers, "worker threads for rate sweeps");
    double quad_tol = 0.0;
    auto* quad_opt = app.add_option(
        "--quad-tol", quad_tol, "relative quadrature tolerance; absolute is set to a tenth");

    CLI::App* subs[4];
    const char* names[4] = {"entropy", "rate", "bounds", "norming"};
    const char* descs[4] = {"entropy of the normalized maximum against the limit law",
                            "rate sweep with log-log fits and bound checks",
                            "uniform bound verification over the n grid",
                            "norming constants, scale functions and truncation points"};
    for (int k = 0; k < 4; ++k) {
        CLI::App* s = app.add_subcommand(names[k], descs[k]);
        s->fallthrough();
        s->add_option("--model", cfg.model_spec, "distribution spec, e.g. pareto(alpha=1)");
        s->add_option("--beta", cfg.beta, "entropy order in [1.05, 16]");
        s->add_option("--n-min", cfg.n_min, "smallest n of the geometric grid");
        s->add_option("--n-max", cfg.n_max, "largest n of the geometric grid");
        s->add_option("--grid-factor", cfg.grid_factor, "geometric step, > 1");
        s->add_option("--sup-grid", cfg.sup_grid_points, "sup-norm search grid size");
        if (k == 0) s->add_option("--n", cfg.single_n, "measure exactly this n");
        subs[k] = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (quad_opt->count() > 0) {
        if (!(quad_tol > 0.0)) throw ParamError("--quad-tol must be positive");
        cfg.quad_rel_tol = quad_tol;
        cfg.quad_abs_tol = 0.1 * quad_tol;
    }
    validate(cfg);
    DistributionModel model = parse_model(cfg.model_spec);

    if (app.got_subcommand(subs[0])) return cmd_entropy(model, cfg);
    if (app.got_subcommand(subs[1])) return cmd_rate(model, cfg);
    if (app.got_subcommand(subs[2])) return cmd_bounds(model, cfg);
    return cmd_norming(model, cfg);
}

} // namespace

std::vector<long long> geometric_grid(long long n_min, long long n_max, double factor) {
    if (n_min < 2 || n_min >= n_max || !(factor > 1.0))
        throw ParamError("geometric_grid: need 2 <= n_min < n_max and factor > 1");
    std::vector<long long> out;
    double v = static_cast<double>(n_min);
    long long n = n_min;
    while (n <= n_max) {
        out.push_back(n);
        v *= factor;
        n = std::max(static_cast<long long>(std::llround(v)), out.back() + 1);
    }
    return out;
}

int run_cli(int argc, const char* const* argv) {
    try {
        return run_cli_inner(argc, argv);
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NoDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace evt
