#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "casimir/casimir.hpp"

namespace casimir::cli {
namespace {

using nlohmann::json;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int thread_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("CASIMIR_NUM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

// Runs fn(0..count-1) on a small pool; each index is processed exactly once.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const auto workers = std::min<std::size_t>(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

struct Options {
    std::optional<double> L, R1, R2, y, u;
    bool plane = false;
    std::string model = "all";
    std::string quantity = "f";
    std::optional<double> T;
    double tol = 1e-9;
    int rmax = 5;
    std::uint64_t seed = QuadratureSettings{}.seed;
    int points = 50;
    double ymin = 1.01;
    double ymax = 101.0;
    bool log = false;
    std::string out;
    std::string params = "builtin";
    std::vector<double> us{0.25};
    double uref = 0.15;
    int n = 2;
    int starts = 12;
    std::string config;
};

ModelSettings model_settings(const Options& o) {
    if (!(o.tol > 0.0 && o.tol < 1.0)) throw InvalidInput("--tol must lie in (0, 1)");
    if (o.rmax < 1 || o.rmax > 12) throw InvalidInput("--rmax must lie in [1, 12]");
    ModelSettings s;
    s.tol = o.tol;
    s.r_max = o.rmax;
    s.quadrature.seed = o.seed;
    return s;
}

std::vector<Model> selected_models(const std::string& name) {
    if (name == "all") return {Model::scalar, Model::dvd, Model::ded};
    try {
        return {parse_model(name)};
    } catch (const DomainError& e) {
        throw InvalidInput(e.what());
    }
}

// ---- config file -------------------------------------------------------

std::string json_scalar(const json& v, const std::string& key) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) {
        std::ostringstream s;
        s.precision(17);
        s << v.get<double>();
        return s.str();
    }
    if (v.is_string()) return v.get<std::string>();
    throw InvalidInput("config key '" + key + "' has an unsupported type");
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Turns config entries that the command line does not set into flags, so
// that explicit flags always win.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::set<std::string>& known,
                                      const std::set<std::string>& switches) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read config file " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw InvalidInput("config file " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw InvalidInput("config file must hold a JSON object");

    std::vector<std::string> merged(args.begin(), args.begin() + 1);
    for (const auto& [key, value] : cfg.items()) {
        if (key == "config" || !known.count(key)) throw InvalidInput("unknown config key '" + key + "'");
        if (given_on_command_line(args, key)) continue;
        if (switches.count(key)) {
            if (!value.is_boolean()) throw InvalidInput("config key '" + key + "' must be a boolean");
            if (value.get<bool>()) merged.push_back("--" + key);
            continue;
        }
        std::string text;
        if (value.is_array()) {
            for (const auto& item : value) text += (text.empty() ? "" : ",") + json_scalar(item, key);
        } else {
            text = json_scalar(value, key);
        }
        merged.push_back("--" + key);
        merged.push_back(text);
    }
    merged.insert(merged.end(), args.begin() + 1, args.end());
    return merged;
}

// ---- compute -----------------------------------------------------------

ReducedGeometry geometry_from(const Options& o) {
    const bool invariants = o.y || o.u;
    const bool physical = o.L || o.R1 || o.R2 || o.plane;
    if (invariants && physical) throw InvalidInput("give either --y/--u or --L/--R1/--R2/--plane");
    if (invariants) {
        if (!o.y || !o.u) throw InvalidInput("--y and --u must be given together");
        return from_invariants(*o.y, *o.u);
    }
    if (!o.L || !o.R1) throw InvalidInput("geometry needs --L and --R1 (or --y and --u)");
    if (o.plane == o.R2.has_value()) throw InvalidInput("give exactly one of --R2 and --plane");
    return reduce(o.plane ? SphereGeometry::sphere_plane(*o.L, *o.R1)
                          : SphereGeometry::spheres(*o.L, *o.R1, *o.R2));
}

int cmd_compute(const Options& o, std::ostream& out) {
    const ReducedGeometry red = geometry_from(o);
    const auto models = selected_models(o.model);
    const ModelSettings settings = model_settings(o);
    if (o.T && !(*o.T > 0.0)) throw InvalidInput("--T must be positive");

    out << "y = " << fmt(red.y) << "\n";
    out << "y_minus_1 = " << fmt(red.y_minus_1) << "\n";
    out << "u = " << fmt(red.u) << "\n";
    out << "varpi = " << fmt(red.varpi) << "\n";
    for (Model m : models) {
        Estimate f;
        bool degraded = false;
        if (m == Model::ded) {
            const auto t = f_ded_total(red, std::max(settings.tol, 1e-6), settings.r_max, settings.quadrature);
            f = {t.value, t.error};
            degraded = t.degraded;
        } else {
            f = f_total(red, m, settings);
        }
        const double f1 = f_single(red, m);
        out << "[" << to_string(m) << "]\n";
        out << "f = " << fmt(f.value) << "\n";
        out << "f_error = " << fmt(f.error) << "\n";
        out << "f1 = " << fmt(f1) << "\n";
        out << "phi = " << fmt(f.value / f1) << "\n";
        if (degraded) out << "note = near contact: tail extrapolation dominates the error\n";
        if (o.T) {
            const auto si = free_energy_si(f.value, *o.T);
            out << "F_T_joule = " << fmt(si.joules) << "\n";
            out << "F_T_kbt = " << fmt(si.kbt_units) << "\n";
            out << "entropy_kb = " << fmt(si.entropy_kb) << "\n";
        }
    }
    return kOk;
}

// ---- curve -------------------------------------------------------------

const std::vector<std::string> kQuantities{"f", "f1", "phi", "ratio_u_over_quarter", "phi_over_quarter",
                                           "f_approx"};

RationalModelParams load_params(const std::string& spec, Model m) {
    if (spec == "builtin") return builtin_params(m);
    std::ifstream in(spec);
    if (!in) throw InvalidInput("cannot read parameter file " + spec);
    RationalModelParams p;
    try {
        p = json::parse(in).get<RationalModelParams>();
    } catch (const json::exception& e) {
        throw InvalidInput("parameter file " + spec + ": " + e.what());
    }
    if (p.model != m)
        throw InvalidInput("parameter file " + spec + " is for model " + to_string(p.model));
    return p;
}

std::vector<double> y_minus_1_grid(const Options& o) {
    if (!(o.ymin > 1.0)) throw InvalidInput("--ymin must exceed 1");
    if (!(o.ymax >= o.ymin)) throw InvalidInput("--ymax must be >= --ymin");
    if (o.points < 2) throw InvalidInput("--points must be >= 2");
    const double lo = o.ymin - 1.0, hi = o.ymax - 1.0;
    if (o.log) return log_grid(lo, hi, o.points);
    std::vector<double> g(o.points);
    for (int i = 0; i < o.points; ++i) g[i] = lo + (hi - lo) * i / (o.points - 1);
    g.back() = hi;
    return g;
}

Estimate curve_value(const std::string& quantity, Model m, double d, double u, const ModelSettings& settings,
                     const std::optional<RationalModelParams>& params) {
    const ReducedGeometry red = from_gap_invariants(d, u);
    if (quantity == "f") return f_total(red, m, settings);
    if (quantity == "f1") return {f_single(red, m), 0.0};
    if (quantity == "f_approx") return {f_approx(red, *params), 0.0};
    const Estimate f = f_total(red, m, settings);
    if (quantity == "phi") {
        const double f1 = f_single(red, m);
        return {f.value / f1, f.error / f1};
    }
    const ReducedGeometry quarter = from_gap_invariants(d, 0.25);
    const Estimate fq = f_total(quarter, m, settings);
    double num = f.value, den = fq.value;
    if (quantity == "phi_over_quarter") {
        num /= f_single(red, m);
        den /= f_single(quarter, m);
    }
    const double ratio = num / den;
    return {ratio, std::abs(ratio) * (f.error / std::abs(f.value) + fq.error / std::abs(fq.value))};
}

std::string invocation(const std::vector<std::string>& args) {
    std::string s = "casimir";
    for (const auto& a : args) s += " " + a;
    return s;
}

int cmd_curve(const Options& o, const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    const auto models = selected_models(o.model);
    if (std::find(kQuantities.begin(), kQuantities.end(), o.quantity) == kQuantities.end())
        throw InvalidInput("unknown quantity '" + o.quantity + "'");
    if (o.us.empty()) throw InvalidInput("--u needs at least one value");
    for (double u : o.us)
        if (!(u >= 0.0 && u <= 0.25)) throw InvalidInput("--u values must lie in [0, 1/4]");
    const ModelSettings settings = model_settings(o);
    const auto grid = y_minus_1_grid(o);

    std::map<Model, RationalModelParams> params;
    if (o.quantity == "f_approx")
        for (Model m : models) {
            if (m == Model::scalar) throw InvalidInput("f_approx is defined for dvd and ded only");
            params[m] = load_params(o.params, m);
        }

    struct Row {
        double d, u;
        Model m;
        Estimate value;
        bool failed = false;
    };
    std::vector<Row> rows;
    for (double u : o.us)
        for (Model m : models)
            for (double d : grid) rows.push_back({d, u, m, {}, false});

    parallel_for(rows.size(), [&](std::size_t i) {
        Row& row = rows[i];
        std::optional<RationalModelParams> p;
        if (auto it = params.find(row.m); it != params.end()) p = it->second;
        try {
            row.value = curve_value(o.quantity, row.m, row.d, row.u, settings, p);
        } catch (const ConvergenceError&) {
            row.failed = true;
        } catch (const QuadratureError&) {
            row.failed = true;
        }
    });

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) throw InvalidInput("cannot write " + o.out);
    }
    std::ostream& sink = o.out.empty() ? out : file;
    sink << "# casimir " << kVersion << "\n";
    sink << "# invocation: " << invocation(raw_args) << "\n";
    sink << "# seed: " << o.seed << "\n";
    sink << "y_minus_1,u,model,quantity,value,error_estimate\n";
    int failures = 0;
    for (const Row& r : rows) {
        sink << fmt(r.d) << "," << fmt(r.u) << "," << to_string(r.m) << "," << o.quantity << ",";
        if (r.failed) {
            sink << "nan,failed\n";
            ++failures;
        } else {
            sink << fmt(r.value.value) << "," << fmt(r.value.error) << "\n";
        }
    }
    sink.flush();
    if (failures > 0) {
        err << failures << " grid point(s) failed to converge\n";
        return kNumericalFailure;
    }
    return kOk;
}

// ---- fit ---------------------------------------------------------------

int cmd_fit(const Options& o, std::ostream& out) {
    const Model m = selected_models(o.model).size() == 1 ? selected_models(o.model).front() : Model::scalar;
    if (m == Model::scalar) throw InvalidInput("fit needs --model dvd or --model ded");
    if (o.n < 1 || o.n > 4) throw InvalidInput("--n must lie in [1, 4]");
    if (!(o.uref >= 0.0 && o.uref <= 0.25)) throw InvalidInput("--uref must lie in [0, 1/4]");
    if (o.points < 50) throw InvalidInput("fit needs --points >= 50");
    if (o.starts < 1) throw InvalidInput("--starts must be >= 1");
    Options grid_opts = o;
    grid_opts.log = true;
    const auto grid = y_minus_1_grid(grid_opts);
    const ModelSettings settings = model_settings(o);

    std::vector<PhiSample> table(grid.size());
    std::vector<std::string> failures(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            table[i] = {grid[i], o.uref, phi_u(from_gap_invariants(grid[i], o.uref), m, settings)};
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw QuadratureError("fit data: " + f, 0.0, 0.0);

    FitOptions fo;
    fo.seed = o.seed;
    fo.starts = o.starts;
    RationalModelParams p = refit(m, o.n, table, fo);
    p.grid_spec = "u_ref=" + fmt(o.uref) + ";y_minus_1=log:" + fmt(grid.front()) + ":" + fmt(grid.back()) +
                  ":" + std::to_string(grid.size());

    const RationalModelParams builtin = builtin_params(m);
    const double builtin_eps = max_deviation(builtin, table);
    out << "model = " << to_string(m) << "\n";
    out << "n = " << p.n << "\n";
    out << "u_ref = " << fmt(o.uref) << "\n";
    out << "epsilon = " << fmt(p.epsilon) << "\n";
    for (int k = 0; k < p.n; ++k) out << "nu_" << k + 1 << " = " << fmt(p.nu[k]) << "\n";
    for (int k = 0; k < p.n; ++k) out << "mu_" << k + 1 << " = " << fmt(p.mu[k]) << "\n";
    out << "builtin_epsilon = " << fmt(builtin_eps) << "\n";
    out << "builtin_epsilon_reference = " << fmt(builtin.epsilon) << "\n";

    const std::string doc = json(p).dump(2) + "\n";
    if (o.out.empty()) {
        out << doc;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw InvalidInput("cannot write " + o.out);
        file << doc;
    }
    return kOk;
}

// ---- validate ----------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
    int failed = 0;
    auto report = [&](const std::string& name, double deviation, double tolerance) {
        const bool ok = deviation <= tolerance;
        failed += ok ? 0 : 1;
        out << (ok ? "PASS " : "FAIL ") << name << " deviation=" << fmt(deviation)
            << " tolerance=" << fmt(tolerance) << "\n";
    };

    using validation::ReflectionKind;
    const std::vector<std::pair<double, double>> points{{1.5, 0.25}, {2.0, 0.1}, {5.0, 0.0}};
    for (auto [y, u] : points) {
        const auto red = from_invariants(y, u);
        const std::string where = "(y=" + fmt(y) + ",u=" + fmt(u) + ")";
        const std::pair<ReflectionKind, Model> kinds[] = {{ReflectionKind::scalar, Model::scalar},
                                                           {ReflectionKind::drude_vacuum, Model::dvd},
                                                           {ReflectionKind::dielectric_electrolyte, Model::ded}};
        for (auto [kind, m] : kinds) {
            const double oracle = validation::f_roundtrip_planewave({kind}, red, 1).value;
            report("oracle_r1_" + to_string(m) + where, std::abs(oracle / f_single(red, m) - 1.0), 1e-5);
        }
        const double engine = f_ded_roundtrip(red, 1).value;
        report("ded_engine_r1" + where, std::abs(engine / f1_ded(red) - 1.0), 1e-8);
    }

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto red = from_invariants(1.0 + 5.0 * unit(rng), 0.25 * unit(rng));
        RoundTripMatrixSpec spec;
        spec.r = 1 + k % 3;
        spec.sigma = k % 2 ? 1 : -1;
        const auto c = ring_couplings(red, spec.r);
        std::vector<double> h(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            spec.t.push_back(unit(rng));
            h[i] = spec.t[i] * c[i];
        }
        const double lu = det_roundtrip_matrix(spec, red);
        worst = std::max(worst, std::abs(det_periodic_tridiagonal_transfer(h, spec.sigma) / lu - 1.0));
    }
    report("determinant_lu_vs_transfer", worst, 1e-12);

    const auto red = from_invariants(2.0, 0.25);
    const auto engine = f_ded_roundtrip(red, 2);
    const auto oracle = validation::f_roundtrip_planewave({ReflectionKind::dielectric_electrolyte}, red, 2);
    report("ded_r2_engine_vs_oracle(y=2,u=0.25)", std::abs(engine.value - oracle.value),
           engine.error + oracle.error);

    out << (failed ? "validation failed: " + std::to_string(failed) + " check(s)\n" : "all checks passed\n");
    return failed ? kNumericalFailure : kOk;
}

// ---- dispatch ----------------------------------------------------------

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "series tolerance");
    cmd->add_option("--rmax", o.rmax, "highest explicit ded round trip");
    cmd->add_option("--seed", o.seed, "quasi-random scrambling seed");
    cmd->add_option("--config", o.config, "JSON file with default flag values");
}

void add_grid(CLI::App* cmd, Options& o) {
    cmd->add_option("--ymin", o.ymin, "smallest y");
    cmd->add_option("--ymax", o.ymax, "largest y");
    cmd->add_option("--points", o.points, "grid points");
}

std::set<std::string> option_names(const CLI::App* cmd) {
    std::set<std::string> names;
    for (const CLI::Option* opt : cmd->get_options())
        for (const auto& n : opt->get_lnames()) names.insert(n);
    return names;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::optional<double> single_u;
    std::string u_list;

    CLI::App app{"High-temperature Casimir free energy of two spheres"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* compute = app.add_subcommand("compute", "free energy at one geometry");
    compute->add_option("--L", o.L, "surface-to-surface distance");
    compute->add_option("--R1", o.R1, "radius of sphere 1");
    compute->add_option("--R2", o.R2, "radius of sphere 2");
    compute->add_flag("--plane", o.plane, "replace sphere 2 by a plane");
    compute->add_option("--y", o.y, "conformal invariant y > 1");
    compute->add_option("--u", single_u, "radius parameter u in [0, 1/4]");
    compute->add_option("--model", o.model, "scalar, dvd, ded or all");
    compute->add_option("--T", o.T, "temperature in kelvin");
    add_common(compute, o);

    auto* curve = app.add_subcommand("curve", "tabulate a quantity on a y grid");
    curve->add_option("--model", o.model, "scalar, dvd, ded or all");
    curve->add_option("--quantity", o.quantity, "f, f1, phi, ratio_u_over_quarter, phi_over_quarter, f_approx");
    curve->add_option("--u", u_list, "comma-separated u values");
    curve->add_flag("--log", o.log, "log spacing in y - 1");
    curve->add_option("--out", o.out, "CSV output path (default stdout)");
    curve->add_option("--params", o.params, "'builtin' or a parameter JSON file");
    add_grid(curve, o);
    add_common(curve, o);

    auto* fit = app.add_subcommand("fit", "fit the rational model to phi at u_ref");
    fit->add_option("--model", o.model, "dvd or ded")->required();
    fit->add_option("--uref", o.uref, "reference u");
    fit->add_option("--n", o.n, "model order");
    fit->add_option("--starts", o.starts, "random initializations");
    fit->add_option("--out", o.out, "JSON output path (default stdout)");
    add_grid(fit, o);
    add_common(fit, o);

    auto* validate = app.add_subcommand("validate", "run the oracle-equivalence checks");
    validate->add_option("--seed", o.seed, "seed for the random matrix checks");

    try {
        std::vector<std::string> merged = args;
        if (!args.empty()) {
            for (CLI::App* sub : {compute, curve, fit}) {
                if (args.front() != sub->get_name()) continue;
                merged = merge_config(args, option_names(sub), {"plane", "log"});
            }
        }
        // fit spans y - 1 in [1e-2, 10] unless told otherwise
        if (!merged.empty() && merged.front() == "fit") {
            o.ymin = 1.01;
            o.ymax = 11.0;
            o.points = 200;
        }
        std::vector<std::string> reversed(merged.rbegin(), merged.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    if (single_u) o.u = single_u;
    if (!u_list.empty()) {
        o.us.clear();
        std::stringstream ss(u_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                o.us.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                err << "error: bad --u value '" << item << "'\n";
                return kInvalidInput;
            }
        }
    }

    try {
        if (compute->parsed()) return cmd_compute(o, out);
        if (curve->parsed()) return cmd_curve(o, args, out, err);
        if (fit->parsed()) return cmd_fit(o, out);
        return cmd_validate(o, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << " (after " << e.terms() << " terms)\n";
        return kNumericalFailure;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << " (value " << fmt(e.value()) << ", error "
            << fmt(e.error()) << ")\n";
        return kNumericalFailure;
    } catch (const FitError& e) {
        err << "fit failure: " << e.what() << " (residual " << fmt(e.residual()) << ", iterations "
            << e.iterations() << ")\n";
        return kNumericalFailure;
    }
}

}  // namespace casimir::cli
