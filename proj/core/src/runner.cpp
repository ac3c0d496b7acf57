#include "pricelab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pricelab/growth.hpp"
#include "pricelab/hypergeom.hpp"
#include "pricelab/price.hpp"

namespace pricelab {

using json = nlohmann::ordered_json;

namespace {

const char* kScenarios[] = {"mu",       "almgren",  "price-verify", "energy-window",
                            "exponent", "poisson-q", "sweep"};

bool known_scenario(const std::string& s) {
    for (const char* name : kScenarios)
        if (s == name) return true;
    return false;
}

bool verification_scenario(const std::string& s) {
    return s == "price-verify" || s == "energy-window" || s == "exponent";
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& message, const std::string& path) {
    throw ConfigError(message, path);
}

// --- config parsing ---------------------------------------------------------

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail("expected a number", path);
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail("expected an integer", path);
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail("expected a string", path);
    return j.get<std::string>();
}

std::vector<double> require_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail("expected a non-empty array of numbers", path);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(require_number(j[i], path + "/" + std::to_string(i)));
    return out;
}

FunctionSpec parse_function(const json& j, int dim, const std::string& path) {
    if (!j.is_object()) fail("expected an object", path);
    FunctionSpec fn;
    const std::string kind = require_string(j.value("kind", json()), path + "/kind");
    if (kind == "constant") {
        fn.kind = HarmonicFunction::Kind::Constant;
        fn.value = require_number(j.value("value", json()), path + "/value");
    } else if (kind == "polynomial") {
        fn.kind = HarmonicFunction::Kind::Polynomial;
        const json terms = j.value("terms", json());
        if (!terms.is_array() || terms.empty()) fail("expected a non-empty array", path + "/terms");
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tpath = path + "/terms/" + std::to_string(t);
            const json& jt = terms[t];
            if (!jt.is_object()) fail("expected an object", tpath);
            PolyTerm term;
            const std::string type = require_string(jt.value("type", json()), tpath + "/type");
            if (type == "constant") term.basis = PolyBasis::Constant;
            else if (type == "coordinate") term.basis = PolyBasis::Coordinate;
            else if (type == "product") term.basis = PolyBasis::Product;
            else if (type == "diff_sq") term.basis = PolyBasis::DiffSq;
            else if (type == "axial") term.basis = PolyBasis::Axial;
            else fail("unknown basis element type '" + type + "'", tpath + "/type");
            if (term.basis == PolyBasis::Coordinate || term.basis == PolyBasis::Product ||
                term.basis == PolyBasis::DiffSq)
                term.i = require_int(jt.value("i", json(0)), tpath + "/i");
            if (term.basis == PolyBasis::Product || term.basis == PolyBasis::DiffSq)
                term.j = require_int(jt.value("j", json(1)), tpath + "/j");
            if (term.basis == PolyBasis::Axial) {
                term.degree = require_int(jt.value("degree", json()), tpath + "/degree");
                if (jt.contains("axis")) term.axis = require_vector(jt["axis"], tpath + "/axis");
            }
            term.coefficient = jt.contains("coefficient")
                                   ? require_number(jt["coefficient"], tpath + "/coefficient")
                                   : 1.0;
            fn.terms.push_back(std::move(term));
        }
    } else if (kind == "poisson") {
        fn.kind = HarmonicFunction::Kind::Poisson;
        const json atoms = j.value("atoms", json());
        if (!atoms.is_array() || atoms.empty()) fail("expected a non-empty array", path + "/atoms");
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const std::string apath = path + "/atoms/" + std::to_string(a);
            const json& ja = atoms[a];
            if (!ja.is_object()) fail("expected an object", apath);
            PoissonAtom atom;
            atom.weight = ja.contains("weight")
                              ? require_number(ja["weight"], apath + "/weight")
                              : 1.0;
            if (!(atom.weight > 0.0)) fail("atom weight must be > 0", apath + "/weight");
            atom.zeta = require_vector(ja.value("zeta", json()), apath + "/zeta");
            if ((int)atom.zeta.size() != dim) fail("zeta dimension mismatch", apath + "/zeta");
            fn.atoms.push_back(std::move(atom));
        }
    } else {
        fail("unknown function kind '" + kind + "'", path + "/kind");
    }
    return fn;
}

RunConfig parse_config_json(const json& doc) {
    if (!doc.is_object()) fail("config must be a JSON object", "/");
    RunConfig cfg;
    cfg.raw_json = doc.dump();

    cfg.schema = doc.contains("schema") ? require_int(doc["schema"], "/schema") : 0;
    if (cfg.schema != 1) fail("unsupported schema version (expected 1)", "/schema");

    cfg.scenario = require_string(doc.value("scenario", json()), "/scenario");
    if (!known_scenario(cfg.scenario)) fail("unknown scenario '" + cfg.scenario + "'", "/scenario");
    if (cfg.scenario == "sweep") {
        // sweep-specific fields are handled by the sweep executor; validate shape here
        if (!doc.contains("template") || !doc["template"].is_object())
            fail("sweep requires a 'template' object", "/template");
        if (!doc.contains("parameters") || !doc["parameters"].is_object())
            fail("sweep requires a 'parameters' object", "/parameters");
        if (doc.contains("output")) cfg.output = require_string(doc["output"], "/output");
        if (doc.contains("seed")) cfg.seed = (std::uint64_t)require_int(doc["seed"], "/seed");
        return cfg;
    }

    const json space = doc.value("space", json());
    if (!space.is_object()) fail("expected an object", "/space");
    cfg.dim = require_int(space.value("dim", json()), "/space/dim");
    if (cfg.dim < 2) fail("dim must be >= 2", "/space/dim");
    cfg.k = require_number(space.value("k", json()), "/space/k");
    if (cfg.k > 0.0) fail("k must be <= 0", "/space/k");
    cfg.k_prime = space.contains("k_prime") ? require_number(space["k_prime"], "/space/k_prime")
                                            : cfg.k;
    if (cfg.k_prime > cfg.k) fail("requires k_prime <= k <= 0", "/space/k_prime");

    const json grid = doc.value("grid", json());
    if (!grid.is_object()) fail("expected an object", "/grid");
    cfg.grid.start = require_number(grid.value("start", json()), "/grid/start");
    cfg.grid.stop = require_number(grid.value("stop", json()), "/grid/stop");
    cfg.grid.count = require_int(grid.value("count", json()), "/grid/count");
    if (!(cfg.grid.start > 0.0)) fail("grid start must be > 0", "/grid/start");
    if (!(cfg.grid.stop > cfg.grid.start)) fail("grid stop must exceed start", "/grid/stop");
    if (cfg.grid.count < 2) fail("grid count must be >= 2", "/grid/count");
    const std::string spacing = grid.contains("spacing")
                                    ? require_string(grid["spacing"], "/grid/spacing")
                                    : "linear";
    if (spacing == "linear") cfg.grid.log_spacing = false;
    else if (spacing == "log") cfg.grid.log_spacing = true;
    else fail("spacing must be 'linear' or 'log'", "/grid/spacing");

    if (doc.contains("quadrature")) {
        const json q = doc["quadrature"];
        if (!q.is_object()) fail("expected an object", "/quadrature");
        if (q.contains("angular_order"))
            cfg.quadrature.angular_order = require_int(q["angular_order"], "/quadrature/angular_order");
        if (q.contains("radial_order"))
            cfg.quadrature.radial_order = require_int(q["radial_order"], "/quadrature/radial_order");
        if (q.contains("target_rel_tol"))
            cfg.quadrature.target_rel_tol =
                require_number(q["target_rel_tol"], "/quadrature/target_rel_tol");
        if (q.contains("max_refinements"))
            cfg.quadrature.max_refinements =
                require_int(q["max_refinements"], "/quadrature/max_refinements");
        try {
            cfg.quadrature.validate();
        } catch (const DomainError& e) {
            fail(e.what(), "/quadrature");
        }
    }

    if (doc.contains("output")) cfg.output = require_string(doc["output"], "/output");
    if (doc.contains("seed")) cfg.seed = (std::uint64_t)require_int(doc["seed"], "/seed");
    if (doc.contains("r0")) cfg.r0 = require_number(doc["r0"], "/r0");
    if (doc.contains("slack")) cfg.slack = require_number(doc["slack"], "/slack");
    if (doc.contains("tail_rel_tol"))
        cfg.tail_rel_tol = require_number(doc["tail_rel_tol"], "/tail_rel_tol");
    if (!(cfg.slack >= 1.0)) fail("slack must be >= 1", "/slack");

    if (cfg.scenario == "poisson-q") {
        if (cfg.dim < 3) fail("poisson-q requires dim >= 3 (terminating regime)", "/space/dim");
        if (!(cfg.k < 0.0)) fail("poisson-q requires k < 0", "/space/k");
    } else {
        if (!doc.contains("function")) fail("missing function specification", "/function");
        cfg.function = parse_function(doc["function"], cfg.dim, "/function");
    }

    if (cfg.scenario == "price-verify" && std::abs(cfg.grid.start - cfg.r0) > 1e-9)
        fail("envelope scenarios require grid start == R0", "/grid/start");
    return cfg;
}

json parse_json_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) fail("malformed JSON", "/");
    return doc;
}

// --- output writers ----------------------------------------------------------

json space_echo(const RunConfig& cfg) {
    return json{{"dim", cfg.dim}, {"k", cfg.k}, {"k_prime", cfg.k_prime}};
}

json grid_echo(const GridSpec& g) {
    return json{{"start", g.start},
                {"stop", g.stop},
                {"count", g.count},
                {"spacing", g.log_spacing ? "log" : "linear"}};
}

json function_echo(const FunctionSpec& fn) {
    switch (fn.kind) {
        case HarmonicFunction::Kind::Constant:
            return json{{"kind", "constant"}, {"value", fn.value}};
        case HarmonicFunction::Kind::Polynomial: {
            json terms = json::array();
            for (const PolyTerm& t : fn.terms) {
                json jt;
                switch (t.basis) {
                    case PolyBasis::Constant: jt["type"] = "constant"; break;
                    case PolyBasis::Coordinate: jt["type"] = "coordinate"; jt["i"] = t.i; break;
                    case PolyBasis::Product: jt["type"] = "product"; jt["i"] = t.i; jt["j"] = t.j; break;
                    case PolyBasis::DiffSq: jt["type"] = "diff_sq"; jt["i"] = t.i; jt["j"] = t.j; break;
                    case PolyBasis::Axial:
                        jt["type"] = "axial";
                        jt["degree"] = t.degree;
                        if (!t.axis.empty()) jt["axis"] = t.axis;
                        break;
                }
                jt["coefficient"] = t.coefficient;
                terms.push_back(jt);
            }
            return json{{"kind", "polynomial"}, {"terms", terms}};
        }
        case HarmonicFunction::Kind::Poisson: {
            json atoms = json::array();
            for (const PoissonAtom& a : fn.atoms)
                atoms.push_back(json{{"weight", a.weight}, {"zeta", a.zeta}});
            return json{{"kind", "poisson"}, {"atoms", atoms}};
        }
    }
    return json();
}

std::string profile_csv(const std::vector<GrowthSample>& profile,
                        const std::vector<double>* lower_env,
                        const std::vector<double>* upper_env) {
    std::string out = "R,sphere_energy,ball_energy,dirichlet,iterated,mu,almgren,lower_env,upper_env\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const GrowthSample& s = profile[i];
        out += fmt_double(s.R) + ',' + fmt_double(s.sphere_energy) + ',' +
               fmt_double(s.ball_energy) + ',' + fmt_double(s.dirichlet) + ',' +
               fmt_double(s.iterated) + ',' + fmt_double(s.mu) + ',' + fmt_double(s.almgren) + ',';
        if (lower_env) out += fmt_double((*lower_env)[i]);
        out += ',';
        if (upper_env) out += fmt_double((*upper_env)[i]);
        out += '\n';
    }
    return out;
}

// --- scenario execution ------------------------------------------------------

json run_verification(const RunConfig& cfg, std::string* csv_out) {
    const SpaceForm space(cfg.dim, cfg.k);
    const SpaceForm kprime_space(cfg.dim, cfg.k_prime);
    const HarmonicFunction f = build_function(cfg.function, space, cfg.quadrature);
    const std::vector<double> grid = cfg.grid.points();

    json report;
    report["scenario"] = cfg.scenario;
    report["function"] = function_echo(cfg.function);
    report["space"] = space_echo(cfg);
    report["grid"] = grid_echo(cfg.grid);

    json tolerances;
    tolerances["target_rel_tol"] = cfg.quadrature.target_rel_tol;
    tolerances["slack"] = cfg.slack;

    if (cfg.scenario == "price-verify") {
        std::vector<GrowthSample> profile;
        const EnvelopeReport env = verify_double_sided(f, space, kprime_space, grid,
                                                       cfg.quadrature, cfg.slack, cfg.seed, &profile);
        report["C1"] = env.C1;
        report["C2"] = env.C2;
        report["exponent"] = env.ball_exponent;
        report["stability_ok"] = env.stability_ok;
        if (csv_out) *csv_out = profile_csv(profile, &env.lower_env, &env.upper_env);
    } else if (cfg.scenario == "energy-window") {
        tolerances["tail_rel_tol"] = cfg.tail_rel_tol;
        const EnergyWindowReport win = bounded_energy_window_check(
            f, space, grid, cfg.quadrature, cfg.tail_rel_tol, cfg.slack, cfg.seed);
        report["C1"] = win.min_ratio;
        report["C2"] = win.max_ratio;
        report["exponent"] = nullptr;
        report["stability_ok"] = win.stability_ok && win.mu_decay_bound_ok;
        tolerances["sigma"] = win.sigma;
        tolerances["c_calibrated"] = win.c_calibrated;
    } else { // exponent
        const ExponentReport fit =
            growth_exponent_window(f, space, grid, cfg.quadrature, cfg.seed);
        report["C1"] = fit.lower_endpoint;
        report["C2"] = fit.upper_endpoint;
        report["exponent"] = fit.lambda;
        report["stability_ok"] = fit.within_window;
        tolerances["window_tol"] = fit.tol;
        tolerances["method"] =
            fit.method == ExponentMethod::ClosedForm ? "closed-form" : "quadrature";
    }
    report["tolerances"] = tolerances;
    return report;
}

RunResult run_profile(const RunConfig& cfg) {
    const SpaceForm space(cfg.dim, cfg.k);
    const HarmonicFunction f = build_function(cfg.function, space, cfg.quadrature);
    const std::vector<double> grid = cfg.grid.points();
    const std::vector<GrowthSample> profile =
        growth_profile(f, space, grid, cfg.quadrature, cfg.seed);
    RunResult result;
    result.csv = profile_csv(profile, nullptr, nullptr);
    return result;
}

RunResult run_poisson_q(const RunConfig& cfg) {
    const SpaceForm space(cfg.dim, cfg.k);
    const double c1 = calibrate_c1(cfg.dim, cfg.quadrature);
    const QFormEvaluation qform = q_coefficients(cfg.dim, c1);

    std::vector<double> zeta(cfg.dim, 0.0);
    zeta[0] = 1.0;
    const HarmonicFunction kernel = HarmonicFunction::poisson({{1.0, zeta}}, space);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = kernel.evaluate(x);
        return v * v;
    };
    const auto axis = kernel.symmetry_axis();

    json header;
    header["n"] = cfg.dim;
    header["c1"] = c1;
    header["alpha"] = qform.alpha;

    std::string csv = "# " + header.dump() + "\n";
    csv += "R,Q_closed_form,Q_quadrature,rel_diff\n";
    for (double R : cfg.grid.points()) {
        const double closed = rescaled_q(cfg.dim, cfg.k, R, c1);
        const Integral quad = sphere_integral(space, R, p_sq, cfg.quadrature, axis);
        const double rel = std::abs(closed - quad.value) / std::abs(quad.value);
        csv += fmt_double(R) + ',' + fmt_double(closed) + ',' + fmt_double(quad.value) + ',' +
               fmt_double(rel) + '\n';
    }
    RunResult result;
    result.csv = std::move(csv);
    return result;
}

json error_json(const std::exception& err) {
    json out;
    out["code"] = exit_code_for(err);
    if (dynamic_cast<const ConfigError*>(&err)) out["kind"] = "config";
    else if (dynamic_cast<const NumericalViolationError*>(&err)) out["kind"] = "numerical-violation";
    else if (dynamic_cast<const QuadratureError*>(&err)) out["kind"] = "quadrature-non-convergence";
    else if (dynamic_cast<const DomainError*>(&err)) out["kind"] = "domain";
    else out["kind"] = "error";
    out["message"] = err.what();
    if (const auto* cfg = dynamic_cast<const ConfigError*>(&err)) out["path"] = cfg->path;
    return out;
}

RunResult run_sweep(const RunConfig& cfg, int threads) {
    const json doc = parse_json_text(cfg.raw_json);
    const json& tmpl = doc["template"];
    const json& params = doc["parameters"];

    // template must be valid before any patching
    RunConfig probe = parse_config_json(tmpl);
    if (!verification_scenario(probe.scenario))
        fail("sweep template scenario must be price-verify, energy-window or exponent",
             "/template/scenario");

    std::vector<std::string> keys;
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!it.value().is_array()) fail("parameter values must be arrays", "/parameters/" + it.key());
        keys.push_back(it.key());
    }
    std::sort(keys.begin(), keys.end());

    std::size_t total = 1;
    for (const std::string& key : keys) {
        total *= params.at(key).size(); // an empty value list empties the product
        if (total > 10000) fail("sweep cartesian product exceeds 10^4 runs", "/parameters");
    }

    struct Entry {
        json parameters;
        json patched;
    };
    std::vector<Entry> entries;
    entries.reserve(total);
    for (std::size_t index = 0; index < total; ++index) {
        Entry entry;
        entry.patched = tmpl;
        std::size_t rem = index;
        // last key cycles fastest
        for (std::size_t ki = keys.size(); ki-- > 0;) {
            const json& values = params.at(keys[ki]);
            const std::size_t vi = rem % values.size();
            rem /= values.size();
            std::string pointer = "/" + keys[ki];
            std::replace(pointer.begin(), pointer.end(), '.', '/');
            entry.patched[json::json_pointer(pointer)] = values[vi];
            entry.parameters[keys[ki]] = values[vi];
        }
        entries.push_back(std::move(entry));
    }

    std::vector<json> results(entries.size());
    std::atomic<std::size_t> next{0};
    const int pool = std::max(1, threads);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            json item;
            item["parameters"] = entries[i].parameters;
            try {
                const RunConfig sub = parse_config_json(entries[i].patched);
                item["report"] = run_verification(sub, nullptr);
            } catch (const std::exception& err) {
                item["error"] = error_json(err); // individual failures recorded, not fatal
            }
            results[i] = std::move(item);
        }
    };
    std::vector<std::thread> pool_threads;
    for (int t = 1; t < pool; ++t) pool_threads.emplace_back(worker);
    worker();
    for (std::thread& t : pool_threads) t.join();

    json array = json::array();
    for (json& r : results) array.push_back(std::move(r));
    RunResult result;
    result.json = array.dump(2) + "\n";
    return result;
}

} // namespace

std::vector<double> GridSpec::points() const {
    if (count < 2) throw ConfigError("grid count must be >= 2", "/grid/count");
    if (!(start > 0.0) || !(stop > start))
        throw ConfigError("grid must satisfy 0 < start < stop", "/grid");
    std::vector<double> out(count);
    if (log_spacing) {
        const double la = std::log(start), lb = std::log(stop);
        for (int i = 0; i < count; ++i)
            out[i] = std::exp(la + (lb - la) * i / (count - 1));
    } else {
        for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

HarmonicFunction build_function(const FunctionSpec& fn, const SpaceForm& space,
                                const QuadratureSpec& spec) {
    switch (fn.kind) {
        case HarmonicFunction::Kind::Constant:
            return HarmonicFunction::constant(fn.value, space);
        case HarmonicFunction::Kind::Polynomial:
            return HarmonicFunction::polynomial(fn.terms, space, spec);
        case HarmonicFunction::Kind::Poisson:
            return HarmonicFunction::poisson(fn.atoms, space);
    }
    throw DomainError("build_function: unknown kind");
}

RunConfig parse_config(const std::string& json_text) {
    return parse_config_json(parse_json_text(json_text));
}

RunResult execute(const RunConfig& cfg, int threads) {
    if (cfg.scenario == "mu" || cfg.scenario == "almgren") return run_profile(cfg);
    if (cfg.scenario == "poisson-q") return run_poisson_q(cfg);
    if (cfg.scenario == "sweep") return run_sweep(cfg, threads);
    if (verification_scenario(cfg.scenario)) {
        RunResult result;
        std::string csv;
        const json report = run_verification(cfg, cfg.scenario == "price-verify" ? &csv : nullptr);
        result.json = report.dump(2) + "\n";
        result.csv = std::move(csv);
        return result;
    }
    throw ConfigError("unknown scenario '" + cfg.scenario + "'", "/scenario");
}

int exit_code_for(const std::exception& err) {
    if (dynamic_cast<const ConfigError*>(&err)) return 2;
    if (dynamic_cast<const NumericalViolationError*>(&err)) return 3;
    if (dynamic_cast<const QuadratureError*>(&err)) return 4;
    return 1;
}

namespace {

int threads_from_env() {
    if (const char* env = std::getenv("PRICE_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

std::string sibling_with_extension(const std::string& path, const std::string& ext) {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
}

} // namespace

int run_main(int argc, const char* const* argv) {
    std::string config_path, scenario_override, out_override;
    int threads = -1;
    bool verbose = false;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const bool takes_value =
            arg == "--config" || arg == "--scenario" || arg == "--out" || arg == "--threads";
        if (takes_value && i + 1 >= argc) {
            std::cerr << error_json(ConfigError("missing value for flag", arg)).dump() << "\n";
            return 2;
        }
        if (arg == "--config") config_path = argv[++i];
        else if (arg == "--scenario") scenario_override = argv[++i];
        else if (arg == "--out") out_override = argv[++i];
        else if (arg == "--threads") threads = std::atoi(argv[++i]);
        else if (arg == "--verbose") verbose = true;
        else if (arg == "--help" || arg == "-h") {
            std::cout << "usage: pricelab --config <path> [--scenario <name>] [--out <path>]\n"
                         "                [--threads <n>] [--verbose]\n"
                         "scenarios: mu almgren price-verify energy-window exponent poisson-q sweep\n"
                         "exit codes: 0 ok, 2 config, 3 numerical violation, 4 quadrature\n";
            return 0;
        } else {
            std::cerr << error_json(ConfigError("unknown flag '" + arg + "'", arg)).dump() << "\n";
            return 2;
        }
    }

    try {
        if (config_path.empty()) throw ConfigError("missing --config <path>", "--config");
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot read config file", config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();

        json doc = parse_json_text(buffer.str());
        if (!scenario_override.empty()) doc["scenario"] = scenario_override;
        if (!out_override.empty()) doc["output"] = out_override;
        RunConfig cfg = parse_config_json(doc);
        cfg.raw_json = doc.dump();
        if (cfg.output.empty()) throw ConfigError("missing output path", "/output");

        if (threads < 1) threads = threads_from_env();
        if (verbose)
            std::cerr << "pricelab: scenario=" << cfg.scenario << " output=" << cfg.output
                      << " threads=" << threads << "\n";

        const RunResult result = execute(cfg, threads);
        if (!result.json.empty() && !result.csv.empty()) {
            write_file(cfg.output, result.json);
            write_file(sibling_with_extension(cfg.output, ".csv"), result.csv);
        } else if (!result.json.empty()) {
            write_file(cfg.output, result.json);
        } else {
            write_file(cfg.output, result.csv);
        }
        if (verbose) std::cerr << "pricelab: done\n";
        return 0;
    } catch (const std::exception& err) {
        std::cerr << error_json(err).dump() << "\n";
        return exit_code_for(err);
    }
}

} // namespace pricelab
