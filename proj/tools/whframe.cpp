// whframe: frame-bound certificates for Gabor systems from the command line.
//
//   whframe <analyze|perturb|shift|truncate|zak|oracle|counterexamples|identity-check> [options]
//
// Settings come from a TOML file (--config, or $WHFRAME_CONFIG) and are
// overridden by flags. Reports go to stdout as JSON, diagnostics to stderr.
// Exit codes: 0 pass, 1 usage/config error, 2 hypothesis fails, 3 inconclusive.

#include "whframe/whframe.hpp"

#include <CLI11.hpp>
#include <tomlplusplus/toml.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace whframe;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_usage = 1;
constexpr int exit_failed = 2;
constexpr int exit_inconclusive = 3;

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowSpec {
    std::optional<std::string> name;
    WindowParams params;
    std::optional<std::string> json;  // inline JSON or a path to a JSON file
    std::string origin;               // for error messages
    bool given() const { return name || json; }
};

struct RunConfig {
    WindowSpec window{std::string("indicator"), {}, {}, "default"};
    WindowSpec perturbed;
    WindowSpec test_function;
    Rat a{1};
    Rat b{1};
    long m_max = 1024;
    long budget = 200;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    int cells_per_period = 4;
    int periods = 16;
    std::optional<std::string> csv;
    int nx = 64;
    int ny = 256;
    std::string criterion = "cross_term";
    std::optional<Rat> A, B;
    std::string bounds_from = "walnut";
    std::optional<Rat> a_prime;
    std::optional<Rat> R;
    long eps_denominator = 10000;
    std::vector<Rat> b_prime;
    std::vector<std::string> scenarios;
    long n_max = 6;
};

// ---- TOML ingestion ----------------------------------------------------------

std::string at(const std::string& file, const toml::node& n, const std::string& field)
{
    const auto& src = n.source();
    std::ostringstream os;
    os << file << ":" << src.begin.line << ":" << src.begin.column << ": " << field;
    return os.str();
}

Rat toml_rat(const std::string& file, const toml::node& n, const std::string& field)
{
    if (auto s = n.value<std::string>()) {
        try {
            return parse_rat(*s);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(at(file, n, field) + ": " + e.what());
        }
    }
    if (n.is_integer()) return Rat(*n.value<long long>());
    throw ConfigError(at(file, n, field) + ": expected a rational string \"p/q\" or an integer");
}

long toml_int(const std::string& file, const toml::node& n, const std::string& field, long min_value)
{
    if (!n.is_integer()) throw ConfigError(at(file, n, field) + ": expected an integer");
    const long v = static_cast<long>(*n.value<long long>());
    if (v < min_value) throw ConfigError(at(file, n, field) + ": must be >= " + std::to_string(min_value));
    return v;
}

std::string toml_str(const std::string& file, const toml::node& n, const std::string& field)
{
    if (auto s = n.value<std::string>()) return *s;
    throw ConfigError(at(file, n, field) + ": expected a string");
}

void load_window(const std::string& file, const toml::table& t, const std::string& section, WindowSpec& w)
{
    w = WindowSpec{};
    w.origin = file + " [" + section + "]";
    for (const auto& [key, node] : t) {
        const std::string k(key.str());
        const std::string field = section + "." + k;
        if (k == "name") {
            w.name = toml_str(file, node, field);
        } else if (k == "json") {
            w.json = toml_str(file, node, field);
        } else if (k == "eps" || k == "c" || k == "n_max") {
            w.params[k] = toml_rat(file, node, field);
        } else {
            throw ConfigError(at(file, node, field) + ": unknown key");
        }
    }
    if (w.name && w.json) throw ConfigError(file + ": " + section + ": give either name or json, not both");
}

void load_config(const std::string& file, RunConfig& cfg)
{
    toml::table root;
    try {
        root = toml::parse_file(file);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << file << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw ConfigError(os.str());
    }
    for (const auto& [key, node] : root) {
        const std::string sec(key.str());
        const toml::table* t = node.as_table();
        if (!t) throw ConfigError(at(file, node, sec) + ": expected a table");
        if (sec == "window") {
            load_window(file, *t, sec, cfg.window);
        } else if (sec == "perturbed") {
            load_window(file, *t, sec, cfg.perturbed);
        } else if (sec == "test_function") {
            load_window(file, *t, sec, cfg.test_function);
        } else if (sec == "lattice") {
            for (const auto& [k2, n] : *t) {
                const std::string k(k2.str());
                if (k == "a") cfg.a = toml_rat(file, n, sec + "." + k);
                else if (k == "b") cfg.b = toml_rat(file, n, sec + "." + k);
                else throw ConfigError(at(file, n, sec + "." + k) + ": unknown key");
            }
        } else if (sec == "options") {
            for (const auto& [k2, n] : *t) {
                const std::string k(k2.str());
                const std::string f = sec + "." + k;
                if (k == "m_max") cfg.m_max = toml_int(file, n, f, 1);
                else if (k == "budget") cfg.budget = toml_int(file, n, f, 1);
                else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(toml_int(file, n, f, 0));
                else if (k == "cells_per_period") cfg.cells_per_period = static_cast<int>(toml_int(file, n, f, 1));
                else if (k == "periods") cfg.periods = static_cast<int>(toml_int(file, n, f, 1));
                else if (k == "nx") cfg.nx = static_cast<int>(toml_int(file, n, f, 2));
                else if (k == "ny") cfg.ny = static_cast<int>(toml_int(file, n, f, 2));
                else if (k == "csv") cfg.csv = toml_str(file, n, f);
                else if (k == "tolerance") {
                    if (auto v = n.value<double>()) cfg.tolerance = *v;
                    else throw ConfigError(at(file, n, f) + ": expected a number");
                    if (!(cfg.tolerance >= 0)) throw ConfigError(at(file, n, f) + ": must be >= 0");
                } else throw ConfigError(at(file, n, f) + ": unknown key");
            }
        } else if (sec == "perturb") {
            for (const auto& [k2, n] : *t) {
                const std::string k(k2.str());
                const std::string f = sec + "." + k;
                if (k == "criterion") cfg.criterion = toml_str(file, n, f);
                else if (k == "A") cfg.A = toml_rat(file, n, f);
                else if (k == "B") cfg.B = toml_rat(file, n, f);
                else if (k == "bounds_from") cfg.bounds_from = toml_str(file, n, f);
                else throw ConfigError(at(file, n, f) + ": unknown key");
            }
        } else if (sec == "shift") {
            for (const auto& [k2, n] : *t) {
                const std::string k(k2.str());
                const std::string f = sec + "." + k;
                if (k == "a_prime") cfg.a_prime = toml_rat(file, n, f);
                else if (k == "R") cfg.R = toml_rat(file, n, f);
                else if (k == "eps_denominator") cfg.eps_denominator = toml_int(file, n, f, 1);
                else if (k == "b_prime") {
                    const toml::array* arr = n.as_array();
                    if (!arr) throw ConfigError(at(file, n, f) + ": expected an array");
                    cfg.b_prime.clear();
                    for (std::size_t i = 0; i < arr->size(); ++i)
                        cfg.b_prime.push_back(toml_rat(file, (*arr)[i], f + "[" + std::to_string(i) + "]"));
                } else throw ConfigError(at(file, n, f) + ": unknown key");
            }
        } else if (sec == "counterexamples") {
            for (const auto& [k2, n] : *t) {
                const std::string k(k2.str());
                const std::string f = sec + "." + k;
                if (k == "n_max") cfg.n_max = toml_int(file, n, f, 2);
                else if (k == "scenarios") {
                    const toml::array* arr = n.as_array();
                    if (!arr) throw ConfigError(at(file, n, f) + ": expected an array");
                    cfg.scenarios.clear();
                    for (std::size_t i = 0; i < arr->size(); ++i)
                        cfg.scenarios.push_back(toml_str(file, (*arr)[i], f + "[" + std::to_string(i) + "]"));
                } else throw ConfigError(at(file, n, f) + ": unknown key");
            }
        } else {
            throw ConfigError(at(file, node, sec) + ": unknown section");
        }
    }
}

// ---- flag overrides ------------------------------------------------------------

Rat flag_rat(const std::string& text, const std::string& flag)
{
    try {
        return parse_rat(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(flag + ": " + e.what());
    }
}

void apply_params(const std::vector<std::string>& kvs, const std::string& flag, WindowSpec& w)
{
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(flag + ": expected key=value, got '" + kv + "'");
        w.params[kv.substr(0, eq)] = flag_rat(kv.substr(eq + 1), flag + " " + kv.substr(0, eq));
    }
}

std::string read_file(const std::string& path, const std::string& what)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(what + ": cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PiecewiseFn resolve(const WindowSpec& w, const std::string& what)
{
    try {
        if (w.json) {
            const bool inline_json = w.json->find('{') != std::string::npos;
            const std::string text = inline_json ? *w.json : read_file(*w.json, what);
            return window_from_json_text(text, what);
        }
        if (w.name) return builtin_window(*w.name, w.params);
    } catch (const FormatError& e) {
        throw ConfigError(w.origin + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(w.origin + ": " + what + ": " + e.what());
    }
    throw ConfigError(what + ": no window given");
}

GaborSystem make_system(const PiecewiseFn& g, const Rat& a, const Rat& b)
{
    try {
        return GaborSystem{g, a, b};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("lattice: ") + e.what());
    }
}

OracleOptions oracle_options(const RunConfig& cfg)
{
    OracleOptions o;
    o.m_max = cfg.m_max;
    o.cells_per_period = cfg.cells_per_period;
    o.periods = cfg.periods;
    return o;
}

std::ofstream open_csv(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("csv: cannot write '" + path + "'");
    out.precision(17);
    return out;
}

json lattice_json(const RunConfig& cfg) { return {{"a", to_string(cfg.a)}, {"b", to_string(cfg.b)}}; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::passed: return exit_pass;
    case Verdict::failed: return exit_failed;
    case Verdict::inconclusive: return exit_inconclusive;
    }
    return exit_usage;
}

// ---- subcommands -----------------------------------------------------------------

void write_g_series_csv(const std::string& path, const CorrelationSeries& s)
{
    auto out = open_csv(path);
    out << "k,cell,l,r,c0re,c0im,c1re,c1im,c2re,c2im,sup_norm\n";
    for (long k : s.ordered_keys()) {
        const PiecewiseFn& f = s.term(k);
        const double sup = sup_norm(s, k).hi_d();
        for (std::size_t i = 0; i < f.num_pieces(); ++i) {
            const Poly& p = f.pieces()[i];
            out << k << "," << i << "," << to_double(f.breakpoints()[i]) << "," << to_double(f.breakpoints()[i + 1]);
            for (int j = 0; j <= 2; ++j) out << "," << to_double(p.coeff(j).re) << "," << to_double(p.coeff(j).im);
            out << "," << sup << "\n";
        }
    }
}

int cmd_analyze(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    const GaborSystem sys = make_system(g, cfg.a, cfg.b);
    const CorrelationSeries series = correlations(sys);
    const FrameBounds wb = walnut_bounds(series);
    const OracleReport rep = empirical_bounds(sys, cfg.budget, cfg.seed, oracle_options(cfg));

    json out{{"command", "analyze"}, {"window", to_json(g)}, {"lattice", lattice_json(cfg)}};
    out["amalgam_norm"] = to_json(amalgam_norm(g, cfg.a));
    out["G_series_summary"] = g_series_summary(series);
    out["walnut_bounds"] = to_json(wb);

    // rho values of the truncated form sit below the true ones by at most the tail
    auto inside = [&](const FrameBounds& fb) {
        return rep.rho_min + rep.tail_at_min >= fb.lower_d() - cfg.tolerance && rep.rho_max <= fb.upper_d() + cfg.tolerance;
    };
    bool ok = inside(wb);
    std::optional<FrameBounds> zb;
    if (cfg.a == 1 && cfg.b == 1) {
        zb = zak_frame_bounds(g, cfg.nx, cfg.ny);
        out["zak_bounds"] = to_json(*zb);
        ok = ok && inside(*zb);
    } else {
        out["zak_bounds"] = nullptr;
    }
    out["oracle_report"] = to_json(rep);
    std::string text;
    if (wb.lower > 0) {
        text = "frame with certified bounds [" + to_string(wb.lower) + ", " + to_string(wb.upper) + "]";
    } else {
        std::ostringstream os;
        os << "no frame certificate; oracle rho_min ~ " << rep.rho_min;
        text = os.str();
    }
    out["sandwich_verdict"] = {{"holds", ok}, {"tolerance", cfg.tolerance}, {"summary", text}};
    if (cfg.csv) write_g_series_csv(*cfg.csv, series);
    emit(out);
    return ok ? exit_pass : exit_failed;
}

std::pair<Rat, Rat> base_bounds(const RunConfig& cfg, const PiecewiseFn& g, std::string& source)
{
    if (cfg.A && cfg.B) {
        source = "user";
        return {*cfg.A, *cfg.B};
    }
    FrameBounds fb;
    if (cfg.bounds_from == "walnut") {
        fb = walnut_bounds(make_system(g, cfg.a, cfg.b));
    } else if (cfg.bounds_from == "zak") {
        if (cfg.a != 1 || cfg.b != 1) throw ConfigError("perturb.bounds_from: zak bounds need a = b = 1");
        fb = zak_frame_bounds(g, cfg.nx, cfg.ny);
    } else {
        throw ConfigError("perturb.bounds_from: expected 'walnut' or 'zak', got '" + cfg.bounds_from + "'");
    }
    source = cfg.bounds_from;
    return {cfg.A.value_or(fb.lower), cfg.B.value_or(fb.upper)};
}

// Without a positive lower bound for g none of the criteria applies.
int no_base_frame(const std::string& command, const std::string& source)
{
    emit({{"command", command},
          {"verdict", "failed"},
          {"bounds_source", source},
          {"failure_reason", "no positive lower frame bound for g (A = 0)"}});
    return exit_failed;
}

int cmd_perturb(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    if (!cfg.perturbed.given()) throw ConfigError("perturbed: no perturbed window h given (--perturbed or [perturbed])");
    const PiecewiseFn h = resolve(cfg.perturbed, "perturbed");
    make_system(g, cfg.a, cfg.b);
    if (cfg.criterion == "divergence") {
        const DivergenceReport r = divergence_diagnostic(g, h, cfg.a, cfg.b);
        json out = to_json(r);
        out["command"] = "perturb";
        emit(out);
        return r.divergent ? exit_failed : exit_pass;
    }
    std::string source;
    const auto [A, B] = base_bounds(cfg, g, source);
    if (!(A > 0)) return no_base_frame("perturb", source);
    if (B < A) throw ConfigError("perturb: need A <= B");
    Certificate c;
    if (cfg.criterion == "cross_term") {
        c = certify_cross_term(g, h, cfg.a, cfg.b, A, B);
    } else if (cfg.criterion == "amalgam") {
        c = certify_amalgam(g, h, cfg.a, cfg.b, A, B);
    } else if (cfg.criterion == "zak") {
        if (cfg.a != 1 || cfg.b != 1) throw ConfigError("perturb.criterion: zak needs a = b = 1");
        c = certify_zak(g, h, A, B);
    } else {
        throw ConfigError("perturb.criterion: expected cross_term, amalgam, zak or divergence, got '" + cfg.criterion + "'");
    }
    c.bounds_source = source;
    json out = to_json(c);
    out["command"] = "perturb";
    out["lattice"] = lattice_json(cfg);
    emit(out);
    return verdict_exit(c.verdict);
}

int cmd_shift(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    make_system(g, cfg.a, cfg.b);
    if (!cfg.a_prime) throw ConfigError("shift.a_prime: required (--a-prime)");
    std::string source;
    const auto [A, B] = base_bounds(cfg, g, source);
    if (!(A > 0)) return no_base_frame("shift", source);
    Certificate c = certify_shift(g, cfg.a, cfg.b, A, B, *cfg.a_prime, cfg.R, cfg.eps_denominator);
    c.bounds_source = source;
    json out = to_json(c);
    out["command"] = "shift";
    out["lattice"] = lattice_json(cfg);
    out["a_prime"] = to_string(*cfg.a_prime);
    if (c.shift_bounds) {
        json at_b = json::array();
        for (const Rat& bp : cfg.b_prime) {
            if (bp <= 0 || bp > c.shift_bounds->b0) {
                at_b.push_back({{"b_prime", to_string(bp)}, {"bounds", nullptr}, {"note", "outside (0, b0]"}});
                continue;
            }
            at_b.push_back({{"b_prime", to_string(bp)}, {"bounds", to_json(c.shift_bounds->at(bp))}});
        }
        out["bounds_at_b_prime"] = at_b;
    }
    emit(out);
    return verdict_exit(c.verdict);
}

int cmd_truncate(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    make_system(g, cfg.a, cfg.b);
    std::string source;
    const auto [A, B] = base_bounds(cfg, g, source);
    if (!(A > 0)) return no_base_frame("truncate", source);
    Certificate c = certify_truncation(g, cfg.a, cfg.b, A, B);
    c.bounds_source = source;
    json out = to_json(c);
    out["command"] = "truncate";
    out["lattice"] = lattice_json(cfg);
    emit(out);
    return verdict_exit(c.verdict);
}

int cmd_zak(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    ZakGrid grid;
    try {
        grid = zak_transform(g, cfg.nx, cfg.ny);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("zak: ") + e.what());
    }
    const FrameBounds fb = zak_frame_bounds(grid);
    json out{{"command", "zak"}, {"window", to_json(g)}, {"resolution", {cfg.nx, cfg.ny}}};
    out["bounds"] = to_json(fb);
    out["modulus_range"] = to_json(grid.modulus_range);
    out["closed_form"] = grid.closed_form;
    out["mean_modulus_sq"] = grid.mean_modulus_sq();
    out["l2_norm_sq"] = to_string(g.l2_norm_sq());
    if (cfg.csv) {
        auto csv = open_csv(*cfg.csv);
        csv << "x,y,re,im,modulus\n";
        for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
            for (int iy = 0; iy < grid.ny; ++iy) {
                const auto z = grid.at(ix, static_cast<std::size_t>(iy));
                csv << grid.xs[ix] << "," << grid.ys[static_cast<std::size_t>(iy)] << "," << z.real() << "," << z.imag()
                    << "," << std::abs(z) << "\n";
            }
    }
    emit(out);
    return exit_pass;
}

int cmd_oracle(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    const GaborSystem sys = make_system(g, cfg.a, cfg.b);
    const OracleReport rep = empirical_bounds(sys, cfg.budget, cfg.seed, oracle_options(cfg));
    json out{{"command", "oracle"}, {"window", to_json(g)}, {"lattice", lattice_json(cfg)}, {"seed", cfg.seed}};
    out["report"] = to_json(rep);
    out["note"] = "rho values are of the truncated form; rho_max is only a lower witness for the optimal upper bound";
    if (cfg.csv) {
        auto csv = open_csv(*cfg.csv);
        csv << "phase,restart,sweep,rho\n";
        for (const auto& t : rep.search_trace) csv << t.phase << "," << t.restart << "," << t.sweep << "," << t.rho << "\n";
    }
    emit(out);
    return exit_pass;
}

int cmd_counterexamples(const RunConfig& cfg)
{
    SuiteOptions opt;
    opt.seed = cfg.seed;
    std::vector<std::string> names = cfg.scenarios.empty() ? scenario_names() : cfg.scenarios;
    for (const auto& n : names)
        if (std::find(scenario_names().begin(), scenario_names().end(), n) == scenario_names().end())
            throw ConfigError("counterexamples.scenarios: unknown scenario '" + n + "'");
    if (cfg.n_max < 2 || cfg.n_max > 20) throw ConfigError("counterexamples.n_max: must lie in [2, 20]");
    json list = json::array();
    bool all = true;
    for (const auto& n : names)
        for (const auto& s : run_scenario(n, opt, cfg.n_max)) {
            list.push_back(to_json(s));
            all = all && s.passed();
        }
    emit({{"command", "counterexamples"}, {"passed", all}, {"scenarios", list}});
    return all ? exit_pass : exit_failed;
}

int cmd_identity(const RunConfig& cfg)
{
    const PiecewiseFn g = resolve(cfg.window, "window");
    const PiecewiseFn f = cfg.test_function.given() ? resolve(cfg.test_function, "test_function") : g;
    const GaborSystem sys = make_system(g, cfg.a, cfg.b);
    const IdentityReport r = identity_check(f, sys, cfg.m_max);
    json out{{"command", "identity-check"}, {"lattice", lattice_json(cfg)}, {"test_function", to_json(f)}};
    out["report"] = to_json(r);
    out["passed"] = r.passed(cfg.tolerance);
    emit(out);
    return r.passed(cfg.tolerance) ? exit_pass : exit_failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frame-bound certificates for Gabor systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path, window, window_json, h, h_json, f, f_json, a, b, csv, A, B, a_prime, R,
        criterion, bounds_from;
    std::vector<std::string> params, h_params, f_params, b_prime, scenarios;
    std::optional<long> m_max, budget, n_max, eps_den;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<int> nx, ny, cells, periods;

    app.add_option("--config", config_path, "TOML config file (default: $WHFRAME_CONFIG)");
    app.add_option("--window", window, "builtin window name");
    app.add_option("--param", params, "builtin window parameter key=p/q (repeatable)");
    app.add_option("--window-json", window_json, "window as inline JSON or a JSON file path");
    app.add_option("--a", a, "translation parameter p/q");
    app.add_option("--b", b, "modulation parameter p/q");
    app.add_option("--m-max", m_max, "modulation truncation")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "oracle random samples")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "oracle seed");
    app.add_option("--tolerance", tolerance, "comparison tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--cells-per-period", cells, "oracle test-function cells per period")->check(CLI::PositiveNumber);
    app.add_option("--periods", periods, "oracle test-function periods")->check(CLI::PositiveNumber);
    app.add_option("--csv", csv, "CSV output path (G-series, Zak grid or search trace)");

    auto* analyze = app.add_subcommand("analyze", "bounds, G-series summary and oracle sandwich check");
    auto* perturb = app.add_subcommand("perturb", "perturbation certificate for g -> h");
    perturb->add_option("--perturbed", h, "builtin name of the perturbed window");
    perturb->add_option("--perturbed-param", h_params, "parameter of the perturbed builtin key=p/q");
    perturb->add_option("--perturbed-json", h_json, "perturbed window as inline JSON or file");
    perturb->add_option("--criterion", criterion, "cross_term | amalgam | zak | divergence");
    perturb->add_option("--A", A, "lower frame bound of (g,a,b)");
    perturb->add_option("--B", B, "upper frame bound of (g,a,b)");
    perturb->add_option("--bounds-from", bounds_from, "walnut | zak (when A, B are not given)");
    auto* shift = app.add_subcommand("shift", "translation-parameter certificate a -> a'");
    shift->add_option("--a-prime", a_prime, "new translation parameter p/q");
    shift->add_option("--R", R, "R with D <= R < bA (default max(D, bA/10^4))");
    shift->add_option("--eps-denominator", eps_den, "grid denominator for epsilon")->check(CLI::PositiveNumber);
    shift->add_option("--b-prime", b_prime, "evaluate the bounds at these b' (repeatable)");
    shift->add_option("--A", A, "lower frame bound of (g,a,b)");
    shift->add_option("--B", B, "upper frame bound of (g,a,b)");
    auto* truncate = app.add_subcommand("truncate", "truncation certificate chi_[-aN,aN] g");
    truncate->add_option("--A", A, "lower frame bound of (g,a,b)");
    truncate->add_option("--B", B, "upper frame bound of (g,a,b)");
    auto* zak = app.add_subcommand("zak", "Zak transform grid and a = b = 1 bounds");
    zak->add_option("--nx", nx, "x resolution")->check(CLI::Range(2, 1 << 16));
    zak->add_option("--ny", ny, "y resolution")->check(CLI::Range(2, 1 << 16));
    auto* oracle = app.add_subcommand("oracle", "empirical Rayleigh-quotient extremes");
    auto* cex = app.add_subcommand("counterexamples", "run the built-in counterexample scenarios");
    cex->add_option("--scenario", scenarios, "scenario name (repeatable; default all)");
    cex->add_option("--n-max", n_max, "truncation level of the Cantor-type set");
    auto* ident = app.add_subcommand("identity-check", "truncated vs exact frame quadratic form");
    ident->add_option("--f", f, "builtin name of the test function (default: the window)");
    ident->add_option("--f-param", f_params, "parameter of the test-function builtin key=p/q");
    ident->add_option("--f-json", f_json, "test function as inline JSON or file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        RunConfig cfg;
        if (!config_path)
            if (const char* env = std::getenv("WHFRAME_CONFIG"); env && *env) config_path = env;
        if (config_path) load_config(*config_path, cfg);

        auto override_window = [](WindowSpec& w, const std::optional<std::string>& name,
                                  const std::optional<std::string>& js, const std::vector<std::string>& ps,
                                  const std::string& flag) {
            if (name && js) throw ConfigError("--" + flag + " and --" + flag + "-json are exclusive");
            if (name) w = WindowSpec{name, {}, {}, "--" + flag};
            if (js) w = WindowSpec{{}, {}, js, "--" + flag + "-json"};
            apply_params(ps, "--" + flag + "-param", w);
        };
        override_window(cfg.window, window, window_json, {}, "window");
        apply_params(params, "--param", cfg.window);
        override_window(cfg.perturbed, h, h_json, h_params, "h");
        override_window(cfg.test_function, f, f_json, f_params, "f");
        if (a) cfg.a = flag_rat(*a, "--a");
        if (b) cfg.b = flag_rat(*b, "--b");
        if (m_max) cfg.m_max = *m_max;
        if (budget) cfg.budget = *budget;
        if (seed) cfg.seed = *seed;
        if (tolerance) cfg.tolerance = *tolerance;
        if (cells) cfg.cells_per_period = *cells;
        if (periods) cfg.periods = *periods;
        if (csv) cfg.csv = *csv;
        if (nx) cfg.nx = *nx;
        if (ny) cfg.ny = *ny;
        if (criterion) cfg.criterion = *criterion;
        if (A) cfg.A = flag_rat(*A, "--A");
        if (B) cfg.B = flag_rat(*B, "--B");
        if (bounds_from) cfg.bounds_from = *bounds_from;
        if (a_prime) cfg.a_prime = flag_rat(*a_prime, "--a-prime");
        if (R) cfg.R = flag_rat(*R, "--R");
        if (eps_den) cfg.eps_denominator = *eps_den;
        if (!b_prime.empty()) {
            cfg.b_prime.clear();
            for (const auto& s : b_prime) cfg.b_prime.push_back(flag_rat(s, "--b-prime"));
        }
        if (!scenarios.empty()) cfg.scenarios = scenarios;
        if (n_max) cfg.n_max = *n_max;
        if (cfg.a <= 0 || cfg.b <= 0) throw ConfigError("lattice: a and b must be positive");

        if (*analyze) return cmd_analyze(cfg);
        if (*perturb) return cmd_perturb(cfg);
        if (*shift) return cmd_shift(cfg);
        if (*truncate) return cmd_truncate(cfg);
        if (*zak) return cmd_zak(cfg);
        if (*oracle) return cmd_oracle(cfg);
        if (*cex) return cmd_counterexamples(cfg);
        if (*ident) return cmd_identity(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "whframe: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "whframe: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
