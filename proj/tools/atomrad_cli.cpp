// Command-line front end: parse a sweep config, run it through the C API,
// and write one '#'-annotated TSV per requested quantity.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atomrad.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ConfigError {
    int line;
    std::string field;
    std::string message;
};

[[noreturn]] void config_fail(int line, const std::string& field, const std::string& message) {
    throw ConfigError{line, field, message};
}

// ---------------------------------------------------------------------------
// Config file: flat key = value lines, '#' comments, [..] arrays.

struct RawConfig {
    std::map<std::string, std::pair<std::vector<std::string>, int>> entries;  // key -> (values, line)

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    const std::vector<std::string>& values(const std::string& key) const {
        return entries.at(key).first;
    }

    int line(const std::string& key) const { return entries.at(key).second; }
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

RawConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_fail(0, path, "cannot open config file");
    RawConfig cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) config_fail(lineno, line, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) config_fail(lineno, line, "empty key");
        if (cfg.has(key)) config_fail(lineno, key, "duplicate key");
        std::vector<std::string> items;
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']') config_fail(lineno, key, "unterminated array");
            std::stringstream ss(val.substr(1, val.size() - 2));
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (!item.empty()) items.push_back(item);
            }
        } else {
            if (val.empty()) config_fail(lineno, key, "empty value");
            items.push_back(val);
        }
        cfg.entries[key] = {items, lineno};
    }
    return cfg;
}

double parse_double(const RawConfig& cfg, const std::string& key, const std::string& text) {
    if (text == "inf" || text == "infinity") return INFINITY;
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        config_fail(cfg.line(key), key, "not a number: '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Run plan assembled from config + command line.

enum class ScenarioKind { FreeSpace, StaticMirror, AcceleratedMirror };
enum class MethodChoice { Closed, Oracle, Both };

struct RunPlan {
    ScenarioKind kind;
    double omega0 = 1.0;
    double gamma0 = 1.0;
    double alpha[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::vector<double> z0;    // {NAN} for free space
    std::vector<double> beta;  // static sweep axis
    std::vector<double> a;     // accelerated sweep axis
    std::vector<std::string> quantities;
    MethodChoice method = MethodChoice::Closed;
    std::uint64_t seed = 0;
    bool natural_units = false;
    double relax_t_end = 5.0;
    int relax_points = 20;
    long relax_n_atoms = 10000;
    double initial_excited_fraction = 1.0;
    atomrad_oracle_controls controls{};
};

const std::vector<std::string> kKnownQuantities = {"boundary", "spectral", "rates", "relaxation",
                                                   "equivalence"};
const std::vector<std::string> kKnownKeys = {
    "config_version", "scenario",     "omega0",        "gamma0",
    "alpha",          "z0",           "beta",          "a",
    "quantities",     "method",       "seed",          "relax_t_end",
    "relax_points",   "relax_n_atoms", "initial_excited_fraction",
    "oracle_eps0",    "oracle_levels", "oracle_window", "oracle_image_tol",
    "oracle_max_panels", "oracle_fail_above"};

std::vector<double> double_list(const RawConfig& cfg, const std::string& key) {
    std::vector<double> out;
    for (const auto& v : cfg.values(key)) out.push_back(parse_double(cfg, key, v));
    return out;
}

RunPlan build_plan(const RawConfig& cfg, const std::string& method_flag,
                   std::optional<std::uint64_t> seed_flag, const std::string& units_flag) {
    for (const auto& [key, _] : cfg.entries) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            config_fail(cfg.line(key), key, "unknown key");
    }
    if (!cfg.has("config_version")) config_fail(0, "config_version", "missing");
    if (cfg.values("config_version")[0] != "1")
        config_fail(cfg.line("config_version"), "config_version", "unsupported version");
    if (!cfg.has("scenario")) config_fail(0, "scenario", "missing");

    RunPlan plan;
    atomrad_oracle_controls_default(&plan.controls);

    const std::string sk = cfg.values("scenario")[0];
    if (sk == "free_space")
        plan.kind = ScenarioKind::FreeSpace;
    else if (sk == "static_mirror")
        plan.kind = ScenarioKind::StaticMirror;
    else if (sk == "accelerated_mirror")
        plan.kind = ScenarioKind::AcceleratedMirror;
    else
        config_fail(cfg.line("scenario"), "scenario",
                    "expected free_space | static_mirror | accelerated_mirror");

    if (cfg.has("omega0")) plan.omega0 = parse_double(cfg, "omega0", cfg.values("omega0")[0]);
    if (cfg.has("gamma0")) plan.gamma0 = parse_double(cfg, "gamma0", cfg.values("gamma0")[0]);
    if (cfg.has("alpha")) {
        auto al = double_list(cfg, "alpha");
        if (al.size() != 3) config_fail(cfg.line("alpha"), "alpha", "need exactly 3 entries");
        std::copy(al.begin(), al.end(), plan.alpha);
    }
    if (!(plan.omega0 > 0.0)) config_fail(cfg.line("omega0"), "omega0", "must be > 0");
    if (!(plan.gamma0 >= 0.0)) config_fail(cfg.line("gamma0"), "gamma0", "must be >= 0");

    switch (plan.kind) {
        case ScenarioKind::FreeSpace:
            if (cfg.has("z0")) config_fail(cfg.line("z0"), "z0", "not valid for free_space");
            if (cfg.has("a")) config_fail(cfg.line("a"), "a", "not valid for free_space");
            plan.z0 = {NAN};
            plan.beta = {INFINITY};
            break;
        case ScenarioKind::StaticMirror:
            if (!cfg.has("z0")) config_fail(0, "z0", "missing for static_mirror");
            if (cfg.has("a")) config_fail(cfg.line("a"), "a", "not valid for static_mirror");
            plan.z0 = double_list(cfg, "z0");
            plan.beta = cfg.has("beta") ? double_list(cfg, "beta") : std::vector<double>{INFINITY};
            break;
        case ScenarioKind::AcceleratedMirror:
            if (!cfg.has("z0")) config_fail(0, "z0", "missing for accelerated_mirror");
            if (!cfg.has("a")) config_fail(0, "a", "missing for accelerated_mirror");
            if (cfg.has("beta")) config_fail(cfg.line("beta"), "beta", "not valid for accelerated_mirror");
            plan.z0 = double_list(cfg, "z0");
            plan.a = double_list(cfg, "a");
            for (double a : plan.a)
                if (!(a > 0.0)) config_fail(cfg.line("a"), "a", "entries must be > 0 (use static_mirror for a = 0)");
            break;
    }
    if (plan.z0.empty() || (plan.kind == ScenarioKind::StaticMirror && plan.beta.empty()) ||
        (plan.kind == ScenarioKind::AcceleratedMirror && plan.a.empty()))
        config_fail(0, "sweep", "empty sweep list");

    if (!cfg.has("quantities")) config_fail(0, "quantities", "missing");
    plan.quantities = cfg.values("quantities");
    for (const auto& q : plan.quantities) {
        if (std::find(kKnownQuantities.begin(), kKnownQuantities.end(), q) == kKnownQuantities.end())
            config_fail(cfg.line("quantities"), "quantities", "unknown quantity '" + q + "'");
        if (q == "equivalence" && plan.kind != ScenarioKind::AcceleratedMirror)
            config_fail(cfg.line("quantities"), "quantities",
                        "equivalence requires scenario = accelerated_mirror");
        if (q == "boundary" && plan.kind == ScenarioKind::FreeSpace)
            config_fail(cfg.line("quantities"), "quantities",
                        "boundary requires a mirror scenario");
    }
    if (plan.kind == ScenarioKind::AcceleratedMirror &&
        (plan.alpha[1] != 0.0 || plan.alpha[2] != 0.0)) {
        bool needs_rates = false;
        for (const auto& q : plan.quantities)
            if (q == "spectral" || q == "rates" || q == "relaxation") needs_rates = true;
        if (needs_rates)
            config_fail(cfg.has("alpha") ? cfg.line("alpha") : 0, "alpha",
                        "accelerated rates support x polarization only (alpha = [1, 0, 0])");
    }

    std::string method = method_flag;
    if (method.empty() && cfg.has("method")) method = cfg.values("method")[0];
    if (method.empty()) method = "closed";
    if (method == "closed")
        plan.method = MethodChoice::Closed;
    else if (method == "oracle")
        plan.method = MethodChoice::Oracle;
    else if (method == "both")
        plan.method = MethodChoice::Both;
    else
        config_fail(cfg.has("method") ? cfg.line("method") : 0, "method",
                    "expected closed | oracle | both");

    if (seed_flag) {
        plan.seed = *seed_flag;
    } else if (cfg.has("seed")) {
        try {
            plan.seed = std::stoull(cfg.values("seed")[0]);
        } catch (const std::exception&) {
            config_fail(cfg.line("seed"), "seed", "not an unsigned integer");
        }
    }
    plan.natural_units = units_flag == "natural";

    if (cfg.has("relax_t_end"))
        plan.relax_t_end = parse_double(cfg, "relax_t_end", cfg.values("relax_t_end")[0]);
    if (cfg.has("relax_points"))
        plan.relax_points = static_cast<int>(parse_double(cfg, "relax_points", cfg.values("relax_points")[0]));
    if (cfg.has("relax_n_atoms"))
        plan.relax_n_atoms = static_cast<long>(parse_double(cfg, "relax_n_atoms", cfg.values("relax_n_atoms")[0]));
    if (cfg.has("initial_excited_fraction"))
        plan.initial_excited_fraction =
            parse_double(cfg, "initial_excited_fraction", cfg.values("initial_excited_fraction")[0]);
    if (!(plan.relax_t_end > 0.0)) config_fail(cfg.line("relax_t_end"), "relax_t_end", "must be > 0");
    if (plan.relax_points < 2) config_fail(cfg.line("relax_points"), "relax_points", "need at least 2");
    if (plan.relax_n_atoms < 1) config_fail(cfg.line("relax_n_atoms"), "relax_n_atoms", "need at least 1");
    if (!(plan.initial_excited_fraction >= 0.0 && plan.initial_excited_fraction <= 1.0))
        config_fail(cfg.line("initial_excited_fraction"), "initial_excited_fraction", "must lie in [0,1]");

    if (cfg.has("oracle_eps0"))
        plan.controls.eps0 = parse_double(cfg, "oracle_eps0", cfg.values("oracle_eps0")[0]);
    if (cfg.has("oracle_levels"))
        plan.controls.levels = static_cast<int>(parse_double(cfg, "oracle_levels", cfg.values("oracle_levels")[0]));
    if (cfg.has("oracle_window"))
        plan.controls.window = parse_double(cfg, "oracle_window", cfg.values("oracle_window")[0]);
    if (cfg.has("oracle_image_tol"))
        plan.controls.image_tol = parse_double(cfg, "oracle_image_tol", cfg.values("oracle_image_tol")[0]);
    if (cfg.has("oracle_max_panels"))
        plan.controls.max_panels =
            static_cast<long>(parse_double(cfg, "oracle_max_panels", cfg.values("oracle_max_panels")[0]));
    if (cfg.has("oracle_fail_above"))
        plan.controls.fail_above = parse_double(cfg, "oracle_fail_above", cfg.values("oracle_fail_above")[0]);
    return plan;
}

// ---------------------------------------------------------------------------
// Execution helpers.

struct ScenarioHandle {
    atomrad_scenario* ptr = nullptr;
    ~ScenarioHandle() { atomrad_scenario_destroy(ptr); }
};

struct AtomHandle {
    atomrad_atom* ptr = nullptr;
    ~AtomHandle() { atomrad_atom_destroy(ptr); }
};

struct NumericError {
    std::string where;
    std::string message;
};

void check(atomrad_status st, const std::string& where) {
    if (st == ATOMRAD_OK) return;
    throw NumericError{where, atomrad_last_error()};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SweepPoint {
    double z0, beta, a;  // NAN where not applicable

    std::string label() const {
        std::ostringstream os;
        os << "z0=" << z0;
        if (!std::isnan(beta)) os << " beta=" << beta;
        if (!std::isnan(a)) os << " a=" << a;
        return os.str();
    }
};

std::vector<SweepPoint> sweep_points(const RunPlan& plan) {
    std::vector<SweepPoint> pts;
    switch (plan.kind) {
        case ScenarioKind::FreeSpace:
            pts.push_back({NAN, INFINITY, NAN});
            break;
        case ScenarioKind::StaticMirror:
            for (double z0 : plan.z0)
                for (double beta : plan.beta) pts.push_back({z0, beta, NAN});
            break;
        case ScenarioKind::AcceleratedMirror:
            for (double z0 : plan.z0)
                for (double a : plan.a) pts.push_back({z0, NAN, a});
            break;
    }
    return pts;
}

void make_scenario(const RunPlan& plan, const SweepPoint& p, ScenarioHandle& out) {
    switch (plan.kind) {
        case ScenarioKind::FreeSpace:
            check(atomrad_scenario_free_space(&out.ptr), "scenario");
            break;
        case ScenarioKind::StaticMirror:
            check(atomrad_scenario_static_mirror(p.z0, p.beta, &out.ptr), "scenario " + p.label());
            break;
        case ScenarioKind::AcceleratedMirror:
            check(atomrad_scenario_accelerated_mirror(p.a, p.z0, &out.ptr), "scenario " + p.label());
            break;
    }
}

struct TableWriter {
    std::ofstream out;

    TableWriter(const std::filesystem::path& path, const RunPlan& plan,
                const std::vector<std::string>& columns) {
        out.open(path, std::ios::binary);  // keep line endings byte-stable
        out << "# atomrad " << atomrad_version() << "\n";
        out << "# units " << (plan.natural_units ? "natural" : "omega0") << "\n";
        out << "# seed " << plan.seed << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "\t" : "") << columns[i];
        out << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
        out << "\n";
    }
};

// Per-point computed state shared between tables.
struct PointResults {
    SweepPoint p;
    double fx = NAN, fy = NAN, fz = NAN;
    bool has_closed = false, has_oracle = false;
    atomrad_spectral_rates closed{}, oracle{};
};

int run_command(const std::string& config_path, const std::string& method_flag,
                std::optional<std::uint64_t> seed_flag, const std::string& units_flag,
                const std::string& out_dir) {
    RawConfig cfg = parse_config(config_path);
    RunPlan plan = build_plan(cfg, method_flag, seed_flag, units_flag);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    AtomHandle atom;
    check(atomrad_atom_create(plan.omega0, plan.gamma0, plan.alpha, &atom.ptr), "atom");

    auto wants = [&](const std::string& q) {
        return std::find(plan.quantities.begin(), plan.quantities.end(), q) !=
               plan.quantities.end();
    };
    const bool needs_rates = wants("spectral") || wants("rates") || wants("relaxation");

    // unit scales applied on output
    const double rate_scale =
        plan.natural_units || plan.gamma0 == 0.0 ? 1.0 : 1.0 / plan.gamma0;
    const double energy_scale = plan.natural_units ? 1.0 : 1.0 / plan.omega0;
    const double power_scale = rate_scale * energy_scale;
    const double time_scale = plan.natural_units || plan.gamma0 == 0.0 ? 1.0 : plan.gamma0;

    std::vector<PointResults> results;
    for (const SweepPoint& p : sweep_points(plan)) {
        PointResults r;
        r.p = p;
        ScenarioHandle sc;
        make_scenario(plan, p, sc);

        if (wants("boundary") || wants("equivalence")) {
            if (plan.kind == ScenarioKind::StaticMirror) {
                check(atomrad_f_static(plan.omega0, p.z0, &r.fx, &r.fz), "f_static " + p.label());
                r.fy = r.fx;
            } else if (plan.kind == ScenarioKind::AcceleratedMirror) {
                check(atomrad_f_accelerated(plan.omega0, p.z0, p.a, &r.fx),
                      "f_accelerated " + p.label());
            }
        }
        if (needs_rates) {
            if (plan.method != MethodChoice::Oracle) {
                check(atomrad_spectral_rates_closed(sc.ptr, atom.ptr, &r.closed),
                      "closed rates " + p.label());
                r.has_closed = true;
            }
            if (plan.method != MethodChoice::Closed) {
                check(atomrad_spectral_rates_oracle(sc.ptr, atom.ptr, &plan.controls, &r.oracle),
                      "oracle rates " + p.label());
                r.has_oracle = true;
            }
        }
        results.push_back(r);
    }

    auto param_cells = [](const SweepPoint& p) {
        return std::vector<std::string>{fmt(p.z0), fmt(p.beta), fmt(p.a)};
    };
    auto append = [](std::vector<std::string> base, std::vector<std::string> extra) {
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    };

    if (wants("boundary")) {
        TableWriter t(dir / "boundary.tsv", plan, {"z0", "beta", "a", "f_x", "f_y", "f_z"});
        for (const auto& r : results)
            t.row(append(param_cells(r.p), {fmt(r.fx), fmt(r.fy), fmt(r.fz)}));
    }

    auto spectral_row = [&](const PointResults& r, const char* tag,
                            const atomrad_spectral_rates& sr) {
        return append(param_cells(r.p),
                      {tag, fmt(sr.g_plus * rate_scale), fmt(sr.g_minus * rate_scale),
                       fmt(sr.achieved_error * rate_scale)});
    };
    if (wants("spectral")) {
        TableWriter t(dir / "spectral.tsv", plan,
                      {"z0", "beta", "a", "method", "g_plus", "g_minus", "achieved_error"});
        for (const auto& r : results) {
            if (r.has_closed) t.row(spectral_row(r, "closed", r.closed));
            if (r.has_oracle) t.row(spectral_row(r, "oracle", r.oracle));
        }
    }

    if (wants("rates")) {
        TableWriter t(dir / "rates.tsv", plan,
                      {"z0", "beta", "a", "method", "a_down", "a_up", "vf_excited", "vf_ground",
                       "rr_any_state", "total_excited", "total_ground", "achieved_error"});
        for (const auto& r : results) {
            auto emit = [&](const char* tag, const atomrad_spectral_rates& sr) {
                atomrad_energy_rates er{};
                check(atomrad_energy_rates_compute(&sr, plan.omega0, &er),
                      "energy rates " + r.p.label());
                t.row(append(param_cells(r.p),
                             {tag, fmt(sr.a_down * rate_scale), fmt(sr.a_up * rate_scale),
                              fmt(er.vf_excited * power_scale), fmt(er.vf_ground * power_scale),
                              fmt(er.rr_any_state * power_scale),
                              fmt(er.total_excited * power_scale),
                              fmt(er.total_ground * power_scale),
                              fmt(sr.achieved_error * rate_scale)}));
            };
            if (r.has_closed) emit("closed", r.closed);
            if (r.has_oracle) emit("oracle", r.oracle);
        }
    }

    if (wants("relaxation")) {
        TableWriter t(dir / "relaxation.tsv", plan,
                      {"z0", "beta", "a", "method", "t", "energy_analytic", "energy_mc",
                       "std_error", "n_atoms"});
        std::vector<double> times(static_cast<std::size_t>(plan.relax_points));
        for (int i = 0; i < plan.relax_points; ++i)
            times[static_cast<std::size_t>(i)] =
                plan.relax_t_end * i / (plan.relax_points - 1);
        for (const auto& r : results) {
            auto emit = [&](const char* tag, atomrad_spectral_rates sr) {
                // oracle rates can carry a numerical-zero negative; the jump
                // process needs true rates
                sr.a_up = std::max(sr.a_up, 0.0);
                sr.a_down = std::max(sr.a_down, 0.0);
                sr.g_plus = std::max(sr.g_plus, 0.0);
                sr.g_minus = std::max(sr.g_minus, 0.0);
                std::vector<double> analytic(times.size()), mc(times.size()), se(times.size());
                check(atomrad_relaxation_analytic(&sr, plan.omega0, plan.initial_excited_fraction,
                                                  times.data(), times.size(), analytic.data(),
                                                  nullptr, nullptr),
                      "relaxation " + r.p.label());
                check(atomrad_relaxation_monte_carlo(
                          &sr, plan.omega0, plan.initial_excited_fraction, times.data(),
                          times.size(), plan.relax_n_atoms, plan.seed, mc.data(), se.data(),
                          nullptr),
                      "monte carlo " + r.p.label());
                for (std::size_t i = 0; i < times.size(); ++i) {
                    t.row(append(param_cells(r.p),
                                 {tag, fmt(times[i] * time_scale), fmt(analytic[i] * energy_scale),
                                  fmt(mc[i] * energy_scale), fmt(se[i] * energy_scale),
                                  std::to_string(plan.relax_n_atoms)}));
                }
            };
            if (r.has_closed) emit("closed", r.closed);
            if (r.has_oracle) emit("oracle", r.oracle);
        }
    }

    if (wants("equivalence")) {
        TableWriter t(dir / "equivalence.tsv", plan,
                      {"z0", "a", "accelerated_factor", "thermal_factor", "difference"});
        for (const auto& r : results) {
            atomrad_equivalence_report rep{};
            check(atomrad_equivalence_check(plan.omega0, r.p.z0, r.p.a, &rep),
                  "equivalence " + r.p.label());
            t.row({fmt(r.p.z0), fmt(r.p.a), fmt(rep.accelerated_factor), fmt(rep.thermal_factor),
                   fmt(rep.difference)});
        }
    }

    int flagged = 0;
    if (plan.method == MethodChoice::Both && needs_rates) {
        TableWriter t(dir / "compare.tsv", plan,
                      {"z0", "beta", "a", "quantity", "closed", "oracle", "abs_diff",
                       "achieved_error", "flagged"});
        for (const auto& r : results) {
            auto emit = [&](const char* name, double c, double o, double err) {
                double diff = std::fabs(c - o);
                bool flag = diff > std::max(1e-6 * std::fabs(c), err);
                flagged += flag;
                t.row(append(param_cells(r.p), {name, fmt(c * rate_scale), fmt(o * rate_scale),
                                                fmt(diff * rate_scale), fmt(err * rate_scale),
                                                flag ? "1" : "0"}));
            };
            emit("g_plus", r.closed.g_plus, r.oracle.g_plus, r.oracle.achieved_error);
            emit("g_minus", r.closed.g_minus, r.oracle.g_minus, r.oracle.achieved_error);
        }
    }

    {
        std::ofstream meta(dir / "metadata.txt", std::ios::binary);
        meta << "atomrad_version = " << atomrad_version() << "\n";
        meta << "config_version = 1\n";
        meta << "config = " << config_path << "\n";
        meta << "seed = " << plan.seed << "\n";
        meta << "units = " << (plan.natural_units ? "natural" : "omega0") << "\n";
        const char* mname = plan.method == MethodChoice::Closed   ? "closed"
                            : plan.method == MethodChoice::Oracle ? "oracle"
                                                                  : "both";
        meta << "method = " << mname << "\n";
        meta << "oracle_eps0 = " << fmt(plan.controls.eps0) << "\n";
        meta << "oracle_levels = " << plan.controls.levels << "\n";
        meta << "oracle_window = " << fmt(plan.controls.window) << "\n";
        meta << "oracle_image_tol = " << fmt(plan.controls.image_tol) << "\n";
        meta << "oracle_max_panels = " << plan.controls.max_panels << "\n";
        meta << "oracle_fail_above = " << fmt(plan.controls.fail_above) << "\n";
        meta << "timestamp = " << std::time(nullptr) << "\n";
    }

    if (flagged > 0) {
        std::fprintf(stderr, "compare: %d row(s) exceed the method-agreement tolerance\n", flagged);
        return kExitNumeric;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// --verify: invariant suite over the public API.

int verify_command() {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };

    const double iso[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    const double xonly[3] = {1.0, 0.0, 0.0};

    {
        bool ok = true;
        double fx, fz;
        ok &= atomrad_f_static(1.0, 0.5e-4, &fx, &fz) == ATOMRAD_OK;
        ok &= std::fabs(fx - 1.0) < 1e-6 && std::fabs(fz + 1.0) < 1e-6;
        ok &= atomrad_f_static(1.0, 500.0, &fx, &fz) == ATOMRAD_OK;
        ok &= std::fabs(fx) < 1e-2 && std::fabs(fz) < 1e-2;
        report("boundary function limits", ok);
    }
    {
        bool ok = true;
        AtomHandle atom;
        ok &= atomrad_atom_create(1.0, 1.0, iso, &atom.ptr) == ATOMRAD_OK;
        for (double beta : {0.7, 1.6, 3.0}) {
            ScenarioHandle sc;
            ok &= atomrad_scenario_static_mirror(0.8, beta, &sc.ptr) == ATOMRAD_OK;
            atomrad_spectral_rates sr{};
            ok &= atomrad_spectral_rates_closed(sc.ptr, atom.ptr, &sr) == ATOMRAD_OK;
            ok &= std::fabs(sr.a_up / sr.a_down - std::exp(-beta)) < 1e-12;
        }
        report("detailed balance (thermal)", ok);
    }
    {
        bool ok = true;
        AtomHandle atom;
        ok &= atomrad_atom_create(1.0, 1.0, xonly, &atom.ptr) == ATOMRAD_OK;
        for (double a : {0.6, 1.5}) {
            ScenarioHandle sc;
            ok &= atomrad_scenario_accelerated_mirror(a, 1.1, &sc.ptr) == ATOMRAD_OK;
            atomrad_spectral_rates sr{};
            ok &= atomrad_spectral_rates_closed(sc.ptr, atom.ptr, &sr) == ATOMRAD_OK;
            ok &= std::fabs(sr.a_up / sr.a_down - std::exp(-2.0 * M_PI / a)) < 1e-12;
        }
        report("detailed balance (accelerated)", ok);
    }
    {
        bool ok = true;
        AtomHandle atom;
        ok &= atomrad_atom_create(1.0, 1.0, iso, &atom.ptr) == ATOMRAD_OK;
        ScenarioHandle sc;
        ok &= atomrad_scenario_static_mirror(0.7, 2.0, &sc.ptr) == ATOMRAD_OK;
        atomrad_spectral_rates closed{}, oracle{};
        ok &= atomrad_spectral_rates_closed(sc.ptr, atom.ptr, &closed) == ATOMRAD_OK;
        ok &= atomrad_spectral_rates_oracle(sc.ptr, atom.ptr, nullptr, &oracle) == ATOMRAD_OK;
        ok &= std::fabs(oracle.g_plus - closed.g_plus) <=
              std::max(1e-6 * closed.g_plus, oracle.achieved_error);
        ok &= std::fabs(oracle.g_minus - closed.g_minus) <=
              std::max(1e-6 * closed.g_minus, oracle.achieved_error);
        report("closed form vs oracle", ok);
    }
    {
        bool ok = true;
        double r;
        ok &= atomrad_polarization_contact_ratio(iso, &r) == ATOMRAD_OK;
        ok &= std::fabs(r - 2.0 / 3.0) < 1e-12;
        const double zpol[3] = {0.0, 0.0, 1.0};
        ok &= atomrad_polarization_contact_ratio(zpol, &r) == ATOMRAD_OK && std::fabs(r - 2.0) < 1e-12;
        const double xy[3] = {0.5, 0.5, 0.0};
        ok &= atomrad_polarization_contact_ratio(xy, &r) == ATOMRAD_OK && r == 0.0;
        report("contact-limit polarization ratios", ok);
    }
    {
        bool ok = true;
        atomrad_equivalence_report rep{};
        ok &= atomrad_equivalence_check(1.0, 1.0, 1.0, &rep) == ATOMRAD_OK;
        ok &= std::fabs(rep.difference) > 1e-3;
        ok &= atomrad_equivalence_check(1.0, INFINITY, 2.0, &rep) == ATOMRAD_OK;
        ok &= rep.difference == 4.0;
        report("acceleration/thermal non-equivalence", ok);
    }
    {
        bool ok = true;
        AtomHandle atom;
        ok &= atomrad_atom_create(1.0, 1.0, iso, &atom.ptr) == ATOMRAD_OK;
        ScenarioHandle sc;
        ok &= atomrad_scenario_static_mirror(1.0, 1.0, &sc.ptr) == ATOMRAD_OK;
        atomrad_spectral_rates sr{};
        ok &= atomrad_spectral_rates_closed(sc.ptr, atom.ptr, &sr) == ATOMRAD_OK;
        atomrad_energy_rates er{};
        ok &= atomrad_energy_rates_compute(&sr, 1.0, &er) == ATOMRAD_OK;
        ok &= er.total_excited == er.vf_excited + er.rr_any_state;
        ok &= er.total_ground == er.vf_ground + er.rr_any_state;

        std::vector<double> times = {0.0, 1.0, 2.0, 4.0, 8.0};
        std::vector<double> analytic(times.size()), mc(times.size()), se(times.size());
        double eq = 0.0;
        ok &= atomrad_relaxation_analytic(&sr, 1.0, 1.0, times.data(), times.size(),
                                          analytic.data(), &eq, nullptr) == ATOMRAD_OK;
        ok &= std::fabs(eq + 0.5 * std::tanh(0.5)) < 1e-12;
        ok &= atomrad_relaxation_monte_carlo(&sr, 1.0, 1.0, times.data(), times.size(), 20000, 11,
                                             mc.data(), se.data(), nullptr) == ATOMRAD_OK;
        for (std::size_t i = 0; i < times.size(); ++i)
            ok &= std::fabs(mc[i] - analytic[i]) <= 4.0 * std::max(se[i], 1e-12);
        report("relaxation dynamics", ok);
    }
    return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radiative rates and relaxation dynamics of a two-level atom"};
    app.require_subcommand(0, 1);

    std::string config_path, method_flag, units_flag = "omega0", out_dir = ".";
    std::optional<std::uint64_t> seed_flag;
    bool verify = false;

    auto* run = app.add_subcommand("run", "execute a sweep config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--method", method_flag, "closed | oracle | both")
        ->check(CLI::IsMember({"closed", "oracle", "both"}));
    run->add_option("--out", out_dir, "output directory");
    std::uint64_t seed_value = 0;
    auto* seed_opt = run->add_option("--seed", seed_value, "Monte Carlo seed");
    run->add_option("--units", units_flag, "omega0 | natural")
        ->check(CLI::IsMember({"omega0", "natural"}));
    app.add_flag("--verify", verify, "run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    if (verify) return verify_command();
    if (!run->parsed()) {
        std::fprintf(stderr, "%s\n", app.help().c_str());
        return kExitConfig;
    }
    if (seed_opt->count() > 0) seed_flag = seed_value;

    try {
        return run_command(config_path, method_flag, seed_flag, units_flag, out_dir);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error (line %d, %s): %s\n", e.line, e.field.c_str(),
                     e.message.c_str());
        return kExitConfig;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure at %s: %s\n", e.where.c_str(), e.message.c_str());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}
