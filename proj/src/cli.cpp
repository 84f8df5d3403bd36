#include "cscrack/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <locale>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "cscrack/dispersion.hpp"
#include "cscrack/errors.hpp"
#include "cscrack/fields.hpp"
#include "cscrack/fracture.hpp"
#include "cscrack/kernel.hpp"
#include "cscrack/material.hpp"
#include "cscrack/verify.hpp"
#include "cscrack/wh_solution.hpp"

namespace cscrack {

namespace {

const std::set<std::string> kCommands = {"dispersion", "regime", "kernel", "factorize",
                                         "fields",     "sif",    "err",    "verify"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError("invalid number for " + key + ": '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
        throw ConfigError("invalid integer for " + key + ": '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "1" || t == "true" || t == "yes") return true;
    if (t == "0" || t == "false" || t == "no") return false;
    throw ConfigError("invalid flag value for " + key + ": '" + text + "'");
}

std::string num(double v, int digits = 12) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(digits) << v;
    return os.str();
}

class Csv {
public:
    Csv(const RunConfig& cfg, const std::string& extra, const std::string& header) {
        os_ << "# command=" << cfg.command << " nu=" << num(cfg.nu) << ' ' << extra << " L_over_ell=" << num(cfg.L_over_ell)
            << " T0=" << num(cfg.T0) << " tol=" << num(cfg.tol) << '\n'
            << header << '\n';
    }
    Csv& operator<<(const std::string& cell) {
        sep();
        os_ << cell;
        return *this;
    }
    Csv& operator<<(double v) { return *this << num(v); }
    void end() {
        os_ << '\n';
        fresh_ = true;
    }
    std::string str() const { return os_.str(); }

private:
    void sep() {
        if (!fresh_) os_ << ',';
        fresh_ = false;
    }
    std::ostringstream os_;
    bool fresh_ = true;
};

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(n);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    // Report the first failure in input order so the outcome is deterministic.
    for (auto& e : failures)
        if (e) std::rethrow_exception(e);
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
    return v;
}

std::string h0_tag(const RunConfig& cfg) {
    const auto h0s = h0_values(cfg);
    return "h0=" + (h0s.size() == 1 ? num(h0s.front()) : std::string("sweep"));
}

std::string m_tag(const RunConfig& cfg) {
    const auto ms = m_values(cfg);
    return "m=" + (ms.size() == 1 ? num(ms.front()) : std::string("sweep"));
}

// File-name suffix that identifies the sweep point when more than one is run.
std::string suffix(const RunConfig& cfg, double h0, double m, bool with_m) {
    std::string s;
    if (h0_values(cfg).size() > 1) s += "_h0" + num(h0, 6);
    if (with_m && m_values(cfg).size() > 1) s += "_m" + num(m, 6);
    return s;
}

FactorSpec factor_spec(double tol) {
    FactorSpec f;
    f.abs_tol = std::min(f.abs_tol, tol);
    f.rel_tol = std::min(f.rel_tol, tol);
    return f;
}

WHSolution solution_for(const RunConfig& cfg, double h0, double m) {
    if (m == 0.0) return make_quasi_static_solution(cfg.nu, cfg.T0, cfg.L_over_ell, factor_spec(cfg.tol));
    return make_wh_solution(m, cfg.nu, h0, cfg.T0, cfg.L_over_ell, factor_spec(cfg.tol));
}

std::vector<OutputFile> run_dispersion(const RunConfig& cfg) {
    const auto h0s = h0_values(cfg);
    const auto xi = logspace(1e-3, 1e2, 101);
    std::vector<std::vector<double>> curves(h0s.size());
    parallel_for(h0s.size(), cfg.threads, [&](std::size_t i) { curves[i] = rayleigh_curve(xi, cfg.nu, h0s[i]); });
    Csv shear(cfg, h0_tag(cfg), "h0,xi_ell,omega_norm,phase_velocity,group_velocity");
    Csv rayleigh(cfg, h0_tag(cfg), "h0,xi_ell,phase_velocity,cap");
    for (std::size_t i = 0; i < h0s.size(); ++i)
        for (std::size_t k = 0; k < xi.size(); ++k) {
            const auto p = shear_point(xi[k], h0s[i]);
            shear << h0s[i] << xi[k] << p.omega_norm << p.phase_velocity << p.group_velocity;
            shear.end();
            rayleigh << h0s[i] << xi[k] << curves[i][k] << rayleigh_speed_cap(xi[k], cfg.nu, h0s[i]);
            rayleigh.end();
        }
    return {{"dispersion_shear.csv", shear.str()}, {"dispersion_rayleigh.csv", rayleigh.str()}};
}

std::vector<OutputFile> run_regime(const RunConfig& cfg) {
    Csv csv(cfg, h0_tag(cfg), "h0,m_R");
    for (double h0 : h0_values(cfg)) {
        csv << h0 << max_sub_rayleigh_speed(cfg.nu, h0);
        csv.end();
    }
    return {{"regime.csv", csv.str()}};
}

std::vector<OutputFile> run_kernel(const RunConfig& cfg) {
    Csv real(cfg, h0_tag(cfg) + " " + m_tag(cfg), "h0,m,s,N_re,N_im");
    Csv cut(cfg, h0_tag(cfg) + " " + m_tag(cfg), "h0,m,segment,y,N_re,N_im,angle");
    for (double h0 : h0_values(cfg))
        for (double m : m_values(cfg)) {
            for (int k = 0; k <= 200; ++k) {
                const double s = 0.25 * k;
                const cplx n = m == 0.0 ? static_kernel_N(s, cfg.nu) : kernel_N(s, make_kernel_context(m, cfg.nu, h0));
                real << h0 << m << s << n.real() << n.imag();
                real.end();
            }
            auto emit = [&](const std::string& seg, double a, double b, const std::function<CutValue(double)>& f) {
                for (int k = 1; k < 100; ++k) {
                    const double y = a + (b - a) * k / 100.0;
                    const CutValue v = f(y);
                    cut << h0 << m << seg << y << v.re << v.im << std::atan2(v.im, v.re);
                    cut.end();
                }
            };
            if (m == 0.0) {
                emit("lower", 0.0, 1.0, [&](double y) { return static_n_on_cut(y, cfg.nu); });
                continue;
            }
            const auto ctx = make_kernel_context(m, cfg.nu, h0);
            emit("lower", 0.0, ctx.branch.b0, [&](double y) { return n_on_cut(y, Segment::Lower, ctx); });
            if (ctx.branch.a == 1)
                emit("upper", ctx.branch.b0, ctx.branch.b1.real(),
                     [&](double y) { return n_on_cut(y, Segment::Upper, ctx); });
        }
    return {{"kernel_real.csv", real.str()}, {"kernel_cut.csv", cut.str()}};
}

std::vector<OutputFile> run_factorize(const RunConfig& cfg, int& status) {
    struct Row {
        double h0, m;
        std::string case_name;
        std::size_t nodes;
        std::vector<std::pair<std::string, std::pair<double, double>>> checks;
    };
    std::vector<std::pair<double, double>> points;
    for (double h0 : h0_values(cfg))
        for (double m : m_values(cfg)) points.emplace_back(h0, m);
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        const auto [h0, m] = points[i];
        Row& r = rows[i];
        r.h0 = h0;
        r.m = m;
        const bool stat = m == 0.0;
        const KernelContext ctx = stat ? KernelContext{} : make_kernel_context(m, cfg.nu, h0);
        const auto tab = stat ? factorize_static(cfg.nu, factor_spec(cfg.tol)) : factorize(ctx, factor_spec(cfg.tol));
        static const char* names[] = {"I", "II", "III"};
        r.case_name = stat ? "static" : names[static_cast<int>(ctx.branch.case_tag)];
        r.nodes = tab.size();
        double prod = 0.0, sym = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double s = -20.0 + 40.0 * (k + 0.5) / 20.0;
            const cplx n = tab.kernel(s);
            prod = std::max(prod, std::abs(n_plus(s, tab) * n_minus(s, tab) - n) / std::abs(n));
            const cplx z(0.3 * s, 0.5);
            sym = std::max(sym, std::abs(n_plus(-z, tab) - n_minus(z, tab)) / std::abs(n_minus(z, tab)));
        }
        const double n0 = stat ? 1.0 / (3.0 - 2.0 * cfg.nu) : kernel_N0(ctx);
        const double lim = std::abs(std::real(n_plus(0.0, tab) * n_plus(0.0, tab)) - n0);
        r.checks = {{"product_identity", {prod, 1e-6}}, {"minus_symmetry", {sym, 1e-12}}, {"nplus0_squared", {lim, 1e-6}}};
        if (!stat) r.checks.push_back({"zeros_off_cuts", {double(std::abs(verify_no_zeros(ctx))), 0.0}});
    });
    Csv csv(cfg, h0_tag(cfg) + " " + m_tag(cfg), "h0,m,case,nodes,check,value,tolerance,pass");
    for (const auto& r : rows)
        for (const auto& [name, vt] : r.checks) {
            const bool pass = vt.first <= vt.second;
            if (!pass) status = 1;
            csv << r.h0 << r.m << r.case_name << double(r.nodes) << name << vt.first << vt.second << (pass ? "1" : "0");
            csv.end();
        }
    return {{"factorize_report.csv", csv.str()}};
}

std::vector<OutputFile> run_fields(const RunConfig& cfg) {
    const auto sig = logspace(1e-2, 30.0, 41);
    auto ux = logspace(1e-2, 20.0, 41);
    std::reverse(ux.begin(), ux.end());
    for (double& x : ux) x = -x;
    const auto mxz = logspace(1e-3, 30.0, 41);
    FieldOptions opts;
    opts.spec.abs_tol = cfg.tol;
    opts.spec.rel_tol = cfg.tol;

    std::vector<OutputFile> out;
    for (double h0 : h0_values(cfg))
        for (double m : m_values(cfg)) {
            const auto sol = solution_for(cfg, h0, m);
            Csv csv(cfg, "h0=" + num(h0) + " m=" + num(m), "quantity,X_over_ell,value_normalized");
            auto put = [&](Quantity q, const std::vector<double>& grid) {
                for (const auto& p : curve(q, grid, sol, opts, cfg.threads)) {
                    if (p.error)
                        std::cerr << "warning: " << quantity_name(q) << " at X=" << num(p.X_over_ell) << ": " << *p.error
                                  << '\n';
                    csv << quantity_name(q) << p.X_over_ell << p.value;
                    csv.end();
                }
            };
            put(Quantity::SigmaYX, sig);
            put(Quantity::UX, ux);
            put(Quantity::MXZ, mxz);
            out.push_back({"fields" + suffix(cfg, h0, m, true) + ".csv", csv.str()});
        }
    return out;
}

std::vector<OutputFile> run_fracture(const RunConfig& cfg) {
    std::vector<OutputFile> out;
    const auto ms = m_values(cfg);
    for (double h0 : h0_values(cfg)) {
        std::vector<FractureReport> rows(ms.size());
        parallel_for(ms.size(), cfg.threads, [&](std::size_t i) { rows[i] = fracture_report(solution_for(cfg, h0, ms[i])); });
        Csv csv(cfg, "h0=" + num(h0) + " " + m_tag(cfg), "m,K2_ratio_classical,K2_ratio_static,J_ratio,J_dynamic_norm,J_classical_norm");
        const double norm = cfg.L_over_ell / (cfg.T0 * cfg.T0);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const auto& r = rows[i];
            const double jc = r.J_classical_divergent ? std::numeric_limits<double>::infinity() : r.J_classical * norm;
            csv << ms[i] << r.K2_ratio_classical << r.K2_ratio_static << r.J_ratio << r.J_dynamic * norm << jc;
            csv.end();
        }
        out.push_back({cfg.command + suffix(cfg, h0, 0.0, false) + ".csv", csv.str()});
    }
    return out;
}

std::vector<OutputFile> run_verify(const RunConfig& cfg, int& status) {
    Csv csv(cfg, "h0=fixed m=fixed", "module,check,measured,tolerance,pass,detail");
    for (const auto& r : run_invariants()) {
        if (!r.pass) status = 1;
        std::string detail = r.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        csv << r.module << r.name << r.measured << r.tolerance << (r.pass ? "1" : "0") << detail;
        csv.end();
    }
    return {{"verify.csv", csv.str()}};
}

bool needs_m(const std::string& command) {
    return command == "kernel" || command == "factorize" || command == "fields" || command == "sif" || command == "err";
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    const double span = (hi - lo) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
}

SweepSpec parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("sweep must be lo:hi:step, got '" + text + "'");
    SweepSpec s{parse_double("sweep lo", parts[0]), parse_double("sweep hi", parts[1]),
                parse_double("sweep step", parts[2])};
    if (!(s.step > 0.0)) throw ConfigError("sweep step must be positive in '" + text + "'");
    if (!(s.hi > s.lo)) throw ConfigError("sweep must be strictly increasing in '" + text + "'");
    if ((s.hi - s.lo) / s.step > 1e6) throw ConfigError("sweep has too many points: '" + text + "'");
    return s;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "nu")
            cfg.nu = parse_double(key, value);
        else if (key == "h0") {
            if (trim(value) != "auto-star") parse_double(key, value);
            cfg.h0 = trim(value);
        } else if (key == "h0-sweep")
            cfg.h0_sweep = parse_sweep(value);
        else if (key == "m")
            cfg.m = parse_double(key, value);
        else if (key == "m-sweep")
            cfg.m_sweep = parse_sweep(value);
        else if (key == "L-over-ell")
            cfg.L_over_ell = parse_double(key, value);
        else if (key == "T0")
            cfg.T0 = parse_double(key, value);
        else if (key == "tol")
            cfg.tol = parse_double(key, value);
        else if (key == "out")
            cfg.out_dir = trim(value);
        else if (key == "plot")
            cfg.plot = parse_bool(key, value);
        else if (key == "command") {
            if (!kCommands.count(trim(value))) throw ConfigError("unknown command '" + value + "'");
            cfg.command = trim(value);
        } else
            throw ConfigError("unknown setting '" + key + "'");
    }
}

double resolve_h0(const std::string& text, double nu) {
    if (trim(text) == "auto-star") return h0_star(nu);
    return parse_double("h0", text);
}

std::vector<double> h0_values(const RunConfig& cfg) {
    if (cfg.h0_sweep) return cfg.h0_sweep->values();
    if (cfg.command == "regime") return SweepSpec{0.0, 2.0, 0.01}.values();
    return {resolve_h0(cfg.h0, cfg.nu)};
}

std::vector<double> m_values(const RunConfig& cfg) {
    if (cfg.m_sweep) return cfg.m_sweep->values();
    if (cfg.m) return {*cfg.m};
    return {};
}

int threads_from_env() {
    const char* env = std::getenv("CSCRACK_THREADS");
    if (!env || !*env) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int n = parse_int("CSCRACK_THREADS", env);
    if (n < 1) throw ConfigError("CSCRACK_THREADS must be at least 1");
    return n;
}

void validate(const RunConfig& cfg) {
    if (!kCommands.count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
    validate(QuadSpec{cfg.tol, cfg.tol, 1});
    if (!(cfg.tol < 1e-2)) throw ConfigError("tol must be below 1e-2");
    if (cfg.threads < 1) throw ConfigError("thread count must be at least 1");
    if (cfg.out_dir.empty()) throw ConfigError("output directory must not be empty");
    if (cfg.m && cfg.m_sweep) throw ConfigError("give either --m or --m-sweep, not both");
    if (cfg.plot && (cfg.command == "verify" || cfg.command == "factorize"))
        throw ConfigError("--plot applies to figure data only");
    if (needs_m(cfg.command) && !cfg.m && !cfg.m_sweep) throw ConfigError(cfg.command + " needs --m or --m-sweep");

    const auto h0s = h0_values(cfg);
    for (double h0 : h0s) validate(MaterialConfig{cfg.nu, h0, 1.0, 1.0});
    if (cfg.command == "dispersion" && h0s.size() > 64) throw ConfigError("dispersion takes at most 64 h0 values");
    if (!needs_m(cfg.command)) return;
    for (double h0 : h0s)
        for (double m : m_values(cfg)) validate(CrackState{m, cfg.T0, cfg.L_over_ell}, MaterialConfig{cfg.nu, h0, 1.0, 1.0});
}

std::vector<OutputFile> run_command(const RunConfig& cfg, int* status) {
    validate(cfg);
    int st = 0;
    std::vector<OutputFile> files;
    if (cfg.command == "dispersion")
        files = run_dispersion(cfg);
    else if (cfg.command == "regime")
        files = run_regime(cfg);
    else if (cfg.command == "kernel")
        files = run_kernel(cfg);
    else if (cfg.command == "factorize")
        files = run_factorize(cfg, st);
    else if (cfg.command == "fields")
        files = run_fields(cfg);
    else if (cfg.command == "sif" || cfg.command == "err")
        files = run_fracture(cfg);
    else
        files = run_verify(cfg, st);
    if (status) *status = st;
    return files;
}

namespace {

struct Layout {
    std::string x;
    std::string panel;  // one axes per distinct value of this column
    std::vector<std::string> group;
    std::vector<std::string> y;
    bool logx = false;
};

std::vector<std::string> split_header(const std::string& line) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    return cols;
}

Layout layout_for(const std::string& name, const std::vector<std::string>& cols) {
    static const std::vector<std::pair<std::string, std::string>> x_for = {
        {"dispersion", "xi_ell"}, {"regime", "h0"}, {"kernel_real", "s"},
        {"kernel_cut", "y"},     {"fields", "X_over_ell"}, {"sif", "m"}, {"err", "m"}};
    static const std::set<std::string> grouping = {"h0", "m", "quantity", "segment"};
    Layout lay;
    for (const auto& [prefix, x] : x_for)
        if (name.rfind(prefix, 0) == 0) {
            lay.x = x;
            break;
        }
    if (lay.x.empty() || std::find(cols.begin(), cols.end(), lay.x) == cols.end())
        throw MissingInput("no figure layout for " + name);
    for (const auto& c : cols) {
        if (c == lay.x) continue;
        if (c == "quantity")
            lay.panel = c;
        else if (grouping.count(c))
            lay.group.push_back(c);
        else if (c != "cap" && c != "angle")
            lay.y.push_back(c);
    }
    lay.logx = lay.x == "xi_ell";
    return lay;
}

std::string py_list(const std::vector<std::string>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", \"" : "\"") + v[i] + "\"";
    return s + "]";
}

}  // namespace

std::string emit_plot_script(const std::vector<std::string>& csv_names, const std::string& dir) {
    if (csv_names.empty()) throw MissingInput("no CSV files to plot");
    std::ostringstream fig;
    for (const auto& name : csv_names) {
        std::ifstream in(std::filesystem::path(dir) / name);
        if (!in) throw MissingInput("CSV not found: " + name);
        std::string line;
        while (std::getline(in, line) && line.rfind('#', 0) == 0) {
        }
        const Layout lay = layout_for(name, split_header(line));
        const std::string png = std::filesystem::path(name).replace_extension(".png").string();
        fig << "    {\"csv\": \"" << name << "\", \"png\": \"" << png << "\", \"x\": \"" << lay.x
            << "\", \"panel\": " << (lay.panel.empty() ? "None" : "\"" + lay.panel + "\"")
            << ", \"group\": " << py_list(lay.group) << ", \"y\": " << py_list(lay.y)
            << ", \"logx\": " << (lay.logx ? "True" : "False") << "},\n";
    }
    std::ostringstream os;
    os << "#!/usr/bin/env python3\n"
          "# One PNG per CSV, written next to this script.\n"
          "import csv\n"
          "import os\n"
          "\n"
          "import matplotlib\n"
          "\n"
          "matplotlib.use(\"Agg\")\n"
          "import matplotlib.pyplot as plt\n"
          "\n"
          "HERE = os.path.dirname(os.path.abspath(__file__))\n"
          "FIGURES = [\n"
       << fig.str()
       << "]\n"
          "\n"
          "\n"
          "def rows(path):\n"
          "    with open(path, newline=\"\") as fh:\n"
          "        return list(csv.DictReader(line for line in fh if not line.startswith(\"#\")))\n"
          "\n"
          "\n"
          "def main():\n"
          "    for f in FIGURES:\n"
          "        data = rows(os.path.join(HERE, f[\"csv\"]))\n"
          "        panels = sorted({r[f[\"panel\"]] for r in data}) if f[\"panel\"] else [None]\n"
          "        keys = sorted({tuple(r[g] for g in f[\"group\"]) for r in data})\n"
          "        n = len(panels) * len(f[\"y\"])\n"
          "        fig, axes = plt.subplots(n, 1, figsize=(6, 3 * n), squeeze=False)\n"
          "        slots = [(p, col) for p in panels for col in f[\"y\"]]\n"
          "        for ax, (p, col) in zip(axes[:, 0], slots):\n"
          "            part = [r for r in data if p is None or r[f[\"panel\"]] == p]\n"
          "            for key in keys:\n"
          "                sel = [r for r in part if tuple(r[g] for g in f[\"group\"]) == key]\n"
          "                if not sel:\n"
          "                    continue\n"
          "                label = \" \".join(f\"{g}={v}\" for g, v in zip(f[\"group\"], key))\n"
          "                ax.plot([float(r[f[\"x\"]]) for r in sel], [float(r[col]) for r in sel], label=label or None)\n"
          "            ax.set_xlabel(f[\"x\"])\n"
          "            ax.set_ylabel(col if p is None else f\"{p} ({col})\")\n"
          "            if f[\"logx\"]:\n"
          "                ax.set_xscale(\"log\")\n"
          "            if 1 < len(keys) <= 12:\n"
          "                ax.legend(fontsize=\"small\")\n"
          "        fig.tight_layout()\n"
          "        fig.savefig(os.path.join(HERE, f[\"png\"]), dpi=150)\n"
          "        plt.close(fig)\n"
          "\n"
          "\n"
          "if __name__ == \"__main__\":\n"
          "    main()\n";
    return os.str();
}

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Config:
            return 2;
        case ErrorKind::Domain:
            return 3;
        case ErrorKind::Numerical:
            return 4;
    }
    return 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Steady mode II crack in couple-stress elasticity with micro-inertia"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default(false);

    struct Flag {
        const char* key;
        const char* help;
        std::string value;
        CLI::Option* opt = nullptr;
    };
    std::vector<Flag> flags = {
        {"nu", "Poisson ratio", {}},
        {"h0", "micro-inertia ratio h/l, or auto-star", {}},
        {"h0-sweep", "h0 sweep lo:hi:step", {}},
        {"m", "crack speed / shear wave speed", {}},
        {"m-sweep", "m sweep lo:hi:step", {}},
        {"L-over-ell", "load decay length over l", {}},
        {"T0", "resultant crack-face load", {}},
        {"tol", "quadrature tolerance", {}},
        {"out", "output directory", {}},
    };
    for (auto& f : flags) f.opt = app.add_option(std::string("--") + f.key, f.value, f.help);
    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file; flags override it");
    bool plot = false;
    app.add_flag("--plot", plot, "also write a matplotlib script for the CSVs");

    static const std::vector<std::pair<std::string, std::string>> subs = {
        {"dispersion", "shear and Rayleigh dispersion curves"},
        {"regime", "sub-Rayleigh boundary m_R(h0)"},
        {"kernel", "kernel N on the real axis and along the cuts"},
        {"factorize", "factorization identity report"},
        {"fields", "crack-line sigma_yx, u_x and m_xz"},
        {"sif", "stress intensity factor ratios over an m sweep"},
        {"err", "energy release rate ratios over an m sweep"},
        {"verify", "full invariant suite"},
    };
    for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            auto kv = read_config_file(config_path);
            kv.erase("command");
            apply_settings(cfg, kv);
        }
        std::map<std::string, std::string> over;
        for (const auto& f : flags)
            if (f.opt->count()) over[f.key] = f.value;
        apply_settings(cfg, over);
        if (plot) cfg.plot = true;
        // An explicit flag replaces the config file's alternative form.
        if (over.count("m")) cfg.m_sweep.reset();
        if (over.count("m-sweep")) cfg.m.reset();
        if (over.count("h0")) cfg.h0_sweep.reset();
        cfg.threads = threads_from_env();

        int status = 0;
        const auto files = run_command(cfg, &status);

        // Everything is computed before the first byte is written.
        std::filesystem::create_directories(cfg.out_dir);
        std::vector<std::string> names;
        for (const auto& f : files) {
            std::ofstream out(std::filesystem::path(cfg.out_dir) / f.name, std::ios::binary);
            out << f.content;
            if (!out) throw ConfigError("cannot write " + f.name);
            names.push_back(f.name);
            std::cout << (std::filesystem::path(cfg.out_dir) / f.name).string() << '\n';
        }
        if (cfg.plot) {
            const std::string script = emit_plot_script(names, cfg.out_dir);
            const auto path = std::filesystem::path(cfg.out_dir) / ("plot_" + cfg.command + ".py");
            std::ofstream(path, std::ios::binary) << script;
            std::cout << path.string() << '\n';
        }
        if (status != 0) std::cerr << cfg.command << ": some checks failed\n";
        return status;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cscrack
