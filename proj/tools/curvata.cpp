// Command-line front end: single queries (symcheck, tube, cap), CSV
// parameter sweeps, and the self-verification suite.
//
// Exit codes: 0 success, 2 invalid input (including parse failures),
// 3 numerical failure. Verification failures also exit 3.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvata/errors.hpp"
#include "curvata/spaceform.hpp"
#include "curvata/spectral.hpp"
#include "curvata/stability.hpp"
#include "curvata/symfunc.hpp"
#include "curvata/verify.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string join12(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += num12(v[i]);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_kappa(const std::string& text) {
    std::vector<double> out;
    if (!trim(text).empty() && trim(text).back() == ',')
        throw curvata::invalid_input("trailing comma in curvature list");
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw curvata::invalid_input("empty entry in curvature list");
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw curvata::invalid_input("cannot parse curvature entry '" + tok + "'");
        }
        if (pos != tok.size())
            throw curvata::invalid_input("trailing characters in curvature entry '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw curvata::invalid_input("curvature list is empty");
    return out;
}

const char* sign_class_name(curvata::symfunc::SignClass s) {
    using curvata::symfunc::SignClass;
    switch (s) {
        case SignClass::PositiveDefinite: return "PositiveDefinite";
        case SignClass::NegativeDefinite: return "NegativeDefinite";
        case SignClass::Indefinite: return "Indefinite";
    }
    return "Indefinite";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw curvata::invalid_input("cannot open output file: " + path);
    out << content;
    out.flush();
    if (!out) throw curvata::invalid_input("cannot write output file: " + path);
}

// ---------------------------------------------------------------- symcheck

struct SymcheckArgs {
    std::string kappa;
    int r = 0;
    std::string csv_path;
};

int cmd_symcheck(const SymcheckArgs& a) {
    using namespace curvata;
    symfunc::CurvatureVector kv(parse_kappa(a.kappa));
    const int n = kv.n();
    if (a.r < 0 || a.r >= n)
        throw invalid_input("r must lie in [0, n-1]; got r=" + std::to_string(a.r) +
                            " for n=" + std::to_string(n));

    const auto pf = symfunc::profile(kv);
    const int r = a.r;

    // Traces come from row sums of the removal recurrence; compare against
    // the closed forms they are supposed to equal.
    const double s_r1 = pf.S[static_cast<size_t>(r) + 1];
    const double s_r2 = (r + 2 <= n) ? pf.S[static_cast<size_t>(r) + 2] : 0.0;
    const double res_p = std::fabs(pf.trace_p[static_cast<size_t>(r)] - (n - r) * pf.S[static_cast<size_t>(r)]);
    const double res_pa = std::fabs(pf.trace_pa[static_cast<size_t>(r)] - (r + 1) * s_r1);
    const double res_pa2 =
        std::fabs(pf.trace_pa2[static_cast<size_t>(r)] - (pf.S[1] * s_r1 - (r + 2) * s_r2));

    std::vector<double> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = pf.newton(r, i);

    const auto mac = symfunc::maclaurin_report(kv);
    const auto cls = symfunc::positivity_check(kv, r);

    std::ostringstream os;
    os << "n: " << n << "\n";
    os << "kappa: " << join12(kv.kappa) << "\n";
    os << "S: " << join12(pf.S) << "\n";
    os << "H: " << join12(pf.H) << "\n";
    os << "S_r: " << num12(pf.S[static_cast<size_t>(r)]) << "\n";
    os << "H_r: " << num12(pf.H[static_cast<size_t>(r)]) << "\n";
    os << "newton: " << join12(row) << "; trP" << r << ": "
       << num12(pf.trace_p[static_cast<size_t>(r)]) << "; trP" << r << "A: "
       << num12(pf.trace_pa[static_cast<size_t>(r)]) << "; trP" << r << "A2: "
       << num12(pf.trace_pa2[static_cast<size_t>(r)]) << "\n";
    os << "trace_residuals: " << num12(res_p) << "," << num12(res_pa) << ","
       << num12(res_pa2) << "\n";
    os << "tau: " << join12(pf.tau) << "\n";
    os << "positivity: " << sign_class_name(cls) << "\n";
    if (mac.applicable) {
        for (const auto& e : mac.entries)
            os << "maclaurin " << e.id << ": lhs=" << num12(e.lhs)
               << " rhs=" << num12(e.rhs) << " margin=" << num12(e.margin) << "\n";
        os << "maclaurin_min_margin: " << num12(mac.min_margin()) << "\n";
    } else {
        os << "maclaurin: not applicable (requires nonnegative curvatures)\n";
    }
    std::cout << os.str();

    if (!a.csv_path.empty()) {
        std::ostringstream csv;
        csv << "n,r,S_r,H_r,trP,trPA,trPA2,tau_r,positivity,maclaurin_min_margin\n";
        csv << n << "," << r << "," << num17(pf.S[static_cast<size_t>(r)]) << ","
            << num17(pf.H[static_cast<size_t>(r)]) << ","
            << num17(pf.trace_p[static_cast<size_t>(r)]) << ","
            << num17(pf.trace_pa[static_cast<size_t>(r)]) << ","
            << num17(pf.trace_pa2[static_cast<size_t>(r)]) << ","
            << num17(pf.tau[static_cast<size_t>(r)]) << "," << sign_class_name(cls) << ","
            << (mac.applicable ? num17(mac.min_margin()) : std::string("nan")) << "\n";
        write_file(a.csv_path, csv.str());
    }
    return 0;
}

// -------------------------------------------------------------------- tube

struct TubeArgs {
    int n = 3;
    int r = 0;
    double c = 0.0;
    double R = 1.0;
    double l = 1.0;
    std::string csv_path;
    int jmax = 5;
    int mmax = 5;
};

int cmd_tube(const TubeArgs& a) {
    using namespace curvata;
    stability::TubeSpec spec;
    spec.n = a.n;
    spec.r = a.r;
    spec.c = a.c;
    spec.R = a.R;
    spec.l = a.l;
    const auto rep = stability::tube_verdict(spec);

    std::cout << stability::to_string(rep.verdict.label) << " margin=" << num4(rep.margin)
              << "\n";
    std::cout << "margin: " << num17(rep.margin) << "\n";
    std::cout << "deciding_mode: j=" << rep.deciding_j << " m=" << rep.deciding_m << "\n";
    std::cout << "cross_eigenvalue: " << num17(rep.cross_eigenvalue) << "\n";
    if (!rep.verdict.witness.empty()) std::cout << "witness: " << rep.verdict.witness << "\n";

    if (!a.csv_path.empty()) {
        if (a.jmax < 0 || a.mmax < 0) throw invalid_input("jmax and mmax must be >= 0");
        const spaceform::SpaceForm sf(a.c);
        std::ostringstream csv;
        csv << "j,m,eigenvalue\n";
        for (int j = 0; j <= a.jmax; ++j)
            for (int m = 0; m <= a.mmax; ++m)
                csv << j << "," << m << ","
                    << num17(spectral::tube_mode_eigenvalue(a.n, a.r, sf, a.R, a.l, j, m))
                    << "\n";
        write_file(a.csv_path, csv.str());
    }
    return 0;
}

// --------------------------------------------------------------------- cap

struct CapArgs {
    int n = 3;
    double c = 0.0;
    double rho0 = 1.0;
    double theta = kPi / 2.0;
    std::optional<double> robin_slope;
    int N = 2048;
    int l_max = 3;
    std::string csv_path;
};

int cmd_cap(const CapArgs& a) {
    using namespace curvata;
    stability::CapSpec spec;
    spec.n = a.n;
    spec.c = a.c;
    spec.rho0 = a.rho0;
    spec.theta = a.theta;

    const auto full =
        stability::cap_morse_index(spec, stability::IndexSubspace::Full, a.N, a.l_max, a.robin_slope);
    const auto mz = stability::cap_morse_index(spec, stability::IndexSubspace::MeanZero, a.N,
                                               a.l_max, a.robin_slope);

    std::cout << "lambda1: " << num17(full.lambda1) << "\n";
    std::cout << "lambda2: " << num17(full.lambda2) << " multiplicity=" << full.lambda2_multiplicity
              << "\n";
    std::cout << "zero_band: " << num12(full.zero_band) << "\n";
    std::cout << "full_index: " << full.morse_index << "\n";
    std::cout << "meanzero_index: " << mz.morse_index << "\n";
    std::cout << "resolvent_integral: " << num17(full.resolvent_integral) << "\n";
    if (!full.kernel_means.empty())
        std::cout << "kernel_means: " << join12(full.kernel_means) << "\n";

    if (!a.csv_path.empty()) {
        // Spectrum rows from the same per-mode radial problems the index
        // computation uses.
        std::ostringstream csv;
        csv << "l,k,eigenvalue,multiplicity,residual\n";
        for (int l = 0; l <= a.l_max; ++l) {
            spectral::SturmLiouvilleProblem p = spectral::ball_problem(a.n, a.c, l, a.rho0);
            if (a.robin_slope) p.robin_slope = *a.robin_slope;
            const auto sp = spectral::radial_eigen(p, 3, a.N);
            const int mult = spectral::harmonic_multiplicity(a.n, l);
            for (size_t k = 0; k < sp.eigenvalues.size(); ++k)
                csv << l << "," << k << "," << num17(sp.eigenvalues[k]) << "," << mult << ","
                    << num17(sp.residuals[k]) << "\n";
        }
        write_file(a.csv_path, csv.str());
    }
    return 0;
}

// ------------------------------------------------------------------- sweep

struct Axis {
    std::string key;
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    double value(int i) const {
        if (steps == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / (steps - 1);
    }
};

unsigned sweep_threads(int total) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CURVATA_THREADS")) {
        const std::string s(env);
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(s, &pos);
        } catch (const std::exception&) {
            throw curvata::invalid_input("CURVATA_THREADS must be a positive integer");
        }
        if (pos != s.size() || v < 1)
            throw curvata::invalid_input("CURVATA_THREADS must be a positive integer");
        hw = static_cast<unsigned>(v);
    }
    if (total < 1) total = 1;
    return std::min<unsigned>(hw, static_cast<unsigned>(total));
}

double require_key(const std::map<std::string, double>& vals, const std::string& key) {
    const auto it = vals.find(key);
    if (it == vals.end()) throw curvata::invalid_input("sweep config is missing key '" + key + "'");
    return it->second;
}

int int_key(const std::map<std::string, double>& vals, const std::string& key) {
    const double v = require_key(vals, key);
    const double r = std::round(v);
    if (std::fabs(v - r) > 0.0)
        throw curvata::invalid_input("sweep key '" + key + "' must be an integer");
    return static_cast<int>(r);
}

int cmd_sweep(const std::string& config_path) {
    using nlohmann::ordered_json;
    using namespace curvata;

    std::ifstream in(config_path);
    if (!in) throw invalid_input("cannot open sweep config: " + config_path);
    ordered_json cfg = ordered_json::parse(in);
    if (!cfg.is_object()) throw invalid_input("sweep config must be a JSON object");

    std::string command;
    std::string output;
    std::map<std::string, double> fixed;
    std::vector<Axis> axes;

    // Key order in the file decides axis order (outer axis first).
    for (const auto& item : cfg.items()) {
        const std::string& key = item.key();
        const auto& val = item.value();
        if (key == "command") {
            if (!val.is_string()) throw invalid_input("'command' must be a string");
            command = val.get<std::string>();
        } else if (key == "output") {
            if (!val.is_string()) throw invalid_input("'output' must be a string");
            output = val.get<std::string>();
        } else if (val.is_number()) {
            fixed[key] = val.get<double>();
        } else if (val.is_object()) {
            Axis ax;
            ax.key = key;
            if (!val.contains("start") || !val.contains("stop") || !val.contains("steps"))
                throw invalid_input("range for '" + key + "' needs start, stop, steps");
            for (const auto& sub : val.items())
                if (sub.key() != "start" && sub.key() != "stop" && sub.key() != "steps")
                    throw invalid_input("unknown range field '" + sub.key() + "' for '" + key + "'");
            if (!val["start"].is_number() || !val["stop"].is_number() ||
                !val["steps"].is_number_integer())
                throw invalid_input("range for '" + key + "' must have numeric start/stop and integer steps");
            ax.start = val["start"].get<double>();
            ax.stop = val["stop"].get<double>();
            ax.steps = val["steps"].get<int>();
            if (ax.steps < 1) throw invalid_input("range for '" + key + "' needs steps >= 1");
            axes.push_back(ax);
        } else {
            throw invalid_input("sweep key '" + key + "' must be a number, a range object, or a string");
        }
    }

    if (command != "tube" && command != "cap")
        throw invalid_input("sweep 'command' must be \"tube\" or \"cap\"");
    if (axes.size() > 2) throw invalid_input("sweep supports at most 2 range axes");

    const bool is_tube = command == "tube";
    const std::vector<std::string> sweepable =
        is_tube ? std::vector<std::string>{"c", "R", "l"}
                : std::vector<std::string>{"c", "rho0", "theta"};
    const std::vector<std::string> allowed =
        is_tube ? std::vector<std::string>{"n", "r", "c", "R", "l"}
                : std::vector<std::string>{"n", "c", "rho0", "theta", "robin_slope", "N", "lmax"};

    auto known = [&](const std::string& k) {
        for (const auto& s : allowed)
            if (s == k) return true;
        return false;
    };
    for (const auto& ax : axes) {
        if (!known(ax.key)) throw invalid_input("unknown sweep key '" + ax.key + "'");
        bool ok = false;
        for (const auto& s : sweepable)
            if (s == ax.key) ok = true;
        if (!ok) throw invalid_input("key '" + ax.key + "' cannot carry a range");
    }
    for (const auto& kv : fixed)
        if (!known(kv.first)) throw invalid_input("unknown sweep key '" + kv.first + "'");

    const int len0 = axes.empty() ? 1 : axes[0].steps;
    const int len1 = axes.size() < 2 ? 1 : axes[1].steps;
    const int total = len0 * len1;

    std::string header;
    if (is_tube)
        header = "n,r,c,R,l,label,margin,cross_eigenvalue,deciding_j,deciding_m";
    else
        header = "n,c,rho0,theta,N,lmax,lambda1,lambda2,lambda2_multiplicity,zero_band,"
                 "full_index,meanzero_index,resolvent_integral";

    auto eval_row = [&](int idx) -> std::string {
        std::map<std::string, double> vals = fixed;
        if (!axes.empty()) {
            const int i0 = idx / len1;
            vals[axes[0].key] = axes[0].value(i0);
            if (axes.size() == 2) vals[axes[1].key] = axes[1].value(idx % len1);
        }
        std::ostringstream row;
        if (is_tube) {
            stability::TubeSpec spec;
            spec.n = int_key(vals, "n");
            spec.r = int_key(vals, "r");
            spec.c = require_key(vals, "c");
            spec.R = require_key(vals, "R");
            spec.l = require_key(vals, "l");
            const auto rep = stability::tube_verdict(spec);
            row << spec.n << "," << spec.r << "," << num17(spec.c) << "," << num17(spec.R) << ","
                << num17(spec.l) << "," << stability::to_string(rep.verdict.label) << ","
                << num17(rep.margin) << "," << num17(rep.cross_eigenvalue) << ","
                << rep.deciding_j << "," << rep.deciding_m;
        } else {
            stability::CapSpec spec;
            spec.n = int_key(vals, "n");
            spec.c = require_key(vals, "c");
            spec.rho0 = require_key(vals, "rho0");
            if (vals.count("theta")) spec.theta = vals.at("theta");
            std::optional<double> slope;
            if (vals.count("robin_slope")) slope = vals.at("robin_slope");
            const int N = vals.count("N") ? int_key(vals, "N") : 2048;
            const int l_max = vals.count("lmax") ? int_key(vals, "lmax") : 3;
            const auto full =
                stability::cap_morse_index(spec, stability::IndexSubspace::Full, N, l_max, slope);
            const auto mz = stability::cap_morse_index(spec, stability::IndexSubspace::MeanZero, N,
                                                       l_max, slope);
            row << spec.n << "," << num17(spec.c) << "," << num17(spec.rho0) << ","
                << num17(spec.theta) << "," << N << "," << l_max << "," << num17(full.lambda1)
                << "," << num17(full.lambda2) << "," << full.lambda2_multiplicity << ","
                << num17(full.zero_band) << "," << full.morse_index << "," << mz.morse_index << ","
                << num17(full.resolvent_integral);
        }
        return row.str();
    };

    std::vector<std::string> rows(static_cast<size_t>(total));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(total));
    const unsigned nthreads = sweep_threads(total);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= total) break;
            try {
                rows[static_cast<size_t>(idx)] = eval_row(idx);
            } catch (...) {
                errors[static_cast<size_t>(idx)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Report the failure at the lowest grid index so reruns fail identically.
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::ostringstream csv;
    csv << header << "\n";
    for (const auto& row : rows) csv << row << "\n";
    if (output.empty())
        std::cout << csv.str();
    else
        write_file(output, csv.str());
    return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify() {
    const auto results = curvata::verify::run_acceptance();
    const int failures = curvata::verify::report(results, std::cout);
    if (failures > 0) {
        std::cout << failures << " of " << results.size() << " checks failed\n";
        return 3;
    }
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvata: higher-order curvature spectra and stability verdicts"};
    app.require_subcommand(1);

    SymcheckArgs sym_args;
    auto* sym = app.add_subcommand(
        "symcheck", "Symmetric-function profile of a principal curvature vector");
    sym->add_option("--kappa", sym_args.kappa, "comma-separated principal curvatures")->required();
    sym->add_option("--r", sym_args.r, "Newton transformation order (0 <= r <= n-1)");
    sym->add_option("--csv", sym_args.csv_path,
                    "write a one-row CSV (columns: n,r,S_r,H_r,trP,trPA,trPA2,tau_r,"
                    "positivity,maclaurin_min_margin)");

    TubeArgs tube_args;
    auto* tube = app.add_subcommand("tube", "Stability verdict for a capillary tube");
    tube->add_option("--n", tube_args.n, "ambient dimension minus one")->required();
    tube->add_option("--r", tube_args.r, "curvature order");
    tube->add_option("--c", tube_args.c, "model curvature");
    tube->add_option("--R", tube_args.R, "tube radius")->required();
    tube->add_option("--l", tube_args.l, "axis length")->required();
    tube->add_option("--csv", tube_args.csv_path,
                     "write the (j,m) mode table as CSV (columns: j,m,eigenvalue)");
    tube->add_option("--jmax", tube_args.jmax, "largest sphere mode in the CSV table");
    tube->add_option("--mmax", tube_args.mmax, "largest axial mode in the CSV table");

    CapArgs cap_args;
    double cap_slope = 0.0;
    auto* cap = app.add_subcommand("cap", "Morse indices of a free-boundary cap");
    cap->add_option("--n", cap_args.n, "hypersurface dimension")->required();
    cap->add_option("--c", cap_args.c, "model curvature");
    cap->add_option("--rho0", cap_args.rho0, "cap radius")->required();
    cap->add_option("--theta", cap_args.theta, "contact angle (default pi/2)");
    auto* slope_opt = cap->add_option("--robin-slope", cap_slope,
                                      "override the boundary Robin slope (required for "
                                      "contact angles other than pi/2)");
    cap->add_option("--N", cap_args.N, "radial grid cells");
    cap->add_option("--lmax", cap_args.l_max, "largest angular mode");
    cap->add_option("--csv", cap_args.csv_path,
                    "write the per-mode spectrum as CSV (columns: l,k,eigenvalue,"
                    "multiplicity,residual)");

    std::string sweep_config;
    auto* sweep = app.add_subcommand(
        "sweep",
        "Evaluate a parameter grid from a JSON config and write a CSV. Config keys mirror "
        "the tube/cap flags; up to two keys may hold {start, stop, steps} ranges. Tube "
        "columns: n,r,c,R,l,label,margin,cross_eigenvalue,deciding_j,deciding_m. Cap "
        "columns: n,c,rho0,theta,N,lmax,lambda1,lambda2,lambda2_multiplicity,zero_band,"
        "full_index,meanzero_index,resolvent_integral. CURVATA_THREADS caps parallelism.");
    sweep->add_option("config", sweep_config, "path to the JSON sweep config")->required();

    auto* verify = app.add_subcommand("verify", "Run the full self-check battery");
    (void)verify;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sym->parsed()) return cmd_symcheck(sym_args);
        if (tube->parsed()) return cmd_tube(tube_args);
        if (cap->parsed()) {
            if (slope_opt->count() > 0) cap_args.robin_slope = cap_slope;
            return cmd_cap(cap_args);
        }
        if (sweep->parsed()) return cmd_sweep(sweep_config);
        if (verify->parsed()) return cmd_verify();
    } catch (const curvata::numerical_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
