#include "curvata/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "curvata/spectral.hpp"
#include "curvata/stability.hpp"

namespace curvata::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> random_kappa(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> k(static_cast<size_t>(n));
    for (double& x : k) x = dist(rng);
    return k;
}

// ---------------------------------------------------------------- criteria

void trace_identities(CriterionResult& r) {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 7;
        symfunc::CurvatureVector kv(random_kappa(rng, n, -2.0, 2.0));
        auto p = symfunc::profile(kv);
        for (int ord = 0; ord < n; ++ord) {
            const size_t o = static_cast<size_t>(ord);
            worst = std::max(worst, rel_gap(p.trace_p[o], (n - ord) * p.S[o]));
            worst = std::max(worst, rel_gap(p.trace_pa[o], (ord + 1) * p.S[o + 1]));
            const double s2 = (ord + 2 <= n) ? p.S[o + 2] : 0.0;
            worst = std::max(worst,
                             rel_gap(p.trace_pa2[o], p.S[1] * p.S[o + 1] - (ord + 2) * s2));
        }
    }
    r.passed = worst < 1e-10;
    r.detail = "1000 vectors n=2..8, worst relative error " + num(worst) + " (bound 1e-10)";
}

void characteristic_row(CriterionResult& r) {
    std::mt19937_64 rng(20240602);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 7;
        symfunc::CurvatureVector kv(random_kappa(rng, n, -2.0, 2.0));
        const double bound = 1e-9 * std::pow(1.0 + kv.max_abs(), n);
        for (double v : symfunc::newton_row(kv, n))
            worst = std::max(worst, std::abs(v) / bound);
    }
    r.passed = worst < 1.0;
    r.detail = "1000 vectors, worst row-n entry at " + num(worst) +
               " of the 1e-9 (1+max|kappa|)^n bound";
}

void curvature_inequalities(CriterionResult& r) {
    std::mt19937_64 rng(20240603);
    double min_margin = 0.0;
    double worst_tau = -1.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 7;
        symfunc::CurvatureVector kv(random_kappa(rng, n, 0.0, 2.0));
        auto rep = symfunc::maclaurin_report(kv);
        min_margin = std::min(min_margin, rep.min_margin());
        for (int k = 0; k < n; ++k)
            if (symfunc::positivity_check(kv, k) == symfunc::SignClass::PositiveDefinite)
                worst_tau = std::max(worst_tau, symfunc::umbilicity_coefficient(kv, k));
    }

    std::uniform_real_distribution<double> base(0.1, 1.5);
    double umb_worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 7;
        symfunc::CurvatureVector kv(std::vector<double>(static_cast<size_t>(n), base(rng)));
        umb_worst = std::max(umb_worst, symfunc::maclaurin_report(kv).max_abs_margin());
        for (int k = 0; k < n; ++k)
            umb_worst = std::max(umb_worst, std::abs(symfunc::umbilicity_coefficient(kv, k)));
    }

    std::uniform_real_distribution<double> big(0.8, 1.5);
    std::uniform_real_distribution<double> bump(0.01, 0.05);
    double spread_floor = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 7;
        std::vector<double> k(static_cast<size_t>(n), big(rng));
        k[0] *= 1.0 + bump(rng);
        auto rep = symfunc::maclaurin_report(symfunc::CurvatureVector(k));
        double best = 0.0;
        for (const auto& e : rep.entries)
            if (e.id.rfind("product:", 0) == 0) best = std::max(best, e.margin);
        spread_floor = std::min(spread_floor, best);
    }

    r.passed = min_margin >= -1e-12 && worst_tau <= 1e-10 && umb_worst <= 1e-12 &&
               spread_floor > 1e-10;
    r.detail = "min margin " + num(min_margin) + ", max tau " + num(worst_tau) +
               ", umbilic residue " + num(umb_worst) + ", spread detection floor " +
               num(spread_floor);
}

void sphere_modes(CriterionResult& r) {
    double worst = 0.0;
    int triples = 0;
    for (int n = 2; n <= 6; ++n) {
        for (double c : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
            spaceform::SpaceForm sf(c);
            const double limit = sf.radius_limit();
            for (double R : {0.7, std::min(1.9, 0.75 * limit)}) {
                ++triples;
                const double kap = sf.cot(R);
                const double sn = sf.sn(R);
                for (int ord = 0; ord + 2 <= n; ++ord) {
                    // independent closed form via cn^2 + c sn^2 = 1
                    const double ref = -(n - ord - 1) * symfunc::binomial(n - 1, ord) *
                                       std::pow(kap, ord) / (sn * sn);
                    const double got = spectral::sphere_mode_eigenvalue(n, ord, sf, R, 0);
                    worst = std::max(worst, rel_gap(got, ref));

                    const double first = spectral::sphere_mode_eigenvalue(n, ord, sf, R, 1);
                    worst = std::max(worst, std::abs(first) / std::max(1.0, std::abs(ref)));

                    // zeroth-order coefficient computed from the curvature data
                    auto model = spaceform::sphere_profile(n, sf, R);
                    const double q = stability::stability_potential(model.curvatures, ord, c);
                    worst = std::max(worst, rel_gap(q, -got));
                }
            }
        }
    }
    r.passed = worst < 1e-12;
    r.detail = std::to_string(triples) + " (n,c,R) triples, worst relative error " +
               num(worst) + " (bound 1e-12)";
}

void ball_kernel(CriterionResult& r) {
    const int N = 4096;
    const double band = 50.0 / (static_cast<double>(N) * N);
    double worst = 0.0;
    bool mult_ok = true;
    for (int n : {2, 3, 4}) {
        for (double c : {-1.0, 0.0, 1.0}) {
            for (double rho0 : {0.5, 1.0}) {
                auto sp = spectral::ball_robin_spectrum(n, c, rho0, 2, 2, N);
                worst = std::max(worst, std::abs(sp.eigenvalues[1]));
                if (sp.multiplicities[1] != n || sp.origins[1].l != 1) mult_ok = false;
            }
        }
    }
    r.passed = worst < band && mult_ok;
    r.detail = "18 balls at N=4096, worst |second eigenvalue| " + num(worst) + " (band " +
               num(band) + "), multiplicities " + (mult_ok ? "exact" : "WRONG");
}

void gradient_profile(CriterionResult& r) {
    const int N = 4096;
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        for (double c : {-1.0, 0.0, 1.0}) {
            for (double rho0 : {0.5, 1.0}) {
                auto p = spectral::ball_problem(n, c, 1, rho0);
                auto sp = spectral::radial_eigen(p, 1, N);
                const auto& f = sp.eigenfunctions[0];
                std::vector<double> ref(static_cast<size_t>(N));
                double norm2 = 0.0;
                for (int i = 0; i < N; ++i) {
                    ref[static_cast<size_t>(i)] = p.form.sn(f.node(i));
                    norm2 += ref[static_cast<size_t>(i)] * ref[static_cast<size_t>(i)] *
                             std::pow(p.form.sn(f.node(i)), n - 1) * f.h();
                }
                const double norm = std::sqrt(norm2);
                for (int i = 0; i < N; ++i)
                    worst = std::max(worst, std::abs(f.values[static_cast<size_t>(i)] -
                                                     ref[static_cast<size_t>(i)] / norm));
            }
        }
    }
    r.passed = worst < 1e-4;
    r.detail = "18 balls at N=4096, worst max-norm gap to the model profile " + num(worst) +
               " (bound 1e-4)";
}

void unit_load(CriterionResult& r) {
    const int N = 4096;
    double worst_in = 0.0, worst_bd = 0.0;
    for (int n : {2, 3, 4}) {
        for (double c : {-1.0, 0.0, 1.0}) {
            for (double rho0 : {0.5, 1.0}) {
                auto res = spectral::resolvent_minus_one(n, spaceform::SpaceForm(c), rho0, N);
                worst_in = std::max(worst_in, res.interior_residual);
                worst_bd = std::max(worst_bd, res.boundary_residual);
            }
        }
    }
    r.passed = worst_in < 1e-6 && worst_bd < 1e-6;
    r.detail = "18 solutions at N=4096, worst interior residual " + num(worst_in) +
               ", worst boundary residual " + num(worst_bd) + " (bound 1e-6)";
}

void tube_criterion(CriterionResult& r) {
    bool ok = true;
    std::string note;

    {
        auto rep = stability::tube_verdict({3, 0, 0.0, 1.0, 2.0});
        if (rep.verdict.label != stability::StabilityLabel::Stable ||
            std::abs(rep.margin - 0.3131655288436027) > 1e-12) {
            ok = false;
            note = "worked example margin " + num(rep.margin);
        }
    }
    {
        auto rep = stability::tube_verdict({3, 0, 0.0, 1.0, 3.0});
        if (rep.verdict.label != stability::StabilityLabel::Unstable) ok = false;
    }
    {
        auto rep = stability::tube_verdict({3, 1, 0.0, 1.0, kPi});
        if (rep.verdict.label != stability::StabilityLabel::Stable ||
            std::abs(rep.margin) > 1e-12 || std::abs(rep.cross_eigenvalue) > 1e-12)
            ok = false;
    }

    std::mt19937_64 rng(20240608);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int disagreements = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        stability::TubeSpec spec;
        spec.n = 2 + static_cast<int>(rng() % 5);
        spec.r = spec.n > 2 ? static_cast<int>(rng() % (spec.n - 1)) : 0;
        spec.c = -1.0 + 2.0 * uni(rng);
        spaceform::SpaceForm sf(spec.c);
        const double cap = std::min(2.5, 0.45 * sf.radius_limit());
        spec.R = cap * (0.05 + 0.9 * uni(rng));
        spec.l = 0.2 + 5.0 * uni(rng);
        auto rep = stability::tube_verdict(spec);
        const bool stable = rep.margin >= 0.0;
        if (rep.verdict.label == stability::StabilityLabel::Inconclusive ||
            (stable && rep.verdict.label != stability::StabilityLabel::Stable) ||
            (!stable && rep.verdict.label != stability::StabilityLabel::Unstable))
            ++disagreements;
    }
    r.passed = ok && disagreements == 0;
    r.detail = "3 worked examples " + std::string(ok ? "exact" : ("off: " + note)) + ", " +
               std::to_string(disagreements) + "/10000 random specs in disagreement";
}

void cap_morse(CriterionResult& r) {
    const int N = 2048;
    bool counts_ok = true;
    std::string bad;
    for (int n : {2, 3}) {
        for (double c : {-1.0, 0.0, 1.0}) {
            for (double rho0 : {0.6, 1.0}) {
                stability::CapSpec spec;
                spec.n = n;
                spec.c = c;
                spec.rho0 = rho0;
                auto full = stability::cap_morse_index(spec, stability::IndexSubspace::Full, N, 2);
                auto mz =
                    stability::cap_morse_index(spec, stability::IndexSubspace::MeanZero, N, 2);
                if (full.morse_index != 1 || mz.morse_index != 0) {
                    counts_ok = false;
                    bad = "n=" + std::to_string(n) + " c=" + num(c) + " rho0=" + num(rho0) +
                          " full=" + std::to_string(full.morse_index) +
                          " meanzero=" + std::to_string(mz.morse_index);
                }
            }
        }
    }

    // Newton reweighting by a positive scalar preserves every mode sign.
    bool scale_ok = true;
    {
        const int M = 1024;
        for (int l : {0, 1}) {
            auto p = spectral::ball_problem(3, 0.0, l, 1.0);
            auto op = spectral::assemble(p, M);
            auto sp = spectral::radial_eigen(p, 3, M);
            for (int ord : {0, 1}) {
                for (double kb : {0.7, 1.3}) {
                    const double s = stability::umbilic_index_scale(3, ord, kb);
                    stability::IndexFormProblem pb;
                    pb.grid = op.grid;
                    pb.dim = p.dim;
                    pb.form = p.form;
                    pb.angular_mode = l;
                    pb.newton_weight = s;
                    pb.potential = s * p.potential_shift;
                    pb.boundary_alpha = -p.robin_slope;
                    for (int k = 0; k < 3; ++k) {
                        const double lam = sp.eigenvalues[static_cast<size_t>(k)];
                        if (std::abs(lam) < 1e-4) continue;
                        const double val = stability::index_form_value(
                            pb, sp.eigenfunctions[static_cast<size_t>(k)].values);
                        if ((lam > 0.0) != (val > 0.0)) scale_ok = false;
                    }
                }
            }
        }
    }

    r.passed = counts_ok && scale_ok;
    r.detail = std::string("12 caps at N=2048 ") +
               (counts_ok ? "all full=1 meanzero=0" : ("FAILED at " + bad)) +
               ", order-0/1 reweighting " + (scale_ok ? "sign-stable" : "sign-UNSTABLE");
}

// Reference decision table for the constrained classifier.
enum class Want { SS, S, U, Insufficient, Invalid };

Want reference_classify(const stability::KoisoInput& in) {
    if (!std::isfinite(in.lambda1) || !std::isfinite(in.lambda2)) return Want::Invalid;
    const double tol =
        in.tol >= 0.0 ? in.tol : std::max(1e-7, 1e-6 * std::abs(in.lambda1));
    if (in.lambda1 > in.lambda2 + tol) return Want::Invalid;
    if (in.lambda1 >= -tol) return Want::SS;
    if (in.lambda2 < -tol) return Want::U;
    if (in.lambda2 > tol) {
        if (!in.resolvent) return Want::Insufficient;
        return in.resolvent->integral >= -tol ? Want::S : Want::U;
    }
    if (!in.e2_means) return Want::Insufficient;
    for (double m : *in.e2_means)
        if (std::abs(m) > tol) return Want::U;
    if (!in.resolvent || !in.resolvent->in_mean_zero_complement) return Want::Insufficient;
    return in.resolvent->integral >= -tol ? Want::S : Want::U;
}

Want observe_classify(const stability::KoisoInput& in) {
    try {
        auto v = stability::koiso_classify(in);
        switch (v.label) {
            case stability::StabilityLabel::StronglyStable: return Want::SS;
            case stability::StabilityLabel::Stable: return Want::S;
            case stability::StabilityLabel::Unstable: return Want::U;
            default: return Want::Invalid;
        }
    } catch (const insufficient_input&) {
        return Want::Insufficient;
    } catch (const invalid_input&) {
        return Want::Invalid;
    }
}

void constraint_classifier(CriterionResult& r) {
    const double l1s[] = {-2.0, -1.0, -1e-8, 0.0, 0.5, std::nan("")};
    const double l2s[] = {-1.0, -1e-8, 0.0, 1e-8, 0.5, 2.0};
    std::vector<std::optional<stability::ResolventRecord>> resolvents;
    resolvents.emplace_back(std::nullopt);
    for (double integ : {-0.3, 0.0, 0.3})
        for (bool comp : {false, true})
            resolvents.emplace_back(stability::ResolventRecord{integ, comp});
    std::vector<std::optional<std::vector<double>>> means;
    means.emplace_back(std::nullopt);
    means.emplace_back(std::vector<double>{});
    means.emplace_back(std::vector<double>{0.0, 0.0});
    means.emplace_back(std::vector<double>{0.0, 0.4});

    int cases = 0, mismatched = 0;
    for (double l1 : l1s)
        for (double l2 : l2s)
            for (const auto& res : resolvents)
                for (const auto& mn : means) {
                    stability::KoisoInput in{l1, l2, res, mn, -1.0};
                    ++cases;
                    if (observe_classify(in) != reference_classify(in)) ++mismatched;
                    in.tol = 0.3;
                    ++cases;
                    if (observe_classify(in) != reference_classify(in)) ++mismatched;
                }

    r.passed = mismatched == 0;
    r.detail = std::to_string(cases) + " synthetic inputs over every branch, " +
               std::to_string(mismatched) + " mismatches against the decision table";
}

struct Runner {
    std::vector<CriterionResult> out;

    template <typename F>
    void run(const char* name, double budget_seconds, F&& f) {
        CriterionResult r;
        r.name = name;
        const auto t0 = Clock::now();
        try {
            f(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (budget_seconds > 0.0 && r.seconds > budget_seconds) {
            r.passed = false;
            r.detail += " [over " + num(budget_seconds) + "s budget]";
        }
        out.push_back(std::move(r));
    }
};

} // namespace

std::vector<CriterionResult> run_acceptance() {
    Runner runner;
    runner.run("trace-identities", 1.0, trace_identities);
    runner.run("characteristic-row", 0.0, characteristic_row);
    runner.run("curvature-inequalities", 0.0, curvature_inequalities);
    runner.run("sphere-modes", 0.1, sphere_modes);
    runner.run("ball-kernel", 10.0, ball_kernel);
    runner.run("gradient-profile", 0.0, gradient_profile);
    runner.run("unit-load", 0.0, unit_load);
    runner.run("tube-criterion", 2.0, tube_criterion);
    runner.run("cap-morse", 0.0, cap_morse);
    runner.run("constraint-classifier", 0.0, constraint_classifier);
    return runner.out;
}

int report(const std::vector<CriterionResult>& results, std::ostream& os) {
    int failures = 0;
    for (const auto& r : results) {
        char stamp[32];
        std::snprintf(stamp, sizeof stamp, "%7.3fs", r.seconds);
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << stamp << ") "
           << r.detail << "\n";
        if (!r.passed) ++failures;
    }
    return failures;
}

} // namespace curvata::verify
