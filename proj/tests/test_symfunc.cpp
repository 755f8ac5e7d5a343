#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "curvata/symfunc.hpp"
#include "oracles.hpp"

using namespace curvata;
using symfunc::CurvatureVector;

namespace {

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

CurvatureVector random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> k(static_cast<size_t>(n));
    for (double& v : k) v = dist(rng);
    return CurvatureVector(std::move(k));
}

} // namespace

TEST_CASE("elementary symmetric functions on a frozen vector") {
    CurvatureVector kv({1.0, 2.0, 3.0});
    CHECK(symfunc::elementary_symmetric(kv, 0) == doctest::Approx(1.0));
    CHECK(symfunc::elementary_symmetric(kv, 1) == doctest::Approx(6.0));
    CHECK(symfunc::elementary_symmetric(kv, 2) == doctest::Approx(11.0));
    CHECK(symfunc::elementary_symmetric(kv, 3) == doctest::Approx(6.0));
    CHECK(symfunc::elementary_symmetric(kv, 4) == 0.0);
    CHECK(symfunc::elementary_symmetric(kv, 17) == 0.0);
    CHECK_THROWS_AS(symfunc::elementary_symmetric(kv, -1), invalid_input);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(CurvatureVector(std::vector<double>{}), invalid_input);
    CHECK_THROWS_AS(CurvatureVector({1.0, std::nan("")}), invalid_input);
    CHECK_THROWS_AS(CurvatureVector({std::numeric_limits<double>::infinity()}), invalid_input);
}

TEST_CASE("subset-sum enumeration agrees with the recurrence") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        auto kv = random_vector(rng, n, -3.0, 3.0);
        for (int r = 0; r <= n; ++r) {
            const double want = oracle::subset_sum_sigma(kv.kappa, r);
            const double got = symfunc::elementary_symmetric(kv, r);
            CHECK(rel_gap(want, got) < 1e-12);
        }
    }
}

TEST_CASE("Newton spectrum rows are remove-one symmetric functions") {
    CurvatureVector kv({1.0, 2.0, 3.0});
    auto row1 = symfunc::newton_row(kv, 1);
    CHECK(row1[0] == doctest::Approx(5.0));
    CHECK(row1[1] == doctest::Approx(4.0));
    CHECK(row1[2] == doctest::Approx(3.0));
    auto row2 = symfunc::newton_row(kv, 2);
    CHECK(row2[0] == doctest::Approx(6.0));
    CHECK(row2[1] == doctest::Approx(3.0));
    CHECK(row2[2] == doctest::Approx(2.0));

    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto v = random_vector(rng, n, -2.5, 2.5);
        for (int r = 0; r < n; ++r) {
            auto row = symfunc::newton_row(v, r);
            for (int i = 0; i < n; ++i)
                CHECK(rel_gap(row[static_cast<size_t>(i)],
                              oracle::remove_one_sigma(v.kappa, i, r)) < 1e-11);
        }
    }
}

TEST_CASE("profile traces: frozen example and trace identities") {
    CurvatureVector kv({1.0, 2.0, 3.0});
    auto p = symfunc::profile(kv);
    CHECK(p.trace_p[1] == doctest::Approx(12.0));
    CHECK(p.trace_pa[1] == doctest::Approx(22.0));
    CHECK(p.trace_pa2[1] == doctest::Approx(48.0));

    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto v = random_vector(rng, n, -3.0, 3.0);
        auto pr = symfunc::profile(v);
        for (int r = 0; r < n; ++r) {
            const double S = [&](int j) {
                return j <= n ? pr.S[static_cast<size_t>(j)] : 0.0;
            }(r);
            const double S1 = pr.S[1];
            const double Sr1 = (r + 1 <= n) ? pr.S[static_cast<size_t>(r) + 1] : 0.0;
            const double Sr2 = (r + 2 <= n) ? pr.S[static_cast<size_t>(r) + 2] : 0.0;
            CHECK(rel_gap(pr.trace_p[static_cast<size_t>(r)], (n - r) * S) < 1e-10);
            CHECK(rel_gap(pr.trace_pa[static_cast<size_t>(r)], (r + 1) * Sr1) < 1e-10);
            CHECK(rel_gap(pr.trace_pa2[static_cast<size_t>(r)], S1 * Sr1 - (r + 2) * Sr2) < 1e-10);
        }
    }
}

TEST_CASE("characteristic row vanishes") {
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        auto v = random_vector(rng, n, -3.0, 3.0);
        auto row = symfunc::newton_row(v, n);
        const double bound = 1e-9 * std::pow(1.0 + v.max_abs(), n);
        for (double x : row) CHECK(std::abs(x) < bound);
    }
}

TEST_CASE("umbilicity coefficient: frozen values, sign, umbilic kernel") {
    CHECK(symfunc::umbilicity_coefficient(CurvatureVector({1.0, 2.0}), 0) ==
          doctest::Approx(-1.0));
    CHECK(symfunc::umbilicity_coefficient(CurvatureVector({1.0, 2.0, 3.0}), 0) ==
          doctest::Approx(-6.0));
    CHECK_THROWS_AS(symfunc::umbilicity_coefficient(CurvatureVector({1.0, 2.0}), 2),
                    invalid_input);

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto v = random_vector(rng, n, 0.0, 2.0);
        for (int k = 0; k < n; ++k) {
            if (symfunc::positivity_check(v, k) != symfunc::SignClass::PositiveDefinite)
                continue;
            CHECK(symfunc::umbilicity_coefficient(v, k) <= 1e-10);
        }
    }

    std::uniform_real_distribution<double> base(0.1, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const double kb = base(rng);
        CurvatureVector v(std::vector<double>(static_cast<size_t>(n), kb));
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(symfunc::umbilicity_coefficient(v, k)) < 1e-12);
    }
}

TEST_CASE("mean-curvature inequality report") {
    SUBCASE("frozen two-entry example") {
        auto rep = symfunc::maclaurin_report(CurvatureVector({1.0, 2.0}));
        REQUIRE(rep.applicable);
        bool found = false;
        for (const auto& e : rep.entries) {
            if (e.id == "product:r=1") {
                found = true;
                CHECK(e.lhs == doctest::Approx(2.0));
                CHECK(e.rhs == doctest::Approx(2.25));
                CHECK(e.margin == doctest::Approx(0.25));
            }
        }
        CHECK(found);
    }

    SUBCASE("negative entries are rejected as not applicable") {
        auto rep = symfunc::maclaurin_report(CurvatureVector({1.0, -0.5}));
        CHECK_FALSE(rep.applicable);
        CHECK(rep.entries.empty());
    }

    SUBCASE("nonnegative corpus never dips below -1e-12") {
        std::mt19937_64 rng(5150);
        for (int trial = 0; trial < 400; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7);
            auto v = random_vector(rng, n, 0.0, 2.0);
            auto rep = symfunc::maclaurin_report(v);
            REQUIRE(rep.applicable);
            CHECK(rep.min_margin() >= -1e-12);
        }
    }

    SUBCASE("equality detection separates umbilic from spread data") {
        std::mt19937_64 rng(8080);
        std::uniform_real_distribution<double> base(0.1, 1.5);
        std::uniform_real_distribution<double> jitter(-5e-13, 5e-13);
        for (int trial = 0; trial < 150; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7);
            const double kb = base(rng);
            std::vector<double> k(static_cast<size_t>(n), kb);
            for (double& x : k) x += jitter(rng);
            auto rep = symfunc::maclaurin_report(CurvatureVector(k));
            const double spread =
                *std::max_element(k.begin(), k.end()) - *std::min_element(k.begin(), k.end());
            REQUIRE(spread < 1e-10);
            CHECK(rep.max_abs_margin() < 1e-12);
        }
        for (int trial = 0; trial < 150; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7);
            auto v = random_vector(rng, n, 0.1, 2.0);
            std::sort(v.kappa.begin(), v.kappa.end());
            if (v.kappa.back() - v.kappa.front() < 1e-3) v.kappa.back() += 1e-2;
            auto rep = symfunc::maclaurin_report(v);
            CHECK(rep.max_abs_margin() >= 1e-12);
        }
    }

    SUBCASE("chain ordering matches direct root arithmetic") {
        std::mt19937_64 rng(616);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7);
            auto v = random_vector(rng, n, 0.0, 2.0);
            auto p = symfunc::profile(v);
            auto rep = symfunc::maclaurin_report(v);
            for (const auto& e : rep.entries) {
                if (e.id.rfind("chain:r=", 0) != 0) continue;
                const int r = std::stoi(e.id.substr(8));
                const double lhs = std::pow(p.H[static_cast<size_t>(r) + 1], 1.0 / (r + 1));
                const double rhs = std::pow(p.H[static_cast<size_t>(r)], 1.0 / r);
                CHECK(rel_gap(e.lhs, lhs) < 1e-12);
                CHECK(rel_gap(e.rhs, rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("sign classification of Newton rows") {
    using symfunc::SignClass;
    CHECK(symfunc::positivity_check(CurvatureVector({1.0, 2.0, 3.0}), 1) ==
          SignClass::PositiveDefinite);
    CHECK(symfunc::positivity_check(CurvatureVector({-1.0, -2.0, -3.0}), 1) ==
          SignClass::NegativeDefinite);
    CHECK(symfunc::positivity_check(CurvatureVector({2.0, 0.0}), 1, 0.0) ==
          SignClass::Indefinite);  // exact zero entry is a tie
    CHECK(symfunc::positivity_check(CurvatureVector({1.0, -3.0, 0.5}), 1) ==
          SignClass::Indefinite);
    CHECK_THROWS_AS(symfunc::positivity_check(CurvatureVector({1.0}), 1), invalid_input);

    SUBCASE("orientation flip swaps the definite classes for even-order rows") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7);
            auto v = random_vector(rng, n, 0.2, 2.0);
            auto flipped = v;
            for (double& x : flipped.kappa) x = -x;
            for (int r = 0; r < n; ++r) {
                const auto a = symfunc::positivity_check(v, r);
                const auto b = symfunc::positivity_check(flipped, r);
                if (a == SignClass::PositiveDefinite) {
                    // row entries scale by (-1)^r under the flip
                    if (r % 2 == 0)
                        CHECK(b == SignClass::PositiveDefinite);
                    else
                        CHECK(b == SignClass::NegativeDefinite);
                }
            }
        }
    }

    SUBCASE("vanishing curvature order with surplus rank forces a definite row") {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 6);
            const int r = 1 + static_cast<int>(rng() % (n - 2));
            auto head = random_vector(rng, n - 1, 0.3, 2.0);
            const double sr = oracle::subset_sum_sigma(head.kappa, r);
            const double sr1 = oracle::subset_sum_sigma(head.kappa, r + 1);
            if (std::abs(sr) < 1e-9) continue;
            auto k = head.kappa;
            k.push_back(-sr1 / sr);  // forces the (r+1)-st symmetric function to vanish
            CurvatureVector v(std::move(k));
            REQUIRE(std::abs(symfunc::elementary_symmetric(v, r + 1)) <
                    1e-10 * std::pow(1.0 + v.max_abs(), n));
            int nonzero = 0;
            for (double x : v.kappa)
                if (std::abs(x) > 1e-12) ++nonzero;
            if (nonzero <= r) continue;
            CHECK(symfunc::positivity_check(v, r) != SignClass::Indefinite);
        }
    }
}

TEST_CASE("degenerate single-entry vector") {
    CurvatureVector kv({2.5});
    auto p = symfunc::profile(kv);
    CHECK(p.S[0] == 1.0);
    CHECK(p.S[1] == doctest::Approx(2.5));
    CHECK(p.newton(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(symfunc::umbilicity_coefficient(kv, 0)) < 1e-14);
}
