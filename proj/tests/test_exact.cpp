#include <cmath>
#include <sstream>

#include <doctest.h>

#include "erw/errors.hpp"
#include "erw/exact.hpp"
#include "oracle.hpp"

using namespace erw;

namespace {

ExactDistribution make_dist(double p, double q, std::int64_t n,
                            ExactOptions opts = {}) {
    return exact_pmf({p, q, n}, build_coeffs(p, n), opts);
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("n = 1 is the first-step law") {
    const ExactDistribution d = make_dist(0.6, 0.3, 1);
    CHECK(d.pmf_at(-1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(d.pmf_at(1) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("hand-enumerated n = 2 law and its cdf") {
    const ExactDistribution d = make_dist(0.75, 0.5, 2);
    CHECK(d.pmf_at(-2) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(d.pmf_at(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d.pmf_at(2) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(d.cdf(0.0) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(d.cdf(-3.0) == 0.0);
    CHECK(d.cdf(2.0) == 1.0);
    CHECK(d.cdf(1.9) == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("parity: odd n puts no mass at zero") {
    const ExactDistribution d = make_dist(0.3, 0.5, 3);
    CHECK(d.pmf_at(0) == 0.0);
    CHECK(d.pmf_at(2) == 0.0);  // wrong parity for n = 3
    CHECK(d.pmf_at(5) == 0.0);  // outside the support
}

TEST_CASE("DP equals the brute-force history enumeration (n <= 9)") {
    for (double p : {0.25, 0.6, 0.75}) {
        for (double q : {0.3, 0.5}) {
            for (int n = 1; n <= 9; ++n) {
                const auto oracle = erw_test::enumerate_memory_rule(p, q, n);
                const ExactDistribution d = make_dist(p, q, n);
                for (std::int64_t k = -n; k <= n; ++k) {
                    const auto it = oracle.find(k);
                    const double ref = it == oracle.end() ? 0.0 : it->second;
                    CHECK(std::abs(d.pmf_at(k) - ref) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("mass is conserved at every layer") {
    const ExactDistribution d = make_dist(0.3, 0.4, 2000);
    CHECK(d.max_layer_drift() <= 1e-12);
    double total = 0.0;
    for (double w : d.pmf()) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("symmetric start stays bitwise symmetric") {
    for (double p : {0.25, 0.75}) {
        const ExactDistribution d = make_dist(p, 0.5, 501);
        for (std::int64_t k = 1; k <= 501; k += 2)
            CHECK(d.pmf_at(k) == d.pmf_at(-k));
    }
}

TEST_CASE("standardized tail conventions") {
    const ExactDistribution d = make_dist(0.75, 0.5, 100);
    CHECK(d.tail(-1e9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.tail(1e9) == 0.0);
    // boundary atom included in the upper tail
    const double xmax = d.standardized(100);
    CHECK(d.tail(xmax) == doctest::Approx(d.pmf_at(100)).epsilon(1e-12));
    // symmetry identity at zero, n even: tail(0) = (1 + pmf(0)) / 2
    CHECK(d.tail(0.0) == doctest::Approx(0.5 * (1.0 + d.pmf_at(0))).epsilon(1e-13));
    // n odd: exactly 1/2
    const ExactDistribution odd = make_dist(0.75, 0.5, 101);
    CHECK(odd.tail(0.0) == doctest::Approx(0.5).epsilon(1e-13));
    // lower tail mirrors the upper one under symmetry
    CHECK(d.lower_tail(0.0) == doctest::Approx(d.tail(0.0)).epsilon(1e-13));
}

TEST_CASE("moments match the martingale identity") {
    SUBCASE("symmetric start: zero mean") {
        const ExactDistribution d = make_dist(0.3, 0.5, 1000);
        CHECK(std::abs(d.moments().mean) <= 1e-12);
    }
    SUBCASE("classical: variance n") {
        const ExactDistribution d = make_dist(0.5, 0.5, 1000);
        CHECK(d.moments().variance == doctest::Approx(1000.0).epsilon(1e-9));
    }
    SUBCASE("asymmetric start: mean (2q-1)/a_n") {
        const ExactDistribution d = make_dist(0.25, 0.7, 100);
        const double expected = 0.4 / d.a_n();
        CHECK(d.moments().mean == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("cap is enforced and can be overridden") {
    CHECK_THROWS_AS(make_dist(0.5, 0.5, 20'001), resource_error);
    ExactOptions opts;
    opts.cap = 25'000;
    CHECK_NOTHROW(make_dist(0.5, 0.5, 20'001, opts));
}

TEST_CASE("renormalization flag keeps layers on the simplex") {
    ExactOptions opts;
    opts.renormalize = true;
    const ExactDistribution d = make_dist(0.6, 0.5, 500, opts);
    double total = 0.0;
    for (double w : d.pmf()) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-14);
}

TEST_CASE("csv export") {
    const ExactDistribution d = make_dist(0.75, 0.5, 2);
    std::ostringstream out;
    write_exact_csv(out, d);
    const std::string csv = out.str();
    CHECK(csv.find("k,pmf,cdf,x_k\n") == 0);
    CHECK(csv.find("-2,0.375,0.375,") != std::string::npos);
    CHECK(csv.find("0,0.25,0.625,0\n") != std::string::npos);
}

TEST_CASE("table mismatch is rejected") {
    const CoeffTable t = build_coeffs(0.6, 50);
    CHECK_THROWS_AS(exact_pmf({0.7, 0.5, 50}, t), domain_error);
    CHECK_THROWS_AS(exact_pmf({0.6, 0.5, 60}, t), domain_error);
}

}  // TEST_SUITE
