#include <cmath>
#include <sstream>

#include <doctest.h>

#include "erw/coeffs.hpp"
#include "erw/errors.hpp"
#include "erw/special.hpp"

using namespace erw;

TEST_SUITE("coeffs") {

TEST_CASE("p = 1/2 gives the classical constants") {
    const CoeffTable t = build_coeffs(0.5, 100);
    for (double a : t.a) CHECK(a == 1.0);
    CHECK(t.v_n() == 100.0);
    CHECK(t.regime == Regime::classical);
}

TEST_CASE("hand-computed tables at n = 3") {
    SUBCASE("p = 0.75") {
        const CoeffTable t = build_coeffs(0.75, 3);
        CHECK(t.gamma[0] == 1.5);
        CHECK(t.gamma[1] == 1.25);
        CHECK(t.a[0] == 1.0);
        CHECK(t.a[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(t.a[2] == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
        CHECK(t.v[2] == doctest::Approx(389.0 / 225.0).epsilon(1e-15));
        CHECK(t.regime == Regime::critical);
    }
    SUBCASE("p = 0.25") {
        const CoeffTable t = build_coeffs(0.25, 3);
        CHECK(t.gamma[0] == 0.5);
        CHECK(t.gamma[1] == 0.75);
        CHECK(t.a[1] == 2.0);
        CHECK(t.a[2] == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
        CHECK(t.regime == Regime::diffusive);
    }
}

TEST_CASE("recurrence and monotonicity invariants") {
    for (double p : {0.1, 0.25, 0.4, 0.6, 0.75, 0.9, 1.0}) {
        const CoeffTable t = build_coeffs(p, 500);
        CHECK(t.a[0] == 1.0);
        CHECK(t.v[0] == 1.0);
        for (std::size_t k = 0; k + 1 < t.a.size(); ++k) {
            CHECK(t.a[k + 1] == t.a[k] / t.gamma[k]);  // one rounding, same op
            CHECK(t.v[k + 1] > t.v[k]);
            if (p < 0.5) CHECK(t.a[k + 1] > t.a[k]);
            if (p > 0.5) CHECK(t.a[k + 1] < t.a[k]);
            if (p == 0.5) CHECK(t.a[k + 1] == 1.0);
        }
    }
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(0.0) == Regime::classical);
    CHECK(classify_regime(0.5) == Regime::classical);
    CHECK(classify_regime(0.3) == Regime::diffusive);
    CHECK(classify_regime(0.6) == Regime::diffusive);
    CHECK(classify_regime(0.75) == Regime::critical);
    CHECK(classify_regime(0.9) == Regime::superdiffusive);
    CHECK(classify_regime(1.0) == Regime::superdiffusive);
}

TEST_CASE("product route agrees with the Gamma-ratio route to 1e-10") {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const CoeffTable t = build_coeffs(p, 1000);
        for (std::int64_t k : {2, 10, 100, 537, 1000}) {
            const double ref = a_n_gamma_ratio(p, k);
            const double got = t.a[static_cast<std::size_t>(k - 1)];
            CHECK(std::abs(got - ref) <= 1e-10 * got);
        }
    }
}

TEST_CASE("degenerate endpoints of p") {
    // p = 1: gamma_k = 1 + 1/k, a_k = 1/k
    const CoeffTable one = build_coeffs(1.0, 50);
    CHECK(one.a[4] == doctest::Approx(0.2).epsilon(1e-14));
    // p = 0: gamma_1 = 0, so a_k = +inf from k = 2 on; accepted, not thrown
    const CoeffTable zero = build_coeffs(0.0, 5);
    CHECK(zero.a[0] == 1.0);
    CHECK(std::isinf(zero.a[1]));
    CHECK(zero.regime == Regime::classical);
}

TEST_CASE("asymptotic constants") {
    SUBCASE("identity case p = 1/2") {
        const AsymptoticConstants c = asymptotic_constants(0.5);
        CHECK(c.an_limit == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(c.vn_limit == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(c.vn_scale == VnScale::power);
    }
    SUBCASE("critical case") {
        const AsymptoticConstants c = asymptotic_constants(0.75);
        CHECK(c.vn_limit == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
        CHECK(c.vn_scale == VnScale::logarithmic);
    }
    SUBCASE("p = 0.25: Gamma(1/2)^2/2 = pi/2") {
        const AsymptoticConstants c = asymptotic_constants(0.25);
        CHECK(c.vn_limit == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(asymptotic_constants(0.8), unsupported_regime_error);
    CHECK_THROWS_AS(asymptotic_constants(0.0), unsupported_regime_error);
}

TEST_CASE("rate_epsilon and its monotone decay") {
    const CoeffTable half = build_coeffs(0.5, 100);
    CHECK(rate_epsilon(half) == doctest::Approx(0.2).epsilon(1e-15));

    for (double p : {0.25, 0.6, 0.75}) {
        const CoeffTable t = build_coeffs(p, 2000);
        double amax = 0.0;
        double prev = 1.0 / 0.0;
        for (std::size_t k = 0; k < t.a.size(); ++k) {
            amax = std::max(amax, t.a[k]);
            const double eps = 2.0 * amax / std::sqrt(t.v[k]);
            CHECK(eps <= prev * (1.0 + 1e-14));
            prev = eps;
        }
        // max attained at the monotone end
        if (p > 0.5) CHECK(rate_epsilon(t) == 2.0 / std::sqrt(t.v_n()));
        if (p < 0.5) CHECK(rate_epsilon(t) == 2.0 * t.a_n() / std::sqrt(t.v_n()));
    }
}

TEST_CASE("rate_reference shapes") {
    CHECK(rate_reference(0.25, 10000).besseen_rate ==
          doctest::Approx(0.092103403719761827).epsilon(1e-13));
    CHECK(rate_reference(0.6, 10000).besseen_rate ==
          doctest::Approx(0.5811331902860807562).epsilon(1e-13));
    CHECK(rate_reference(0.75, 10000).besseen_rate ==
          doctest::Approx(0.73160903853996316542).epsilon(1e-13));
    CHECK(rate_reference(0.25, 10000).cramer_range == doctest::Approx(100.0));
    CHECK(rate_reference(0.6, 10000).cramer_range ==
          doctest::Approx(std::pow(1e4, 0.3)).epsilon(1e-13));
    CHECK_THROWS_AS(rate_reference(0.5, 100), unsupported_regime_error);
    CHECK_THROWS_AS(rate_reference(0.8, 100), unsupported_regime_error);
    CHECK_THROWS_AS(rate_reference(0.25, 2), domain_error);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_coeffs(1.5, 10), domain_error);
    CHECK_THROWS_AS(build_coeffs(-0.1, 10), domain_error);
    CHECK_THROWS_AS(build_coeffs(0.5, 0), domain_error);
    CHECK_THROWS_AS(build_coeffs(0.5, 2'000'000), resource_error);
    CHECK_NOTHROW(build_coeffs(0.5, 2'000'000, 3'000'000));
}

TEST_CASE("csv export") {
    const CoeffTable t = build_coeffs(0.75, 3);
    std::ostringstream out;
    write_coeffs_csv(out, t);
    const std::string csv = out.str();
    CHECK(csv.find("k,gamma_k,a_k,v_k\n") == 0);
    CHECK(csv.find("1,1.5,1,1\n") != std::string::npos);
    CHECK(csv.find("3,1.1666666666666667,0.53333333333333333,1.7288888888888889\n") !=
          std::string::npos);
}

}  // TEST_SUITE
