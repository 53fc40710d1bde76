#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "erw/diagnostics.hpp"
#include "erw/errors.hpp"
#include "erw/special.hpp"

using namespace erw;

namespace {

ExactDistribution make_dist(double p, double q, std::int64_t n) {
    return exact_pmf({p, q, n}, build_coeffs(p, n));
}

std::vector<double> linspace(double a, double b, int pts) {
    std::vector<double> xs;
    for (int i = 0; i < pts; ++i)
        xs.push_back(a + (b - a) * static_cast<double>(i) / (pts - 1));
    return xs;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("regime gate") {
    CHECK_THROWS_AS(require_diagnostic_regime(0.5), unsupported_regime_error);
    CHECK_THROWS_AS(require_diagnostic_regime(0.0), unsupported_regime_error);
    CHECK_THROWS_AS(require_diagnostic_regime(0.8), unsupported_regime_error);
    CHECK_THROWS_AS(require_diagnostic_regime(1.0), unsupported_regime_error);
    CHECK_NOTHROW(require_diagnostic_regime(0.25));
    CHECK_NOTHROW(require_diagnostic_regime(0.75));
    CHECK_NOTHROW(require_diagnostic_regime(0.5, true));   // classical benchmark
    CHECK_THROWS_AS(require_diagnostic_regime(0.8, true), unsupported_regime_error);
    CHECK_THROWS_AS(require_diagnostic_regime(0.0, true), unsupported_regime_error);
}

TEST_CASE("besseen distance of synthetic laws") {
    SUBCASE("point mass at zero") {
        const auto d = make_discrete_distribution({0.0}, {1.0});
        CHECK(besseen_distance(d) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("fair +-1 coin (classical n = 1, standardized)") {
        const auto d = make_discrete_distribution({-1.0, 1.0}, {0.5, 0.5});
        // sup attained at t = 1 (and -1): |Phi(1) - 1/2|
        CHECK(besseen_distance(d) ==
              doctest::Approx(0.84134474606854294859 - 0.5).epsilon(1e-13));
    }
    SUBCASE("empty law is rejected") {
        StandardizedDistribution empty;
        CHECK_THROWS_AS(besseen_distance(empty), domain_error);
    }
}

TEST_CASE("besseen distance decays with n on exact laws (p = 0.25)") {
    const double d100 = besseen_distance(standardize(make_dist(0.25, 0.5, 100)));
    const double d1000 = besseen_distance(standardize(make_dist(0.25, 0.5, 1000)));
    const double d10000 = besseen_distance(standardize(make_dist(0.25, 0.5, 10000)));
    CHECK(d100 > d1000);
    CHECK(d1000 > d10000);
    // the measured staircase floor: D ~ phi(0) sqrt(3-4p) / sqrt(n)
    CHECK(d10000 == doctest::Approx(0.564 / 100.0).epsilon(0.05));
}

TEST_CASE("besseen_trend assembles the paired report") {
    const DiagnosticsReport rep =
        besseen_trend(0.25, 0.5, {100, 1000}, Source::exact);
    REQUIRE(rep.grid.size() == 2);
    CHECK(rep.kind == ReportKind::besseen);
    CHECK(rep.values[0] > rep.values[1]);
    REQUIRE(rep.rate_reference.size() == 2);
    CHECK(rep.rate_reference[1] ==
          doctest::Approx(std::log(1000.0) / std::sqrt(1000.0)).epsilon(1e-13));
}

TEST_CASE("cramer ratio: exact identities and conventions") {
    const ExactDistribution dist = make_dist(0.75, 0.5, 100);
    const auto view = standardize(dist);
    const CramerCurves curves = cramer_ratio_curve(view, {0.0, 1e9});
    // x = 0, even n: ratio = 2 P(Z >= 0) = 1 + P(S_n = 0)
    CHECK(curves.upper.values[0] ==
          doctest::Approx(1.0 + dist.pmf_at(0)).epsilon(1e-13));
    CHECK(curves.lower.values[0] ==
          doctest::Approx(1.0 + dist.pmf_at(0)).epsilon(1e-13));
    // beyond the support the tail is empty
    CHECK(curves.upper.values[1] == 0.0);
}

TEST_CASE("cramer ratio stays near 1 inside the domain of attraction") {
    const auto view = standardize(make_dist(0.2, 0.5, 2000));
    const CramerCurves curves = cramer_ratio_curve(view, linspace(0.0, 2.0, 21));
    for (double r : curves.upper.values) CHECK(r == doctest::Approx(1.0).epsilon(0.12));
    for (double r : curves.lower.values) CHECK(r == doctest::Approx(1.0).epsilon(0.12));
}

TEST_CASE("cramer soft-range flags") {
    const auto view = standardize(make_dist(0.25, 0.5, 100));
    const double soft = cramer_soft_range(0.25, 100);  // 100^{1/6} ~ 2.154
    const CramerCurves curves = cramer_ratio_curve(view, {1.0, 2.0, 2.5, 3.0});
    CHECK(curves.upper.flags == std::vector<int>{0, 0, 1, 1});
    CHECK(soft == doctest::Approx(std::pow(100.0, 1.0 / 6.0)).epsilon(1e-13));
}

TEST_CASE("cramer gating honors the classical override") {
    const auto view = standardize(make_dist(0.5, 0.5, 200));
    CHECK_THROWS_AS(cramer_ratio_curve(view, {0.0}), unsupported_regime_error);
    CHECK_NOTHROW(cramer_ratio_curve(view, {0.0}, true));
}

TEST_CASE("monte-carlo cramer curve agrees with the exact one within 3 sigma") {
    const ERWParams params{0.3, 0.5, 1000};
    const CoeffTable table = build_coeffs(0.3, 1000);
    const ExactDistribution dist = exact_pmf(params, table);
    const auto exact_view = standardize(dist);
    const SimulationPlan plan{params, 100'000, 11, SamplerKind::markov};
    const auto mc_view = standardize(run_ensemble(plan), table);

    const std::vector<double> xs = linspace(0.0, 2.0, 11);
    const CramerCurves ex = cramer_ratio_curve(exact_view, xs);
    const CramerCurves mc = cramer_ratio_curve(mc_view, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pexact = dist.tail(xs[i]);
        const double sigma =
            3.0 * std::sqrt(pexact * (1.0 - pexact) / 100'000.0) / normal_tail(xs[i]);
        CHECK(std::abs(mc.upper.values[i] - ex.upper.values[i]) <= sigma);
    }
    CHECK(mc.upper.source == Source::montecarlo);
}

TEST_CASE("nlogn normalization is tied to the critical regime") {
    const ExactDistribution crit = make_dist(0.75, 0.5, 500);
    CHECK_NOTHROW(standardize(crit, Normalization::nlogn));
    const ExactDistribution diff = make_dist(0.3, 0.5, 500);
    CHECK_THROWS_AS(standardize(diff, Normalization::nlogn), domain_error);
    // at p = 3/4 both normalizations converge to N(0,1); ratios near 1 for small x
    const CramerCurves curves =
        cramer_ratio_curve(standardize(crit, Normalization::nlogn), {0.0, 0.5});
    CHECK(curves.upper.values[0] == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("llt ratio: parity zeros, flatness, lattice factor near 2") {
    const ExactDistribution dist = make_dist(0.25, 0.5, 1000);
    const DiagnosticsReport rep = llt_ratio(dist, {-3, -2, 0, 1, 2, 44});
    // n even: odd k are unattainable
    CHECK(rep.values[0] == 0.0);
    CHECK(rep.values[3] == 0.0);
    CHECK(rep.values[1] > 0.0);

    // flatness over the attainable band |k| <= n^0.55
    std::vector<std::int64_t> ks;
    for (std::int64_t k = -44; k <= 44; k += 2) ks.push_back(k);
    const DiagnosticsReport band = llt_ratio(dist, ks);
    double mean = 0.0;
    for (double r : band.values) mean += r;
    mean /= static_cast<double>(band.values.size());
    double var = 0.0;
    for (double r : band.values) var += (r - mean) * (r - mean);
    var /= static_cast<double>(band.values.size());
    CHECK(std::sqrt(var) / mean < 0.01);

    REQUIRE(band.lattice_factor.has_value());
    CHECK(*band.lattice_factor == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("llt ratio flags beyond the regime k-range") {
    const ExactDistribution dist = make_dist(0.25, 0.5, 100);
    const double soft = llt_soft_range(0.25, 100);  // 100^{2/3} ~ 21.5
    const DiagnosticsReport rep = llt_ratio(dist, {20, 22});
    CHECK(soft == doctest::Approx(std::pow(100.0, 2.0 / 3.0)).epsilon(1e-13));
    CHECK(rep.flags == std::vector<int>{0, 1});
}

TEST_CASE("llt sup distance dominates the nearest unattainable point") {
    const ExactDistribution dist = make_dist(0.25, 0.5, 500);
    // k* = 1 is unattainable (n even) and next to the mode
    const double xk = dist.standardized(1);
    const double density =
        dist.a_n() / std::sqrt(2.0 * M_PI * dist.v_n()) * std::exp(-0.5 * xk * xk);
    CHECK(llt_sup_distance(dist) >= density * (1.0 - 1e-12));
}

TEST_CASE("llt sup trend records the reference shapes") {
    const DiagnosticsReport rep = llt_sup_trend(0.25, 0.5, {100, 1000});
    REQUIRE(rep.values.size() == 2);
    CHECK(rep.values[0] > rep.values[1]);  // L decays in n
    CHECK(rep.rate_reference[0] ==
          doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-13));
    const DiagnosticsReport rep2 = llt_sup_trend(0.6, 0.5, {100, 1000});
    CHECK(rep2.rate_reference[1] ==
          doctest::Approx(std::log(1000.0) / std::pow(1000.0, 0.8)).epsilon(1e-13));
    CHECK_THROWS_AS(llt_sup_trend(0.75, 0.5, {100}), domain_error);
}

TEST_CASE("llt operations refuse non-exact regimes") {
    CHECK_THROWS_AS(llt_ratio(make_dist(0.5, 0.5, 100), {0}), unsupported_regime_error);
    CHECK_THROWS_AS(llt_sup_distance(make_dist(0.8, 0.5, 100)),
                    unsupported_regime_error);
}

TEST_CASE("mdp curve: identities, trend, and infinities") {
    SUBCASE("x = 0 reproduces the symmetry identity") {
        const DiagnosticsReport rep = mdp_curve({0.25, 0.5, 0}, 0.0, 0.25, {100, 2500});
        const ExactDistribution d100 = make_dist(0.25, 0.5, 100);
        const double b2 = std::sqrt(100.0);  // (100^{1/4})^2
        const double expected = std::log(0.5 * (1.0 + d100.pmf_at(0))) / b2;
        CHECK(rep.values[0] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(rep.values[1]) < std::abs(rep.values[0]));  // -> 0
        CHECK(rep.rate_reference[0] == 0.0);
    }
    SUBCASE("x = 1 converges toward -1/2") {
        const DiagnosticsReport rep =
            mdp_curve({0.25, 0.5, 0}, 1.0, 0.25, {100, 10000});
        CHECK(std::abs(rep.values[1] + 0.5) < std::abs(rep.values[0] + 0.5));
        CHECK(std::abs(rep.values[1] + 0.5) < 0.125);  // within 25% of -0.5
        CHECK(rep.rate_reference[0] == -0.5);
    }
    SUBCASE("tail beyond the support reports -infinity") {
        const DiagnosticsReport rep = mdp_curve({0.25, 0.5, 0}, 50.0, 0.25, {100});
        CHECK(std::isinf(rep.values[0]));
        CHECK(rep.values[0] < 0.0);
    }
}

TEST_CASE("mdp validation") {
    CHECK_THROWS_AS(mdp_curve({0.25, 0.5, 0}, 1.0, 0.6, {100}), domain_error);
    CHECK_THROWS_AS(mdp_curve({0.6, 0.5, 0}, 1.0, 0.4, {100}), domain_error);
    CHECK_NOTHROW(mdp_curve({0.6, 0.5, 0}, 1.0, 0.2, {100}));
    CHECK_THROWS_AS(mdp_curve({0.75, 0.5, 0}, 1.0, 0.1, {100}), domain_error);
    CHECK_THROWS_AS(mdp_curve({0.25, 0.5, 0}, -1.0, 0.25, {100}), domain_error);
    CHECK_THROWS_AS(mdp_curve({0.5, 0.5, 0}, 1.0, 0.25, {100}),
                    unsupported_regime_error);
}

TEST_CASE("report csv layout") {
    const DiagnosticsReport rep = mdp_curve({0.25, 0.5, 0}, 1.0, 0.25, {100});
    std::ostringstream out;
    write_report_csv(out, rep);
    CHECK(out.str().find("n,value,rate_reference,flag\n") == 0);
    CHECK(out.str().find("100,") != std::string::npos);

    const auto view = standardize(make_dist(0.25, 0.5, 100));
    const CramerCurves curves = cramer_ratio_curve(view, {0.5});
    std::ostringstream out2;
    write_report_csv(out2, curves.upper);
    CHECK(out2.str().find("x,value,rate_reference,flag\n") == 0);
}

}  // TEST_SUITE
