#include "erw/inference.hpp"

#include <cmath>
#include <cstdlib>

#include "erw/errors.hpp"
#include "erw/special.hpp"

namespace erw {

void validate_query(const ConfidenceQuery& query) {
    if (query.n < 1)
        throw domain_error("confidence query: n must be >= 1");
    if (std::llabs(query.s_n) > query.n)
        throw domain_error("confidence query: |s_n| must not exceed n");
    if (((query.s_n % 2) + 2) % 2 != ((query.n % 2) + 2) % 2)
        throw domain_error("confidence query: s_n and n must have the same parity");
    if (!(query.kappa > 0.0 && query.kappa < 1.0))
        throw domain_error("confidence query: kappa must lie in (0, 1)");
}

namespace {

double p_lower_raw(std::int64_t n, std::int64_t s_n, double z) {
    const double r = z / static_cast<double>(s_n);
    return 0.25 * (3.0 - static_cast<double>(n) * r * r);
}

}  // namespace

PLowerResult p_lower_limit(const ConfidenceQuery& query) {
    validate_query(query);
    if (query.s_n == 0)
        throw undefined_estimate_error(
            "p_lower_limit: estimate undefined at this observation (S_n = 0)");
    PLowerResult res{};
    res.z = normal_quantile(1.0 - query.kappa / 2.0);
    res.p_lower = p_lower_raw(query.n, query.s_n, res.z);
    res.clamped_hint = res.p_lower < 0.0;
    return res;
}

PositionInterval position_interval(double p, std::int64_t n, double kappa) {
    if (!(p > 0.0 && p <= 0.75) || p == 0.5)
        throw unsupported_regime_error(
            "position_interval: p must lie in (0, 3/4] with p != 1/2");
    if (n < 1)
        throw domain_error("position_interval: n must be >= 1");
    if (!(kappa > 0.0 && kappa < 1.0))
        throw domain_error("position_interval: kappa must lie in (0, 1)");
    const double z = normal_quantile(1.0 - kappa / 2.0);
    const double nd = static_cast<double>(n);
    const double scale = p < 0.75 ? std::sqrt(nd / (3.0 - 4.0 * p))
                                  : std::sqrt(nd * std::log(nd));
    const double half = z * scale;
    return {half, -half, half};
}

namespace {

void require_diffusive(double p_true) {
    if (classify_regime(p_true) != Regime::diffusive)
        throw unsupported_regime_error(
            "coverage: the p-limit formula requires the diffusive regime "
            "(p in (0, 3/4), p != 1/2)");
}

}  // namespace

CoverageResult coverage_experiment(double p_true, double q, std::int64_t n,
                                   double kappa, std::int64_t reps,
                                   std::uint64_t seed, int threads,
                                   SamplerKind sampler) {
    require_diffusive(p_true);
    if (!(kappa > 0.0 && kappa < 1.0))
        throw domain_error("coverage: kappa must lie in (0, 1)");
    const SimulationPlan plan{{p_true, q, n}, reps, seed, sampler};
    const Ensemble ens = run_ensemble(plan, threads);

    const double z = normal_quantile(1.0 - kappa / 2.0);
    const double half = position_interval(p_true, n, kappa).half_width;
    CoverageResult res{};
    res.reps = reps;
    std::int64_t p_hits = 0, pos_hits = 0;
    for (const auto& [k, c] : ens.terminal_counts) {
        if (std::abs(static_cast<double>(k)) <= half) pos_hits += c;
        if (k == 0)
            res.undefined += c;  // estimate undefined: counted as non-coverage
        else if (p_lower_raw(n, k, z) <= p_true)
            p_hits += c;
    }
    res.p_coverage = static_cast<double>(p_hits) / static_cast<double>(reps);
    res.position_coverage = static_cast<double>(pos_hits) / static_cast<double>(reps);
    return res;
}

ExactCoverage exact_coverage(double p_true, double q, std::int64_t n, double kappa,
                             const ExactOptions& opts) {
    require_diffusive(p_true);
    if (!(kappa > 0.0 && kappa < 1.0))
        throw domain_error("coverage: kappa must lie in (0, 1)");
    const CoeffTable table = build_coeffs(p_true, n);
    const ExactDistribution dist = exact_pmf({p_true, q, n}, table, opts);
    const double z = normal_quantile(1.0 - kappa / 2.0);
    const double half = position_interval(p_true, n, kappa).half_width;

    ExactCoverage res{};
    for (std::size_t i = 0; i < dist.support_size(); ++i) {
        const std::int64_t k = dist.support_point(i);
        const double mass = dist.pmf()[i];
        if (k == 0) {
            res.undefined_mass += mass;
        } else if (p_lower_raw(n, k, z) <= p_true) {
            res.p_coverage += mass;
        }
        if (std::abs(static_cast<double>(k)) <= half) res.position_coverage += mass;
    }
    return res;
}

}  // namespace erw
