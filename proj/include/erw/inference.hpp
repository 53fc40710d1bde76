#ifndef ERW_INFERENCE_HPP
#define ERW_INFERENCE_HPP

#include <cstdint>

#include "erw/exact.hpp"
#include "erw/montecarlo.hpp"

namespace erw {

struct ConfidenceQuery {
    std::int64_t n = 1;
    std::int64_t s_n = 1;  // observed terminal position
    double kappa = 0.05;   // miscoverage level
};

// Throws domain_error on |s_n| > n, parity mismatch, or kappa outside (0,1).
void validate_query(const ConfidenceQuery& query);

struct PLowerResult {
    double z;        // Phi^{-1}(1 - kappa/2)
    double p_lower;  // (3 - n (z/s_n)^2) / 4, unclamped
    bool clamped_hint;  // true when the raw bound is negative (vacuous)
};

// 1-kappa lower confidence limit for the memory parameter from one observed
// terminal position. The raw value is returned even when negative; the hint
// marks bounds made vacuous by p >= 0. Throws undefined_estimate_error when
// s_n = 0 (the formula divides by S_n).
PLowerResult p_lower_limit(const ConfidenceQuery& query);

struct PositionInterval {
    double half_width;  // z * scale
    double lo;          // -half_width (interval centered at 0; q = 1/2 assumed)
    double hi;
};

// Symmetric interval estimate for S_n under the CLT normalization,
// scale = sqrt(n / (3-4p)) for p < 3/4 or sqrt(n log n) at p = 3/4.
// Centering assumes q = 1/2; no correction for q != 1/2 is applied.
// Throws unsupported_regime_error for p outside (0, 3/4] or p = 1/2.
PositionInterval position_interval(double p, std::int64_t n, double kappa);

struct CoverageResult {
    double p_coverage;         // fraction with p_lower_limit <= p_true
    double position_coverage;  // fraction with S_n inside the interval
    std::int64_t undefined;    // replicates with S_n = 0 (counted as non-coverage)
    std::int64_t reps;
};

// Monte Carlo coverage of both procedures at true parameters, sharing one
// ensemble. Requires the diffusive regime (the p-limit formula needs
// p < 3/4 and excludes the classical points).
CoverageResult coverage_experiment(double p_true, double q, std::int64_t n,
                                   double kappa, std::int64_t reps,
                                   std::uint64_t seed, int threads = 0,
                                   SamplerKind sampler = SamplerKind::markov);

// The same coverage probabilities summed from the exact law instead of
// replicates; the Monte Carlo ones must sit within binomial noise of these.
struct ExactCoverage {
    double p_coverage;
    double position_coverage;
    double undefined_mass;  // P(S_n = 0)
};
ExactCoverage exact_coverage(double p_true, double q, std::int64_t n, double kappa,
                             const ExactOptions& opts = {});

}  // namespace erw

#endif
