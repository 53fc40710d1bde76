#ifndef ERW_MODEL_HPP
#define ERW_MODEL_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "erw/coeffs.hpp"
#include "erw/rng.hpp"

namespace erw {

// Walk parameters: memory parameter p (probability of copying the remembered
// step), first-step parameter q (probability that X_1 = +1), horizon n.
struct ERWParams {
    double p = 0.5;
    double q = 0.5;
    std::int64_t n = 1;
};

// Throws domain_error unless 0<=p<=1, 0<=q<=1, n>=1.
void validate_params(const ERWParams& params);

// P(X_{k+1} = +1 | S_k = s) = 1/2 + (2p-1) s / (2k): the position process is
// Markov even though the step sequence is not. Throws domain_error when
// |s| > k or s and k have different parity.
double transition_prob(double p, std::int64_t k, std::int64_t s);

// --- per-step sampling primitives -----------------------------------------
//
// Both samplers consume exactly one uniform for X_1 and one per later step,
// so a plan's replicate streams are sampler-agnostic. The memory sampler
// splits its single uniform: with t = u*k, the integer part picks the
// remembered index beta (uniform on 1..k) and the fractional part, which is
// independent of it, decides the Rademacher(p) copy/flip coin.

inline int first_step(double q, double u) { return u < q ? +1 : -1; }

inline int step_markov(double p, std::int64_t k, std::int64_t s, double u) {
    const double prob = 0.5 + (2.0 * p - 1.0) * static_cast<double>(s) /
                                  (2.0 * static_cast<double>(k));
    return u < prob ? +1 : -1;
}

inline int step_memory(double p, const std::int8_t* steps, std::int64_t k, double u) {
    const double t = u * static_cast<double>(k);
    std::int64_t idx = static_cast<std::int64_t>(t);
    if (idx >= k) idx = k - 1;  // u -> 1 rounding guard
    const double frac = t - static_cast<double>(idx);
    const int alpha = frac < p ? +1 : -1;
    return alpha * steps[idx];
}

// ---------------------------------------------------------------------------

struct Path {
    ERWParams params;
    std::vector<std::int8_t> steps;      // X_1..X_n
    std::vector<std::int32_t> positions; // S_0..S_n, S_0 = 0

    std::int64_t horizon() const { return static_cast<std::int64_t>(steps.size()); }
    std::int32_t terminal() const { return positions.back(); }
};

// Ground-truth sampler: keeps the whole history and applies the remembered-
// step rule literally.
Path sample_path_memory(const ERWParams& params, RngStream& rng);

// Same law through the conditional kernel; O(1) working state.
Path sample_path_markov(const ERWParams& params, RngStream& rng);

// Martingale decomposition of a path against its coefficient table:
// M_k = a_k S_k, increments dM, and the quadratic variation
// qv_k = sum_{i<=k} E[dM_i^2 | F_{i-1}] accumulated from the conditional
// variances a_i^2 (1 - (2p-1)^2 (S_{i-1}/(i-1))^2), with the i = 1 term
// equal to a_1^2 = 1 exactly. qv_closed_n evaluates the closed form
// v_n - (2p-1)^2 sum_k (a_{k+1}/a_k)^2 (M_k/k)^2 as an independent route;
// the two must agree to 1e-10 relative.
struct MartingaleView {
    std::vector<double> m;
    std::vector<double> dm;
    std::vector<double> qv;
    double qv_closed_n = 0.0;
};

// Throws domain_error when the path's horizon or p disagrees with the table.
MartingaleView martingale_view(const Path& path, const CoeffTable& table);

// CSV rows `k,X_k,S_k`.
void write_path_csv(std::ostream& out, const Path& path);

}  // namespace erw

#endif
