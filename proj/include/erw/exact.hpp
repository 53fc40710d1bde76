#ifndef ERW_EXACT_HPP
#define ERW_EXACT_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "erw/coeffs.hpp"
#include "erw/model.hpp"

namespace erw {

inline constexpr std::int64_t kDefaultExactCap = 20'000;

struct ExactOptions {
    std::int64_t cap = kDefaultExactCap;
    // Per-layer renormalization is off by default; mass drift is monitored
    // through max_layer_drift instead of being hidden.
    bool renormalize = false;
};

// Exact law of S_n on its parity lattice {-n, -n+2, ..., n}, built by a
// forward DP over the conditional kernel. O(n^2) time, O(n) memory.
class ExactDistribution {
public:
    ExactDistribution(ERWParams params, std::vector<double> pmf, double a_n,
                      double v_n, double max_layer_drift);

    const ERWParams& params() const { return params_; }
    std::int64_t n() const { return params_.n; }
    double a_n() const { return a_n_; }
    double v_n() const { return v_n_; }
    double max_layer_drift() const { return max_layer_drift_; }

    // Support point for lattice index i in [0, n]: k = 2i - n.
    std::int64_t support_point(std::size_t i) const {
        return 2 * static_cast<std::int64_t>(i) - params_.n;
    }
    std::size_t support_size() const { return pmf_.size(); }
    const std::vector<double>& pmf() const { return pmf_; }

    // P(S_n = k); zero off the parity lattice or outside [-n, n].
    double pmf_at(std::int64_t k) const;

    // Standardized abscissa x_k = a_n k / sqrt(v_n).
    double standardized(std::int64_t k) const;

    // Right-continuous CDF P(S_n <= t) on the raw scale.
    double cdf(double t) const;

    // Upper tail P(a_n S_n / sqrt(v_n) >= x); atoms exactly at x are
    // included in the tail. Lower tail P(a_n S_n / sqrt(v_n) <= x) keeps
    // the same boundary-inclusive convention.
    double tail(double x) const;
    double lower_tail(double x) const;

    // Tails on the S_n / sqrt(n log n) scale (critical-regime variant).
    double tail_nlogn(double x) const;

    struct Moments {
        double mean;
        double variance;
    };
    Moments moments() const;

private:
    ERWParams params_;
    std::vector<double> pmf_;     // index i -> k = 2i - n
    std::vector<double> prefix_;  // prefix_[i] = sum_{j<=i} pmf_[j], summed from -n up
    std::vector<double> suffix_;  // suffix_[i] = sum_{j>=i} pmf_[j], summed from +n down
    double a_n_;
    double v_n_;
    double sqrt_v_n_;
    double max_layer_drift_;
};

// Build the exact law. Throws resource_error when n exceeds opts.cap and
// domain_error for invalid params or a table mismatch.
ExactDistribution exact_pmf(const ERWParams& params, const CoeffTable& table,
                            const ExactOptions& opts = {});

// CSV rows `k,pmf,cdf,x_k`.
void write_exact_csv(std::ostream& out, const ExactDistribution& dist);

}  // namespace erw

#endif
