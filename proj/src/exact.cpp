#include "erw/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "erw/errors.hpp"
#include "erw/format.hpp"

namespace erw {

ExactDistribution::ExactDistribution(ERWParams params, std::vector<double> pmf,
                                     double a_n, double v_n, double max_layer_drift)
    : params_(params),
      pmf_(std::move(pmf)),
      a_n_(a_n),
      v_n_(v_n),
      sqrt_v_n_(std::sqrt(v_n)),
      max_layer_drift_(max_layer_drift) {
    const std::size_t m = pmf_.size();
    prefix_.resize(m);
    suffix_.resize(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) prefix_[i] = acc += pmf_[i];
    acc = 0.0;
    for (std::size_t i = m; i-- > 0;) suffix_[i] = acc += pmf_[i];
}

double ExactDistribution::pmf_at(std::int64_t k) const {
    const std::int64_t n = params_.n;
    if (std::llabs(k) > n) return 0.0;
    if (((k % 2) + 2) % 2 != ((n % 2) + 2) % 2) return 0.0;
    return pmf_[static_cast<std::size_t>((k + n) / 2)];
}

double ExactDistribution::standardized(std::int64_t k) const {
    return a_n_ * static_cast<double>(k) / sqrt_v_n_;
}

double ExactDistribution::cdf(double t) const {
    const std::int64_t n = params_.n;
    if (t < static_cast<double>(-n)) return 0.0;
    // largest lattice index i with 2i - n <= t
    const double pos = (t + static_cast<double>(n)) / 2.0;
    std::size_t i = static_cast<std::size_t>(std::floor(pos));
    if (i >= pmf_.size()) i = pmf_.size() - 1;
    return prefix_[i];
}

namespace {

// First lattice index whose value under `value` is >= x (indices ordered by
// increasing value); pmf.size() when none is.
template <typename ValueOf>
std::size_t lower_bound_index(std::size_t size, double x, ValueOf value) {
    std::size_t lo = 0, hi = size;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (value(mid) < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

// First lattice index whose value is strictly > x.
template <typename ValueOf>
std::size_t upper_bound_index(std::size_t size, double x, ValueOf value) {
    std::size_t lo = 0, hi = size;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (value(mid) <= x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

double ExactDistribution::tail(double x) const {
    const std::int64_t n = params_.n;
    const std::size_t i = lower_bound_index(
        pmf_.size(), x, [&](std::size_t j) {
            return a_n_ * static_cast<double>(2 * static_cast<std::int64_t>(j) - n) /
                   sqrt_v_n_;
        });
    return i < pmf_.size() ? suffix_[i] : 0.0;
}

double ExactDistribution::lower_tail(double x) const {
    const std::int64_t n = params_.n;
    const std::size_t i = upper_bound_index(
        pmf_.size(), x, [&](std::size_t j) {
            return a_n_ * static_cast<double>(2 * static_cast<std::int64_t>(j) - n) /
                   sqrt_v_n_;
        });
    return i > 0 ? prefix_[i - 1] : 0.0;
}

double ExactDistribution::tail_nlogn(double x) const {
    const std::int64_t n = params_.n;
    const double scale = std::sqrt(static_cast<double>(n) *
                                   std::log(static_cast<double>(n)));
    const std::size_t i = lower_bound_index(
        pmf_.size(), x, [&](std::size_t j) {
            return static_cast<double>(2 * static_cast<std::int64_t>(j) - n) / scale;
        });
    return i < pmf_.size() ? suffix_[i] : 0.0;
}

ExactDistribution::Moments ExactDistribution::moments() const {
    const std::int64_t n = params_.n;
    // compensated sums: the symmetric case must cancel to ~1e-12 absolute
    double mean = 0.0, mc = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        const double term =
            pmf_[i] * static_cast<double>(2 * static_cast<std::int64_t>(i) - n) - mc;
        const double next = mean + term;
        mc = (next - mean) - term;
        mean = next;
    }
    double var = 0.0, vc = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        const double d = static_cast<double>(2 * static_cast<std::int64_t>(i) - n) - mean;
        const double term = pmf_[i] * d * d - vc;
        const double next = var + term;
        vc = (next - var) - term;
        var = next;
    }
    return {mean, var};
}

ExactDistribution exact_pmf(const ERWParams& params, const CoeffTable& table,
                            const ExactOptions& opts) {
    validate_params(params);
    if (params.n > opts.cap)
        throw resource_error("exact_pmf: n exceeds the DP cap (" +
                             std::to_string(opts.cap) + "); raise the cap to override");
    if (table.n < params.n || table.p != params.p)
        throw domain_error("exact_pmf: coefficient table does not cover (p, n)");

    const std::int64_t n = params.n;
    const double drift = 2.0 * params.p - 1.0;

    // Layer k holds mass over s = 2i - k, i = 0..k.
    std::vector<double> mass(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    mass[0] = 1.0 - params.q;
    mass[1] = params.q;

    double max_drift = 0.0;
    for (std::int64_t k = 1; k < n; ++k) {
        const double c = drift / (2.0 * static_cast<double>(k));
        const std::size_t cells = static_cast<std::size_t>(k) + 1;
        for (std::size_t i = 0; i <= cells; ++i) next[i] = 0.0;
        for (std::size_t i = 0; i < cells; ++i) {
            const double m = mass[i];
            const double s = static_cast<double>(2 * static_cast<std::int64_t>(i) - k);
            // down computed as 0.5 - c*s (not 1 - up): the rounding is then
            // mirror-symmetric in s, so a q = 1/2 start stays symmetric to
            // the last bit. up + down = 1 only to rounding; the layer drift
            // below tracks the difference.
            const double up = 0.5 + c * s;
            const double down = 0.5 - c * s;
            next[i + 1] += m * up;
            next[i] += m * down;
        }
        double total = 0.0;
        for (std::size_t i = 0; i <= cells; ++i) total += next[i];
        max_drift = std::max(max_drift, std::abs(total - 1.0));
        if (opts.renormalize && total > 0.0) {
            const double inv = 1.0 / total;
            for (std::size_t i = 0; i <= cells; ++i) next[i] *= inv;
        }
        mass.swap(next);
    }

    const std::size_t in = static_cast<std::size_t>(n - 1);
    return ExactDistribution(params, std::move(mass), table.a[in], table.v[in],
                             max_drift);
}

void write_exact_csv(std::ostream& out, const ExactDistribution& dist) {
    out << "k,pmf,cdf,x_k\n";
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.support_size(); ++i) {
        const std::int64_t k = dist.support_point(i);
        acc += dist.pmf()[i];
        out << k << ',' << format_double(dist.pmf()[i]) << ',' << format_double(acc)
            << ',' << format_double(dist.standardized(k)) << '\n';
    }
}

}  // namespace erw
