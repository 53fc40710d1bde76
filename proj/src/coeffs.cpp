#include "erw/coeffs.hpp"

#include <cmath>
#include <ostream>

#include "erw/errors.hpp"
#include "erw/format.hpp"
#include "erw/special.hpp"

namespace erw {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::diffusive: return "diffusive";
        case Regime::critical: return "critical";
        case Regime::superdiffusive: return "superdiffusive";
        case Regime::classical: return "classical";
    }
    return "?";
}

Regime classify_regime(double p) {
    if (p == 0.0 || p == 0.5) return Regime::classical;
    if (p < 0.75) return Regime::diffusive;
    if (p == 0.75) return Regime::critical;
    return Regime::superdiffusive;
}

CoeffTable build_coeffs(double p, std::int64_t n, std::int64_t cap) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("build_coeffs: p must lie in [0, 1]");
    if (n < 1)
        throw domain_error("build_coeffs: n must be >= 1");
    if (n > cap)
        throw resource_error("build_coeffs: n exceeds the coefficient cap (" +
                             std::to_string(cap) + "); raise the cap to override");

    CoeffTable t;
    t.p = p;
    t.n = n;
    t.regime = classify_regime(p);
    t.gamma.resize(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    t.a.resize(static_cast<std::size_t>(n));
    t.v.resize(static_cast<std::size_t>(n));

    const double drift = 2.0 * p - 1.0;
    double a = 1.0;
    double v = 1.0;  // v_1 = a_1^2
    double comp = 0.0;  // Kahan carry for v
    t.a[0] = 1.0;
    t.v[0] = 1.0;
    for (std::int64_t k = 1; k < n; ++k) {
        const double gamma = 1.0 + drift / static_cast<double>(k);
        t.gamma[static_cast<std::size_t>(k - 1)] = gamma;
        a /= gamma;  // gamma_1 = 0 at p = 0: a degenerates to +inf, by design
        const double term = a * a - comp;
        const double next = v + term;
        comp = (next - v) - term;
        v = next;
        t.a[static_cast<std::size_t>(k)] = a;
        t.v[static_cast<std::size_t>(k)] = v;
    }
    // The product stays far from the double range for any p in (0,1]:
    // a_n <= n for p >= 1/(2n) and a_n ~ Gamma(2p) n^{1-2p} at worst.
    if (p > 0.0 && !std::isfinite(v))
        throw domain_error("build_coeffs: coefficient overflow (unexpected)");
    return t;
}

AsymptoticConstants asymptotic_constants(double p) {
    if (!(p > 0.0 && p <= 0.75))
        throw unsupported_regime_error("asymptotic_constants: p must lie in (0, 3/4]");
    AsymptoticConstants c{};
    c.an_limit = std::exp(log_gamma(2.0 * p));
    if (p < 0.75) {
        c.vn_limit = c.an_limit * c.an_limit / (3.0 - 4.0 * p);
        c.vn_scale = VnScale::power;
    } else {
        c.vn_limit = M_PI / 4.0;
        c.vn_scale = VnScale::logarithmic;
    }
    return c;
}

double rate_epsilon(const CoeffTable& table) {
    // a is monotone in k (increasing for p < 1/2, decreasing for p > 1/2),
    // but a plain scan costs nothing and assumes nothing.
    double amax = 0.0;
    for (double a : table.a) amax = std::max(amax, a);
    return 2.0 * amax / std::sqrt(table.v_n());
}

RateReference rate_reference(double p, std::int64_t n) {
    if (!(p > 0.0 && p <= 0.75) || p == 0.5)
        throw unsupported_regime_error(
            "rate_reference: p must lie in (0, 3/4] with p != 1/2");
    if (n < 3)
        throw domain_error("rate_reference: n must be >= 3");
    const double logn = std::log(static_cast<double>(n));
    RateReference r{};
    if (p < 0.5) {
        r.besseen_rate = logn / std::sqrt(static_cast<double>(n));
        r.cramer_range = std::sqrt(static_cast<double>(n));
    } else if (p < 0.75) {
        const double scale = std::pow(static_cast<double>(n), (3.0 - 4.0 * p) / 2.0);
        r.besseen_rate = logn / scale;
        r.cramer_range = scale;
    } else {
        r.besseen_rate = std::log(logn) / std::sqrt(logn);
        r.cramer_range = std::sqrt(logn);
    }
    return r;
}

double a_n_gamma_ratio(double p, std::int64_t n) {
    if (!(p > 0.0))
        throw domain_error("a_n_gamma_ratio: p must be positive");
    const double x = static_cast<double>(n);
    return std::exp(log_gamma(x) + log_gamma(2.0 * p) - log_gamma(x + 2.0 * p - 1.0));
}

void write_coeffs_csv(std::ostream& out, const CoeffTable& table) {
    out << "k,gamma_k,a_k,v_k\n";
    const double drift = 2.0 * table.p - 1.0;
    for (std::int64_t k = 1; k <= table.n; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        const double gamma = k < table.n ? table.gamma[i]
                                         : 1.0 + drift / static_cast<double>(k);
        out << k << ',' << format_double(gamma) << ',' << format_double(table.a[i])
            << ',' << format_double(table.v[i]) << '\n';
    }
}

}  // namespace erw
