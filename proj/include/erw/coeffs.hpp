#ifndef ERW_COEFFS_HPP
#define ERW_COEFFS_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace erw {

enum class Regime { diffusive, critical, superdiffusive, classical };

const char* regime_name(Regime r);

// Classify the memory parameter. p in {0, 1/2} is classical (the walk
// reduces to the simple symmetric one), p in (0, 3/4) diffusive, p = 3/4
// critical, p > 3/4 superdiffusive.
Regime classify_regime(double p);

// Deterministic normalizing sequences for one (p, n):
//   gamma_k = 1 + (2p-1)/k            (k = 1..n-1)
//   a_1 = 1, a_{k+1} = a_k / gamma_k  (k = 1..n)
//   v_k = sum_{i<=k} a_i^2            (k = 1..n)
// a_n * S_n is the natural martingale and v_n its variance scale.
struct CoeffTable {
    double p = 0.5;
    std::int64_t n = 1;
    std::vector<double> gamma;  // gamma[k-1] = gamma_k
    std::vector<double> a;      // a[k-1] = a_k
    std::vector<double> v;      // v[k-1] = v_k
    Regime regime = Regime::classical;

    double a_n() const { return a.back(); }
    double v_n() const { return v.back(); }
};

inline constexpr std::int64_t kDefaultCoeffCap = 1'000'000;

// Build the table by the recursive product. The product form needs no Gamma
// evaluation, so it cannot overflow for n <= 1e6; a_k is exact to one
// rounding per step and v_k is accumulated with compensated summation.
// Throws domain_error for p outside [0,1] or n < 1, resource_error for
// n above the cap.
CoeffTable build_coeffs(double p, std::int64_t n, std::int64_t cap = kDefaultCoeffCap);

enum class VnScale { power, logarithmic };

struct AsymptoticConstants {
    double an_limit;   // lim a_n n^{2p-1}
    double vn_limit;   // lim v_n / scale(n)
    VnScale vn_scale;  // scale(n) = n^{3-4p} or log n
};

// Limits of the normalizing sequences for p in (0, 3/4]:
//   a_n n^{2p-1}      -> Gamma(2p)
//   v_n / n^{3-4p}    -> Gamma(2p)^2 / (3-4p)   (p < 3/4)
//   v_n / log n       -> pi/4                   (p = 3/4)
// Throws unsupported_regime_error outside (0, 3/4].
AsymptoticConstants asymptotic_constants(double p);

// epsilon_n = 2 max_{1<=i<=n} a_i / sqrt(v_n), the constant-free rate that
// controls the martingale-difference bound |dM_i| / sqrt(v_n).
double rate_epsilon(const CoeffTable& table);

struct RateReference {
    double besseen_rate;  // Berry-Esseen rate shape, constant-free
    double cramer_range;  // scale of the valid Cramer x-range
};

// Regime-appropriate rate shapes used to normalize measured distances:
//   p in (0,1/2):  log n / sqrt(n),        x-range sqrt(n)
//   p in (1/2,3/4): log n / n^{(3-4p)/2},  x-range n^{(3-4p)/2}
//   p = 3/4:       log log n / sqrt(log n), x-range sqrt(log n)
// Throws unsupported_regime_error for p outside (0, 3/4] or p = 1/2,
// domain_error for n < 3.
RateReference rate_reference(double p, std::int64_t n);

// a_n through the Gamma-ratio formula Gamma(n) Gamma(2p) / Gamma(n+2p-1),
// via log_gamma. Cross-check route only; requires p > 0.
double a_n_gamma_ratio(double p, std::int64_t n);

// CSV rows `k,gamma_k,a_k,v_k` at full double precision. gamma_n, which the
// table does not need, is filled from the formula so every row is complete.
void write_coeffs_csv(std::ostream& out, const CoeffTable& table);

}  // namespace erw

#endif
