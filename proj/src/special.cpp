#include "erw/special.hpp"

#include <cmath>

#include "erw/errors.hpp"

namespace erw {

namespace {

// B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma.
constexpr double kStirlingCoeff[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

double log_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double c : kStirlingCoeff) {
        series += c * power;
        power *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + series;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw domain_error("log_gamma: argument must be positive");
    if (x >= 12.0)
        return log_gamma_stirling(x);
    // Shift into the asymptotic range and divide the product back out.
    double shifted = x;
    double log_prod = 0.0;
    while (shifted < 12.0) {
        log_prod += std::log(shifted);
        shifted += 1.0;
    }
    return log_gamma_stirling(shifted) - log_prod;
}

double normal_cdf(double t) {
    return 0.5 * std::erfc(-t * M_SQRT1_2);
}

double normal_tail(double x) {
    return 0.5 * std::erfc(x * M_SQRT1_2);
}

double normal_pdf(double x) {
    constexpr double kInvSqrtTwoPi = 0.39894228040143267794;
    return kInvSqrtTwoPi * std::exp(-0.5 * x * x);
}

namespace {

// Acklam's coefficients for the central and tail rational approximations.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam_estimate(double u) {
    constexpr double low = 0.02425;
    if (u < low) {
        const double r = std::sqrt(-2.0 * std::log(u));
        return (((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r + kC[5]) /
               ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
    }
    if (u > 1.0 - low) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - u));
        return -(((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r + kC[5]) /
               ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
    }
    const double s = u - 0.5;
    const double r = s * s;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * s /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw domain_error("normal_quantile: argument must lie in (0, 1)");
    double z = acklam_estimate(u);
    // One Newton step against the erfc-based CDF. Work on the side with the
    // smaller probability so the residual keeps relative accuracy.
    if (u > 0.5) {
        const double err = normal_tail(z) - (1.0 - u);
        z += err / normal_pdf(z);
    } else {
        const double err = normal_cdf(z) - u;
        z -= err / normal_pdf(z);
    }
    return z;
}

}  // namespace erw
