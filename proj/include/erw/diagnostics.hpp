#ifndef ERW_DIAGNOSTICS_HPP
#define ERW_DIAGNOSTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "erw/coeffs.hpp"
#include "erw/exact.hpp"
#include "erw/montecarlo.hpp"

namespace erw {

enum class ReportKind { besseen, cramer_ratio, llt_ratio, llt_sup, mdp_curve };
enum class Source { exact, montecarlo };

const char* report_kind_name(ReportKind k);
const char* source_name(Source s);

// The normal-approximation diagnostics cover p in (0, 3/4] with p != 1/2.
// p in {0, 1/2} is the classical walk and p > 3/4 has a non-normal limit;
// both are refused. allow_classical lifts the gate for p = 1/2 only, so the
// classical curve can still be produced as a benchmark row.
void require_diagnostic_regime(double p, bool allow_classical = false);

// Soft validity ranges of the approximations, taken at face value from the
// known o(.) thresholds: points beyond them are flagged, never rejected.
double cramer_soft_range(double p, std::int64_t n);   // n^{1/6} / n^{(3-4p)/6} / (log n)^{1/6}
double llt_soft_range(double p, std::int64_t n);      // n^{2/3} / n^{(3-2p)/3} / sqrt(n log n)

enum class Normalization { standardized, nlogn };

// A discrete law on the standardized axis: increasing atoms with weights.
// The common currency between the exact DP and Monte Carlo ensembles.
struct StandardizedDistribution {
    std::vector<double> atom;
    std::vector<double> weight;
    std::vector<double> prefix;  // running CDF at each atom
    std::vector<double> suffix;  // tail mass from each atom up
    Source source = Source::exact;
    std::optional<ERWParams> params;

    // P(X >= x) and P(X <= x), boundary atoms included.
    double tail(double x) const;
    double lower_tail(double x) const;
};

// Build the standardized view a_n S_n / sqrt(v_n) (or S_n / sqrt(n log n)
// with Normalization::nlogn, which is tied to the critical regime p = 3/4).
StandardizedDistribution standardize(const ExactDistribution& dist,
                                     Normalization norm = Normalization::standardized);
StandardizedDistribution standardize(const Ensemble& ens, const CoeffTable& table,
                                     Normalization norm = Normalization::standardized);

// For synthetic inputs in tests: atoms with weights, no ERW provenance.
StandardizedDistribution make_discrete_distribution(std::vector<double> atoms,
                                                    std::vector<double> weights);

// Kolmogorov-style distance to the standard normal,
// D = sup_t |F(t) - Phi(t)|, evaluated exactly for the step CDF by checking
// both one-sided limits at every atom. Pure statistic; no regime gate, so it
// also serves synthetic views.
double besseen_distance(const StandardizedDistribution& dist);

struct DiagnosticsReport {
    ReportKind kind;
    Source source = Source::exact;
    Regime regime = Regime::classical;
    ERWParams params;               // for trend reports params.n is the grid's last n
    std::vector<double> grid;       // x, k, or n values depending on kind
    std::vector<double> values;
    std::vector<int> flags;            // empty, or one soft-range flag per point
    std::vector<double> rate_reference;  // empty, or one reference per point
    std::optional<double> lattice_factor;
    std::optional<SimulationPlan> mc_plan;  // echoed when source == montecarlo
};

struct CramerCurves {
    DiagnosticsReport upper;  // P(Z >= x) / (1 - Phi(x))
    DiagnosticsReport lower;  // P(Z <= -x) / Phi(-x)
};

// Tail-probability ratios over xgrid. Points beyond the regime's soft
// x-range are flagged. The denominator goes through erfc, so the ratio is
// cancellation-free arbitrarily far into the tail.
CramerCurves cramer_ratio_curve(const StandardizedDistribution& dist,
                                const std::vector<double>& xgrid,
                                bool allow_classical = false);

// Pointwise ratio r(k) = P(S_n = k) / Gaussian density at k, plus the median
// ratio over attainable |x_k| <= 1 (lattice_factor). Exact source only.
DiagnosticsReport llt_ratio(const ExactDistribution& dist,
                            const std::vector<std::int64_t>& krange);

// L(S_n) = sup_k |P(S_n = k) - density(k)| over all integers.
double llt_sup_distance(const ExactDistribution& dist);

// (1/b_n^2) log P(a_n S_n / (b_n sqrt(v_n)) >= x) over an n-grid with
// b_n = n^beta; the attached reference per point is the MDP limit -x^2/2.
// Zero tails are reported as -infinity.
DiagnosticsReport mdp_curve(const ERWParams& base, double x, double beta,
                            const std::vector<std::int64_t>& ngrid,
                            const ExactOptions& opts = {});

struct McSource {
    std::int64_t reps = 100'000;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::markov;
    int threads = 0;
};

// Berry-Esseen distance over an n-grid, from the exact law or from one
// ensemble per n (same master seed across n, so trends are paired). The
// rate_reference column carries the regime's Berry-Esseen shape.
DiagnosticsReport besseen_trend(double p, double q,
                                const std::vector<std::int64_t>& ngrid, Source source,
                                const McSource& mc = {}, bool allow_classical = false,
                                const ExactOptions& opts = {});

// L(S_n) over an n-grid with the reference decay shapes
// log n / n (p < 1/2) or log n / n^{2-2p} (1/2 < p < 3/4).
DiagnosticsReport llt_sup_trend(double p, double q,
                                const std::vector<std::int64_t>& ngrid,
                                const ExactOptions& opts = {});

// CSV rows `<grid_label>,value,rate_reference,flag`; empty columns stay empty.
void write_report_csv(std::ostream& out, const DiagnosticsReport& report);

}  // namespace erw

#endif
