#include "erw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "erw/errors.hpp"
#include "erw/format.hpp"
#include "erw/special.hpp"

namespace erw {

const char* report_kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::besseen: return "besseen";
        case ReportKind::cramer_ratio: return "cramer_ratio";
        case ReportKind::llt_ratio: return "llt_ratio";
        case ReportKind::llt_sup: return "llt_sup";
        case ReportKind::mdp_curve: return "mdp_curve";
    }
    return "?";
}

const char* source_name(Source s) {
    return s == Source::exact ? "exact" : "montecarlo";
}

void require_diagnostic_regime(double p, bool allow_classical) {
    if (p == 0.5 && allow_classical) return;
    if (p == 0.0 || p == 0.5)
        throw unsupported_regime_error(
            "diagnostics: p = " + format_double(p) +
            " is the classical walk; the normal-approximation theory targets "
            "p in (0, 3/4] with p != 1/2");
    if (!(p > 0.0 && p <= 0.75))
        throw unsupported_regime_error(
            "diagnostics: p = " + format_double(p) +
            " is outside (0, 3/4]; the superdiffusive limit is not normal");
}

double cramer_soft_range(double p, std::int64_t n) {
    const double nd = static_cast<double>(n);
    if (p < 0.5) return std::pow(nd, 1.0 / 6.0);
    if (p < 0.75) return std::pow(nd, (3.0 - 4.0 * p) / 6.0);
    return std::pow(std::log(nd), 1.0 / 6.0);
}

double llt_soft_range(double p, std::int64_t n) {
    const double nd = static_cast<double>(n);
    if (p < 0.5) return std::pow(nd, 2.0 / 3.0);
    if (p < 0.75) return std::pow(nd, (3.0 - 2.0 * p) / 3.0);
    return std::sqrt(nd * std::log(nd));
}

// --- standardized views -----------------------------------------------------

namespace {

void finalize_sums(StandardizedDistribution& d) {
    const std::size_t m = d.atom.size();
    d.prefix.resize(m);
    d.suffix.resize(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) d.prefix[i] = acc += d.weight[i];
    acc = 0.0;
    for (std::size_t i = m; i-- > 0;) d.suffix[i] = acc += d.weight[i];
}

double nlogn_scale(const ERWParams& params) {
    if (params.p != 0.75)
        throw domain_error(
            "standardize: the n log n normalization belongs to the critical "
            "regime p = 3/4");
    const double n = static_cast<double>(params.n);
    return 1.0 / std::sqrt(n * std::log(n));
}

}  // namespace

double StandardizedDistribution::tail(double x) const {
    const auto it = std::lower_bound(atom.begin(), atom.end(), x);
    if (it == atom.end()) return 0.0;
    return suffix[static_cast<std::size_t>(it - atom.begin())];
}

double StandardizedDistribution::lower_tail(double x) const {
    const auto it = std::upper_bound(atom.begin(), atom.end(), x);
    if (it == atom.begin()) return 0.0;
    return prefix[static_cast<std::size_t>(it - atom.begin()) - 1];
}

StandardizedDistribution standardize(const ExactDistribution& dist, Normalization norm) {
    double scale;
    if (norm == Normalization::standardized) {
        scale = dist.a_n() / std::sqrt(dist.v_n());
        if (!std::isfinite(scale) || scale <= 0.0)
            throw domain_error("standardize: degenerate coefficients (p = 0)");
    } else {
        scale = nlogn_scale(dist.params());
    }
    StandardizedDistribution d;
    d.source = Source::exact;
    d.params = dist.params();
    d.atom.reserve(dist.support_size());
    d.weight.reserve(dist.support_size());
    for (std::size_t i = 0; i < dist.support_size(); ++i) {
        d.atom.push_back(scale * static_cast<double>(dist.support_point(i)));
        d.weight.push_back(dist.pmf()[i]);
    }
    finalize_sums(d);
    return d;
}

StandardizedDistribution standardize(const Ensemble& ens, const CoeffTable& table,
                                     Normalization norm) {
    if (table.n != ens.plan.params.n || table.p != ens.plan.params.p)
        throw domain_error("standardize: coefficient table does not match the plan");
    double scale;
    if (norm == Normalization::standardized) {
        scale = table.a_n() / std::sqrt(table.v_n());
        if (!std::isfinite(scale) || scale <= 0.0)
            throw domain_error("standardize: degenerate coefficients (p = 0)");
    } else {
        scale = nlogn_scale(ens.plan.params);
    }
    StandardizedDistribution d;
    d.source = Source::montecarlo;
    d.params = ens.plan.params;
    const double total = static_cast<double>(ens.reps_done);
    for (const auto& [k, c] : ens.terminal_counts) {
        d.atom.push_back(scale * static_cast<double>(k));
        d.weight.push_back(static_cast<double>(c) / total);
    }
    finalize_sums(d);
    return d;
}

StandardizedDistribution make_discrete_distribution(std::vector<double> atoms,
                                                    std::vector<double> weights) {
    if (atoms.size() != weights.size() || atoms.empty())
        throw domain_error("make_discrete_distribution: atoms/weights mismatch");
    if (!std::is_sorted(atoms.begin(), atoms.end()))
        throw domain_error("make_discrete_distribution: atoms must be sorted");
    StandardizedDistribution d;
    d.atom = std::move(atoms);
    d.weight = std::move(weights);
    finalize_sums(d);
    return d;
}

// --- statistics --------------------------------------------------------------

double besseen_distance(const StandardizedDistribution& dist) {
    if (dist.atom.empty())
        throw domain_error("besseen_distance: empty distribution");
    double d = 0.0;
    double f_prev = 0.0;
    for (std::size_t i = 0; i < dist.atom.size(); ++i) {
        const double phi = normal_cdf(dist.atom[i]);
        const double f = dist.prefix[i];
        d = std::max({d, std::abs(f - phi), std::abs(f_prev - phi)});
        f_prev = f;
    }
    return d;
}

CramerCurves cramer_ratio_curve(const StandardizedDistribution& dist,
                                const std::vector<double>& xgrid,
                                bool allow_classical) {
    if (!dist.params)
        throw domain_error("cramer_ratio_curve: distribution has no ERW provenance");
    const ERWParams params = *dist.params;
    require_diagnostic_regime(params.p, allow_classical);

    const double soft = cramer_soft_range(params.p, params.n);
    DiagnosticsReport upper;
    upper.kind = ReportKind::cramer_ratio;
    upper.source = dist.source;
    upper.regime = classify_regime(params.p);
    upper.params = params;
    upper.grid = xgrid;
    DiagnosticsReport lower = upper;
    for (double x : xgrid) {
        const double denom = normal_tail(x);
        const double up = dist.tail(x);
        const double down = dist.lower_tail(-x);  // Phi(-x) = 1 - Phi(x)
        // empty tails give ratio 0 even where the normal tail underflows
        upper.values.push_back(up == 0.0 ? 0.0 : up / denom);
        lower.values.push_back(down == 0.0 ? 0.0 : down / denom);
        const int flag = x > soft ? 1 : 0;
        upper.flags.push_back(flag);
        lower.flags.push_back(flag);
    }
    return {std::move(upper), std::move(lower)};
}

namespace {

double gaussian_lattice_density(const ExactDistribution& dist, std::int64_t k) {
    const double xk = dist.standardized(k);
    return dist.a_n() / std::sqrt(2.0 * M_PI * dist.v_n()) * std::exp(-0.5 * xk * xk);
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

DiagnosticsReport llt_ratio(const ExactDistribution& dist,
                            const std::vector<std::int64_t>& krange) {
    require_diagnostic_regime(dist.params().p);
    const std::int64_t n = dist.params().n;
    const double soft = llt_soft_range(dist.params().p, n);

    DiagnosticsReport rep;
    rep.kind = ReportKind::llt_ratio;
    rep.source = Source::exact;
    rep.regime = classify_regime(dist.params().p);
    rep.params = dist.params();
    for (std::int64_t k : krange) {
        rep.grid.push_back(static_cast<double>(k));
        rep.values.push_back(dist.pmf_at(k) / gaussian_lattice_density(dist, k));
        rep.flags.push_back(std::llabs(k) > soft ? 1 : 0);
    }

    // Median ratio over the attainable central band |x_k| <= 1; the span-2
    // lattice concentrates it near 2 (recorded, not corrected).
    std::vector<double> central;
    for (std::size_t i = 0; i < dist.support_size(); ++i) {
        const std::int64_t k = dist.support_point(i);
        if (std::abs(dist.standardized(k)) <= 1.0)
            central.push_back(dist.pmf()[i] / gaussian_lattice_density(dist, k));
    }
    rep.lattice_factor = median(std::move(central));
    return rep;
}

double llt_sup_distance(const ExactDistribution& dist) {
    require_diagnostic_regime(dist.params().p);
    const std::int64_t n = dist.params().n;
    double sup = 0.0;
    for (std::int64_t k = -n; k <= n; ++k) {
        const double diff = std::abs(dist.pmf_at(k) - gaussian_lattice_density(dist, k));
        sup = std::max(sup, diff);
    }
    return sup;
}

DiagnosticsReport mdp_curve(const ERWParams& base, double x, double beta,
                            const std::vector<std::int64_t>& ngrid,
                            const ExactOptions& opts) {
    require_diagnostic_regime(base.p);
    if (!(x >= 0.0))
        throw domain_error("mdp_curve: x must be >= 0");
    if (base.p == 0.75)
        throw domain_error(
            "mdp_curve: no power sequence b_n = n^beta is admissible at p = 3/4 "
            "(b_n must be o(sqrt(log n)))");
    const double beta_max = base.p < 0.5 ? 0.5 : (3.0 - 4.0 * base.p) / 2.0;
    if (!(beta > 0.0 && beta < beta_max))
        throw domain_error("mdp_curve: beta must lie in (0, " + format_double(beta_max) +
                           ") for p = " + format_double(base.p));

    DiagnosticsReport rep;
    rep.kind = ReportKind::mdp_curve;
    rep.source = Source::exact;
    rep.regime = classify_regime(base.p);
    rep.params = base;
    for (std::int64_t n : ngrid) {
        ERWParams params = base;
        params.n = n;
        const CoeffTable table = build_coeffs(base.p, n);
        const ExactDistribution dist = exact_pmf(params, table, opts);
        const double bn = std::pow(static_cast<double>(n), beta);
        const double tail = dist.tail(bn * x);
        rep.grid.push_back(static_cast<double>(n));
        rep.values.push_back(tail > 0.0 ? std::log(tail) / (bn * bn)
                                        : -std::numeric_limits<double>::infinity());
        rep.rate_reference.push_back(-0.5 * x * x);
    }
    rep.params.n = ngrid.empty() ? base.n : ngrid.back();
    return rep;
}

DiagnosticsReport besseen_trend(double p, double q,
                                const std::vector<std::int64_t>& ngrid, Source source,
                                const McSource& mc, bool allow_classical,
                                const ExactOptions& opts) {
    require_diagnostic_regime(p, allow_classical);
    DiagnosticsReport rep;
    rep.kind = ReportKind::besseen;
    rep.source = source;
    rep.regime = classify_regime(p);
    rep.params = {p, q, ngrid.empty() ? 1 : ngrid.back()};
    for (std::int64_t n : ngrid) {
        const ERWParams params{p, q, n};
        const CoeffTable table = build_coeffs(p, n);
        StandardizedDistribution view;
        if (source == Source::exact) {
            view = standardize(exact_pmf(params, table, opts));
        } else {
            const SimulationPlan plan{params, mc.reps, mc.seed, mc.sampler};
            view = standardize(run_ensemble(plan, mc.threads), table);
        }
        rep.grid.push_back(static_cast<double>(n));
        rep.values.push_back(besseen_distance(view));
        if (p != 0.5)
            rep.rate_reference.push_back(rate_reference(p, n).besseen_rate);
    }
    if (source == Source::montecarlo)
        rep.mc_plan = SimulationPlan{{p, q, rep.params.n}, mc.reps, mc.seed, mc.sampler};
    return rep;
}

DiagnosticsReport llt_sup_trend(double p, double q,
                                const std::vector<std::int64_t>& ngrid,
                                const ExactOptions& opts) {
    require_diagnostic_regime(p);
    if (p == 0.75)
        throw domain_error(
            "llt_sup_trend: the sup-distance reference shapes cover p < 3/4 only");
    DiagnosticsReport rep;
    rep.kind = ReportKind::llt_sup;
    rep.source = Source::exact;
    rep.regime = classify_regime(p);
    rep.params = {p, q, ngrid.empty() ? 1 : ngrid.back()};
    for (std::int64_t n : ngrid) {
        const ERWParams params{p, q, n};
        const CoeffTable table = build_coeffs(p, n);
        rep.grid.push_back(static_cast<double>(n));
        rep.values.push_back(llt_sup_distance(exact_pmf(params, table, opts)));
        const double nd = static_cast<double>(n);
        rep.rate_reference.push_back(p < 0.5
                                         ? std::log(nd) / nd
                                         : std::log(nd) / std::pow(nd, 2.0 - 2.0 * p));
    }
    return rep;
}

void write_report_csv(std::ostream& out, const DiagnosticsReport& report) {
    const char* label = "x";
    if (report.kind == ReportKind::llt_ratio)
        label = "k";
    else if (report.kind != ReportKind::cramer_ratio)
        label = "n";
    out << label << ",value,rate_reference,flag\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const bool integer_grid = report.kind != ReportKind::cramer_ratio;
        if (integer_grid)
            out << static_cast<std::int64_t>(report.grid[i]);
        else
            out << format_double(report.grid[i]);
        out << ',' << format_double(report.values[i]) << ',';
        if (i < report.rate_reference.size())
            out << format_double(report.rate_reference[i]);
        out << ',';
        if (i < report.flags.size()) out << report.flags[i];
        out << '\n';
    }
}

}  // namespace erw
