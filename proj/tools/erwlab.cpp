// erwlab: batch front end for the elephant-random-walk laboratory.
//
// Subcommands map one-to-one onto the library modules: coeffs, exact,
// simulate, diag {ratio,besseen,llt,mdp}, infer {p-lower,position,coverage}.
// Every run echoes its full resolved configuration (including defaulted
// flags) into the output, so results are reproducible from the output alone.
//
// Exit codes: 0 success, 2 validation error, 3 resource-cap error,
// 4 unsupported regime.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erw/coeffs.hpp"
#include "erw/diagnostics.hpp"
#include "erw/errors.hpp"
#include "erw/exact.hpp"
#include "erw/format.hpp"
#include "erw/inference.hpp"
#include "erw/model.hpp"
#include "erw/montecarlo.hpp"
#include "erw/rng.hpp"

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// shared option bundle + output plumbing

struct CommonOpts {
    std::string out = "-";
    std::string format = "csv";
};

struct ConfigEcho {
    std::vector<std::pair<std::string, std::string>> items;

    void add(const std::string& key, const std::string& value) {
        items.emplace_back(key, value);
    }
    void add(const std::string& key, double value) { add(key, erw::format_double(value)); }
    void add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }

    void write_comments(std::ostream& os) const {
        os << "# schema=1\n";
        for (const auto& [k, v] : items) os << "# " << k << '=' << v << '\n';
    }
    json to_json() const {
        json j;
        for (const auto& [k, v] : items) j[k] = v;
        return j;
    }
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw erw::domain_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(std::ostream& os, json j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// grid parsing

// "a:b:step", inclusive of both endpoints when step divides the span
// (tolerance 1e-9).
std::vector<double> parse_grid(const std::string& text) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw erw::domain_error("grid must have the form a:b:step: " + text);
    if (!(step > 0.0)) throw erw::domain_error("grid step must be positive: " + text);
    if (b < a) throw erw::domain_error("grid end must be >= start: " + text);
    const double span = b - a;
    const double m_real = span / step;
    std::int64_t m = static_cast<std::int64_t>(std::llround(m_real));
    std::vector<double> grid;
    if (std::abs(static_cast<double>(m) * step - span) <=
        1e-9 * std::max(1.0, std::abs(span))) {
        for (std::int64_t i = 0; i < m; ++i)
            grid.push_back(a + static_cast<double>(i) * step);
        grid.push_back(b);  // land exactly on the endpoint
    } else {
        m = static_cast<std::int64_t>(std::floor(m_real));
        for (std::int64_t i = 0; i <= m; ++i)
            grid.push_back(a + static_cast<double>(i) * step);
    }
    return grid;
}

std::vector<std::int64_t> parse_int_grid(const std::string& text) {
    std::vector<std::int64_t> out;
    for (double x : parse_grid(text))
        out.push_back(static_cast<std::int64_t>(std::llround(x)));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw erw::domain_error("empty integer list: " + text);
    return out;
}

erw::SamplerKind parse_sampler(const std::string& s) {
    if (s == "markov") return erw::SamplerKind::markov;
    if (s == "memory") return erw::SamplerKind::memory;
    throw erw::domain_error("sampler must be markov or memory: " + s);
}

erw::Source parse_source(const std::string& s) {
    if (s == "exact") return erw::Source::exact;
    if (s == "mc") return erw::Source::montecarlo;
    throw erw::domain_error("source must be exact or mc: " + s);
}

// ---------------------------------------------------------------------------
// subcommand state

struct CoeffsCmd {
    double p = 0.5;
    std::int64_t n = 1;
    std::int64_t cap = erw::kDefaultCoeffCap;
    CommonOpts io;
};

struct ExactCmd {
    double p = 0.5;
    double q = 0.5;
    std::int64_t n = 1;
    std::int64_t cap = erw::kDefaultExactCap;
    bool renormalize = false;
    bool moments = false;
    CommonOpts io;
};

struct SimulateCmd {
    double p = 0.5;
    double q = 0.5;
    std::int64_t n = 1;
    std::int64_t reps = 1;
    std::uint64_t seed = 0;
    std::string sampler = "markov";
    int threads = 1;
    std::string path_out;
    CommonOpts io;
};

struct DiagCommon {
    double p = 0.5;
    double q = 0.5;
    std::string source = "exact";
    std::int64_t reps = 100000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string sampler = "markov";
    int threads = 1;
    bool allow_classical = false;
    std::int64_t cap = erw::kDefaultExactCap;
    CommonOpts io;
};

struct RatioCmd : DiagCommon {
    std::int64_t n = 10000;
    std::string x_grid = "0:3:0.1";
    std::string tail = "upper";
    std::string normalization = "standardized";
};

struct BesseenCmd : DiagCommon {
    std::string n_grid = "10000";
};

struct LltCmd : DiagCommon {
    std::int64_t n = 10000;
    std::string k_grid = "auto";
};

struct MdpCmd : DiagCommon {
    double x = 1.0;
    double beta = 0.25;
    std::string n_grid = "100,1000,10000";
};

struct PLowerCmd {
    std::int64_t n = 1;
    std::int64_t s = 1;
    double kappa = 0.05;
    CommonOpts io;
};

struct PositionCmd {
    double p = 0.25;
    std::int64_t n = 1;
    double kappa = 0.05;
    CommonOpts io;
};

struct CoverageCmd {
    double p = 0.25;
    double q = 0.5;
    std::int64_t n = 10000;
    double kappa = 0.1;
    std::string kappa_grid;
    std::int64_t reps = 100000;
    std::uint64_t seed = 0;
    std::string sampler = "markov";
    int threads = 1;
    bool with_exact = false;
    CommonOpts io;
};

void add_io(CLI::App* cmd, CommonOpts& io) {
    cmd->add_option("--out", io.out, "output path, - for stdout")->capture_default_str();
    cmd->add_option("--format", io.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// runners

int run_coeffs(const CoeffsCmd& cmd) {
    const erw::CoeffTable table = erw::build_coeffs(cmd.p, cmd.n, cmd.cap);
    ConfigEcho cfg;
    cfg.add("command", "coeffs");
    cfg.add("p", cmd.p);
    cfg.add("n", cmd.n);
    cfg.add("cap", cmd.cap);
    cfg.add("regime", erw::regime_name(table.regime));
    Output out(cmd.io.out);
    if (cmd.io.format == "json") {
        json j;
        j["schema"] = 1;
        j["config"] = cfg.to_json();
        j["a_n"] = table.a_n();
        j["v_n"] = table.v_n();
        json rows = json::array();
        for (std::size_t i = 0; i < table.a.size(); ++i) {
            json row;
            row["k"] = i + 1;
            if (i < table.gamma.size()) row["gamma_k"] = table.gamma[i];
            row["a_k"] = table.a[i];
            row["v_k"] = table.v[i];
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        emit_json(out.stream(), std::move(j));
    } else {
        cfg.write_comments(out.stream());
        erw::write_coeffs_csv(out.stream(), table);
    }
    return 0;
}

int run_exact(const ExactCmd& cmd) {
    const erw::ERWParams params{cmd.p, cmd.q, cmd.n};
    const erw::CoeffTable table = erw::build_coeffs(cmd.p, cmd.n);
    erw::ExactOptions opts;
    opts.cap = cmd.cap;
    opts.renormalize = cmd.renormalize;
    const erw::ExactDistribution dist = erw::exact_pmf(params, table, opts);

    ConfigEcho cfg;
    cfg.add("command", "exact");
    cfg.add("p", cmd.p);
    cfg.add("q", cmd.q);
    cfg.add("n", cmd.n);
    cfg.add("cap", cmd.cap);
    cfg.add("renormalize", cmd.renormalize ? "true" : "false");
    cfg.add("a_n", dist.a_n());
    cfg.add("v_n", dist.v_n());
    cfg.add("max_layer_drift", dist.max_layer_drift());
    std::optional<erw::ExactDistribution::Moments> mom;
    if (cmd.moments) {
        mom = dist.moments();
        cfg.add("mean", mom->mean);
        cfg.add("variance", mom->variance);
    }
    Output out(cmd.io.out);
    if (cmd.io.format == "json") {
        json j;
        j["schema"] = 1;
        j["config"] = cfg.to_json();
        if (mom) {
            j["mean"] = mom->mean;
            j["variance"] = mom->variance;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < dist.support_size(); ++i) {
            if (dist.pmf()[i] == 0.0) continue;
            json row;
            row["k"] = dist.support_point(i);
            row["pmf"] = dist.pmf()[i];
            row["x_k"] = dist.standardized(dist.support_point(i));
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        emit_json(out.stream(), std::move(j));
    } else {
        cfg.write_comments(out.stream());
        erw::write_exact_csv(out.stream(), dist);
    }
    return 0;
}

int run_simulate(const SimulateCmd& cmd) {
    erw::SimulationPlan plan;
    plan.params = {cmd.p, cmd.q, cmd.n};
    plan.reps = cmd.reps;
    plan.seed = cmd.seed;
    plan.sampler = parse_sampler(cmd.sampler);
    const erw::Ensemble ens = erw::run_ensemble(plan, cmd.threads);

    if (!cmd.path_out.empty()) {
        erw::RngStream rng = erw::replicate_stream(plan.seed, 0);
        const erw::Path path = plan.sampler == erw::SamplerKind::markov
                                   ? erw::sample_path_markov(plan.params, rng)
                                   : erw::sample_path_memory(plan.params, rng);
        Output pout(cmd.path_out);
        pout.stream() << "# schema=1\n# replicate=0\n";
        erw::write_path_csv(pout.stream(), path);
    }

    ConfigEcho cfg;
    cfg.add("command", "simulate");
    cfg.add("p", cmd.p);
    cfg.add("q", cmd.q);
    cfg.add("n", cmd.n);
    cfg.add("reps", cmd.reps);
    cfg.add("seed", cmd.seed);
    cfg.add("sampler", cmd.sampler);
    cfg.add("threads", cmd.threads);
    Output out(cmd.io.out);
    if (cmd.io.format == "json") {
        json j;
        j["schema"] = 1;
        j["config"] = cfg.to_json();
        j["reps_done"] = ens.reps_done;
        json counts = json::object();
        for (const auto& [k, c] : ens.terminal_counts) counts[std::to_string(k)] = c;
        j["terminal_counts"] = std::move(counts);
        emit_json(out.stream(), std::move(j));
    } else {
        cfg.write_comments(out.stream());
        erw::write_ensemble_csv(out.stream(), ens);
    }
    return 0;
}

void add_diag_common(CLI::App* cmd, DiagCommon& d, bool with_mc) {
    cmd->add_option("--p", d.p, "memory parameter")->required();
    cmd->add_option("--q", d.q, "first-step parameter")->capture_default_str();
    cmd->add_option("--cap", d.cap, "exact-DP size cap")->capture_default_str();
    add_io(cmd, d.io);
    if (with_mc) {
        cmd->add_option("--source", d.source, "exact or mc")
            ->check(CLI::IsMember({"exact", "mc"}))
            ->capture_default_str();
        cmd->add_option("--reps", d.reps, "Monte Carlo replicates")->capture_default_str();
        cmd->add_option("--seed", d.seed, "Monte Carlo seed (required with --source mc)")
            ->each([&d](const std::string&) { d.seed_given = true; });
        cmd->add_option("--sampler", d.sampler, "markov or memory")
            ->check(CLI::IsMember({"markov", "memory"}))
            ->capture_default_str();
        cmd->add_option("--threads", d.threads, "worker threads")->capture_default_str();
    }
    cmd->add_flag("--allow-classical", d.allow_classical,
                  "permit p = 1/2 as the classical benchmark curve");
}

void check_mc_seed(const DiagCommon& d) {
    if (d.source == "mc" && !d.seed_given)
        throw erw::domain_error("--seed is required with --source mc (no silent entropy)");
}

void echo_diag_common(ConfigEcho& cfg, const DiagCommon& d) {
    cfg.add("p", d.p);
    cfg.add("q", d.q);
    cfg.add("source", d.source);
    if (d.source == "mc") {
        cfg.add("reps", d.reps);
        cfg.add("seed", d.seed);
        cfg.add("sampler", d.sampler);
        cfg.add("threads", d.threads);
    }
    cfg.add("allow_classical", d.allow_classical ? "true" : "false");
}

void emit_report(const DiagCommon& d, const ConfigEcho& cfg,
                 const erw::DiagnosticsReport& report, const char* grid_label) {
    Output out(d.io.out);
    if (d.io.format == "json") {
        json j;
        j["schema"] = 1;
        j["config"] = cfg.to_json();
        j["kind"] = erw::report_kind_name(report.kind);
        j["regime"] = erw::regime_name(report.regime);
        j[grid_label] = report.grid;
        j["values"] = report.values;
        if (!report.rate_reference.empty()) j["rate_reference"] = report.rate_reference;
        if (!report.flags.empty()) j["flags"] = report.flags;
        if (report.lattice_factor) j["lattice_factor"] = *report.lattice_factor;
        emit_json(out.stream(), std::move(j));
    } else {
        cfg.write_comments(out.stream());
        erw::write_report_csv(out.stream(), report);
    }
}

int run_ratio(const RatioCmd& cmd) {
    check_mc_seed(cmd);
    const std::vector<double> xs = parse_grid(cmd.x_grid);
    const erw::ERWParams params{cmd.p, cmd.q, cmd.n};
    const erw::CoeffTable table = erw::build_coeffs(cmd.p, cmd.n);
    const erw::Normalization norm = cmd.normalization == "nlogn"
                                        ? erw::Normalization::nlogn
                                        : erw::Normalization::standardized;

    erw::StandardizedDistribution view;
    if (parse_source(cmd.source) == erw::Source::exact) {
        erw::ExactOptions opts;
        opts.cap = cmd.cap;
        view = erw::standardize(erw::exact_pmf(params, table, opts), norm);
    } else {
        erw::SimulationPlan plan{params, cmd.reps, cmd.seed, parse_sampler(cmd.sampler)};
        view = erw::standardize(erw::run_ensemble(plan, cmd.threads), table, norm);
    }
    const erw::CramerCurves curves = erw::cramer_ratio_curve(view, xs, cmd.allow_classical);

    ConfigEcho cfg;
    cfg.add("command", "diag ratio");
    echo_diag_common(cfg, cmd);
    cfg.add("n", cmd.n);
    cfg.add("x_grid", cmd.x_grid);
    cfg.add("tail", cmd.tail);
    cfg.add("normalization", cmd.normalization);
    cfg.add("cramer_soft_range", erw::cramer_soft_range(cmd.p, cmd.n));
    emit_report(cmd, cfg, cmd.tail == "lower" ? curves.lower : curves.upper, "x");
    return 0;
}

int run_besseen(const BesseenCmd& cmd) {
    check_mc_seed(cmd);
    const std::vector<std::int64_t> ns = parse_int_list(cmd.n_grid);
    erw::McSource mc;
    mc.reps = cmd.reps;
    mc.seed = cmd.seed;
    mc.sampler = parse_sampler(cmd.sampler);
    mc.threads = cmd.threads;
    erw::ExactOptions opts;
    opts.cap = cmd.cap;
    const erw::DiagnosticsReport report = erw::besseen_trend(
        cmd.p, cmd.q, ns, parse_source(cmd.source), mc, cmd.allow_classical, opts);
    ConfigEcho cfg;
    cfg.add("command", "diag besseen");
    echo_diag_common(cfg, cmd);
    cfg.add("n_grid", cmd.n_grid);
    emit_report(cmd, cfg, report, "n");
    return 0;
}

int run_llt(const LltCmd& cmd) {
    const erw::ERWParams params{cmd.p, cmd.q, cmd.n};
    const erw::CoeffTable table = erw::build_coeffs(cmd.p, cmd.n);
    erw::ExactOptions opts;
    opts.cap = cmd.cap;
    const erw::ExactDistribution dist = erw::exact_pmf(params, table, opts);

    std::vector<std::int64_t> ks;
    if (cmd.k_grid == "auto") {
        // attainable lattice points with |k| <= n^0.55
        const std::int64_t kmax =
            static_cast<std::int64_t>(std::pow(static_cast<double>(cmd.n), 0.55));
        for (std::int64_t k = -kmax; k <= kmax; ++k)
            if (((k % 2) + 2) % 2 == ((cmd.n % 2) + 2) % 2) ks.push_back(k);
    } else {
        ks = parse_int_grid(cmd.k_grid);
    }
    const erw::DiagnosticsReport report = erw::llt_ratio(dist, ks);
    const double sup = erw::llt_sup_distance(dist);

    ConfigEcho cfg;
    cfg.add("command", "diag llt");
    echo_diag_common(cfg, cmd);
    cfg.add("n", cmd.n);
    cfg.add("k_grid", cmd.k_grid);
    cfg.add("llt_soft_range", erw::llt_soft_range(cmd.p, cmd.n));
    if (report.lattice_factor) cfg.add("lattice_factor", *report.lattice_factor);
    cfg.add("llt_sup_distance", sup);
    emit_report(cmd, cfg, report, "k");
    return 0;
}

int run_mdp(const MdpCmd& cmd) {
    const std::vector<std::int64_t> ns = parse_int_list(cmd.n_grid);
    erw::ExactOptions opts;
    opts.cap = cmd.cap;
    const erw::DiagnosticsReport report =
        erw::mdp_curve({cmd.p, cmd.q, ns.back()}, cmd.x, cmd.beta, ns, opts);
    ConfigEcho cfg;
    cfg.add("command", "diag mdp");
    echo_diag_common(cfg, cmd);
    cfg.add("x", cmd.x);
    cfg.add("beta", cmd.beta);
    cfg.add("n_grid", cmd.n_grid);
    emit_report(cmd, cfg, report, "n");
    return 0;
}

int run_p_lower(const PLowerCmd& cmd) {
    const erw::ConfidenceQuery query{cmd.n, cmd.s, cmd.kappa};
    const erw::PLowerResult res = erw::p_lower_limit(query);
    json j;
    j["schema"] = 1;
    j["command"] = "infer p-lower";
    j["n"] = cmd.n;
    j["s_n"] = cmd.s;
    j["kappa"] = cmd.kappa;
    j["z"] = res.z;
    j["p_lower"] = res.p_lower;
    j["clamped_hint"] = res.clamped_hint;
    Output out(cmd.io.out);
    emit_json(out.stream(), std::move(j));
    return 0;
}

int run_position(const PositionCmd& cmd) {
    const erw::PositionInterval iv = erw::position_interval(cmd.p, cmd.n, cmd.kappa);
    json j;
    j["schema"] = 1;
    j["command"] = "infer position";
    j["p"] = cmd.p;
    j["n"] = cmd.n;
    j["kappa"] = cmd.kappa;
    j["half_width"] = iv.half_width;
    j["lo"] = iv.lo;
    j["hi"] = iv.hi;
    Output out(cmd.io.out);
    emit_json(out.stream(), std::move(j));
    return 0;
}

int run_coverage(const CoverageCmd& cmd) {
    const erw::SamplerKind sampler = parse_sampler(cmd.sampler);
    Output out(cmd.io.out);
    if (!cmd.kappa_grid.empty()) {
        // sweep: CSV rows kappa,n,p_true,coverage,reps,seed
        ConfigEcho cfg;
        cfg.add("command", "infer coverage");
        cfg.add("p_true", cmd.p);
        cfg.add("q", cmd.q);
        cfg.add("n", cmd.n);
        cfg.add("kappa_grid", cmd.kappa_grid);
        cfg.add("reps", cmd.reps);
        cfg.add("seed", cmd.seed);
        cfg.add("sampler", cmd.sampler);
        cfg.add("threads", cmd.threads);
        cfg.write_comments(out.stream());
        out.stream() << "kappa,n,p_true,coverage,reps,seed\n";
        for (double kappa : parse_grid(cmd.kappa_grid)) {
            const erw::CoverageResult res = erw::coverage_experiment(
                cmd.p, cmd.q, cmd.n, kappa, cmd.reps, cmd.seed, cmd.threads, sampler);
            out.stream() << erw::format_double(kappa) << ',' << cmd.n << ','
                         << erw::format_double(cmd.p) << ','
                         << erw::format_double(res.p_coverage) << ',' << cmd.reps << ','
                         << cmd.seed << '\n';
        }
        return 0;
    }
    const erw::CoverageResult res = erw::coverage_experiment(
        cmd.p, cmd.q, cmd.n, cmd.kappa, cmd.reps, cmd.seed, cmd.threads, sampler);
    json j;
    j["schema"] = 1;
    j["command"] = "infer coverage";
    j["p_true"] = cmd.p;
    j["q"] = cmd.q;
    j["n"] = cmd.n;
    j["kappa"] = cmd.kappa;
    j["reps"] = cmd.reps;
    j["seed"] = cmd.seed;
    j["sampler"] = cmd.sampler;
    j["threads"] = cmd.threads;
    j["p_coverage"] = res.p_coverage;
    j["position_coverage"] = res.position_coverage;
    j["undefined_reps"] = res.undefined;
    if (cmd.with_exact) {
        const erw::ExactCoverage ex = erw::exact_coverage(cmd.p, cmd.q, cmd.n, cmd.kappa);
        j["exact_p_coverage"] = ex.p_coverage;
        j["exact_position_coverage"] = ex.position_coverage;
        j["exact_undefined_mass"] = ex.undefined_mass;
    }
    emit_json(out.stream(), std::move(j));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"erwlab: elephant random walk laboratory"};
    app.require_subcommand(1);
    app.set_config("--config")->description("key = value file mirroring the flags");

    CoeffsCmd coeffs_cmd;
    auto* coeffs = app.add_subcommand("coeffs", "normalizing sequences gamma_k, a_k, v_k");
    coeffs->add_option("--p", coeffs_cmd.p, "memory parameter")->required();
    coeffs->add_option("--n", coeffs_cmd.n, "horizon")->required();
    coeffs->add_option("--cap", coeffs_cmd.cap, "size cap")->capture_default_str();
    add_io(coeffs, coeffs_cmd.io);

    ExactCmd exact_cmd;
    auto* exact = app.add_subcommand("exact", "exact law of S_n by dynamic programming");
    exact->add_option("--p", exact_cmd.p, "memory parameter")->required();
    exact->add_option("--q", exact_cmd.q, "first-step parameter")->capture_default_str();
    exact->add_option("--n", exact_cmd.n, "horizon")->required();
    exact->add_option("--cap", exact_cmd.cap, "DP size cap")->capture_default_str();
    exact->add_flag("--renormalize", exact_cmd.renormalize, "renormalize each DP layer");
    exact->add_flag("--moments", exact_cmd.moments, "include mean/variance");
    add_io(exact, exact_cmd.io);

    SimulateCmd sim_cmd;
    auto* simulate = app.add_subcommand("simulate", "reproducible Monte Carlo ensemble");
    simulate->add_option("--p", sim_cmd.p, "memory parameter")->required();
    simulate->add_option("--q", sim_cmd.q, "first-step parameter")->capture_default_str();
    simulate->add_option("--n", sim_cmd.n, "horizon")->required();
    simulate->add_option("--reps", sim_cmd.reps, "replicates")->required();
    simulate->add_option("--seed", sim_cmd.seed, "master seed (required)")->required();
    simulate->add_option("--sampler", sim_cmd.sampler, "markov or memory")
        ->check(CLI::IsMember({"markov", "memory"}))
        ->capture_default_str();
    simulate->add_option("--threads", sim_cmd.threads, "worker threads")
        ->capture_default_str();
    simulate->add_option("--path-out", sim_cmd.path_out, "export replicate 0 as k,X_k,S_k");
    add_io(simulate, sim_cmd.io);

    auto* diag = app.add_subcommand("diag", "normal-approximation diagnostics");
    diag->require_subcommand(1);

    RatioCmd ratio_cmd;
    auto* ratio = diag->add_subcommand("ratio", "Cramer tail-probability ratio curve");
    add_diag_common(ratio, ratio_cmd, true);
    ratio->add_option("--n", ratio_cmd.n, "horizon")->required();
    ratio->add_option("--x-grid", ratio_cmd.x_grid, "a:b:step")->capture_default_str();
    ratio->add_option("--tail", ratio_cmd.tail, "upper or lower")
        ->check(CLI::IsMember({"upper", "lower"}))
        ->capture_default_str();
    ratio->add_option("--normalization", ratio_cmd.normalization,
                      "standardized (a_n S_n / sqrt(v_n)) or nlogn (S_n / sqrt(n log n))")
        ->check(CLI::IsMember({"standardized", "nlogn"}))
        ->capture_default_str();

    BesseenCmd besseen_cmd;
    auto* besseen = diag->add_subcommand("besseen", "Berry-Esseen distance over n");
    add_diag_common(besseen, besseen_cmd, true);
    besseen->add_option("--n-grid", besseen_cmd.n_grid, "comma list of horizons")
        ->capture_default_str();

    LltCmd llt_cmd;
    auto* llt = diag->add_subcommand("llt", "local-limit ratio r(k) and sup distance");
    add_diag_common(llt, llt_cmd, false);
    llt->add_option("--n", llt_cmd.n, "horizon")->required();
    llt->add_option("--k-grid", llt_cmd.k_grid, "a:b:step, or auto for |k| <= n^0.55")
        ->capture_default_str();

    MdpCmd mdp_cmd;
    auto* mdp = diag->add_subcommand("mdp", "moderate-deviation rate curve over n");
    add_diag_common(mdp, mdp_cmd, false);
    mdp->add_option("--x", mdp_cmd.x, "tail point, B = [x, inf)")->required();
    mdp->add_option("--beta", mdp_cmd.beta, "b_n = n^beta")->required();
    mdp->add_option("--n-grid", mdp_cmd.n_grid, "comma list of horizons")
        ->capture_default_str();

    auto* infer = app.add_subcommand("infer", "memory-parameter and position inference");
    infer->require_subcommand(1);

    PLowerCmd plower_cmd;
    auto* plower = infer->add_subcommand("p-lower", "lower confidence limit for p");
    plower->add_option("--n", plower_cmd.n, "horizon")->required();
    plower->add_option("--s", plower_cmd.s, "observed S_n")->required();
    plower->add_option("--kappa", plower_cmd.kappa, "miscoverage level")
        ->capture_default_str();
    add_io(plower, plower_cmd.io);

    PositionCmd position_cmd;
    auto* position = infer->add_subcommand("position", "interval estimate for S_n");
    position->add_option("--p", position_cmd.p, "memory parameter")->required();
    position->add_option("--n", position_cmd.n, "horizon")->required();
    position->add_option("--kappa", position_cmd.kappa, "miscoverage level")
        ->capture_default_str();
    add_io(position, position_cmd.io);

    CoverageCmd coverage_cmd;
    auto* coverage = infer->add_subcommand("coverage", "Monte Carlo coverage experiment");
    coverage->add_option("--p", coverage_cmd.p, "true memory parameter")->required();
    coverage->add_option("--q", coverage_cmd.q, "first-step parameter")
        ->capture_default_str();
    coverage->add_option("--n", coverage_cmd.n, "horizon")->required();
    coverage->add_option("--kappa", coverage_cmd.kappa, "miscoverage level")
        ->capture_default_str();
    coverage->add_option("--kappa-grid", coverage_cmd.kappa_grid,
                         "a:b:step sweep (CSV output)");
    coverage->add_option("--reps", coverage_cmd.reps, "replicates")->capture_default_str();
    coverage->add_option("--seed", coverage_cmd.seed, "master seed (required)")->required();
    coverage->add_option("--sampler", coverage_cmd.sampler, "markov or memory")
        ->check(CLI::IsMember({"markov", "memory"}))
        ->capture_default_str();
    coverage->add_option("--threads", coverage_cmd.threads, "worker threads")
        ->capture_default_str();
    coverage->add_flag("--with-exact", coverage_cmd.with_exact,
                       "also report the exact-oracle coverage");
    add_io(coverage, coverage_cmd.io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (coeffs->parsed()) return run_coeffs(coeffs_cmd);
        if (exact->parsed()) return run_exact(exact_cmd);
        if (simulate->parsed()) return run_simulate(sim_cmd);
        if (diag->parsed()) {
            if (ratio->parsed()) return run_ratio(ratio_cmd);
            if (besseen->parsed()) return run_besseen(besseen_cmd);
            if (llt->parsed()) return run_llt(llt_cmd);
            if (mdp->parsed()) return run_mdp(mdp_cmd);
        }
        if (infer->parsed()) {
            if (plower->parsed()) return run_p_lower(plower_cmd);
            if (position->parsed()) return run_position(position_cmd);
            if (coverage->parsed()) return run_coverage(coverage_cmd);
        }
    } catch (const erw::unsupported_regime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const erw::resource_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
