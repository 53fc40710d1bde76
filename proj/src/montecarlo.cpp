#include "erw/montecarlo.hpp"

#include <cmath>
#include <ostream>
#include <thread>
#include <vector>

#include "erw/errors.hpp"
#include "erw/rng.hpp"

namespace erw {

const char* sampler_name(SamplerKind s) {
    return s == SamplerKind::markov ? "markov" : "memory";
}

namespace {

// Terminal value of one replicate; draw-for-draw identical to the Path
// samplers in model.hpp, without materializing the path.
std::int64_t terminal_markov(const ERWParams& params, RngStream& rng) {
    std::int64_t s = first_step(params.q, rng.next_uniform());
    for (std::int64_t k = 1; k < params.n; ++k)
        s += step_markov(params.p, k, s, rng.next_uniform());
    return s;
}

std::int64_t terminal_memory(const ERWParams& params, RngStream& rng,
                             std::vector<std::int8_t>& steps) {
    steps.clear();
    std::int64_t s = first_step(params.q, rng.next_uniform());
    steps.push_back(static_cast<std::int8_t>(s));
    for (std::int64_t k = 1; k < params.n; ++k) {
        const int x = step_memory(params.p, steps.data(), k, rng.next_uniform());
        steps.push_back(static_cast<std::int8_t>(x));
        s += x;
    }
    return s;
}

struct Shard {
    std::int64_t first;
    std::int64_t last;  // exclusive
    // dense counts over lattice index (S + n) / 2
    std::vector<std::int64_t> counts;
};

void run_shard(const SimulationPlan& plan, Shard& shard) {
    const ERWParams& params = plan.params;
    shard.counts.assign(static_cast<std::size_t>(params.n) + 1, 0);
    std::vector<std::int8_t> scratch;
    if (plan.sampler == SamplerKind::memory)
        scratch.reserve(static_cast<std::size_t>(params.n));
    for (std::int64_t i = shard.first; i < shard.last; ++i) {
        RngStream rng = replicate_stream(plan.seed, static_cast<std::uint64_t>(i));
        const std::int64_t s = plan.sampler == SamplerKind::markov
                                   ? terminal_markov(params, rng)
                                   : terminal_memory(params, rng, scratch);
        ++shard.counts[static_cast<std::size_t>((s + params.n) / 2)];
    }
}

}  // namespace

Ensemble run_ensemble(const SimulationPlan& plan, int threads) {
    validate_params(plan.params);
    if (plan.reps < 1)
        throw domain_error("run_ensemble: reps must be >= 1");

    int workers = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<std::int64_t>(workers) > plan.reps)
        workers = static_cast<int>(plan.reps);

    std::vector<Shard> shards(static_cast<std::size_t>(workers));
    const std::int64_t per = plan.reps / workers;
    const std::int64_t extra = plan.reps % workers;
    std::int64_t next_first = 0;
    for (int w = 0; w < workers; ++w) {
        shards[static_cast<std::size_t>(w)].first = next_first;
        next_first += per + (w < extra ? 1 : 0);
        shards[static_cast<std::size_t>(w)].last = next_first;
    }

    if (workers == 1) {
        run_shard(plan, shards[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (auto& shard : shards)
            pool.emplace_back([&plan, &shard] { run_shard(plan, shard); });
        for (auto& t : pool) t.join();
    }

    Ensemble ens;
    ens.plan = plan;
    ens.reps_done = plan.reps;
    const std::int64_t n = plan.params.n;
    for (std::int64_t i = 0; i <= n; ++i) {
        std::int64_t total = 0;
        for (const auto& shard : shards) total += shard.counts[static_cast<std::size_t>(i)];
        if (total > 0) ens.terminal_counts.emplace(2 * i - n, total);
    }
    return ens;
}

namespace {

void check_table(const Ensemble& ens, const CoeffTable& table) {
    if (table.n != ens.plan.params.n || table.p != ens.plan.params.p)
        throw domain_error("empirical_tail: coefficient table does not match the plan");
}

}  // namespace

double empirical_tail(const Ensemble& ens, const CoeffTable& table, double x) {
    check_table(ens, table);
    const double scale = table.a_n() / std::sqrt(table.v_n());
    std::int64_t hits = 0;
    for (const auto& [k, c] : ens.terminal_counts)
        if (scale * static_cast<double>(k) >= x) hits += c;
    return static_cast<double>(hits) / static_cast<double>(ens.reps_done);
}

double empirical_tail_nlogn(const Ensemble& ens, double x) {
    const double n = static_cast<double>(ens.plan.params.n);
    const double scale = 1.0 / std::sqrt(n * std::log(n));
    std::int64_t hits = 0;
    for (const auto& [k, c] : ens.terminal_counts)
        if (scale * static_cast<double>(k) >= x) hits += c;
    return static_cast<double>(hits) / static_cast<double>(ens.reps_done);
}

double empirical_lower_tail(const Ensemble& ens, const CoeffTable& table, double x) {
    check_table(ens, table);
    const double scale = table.a_n() / std::sqrt(table.v_n());
    std::int64_t hits = 0;
    for (const auto& [k, c] : ens.terminal_counts)
        if (scale * static_cast<double>(k) <= x) hits += c;
    return static_cast<double>(hits) / static_cast<double>(ens.reps_done);
}

void write_ensemble_csv(std::ostream& out, const Ensemble& ens) {
    out << "S_n,count\n";
    for (const auto& [k, c] : ens.terminal_counts) out << k << ',' << c << '\n';
}

}  // namespace erw
