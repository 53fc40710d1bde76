#ifndef ERW_MONTECARLO_HPP
#define ERW_MONTECARLO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>

#include "erw/coeffs.hpp"
#include "erw/model.hpp"

namespace erw {

enum class SamplerKind { markov, memory };

const char* sampler_name(SamplerKind s);

struct SimulationPlan {
    ERWParams params;
    std::int64_t reps = 1;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::markov;
};

// Terminal-value counts over replicates. The result is a pure function of
// the plan: replicate i draws from replicate_stream(seed, i) regardless of
// how replicates are sharded over workers, and merging counts is
// order-independent, so any thread count produces identical output.
struct Ensemble {
    SimulationPlan plan;
    std::map<std::int64_t, std::int64_t> terminal_counts;
    std::int64_t reps_done = 0;
};

// Run the plan on `threads` workers (0 = hardware concurrency).
// Throws domain_error for reps < 1 or invalid params.
Ensemble run_ensemble(const SimulationPlan& plan, int threads = 0);

// Fraction of replicates with a_n S_n / sqrt(v_n) >= x; boundary atoms are
// included, matching the exact-distribution convention. Throws domain_error
// when the table does not match the ensemble's (p, n).
double empirical_tail(const Ensemble& ens, const CoeffTable& table, double x);

// Counterpart on the S_n / sqrt(n log n) scale.
double empirical_tail_nlogn(const Ensemble& ens, double x);

double empirical_lower_tail(const Ensemble& ens, const CoeffTable& table, double x);

// CSV rows `S_n,count` in increasing S_n.
void write_ensemble_csv(std::ostream& out, const Ensemble& ens);

}  // namespace erw

#endif
