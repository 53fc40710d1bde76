#include "erw/model.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "erw/errors.hpp"

namespace erw {

void validate_params(const ERWParams& params) {
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw domain_error("params: p must lie in [0, 1]");
    if (!(params.q >= 0.0 && params.q <= 1.0))
        throw domain_error("params: q must lie in [0, 1]");
    if (params.n < 1)
        throw domain_error("params: n must be >= 1");
}

double transition_prob(double p, std::int64_t k, std::int64_t s) {
    if (k < 1)
        throw domain_error("transition_prob: k must be >= 1");
    if (std::llabs(s) > k)
        throw domain_error("transition_prob: |s| must not exceed k");
    if (((s % 2) + 2) % 2 != ((k % 2) + 2) % 2)
        throw domain_error("transition_prob: s and k must have the same parity");
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("transition_prob: p must lie in [0, 1]");
    return 0.5 + (2.0 * p - 1.0) * static_cast<double>(s) /
                     (2.0 * static_cast<double>(k));
}

namespace {

Path make_empty_path(const ERWParams& params) {
    Path path;
    path.params = params;
    path.steps.reserve(static_cast<std::size_t>(params.n));
    path.positions.reserve(static_cast<std::size_t>(params.n) + 1);
    path.positions.push_back(0);
    return path;
}

}  // namespace

Path sample_path_memory(const ERWParams& params, RngStream& rng) {
    validate_params(params);
    Path path = make_empty_path(params);
    std::int32_t s = first_step(params.q, rng.next_uniform());
    path.steps.push_back(static_cast<std::int8_t>(s));
    path.positions.push_back(s);
    for (std::int64_t k = 1; k < params.n; ++k) {
        const int x = step_memory(params.p, path.steps.data(), k, rng.next_uniform());
        s += x;
        path.steps.push_back(static_cast<std::int8_t>(x));
        path.positions.push_back(s);
    }
    return path;
}

Path sample_path_markov(const ERWParams& params, RngStream& rng) {
    validate_params(params);
    Path path = make_empty_path(params);
    std::int32_t s = first_step(params.q, rng.next_uniform());
    path.steps.push_back(static_cast<std::int8_t>(s));
    path.positions.push_back(s);
    for (std::int64_t k = 1; k < params.n; ++k) {
        const int x = step_markov(params.p, k, s, rng.next_uniform());
        s += x;
        path.steps.push_back(static_cast<std::int8_t>(x));
        path.positions.push_back(s);
    }
    return path;
}

MartingaleView martingale_view(const Path& path, const CoeffTable& table) {
    const std::int64_t n = path.horizon();
    if (n != table.n)
        throw domain_error("martingale_view: path horizon " + std::to_string(n) +
                           " does not match table horizon " + std::to_string(table.n));
    if (path.params.p != table.p)
        throw domain_error("martingale_view: path p does not match table p");

    const double drift_sq = (2.0 * table.p - 1.0) * (2.0 * table.p - 1.0);
    MartingaleView view;
    view.m.resize(static_cast<std::size_t>(n));
    view.dm.resize(static_cast<std::size_t>(n));
    view.qv.resize(static_cast<std::size_t>(n));

    double qv = 0.0;
    double closed_sum = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        const double a = table.a[i];
        const double m = a * static_cast<double>(path.positions[static_cast<std::size_t>(k)]);
        view.m[i] = m;
        view.dm[i] = k == 1 ? m : m - view.m[i - 1];
        if (k == 1) {
            qv += 1.0;  // E[dM_1^2] = a_1^2 exactly
        } else {
            const double ratio =
                static_cast<double>(path.positions[static_cast<std::size_t>(k - 1)]) /
                static_cast<double>(k - 1);
            qv += a * a * (1.0 - drift_sq * ratio * ratio);
        }
        view.qv[i] = qv;
        if (k < n) {
            // (a_{k+1}/a_k)^2 (M_k/k)^2 = (M_k / (gamma_k k))^2
            const double term = m / (table.gamma[i] * static_cast<double>(k));
            closed_sum += term * term;
        }
    }
    view.qv_closed_n = table.v_n() - drift_sq * closed_sum;
    return view;
}

void write_path_csv(std::ostream& out, const Path& path) {
    out << "k,X_k,S_k\n";
    for (std::int64_t k = 1; k <= path.horizon(); ++k) {
        out << k << ',' << static_cast<int>(path.steps[static_cast<std::size_t>(k - 1)])
            << ',' << path.positions[static_cast<std::size_t>(k)] << '\n';
    }
}

}  // namespace erw
