#include "critnet/glauber.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace critnet {

void BinaryNetworkState::recompute_sums() {
    sum_e = std::accumulate(x_e.begin(), x_e.end(), 0L);
    sum_i = std::accumulate(x_i.begin(), x_i.end(), 0L);
}

bool BinaryNetworkState::sums_consistent() const {
    return sum_e == std::accumulate(x_e.begin(), x_e.end(), 0L) &&
           sum_i == std::accumulate(x_i.begin(), x_i.end(), 0L);
}

BinaryNetworkState initial_network_state(const GlauberConfig& config, GlauberRng& rng) {
    BinaryNetworkState state;
    state.x_e.resize(static_cast<std::size_t>(config.n));
    state.x_i.resize(static_cast<std::size_t>(config.n));
    if (config.initial_value) {
        std::uint8_t v = *config.initial_value ? 1 : 0;
        std::fill(state.x_e.begin(), state.x_e.end(), v);
        std::fill(state.x_i.begin(), state.x_i.end(), v);
    } else {
        std::bernoulli_distribution coin(0.5);
        for (auto& x : state.x_e) x = coin(rng) ? 1 : 0;
        for (auto& x : state.x_i) x = coin(rng) ? 1 : 0;
    }
    state.recompute_sums();
    return state;
}

double local_field(int index, Population pop, const BinaryNetworkState& state,
                   const GlauberConfig& config) {
    assert(index >= 0 && index < config.n);
    (void)index;
    const auto& w = config.params.weights;
    const auto& h = config.params.thresholds;
    double n = static_cast<double>(config.n);
    if (pop == Population::Excitatory)
        return (w.w_ee / n) * state.sum_e - (w.w_ei / n) * state.sum_i - h.h_e;
    return (w.w_ie / n) * state.sum_e - (w.w_ii / n) * state.sum_i - h.h_i;
}

void glauber_step(BinaryNetworkState& state, const GlauberConfig& config, GlauberRng& rng) {
    std::uniform_int_distribution<int> pick(0, 2 * config.n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int k = pick(rng);
    Population pop = k < config.n ? Population::Excitatory : Population::Inhibitory;
    int index = k % config.n;
    double g = local_field(index, pop, state, config);
    double p_on = 0.5 * (1.0 + std::tanh(config.params.beta * g));
    std::uint8_t next = unit(rng) < p_on ? 1 : 0;
    auto& xs = pop == Population::Excitatory ? state.x_e : state.x_i;
    auto& sum = pop == Population::Excitatory ? state.sum_e : state.sum_i;
    sum += static_cast<long>(next) - static_cast<long>(xs[static_cast<std::size_t>(index)]);
    xs[static_cast<std::size_t>(index)] = next;
}

PopulationTrace simulate(const GlauberConfig& config) {
    GlauberRng rng(config.seed);
    BinaryNetworkState state = initial_network_state(config, rng);

    const double two_n = 2.0 * config.n;
    const long n_steps = static_cast<long>(std::ceil(config.t_end * two_n));
    const long stride = std::max(1L, static_cast<long>(std::llround(config.sample_every * two_n)));
    const double inv_n = 1.0 / config.n;

    PopulationTrace trace;
    trace.t.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    auto record = [&](long step) {
        trace.t.push_back(step / two_n);
        trace.mean_e.push_back(state.sum_e * inv_n);
        trace.mean_i.push_back(state.sum_i * inv_n);
    };
    record(0);
    for (long step = 1; step <= n_steps; ++step) {
        glauber_step(state, config, rng);
        if (step % stride == 0) record(step);
    }
    return trace;
}

} // namespace critnet
