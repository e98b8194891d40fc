#ifndef CRITNET_GLAUBER_HPP
#define CRITNET_GLAUBER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "critnet/dynamics.hpp"

namespace critnet {

enum class Population { Excitatory, Inhibitory };

// Finite-size stochastic network: N binary neurons per population, uniform
// weights applied per synapse as w/N, asynchronous single-neuron updates.
struct GlauberConfig {
    int n = 70;          // neurons per population
    SystemParams params; // Full variant; weights are the mean values
    std::uint64_t seed = 0;
    double t_end = 60.0;        // 1 time unit = 2N single-neuron updates
    double sample_every = 0.05; // in time units

    // When set, every neuron starts in this state; otherwise i.i.d. fair coins.
    std::optional<int> initial_value;
};

struct BinaryNetworkState {
    std::vector<std::uint8_t> x_e, x_i;
    long sum_e = 0, sum_i = 0;

    void recompute_sums();
    bool sums_consistent() const;
};

struct PopulationTrace {
    std::vector<double> t;
    std::vector<double> mean_e, mean_i;
};

// Seedable deterministic generator; the engine is part of the repo contract.
using GlauberRng = std::mt19937_64;

BinaryNetworkState initial_network_state(const GlauberConfig& config, GlauberRng& rng);

// Local field on a neuron of the given population. Uniform weights make the
// field independent of the neuron index; the index is kept for the
// per-neuron contract and bounds checking. Self-connections are included
// (an O(1/N) effect).
double local_field(int index, Population pop, const BinaryNetworkState& state,
                   const GlauberConfig& config);

// One asynchronous update: a uniformly chosen neuron among the 2N is set to 1
// with probability (1 + tanh(beta g)) / 2, else 0. Advances the clock by 1/(2N).
void glauber_step(BinaryNetworkState& state, const GlauberConfig& config, GlauberRng& rng);

// Runs ceil(t_end * 2N) steps and records the population means at the
// configured sampling interval. Deterministic given the seed.
PopulationTrace simulate(const GlauberConfig& config);

} // namespace critnet

#endif
