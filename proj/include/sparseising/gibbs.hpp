// Copyright 2026 Sparse Ising Machine Developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "sparseising/detail/numeric.hpp"
#include "sparseising/detail/rng.hpp"
#include "sparseising/errors.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

enum class SamplerMode { exact, mcmc };

struct SamplerConfig {
    SamplerMode mode = SamplerMode::exact;
    long sweeps = 20000;    // recorded samples per chain (one per sweep after burn-in)
    long burn_in = 2000;    // discarded leading sweeps per chain
    int num_chains = 2;
    std::uint64_t seed = 42;

    void validate() const {
        if (mode == SamplerMode::mcmc && sweeps < 1) throw ParameterError("mcmc mode requires sweeps >= 1");
        if (burn_in < 0) throw ParameterError("burn_in must be nonnegative");
        if (num_chains < 1) throw ParameterError("num_chains must be positive");
    }
};

// Frequency estimate with a Wilson 95% interval.
struct EventEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    long n_samples = 0;

    bool contains(double p) const { return ci_low <= p && p <= ci_high; }
};

// Wilson score interval at z = 1.96; well behaved at frequencies near 0 and
// 1, which chain-break rates reach.
inline EventEstimate wilson_interval(long successes, long n, double z = 1.96) {
    if (n <= 0) throw ParameterError("Wilson interval needs at least one sample");
    double p = static_cast<double>(successes) / static_cast<double>(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    EventEstimate out;
    out.estimate = p;
    out.ci_low = std::max(0.0, center - half);
    out.ci_high = std::min(1.0, center + half);
    out.n_samples = n;
    return out;
}

// Full Gibbs distribution over all 2^n configurations, indexed by bit mask
// (bit k set => spin k is +1, in node order).
struct ExactDistribution {
    std::vector<Label> order;
    std::vector<double> prob;

    double probability(const IsingHamiltonian& H, const SpinConfig& s) const {
        return prob[detail::mask_from_config(H, s)];
    }

    SpinConfig config_at(std::uint64_t mask) const { return detail::config_from_mask(order, mask); }
};

inline ExactDistribution exact_distribution(const IsingHamiltonian& H, double beta,
                                            int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    detail::check_enumerable(H.num_nodes(), limit);
    detail::DenseModel m(H);
    double e_min = std::numeric_limits<double>::infinity();
    detail::for_each_configuration(m, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });
    ExactDistribution out;
    out.order = H.nodes();
    out.prob.assign(std::uint64_t{1} << m.n, 0.0);
    detail::KahanSum z;
    detail::for_each_configuration(m, [&](std::uint64_t mask, double e, int) {
        double w = std::exp(-beta * (e - e_min));
        out.prob[mask] = w;
        z.add(w);
    });
    for (auto& p : out.prob) p /= z.value();
    return out;
}

// Total-variation distance between two distributions over the same masks.
inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw ParameterError("distributions differ in support size");
    detail::KahanSum s;
    for (std::size_t i = 0; i < p.size(); ++i) s.add(std::abs(p[i] - q[i]));
    return 0.5 * s.value();
}

// Compact sample stream: one bit mask per recorded sweep, chains concatenated
// in chain-index order.
struct SampleBatch {
    std::vector<Label> order;
    std::vector<std::uint64_t> masks;

    std::size_t size() const { return masks.size(); }
    SpinConfig config_at(std::size_t i) const { return detail::config_from_mask(order, masks[i]); }
};

namespace detail {

// Metropolis acceptance rule min(1, e^{-beta dH}).
inline double metropolis_acceptance(double delta_energy, double beta) {
    return delta_energy <= 0.0 ? 1.0 : std::exp(-beta * delta_energy);
}

}  // namespace detail

// Single-spin-flip Metropolis chain targeting the Gibbs distribution of H at
// inverse temperature beta.  A sweep attempts one flip per spin in node
// order; one configuration is recorded per sweep after burn-in.  Chains get
// independent counter-derived seeds, so the stream is a pure function of
// (H, beta, cfg).
inline SampleBatch mcmc_sample(const IsingHamiltonian& H, double beta, const SamplerConfig& cfg) {
    if (cfg.mode != SamplerMode::mcmc) throw ParameterError("sampler config is not in mcmc mode");
    cfg.validate();
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    if (H.num_nodes() > 63) throw SizeLimitError("mcmc masks support at most 63 spins");

    detail::DenseModel m(H);
    SampleBatch batch;
    batch.order = H.nodes();
    batch.masks.reserve(static_cast<std::size_t>(cfg.num_chains) * static_cast<std::size_t>(cfg.sweeps));

    for (int chain = 0; chain < cfg.num_chains; ++chain) {
        detail::Rng rng(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(chain)));
        std::uint64_t mask = 0;
        for (int i = 0; i < m.n; ++i)
            if (rng.spin() > 0) mask |= std::uint64_t{1} << i;
        long total = cfg.burn_in + cfg.sweeps;
        for (long sweep = 0; sweep < total; ++sweep) {
            for (int i = 0; i < m.n; ++i) {
                int s = ((mask >> i) & 1) ? 1 : -1;
                double local = m.h[i];
                for (const auto& [j, w] : m.adj[i]) local += w * (((mask >> j) & 1) ? 1 : -1);
                double delta = -2.0 * s * local;
                if (rng.unit() < detail::metropolis_acceptance(delta, beta)) mask ^= std::uint64_t{1} << i;
            }
            if (sweep >= cfg.burn_in) batch.masks.push_back(mask);
        }
    }
    return batch;
}

// Frequency of predicate(mask) over the batch with its Wilson interval.
template <class Pred>
EventEstimate estimate_event(const SampleBatch& batch, Pred&& predicate) {
    if (batch.masks.empty()) throw ParameterError("cannot estimate an event from an empty sample stream");
    long hits = 0;
    for (auto mask : batch.masks)
        if (predicate(mask)) ++hits;
    return wilson_interval(hits, static_cast<long>(batch.masks.size()));
}

}  // namespace sparseising
