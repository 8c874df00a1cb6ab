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

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparseising/detail/numeric.hpp"
#include "sparseising/errors.hpp"

namespace sparseising {

using Label = std::string;

constexpr int kDefaultEnumerationLimit = 24;
constexpr double kDefaultTieTolerance = 1e-9;

// Sparse Ising model: H(s) = sum_i h_i s_i + sum_{(i,j)} J_ij s_i s_j over
// spins s_i in {-1,+1}.  Node labels are opaque strings mapped to dense
// indices in insertion order; unordered coupling pairs are stored once.
class IsingHamiltonian {
  public:
    struct CouplingTerm {
        int a, b;  // dense node indices, a < b
        double value;
    };

    IsingHamiltonian() = default;
    explicit IsingHamiltonian(const std::vector<Label>& nodes) {
        for (const auto& n : nodes) add_node(n);
    }

    void add_node(const Label& label) {
        if (index_.count(label)) return;
        index_.emplace(label, static_cast<int>(nodes_.size()));
        nodes_.push_back(label);
        bias_.push_back(0.0);
    }

    bool has_node(const Label& label) const { return index_.count(label) != 0; }

    int index_of(const Label& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw LookupError("unknown node label: " + label);
        return it->second;
    }

    void set_bias(const Label& label, double h) { bias_[index_of(label)] = h; }

    void add_bias(const Label& label, double h) { bias_[index_of(label)] += h; }

    // Sets (or overwrites) the coupling on the unordered pair {a, b}.
    void set_coupling(const Label& a, const Label& b, double j) {
        int ia = index_of(a), ib = index_of(b);
        if (ia == ib) throw ParameterError("self-coupling on node " + a);
        if (ia > ib) std::swap(ia, ib);
        auto key = pair_key(ia, ib);
        auto it = coupling_index_.find(key);
        if (it != coupling_index_.end()) {
            couplings_[it->second].value = j;
        } else {
            coupling_index_.emplace(key, couplings_.size());
            couplings_.push_back({ia, ib, j});
        }
    }

    bool has_coupling(const Label& a, const Label& b) const {
        int ia = index_of(a), ib = index_of(b);
        if (ia > ib) std::swap(ia, ib);
        return coupling_index_.count(pair_key(ia, ib)) != 0;
    }

    double bias(const Label& label) const { return bias_[index_of(label)]; }

    double coupling(const Label& a, const Label& b) const {
        int ia = index_of(a), ib = index_of(b);
        if (ia > ib) std::swap(ia, ib);
        auto it = coupling_index_.find(pair_key(ia, ib));
        return it == coupling_index_.end() ? 0.0 : couplings_[it->second].value;
    }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Label>& nodes() const { return nodes_; }
    const std::vector<double>& biases() const { return bias_; }
    const std::vector<CouplingTerm>& couplings() const { return couplings_; }

    bool all_zero() const {
        for (double h : bias_)
            if (h != 0.0) return false;
        for (const auto& c : couplings_)
            if (c.value != 0.0) return false;
        return true;
    }

  private:
    static std::uint64_t pair_key(int a, int b) {
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    }

    std::vector<Label> nodes_;
    std::unordered_map<Label, int> index_;
    std::vector<double> bias_;
    std::vector<CouplingTerm> couplings_;
    std::unordered_map<std::uint64_t, std::size_t> coupling_index_;
};

// Complete assignment of +/-1 spins to a Hamiltonian's nodes.
struct SpinConfig {
    std::map<Label, int> values;

    int at(const Label& label) const {
        auto it = values.find(label);
        if (it == values.end()) throw InvalidConfigurationError("configuration is missing spin: " + label);
        return it->second;
    }

    friend auto operator<=>(const SpinConfig&, const SpinConfig&) = default;
};

struct SpectrumSummary {
    double ground_energy;
    std::vector<SpinConfig> ground_states;  // every state within tie tolerance of the minimum
    double gap;                             // to the first distinct excited level; 0 iff spectrum flat
    int degeneracy;
};

namespace detail {

// Dense-index view of a Hamiltonian used by every enumeration loop.
struct DenseModel {
    int n = 0;
    std::vector<double> h;
    std::vector<std::vector<std::pair<int, double>>> adj;  // symmetric neighbor lists
    std::vector<IsingHamiltonian::CouplingTerm> couplings;

    explicit DenseModel(const IsingHamiltonian& H)
        : n(H.num_nodes()), h(H.biases()), adj(H.num_nodes()), couplings(H.couplings()) {
        for (const auto& c : couplings) {
            adj[c.a].emplace_back(c.b, c.value);
            adj[c.b].emplace_back(c.a, c.value);
        }
    }

    // Energy of the configuration encoded bitwise (bit k set => s_k = +1).
    double energy(std::uint64_t mask) const {
        double e = 0.0;
        for (int i = 0; i < n; ++i) e += ((mask >> i) & 1) ? h[i] : -h[i];
        for (const auto& c : couplings) {
            int sa = ((mask >> c.a) & 1) ? 1 : -1;
            int sb = ((mask >> c.b) & 1) ? 1 : -1;
            e += c.value * sa * sb;
        }
        return e;
    }
};

inline void check_enumerable(int n, int limit) {
    if (n > limit)
        throw SizeLimitError("instance has " + std::to_string(n) + " spins, above the exhaustive limit of " +
                             std::to_string(limit) + "; use the MCMC sampler instead");
}

// Visits all 2^n configurations in Gray-code order with incrementally updated
// energies.  f(mask, energy, flipped_bit) is called for every configuration;
// flipped_bit is -1 on the first call.  The running energy is recomputed from
// scratch every 2^16 steps to cap drift well below tie tolerances.
template <class F>
void for_each_configuration(const DenseModel& m, F&& f) {
    const std::uint64_t total = std::uint64_t{1} << m.n;
    std::uint64_t mask = 0;  // all spins -1
    double energy = m.energy(mask);
    f(mask, energy, -1);
    for (std::uint64_t t = 1; t < total; ++t) {
        int bit = std::countr_zero(t);
        int s = ((mask >> bit) & 1) ? 1 : -1;
        double local = m.h[bit];
        for (const auto& [j, w] : m.adj[bit]) local += w * (((mask >> j) & 1) ? 1 : -1);
        energy -= 2.0 * s * local;
        mask ^= std::uint64_t{1} << bit;
        if ((t & 0xffff) == 0) energy = m.energy(mask);
        f(mask, energy, bit);
    }
}

inline SpinConfig config_from_mask(const std::vector<Label>& order, std::uint64_t mask) {
    SpinConfig s;
    for (std::size_t i = 0; i < order.size(); ++i)
        s.values.emplace(order[i], ((mask >> i) & 1) ? 1 : -1);
    return s;
}

inline std::uint64_t mask_from_config(const IsingHamiltonian& H, const SpinConfig& s) {
    if (static_cast<int>(s.values.size()) != H.num_nodes())
        throw InvalidConfigurationError("configuration has " + std::to_string(s.values.size()) +
                                        " spins, Hamiltonian has " + std::to_string(H.num_nodes()));
    std::uint64_t mask = 0;
    for (const auto& [label, spin] : s.values) {
        if (!H.has_node(label)) throw InvalidConfigurationError("configuration has extra spin: " + label);
        if (spin != 1 && spin != -1)
            throw InvalidConfigurationError("spin " + label + " must be +1 or -1, got " + std::to_string(spin));
        if (spin == 1) mask |= std::uint64_t{1} << H.index_of(label);
    }
    return mask;
}

struct GroundScan {
    double ground_energy;
    double first_excited;  // +inf when the spectrum is flat within tolerance
    std::vector<std::uint64_t> ground_masks;
};

inline GroundScan scan_ground(const DenseModel& m, double tie_tol) {
    GroundScan scan;
    scan.ground_energy = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t, double e, int) {
        if (e < scan.ground_energy) scan.ground_energy = e;
    });
    scan.first_excited = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t mask, double e, int) {
        if (e <= scan.ground_energy + tie_tol) {
            scan.ground_masks.push_back(mask);
        } else if (e < scan.first_excited) {
            scan.first_excited = e;
        }
    });
    return scan;
}

}  // namespace detail

// Exact energy of a complete configuration.
inline double energy(const IsingHamiltonian& H, const SpinConfig& s) {
    detail::DenseModel m(H);
    return m.energy(detail::mask_from_config(H, s));
}

// Exhaustive scan of all 2^n configurations.  States within tie_tol of the
// minimum form the ground set; the gap is measured to the first level beyond
// the tolerance (0 when the whole spectrum is flat).
inline SpectrumSummary enumerate_spectrum(const IsingHamiltonian& H, double tie_tol = kDefaultTieTolerance,
                                          int limit = kDefaultEnumerationLimit) {
    detail::check_enumerable(H.num_nodes(), limit);
    detail::DenseModel m(H);
    auto scan = detail::scan_ground(m, tie_tol);
    SpectrumSummary out;
    out.ground_energy = scan.ground_energy;
    out.gap = std::isfinite(scan.first_excited) ? scan.first_excited - scan.ground_energy : 0.0;
    out.degeneracy = static_cast<int>(scan.ground_masks.size());
    out.ground_states.reserve(scan.ground_masks.size());
    for (auto mask : scan.ground_masks) out.ground_states.push_back(detail::config_from_mask(H.nodes(), mask));
    return out;
}

// Gibbs probability e^{-beta H(s)} / Z, evaluated with a minimum-energy shift
// so large beta cannot overflow.
inline double gibbs_probability(const IsingHamiltonian& H, double beta, const SpinConfig& s,
                                int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    detail::check_enumerable(H.num_nodes(), limit);
    detail::DenseModel m(H);
    std::uint64_t target = detail::mask_from_config(H, s);
    double e_min = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });
    detail::KahanSum z;
    double w_target = 0.0;
    for_each_configuration(m, [&](std::uint64_t mask, double e, int) {
        double w = std::exp(-beta * (e - e_min));
        z.add(w);
        if (mask == target) w_target = w;
    });
    return w_target / z.value();
}

// Total Gibbs mass of the ground set (Omega_min within tie_tol).
inline double solve_probability(const IsingHamiltonian& H, double beta, double tie_tol = kDefaultTieTolerance,
                                int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    detail::check_enumerable(H.num_nodes(), limit);
    detail::DenseModel m(H);
    double e_min = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });
    detail::KahanSum z, z_ground;
    for_each_configuration(m, [&](std::uint64_t, double e, int) {
        double w = std::exp(-beta * (e - e_min));
        z.add(w);
        if (e <= e_min + tie_tol) z_ground.add(w);
    });
    return z_ground.value() / z.value();
}

}  // namespace sparseising
