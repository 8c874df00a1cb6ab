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

#include <cstdint>
#include <string>
#include <vector>

#include "sparseising/bounds.hpp"
#include "sparseising/detail/rng.hpp"
#include "sparseising/embedding.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

// Randomized embedded instances for property suites.  Every logical spin
// carries a bias of magnitude >= 0.1 so all chain-graph volumes are positive,
// which keeps the conductance bound finite and nondegenerate.
struct InstanceOptions {
    int min_logical = 2;
    int max_logical = 4;
    int max_chain_size = 3;
    int max_physical = 14;
    double extra_logical_edge_prob = 0.5;
    double extra_intra_edge_prob = 0.3;
    double artifact_edge_prob = 0.2;  // inter-chain hardware edges with no logical coupling
};

struct RandomInstance {
    IsingHamiltonian problem;
    HardwareGraph hardware;
    Embedding embedding;
};

inline RandomInstance random_embedded_instance(detail::Rng& rng, const InstanceOptions& opt = {}) {
    RandomInstance inst;
    int n_logical = opt.min_logical + static_cast<int>(rng.below(opt.max_logical - opt.min_logical + 1));

    std::vector<Label> logical;
    for (int i = 0; i < n_logical; ++i) {
        Label name = "v" + std::to_string(i);
        logical.push_back(name);
        inst.problem.add_node(name);
        double mag = rng.uniform(0.1, 1.0);
        inst.problem.set_bias(name, rng.spin() * mag);
    }
    // Connected logical graph: random tree plus optional extra edges.
    std::vector<std::pair<int, int>> logical_edges;
    for (int i = 1; i < n_logical; ++i) logical_edges.emplace_back(static_cast<int>(rng.below(i)), i);
    for (int i = 0; i < n_logical; ++i)
        for (int j = i + 1; j < n_logical; ++j) {
            bool in_tree = false;
            for (auto [a, b] : logical_edges) in_tree |= (a == i && b == j);
            if (!in_tree && rng.chance(opt.extra_logical_edge_prob)) logical_edges.emplace_back(i, j);
        }
    for (auto [a, b] : logical_edges) {
        double mag = rng.uniform(0.1, 1.0);
        inst.problem.set_coupling(logical[a], logical[b], rng.spin() * mag);
    }

    // Chains: contiguous blocks of fresh qubits, each wired as a random tree
    // with optional extra intra edges.
    int budget = opt.max_physical - n_logical;  // at least one qubit each
    int next_qubit = 0;
    std::vector<std::vector<Label>> chains(n_logical);
    for (int i = 0; i < n_logical; ++i) {
        int extra_cap = std::min(opt.max_chain_size - 1, budget);
        int extra = extra_cap > 0 ? static_cast<int>(rng.below(extra_cap + 1)) : 0;
        budget -= extra;
        for (int k = 0; k <= extra; ++k) chains[i].push_back("q" + std::to_string(next_qubit++));
        inst.embedding.chains[logical[i]] = chains[i];
        for (std::size_t k = 1; k < chains[i].size(); ++k) {
            std::size_t parent = rng.below(k);
            inst.hardware.add_edge(chains[i][parent], chains[i][k]);
        }
        for (std::size_t a = 0; a < chains[i].size(); ++a)
            for (std::size_t b = a + 1; b < chains[i].size(); ++b)
                if (!inst.hardware.has_edge(chains[i][a], chains[i][b]) && rng.chance(opt.extra_intra_edge_prob))
                    inst.hardware.add_edge(chains[i][a], chains[i][b]);
        for (const auto& q : chains[i]) inst.hardware.add_node(q);
    }

    // Inter-chain wiring: one or two hardware edges per logical edge, plus
    // occasional artifact edges between unrelated chains.
    for (auto [a, b] : logical_edges) {
        int n_links = 1 + static_cast<int>(rng.below(2));
        for (int k = 0; k < n_links; ++k) {
            const Label& u = chains[a][rng.below(chains[a].size())];
            const Label& v = chains[b][rng.below(chains[b].size())];
            inst.hardware.add_edge(u, v);
        }
    }
    for (int i = 0; i < n_logical; ++i)
        for (int j = i + 1; j < n_logical; ++j) {
            if (!rng.chance(opt.artifact_edge_prob)) continue;
            const Label& u = chains[i][rng.below(chains[i].size())];
            const Label& v = chains[j][rng.below(chains[j].size())];
            if (!inst.hardware.has_edge(u, v)) inst.hardware.add_edge(u, v);
        }
    return inst;
}

// Random connected weighted chain for spectral/conductance property suites.
// Weights are drawn in [deg_u, 3 deg_u]: at or above the degree measure, the
// regime in which the two-sided Cheeger inequality applies to the weighted
// normalized Laplacian.
inline ChainGraph random_chain_graph(detail::Rng& rng, int min_vertices = 2, int max_vertices = 8) {
    ChainGraph g;
    g.logical = "chain";
    int n = min_vertices + static_cast<int>(rng.below(max_vertices - min_vertices + 1));
    for (int i = 0; i < n; ++i) g.vertices.push_back("q" + std::to_string(i));
    for (int i = 1; i < n; ++i) g.edges.emplace_back(static_cast<int>(rng.below(i)), i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool present = false;
            for (auto [a, b] : g.edges) present |= (a == i && b == j);
            if (!present && rng.chance(0.35)) g.edges.emplace_back(i, j);
        }
    std::vector<int> deg(n, 0);
    for (auto [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    for (int i = 0; i < n; ++i) g.weight.push_back(deg[i] * rng.uniform(1.0, 3.0));
    return g;
}

}  // namespace sparseising
