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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sparseising/errors.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

// Simple undirected qubit-connectivity graph.
class HardwareGraph {
  public:
    void add_node(const Label& label) { nodes_.insert(label); }

    void add_edge(const Label& a, const Label& b) {
        if (a == b) throw ParameterError("hardware self-loop on " + a);
        nodes_.insert(a);
        nodes_.insert(b);
        edges_.insert(normalized(a, b));
    }

    bool has_node(const Label& label) const { return nodes_.count(label) != 0; }
    bool has_edge(const Label& a, const Label& b) const { return edges_.count(normalized(a, b)) != 0; }

    const std::set<Label>& nodes() const { return nodes_; }
    const std::set<std::pair<Label, Label>>& edges() const { return edges_; }

  private:
    static std::pair<Label, Label> normalized(const Label& a, const Label& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    std::set<Label> nodes_;
    std::set<std::pair<Label, Label>> edges_;
};

// Logical spin -> chain of physical qubits.
struct Embedding {
    std::map<Label, std::vector<Label>> chains;

    const std::vector<Label>& chain(const Label& logical) const {
        auto it = chains.find(logical);
        if (it == chains.end()) throw LookupError("no chain for logical spin " + logical);
        return it->second;
    }
};

// Checks every embedding invariant and reports each violation with the
// offending chain or edge.  An empty result means the embedding is valid.
inline std::vector<std::string> validate(const Embedding& emb, const IsingHamiltonian& problem,
                                         const HardwareGraph& hw) {
    std::vector<std::string> diags;
    for (const auto& node : problem.nodes())
        if (!emb.chains.count(node)) diags.push_back("logical spin " + node + " has no chain");
    std::map<Label, Label> owner;
    for (const auto& [logical, chain] : emb.chains) {
        if (!problem.has_node(logical)) diags.push_back("chain for unknown logical spin " + logical);
        if (chain.empty()) diags.push_back("chain for " + logical + " is empty");
        for (const auto& q : chain) {
            if (!hw.has_node(q)) diags.push_back("chain for " + logical + " uses unknown qubit " + q);
            auto [it, fresh] = owner.emplace(q, logical);
            if (!fresh && it->second != logical)
                diags.push_back("qubit " + q + " is shared by chains " + it->second + " and " + logical);
        }
        // Connectivity of the induced subgraph.
        if (!chain.empty()) {
            std::set<Label> members(chain.begin(), chain.end());
            std::vector<Label> frontier{chain.front()};
            std::set<Label> seen{chain.front()};
            while (!frontier.empty()) {
                Label u = frontier.back();
                frontier.pop_back();
                for (const auto& v : members) {
                    if (!seen.count(v) && hw.has_edge(u, v)) {
                        seen.insert(v);
                        frontier.push_back(v);
                    }
                }
            }
            if (seen.size() != members.size())
                diags.push_back("chain for " + logical + " does not induce a connected subgraph");
        }
    }
    for (const auto& c : problem.couplings()) {
        const Label& i = problem.nodes()[c.a];
        const Label& j = problem.nodes()[c.b];
        if (!emb.chains.count(i) || !emb.chains.count(j)) continue;
        bool linked = false;
        for (const auto& u : emb.chain(i))
            for (const auto& v : emb.chain(j))
                if (hw.has_edge(u, v)) linked = true;
        if (!linked) diags.push_back("no hardware edge between chains of logical edge (" + i + ", " + j + ")");
    }
    return diags;
}

// Embedded Hamiltonian H_e^lambda over the physical qubits used by the
// embedding, together with the structure needed to reason about its chains.
struct EmbeddedHamiltonian {
    IsingHamiltonian hamiltonian;
    double chain_strength = 0.0;
    int intra_edge_count = 0;  // sum over chains of |E(C_i)|; Lambda = lambda * intra_edge_count
    Embedding embedding;
    HardwareGraph hardware;

    std::vector<Label> physical_nodes() const { return hamiltonian.nodes(); }
};

// Builds H_e^lambda: biases and logical couplings split equally across chain
// members / inter-chain edges, intra-chain edges at -lambda, and remaining
// hardware edges between used qubits materialized with coupling 0 so the
// physical graph stays fixed across lambda sweeps.
inline EmbeddedHamiltonian embed(const IsingHamiltonian& problem, const HardwareGraph& hw, const Embedding& emb,
                                 double lambda) {
    if (lambda < 0) throw ParameterError("chain strength must be nonnegative");
    auto diags = validate(emb, problem, hw);
    if (!diags.empty()) {
        std::string what = "invalid embedding:";
        for (const auto& d : diags) what += "\n  - " + d;
        throw ValidationError(what);
    }

    EmbeddedHamiltonian out;
    out.chain_strength = lambda;
    out.embedding = emb;
    out.hardware = hw;

    std::map<Label, Label> chain_of;
    for (const auto& logical : problem.nodes())
        for (const auto& q : emb.chain(logical)) chain_of[q] = logical;
    // Physical node order: chain order follows the problem's node order.
    for (const auto& logical : problem.nodes())
        for (const auto& q : emb.chain(logical)) out.hamiltonian.add_node(q);

    for (const auto& logical : problem.nodes()) {
        const auto& chain = emb.chain(logical);
        double share = problem.bias(logical) / static_cast<double>(chain.size());
        for (const auto& q : chain) out.hamiltonian.set_bias(q, share);
    }

    // Classify hardware edges among used qubits: intra-chain, or inter-chain
    // grouped by the logical pair they span.
    std::map<std::pair<Label, Label>, std::vector<std::pair<Label, Label>>> cross;
    for (const auto& [u, v] : hw.edges()) {
        auto cu = chain_of.find(u);
        auto cv = chain_of.find(v);
        if (cu == chain_of.end() || cv == chain_of.end()) continue;  // unused qubit
        if (cu->second == cv->second) {
            out.hamiltonian.set_coupling(u, v, -lambda);
            ++out.intra_edge_count;
        } else {
            auto key = cu->second < cv->second ? std::make_pair(cu->second, cv->second)
                                               : std::make_pair(cv->second, cu->second);
            cross[key].emplace_back(u, v);
        }
    }
    for (const auto& [logical_pair, edges] : cross) {
        double j = problem.has_coupling(logical_pair.first, logical_pair.second)
                       ? problem.coupling(logical_pair.first, logical_pair.second)
                       : 0.0;
        double share = j / static_cast<double>(edges.size());
        for (const auto& [u, v] : edges) out.hamiltonian.set_coupling(u, v, share);
    }
    return out;
}

// Checks the EmbeddedHamiltonian invariants against its source problem:
// every intra-chain edge carries exactly -lambda, inter-chain couplings sum
// to the logical coupling, and chain biases sum to the logical bias.
inline std::vector<std::string> embedded_invariant_violations(const EmbeddedHamiltonian& embedded,
                                                              const IsingHamiltonian& problem) {
    std::vector<std::string> out;
    const auto& phys = embedded.hamiltonian;
    for (const auto& [logical, chain] : embedded.embedding.chains) {
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t j = i + 1; j < chain.size(); ++j)
                if (embedded.hardware.has_edge(chain[i], chain[j]) &&
                    phys.coupling(chain[i], chain[j]) != -embedded.chain_strength)
                    out.push_back("intra-chain edge (" + chain[i] + ", " + chain[j] + ") is not -lambda");
        double h_sum = 0.0;
        for (const auto& q : chain) h_sum += phys.bias(q);
        if (std::abs(h_sum - problem.bias(logical)) > 1e-12)
            out.push_back("bias split of " + logical + " does not sum to the logical bias");
    }
    for (const auto& c : problem.couplings()) {
        const Label& i = problem.nodes()[c.a];
        const Label& j = problem.nodes()[c.b];
        double j_sum = 0.0;
        for (const auto& u : embedded.embedding.chain(i))
            for (const auto& v : embedded.embedding.chain(j))
                if (embedded.hardware.has_edge(u, v)) j_sum += phys.coupling(u, v);
        if (std::abs(j_sum - c.value) > 1e-12)
            out.push_back("coupling split of (" + i + ", " + j + ") does not sum to the logical coupling");
    }
    return out;
}

// True iff all spins agree within every chain.
inline bool is_chain_consistent(const Embedding& emb, const SpinConfig& s_phys) {
    for (const auto& [logical, chain] : emb.chains) {
        int first = s_phys.at(chain.front());
        for (const auto& q : chain)
            if (s_phys.at(q) != first) return false;
    }
    return true;
}

// Consistent physical configuration -> logical configuration under the
// natural bijection; nullopt marks a rejected (broken) sample.
inline std::optional<SpinConfig> unembed_discard(const Embedding& emb, const SpinConfig& s_phys) {
    SpinConfig logical;
    for (const auto& [name, chain] : emb.chains) {
        int first = s_phys.at(chain.front());
        for (const auto& q : chain)
            if (s_phys.at(q) != first) return std::nullopt;
        logical.values.emplace(name, first);
    }
    return logical;
}

// Per-chain majority vote; ties resolve to tie_value (default +1).
inline SpinConfig unembed_majority(const Embedding& emb, const SpinConfig& s_phys, int tie_value = 1) {
    if (tie_value != 1 && tie_value != -1) throw ParameterError("tie value must be +1 or -1");
    SpinConfig logical;
    for (const auto& [name, chain] : emb.chains) {
        int total = 0;
        for (const auto& q : chain) total += s_phys.at(q);
        logical.values.emplace(name, total > 0 ? 1 : (total < 0 ? -1 : tie_value));
    }
    return logical;
}

// Star problem instance: central spin of degree 2l plus its embedding.
struct StarInstance {
    IsingHamiltonian problem;
    HardwareGraph hardware;
    Embedding embedding;
    Label center;
};

namespace detail {

inline Label star_aux_label(char side, int i) { return std::string(1, side) + std::to_string(i + 1); }

}  // namespace detail

// H_star = (1 + s_c) sum_i x_i - (1 - s_c) sum_i y_i, i.e. biases +1 on the
// x_i, -1 on the y_i, and unit couplings from s_c to every auxiliary.  The
// center chain is a path of path_len hub qubits; the x-side auxiliaries
// attach round-robin to the first ceil(path_len/2) hubs and the y-side to the
// rest, which for path_len = 2 is exactly the two-hub embedding with all x_i
// on s1 and all y_i on s2.
inline StarInstance build_star_path_instance(int l, int path_len) {
    if (l < 1) throw ParameterError("star instance needs l >= 1 auxiliaries per side");
    if (path_len < 2) throw ParameterError("hub chain needs at least 2 qubits");

    StarInstance out;
    out.center = "sc";
    out.problem.add_node(out.center);
    for (int i = 0; i < l; ++i) {
        Label x = detail::star_aux_label('x', i);
        out.problem.add_node(x);
        out.problem.set_bias(x, 1.0);
        out.problem.set_coupling(out.center, x, 1.0);
    }
    for (int i = 0; i < l; ++i) {
        Label y = detail::star_aux_label('y', i);
        out.problem.add_node(y);
        out.problem.set_bias(y, -1.0);
        out.problem.set_coupling(out.center, y, 1.0);
    }

    std::vector<Label> hubs;
    for (int k = 0; k < path_len; ++k) hubs.push_back("s" + std::to_string(k + 1));
    for (int k = 0; k + 1 < path_len; ++k) out.hardware.add_edge(hubs[k], hubs[k + 1]);

    int x_hubs = (path_len + 1) / 2;
    int y_hubs = path_len - x_hubs;
    for (int i = 0; i < l; ++i) {
        out.hardware.add_edge(hubs[i % x_hubs], detail::star_aux_label('x', i));
        out.hardware.add_edge(hubs[x_hubs + i % y_hubs], detail::star_aux_label('y', i));
    }

    out.embedding.chains[out.center] = hubs;
    for (int i = 0; i < l; ++i) {
        out.embedding.chains[detail::star_aux_label('x', i)] = {detail::star_aux_label('x', i)};
        out.embedding.chains[detail::star_aux_label('y', i)] = {detail::star_aux_label('y', i)};
    }
    return out;
}

inline StarInstance build_star_instance(int l) { return build_star_path_instance(l, 2); }

}  // namespace sparseising
