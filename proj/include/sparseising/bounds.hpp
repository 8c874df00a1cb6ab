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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sparseising/embedding.hpp"
#include "sparseising/errors.hpp"
#include "sparseising/ising.hpp"
#include "sparseising/pipeline.hpp"

namespace sparseising {

// Weighted view of one chain: vertex u carries a_u = |h_u| + sum over
// couplings leaving the chain of |J_uv| (the maximum external field
// influence), edges are the intra-chain hardware edges.
struct ChainGraph {
    Label logical;
    std::vector<Label> vertices;
    std::vector<double> weight;
    std::vector<std::pair<int, int>> edges;

    double total_weight() const {
        double t = 0.0;
        for (double w : weight) t += w;
        return t;
    }

    bool connected() const {
        if (vertices.empty()) return false;
        std::vector<std::vector<int>> adj(vertices.size());
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<char> seen(vertices.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
        }
        return count == vertices.size();
    }
};

// Extracts the weighted chain graph of one logical spin from the embedded
// Hamiltonian.  Weights use the post-split physical biases and couplings;
// zero couplings (materialized artifact edges) contribute nothing.
inline ChainGraph build_chain_graph(const EmbeddedHamiltonian& embedded, const Label& logical) {
    const auto& chain = embedded.embedding.chain(logical);  // throws LookupError when unknown
    const auto& phys = embedded.hamiltonian;

    ChainGraph g;
    g.logical = logical;
    g.vertices = chain;
    std::map<Label, int> local;
    for (std::size_t i = 0; i < chain.size(); ++i) local[chain[i]] = static_cast<int>(i);

    g.weight.assign(chain.size(), 0.0);
    for (std::size_t i = 0; i < chain.size(); ++i) g.weight[i] = std::abs(phys.bias(chain[i]));
    for (const auto& c : phys.couplings()) {
        const Label& u = phys.nodes()[c.a];
        const Label& v = phys.nodes()[c.b];
        auto iu = local.find(u);
        auto iv = local.find(v);
        if (iu != local.end() && iv != local.end()) {
            if (embedded.hardware.has_edge(u, v)) g.edges.emplace_back(iu->second, iv->second);
        } else if (iu != local.end()) {
            g.weight[iu->second] += std::abs(c.value);
        } else if (iv != local.end()) {
            g.weight[iv->second] += std::abs(c.value);
        }
    }
    return g;
}

struct ConductanceResult {
    double phi = std::numeric_limits<double>::infinity();
    std::vector<Label> witness;  // minimizing subset S
    int cut = 0;
    double vol_s = 0.0;
};

// Exact conductance Phi(C_i) = min over subsets with 0 < Vol(S) <= Vol(V)/2
// of cut(S, S-bar) / Vol(S), by scanning all 2^|V| subsets.  Singleton chains
// have no admissible partition and report phi = +infinity (no chain strength
// needed); the same happens when every admissible subset has zero volume.
inline ConductanceResult conductance_exact(const ChainGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    if (n > 20) throw SizeLimitError("exact conductance limited to chains of <= 20 vertices");
    if (!g.connected()) throw StructuralError("chain " + g.logical + " is disconnected");
    double total = g.total_weight();
    if (total <= 0.0) throw DegenerateVolumeError("chain " + g.logical + " has all-zero vertex weights");

    ConductanceResult best;
    if (n == 1) return best;

    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 1; s < full; ++s) {
        double vol = 0.0;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) vol += g.weight[i];
        if (!(vol > 0.0) || vol > 0.5 * total) continue;
        int cut = 0;
        for (auto [a, b] : g.edges)
            if (((s >> a) & 1) != ((s >> b) & 1)) ++cut;
        double phi = static_cast<double>(cut) / vol;
        if (phi < best.phi) {
            best.phi = phi;
            best.cut = cut;
            best.vol_s = vol;
            best.witness.clear();
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1) best.witness.push_back(g.vertices[i]);
        }
    }
    return best;
}

// Theorem-level lower bound on the chain strength: max over chains of
// 1/(2 Phi(C_i)).  Singleton chains (and chains with no admissible cut)
// contribute 0.
inline double conductance_bound(const EmbeddedHamiltonian& embedded) {
    double bound = 0.0;
    for (const auto& [logical, chain] : embedded.embedding.chains) {
        auto g = build_chain_graph(embedded, logical);
        auto res = conductance_exact(g);
        if (std::isinf(res.phi)) continue;
        bound = std::max(bound, 1.0 / (2.0 * res.phi));
    }
    return bound;
}

struct SpectralResult {
    double bound = 0.0;    // 1 / lambda_2
    double lambda2 = std::numeric_limits<double>::infinity();
    bool floored_weights = false;  // some a_u was raised to the epsilon floor
};

namespace detail {

constexpr double kWeightFloor = 1e-12;

// Weighted normalized Laplacian (D^w)^{-1/2} (D - W) (D^w)^{-1/2} of a chain,
// with zero weights floored so the inverse square root stays finite.
inline Eigen::MatrixXd normalized_laplacian(const ChainGraph& g, bool* floored) {
    int n = static_cast<int>(g.vertices.size());
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : g.edges) {
        W(a, b) = 1.0;
        W(b, a) = 1.0;
    }
    Eigen::VectorXd deg = W.rowwise().sum();
    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        double a = g.weight[i];
        if (a < kWeightFloor) {
            a = kWeightFloor;
            if (floored) *floored = true;
        }
        inv_sqrt(i) = 1.0 / std::sqrt(a);
    }
    Eigen::MatrixXd L = Eigen::MatrixXd(deg.asDiagonal()) - W;
    return inv_sqrt.asDiagonal() * L * inv_sqrt.asDiagonal();
}

inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> chain_eigensolve(const ChainGraph& g, bool* floored) {
    Eigen::MatrixXd L = normalized_laplacian(g, floored);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolve failed on chain " + g.logical);
    return solver;
}

}  // namespace detail

// Spectral chain-strength bound 1/lambda_2 from the second smallest
// eigenvalue of the weighted normalized Laplacian.
inline SpectralResult spectral_bound(const ChainGraph& g) {
    if (g.vertices.empty()) throw StructuralError("empty chain");
    SpectralResult out;
    if (g.vertices.size() == 1) return out;  // no intra edge to protect
    if (!g.connected()) throw StructuralError("chain " + g.logical + " is disconnected");
    auto solver = detail::chain_eigensolve(g, &out.floored_weights);
    out.lambda2 = solver.eigenvalues()(1);
    if (!(out.lambda2 > 1e-10))
        throw NumericalError("lambda_2 is not positive on the connected chain " + g.logical);
    out.bound = 1.0 / out.lambda2;
    return out;
}

struct CheegerCheck {
    double lower = 0.0;  // lambda_2 / 2
    double phi = 0.0;
    double upper = 0.0;  // sqrt(2 lambda_2)
    bool ok = false;
};

// Verifies lambda_2/2 <= Phi <= sqrt(2 lambda_2) with 1e-9 slack.  The upper
// direction is not proven for arbitrary vertex weights; a failed check is a
// reportable finding, not an internal error.
inline CheegerCheck cheeger_check(const ChainGraph& g) {
    auto spectral = spectral_bound(g);
    auto cond = conductance_exact(g);
    CheegerCheck out;
    out.lower = spectral.lambda2 / 2.0;
    out.phi = cond.phi;
    out.upper = std::sqrt(2.0 * spectral.lambda2);
    out.ok = out.lower <= out.phi + 1e-9 && out.phi <= out.upper + 1e-9;
    return out;
}

// Sign split of the Fiedler vector; zero entries go to the positive side.
// The vector is canonicalized so its first nonzero entry is positive.
inline std::pair<std::vector<Label>, std::vector<Label>> fiedler_partition(const ChainGraph& g) {
    if (g.vertices.size() < 2) throw StructuralError("Fiedler partition needs at least 2 vertices");
    if (!g.connected()) throw StructuralError("chain " + g.logical + " is disconnected");
    auto solver = detail::chain_eigensolve(g, nullptr);
    Eigen::VectorXd v = solver.eigenvectors().col(1);
    for (int i = 0; i < v.size(); ++i) {
        if (v(i) != 0.0) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    std::pair<std::vector<Label>, std::vector<Label>> split;
    for (int i = 0; i < v.size(); ++i)
        (v(i) >= 0.0 ? split.first : split.second).push_back(g.vertices[i]);
    return split;
}

struct ConsistencyCheckResult {
    bool consistent = true;
    std::optional<SpinConfig> counterexample;
};

// Enumerates the ground set of the (un-rescaled) embedded Hamiltonian and
// reports the first chain-broken ground state, if any.  Rescaling preserves
// the argmin, so the check runs on H_e^lambda directly.
inline ConsistencyCheckResult ground_state_consistency_check(const IsingHamiltonian& problem,
                                                             const HardwareGraph& hw, const Embedding& emb,
                                                             double lambda, double tie_tol = kDefaultTieTolerance,
                                                             int limit = kDefaultEnumerationLimit) {
    EmbeddedHamiltonian embedded = embed(problem, hw, emb, lambda);
    const auto& phys = embedded.hamiltonian;
    detail::check_enumerable(phys.num_nodes(), limit);
    detail::DenseModel m(phys);
    auto scan = detail::scan_ground(m, tie_tol);

    ConsistencyCheckResult out;
    for (auto mask : scan.ground_masks) {
        auto config = detail::config_from_mask(phys.nodes(), mask);
        if (!is_chain_consistent(emb, config)) {
            out.consistent = false;
            out.counterexample = std::move(config);
            return out;
        }
    }
    return out;
}

}  // namespace sparseising
