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
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "sparseising/embedding.hpp"
#include "sparseising/gibbs.hpp"
#include "sparseising/ising.hpp"
#include "sparseising/rescaling.hpp"

namespace sparseising {

// Metrics of one pipeline run at a fixed chain strength.
struct PipelineReport {
    double lambda = 0.0;
    double scale = 1.0;      // E_lambda
    double beta_eff = 0.0;   // beta / scale
    double p_cc = 0.0;       // chain-consistent Gibbs mass of H_e / E_lambda
    double p_solve_eff = 0.0;  // ground mass of H_p at beta_eff
    double p_sparse = 0.0;   // mass of consistent states unembedding to the ground set
    std::map<Label, double> per_chain_break;  // marginal break probability per chain
    SamplerMode method = SamplerMode::exact;

    struct McmcDetail {
        EventEstimate p_cc;
        EventEstimate p_sparse;
        std::map<Label, EventEstimate> per_chain_break;
    };
    std::optional<McmcDetail> mcmc;
};

namespace detail {

// Incremental chain bookkeeping for a Gray-code walk over physical configs:
// per-chain +1 counts, the number of broken chains, and the logical mask read
// off the chain representatives (meaningful whenever no chain is broken).
class ChainTracker {
  public:
    ChainTracker(const IsingHamiltonian& phys, const IsingHamiltonian& problem, const Embedding& emb) {
        chain_sizes_.reserve(problem.num_nodes());
        chain_of_.assign(phys.num_nodes(), -1);
        representative_.assign(phys.num_nodes(), 0);
        for (int li = 0; li < problem.num_nodes(); ++li) {
            const auto& chain = emb.chain(problem.nodes()[li]);
            chain_sizes_.push_back(static_cast<int>(chain.size()));
            for (const auto& q : chain) chain_of_[phys.index_of(q)] = li;
            representative_[phys.index_of(chain.front())] = 1;
        }
        n_plus_.assign(chain_sizes_.size(), 0);
        // All spins start at -1: every chain is consistent, logical mask 0.
        broken_ = 0;
        logical_mask_ = 0;
    }

    // Mirror the flip of physical spin `bit` (new value `now` in {0,1}).
    void flip(int bit, int now) {
        int c = chain_of_[bit];
        bool was_broken = broken_chain(c);
        n_plus_[c] += now ? 1 : -1;
        bool is_broken = broken_chain(c);
        broken_ += static_cast<int>(is_broken) - static_cast<int>(was_broken);
        if (representative_[bit]) logical_mask_ ^= std::uint32_t{1} << c;
    }

    bool consistent() const { return broken_ == 0; }
    bool chain_broken(int c) const { return broken_chain(c); }
    std::uint32_t logical_mask() const { return logical_mask_; }
    int num_chains() const { return static_cast<int>(chain_sizes_.size()); }

  private:
    bool broken_chain(int c) const { return n_plus_[c] != 0 && n_plus_[c] != chain_sizes_[c]; }

    std::vector<int> chain_sizes_;
    std::vector<int> chain_of_;
    std::vector<char> representative_;
    std::vector<int> n_plus_;
    int broken_ = 0;
    std::uint32_t logical_mask_ = 0;
};

inline std::unordered_set<std::uint32_t> logical_ground_masks(const IsingHamiltonian& problem, double tie_tol,
                                                              int limit) {
    check_enumerable(problem.num_nodes(), limit);
    DenseModel m(problem);
    auto scan = scan_ground(m, tie_tol);
    std::unordered_set<std::uint32_t> masks;
    for (auto mask : scan.ground_masks) masks.insert(static_cast<std::uint32_t>(mask));
    return masks;
}

struct ExactAccumulators {
    double z = 0.0;
    double z_cc = 0.0;
    double z_sparse = 0.0;
    std::vector<double> z_break;
};

// One exhaustive pass over the embedded configuration space at inverse
// temperature beta_eff, with all pipeline events accumulated per state.
inline ExactAccumulators exact_pipeline_scan(const EmbeddedHamiltonian& embedded, const IsingHamiltonian& problem,
                                             double beta_eff, const std::unordered_set<std::uint32_t>& ground,
                                             int limit) {
    const auto& phys = embedded.hamiltonian;
    check_enumerable(phys.num_nodes(), limit);
    DenseModel m(phys);

    double e_min = std::numeric_limits<double>::infinity();
    for_each_configuration(m, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });

    ChainTracker tracker(phys, problem, embedded.embedding);
    KahanSum z, z_cc, z_sparse;
    std::vector<KahanSum> z_break(tracker.num_chains());
    for_each_configuration(m, [&](std::uint64_t mask, double e, int bit) {
        if (bit >= 0) tracker.flip(bit, (mask >> bit) & 1);
        double w = std::exp(-beta_eff * (e - e_min));
        z.add(w);
        if (tracker.consistent()) {
            z_cc.add(w);
            if (ground.count(tracker.logical_mask())) z_sparse.add(w);
        }
        for (int c = 0; c < tracker.num_chains(); ++c)
            if (tracker.chain_broken(c)) z_break[c].add(w);
    });

    ExactAccumulators out;
    out.z = z.value();
    out.z_cc = z_cc.value();
    out.z_sparse = z_sparse.value();
    out.z_break.reserve(z_break.size());
    for (auto& k : z_break) out.z_break.push_back(k.value());
    return out;
}

}  // namespace detail

// P_cc: Gibbs mass of the chain-consistent configurations of H_e/E_lambda.
inline double chain_consistency_probability(const EmbeddedHamiltonian& embedded, const HardwareRanges& ranges,
                                            double beta, bool clamp_to_one = true,
                                            int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    double scale = scale_factor(embedded.hamiltonian, ranges, clamp_to_one);
    double beta_eff = effective_beta(beta, scale);
    // No logical-ground lookup needed; reuse the scan with an empty set.
    IsingHamiltonian problem;
    for (const auto& [logical, chain] : embedded.embedding.chains) problem.add_node(logical);
    auto acc = detail::exact_pipeline_scan(embedded, problem, beta_eff, {}, limit);
    return acc.z_cc / acc.z;
}

// P_sparse: probability that a raw sample of H_e/E_lambda is chain consistent
// and unembeds into the ground set of the problem Hamiltonian.  Together with
// P_cc and P_solve(beta_eff) this realizes the decomposition
// P_sparse = P_cc * P_solve(beta_eff).
inline double sparse_solve_probability(const IsingHamiltonian& problem, const EmbeddedHamiltonian& embedded,
                                       const HardwareRanges& ranges, double beta,
                                       double tie_tol = kDefaultTieTolerance, bool clamp_to_one = true,
                                       int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    double scale = scale_factor(embedded.hamiltonian, ranges, clamp_to_one);
    double beta_eff = effective_beta(beta, scale);
    auto ground = detail::logical_ground_masks(problem, tie_tol, limit);
    auto acc = detail::exact_pipeline_scan(embedded, problem, beta_eff, ground, limit);
    return acc.z_sparse / acc.z;
}

// Two-level approximation of the solution probability, 1/(1 + e^{-beta_eff gap}).
inline double two_level_solve_approx(double beta_eff, double gap) {
    if (!(gap > 0)) throw ParameterError("gap must be positive");
    if (beta_eff < 0) throw ParameterError("beta_eff must be nonnegative");
    return 1.0 / (1.0 + std::exp(-beta_eff * gap));
}

// Large-lambda decay approximation e^{-beta |J_min| gap / lambda}.
inline double solve_decay_approx(double beta, double j_min_magnitude, double gap, double lambda) {
    if (!(lambda > 0)) throw ParameterError("lambda must be positive");
    if (beta < 0 || j_min_magnitude <= 0 || gap <= 0)
        throw ParameterError("decay approximation needs beta >= 0 and positive |J_min|, gap");
    return std::exp(-beta * j_min_magnitude * gap / lambda);
}

// Executes the full pipeline (embed, rescale, sample, unembed-by-discard) and
// fills every report field.  Exact mode enumerates; mcmc mode estimates p_cc,
// p_sparse and the break marginals from Metropolis samples with Wilson
// intervals (p_solve_eff is still exact, the logical problem being small).
inline PipelineReport run_pipeline(const IsingHamiltonian& problem, const HardwareGraph& hw, const Embedding& emb,
                                   const HardwareRanges& ranges, double beta, double lambda,
                                   const SamplerConfig& cfg = {}, double tie_tol = kDefaultTieTolerance,
                                   bool clamp_to_one = true, int limit = kDefaultEnumerationLimit) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    cfg.validate();
    EmbeddedHamiltonian embedded = embed(problem, hw, emb, lambda);

    PipelineReport report;
    report.lambda = lambda;
    report.scale = scale_factor(embedded.hamiltonian, ranges, clamp_to_one);
    report.beta_eff = effective_beta(beta, report.scale);
    report.p_solve_eff = solve_probability(problem, report.beta_eff, tie_tol, limit);
    report.method = cfg.mode;

    auto ground = detail::logical_ground_masks(problem, tie_tol, limit);

    if (cfg.mode == SamplerMode::exact) {
        auto acc = detail::exact_pipeline_scan(embedded, problem, report.beta_eff, ground, limit);
        report.p_cc = acc.z_cc / acc.z;
        report.p_sparse = acc.z_sparse / acc.z;
        for (int li = 0; li < problem.num_nodes(); ++li)
            report.per_chain_break[problem.nodes()[li]] = acc.z_break[li] / acc.z;
        return report;
    }

    // MCMC path: sample the embedded Hamiltonian at beta_eff (identical to
    // sampling H_e/E_lambda at beta).
    const auto& phys = embedded.hamiltonian;
    auto batch = mcmc_sample(phys, report.beta_eff, cfg);

    detail::ChainTracker proto(phys, problem, embedded.embedding);
    std::vector<std::vector<int>> chain_bits(problem.num_nodes());
    std::vector<int> representative_bit(problem.num_nodes(), -1);
    for (int li = 0; li < problem.num_nodes(); ++li) {
        const auto& chain = emb.chain(problem.nodes()[li]);
        for (const auto& q : chain) chain_bits[li].push_back(phys.index_of(q));
        representative_bit[li] = phys.index_of(chain.front());
    }
    auto chain_is_broken = [&](std::uint64_t mask, int li) {
        int first = (mask >> chain_bits[li][0]) & 1;
        for (int b : chain_bits[li])
            if (static_cast<int>((mask >> b) & 1) != first) return true;
        return false;
    };
    auto consistent = [&](std::uint64_t mask) {
        for (int li = 0; li < proto.num_chains(); ++li)
            if (chain_is_broken(mask, li)) return false;
        return true;
    };
    auto logical_of = [&](std::uint64_t mask) {
        std::uint32_t lm = 0;
        for (int li = 0; li < proto.num_chains(); ++li)
            if ((mask >> representative_bit[li]) & 1) lm |= std::uint32_t{1} << li;
        return lm;
    };

    PipelineReport::McmcDetail detail_out;
    detail_out.p_cc = estimate_event(batch, consistent);
    detail_out.p_sparse =
        estimate_event(batch, [&](std::uint64_t mask) { return consistent(mask) && ground.count(logical_of(mask)); });
    for (int li = 0; li < problem.num_nodes(); ++li)
        detail_out.per_chain_break[problem.nodes()[li]] =
            estimate_event(batch, [&](std::uint64_t mask) { return chain_is_broken(mask, li); });

    report.p_cc = detail_out.p_cc.estimate;
    report.p_sparse = detail_out.p_sparse.estimate;
    for (const auto& [label, est] : detail_out.per_chain_break) report.per_chain_break[label] = est.estimate;
    report.mcmc = std::move(detail_out);
    return report;
}

// |p_sparse - p_cc * p_solve_eff| by exact enumeration; the decomposition
// theorem puts this at numerical zero for every valid embedding.
inline double decomposition_check(const IsingHamiltonian& problem, const HardwareGraph& hw, const Embedding& emb,
                                  const HardwareRanges& ranges, double beta, double lambda,
                                  double tie_tol = kDefaultTieTolerance, int limit = kDefaultEnumerationLimit) {
    auto report = run_pipeline(problem, hw, emb, ranges, beta, lambda, {}, tie_tol, true, limit);
    return std::abs(report.p_sparse - report.p_cc * report.p_solve_eff);
}

// Smallest lambda grid point (step grid_step) at which the enumerated P_cc of
// the embedded instance reaches delta.  Used for the chain-length scaling
// scans, where the closed form does not apply.
inline double required_chain_strength_enumerated(const IsingHamiltonian& problem, const HardwareGraph& hw,
                                                 const Embedding& emb, const HardwareRanges& ranges, double beta,
                                                 double delta, double grid_step = 0.01, bool clamp_to_one = true,
                                                 int limit = kDefaultEnumerationLimit) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    if (!(grid_step > 0.0)) throw ParameterError("grid step must be positive");
    if (beta < 0) throw ParameterError("beta must be nonnegative");

    // The embedded energy splits as H_e^lambda(s) = E_field(s) - lambda A(s),
    // with A the intra-chain alignment; tabulating (E_field, A, consistency)
    // once lets the lambda grid scan reuse the enumeration.
    EmbeddedHamiltonian base = embed(problem, hw, emb, 0.0);
    const auto& phys = base.hamiltonian;
    detail::check_enumerable(phys.num_nodes(), std::min(limit, 22));
    detail::DenseModel m(phys);

    std::vector<std::vector<int>> intra_adj(phys.num_nodes());
    int intra_total = 0;
    for (const auto& [logical, chain] : emb.chains) {
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t j = i + 1; j < chain.size(); ++j)
                if (hw.has_edge(chain[i], chain[j])) {
                    int a = phys.index_of(chain[i]);
                    int b = phys.index_of(chain[j]);
                    intra_adj[a].push_back(b);
                    intra_adj[b].push_back(a);
                    ++intra_total;
                }
    }

    const std::uint64_t total = std::uint64_t{1} << phys.num_nodes();
    std::vector<double> field_energy(total);
    std::vector<std::int32_t> align(total);
    std::vector<char> cc(total);

    detail::ChainTracker tracker(phys, problem, emb);
    std::int32_t a_cur = intra_total;  // all spins equal => every intra edge aligned
    detail::for_each_configuration(m, [&](std::uint64_t mask, double e, int bit) {
        if (bit >= 0) {
            tracker.flip(bit, (mask >> bit) & 1);
            int s_now = ((mask >> bit) & 1) ? 1 : -1;
            int nbr = 0;
            for (int j : intra_adj[bit]) nbr += ((mask >> j) & 1) ? 1 : -1;
            a_cur += 2 * s_now * nbr;
        }
        field_energy[mask] = e;
        align[mask] = a_cur;
        cc[mask] = tracker.consistent() ? 1 : 0;
    });

    double j_min_mag = ranges.j_min_magnitude();
    double scale0 = phys.all_zero() ? 0.0 : scale_factor(phys, ranges, false);

    auto pcc_at = [&](double lambda) {
        double raw = std::max(scale0, lambda / j_min_mag);
        double scale = clamp_to_one ? std::max(1.0, raw) : raw;
        if (!(scale > 0)) throw ParameterError("unclamped scale is zero for an all-zero embedded Hamiltonian");
        double beta_eff = beta / scale;
        double e_min = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < total; ++i)
            e_min = std::min(e_min, field_energy[i] - lambda * align[i]);
        detail::KahanSum z, z_cc;
        for (std::uint64_t i = 0; i < total; ++i) {
            double w = std::exp(-beta_eff * (field_energy[i] - lambda * align[i] - e_min));
            z.add(w);
            if (cc[i]) z_cc.add(w);
        }
        return z_cc.value() / z.value();
    };

    constexpr double kLambdaCap = 1000.0;
    for (long k = 0;; ++k) {
        double lambda = static_cast<double>(k) * grid_step;
        if (lambda > kLambdaCap) break;
        if (pcc_at(lambda) >= delta) return lambda;
    }
    throw SaturationError("P_cc does not reach the requested threshold on the searched grid", pcc_at(kLambdaCap));
}

}  // namespace sparseising
