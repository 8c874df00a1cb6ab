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
#include <cstdio>
#include <string>
#include <vector>

#include "sparseising/bounds.hpp"
#include "sparseising/generators.hpp"
#include "sparseising/pipeline.hpp"
#include "sparseising/star.hpp"

namespace sparseising {

// Deliberate fault injection for self-checks of the verification suite: a
// sign-flipped intra-chain coupling must make the decomposition family fail.
enum class InjectedBug { none, intra_sign_flip };

struct FamilyResult {
    std::string family;
    int instances = 0;
    int failures = 0;
    std::vector<std::string> counterexamples;

    bool passed() const { return failures == 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int instances_per_family = 25;
    InjectedBug bug = InjectedBug::none;
};

namespace detail {

inline void flip_intra_couplings(EmbeddedHamiltonian& embedded) {
    for (const auto& [logical, chain] : embedded.embedding.chains)
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t j = i + 1; j < chain.size(); ++j)
                if (embedded.hardware.has_edge(chain[i], chain[j]))
                    embedded.hamiltonian.set_coupling(chain[i], chain[j], embedded.chain_strength);
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

// |p_sparse - p_cc * p_solve_eff| < 1e-9 on random instances across a lambda grid.
inline FamilyResult verify_decomposition(const VerifyOptions& opt) {
    FamilyResult out{"theorem2_decomposition", 0, 0, {}};
    detail::Rng rng(detail::derive_seed(opt.seed, 1));
    HardwareRanges ranges{};
    const double lambdas[] = {0.3, 0.9, 1.7, 2.6};
    for (int i = 0; i < opt.instances_per_family; ++i) {
        auto inst = random_embedded_instance(rng);
        double beta = rng.uniform(0.5, 4.0);
        ++out.instances;
        for (double lambda : lambdas) {
            auto embedded = embed(inst.problem, inst.hardware, inst.embedding, lambda);
            if (opt.bug == InjectedBug::intra_sign_flip) detail::flip_intra_couplings(embedded);
            // The identity presumes the embedding contract (ferromagnetic
            // -lambda chains, conserving splits); verify it first.
            auto violations = embedded_invariant_violations(embedded, inst.problem);
            if (!violations.empty()) {
                ++out.failures;
                out.counterexamples.push_back("instance " + std::to_string(i) + " lambda " +
                                              detail::format_double(lambda) + ": " + violations.front());
                break;
            }
            double scale = scale_factor(embedded.hamiltonian, ranges, true);
            double p_cc = chain_consistency_probability(embedded, ranges, beta);
            double p_sparse = sparse_solve_probability(inst.problem, embedded, ranges, beta);
            double p_solve = solve_probability(inst.problem, beta / scale);
            double residual = std::abs(p_sparse - p_cc * p_solve);
            if (!(residual < 1e-9)) {
                ++out.failures;
                out.counterexamples.push_back("instance " + std::to_string(i) + " lambda " +
                                              detail::format_double(lambda) + " residual " +
                                              detail::format_double(residual));
                break;
            }
        }
    }
    return out;
}

// At lambda just above the conductance bound, every ground state of the
// embedded Hamiltonian is chain consistent.
inline FamilyResult verify_ground_consistency(const VerifyOptions& opt) {
    FamilyResult out{"theorem3_ground_consistency", 0, 0, {}};
    detail::Rng rng(detail::derive_seed(opt.seed, 2));
    for (int i = 0; i < opt.instances_per_family; ++i) {
        auto inst = random_embedded_instance(rng);
        ++out.instances;
        auto embedded = embed(inst.problem, inst.hardware, inst.embedding, 1.0);
        double bound = conductance_bound(embedded);
        double lambda = bound > 0.0 ? bound * 1.01 : 1e-6;
        auto check = ground_state_consistency_check(inst.problem, inst.hardware, inst.embedding, lambda);
        if (!check.consistent) {
            ++out.failures;
            out.counterexamples.push_back("instance " + std::to_string(i) + " bound " +
                                          detail::format_double(bound) + " has a broken ground state");
        }
    }
    return out;
}

// Spectral dominance 1/lambda_2 >= 1/(2 Phi) and the Cheeger sandwich on
// random weighted chains.
inline FamilyResult verify_cheeger(const VerifyOptions& opt) {
    FamilyResult out{"cheeger_spectral", 0, 0, {}};
    detail::Rng rng(detail::derive_seed(opt.seed, 3));
    for (int i = 0; i < opt.instances_per_family; ++i) {
        auto g = random_chain_graph(rng);
        ++out.instances;
        auto spectral = spectral_bound(g);
        auto cond = conductance_exact(g);
        auto check = cheeger_check(g);
        bool dominance = spectral.bound >= 1.0 / (2.0 * cond.phi) - 1e-9;
        if (!dominance || !check.ok) {
            ++out.failures;
            out.counterexamples.push_back("chain " + std::to_string(i) + " lambda2 " +
                                          detail::format_double(spectral.lambda2) + " phi " +
                                          detail::format_double(cond.phi) + (dominance ? " (sandwich)" : " (dominance)"));
        }
    }
    return out;
}

// Closed-form star quantities against exhaustive enumeration.
inline FamilyResult verify_star_closed_form(const VerifyOptions& opt) {
    FamilyResult out{"star_closed_form", 0, 0, {}};
    detail::Rng rng(detail::derive_seed(opt.seed, 4));
    HardwareRanges ranges{};
    for (int i = 0; i < opt.instances_per_family; ++i) {
        int l = 1 + static_cast<int>(rng.below(3));
        double beta = rng.uniform(0.2, 4.0);
        double lambda = rng.uniform(0.0, 8.0);
        ++out.instances;
        auto star = build_star_instance(l);
        auto report = run_pipeline(star.problem, star.hardware, star.embedding, ranges, beta, lambda);
        StarParams p{l, beta, lambda, ranges};
        double d_cc = std::abs(report.p_cc - star_pcc(p));
        double d_sparse = std::abs(report.p_sparse - star_sparse_solve(p));
        if (!(d_cc < 1e-9 && d_sparse < 1e-9)) {
            ++out.failures;
            out.counterexamples.push_back("l " + std::to_string(l) + " beta " + detail::format_double(beta) +
                                          " lambda " + detail::format_double(lambda) + " d_cc " +
                                          detail::format_double(d_cc) + " d_sparse " +
                                          detail::format_double(d_sparse));
        }
    }
    return out;
}

// Gibbs equivalence of rescaling: P(.|H/s, beta) == P(.|H, beta/s) per state,
// and range compliance of the rescaled Hamiltonian.
inline FamilyResult verify_rescaling(const VerifyOptions& opt) {
    FamilyResult out{"gibbs_rescaling", 0, 0, {}};
    detail::Rng rng(detail::derive_seed(opt.seed, 5));
    HardwareRanges ranges{};
    for (int i = 0; i < opt.instances_per_family; ++i) {
        auto inst = random_embedded_instance(rng);
        double beta = rng.uniform(0.5, 4.0);
        double lambda = rng.uniform(0.0, 6.0);
        ++out.instances;
        auto embedded = embed(inst.problem, inst.hardware, inst.embedding, lambda);
        auto scaled = rescale(embedded.hamiltonian, ranges);
        auto left = exact_distribution(scaled.hamiltonian, beta);
        auto right = exact_distribution(embedded.hamiltonian, beta / scaled.scale);
        double worst = 0.0;
        for (std::size_t k = 0; k < left.prob.size(); ++k)
            worst = std::max(worst, std::abs(left.prob[k] - right.prob[k]));
        bool in_range = true;
        for (double h : scaled.hamiltonian.biases()) in_range &= h >= ranges.m_min - 1e-12 && h <= ranges.m_max + 1e-12;
        for (const auto& c : scaled.hamiltonian.couplings())
            in_range &= c.value >= ranges.j_min - 1e-12 && c.value <= ranges.j_max + 1e-12;
        if (!(worst < 1e-12) || !in_range) {
            ++out.failures;
            out.counterexamples.push_back("instance " + std::to_string(i) + " max state deviation " +
                                          detail::format_double(worst) + (in_range ? "" : " (range violation)"));
        }
    }
    return out;
}

inline std::vector<FamilyResult> run_verification(const VerifyOptions& opt) {
    return {verify_decomposition(opt), verify_ground_consistency(opt), verify_cheeger(opt),
            verify_star_closed_form(opt), verify_rescaling(opt)};
}

}  // namespace sparseising
