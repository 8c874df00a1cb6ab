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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparseising/sparseising.hpp"

namespace {

using namespace sparseising;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitSizeLimit = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Seed precedence: --seed flag > SPARSE_ISING_SEED env > fixed default 42.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SPARSE_ISING_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParameterError("SPARSE_ISING_SEED is not an integer: " + std::string(env));
        }
    }
    return 42;
}

struct OutputTarget {
    std::string path;  // empty -> stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw IoError("cannot open " + path + " for writing");
        out << text;
    }
};

struct CommonInputs {
    std::string hamiltonian_path;
    std::string hardware_path;
    std::string embedding_path;

    IsingHamiltonian problem;
    HardwareGraph hardware;
    Embedding embedding;

    void load() {
        problem = hamiltonian_from_json(load_json_file(hamiltonian_path));
        hardware = hardware_from_json(load_json_file(hardware_path));
        embedding = embedding_from_json(load_json_file(embedding_path));
        auto diags = validate(embedding, problem, hardware);
        if (!diags.empty()) {
            std::string what = "invalid embedding:";
            for (const auto& d : diags) what += "\n  - " + d;
            throw ValidationError(what);
        }
    }
};

struct RangeFlags {
    std::vector<double> h_range;  // a b
    std::vector<double> j_range;
    bool no_clamp = false;

    HardwareRanges ranges() const {
        HardwareRanges r{};
        if (!h_range.empty()) {
            if (h_range.size() != 2) throw ParameterError("--h-range takes exactly two values");
            r.m_min = std::min(h_range[0], h_range[1]);
            r.m_max = std::max(h_range[0], h_range[1]);
        }
        if (!j_range.empty()) {
            if (j_range.size() != 2) throw ParameterError("--j-range takes exactly two values");
            r.j_min = std::min(j_range[0], j_range[1]);
            r.j_max = std::max(j_range[0], j_range[1]);
        }
        r.validate();
        return r;
    }
};

void add_range_flags(CLI::App* cmd, RangeFlags& flags) {
    cmd->add_option("--h-range", flags.h_range, "bias range bounds (two values, default -4 4)")->expected(2);
    cmd->add_option("--j-range", flags.j_range, "coupling range bounds (two values, default -2 1)")->expected(2);
    cmd->add_flag("--no-clamp", flags.no_clamp, "use the raw scaling function (allows scale < 1)");
}

std::string csv_header(const IsingHamiltonian& problem) {
    std::string header = "lambda,scale,beta_eff,p_cc,p_solve_eff,p_sparse,product";
    for (const auto& n : problem.nodes()) header += ",break_" + n;
    return header + "\n";
}

std::string csv_row(const PipelineReport& r, const IsingHamiltonian& problem) {
    std::string row = fmt(r.lambda) + "," + fmt(r.scale) + "," + fmt(r.beta_eff) + "," + fmt(r.p_cc) + "," +
                      fmt(r.p_solve_eff) + "," + fmt(r.p_sparse) + "," + fmt(r.p_cc * r.p_solve_eff);
    for (const auto& n : problem.nodes()) row += "," + fmt(r.per_chain_break.at(n));
    return row + "\n";
}

nlohmann::json report_json(const PipelineReport& r) {
    nlohmann::json j{{"lambda", r.lambda},       {"scale", r.scale},
                     {"beta_eff", r.beta_eff},   {"p_cc", r.p_cc},
                     {"p_solve_eff", r.p_solve_eff}, {"p_sparse", r.p_sparse},
                     {"product", r.p_cc * r.p_solve_eff},
                     {"method", r.method == SamplerMode::exact ? "exact" : "mcmc"}};
    j["per_chain_break"] = r.per_chain_break;
    if (r.mcmc) {
        auto ci = [](const EventEstimate& e) {
            return nlohmann::json{{"estimate", e.estimate}, {"ci_low", e.ci_low}, {"ci_high", e.ci_high},
                                  {"n_samples", e.n_samples}};
        };
        nlohmann::json m{{"p_cc", ci(r.mcmc->p_cc)}, {"p_sparse", ci(r.mcmc->p_sparse)}};
        for (const auto& [label, est] : r.mcmc->per_chain_break) m["per_chain_break"][label] = ci(est);
        j["mcmc"] = m;
    }
    return j;
}

int cmd_energy(const std::string& h_path, const std::string& config_path, const std::string& format,
               const OutputTarget& out) {
    auto H = hamiltonian_from_json(load_json_file(h_path));
    auto s = config_from_json(load_json_file(config_path));
    double e = energy(H, s);
    if (format == "json")
        out.write(nlohmann::json{{"energy", e}}.dump(2) + "\n");
    else
        out.write("energy\n" + fmt(e) + "\n");
    return kExitOk;
}

struct SamplerFlags {
    std::string mode = "exact";
    long sweeps = 20000;
    long burn_in = 2000;
    int num_chains = 2;
    std::optional<std::uint64_t> seed;

    SamplerConfig config() const {
        SamplerConfig cfg;
        if (mode == "exact")
            cfg.mode = SamplerMode::exact;
        else if (mode == "mcmc")
            cfg.mode = SamplerMode::mcmc;
        else
            throw ParameterError("--mode must be exact or mcmc");
        cfg.sweeps = sweeps;
        cfg.burn_in = burn_in;
        cfg.num_chains = num_chains;
        cfg.seed = resolve_seed(seed);
        return cfg;
    }
};

void add_sampler_flags(CLI::App* cmd, SamplerFlags& flags) {
    cmd->add_option("--mode", flags.mode, "exact | mcmc (default exact)");
    cmd->add_option("--sweeps", flags.sweeps, "recorded sweeps per mcmc chain");
    cmd->add_option("--burn-in", flags.burn_in, "discarded leading sweeps per mcmc chain");
    cmd->add_option("--chains", flags.num_chains, "independent mcmc chains");
    cmd->add_option("--seed", flags.seed, "rng seed (fallback: SPARSE_ISING_SEED, then 42)");
}

int cmd_pipeline(CommonInputs& in, const RangeFlags& rf, const SamplerFlags& sf, double beta, double lambda,
                 const std::string& format, const OutputTarget& out) {
    in.load();
    auto report = run_pipeline(in.problem, in.hardware, in.embedding, rf.ranges(), beta, lambda, sf.config(),
                               kDefaultTieTolerance, !rf.no_clamp);
    if (format == "json")
        out.write(report_json(report).dump(2) + "\n");
    else
        out.write(csv_header(in.problem) + csv_row(report, in.problem));
    return kExitOk;
}

int cmd_sweep(CommonInputs& in, const RangeFlags& rf, const SamplerFlags& sf, double beta,
              const std::vector<double>& grid_spec, const std::string& format, const OutputTarget& out) {
    if (grid_spec.size() != 3) throw ParameterError("--lambda-grid takes start stop step");
    double start = grid_spec[0], stop = grid_spec[1], step = grid_spec[2];
    if (!(step > 0)) throw ParameterError("lambda grid step must be positive");
    if (stop < start) throw ParameterError("lambda grid stop must be >= start");
    in.load();

    std::vector<double> lambdas;
    for (int k = 0;; ++k) {
        double lam = start + k * step;
        if (lam > stop + 1e-12) break;
        lambdas.push_back(lam);
    }
    auto cfg = sf.config();
    auto ranges = rf.ranges();
    std::vector<PipelineReport> reports;
    reports.reserve(lambdas.size());
    for (double lam : lambdas)
        reports.push_back(run_pipeline(in.problem, in.hardware, in.embedding, ranges, beta, lam, cfg,
                                       kDefaultTieTolerance, !rf.no_clamp));

    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : reports) rows.push_back(report_json(r));
        out.write(rows.dump(2) + "\n");
    } else {
        std::string text = csv_header(in.problem);
        for (const auto& r : reports) text += csv_row(r, in.problem);
        out.write(text);
    }
    return kExitOk;
}

int cmd_star_scan(const std::vector<int>& degrees, const std::vector<double>& thresholds, double beta,
                  double grid_step, const RangeFlags& rf, const std::vector<int>& length_grid, int length_degree,
                  const std::string& format, const OutputTarget& out, std::string summary_path) {
    auto ranges = rf.ranges();
    nlohmann::json summary;
    std::string csv;

    if (!length_grid.empty()) {
        // Chain-length variant: hub chain replaced by a path, lambda* by
        // exhaustive enumeration at fixed degree.
        if (length_grid.size() != 2 || length_grid[0] < 2 || length_grid[1] < length_grid[0])
            throw ParameterError("--length-grid takes min max with 2 <= min <= max");
        if (length_degree < 2 || length_degree % 2 != 0)
            throw ParameterError("--degree must be even and >= 2");
        csv = "length,degree,l,threshold,lambda_star,status\n";
        for (double delta : thresholds) {
            std::vector<std::pair<double, double>> points;
            for (int L = length_grid[0]; L <= length_grid[1]; ++L) {
                auto inst = build_star_path_instance(length_degree / 2, L);
                std::string status = "ok";
                double lam = 0.0;
                try {
                    lam = required_chain_strength_enumerated(inst.problem, inst.hardware, inst.embedding, ranges,
                                                             beta, delta, grid_step, !rf.no_clamp);
                    if (lam == 0.0) status = "already_satisfied_at_lambda_0";
                } catch (const SaturationError&) {
                    status = "saturated";
                    lam = std::numeric_limits<double>::quiet_NaN();
                }
                csv += std::to_string(L) + "," + std::to_string(length_degree) + "," +
                       std::to_string(length_degree / 2) + "," + fmt(delta) + "," + fmt(lam) + "," + status + "\n";
                if (status == "ok" && lam > 0.0) points.emplace_back(L, lam);
            }
            nlohmann::json entry{{"threshold", delta}, {"points", points.size()}};
            if (points.size() >= 3) {
                auto fit = scaling_exponent_fit(points);
                entry["slope"] = fit.slope;
                entry["intercept"] = fit.intercept;
            }
            summary["length_scan"].push_back(entry);
        }
    } else {
        csv = "delta,l,threshold,lambda_star,bound,status\n";
        for (double delta : thresholds) {
            std::vector<std::pair<double, double>> points;
            std::vector<int> even_degrees;
            for (int d : degrees)
                if (d >= 2 && d % 2 == 0) even_degrees.push_back(d);
            auto bound = min_chain_strength_bound(delta, beta, ranges.j_min_magnitude(), even_degrees);
            for (int d : degrees) {
                if (d < 2 || d % 2 != 0) throw ParameterError("degrees must be even and >= 2");
                std::string status = "ok";
                double lam = 0.0;
                try {
                    lam = required_chain_strength(d / 2, beta, delta, grid_step, ranges);
                    if (lam == 0.0) status = "already_satisfied_at_lambda_0";
                } catch (const SaturationError&) {
                    status = "saturated";
                    lam = std::numeric_limits<double>::quiet_NaN();
                }
                double b = bound.vacuous ? std::numeric_limits<double>::quiet_NaN() : bound.bound_at.at(d);
                csv += std::to_string(d) + "," + std::to_string(d / 2) + "," + fmt(delta) + "," + fmt(lam) + "," +
                       fmt(b) + "," + status + "\n";
                if (status == "ok" && lam > 0.0) points.emplace_back(d, lam);
            }
            nlohmann::json entry{{"threshold", delta},
                                 {"c_delta", bound.vacuous ? nlohmann::json() : nlohmann::json(bound.c_delta)},
                                 {"delta_0", bound.delta_0},
                                 {"points", points.size()}};
            if (points.size() >= 3) {
                auto fit = scaling_exponent_fit(points);
                entry["slope"] = fit.slope;
                entry["intercept"] = fit.intercept;
            }
            summary["degree_scan"].push_back(entry);
        }
    }

    if (format == "json") {
        nlohmann::json j{{"csv", csv}, {"summary", summary}};
        out.write(j.dump(2) + "\n");
        return kExitOk;
    }
    out.write(csv);
    if (!summary_path.empty()) {
        save_json_file(summary_path, summary);
    } else if (!out.path.empty()) {
        save_json_file(out.path + ".summary.json", summary);
    } else {
        // keep stdout as clean CSV; the slope summary goes to stderr
        std::cerr << summary.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_bounds(CommonInputs& in, const std::string& format, const OutputTarget& out) {
    in.load();
    auto embedded = embed(in.problem, in.hardware, in.embedding, 1.0);  // weights do not depend on lambda

    nlohmann::json chains = nlohmann::json::array();
    std::string csv = "chain,volume,edges,phi,conductance_bound,lambda2,spectral_bound,flags\n";
    double max_cond = 0.0, max_spectral = 0.0;
    for (const auto& logical : in.problem.nodes()) {
        auto g = build_chain_graph(embedded, logical);
        auto cond = conductance_exact(g);
        auto spectral = spectral_bound(g);
        std::string flags;
        if (spectral.floored_weights) flags += "floored-zero-weights;";
        if (g.vertices.size() >= 2) {
            auto check = cheeger_check(g);
            if (!check.ok) flags += "cheeger-violation;";
        }
        double cb = std::isinf(cond.phi) ? 0.0 : 1.0 / (2.0 * cond.phi);
        max_cond = std::max(max_cond, cb);
        max_spectral = std::max(max_spectral, spectral.bound);
        csv += logical + "," + fmt(g.total_weight()) + "," + std::to_string(g.edges.size()) + "," + fmt(cond.phi) +
               "," + fmt(cb) + "," + fmt(spectral.lambda2) + "," + fmt(spectral.bound) + "," + flags + "\n";
        chains.push_back(nlohmann::json{{"chain", logical},
                                        {"volume", g.total_weight()},
                                        {"edges", g.edges.size()},
                                        {"phi", cond.phi},
                                        {"conductance_bound", cb},
                                        {"lambda2", spectral.lambda2},
                                        {"spectral_bound", spectral.bound},
                                        {"flags", flags}});
    }
    if (format == "json") {
        nlohmann::json j{{"chains", chains},
                         {"max_conductance_bound", max_cond},
                         {"max_spectral_bound", max_spectral}};
        out.write(j.dump(2) + "\n");
    } else {
        csv += "max,,,," + fmt(max_cond) + ",," + fmt(max_spectral) + ",\n";
        out.write(csv);
    }
    return kExitOk;
}

int cmd_verify(const std::optional<std::uint64_t>& seed, int instances, const std::string& inject,
               const std::string& format, const OutputTarget& out) {
    VerifyOptions opt;
    opt.seed = resolve_seed(seed);
    opt.instances_per_family = instances;
    if (inject == "intra-sign-flip")
        opt.bug = InjectedBug::intra_sign_flip;
    else if (!inject.empty() && inject != "none")
        throw ParameterError("unknown injection: " + inject);

    auto results = run_verification(opt);
    bool all_passed = true;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& fam : results) {
            all_passed &= fam.passed();
            j.push_back(nlohmann::json{{"family", fam.family},
                                       {"instances", fam.instances},
                                       {"failures", fam.failures},
                                       {"passed", fam.passed()},
                                       {"counterexamples", fam.counterexamples}});
        }
        out.write(j.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& fam : results) {
            all_passed &= fam.passed();
            text += std::string(fam.passed() ? "PASS" : "FAIL") + " " + fam.family + " instances=" +
                    std::to_string(fam.instances) + " failures=" + std::to_string(fam.failures) + "\n";
            for (const auto& ce : fam.counterexamples) text += "  counterexample: " + ce + "\n";
        }
        out.write(text);
    }
    return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse Ising machine model: exact Gibbs statistics over minor-embedded Hamiltonians"};
    app.require_subcommand(1);

    // energy
    auto* energy_cmd = app.add_subcommand("energy", "evaluate H(s) for a configuration");
    std::string energy_h, energy_cfg, energy_fmt = "csv", energy_out;
    energy_cmd->add_option("--hamiltonian", energy_h, "Hamiltonian JSON")->required();
    energy_cmd->add_option("--config", energy_cfg, "spin configuration JSON")->required();
    energy_cmd->add_option("--format", energy_fmt, "csv | json");
    energy_cmd->add_option("--out", energy_out, "output path (default stdout)");

    // pipeline
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run the sparse pipeline at one chain strength");
    CommonInputs pipe_in;
    RangeFlags pipe_rf;
    SamplerFlags pipe_sf;
    double pipe_beta = 1.0, pipe_lambda = 1.0;
    std::string pipe_fmt = "csv", pipe_out;
    pipeline_cmd->add_option("--hamiltonian", pipe_in.hamiltonian_path)->required();
    pipeline_cmd->add_option("--hardware", pipe_in.hardware_path)->required();
    pipeline_cmd->add_option("--embedding", pipe_in.embedding_path)->required();
    pipeline_cmd->add_option("--beta", pipe_beta, "inverse temperature")->required();
    pipeline_cmd->add_option("--lambda", pipe_lambda, "chain strength")->required();
    add_range_flags(pipeline_cmd, pipe_rf);
    add_sampler_flags(pipeline_cmd, pipe_sf);
    pipeline_cmd->add_option("--format", pipe_fmt, "csv | json");
    pipeline_cmd->add_option("--out", pipe_out);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "pipeline metrics over a lambda grid");
    CommonInputs sweep_in;
    RangeFlags sweep_rf;
    SamplerFlags sweep_sf;
    double sweep_beta = 1.0;
    std::vector<double> sweep_grid;
    std::string sweep_fmt = "csv", sweep_out;
    sweep_cmd->add_option("--hamiltonian", sweep_in.hamiltonian_path)->required();
    sweep_cmd->add_option("--hardware", sweep_in.hardware_path)->required();
    sweep_cmd->add_option("--embedding", sweep_in.embedding_path)->required();
    sweep_cmd->add_option("--beta", sweep_beta, "inverse temperature")->required();
    sweep_cmd->add_option("--lambda-grid", sweep_grid, "start stop step")->expected(3)->required();
    add_range_flags(sweep_cmd, sweep_rf);
    add_sampler_flags(sweep_cmd, sweep_sf);
    sweep_cmd->add_option("--format", sweep_fmt, "csv | json");
    sweep_cmd->add_option("--out", sweep_out);

    // star-scan
    auto* star_cmd = app.add_subcommand("star-scan", "required chain strength scaling for the star model");
    std::vector<int> star_degrees{8, 16, 32, 64, 128};
    std::vector<double> star_thresholds{0.02, 0.10, 0.50};
    double star_beta = 1.0, star_step = 0.01;
    RangeFlags star_rf;
    std::vector<int> star_length_grid;
    int star_length_degree = 8;
    std::string star_fmt = "csv", star_out, star_summary;
    star_cmd->add_option("--degrees", star_degrees, "degree grid (even values)");
    star_cmd->add_option("--thresholds", star_thresholds, "consistency thresholds delta");
    star_cmd->add_option("--beta", star_beta, "inverse temperature");
    star_cmd->add_option("--grid-step", star_step, "lambda grid step (default 0.01)");
    star_cmd->add_option("--length-grid", star_length_grid, "hub path length min max (chain-length variant)")
        ->expected(2);
    star_cmd->add_option("--degree", star_length_degree, "fixed degree for the chain-length variant");
    add_range_flags(star_cmd, star_rf);
    star_cmd->add_option("--format", star_fmt, "csv | json");
    star_cmd->add_option("--out", star_out);
    star_cmd->add_option("--summary-out", star_summary, "slope summary JSON path");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "per-chain conductance and spectral chain-strength bounds");
    CommonInputs bounds_in;
    std::string bounds_fmt = "csv", bounds_out;
    bounds_cmd->add_option("--hamiltonian", bounds_in.hamiltonian_path)->required();
    bounds_cmd->add_option("--hardware", bounds_in.hardware_path)->required();
    bounds_cmd->add_option("--embedding", bounds_in.embedding_path)->required();
    bounds_cmd->add_option("--format", bounds_fmt, "csv | json");
    bounds_cmd->add_option("--out", bounds_out);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "randomized invariant suite");
    std::optional<std::uint64_t> verify_seed;
    int verify_instances = 25;
    std::string verify_inject, verify_fmt = "text", verify_out;
    verify_cmd->add_option("--seed", verify_seed, "rng seed (fallback: SPARSE_ISING_SEED, then 42)");
    verify_cmd->add_option("--instances", verify_instances, "instances per family (default 25)");
    verify_cmd->add_option("--inject", verify_inject, "fault injection (intra-sign-flip) for self-checks")
        ->group("");  // hidden
    verify_cmd->add_option("--format", verify_fmt, "text | json");
    verify_cmd->add_option("--out", verify_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(energy_cmd))
            return cmd_energy(energy_h, energy_cfg, energy_fmt, OutputTarget{energy_out});
        if (app.got_subcommand(pipeline_cmd))
            return cmd_pipeline(pipe_in, pipe_rf, pipe_sf, pipe_beta, pipe_lambda, pipe_fmt, OutputTarget{pipe_out});
        if (app.got_subcommand(sweep_cmd))
            return cmd_sweep(sweep_in, sweep_rf, sweep_sf, sweep_beta, sweep_grid, sweep_fmt,
                             OutputTarget{sweep_out});
        if (app.got_subcommand(star_cmd))
            return cmd_star_scan(star_degrees, star_thresholds, star_beta, star_step, star_rf, star_length_grid,
                                 star_length_degree, star_fmt, OutputTarget{star_out}, star_summary);
        if (app.got_subcommand(bounds_cmd)) return cmd_bounds(bounds_in, bounds_fmt, OutputTarget{bounds_out});
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(verify_seed, verify_instances, verify_inject, verify_fmt, OutputTarget{verify_out});
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeLimit;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
