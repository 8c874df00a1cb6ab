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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparseising/detail/numeric.hpp"
#include "sparseising/errors.hpp"
#include "sparseising/rescaling.hpp"

namespace sparseising {

// Parameters of the degree-Delta star model (Delta = 2l): a central logical
// spin split over two hub qubits, each coupled to l unit-bias auxiliaries.
struct StarParams {
    int l = 1;
    double beta = 1.0;
    double lambda = 0.0;
    HardwareRanges ranges{};

    double scale() const { return std::max(1.0, lambda / ranges.j_min_magnitude()); }
    double beta_eff() const { return beta / scale(); }
    double z() const { return 2.0 * beta_eff(); }
};

namespace detail {

inline void check_star_params(const StarParams& p, int min_l) {
    if (p.l < min_l) throw ParameterError("star model needs l >= " + std::to_string(min_l));
    if (p.beta < 0) throw ParameterError("beta must be nonnegative");
    if (p.lambda < 0) throw ParameterError("chain strength must be nonnegative");
    p.ranges.validate();
}

}  // namespace detail

// Chain consistency probability of the embedded star,
//   P_cc = 2 / (2 + e^{-z lambda} (cosh^l z + cosh^{-l} z)),
// evaluated in the log domain so l*z far beyond double range stays finite.
// l = 0 is admitted for testing (two decoupled hubs).
inline double star_pcc(const StarParams& p) {
    detail::check_star_params(p, 0);
    double z = p.z();
    double lc = detail::log_cosh(z);
    double log_den = detail::log_sum_exp({std::numbers::ln2, -z * p.lambda + p.l * lc, -z * p.lambda - p.l * lc});
    return std::exp(std::numbers::ln2 - log_den);
}

// Solution probability of the logical star at the effective temperature,
//   P_solve(beta_eff) = (1 + e^{-2z})^{-l}.
inline double star_solve(const StarParams& p) {
    detail::check_star_params(p, 0);
    return std::exp(-p.l * std::log1p(std::exp(-2.0 * p.z())));
}

// P_sparse for the star: the product of the two closed forms.
inline double star_sparse_solve(const StarParams& p) { return star_pcc(p) * star_solve(p); }

// Limit of star_pcc as lambda -> infinity (z lambda -> 2 beta |j_min|).
inline double star_pcc_limit(double beta, double j_min_magnitude) {
    return 1.0 / (1.0 + std::exp(-2.0 * beta * j_min_magnitude));
}

// Minimum-chain-strength lemma: C_delta and the degree threshold Delta_0.
// vacuous is set when the radicand 4 beta J + 2 ln(2(1-delta)/delta) is not
// positive (delta too close to 1), in which case no bound is produced.
struct BoundResult {
    double c_delta = 0.0;
    double delta_0 = 0.0;
    std::map<int, double> bound_at;  // degree -> C_delta sqrt(degree)
    bool vacuous = false;
};

inline BoundResult min_chain_strength_bound(double delta, double beta, double j_min_magnitude,
                                            const std::vector<int>& degree_grid) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    if (beta <= 0 || j_min_magnitude <= 0) throw ParameterError("beta and |j_min| must be positive");
    for (int d : degree_grid)
        if (d < 2 || d % 2 != 0) throw ParameterError("degree grid entries must be even and >= 2");

    double log_term = std::log(2.0 * (1.0 - delta) / delta);
    double radicand = 4.0 * beta * j_min_magnitude + 2.0 * log_term;
    BoundResult out;
    out.delta_0 = 16.0 * beta * j_min_magnitude + 8.0 * log_term;
    if (radicand <= 0.0) {
        out.vacuous = true;
        out.c_delta = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.c_delta = j_min_magnitude * beta / std::sqrt(radicand);
    for (int d : degree_grid) out.bound_at[d] = out.c_delta * std::sqrt(static_cast<double>(d));
    return out;
}

// Smallest grid point lambda* = k * grid_step with star_pcc >= delta.  The
// grid step mirrors the 0.01 search protocol; the values themselves come from
// the closed form.  Throws SaturationError (carrying the limit) when delta is
// not reachable at any finite lambda.
inline double required_chain_strength(int l, double beta, double delta, double grid_step = 0.01,
                                      const HardwareRanges& ranges = {}) {
    if (l < 1) throw ParameterError("star model needs l >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    if (!(grid_step > 0.0)) throw ParameterError("grid step must be positive");
    double limit = star_pcc_limit(beta, ranges.j_min_magnitude());
    if (delta >= limit)
        throw SaturationError("threshold " + std::to_string(delta) + " is at or above the lambda->infinity limit " +
                                  std::to_string(limit),
                              limit);
    StarParams p{l, beta, 0.0, ranges};
    // star_pcc is nondecreasing in lambda, so the first grid hit is the answer.
    for (long k = 0; k <= 100000000L; ++k) {
        p.lambda = static_cast<double>(k) * grid_step;
        if (star_pcc(p) >= delta) return p.lambda;
    }
    throw NumericalError("grid search for required chain strength did not converge");
}

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares on (ln x, ln y).
inline LogLogFit scaling_exponent_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw ParameterError("log-log fit needs at least 3 points");
    detail::KahanSum sx, sy, sxx, sxy;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) throw ParameterError("log-log fit needs positive coordinates");
        double lx = std::log(x), ly = std::log(y);
        sx.add(lx);
        sy.add(ly);
        sxx.add(lx * lx);
        sxy.add(lx * ly);
    }
    double n = static_cast<double>(points.size());
    double denom = n * sxx.value() - sx.value() * sx.value();
    if (denom == 0.0) throw ParameterError("log-log fit is degenerate: all abscissae equal");
    LogLogFit fit;
    fit.slope = (n * sxy.value() - sx.value() * sy.value()) / denom;
    fit.intercept = (sy.value() - fit.slope * sx.value()) / n;
    return fit;
}

// Degree threshold (beta |j_min| gap / c)^2 beyond which energy resolution is
// lost.  c is problem dependent; there is no canonical value.
inline double critical_degree_threshold(double beta, double j_min_magnitude, double gap, double c = 1.0) {
    if (beta <= 0 || j_min_magnitude <= 0 || gap <= 0 || c <= 0)
        throw ParameterError("critical degree threshold needs positive arguments");
    double r = beta * j_min_magnitude * gap / c;
    return r * r;
}

}  // namespace sparseising
