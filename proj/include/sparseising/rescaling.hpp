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
#include <cmath>
#include <utility>

#include "sparseising/errors.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

// Hardware-imposed bounds on biases (m_*) and couplings (j_*).  Defaults are
// the extended D-Wave ranges h in [-4, 4], J in [-2, 1].
struct HardwareRanges {
    double m_max = 4.0;
    double m_min = -4.0;
    double j_max = 1.0;
    double j_min = -2.0;

    void validate() const {
        if (!(m_min < 0.0 && 0.0 < m_max)) throw ParameterError("bias range must straddle zero");
        if (!(j_min < 0.0 && 0.0 < j_max)) throw ParameterError("coupling range must straddle zero");
    }

    double j_min_magnitude() const { return -j_min; }
};

// Scaling divisor that brings every bias and coupling of H into the hardware
// ranges:
//   max{ max h / m_max, min h / m_min, max J / j_max, min J / j_min }.
// Exact zeros are artifacts of the embedding step and are excluded from the
// max terms.  With clamp_to_one (default) the result is floored at 1, so
// small-norm problems are never amplified.
inline double scale_factor(const IsingHamiltonian& H, const HardwareRanges& r, bool clamp_to_one = true) {
    r.validate();
    bool any = false;
    double s = 0.0;
    for (double h : H.biases()) {
        if (h == 0.0) continue;
        any = true;
        s = std::max(s, h > 0 ? h / r.m_max : h / r.m_min);
    }
    for (const auto& c : H.couplings()) {
        if (c.value == 0.0) continue;
        any = true;
        s = std::max(s, c.value > 0 ? c.value / r.j_max : c.value / r.j_min);
    }
    if (!any) {
        if (clamp_to_one) return 1.0;
        throw ParameterError("scale factor of an all-zero Hamiltonian is undefined without clamping");
    }
    return clamp_to_one ? std::max(s, 1.0) : s;
}

struct RescaleResult {
    IsingHamiltonian hamiltonian;
    double scale;
};

// Divides every bias and coupling by the scale factor; the result fits the
// ranges and rescaling it again is the identity.
inline RescaleResult rescale(const IsingHamiltonian& H, const HardwareRanges& r, bool clamp_to_one = true) {
    double s = scale_factor(H, r, clamp_to_one);
    IsingHamiltonian out(H.nodes());
    for (int i = 0; i < H.num_nodes(); ++i) out.set_bias(H.nodes()[i], H.biases()[i] / s);
    for (const auto& c : H.couplings()) out.set_coupling(H.nodes()[c.a], H.nodes()[c.b], c.value / s);
    return {std::move(out), s};
}

// beta_eff = beta / scale: sampling H/scale at beta equals sampling H at beta_eff.
inline double effective_beta(double beta, double scale) {
    if (beta < 0) throw ParameterError("beta must be nonnegative");
    if (!(scale > 0)) throw ParameterError("scale must be positive");
    return beta / scale;
}

}  // namespace sparseising
