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

#include "sparseising/embedding.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

struct EmbeddedInstance {
    IsingHamiltonian problem;
    HardwareGraph hardware;
    Embedding embedding;
};

// Three-spin worked example with a frustrated triangle:
//   H = -s1 - 0.3 s2 - s1 s2 + s2 s3 - s1 s3
// embedded as chain C1 = {q1, q2}, C2 = {q3, q4, q5} (a path), and the
// singleton C3 = {q6}.  At beta = 4 its chain-break marginals are
// non-monotone in the chain strength: raising lambda from 0.1 to 0.5
// increases C1's break probability while decreasing C2's, and the sparse
// solution probability peaks at moderate lambda (around 2).
inline EmbeddedInstance build_frustrated_triangle_instance() {
    EmbeddedInstance inst;
    for (const char* n : {"s1", "s2", "s3"}) inst.problem.add_node(n);
    inst.problem.set_bias("s1", -1.0);
    inst.problem.set_bias("s2", -0.3);
    inst.problem.set_coupling("s1", "s2", -1.0);
    inst.problem.set_coupling("s2", "s3", 1.0);
    inst.problem.set_coupling("s1", "s3", -1.0);

    inst.hardware.add_edge("q1", "q2");
    inst.hardware.add_edge("q3", "q4");
    inst.hardware.add_edge("q4", "q5");
    inst.hardware.add_edge("q2", "q3");  // carries J(s1, s2)
    inst.hardware.add_edge("q4", "q6");  // carries J(s2, s3)
    inst.hardware.add_edge("q1", "q6");  // carries J(s1, s3)

    inst.embedding.chains["s1"] = {"q1", "q2"};
    inst.embedding.chains["s2"] = {"q3", "q4", "q5"};
    inst.embedding.chains["s3"] = {"q6"};
    return inst;
}

}  // namespace sparseising
