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

#include <fstream>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "sparseising/embedding.hpp"
#include "sparseising/errors.hpp"
#include "sparseising/ising.hpp"

namespace sparseising {

// Hamiltonian file format:
//   {"nodes": ["a", ...], "h": {"a": -1.0, ...}, "J": [["a", "b", -1.0], ...]}
// Duplicate pairs (in either order) and self-loops are rejected at parse time.
inline IsingHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("nodes"))
        throw IoError("Hamiltonian JSON must be an object with a \"nodes\" array");
    IsingHamiltonian H;
    for (const auto& n : j.at("nodes")) {
        Label label = n.get<Label>();
        if (H.has_node(label)) throw IoError("duplicate node " + label);
        H.add_node(label);
    }
    if (j.contains("h")) {
        for (const auto& [label, value] : j.at("h").items()) {
            if (!H.has_node(label)) throw IoError("bias on unknown node " + label);
            H.set_bias(label, value.get<double>());
        }
    }
    if (j.contains("J")) {
        std::set<std::pair<Label, Label>> seen;
        for (const auto& entry : j.at("J")) {
            if (!entry.is_array() || entry.size() != 3)
                throw IoError("coupling entries must be [node, node, value] triples");
            Label a = entry[0].get<Label>();
            Label b = entry[1].get<Label>();
            if (a == b) throw IoError("self-loop coupling on node " + a);
            if (!H.has_node(a) || !H.has_node(b))
                throw IoError("coupling on unknown node pair (" + a + ", " + b + ")");
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            if (!seen.insert(key).second) throw IoError("duplicate coupling pair (" + a + ", " + b + ")");
            H.set_coupling(a, b, entry[2].get<double>());
        }
    }
    return H;
}

inline nlohmann::json to_json(const IsingHamiltonian& H) {
    nlohmann::json j;
    j["nodes"] = H.nodes();
    nlohmann::json h = nlohmann::json::object();
    for (int i = 0; i < H.num_nodes(); ++i)
        if (H.biases()[i] != 0.0) h[H.nodes()[i]] = H.biases()[i];
    j["h"] = h;
    nlohmann::json couplings = nlohmann::json::array();
    for (const auto& c : H.couplings())
        couplings.push_back({H.nodes()[c.a], H.nodes()[c.b], c.value});
    j["J"] = couplings;
    return j;
}

// Hardware graph format: {"nodes": [...], "edges": [["a", "b"], ...]}.
inline HardwareGraph hardware_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("hardware JSON must be an object");
    HardwareGraph g;
    if (j.contains("nodes"))
        for (const auto& n : j.at("nodes")) g.add_node(n.get<Label>());
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw IoError("hardware edges must be [node, node] pairs");
            Label a = e[0].get<Label>();
            Label b = e[1].get<Label>();
            if (a == b) throw IoError("hardware self-loop on " + a);
            if (g.has_edge(a, b)) throw IoError("duplicate hardware edge (" + a + ", " + b + ")");
            g.add_edge(a, b);
        }
    }
    return g;
}

inline nlohmann::json to_json(const HardwareGraph& g) {
    nlohmann::json j;
    j["nodes"] = g.nodes();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

// Embedding format: {"chains": {"logical": ["q1", "q2"], ...}}.
inline Embedding embedding_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("chains"))
        throw IoError("embedding JSON must be an object with a \"chains\" map");
    Embedding emb;
    for (const auto& [logical, chain] : j.at("chains").items()) {
        std::vector<Label> qubits;
        for (const auto& q : chain) qubits.push_back(q.get<Label>());
        emb.chains.emplace(logical, std::move(qubits));
    }
    return emb;
}

inline nlohmann::json to_json(const Embedding& emb) {
    nlohmann::json chains = nlohmann::json::object();
    for (const auto& [logical, chain] : emb.chains) chains[logical] = chain;
    return nlohmann::json{{"chains", chains}};
}

// Spin configuration format: {"values": {"a": 1, "b": -1, ...}}.
inline SpinConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("values"))
        throw IoError("configuration JSON must be an object with a \"values\" map");
    SpinConfig s;
    for (const auto& [label, v] : j.at("values").items()) {
        int spin = v.get<int>();
        if (spin != 1 && spin != -1) throw IoError("spin " + label + " must be +1 or -1");
        s.values.emplace(label, spin);
    }
    return s;
}

inline nlohmann::json to_json(const SpinConfig& s) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [label, spin] : s.values) values[label] = spin;
    return nlohmann::json{{"values", values}};
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace sparseising
