// Copyright 2026 The vbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vbqc/pattern_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace vbqc {

using nlohmann::json;

namespace {

const std::set<std::string> kFields = {"schema", "name",  "vertices", "edges", "inputs", "outputs",
                                       "angles", "order", "f",        "xdeps", "zdeps"};

[[noreturn]] void fail(const std::string &msg) {
    throw std::invalid_argument("pattern: " + msg);
}

const json &required(const json &doc, const char *key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        fail(std::string("missing field '") + key + "'");
    }
    return *it;
}

VertexId key_id(const std::string &key) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(key, &pos);
    } catch (const std::exception &) {
        fail("vertex key '" + key + "' is not an integer");
    }
    if (pos != key.size()) {
        fail("vertex key '" + key + "' is not an integer");
    }
    return v;
}

std::vector<std::vector<std::size_t>> read_deps(const json &obj, const Graph &g, const char *what) {
    std::vector<std::vector<std::size_t>> deps(g.size());
    if (!obj.is_object()) {
        fail(std::string(what) + " must be an object");
    }
    for (const auto &[k, list] : obj.items()) {
        auto &dst = deps.at(g.index_of(key_id(k)));
        for (const auto &u : list) {
            dst.push_back(g.index_of(u.get<VertexId>()));
        }
    }
    return deps;
}

json write_deps(const Graph &g, const std::vector<std::vector<std::size_t>> &deps) {
    json out = json::object();
    for (std::size_t v = 0; v < deps.size(); ++v) {
        if (deps[v].empty()) {
            continue;
        }
        json list = json::array();
        for (std::size_t u : deps[v]) {
            list.push_back(g.id(u));
        }
        out[std::to_string(g.id(v))] = list;
    }
    return out;
}

}  // namespace

MeasurementPattern pattern_from_json(const json &doc) {
    if (!doc.is_object()) {
        fail("document must be an object");
    }
    for (const auto &[k, _] : doc.items()) {
        if (!kFields.count(k)) {
            fail("unknown field '" + k + "'");
        }
    }
    if (doc.contains("schema") && doc["schema"] != kPatternSchema) {
        fail("unsupported schema " + doc["schema"].dump());
    }
    try {
        MeasurementPattern p;
        p.name = doc.value("name", std::string("unnamed"));
        auto vertices = required(doc, "vertices").get<std::vector<VertexId>>();
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (const auto &e : required(doc, "edges")) {
            if (!e.is_array() || e.size() != 2) {
                fail("edge must be a pair of vertex ids");
            }
            edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
        }
        p.graph = Graph(vertices, edges, required(doc, "inputs").get<std::vector<VertexId>>(),
                        required(doc, "outputs").get<std::vector<VertexId>>());
        const Graph &g = p.graph;
        if (!g.construction_errors().empty()) {
            fail(g.construction_errors().front());
        }

        const json &angles = required(doc, "angles");
        if (!angles.is_object()) {
            fail("angles must be an object keyed by vertex id");
        }
        std::vector<bool> have(g.size(), false);
        p.angles.assign(g.size(), Angle8());
        for (const auto &[k, a] : angles.items()) {
            std::size_t v = g.index_of(key_id(k));
            if (!a.is_number_integer()) {
                fail("angle of vertex " + k + " must be an integer 0..7");
            }
            p.angles[v] = Angle8::checked(a.get<long long>());
            have[v] = true;
        }
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (!have[v]) {
                fail("no angle for vertex " + std::to_string(g.id(v)));
            }
        }

        for (const auto &v : required(doc, "order")) {
            p.flow.order.push_back(g.index_of(v.get<VertexId>()));
        }
        p.flow.f.assign(g.size(), std::nullopt);
        if (doc.contains("f")) {
            for (const auto &[k, s] : doc["f"].items()) {
                p.flow.f[g.index_of(key_id(k))] = g.index_of(s.get<VertexId>());
            }
        }
        if (!doc.contains("xdeps") && !doc.contains("zdeps")) {
            assign_derived_dependencies(p);
        } else {
            p.flow.xdeps = doc.contains("xdeps") ? read_deps(doc["xdeps"], g, "xdeps")
                                                 : std::vector<std::vector<std::size_t>>(g.size());
            p.flow.zdeps = doc.contains("zdeps") ? read_deps(doc["zdeps"], g, "zdeps")
                                                 : std::vector<std::vector<std::size_t>>(g.size());
        }
        return p;
    } catch (const json::exception &e) {
        fail(e.what());
    } catch (const std::out_of_range &e) {
        fail(e.what());
    }
}

json pattern_to_json(const MeasurementPattern &p) {
    const Graph &g = p.graph;
    json doc;
    doc["schema"] = kPatternSchema;
    doc["name"] = p.name;
    doc["vertices"] = g.ids();
    json edges = json::array();
    for (auto [a, b] : g.edges()) {
        edges.push_back({g.id(a), g.id(b)});
    }
    doc["edges"] = edges;
    auto ids = [&](const std::vector<std::size_t> &idx) {
        json out = json::array();
        for (std::size_t i : idx) {
            out.push_back(g.id(i));
        }
        return out;
    };
    doc["inputs"] = ids(g.inputs());
    doc["outputs"] = ids(g.outputs());
    json angles = json::object();
    for (std::size_t v = 0; v < g.size(); ++v) {
        angles[std::to_string(g.id(v))] = p.angles.at(v).value();
    }
    doc["angles"] = angles;
    doc["order"] = ids(p.flow.order);
    json f = json::object();
    for (std::size_t v = 0; v < p.flow.f.size(); ++v) {
        if (p.flow.f[v]) {
            f[std::to_string(g.id(v))] = g.id(*p.flow.f[v]);
        }
    }
    doc["f"] = f;
    doc["xdeps"] = write_deps(g, p.flow.xdeps);
    doc["zdeps"] = write_deps(g, p.flow.zdeps);
    return doc;
}

MeasurementPattern load_pattern_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open pattern file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("pattern file " + path + ": " + e.what());
    }
    return pattern_from_json(doc);
}

void save_pattern_file(const MeasurementPattern &p, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << pattern_to_json(p).dump(2) << '\n';
}

MeasurementPattern resolve_pattern(const std::string &ref) {
    for (const auto &name : patterns::builtin_names()) {
        if (name == ref) {
            return patterns::builtin(ref);
        }
    }
    return load_pattern_file(ref);
}

}  // namespace vbqc
