// Copyright 2026 The slashsim Authors
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

#include "slash/scenario_io.h"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace slash {

double parse_angle(std::string_view text) {
    std::string_view t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) {
        t.remove_suffix(1);
    }
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) {
        t.remove_prefix(1);
    }
    double scale = 1;
    if (t.ends_with("deg")) {
        scale = std::numbers::pi / 180;
        t.remove_suffix(3);
    } else if (t.ends_with("rad")) {
        t.remove_suffix(3);
    }
    while (!t.empty() && t.back() == ' ') {
        t.remove_suffix(1);
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ContractViolation("cannot parse angle '" + std::string(text) + "' (expected e.g. 0.5, 0.5rad, 45deg)");
    }
    return v * scale;
}

namespace {

class Reader {
   public:
    explicit Reader(std::string source) : source_(std::move(source)) {
    }

    [[noreturn]] void fail(const YAML::Node &node, const std::string &field, const std::string &msg) const {
        std::ostringstream ss;
        ss << source_;
        if (node.IsDefined() && node.Mark().line >= 0) {
            ss << ":" << node.Mark().line + 1 << ":" << node.Mark().column + 1;
        }
        ss << ": field '" << field << "': " << msg;
        throw ScenarioFileError(ss.str());
    }

    std::string scalar(const YAML::Node &node, const std::string &field) const {
        if (!node.IsScalar()) {
            fail(node, field, "expected a scalar");
        }
        return node.Scalar();
    }

    double number(const YAML::Node &node, const std::string &field) const {
        std::string s = scalar(node, field);
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            fail(node, field, "expected a finite number, got '" + s + "'");
        }
        return v;
    }

    void only_keys(const YAML::Node &map, const std::string &field, const std::set<std::string> &allowed) const {
        for (const auto &kv : map) {
            std::string key = kv.first.as<std::string>();
            if (!allowed.count(key)) {
                std::string list;
                for (const auto &a : allowed) {
                    list += (list.empty() ? "" : ", ") + a;
                }
                fail(kv.first, field + "." + key, "unknown key (expected one of: " + list + ")");
            }
        }
    }

    NlDevice device(const YAML::Node &node, const std::string &field) const {
        if (!node.IsMap()) {
            fail(node, field, "expected a map with population and model");
        }
        only_keys(node, field,
                  {"population", "model", "p_align", "p_noise", "attenuation", "scale", "cutoff", "distance"});
        NlDevice d;
        if (node["population"]) {
            try {
                d.population = Population::parse(scalar(node["population"], field + ".population"));
            } catch (const ContractViolation &e) {
                fail(node["population"], field + ".population", e.what());
            }
        }
        std::string model = node["model"] ? scalar(node["model"], field + ".model") : "ansatz";
        auto get = [&](const char *key, double fallback) {
            return node[key] ? number(node[key], field + "." + key) : fallback;
        };
        if (model == "ansatz") {
            d.model = AnsatzModel{};
        } else if (model == "cptp") {
            d.model = CptpModel{get("p_align", 1), get("p_noise", 0)};
        } else if (model == "attenuated") {
            AttenuatedModel a;
            if (node["attenuation"]) {
                try {
                    a.attenuation.kind = parse_attenuation_kind(scalar(node["attenuation"], field + ".attenuation"));
                } catch (const ContractViolation &e) {
                    fail(node["attenuation"], field + ".attenuation", e.what());
                }
            }
            a.attenuation.scale = get("scale", 1);
            a.attenuation.cutoff = get("cutoff", 1);
            a.distance = get("distance", 0);
            d.model = a;
        } else {
            fail(node["model"], field + ".model", "unknown model '" + model + "' (expected ansatz, cptp, attenuated)");
        }
        return d;
    }

    Element element(const YAML::Node &node, const std::string &field) const {
        if (node.IsScalar()) {
            std::string s = node.Scalar();
            if (s == "calcite") {
                return Element::calcite();
            }
            if (s == "mirror") {
                return Element::mirror();
            }
            if (s == "filter" || s == "one_way_filter") {
                return Element::one_way_filter();
            }
            fail(node, field, "unknown element '" + s + "' (expected calcite, mirror, filter or a keyed element)");
        }
        if (!node.IsMap() || node.size() != 1) {
            fail(node, field, "an element is a scalar or a single-key map");
        }
        auto kv = *node.begin();
        std::string key = kv.first.as<std::string>();
        const YAML::Node &value = kv.second;
        if (key == "source") {
            std::string s = scalar(value, field + ".source");
            if (s == "epr") {
                return Element::source_epr();
            }
            if (s == "unpolarized") {
                return Element::source_unpolarized();
            }
            fail(value, field + ".source", "unknown source '" + s + "' (expected epr, unpolarized)");
        }
        if (key == "polarizer") {
            try {
                return Element::polarizer(parse_angle(scalar(value, field + ".polarizer")));
            } catch (const ContractViolation &e) {
                fail(value, field + ".polarizer", e.what());
            }
        }
        if (key == "detector") {
            std::string id = scalar(value, field + ".detector");
            if (id.empty()) {
                fail(value, field + ".detector", "detector id must be nonempty");
            }
            return Element::detector(id);
        }
        if (key == "nl") {
            return Element::nl_device(device(value, field + ".nl"));
        }
        fail(kv.first, field, "unknown element '" + key + "' (expected source, polarizer, detector, nl)");
    }

    std::vector<Element> elements(const YAML::Node &node, const std::string &field) const {
        std::vector<Element> out;
        if (!node || node.IsNull()) {
            return out;
        }
        if (!node.IsSequence()) {
            fail(node, field, "expected a list of elements");
        }
        for (std::size_t k = 0; k < node.size(); k++) {
            out.push_back(element(node[k], field + "[" + std::to_string(k) + "]"));
        }
        return out;
    }

    Path path(const YAML::Node &node, const std::string &field) const {
        if (!node.IsMap()) {
            fail(node, field, "expected a map with name and elements");
        }
        only_keys(node, field, {"name", "photon", "port", "elements"});
        Path p;
        if (!node["name"]) {
            fail(node, field + ".name", "missing");
        }
        p.name = scalar(node["name"], field + ".name");
        if (node["photon"]) {
            double v = number(node["photon"], field + ".photon");
            if (v != std::floor(v) || v < 0 || v > 1) {
                fail(node["photon"], field + ".photon", "expected 0 or 1");
            }
            p.photon = static_cast<int>(v);
        }
        if (node["port"]) {
            std::string port = scalar(node["port"], field + ".port");
            if (port == "any") {
                p.port = Port::kAny;
            } else if (port == "V") {
                p.port = Port::kV;
            } else if (port == "H") {
                p.port = Port::kH;
            } else {
                fail(node["port"], field + ".port", "unknown port '" + port + "' (expected any, V, H)");
            }
        }
        p.elements = elements(node["elements"], field + ".elements");
        return p;
    }

    Scenario scenario(const YAML::Node &root) const {
        if (!root.IsMap()) {
            fail(root, "<root>", "expected a map with name, paths and choice");
        }
        only_keys(root, "<root>", {"name", "description", "paths", "choice"});
        Scenario s;
        if (!root["name"]) {
            fail(root, "name", "missing");
        }
        s.name = scalar(root["name"], "name");
        if (root["description"]) {
            s.description = scalar(root["description"], "description");
        }
        const YAML::Node paths = root["paths"];
        if (!paths || !paths.IsSequence() || paths.size() == 0) {
            fail(paths ? paths : root, "paths", "expected a nonempty list of paths");
        }
        for (std::size_t k = 0; k < paths.size(); k++) {
            s.paths.push_back(path(paths[k], "paths[" + std::to_string(k) + "]"));
        }
        const YAML::Node choice = root["choice"];
        if (!choice || !choice.IsMap()) {
            fail(choice ? choice : root, "choice", "expected a map with path, out, in");
        }
        only_keys(choice, "choice", {"path", "out", "in"});
        if (!choice["path"]) {
            fail(choice, "choice.path", "missing");
        }
        std::string target = scalar(choice["path"], "choice.path");
        bool found = false;
        for (std::size_t k = 0; k < s.paths.size(); k++) {
            if (s.paths[k].name == target) {
                s.choice_path = k;
                found = true;
                break;
            }
        }
        if (!found) {
            std::size_t idx = 0;
            auto [ptr, ec] = std::from_chars(target.data(), target.data() + target.size(), idx);
            if (ec != std::errc() || ptr != target.data() + target.size() || idx >= s.paths.size()) {
                fail(choice["path"], "choice.path", "no path named '" + target + "'");
            }
            s.choice_path = idx;
        }
        s.tail_out = elements(choice["out"], "choice.out");
        s.tail_in = elements(choice["in"], "choice.in");
        return s;
    }

   private:
    std::string source_;
};

void emit_element(YAML::Emitter &out, const Element &e) {
    switch (e.kind) {
        case ElementKind::kSourceEpr:
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "source" << YAML::Value << "epr" << YAML::EndMap;
            return;
        case ElementKind::kSourceUnpolarized:
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "source" << YAML::Value << "unpolarized"
                << YAML::EndMap;
            return;
        case ElementKind::kCalcite:
            out << "calcite";
            return;
        case ElementKind::kMirror:
            out << "mirror";
            return;
        case ElementKind::kOneWayFilter:
            out << "filter";
            return;
        case ElementKind::kPolarizer: {
            std::ostringstream ss;
            ss.precision(17);
            ss << e.theta;
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "polarizer" << YAML::Value << ss.str()
                << YAML::EndMap;
            return;
        }
        case ElementKind::kDetector:
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "detector" << YAML::Value << e.detector_id
                << YAML::EndMap;
            return;
        case ElementKind::kNlDevice: {
            out << YAML::BeginMap << YAML::Key << "nl" << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "population" << YAML::Value << e.device.population.to_string();
            out << YAML::Key << "model" << YAML::Value << model_name(e.device.model);
            if (const auto *c = std::get_if<CptpModel>(&e.device.model)) {
                out << YAML::Key << "p_align" << YAML::Value << c->p_align;
                out << YAML::Key << "p_noise" << YAML::Value << c->p_noise;
            }
            if (const auto *a = std::get_if<AttenuatedModel>(&e.device.model)) {
                out << YAML::Key << "attenuation" << YAML::Value << to_string(a->attenuation.kind);
                out << YAML::Key << "scale" << YAML::Value << a->attenuation.scale;
                out << YAML::Key << "cutoff" << YAML::Value << a->attenuation.cutoff;
                out << YAML::Key << "distance" << YAML::Value << a->distance;
            }
            out << YAML::EndMap << YAML::EndMap;
            return;
        }
    }
}

void emit_elements(YAML::Emitter &out, const std::vector<Element> &elems) {
    out << YAML::Block << YAML::BeginSeq;
    for (const auto &e : elems) {
        emit_element(out, e);
    }
    out << YAML::EndSeq;
}

}  // namespace

Scenario parse_scenario_yaml(std::string_view text, std::string_view source_name) {
    std::string source(source_name);
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception &e) {
        std::ostringstream ss;
        ss << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": YAML syntax error: " << e.msg;
        throw ScenarioFileError(ss.str());
    }
    Scenario s;
    try {
        s = Reader(source).scenario(root);
    } catch (const YAML::Exception &e) {
        std::ostringstream ss;
        ss << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
        throw ScenarioFileError(ss.str());
    }
    try {
        validate(s);
    } catch (const ScenarioError &e) {
        throw ScenarioFileError(source + ": " + e.what());
    }
    return s;
}

Scenario load_scenario_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioFileError(path + ": cannot open scenario file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_yaml(ss.str(), path);
}

std::string to_yaml(const Scenario &s) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << s.name;
    if (!s.description.empty()) {
        out << YAML::Key << "description" << YAML::Value << s.description;
    }
    out << YAML::Key << "paths" << YAML::Value << YAML::BeginSeq;
    for (const auto &p : s.paths) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << p.name;
        out << YAML::Key << "photon" << YAML::Value << p.photon;
        out << YAML::Key << "port" << YAML::Value << to_string(p.port);
        out << YAML::Key << "elements" << YAML::Value;
        if (p.elements.empty()) {
            out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
        } else {
            emit_elements(out, p.elements);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "choice" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "path" << YAML::Value << s.paths.at(s.choice_path).name;
    for (const auto &[key, tail] : {std::pair{"out", &s.tail_out}, std::pair{"in", &s.tail_in}}) {
        out << YAML::Key << key << YAML::Value;
        if (tail->empty()) {
            out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
        } else {
            emit_elements(out, *tail);
        }
    }
    out << YAML::EndMap << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace slash
