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

#include "slash/scenario.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace slash {

std::string model_name(const NlModel &model) {
    if (std::holds_alternative<AnsatzModel>(model)) {
        return "ansatz";
    }
    if (std::holds_alternative<CptpModel>(model)) {
        return "cptp";
    }
    return "attenuated";
}

bool is_physical(const NlModel &model) {
    return std::holds_alternative<CptpModel>(model);
}

Population effective_population(const NlDevice &device) {
    const auto *att = std::get_if<AttenuatedModel>(&device.model);
    if (att == nullptr) {
        return device.population;
    }
    double g = att->attenuation.coupling(att->distance);
    if (device.population.is_infinite()) {
        return g > 0 ? Population::infinite() : Population::quanta(0);
    }
    return Population::effective(attenuated_population(device.population.value(), att->distance, att->attenuation));
}

const char *to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::kSourceEpr:
            return "SOURCE_EPR";
        case ElementKind::kSourceUnpolarized:
            return "SOURCE_UNPOLARIZED";
        case ElementKind::kCalcite:
            return "CALCITE";
        case ElementKind::kMirror:
            return "MIRROR";
        case ElementKind::kPolarizer:
            return "POLARIZER";
        case ElementKind::kDetector:
            return "DETECTOR";
        case ElementKind::kNlDevice:
            return "NL_DEVICE";
        case ElementKind::kOneWayFilter:
            return "ONE_WAY_FILTER";
    }
    return "?";
}

const char *to_string(Port port) {
    switch (port) {
        case Port::kAny:
            return "any";
        case Port::kV:
            return "V";
        case Port::kH:
            return "H";
    }
    return "?";
}

namespace {

Element with_kind(ElementKind kind) {
    Element e;
    e.kind = kind;
    return e;
}

}  // namespace

Element Element::source_epr() {
    return with_kind(ElementKind::kSourceEpr);
}
Element Element::source_unpolarized() {
    return with_kind(ElementKind::kSourceUnpolarized);
}
Element Element::calcite() {
    return with_kind(ElementKind::kCalcite);
}
Element Element::mirror() {
    return with_kind(ElementKind::kMirror);
}
Element Element::one_way_filter() {
    return with_kind(ElementKind::kOneWayFilter);
}
Element Element::polarizer(double theta) {
    Element e = with_kind(ElementKind::kPolarizer);
    e.theta = theta;
    return e;
}
Element Element::detector(std::string id) {
    Element e = with_kind(ElementKind::kDetector);
    e.detector_id = std::move(id);
    return e;
}
Element Element::nl_device(NlDevice device) {
    Element e = with_kind(ElementKind::kNlDevice);
    e.device = std::move(device);
    return e;
}

std::vector<Path> Scenario::resolve(bool device_in) const {
    std::vector<Path> out = paths;
    if (choice_path < out.size()) {
        const auto &tail = device_in ? tail_in : tail_out;
        auto &elems = out[choice_path].elements;
        elems.insert(elems.end(), tail.begin(), tail.end());
    }
    return out;
}

namespace {

bool is_source(ElementKind k) {
    return k == ElementKind::kSourceEpr || k == ElementKind::kSourceUnpolarized;
}

/// Emission-pass elements; the analysis pass starts at the first polarizer
/// or detector.
bool is_emission(ElementKind k) {
    return k != ElementKind::kPolarizer && k != ElementKind::kDetector;
}

std::size_t emission_length(const Path &p) {
    std::size_t k = 0;
    while (k < p.elements.size() && is_emission(p.elements[k].kind)) {
        k++;
    }
    return k;
}

int photon_count(const Scenario &s) {
    if (!s.paths.empty() && !s.paths[0].elements.empty() && s.paths[0].elements[0].kind == ElementKind::kSourceEpr) {
        return 2;
    }
    return 1;
}

void check_device(const NlDevice &d, const std::string &where, std::vector<std::string> &problems) {
    if (const auto *c = std::get_if<CptpModel>(&d.model)) {
        if (!(c->p_align >= 0 && c->p_align <= 1) || !(c->p_noise >= 0 && c->p_noise <= 1)) {
            problems.push_back(where + ": CPTP parameters must lie in [0, 1]");
        }
    }
    if (const auto *a = std::get_if<AttenuatedModel>(&d.model)) {
        try {
            a->attenuation.validate();
        } catch (const ContractViolation &e) {
            problems.push_back(where + ": " + e.what());
        }
        if (!(a->distance >= 0) || !std::isfinite(a->distance)) {
            problems.push_back(where + ": distance must be finite and nonnegative");
        }
    }
}

void validate_resolved(const Scenario &s, bool device_in, std::vector<std::string> &problems) {
    const auto paths = s.resolve(device_in);
    const std::string choice = device_in ? " [device in]" : " [device out]";
    const int photons = photon_count(s);
    std::vector<char> split(static_cast<std::size_t>(std::max(photons, 1)), 0);
    std::set<std::string> ids;
    std::size_t detectors = 0;
    // (photon, port) of every detector seen so far.
    std::vector<std::pair<int, Port>> detector_ports;

    for (std::size_t pi = 0; pi < paths.size(); pi++) {
        const Path &p = paths[pi];
        const std::string where = "path '" + p.name + "'" + choice;
        if (p.photon < 0 || p.photon >= photons) {
            problems.push_back(where + ": photon " + std::to_string(p.photon) + " does not exist (source emits " +
                               std::to_string(photons) + ")");
            continue;
        }
        auto &photon_split = split[static_cast<std::size_t>(p.photon)];
        const std::size_t lead = emission_length(p);
        for (std::size_t k = 0; k < lead; k++) {
            if (p.elements[k].kind == ElementKind::kCalcite) {
                photon_split = 1;
            }
        }
        // Ports only exist once a calcite has split the photon.
        if (p.port != Port::kAny && !photon_split) {
            problems.push_back(where + ": port " + std::string(to_string(p.port)) + " used before any CALCITE on photon " +
                               std::to_string(p.photon));
        }
        for (std::size_t k = 0; k < p.elements.size(); k++) {
            const Element &e = p.elements[k];
            const std::string at = where + " element " + std::to_string(k) + " (" + to_string(e.kind) + ")";
            if (k >= lead && (e.kind == ElementKind::kCalcite || e.kind == ElementKind::kNlDevice)) {
                problems.push_back(at + ": must precede every POLARIZER and DETECTOR on the path");
            }
            if (e.kind == ElementKind::kDetector) {
                detectors++;
                if (k + 1 != p.elements.size()) {
                    problems.push_back(at + ": a DETECTOR must be the last element of its path");
                }
                if (!ids.insert(e.detector_id).second) {
                    problems.push_back(at + ": duplicate detector id '" + e.detector_id + "'");
                }
                for (const auto &[ph, port] : detector_ports) {
                    if (ph == p.photon && (port == p.port || port == Port::kAny || p.port == Port::kAny)) {
                        problems.push_back(at + ": photon " + std::to_string(p.photon) +
                                           " already has a detector on an overlapping port");
                        break;
                    }
                }
                detector_ports.emplace_back(p.photon, p.port);
            }
            if (e.kind == ElementKind::kPolarizer && !std::isfinite(e.theta)) {
                problems.push_back(at + ": polarizer angle must be finite");
            }
            if (e.kind == ElementKind::kNlDevice) {
                check_device(e.device, at, problems);
            }
        }
        bool terminated = !p.elements.empty() && (p.elements.back().kind == ElementKind::kDetector ||
                                                  p.elements.back().kind == ElementKind::kNlDevice ||
                                                  p.elements.back().kind == ElementKind::kCalcite);
        if (!terminated) {
            for (std::size_t later = pi + 1; later < paths.size(); later++) {
                const Path &q = paths[later];
                if (q.photon == p.photon && !q.elements.empty() && q.elements.front().kind == ElementKind::kCalcite) {
                    terminated = true;
                    break;
                }
            }
        }
        if (!terminated) {
            problems.push_back(where + ": dangling path (must end in DETECTOR or NL_DEVICE, or feed a later CALCITE)");
        }
    }
    if (detectors == 0) {
        problems.push_back(std::string("scenario has no DETECTOR") + choice);
    }
}

}  // namespace

void validate(const Scenario &s) {
    std::vector<std::string> problems;
    if (s.paths.empty()) {
        problems.push_back("scenario has no paths");
    } else {
        if (s.choice_path >= s.paths.size()) {
            problems.push_back("choice path index " + std::to_string(s.choice_path) + " is out of range");
        }
        std::set<std::string> names;
        for (const auto &p : s.paths) {
            if (!names.insert(p.name).second) {
                problems.push_back("duplicate path name '" + p.name + "'");
            }
        }
        std::size_t sources = 0;
        auto count_sources = [&](const std::vector<Element> &elems, const std::string &where, bool first_path) {
            for (std::size_t k = 0; k < elems.size(); k++) {
                if (is_source(elems[k].kind)) {
                    sources++;
                    if (!first_path || k != 0) {
                        problems.push_back(where + ": the source must be the first element of the first path");
                    }
                }
            }
        };
        for (std::size_t pi = 0; pi < s.paths.size(); pi++) {
            count_sources(s.paths[pi].elements, "path '" + s.paths[pi].name + "'", pi == 0);
        }
        count_sources(s.tail_out, "choice tail 'out'", false);
        count_sources(s.tail_in, "choice tail 'in'", false);
        if (sources != 1) {
            problems.push_back("scenario needs exactly one source element, found " + std::to_string(sources));
        }
        bool has_device = std::any_of(s.tail_in.begin(), s.tail_in.end(),
                                      [](const Element &e) { return e.kind == ElementKind::kNlDevice; });
        if (!has_device) {
            problems.push_back("choice tail 'in' must contain an NL_DEVICE");
        }
        if (problems.empty()) {
            validate_resolved(s, false, problems);
            validate_resolved(s, true, problems);
        }
    }
    if (!problems.empty()) {
        std::ostringstream ss;
        ss << "invalid scenario '" << s.name << "':";
        for (const auto &p : problems) {
            ss << "\n  - " << p;
        }
        throw ScenarioError(ss.str());
    }
}

void set_analyzer_angle(Scenario &s, double theta) {
    for (auto &p : s.paths) {
        for (auto &e : p.elements) {
            if (e.kind == ElementKind::kPolarizer) {
                e.theta = theta;
            }
        }
    }
}

void set_choice_analyzer_angle(Scenario &s, double theta) {
    for (auto *tail : {&s.tail_out, &s.tail_in}) {
        for (auto &e : *tail) {
            if (e.kind == ElementKind::kPolarizer) {
                e.theta = theta;
            }
        }
    }
}

void set_device(Scenario &s, const NlDevice &device) {
    auto apply = [&](std::vector<Element> &elems) {
        for (auto &e : elems) {
            if (e.kind == ElementKind::kNlDevice) {
                e.device = device;
            }
        }
    };
    for (auto &p : s.paths) {
        apply(p.elements);
    }
    apply(s.tail_out);
    apply(s.tail_in);
}

Scenario build_fig1(double theta_left, double theta_right, NlDevice device) {
    Scenario s;
    s.name = "fig1";
    s.description = "EPR pair; left polarizer and detector; right path chooses polarizer+detector or nonlinear device";
    s.paths = {
        Path{"left", 0, Port::kAny, {Element::source_epr(), Element::polarizer(theta_left), Element::detector("left")}},
        Path{"right", 1, Port::kAny, {}},
    };
    s.choice_path = 1;
    s.tail_out = {Element::polarizer(theta_right), Element::detector("right")};
    s.tail_in = {Element::nl_device(std::move(device))};
    return s;
}

Scenario build_fig2(NlDevice device) {
    Scenario s;
    s.name = "fig2";
    s.description = "unpolarized source into a calcite; H port to detector A; V port chooses detector B or nonlinear device";
    s.paths = {
        Path{"input", 0, Port::kAny, {Element::source_unpolarized(), Element::calcite()}},
        Path{"A", 0, Port::kH, {Element::detector("A")}},
        Path{"B", 0, Port::kV, {}},
    };
    s.choice_path = 2;
    s.tail_out = {Element::detector("B")};
    s.tail_in = {Element::nl_device(std::move(device))};
    return s;
}

Scenario build_fig3(double theta, NlDevice device) {
    Scenario s;
    s.name = "fig3";
    s.description =
        "unpolarized source split by a calcite into mirrored arms, optional pass-through device in the V arm, "
        "recombined by a second calcite and analyzed by a polarizer";
    s.paths = {
        Path{"input", 0, Port::kAny, {Element::source_unpolarized(), Element::calcite()}},
        Path{"arm_V", 0, Port::kV, {Element::mirror()}},
        Path{"arm_H", 0, Port::kH, {Element::mirror()}},
        Path{"output", 0, Port::kV, {Element::calcite(), Element::polarizer(theta), Element::detector("D")}},
    };
    s.choice_path = 1;
    s.tail_out = {};
    s.tail_in = {Element::nl_device(std::move(device))};
    return s;
}

std::vector<std::string> builtin_scenario_names() {
    return {"fig1", "fig2", "fig3"};
}

Scenario builtin_scenario(std::string_view name) {
    if (name == "fig1") {
        return build_fig1();
    }
    if (name == "fig2") {
        return build_fig2();
    }
    if (name == "fig3") {
        return build_fig3();
    }
    std::string valid;
    for (const auto &n : builtin_scenario_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw ScenarioError("unknown scenario '" + std::string(name) + "'; built-ins are: " + valid);
}

double DetectorStats::rate(std::string_view detector_id) const {
    for (const auto &d : singles) {
        if (d.id == detector_id) {
            return d.rate;
        }
    }
    throw ScenarioError("no detector '" + std::string(detector_id) + "'");
}

std::optional<double> DetectorStats::coincidence(std::string_view a, std::string_view b) const {
    for (const auto &c : coincidences) {
        if ((c.first == a && c.second == b) || (c.first == b && c.second == a)) {
            return c.rate;
        }
    }
    return std::nullopt;
}

namespace {

/// Register layout: one block per photon (path (x) polarization, or
/// polarization alone when no calcite touches it), then the reference qubit
/// of an unpolarized source.
struct Layout {
    std::vector<bool> has_path;
    bool has_reference = false;
    SubsystemShape shape;

    std::size_t index(const std::vector<std::size_t> &block_values) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < shape.size(); k++) {
            idx = idx * shape.dims[k] + block_values[k];
        }
        return idx;
    }
};

Layout make_layout(const Scenario &s, const std::vector<Path> &paths) {
    Layout l;
    const int photons = photon_count(s);
    l.has_path.assign(static_cast<std::size_t>(photons), false);
    for (const auto &p : paths) {
        bool calcite = std::any_of(p.elements.begin(), p.elements.end(),
                                   [](const Element &e) { return e.kind == ElementKind::kCalcite; });
        if (calcite || p.port != Port::kAny) {
            l.has_path[static_cast<std::size_t>(p.photon)] = true;
        }
    }
    for (bool hp : l.has_path) {
        l.shape.dims.push_back(hp ? 4 : 2);
    }
    l.has_reference = s.paths[0].elements[0].kind == ElementKind::kSourceUnpolarized;
    if (l.has_reference) {
        l.shape.dims.push_back(2);
    }
    return l;
}

Operator initial_state(const Layout &l) {
    // (|0..0> + |1..1>)(<0..0| + <1..1|) / 2 over polarization (and
    // reference) with every path at port 0; entries are exactly 1/2.
    std::size_t idx[2];
    for (std::size_t v = 0; v < 2; v++) {
        std::vector<std::size_t> values(l.shape.size(), v);
        idx[v] = l.index(values);
    }
    Operator rho(l.shape.total_dim());
    for (std::size_t a : idx) {
        for (std::size_t b : idx) {
            rho(a, b) = 0.5;
        }
    }
    return rho;
}

Operator port_projector(bool has_path, Port port) {
    if (!has_path || port == Port::kAny) {
        return Operator::identity(has_path ? 4 : 2);
    }
    Operator path(2);
    std::size_t k = port == Port::kV ? 0 : 1;
    path(k, k) = 1;
    return tensor(path, Operator::identity(2));
}

/// pol_op while the photon is in `port`, `elsewhere` times identity otherwise.
Operator conditional(bool has_path, Port port, const Operator &pol_op, Cplx elsewhere) {
    if (!has_path) {
        return pol_op;
    }
    if (port == Port::kAny) {
        return tensor(Operator::identity(2), pol_op);
    }
    Operator in = port_projector(true, port);
    Operator out = Operator::identity(4) - in;
    return in * tensor(Operator::identity(2), pol_op) + out * elsewhere;
}

/// CNOT with polarization (H = 1) controlling the path bit.
Operator calcite_unitary() {
    Operator u(4);
    for (std::size_t path = 0; path < 2; path++) {
        for (std::size_t pol = 0; pol < 2; pol++) {
            u(((path ^ pol) << 1) | pol, (path << 1) | pol) = 1;
        }
    }
    return u;
}

/// Recombination: |path p, pol s> -> |0, p> for every s.
KrausChannel recombine_channel() {
    std::vector<Operator> ops;
    for (std::size_t path = 0; path < 2; path++) {
        for (std::size_t pol = 0; pol < 2; pol++) {
            Operator k(4);
            k(path, (path << 1) | pol) = 1;
            ops.push_back(std::move(k));
        }
    }
    return KrausChannel(std::move(ops), "calcite recombination");
}

Operator apply_ansatz(const Operator &rho, const Layout &l, std::size_t photon, Port port, Population n) {
    // K_n / sqrt(n+1): the V branch in the device port keeps weight 1, every
    // other branch is scaled by 1/sqrt(n+1) (0 for the ideal amplifier).
    double a = n.is_infinite() ? 0.0 : 1 / std::sqrt(n.value() + 1);
    bool hp = l.has_path[photon];
    Operator local = conditional(hp, port, Operator{{1, 0}, {0, a}}, a);
    Operator k = embed(local, l.shape, photon);
    Operator out = k * rho * k.adjoint();
    double tr = out.trace().real();
    if (tr <= kAlgebraTol) {
        // No support on the amplified branch: the n -> infinity limit of the
        // normalized state keeps the unamplified branches untouched.
        Operator rest = conditional(hp, port, Operator{{0, 0}, {0, 1}}, 1);
        k = embed(rest, l.shape, photon);
        out = k * rho * k.adjoint();
        tr = out.trace().real();
    }
    return out * Cplx{1 / tr};
}

Operator apply_cptp(const Operator &rho, const Layout &l, std::size_t photon, Port port, const CptpModel &m) {
    KrausChannel amp = noisy_amplifier_channel(m.p_align, m.p_noise);
    bool hp = l.has_path[photon];
    std::vector<Operator> ops;
    for (std::size_t i = 0; i < amp.kraus_ops().size(); i++) {
        ops.push_back(conditional(hp, port, amp.kraus_ops()[i], i == 0 ? 1.0 : 0.0));
    }
    return apply_channel(rho, KrausChannel(std::move(ops), "conditional " + amp.label()), l.shape, photon);
}

}  // namespace

Evaluation evaluate(const Scenario &s, bool device_in, const std::optional<NlDevice> &device_override) {
    Scenario local = s;
    if (device_override) {
        set_device(local, *device_override);
    }
    validate(local);
    const auto paths = local.resolve(device_in);
    const Layout layout = make_layout(local, paths);

    Operator rho = initial_state(layout);
    const Operator calcite = calcite_unitary();
    const KrausChannel recombine = recombine_channel();
    std::vector<bool> split(layout.has_path.size(), false);

    // Emission pass.
    for (const auto &p : paths) {
        const auto photon = static_cast<std::size_t>(p.photon);
        const std::size_t lead = emission_length(p);
        for (std::size_t k = 0; k < lead; k++) {
            const Element &e = p.elements[k];
            if (e.kind == ElementKind::kCalcite && split[photon]) {
                rho = apply_channel(rho, recombine, layout.shape, photon);
                split[photon] = false;
            } else if (e.kind == ElementKind::kCalcite) {
                Operator u = embed(calcite, layout.shape, photon);
                rho = u * rho * u.adjoint();
                split[photon] = true;
            } else if (e.kind == ElementKind::kNlDevice) {
                if (const auto *cptp = std::get_if<CptpModel>(&e.device.model)) {
                    rho = apply_cptp(rho, layout, photon, p.port, *cptp);
                } else {
                    rho = apply_ansatz(rho, layout, photon, p.port, effective_population(e.device));
                }
            }
            // Sources were folded into the initial state; mirrors and one-way
            // filters leave the polarization state unchanged.
        }
    }

    // Analysis pass.
    Evaluation ev{rho, layout.shape, {}};
    for (std::size_t pi = 0; pi < paths.size(); pi++) {
        const Path &p = paths[pi];
        const auto photon = static_cast<std::size_t>(p.photon);
        Operator chain = Operator::identity(2);
        for (std::size_t k = emission_length(p); k < p.elements.size(); k++) {
            const Element &e = p.elements[k];
            if (e.kind == ElementKind::kPolarizer) {
                chain = polarizer_projector(e.theta) * chain;
            } else if (e.kind == ElementKind::kDetector) {
                bool hp = layout.has_path[photon];
                Operator pol_effect = chain.adjoint() * chain;
                Operator block = port_projector(hp, p.port) * (hp ? tensor(Operator::identity(2), pol_effect) : pol_effect);
                ev.detectors.push_back(
                    DetectorEffect{e.detector_id, p.photon, pi, pi != local.choice_path, embed(block, layout.shape, photon)});
            }
        }
    }
    return ev;
}

namespace {

double clamp_probability(double p) {
    if (p < 0 && p >= -kEigenTol) {
        return 0;
    }
    if (p > 1 && p <= 1 + kEigenTol) {
        return 1;
    }
    return p;
}

}  // namespace

DetectorStats run_scenario(const Scenario &s, bool device_in, const std::optional<NlDevice> &device_override) {
    Evaluation ev = evaluate(s, device_in, device_override);
    DetectorStats stats;
    for (const auto &d : ev.detectors) {
        stats.singles.push_back(
            DetectorRate{d.id, d.photon, d.path, d.remote, clamp_probability(born_rule(ev.state, d.effect))});
    }
    for (std::size_t i = 0; i < ev.detectors.size(); i++) {
        for (std::size_t j = i + 1; j < ev.detectors.size(); j++) {
            const auto &a = ev.detectors[i];
            const auto &b = ev.detectors[j];
            if (a.photon == b.photon) {
                continue;
            }
            stats.coincidences.push_back(
                CoincidenceRate{a.id, b.id, clamp_probability(born_rule(ev.state, a.effect * b.effect))});
        }
    }
    return stats;
}

double signalling_delta(const Scenario &s, const std::optional<NlDevice> &device_override) {
    DetectorStats out = run_scenario(s, false, device_override);
    DetectorStats in = run_scenario(s, true, device_override);
    double delta = 0;
    for (const auto &d : out.singles) {
        if (d.remote) {
            delta = std::max(delta, std::abs(in.rate(d.id) - d.rate));
        }
    }
    return delta;
}

std::vector<JointOutcome> joint_outcomes(const Evaluation &e) {
    // Per photon: each of its detectors, or none of them (index -1).
    std::vector<int> photons;
    for (const auto &d : e.detectors) {
        if (std::find(photons.begin(), photons.end(), d.photon) == photons.end()) {
            photons.push_back(d.photon);
        }
    }
    std::vector<std::vector<long>> options(photons.size());
    std::vector<Operator> none;
    for (std::size_t k = 0; k < photons.size(); k++) {
        Operator rest = Operator::identity(e.state.dim());
        for (std::size_t i = 0; i < e.detectors.size(); i++) {
            if (e.detectors[i].photon == photons[k]) {
                options[k].push_back(static_cast<long>(i));
                rest = rest - e.detectors[i].effect;
            }
        }
        options[k].push_back(-1);
        none.push_back(std::move(rest));
    }

    std::vector<JointOutcome> outcomes;
    std::vector<std::size_t> pick(photons.size(), 0);
    while (true) {
        Operator f = Operator::identity(e.state.dim());
        JointOutcome o;
        for (std::size_t k = 0; k < photons.size(); k++) {
            long choice = options[k][pick[k]];
            if (choice < 0) {
                f = f * none[k];
            } else {
                f = f * e.detectors[static_cast<std::size_t>(choice)].effect;
                o.clicked.push_back(static_cast<std::size_t>(choice));
            }
        }
        o.probability = std::max(0.0, born_rule(e.state, f));
        outcomes.push_back(std::move(o));

        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == options[k].size()) {
            pick[k] = 0;
            k++;
        }
        if (k == pick.size()) {
            break;
        }
    }
    return outcomes;
}

}  // namespace slash
