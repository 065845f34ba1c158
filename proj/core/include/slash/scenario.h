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

#ifndef SLASH_SCENARIO_H
#define SLASH_SCENARIO_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slash/channels.h"
#include "slash/linalg.h"
#include "slash/states.h"

/// Declarative optical benches with a binary "choice" that hooks a nonlinear
/// device into one beam path.
///
/// Physical model
/// --------------
/// Each emitted photon owns a polarization qubit (V = 0, H = 1) and, if any
/// calcite touches it, a path qubit. A calcite is a lossless polarizing beam
/// splitter acting as CNOT(polarization -> path): V stays in port 0, H goes to
/// port 1. A second calcite on the same photon recombines the arms in the
/// definite-polarization-path regime: the beam leaves through port 0 with the
/// polarization of the arm it came from (V arm -> V, H arm -> H) and arm
/// coherence is dropped. For undisturbed light this equals the inverse CNOT;
/// unlike it, a device that disturbs the polarization inside an arm cannot
/// push light into an unobserved dark port. The unpolarized source is the
/// maximally mixed polarization state purified by a reference qubit, so it
/// flows through the same code as the EPR source.
///
/// Evaluation runs in two passes. The emission pass walks every path in order
/// and applies its leading run of source, calcite, mirror, filter, and
/// nonlinear-device elements to the joint state. The analysis pass turns each
/// path's remaining polarizers and final detector into an effect operator;
/// detector rates are Tr(rho E). Putting every device before every analyzer
/// is what makes the amplitude-reweighting ansatz reproduce the emitted pair
/// state it was written for, and it is order-independent for CPTP devices.
namespace slash {

class ScenarioError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Amplitude reweighting by sqrt(n + 1) on the device-axis (V) branch, then
/// global renormalization. Not a quantum channel.
struct AnsatzModel {
    bool operator==(const AnsatzModel &) const = default;
};

/// noisy_amplifier_channel(p_align, p_noise) on the photon while it is in the
/// device's path. Population is irrelevant to this model.
struct CptpModel {
    double p_align = 1;
    double p_noise = 0;
    bool operator==(const CptpModel &) const = default;
};

/// Ansatz evaluated at n_eff = g(distance) n.
struct AttenuatedModel {
    AttenuationModel attenuation;
    double distance = 0;
    bool operator==(const AttenuatedModel &other) const {
        return attenuation.kind == other.attenuation.kind && attenuation.scale == other.attenuation.scale &&
               attenuation.cutoff == other.attenuation.cutoff && distance == other.distance;
    }
};

using NlModel = std::variant<AnsatzModel, CptpModel, AttenuatedModel>;

std::string model_name(const NlModel &model);
bool is_physical(const NlModel &model);

struct NlDevice {
    Population population = Population::infinite();
    NlModel model = AnsatzModel{};
    bool operator==(const NlDevice &) const = default;
};

/// Population the ansatz actually sees (attenuation applied).
Population effective_population(const NlDevice &device);

enum class ElementKind {
    kSourceEpr,
    kSourceUnpolarized,
    kCalcite,
    kMirror,
    kPolarizer,
    kDetector,
    kNlDevice,
    kOneWayFilter,
};

const char *to_string(ElementKind kind);

struct Element {
    ElementKind kind = ElementKind::kMirror;
    /// POLARIZER only.
    double theta = 0;
    /// DETECTOR only.
    std::string detector_id;
    /// NL_DEVICE only.
    NlDevice device;

    static Element source_epr();
    static Element source_unpolarized();
    static Element calcite();
    static Element mirror();
    static Element one_way_filter();
    static Element polarizer(double theta);
    static Element detector(std::string id);
    static Element nl_device(NlDevice device);

    bool operator==(const Element &) const = default;
};

/// Which calcite port a path carries. kAny means the whole photon.
enum class Port { kAny, kV, kH };

const char *to_string(Port port);

struct Path {
    std::string name;
    int photon = 0;
    Port port = Port::kAny;
    std::vector<Element> elements;

    bool operator==(const Path &) const = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<Path> paths;
    /// Index of the path whose tail is swapped by the choice.
    std::size_t choice_path = 0;
    /// Tail appended when the device is out (choice = false).
    std::vector<Element> tail_out;
    /// Tail appended when the device is in (choice = true).
    std::vector<Element> tail_in;

    /// Paths with the choice tail appended.
    std::vector<Path> resolve(bool device_in) const;

    bool operator==(const Scenario &) const = default;
};

/// Throws ScenarioError naming every offending path.
void validate(const Scenario &s);

/// Sets every polarizer outside the choice tails to theta.
void set_analyzer_angle(Scenario &s, double theta);
/// Sets every polarizer inside the choice tails to theta.
void set_choice_analyzer_angle(Scenario &s, double theta);
/// Replaces every nonlinear device.
void set_device(Scenario &s, const NlDevice &device);

/// EPR source; left: POLARIZER(theta_left) + DETECTOR "left"; right: choice
/// between POLARIZER(theta_right) + DETECTOR "right" and the device.
Scenario build_fig1(double theta_left = 0, double theta_right = 0, NlDevice device = {});

/// Unpolarized source into a calcite. Port H goes to DETECTOR "A"; port V
/// ends either in DETECTOR "B" or in the device (axis parallel to V).
Scenario build_fig2(NlDevice device = {});

/// Unpolarized source, calcite, two mirrored arms with an optional
/// pass-through device in the V arm, recombining calcite, then
/// POLARIZER(theta) + DETECTOR "D".
Scenario build_fig3(double theta = 0, NlDevice device = {});

std::vector<std::string> builtin_scenario_names();
/// Throws ScenarioError listing valid names.
Scenario builtin_scenario(std::string_view name);

struct DetectorRate {
    std::string id;
    int photon = 0;
    std::size_t path = 0;
    /// Outside the choice path; its rate is what a remote observer sees.
    bool remote = false;
    double rate = 0;

    bool operator==(const DetectorRate &) const = default;
};

struct CoincidenceRate {
    std::string first;
    std::string second;
    double rate = 0;

    std::string id() const {
        return first + "&" + second;
    }
    bool operator==(const CoincidenceRate &) const = default;
};

/// Rates per emitted photon (pair), i.e. relative to the counting rate with
/// no analyzers and unit detector efficiency.
struct DetectorStats {
    std::vector<DetectorRate> singles;
    std::vector<CoincidenceRate> coincidences;

    /// Throws ScenarioError for an unknown detector.
    double rate(std::string_view detector_id) const;
    std::optional<double> coincidence(std::string_view a, std::string_view b) const;

    bool operator==(const DetectorStats &) const = default;
};

struct DetectorEffect {
    std::string id;
    int photon = 0;
    std::size_t path = 0;
    bool remote = false;
    /// POVM element on the full space.
    Operator effect;
};

/// Joint state after the emission pass plus detector effects.
struct Evaluation {
    Operator state;
    SubsystemShape registers;
    std::vector<DetectorEffect> detectors;
};

Evaluation evaluate(const Scenario &s, bool device_in, const std::optional<NlDevice> &device_override = std::nullopt);

DetectorStats run_scenario(const Scenario &s, bool device_in,
                           const std::optional<NlDevice> &device_override = std::nullopt);

/// max over remote detectors of |rate(in) - rate(out)|.
double signalling_delta(const Scenario &s, const std::optional<NlDevice> &device_override = std::nullopt);

/// One joint detection pattern: which detectors clicked and its probability.
struct JointOutcome {
    std::vector<std::size_t> clicked;
    double probability = 0;
};

/// Exhaustive outcome distribution. Each photon fires at most one of its
/// detectors; photons are jointly distributed. Probabilities sum to 1.
std::vector<JointOutcome> joint_outcomes(const Evaluation &e);

}  // namespace slash

#endif
