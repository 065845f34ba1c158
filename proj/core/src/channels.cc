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

#include "slash/channels.h"

#include <cmath>
#include <sstream>

namespace slash {

namespace {

void require_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        std::ostringstream ss;
        ss << what << ": parameter " << p << " is outside [0, 1]";
        throw ContractViolation(ss.str());
    }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Operator> kraus_ops, std::string label)
    : ops_(std::move(kraus_ops)), label_(std::move(label)) {
    if (ops_.empty()) {
        throw ContractViolation("KrausChannel: at least one Kraus operator is required");
    }
    for (const auto &k : ops_) {
        if (k.dim() != ops_.front().dim()) {
            throw ContractViolation("KrausChannel: Kraus operators must share one dimension");
        }
    }
}

double KrausChannel::completeness_error() const {
    Operator sum(dim());
    for (const auto &k : ops_) {
        sum += k.adjoint() * k;
    }
    return max_abs_diff(sum, Operator::identity(dim()));
}

void KrausChannel::require_valid() const {
    double err = completeness_error();
    if (!(err <= kEigenTol)) {
        std::ostringstream ss;
        ss << "channel '" << label_ << "' is not trace preserving: ||sum K^dag K - I||_max = " << err;
        throw ChannelValidityError(ss.str());
    }
}

KrausChannel identity_channel(std::size_t dim) {
    return KrausChannel({Operator::identity(dim)}, "identity");
}

Operator apply_channel(const Operator &rho, const KrausChannel &ch, const SubsystemShape &shape, std::size_t target) {
    ch.require_valid();
    shape.require_matches(rho.dim(), "apply_channel");
    if (target >= shape.size()) {
        throw ContractViolation("apply_channel: target subsystem out of range");
    }
    if (ch.dim() != shape.dims[target]) {
        throw ContractViolation("apply_channel: channel dimension does not match target subsystem");
    }
    Operator out(rho.dim());
    for (const auto &k : ch.kraus_ops()) {
        Operator full = embed(k, shape, target);
        out += full * rho * full.adjoint();
    }
    return out;
}

Operator apply_channel(const Operator &rho, const KrausChannel &ch) {
    return apply_channel(rho, ch, SubsystemShape{{rho.dim()}}, 0);
}

KrausChannel dephasing_channel(double p) {
    require_probability(p, "dephasing_channel");
    return KrausChannel(
        {
            Operator::identity(2) * std::sqrt(1 - p),
            Operator{{std::sqrt(p), 0}, {0, 0}},
            Operator{{0, 0}, {0, std::sqrt(p)}},
        },
        "dephasing");
}

KrausChannel depolarizing_channel(double p) {
    require_probability(p, "depolarizing_channel");
    // Tr(rho) I/2 = sum_ij (1/2) |i><j| rho |j><i|
    double w = std::sqrt(p / 2);
    std::vector<Operator> ops{Operator::identity(2) * std::sqrt(1 - p)};
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            Operator k(2);
            k(i, j) = w;
            ops.push_back(std::move(k));
        }
    }
    return KrausChannel(std::move(ops), "depolarizing");
}

KrausChannel noisy_amplifier_channel(double p_align, double p_noise) {
    require_probability(p_align, "noisy_amplifier_channel");
    require_probability(p_noise, "noisy_amplifier_channel");
    std::vector<Operator> ops;
    double keep = std::sqrt(1 - p_noise);
    KrausChannel dephasing = dephasing_channel(p_align);
    for (const auto &k : dephasing.kraus_ops()) {
        ops.push_back(k * keep);
    }
    double w = std::sqrt(p_noise / 2);
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            Operator k(2);
            k(i, j) = w;
            ops.push_back(std::move(k));
        }
    }
    return KrausChannel(std::move(ops), "noisy_amplifier");
}

AttenuationModel AttenuationModel::exponential(double scale) {
    AttenuationModel m{AttenuationKind::kExponential, scale, 1};
    m.validate();
    return m;
}

AttenuationModel AttenuationModel::inverse_square(double scale) {
    AttenuationModel m{AttenuationKind::kInverseSquare, scale, 1};
    m.validate();
    return m;
}

AttenuationModel AttenuationModel::step(double cutoff) {
    AttenuationModel m{AttenuationKind::kStep, 1, cutoff};
    m.validate();
    return m;
}

void AttenuationModel::validate() const {
    if (!(scale > 0) || !std::isfinite(scale)) {
        throw ContractViolation("attenuation scale must be positive and finite");
    }
    if (kind == AttenuationKind::kStep && (!(cutoff > 0) || !std::isfinite(cutoff))) {
        throw ContractViolation("step attenuation cutoff must be positive and finite");
    }
}

double AttenuationModel::coupling(double distance) const {
    if (!(distance >= 0)) {
        throw ContractViolation("distance must be nonnegative");
    }
    switch (kind) {
        case AttenuationKind::kExponential:
            return std::exp(-distance / scale);
        case AttenuationKind::kInverseSquare: {
            double r = distance / scale;
            return 1 / (1 + r * r);
        }
        case AttenuationKind::kStep:
            return distance < cutoff ? 1.0 : 0.0;
    }
    throw ContractViolation("unknown attenuation kind");
}

const char *to_string(AttenuationKind kind) {
    switch (kind) {
        case AttenuationKind::kExponential:
            return "exponential";
        case AttenuationKind::kInverseSquare:
            return "inverse_square";
        case AttenuationKind::kStep:
            return "step";
    }
    return "?";
}

AttenuationKind parse_attenuation_kind(const std::string &text) {
    if (text == "exponential") {
        return AttenuationKind::kExponential;
    }
    if (text == "inverse_square") {
        return AttenuationKind::kInverseSquare;
    }
    if (text == "step") {
        return AttenuationKind::kStep;
    }
    throw ContractViolation("unknown attenuation model '" + text + "' (expected exponential, inverse_square, step)");
}

double attenuated_population(double n, double distance, const AttenuationModel &model) {
    if (!(n >= 0) || !std::isfinite(n)) {
        throw ContractViolation("attenuated_population: n must be finite and nonnegative");
    }
    model.validate();
    return model.coupling(distance) * n;
}

CloningReport cloning_feasibility_check(const Ket &psi, const Ket &phi) {
    if (!psi.is_normalized() || !phi.is_normalized()) {
        throw ContractViolation("cloning_feasibility_check: inputs must be normalized");
    }
    if (psi.dim() != phi.dim()) {
        throw ContractViolation("cloning_feasibility_check: dimension mismatch");
    }
    CloningReport r;
    r.overlap_in = std::abs(inner(psi, phi));
    r.overlap_out_required = r.overlap_in * r.overlap_in;
    r.feasible = r.overlap_in <= kAlgebraTol || std::abs(r.overlap_in - 1) <= kAlgebraTol;
    return r;
}

}  // namespace slash
