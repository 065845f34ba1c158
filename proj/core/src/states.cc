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

#include "slash/states.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace slash {

Population Population::quanta(std::int64_t n) {
    if (n < 0) {
        throw ContractViolation("population must be nonnegative, got " + std::to_string(n));
    }
    return Population(static_cast<double>(n), false);
}

Population Population::effective(double n) {
    if (!std::isfinite(n) || n < 0) {
        throw ContractViolation("effective population must be finite and nonnegative");
    }
    return Population(n, false);
}

Population Population::infinite() {
    return Population(0, true);
}

Population Population::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "INFINITY" || text == "Inf") {
        return infinite();
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ContractViolation("cannot parse population '" + std::string(text) + "'");
    }
    return effective(v);
}

double Population::value() const {
    if (infinite_) {
        throw ContractViolation("Population::value: population is infinite");
    }
    return n_;
}

bool Population::is_integral() const {
    return !infinite_ && n_ == std::floor(n_);
}

std::string Population::to_string() const {
    if (infinite_) {
        return "inf";
    }
    std::ostringstream ss;
    ss.precision(17);
    ss << n_;
    return ss.str();
}

double stimulated_amplitude(std::int64_t n) {
    if (n < 0) {
        throw ContractViolation("stimulated_amplitude: n must be nonnegative");
    }
    return std::sqrt(static_cast<double>(n) + 1);
}

double fermionic_amplitude(int occupation) {
    if (occupation != 0 && occupation != 1) {
        throw ContractViolation("fermionic_amplitude: occupation must be 0 or 1");
    }
    return std::sqrt(1.0 - occupation);
}

PairState epr_pair() {
    return slash_state(0);
}

PairState slash_state(std::int64_t n) {
    double boost = stimulated_amplitude(n);
    Ket k = Ket{boost, 0, 0, 1}.normalized();
    return PairState{std::move(k), Population::quanta(n), Statistics::kBoson};
}

PairState slash_state(Population n) {
    if (n.is_infinite()) {
        return PairState{Ket{1, 0, 0, 0}, n, Statistics::kBoson};
    }
    if (!n.is_integral()) {
        throw ContractViolation("slash_state: population must be an integer or infinite");
    }
    return slash_state(static_cast<std::int64_t>(n.value()));
}

PairState slash_state_fermionic(bool occupied) {
    int occupation = occupied ? 1 : 0;
    Ket k = Ket{fermionic_amplitude(occupation), 0, 0, 1}.normalized();
    return PairState{std::move(k), Population::quanta(occupation), Statistics::kFermion};
}

double coincidence_rate(double theta1, double theta2, const PairState &state) {
    Ket analyzer = tensor(polarization_ket(theta1), polarization_ket(theta2));
    double p = std::norm(inner(analyzer, state.ket));
    return std::clamp(p, 0.0, 1.0);
}

double remote_rate(Population n, double theta) {
    double c2 = std::cos(theta) * std::cos(theta);
    if (n.is_infinite()) {
        return c2;
    }
    double v = n.value();
    return (v * c2 + 1) / (v + 2);
}

Operator remote_marginal(const PairState &state) {
    return partial_trace(state.density(), kPairShape, 1);
}

double remote_detection_rate(const PairState &state, double theta) {
    return detection_probability(remote_marginal(state), polarizer_projector(theta));
}

}  // namespace slash
