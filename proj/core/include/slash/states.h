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

#ifndef SLASH_STATES_H
#define SLASH_STATES_H

#include <cstdint>
#include <string>
#include <string_view>

#include "slash/linalg.h"

namespace slash {

/// Number of quanta held by the nonlinear device.
///
/// Infinity is a distinct symbolic value (the ideal-amplifier limit), not a
/// large number. Real values arise only from distance attenuation.
class Population {
   public:
    /// Integer count; negative values are a ContractViolation.
    static Population quanta(std::int64_t n);
    /// Real effective population (n >= 0, finite).
    static Population effective(double n);
    static Population infinite();

    /// Accepts "inf", "infinity", or a nonnegative decimal number.
    static Population parse(std::string_view text);

    bool is_infinite() const {
        return infinite_;
    }
    /// Finite value; throws ContractViolation when infinite.
    double value() const;
    bool is_integral() const;
    std::string to_string() const;

    bool operator==(const Population &other) const = default;

   private:
    Population(double n, bool inf) : n_(n), infinite_(inf) {
    }
    double n_ = 0;
    bool infinite_ = false;
};

enum class Statistics { kBoson, kFermion };

/// Two-photon polarization state in the basis |VV>, |VH>, |HV>, |HH>.
/// Photon 1 (index 0) is the one that meets the nonlinear device.
struct PairState {
    Ket ket;
    Population population;
    Statistics statistics;

    Operator density() const {
        return Operator::projector(ket);
    }
};

/// photon 1 (x) photon 2.
inline const SubsystemShape kPairShape{{2, 2}};

/// Bosonic stimulated-emission factor sqrt(n + 1).
double stimulated_amplitude(std::int64_t n);

/// Pauli-blocking factor sqrt(1 - n) for occupation n in {0, 1}.
double fermionic_amplitude(int occupation);

/// (|VV> + |HH>) / sqrt(2).
PairState epr_pair();

/// (sqrt(n+1) |VV> + |HH>) / sqrt(n+2); the amplitude of the branch whose
/// photon 1 matches the device axis (V) is enhanced by stimulated emission.
PairState slash_state(std::int64_t n);

/// Integral or infinite populations only; infinity yields |VV>.
PairState slash_state(Population n);

/// The fermionic device blocks the V branch when occupied.
PairState slash_state_fermionic(bool occupied);

/// Tr(rho P(theta1) (x) P(theta2)).
double coincidence_rate(double theta1, double theta2, const PairState &state);

/// Closed-form single-polarizer rate on photon 2 for the n-quanta ansatz:
/// (n cos^2 theta + 1) / (n + 2), or cos^2 theta for infinite n. Accepts
/// real effective populations.
double remote_rate(Population n, double theta);

/// Same quantity computed by partial trace plus Born rule on any PairState.
double remote_detection_rate(const PairState &state, double theta);

/// Reduced state of photon 2.
Operator remote_marginal(const PairState &state);

}  // namespace slash

#endif
