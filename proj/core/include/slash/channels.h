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

#ifndef SLASH_CHANNELS_H
#define SLASH_CHANNELS_H

#include <stdexcept>
#include <string>
#include <vector>

#include "slash/linalg.h"

namespace slash {

/// Raised when a Kraus set fails the completeness check at application time.
class ChannelValidityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A quantum operation rho -> sum_i K_i rho K_i^dag.
///
/// Construction only checks shapes. Completeness (sum K^dag K = I) is
/// checked when the channel is applied, so hand-built invalid sets can exist
/// and be rejected loudly.
class KrausChannel {
   public:
    KrausChannel(std::vector<Operator> kraus_ops, std::string label);

    std::size_t dim() const {
        return ops_.front().dim();
    }
    const std::vector<Operator> &kraus_ops() const {
        return ops_;
    }
    const std::string &label() const {
        return label_;
    }

    /// || sum_i K_i^dag K_i - I ||_max
    double completeness_error() const;
    bool is_trace_preserving(double tol = kEigenTol) const {
        return completeness_error() <= tol;
    }
    /// Throws ChannelValidityError when not trace preserving.
    void require_valid() const;

   private:
    std::vector<Operator> ops_;
    std::string label_;
};

KrausChannel identity_channel(std::size_t dim);

/// (Lambda (x) I) applied to subsystem `target` of rho.
Operator apply_channel(const Operator &rho, const KrausChannel &ch, const SubsystemShape &shape, std::size_t target);

/// The channel acting on the whole space.
Operator apply_channel(const Operator &rho, const KrausChannel &ch);

/// Passive analyzer: dephasing in the V/H basis with strength p.
/// Kraus set {sqrt(1-p) I, sqrt(p) |V><V|, sqrt(p) |H><H|}.
KrausChannel dephasing_channel(double p);

/// rho -> (1 - p) rho + p Tr(rho) I/2 on a qubit.
KrausChannel depolarizing_channel(double p);

/// Minimal physically admissible amplifier on a polarization qubit:
///
///     rho -> (1 - p_noise) Dephase_{p_align}(rho) + p_noise Tr(rho) I/2
///
/// The dephasing part is the axis-selective (stimulated) action; the
/// depolarizing part is the spontaneous emission noise no amplifier avoids.
KrausChannel noisy_amplifier_channel(double p_align, double p_noise);

enum class AttenuationKind { kExponential, kInverseSquare, kStep };

/// Distance dependence g(d) of the device coupling. g(0) = 1, g is
/// nonincreasing and stays in [0, 1].
struct AttenuationModel {
    AttenuationKind kind = AttenuationKind::kExponential;
    double scale = 1;
    double cutoff = 1;

    static AttenuationModel exponential(double scale);
    static AttenuationModel inverse_square(double scale);
    static AttenuationModel step(double cutoff);

    /// Throws ContractViolation on nonpositive scale or cutoff.
    void validate() const;
    double coupling(double distance) const;
};

const char *to_string(AttenuationKind kind);
AttenuationKind parse_attenuation_kind(const std::string &text);

/// n_eff = g(distance) * n.
double attenuated_population(double n, double distance, const AttenuationModel &model);

struct CloningReport {
    /// s = |<psi|phi>|
    double overlap_in = 0;
    /// |<psi psi|phi phi>| = s^2; unitarity would need this to equal s.
    double overlap_out_required = 0;
    bool feasible = false;
};

/// A unitary cloner preserves inner products, so it exists for {psi, phi}
/// only when s = s^2, i.e. the states are identical or orthogonal.
CloningReport cloning_feasibility_check(const Ket &psi, const Ket &phi);

}  // namespace slash

#endif
