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

#ifndef SLASH_AUDIT_H
#define SLASH_AUDIT_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slash/channels.h"
#include "slash/philox.h"
#include "slash/states.h"

namespace slash {

/// Remote-marginal deviations above this are reported as signalling. CPTP
/// numerical noise sits at or below kEigenTol, two orders of magnitude lower.
inline constexpr double kSignallingThreshold = 1e-8;

enum class Verdict { kNoSignalling, kSignalling };

const char *to_string(Verdict v);

struct RateDelta {
    double theta;
    double delta;
};

struct SignallingReport {
    /// || remote marginal after - remote marginal before ||_max
    double max_marginal_deviation = 0;
    std::vector<RateDelta> rate_delta_at_theta;
    Verdict verdict = Verdict::kNoSignalling;
};

Verdict verdict_for(double max_marginal_deviation);

/// 13 points 0, pi/12, ..., pi.
std::vector<double> default_theta_grid();

/// Evenly spaced grid over [start, stop] with `count` points (count >= 1).
std::vector<double> linear_grid(double start, double stop, std::size_t count);

/// Projector onto cos(theta)|0> + sin(theta)|1> inside a dim >= 2 space.
Operator analyzer_projector(std::size_t dim, double theta);

/// Applies `ch` to subsystem `target` of a bipartite rho and measures how far
/// the other subsystem's reduced state moves.
SignallingReport channel_signalling_deviation(const Operator &rho, const SubsystemShape &shape, const KrausChannel &ch,
                                              std::size_t target, std::span<const double> theta_grid);
SignallingReport channel_signalling_deviation(const Operator &rho, const SubsystemShape &shape, const KrausChannel &ch,
                                              std::size_t target);

/// remote_rate(n, theta) - remote_rate(0, theta) for the ansatz state family.
double slash_signalling_delta(Population n, double theta);

/// Compares the remote marginal of slash_state(n) with that of the EPR pair.
/// The ansatz has no Kraus representation; it enters only as a state family.
SignallingReport ansatz_signalling_report(Population n, std::span<const double> theta_grid);

struct SnrReport {
    /// Largest remote single-rate change the CPTP amplifier produces.
    double signal = 0;
    /// Coincidence change at theta1 = theta2 = pi/4 caused by the same channel.
    double noise_floor = 0;
    bool distinguishable = false;
    /// slash_signalling_delta(n_claimed, 0), for contrast.
    double ansatz_claimed_signal = 0;
};

SnrReport snr_report(double p_align, double p_noise, std::int64_t n_claimed);

/// Ginibre-ensemble density matrix of the given rank (1 <= rank <= dim).
Operator random_density_matrix(std::size_t dim, std::size_t rank, PhiloxStream &rng);

/// Kraus set cut from a Haar-like random isometry C^dim -> C^(dim * kraus_count).
KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, PhiloxStream &rng);

struct FuzzCase {
    std::uint64_t index = 0;
    SubsystemShape shape;
    std::size_t target = 0;
    std::size_t kraus_count = 0;
    std::size_t rank = 0;
    SignallingReport report;
};

/// Case `index` drawn from PhiloxStream(seed, index): independent of how the
/// campaign is partitioned across workers.
FuzzCase fuzz_case(std::uint64_t seed, std::uint64_t index);

struct FuzzSummary {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    double max_deviation = 0;
    std::uint64_t worst_index = 0;
    std::size_t signalling_cases = 0;
    Verdict verdict = Verdict::kNoSignalling;
};

/// Runs `count` random channel/state cases; workers > 1 splits the index
/// range across threads and reduces by max, giving identical results.
FuzzSummary fuzz_no_signalling(std::size_t count, std::uint64_t seed, unsigned workers = 1);

}  // namespace slash

#endif
