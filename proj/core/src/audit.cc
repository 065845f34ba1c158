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

#include "slash/audit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace slash {

const char *to_string(Verdict v) {
    return v == Verdict::kSignalling ? "SIGNALLING" : "NO_SIGNALLING";
}

Verdict verdict_for(double max_marginal_deviation) {
    return max_marginal_deviation > kSignallingThreshold ? Verdict::kSignalling : Verdict::kNoSignalling;
}

std::vector<double> default_theta_grid() {
    return linear_grid(0, std::numbers::pi, 13);
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
    if (count == 0) {
        throw ContractViolation("linear_grid: count must be positive");
    }
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; k++) {
        g[k] = count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return g;
}

Operator analyzer_projector(std::size_t dim, double theta) {
    if (dim < 2) {
        throw ContractViolation("analyzer_projector: dimension must be at least 2");
    }
    if (dim == 2) {
        return polarizer_projector(theta);
    }
    std::vector<Cplx> v(dim);
    v[0] = std::cos(theta);
    v[1] = std::sin(theta);
    return Operator::projector(Ket(std::move(v)));
}

SignallingReport channel_signalling_deviation(const Operator &rho, const SubsystemShape &shape, const KrausChannel &ch,
                                              std::size_t target, std::span<const double> theta_grid) {
    if (shape.size() != 2 || target > 1) {
        throw ContractViolation("channel_signalling_deviation: bipartite shape and target in {0, 1} required");
    }
    Operator out = apply_channel(rho, ch, shape, target);
    std::size_t remote = 1 - target;
    Operator before = partial_trace(rho, shape, remote);
    Operator after = partial_trace(out, shape, remote);

    SignallingReport r;
    r.max_marginal_deviation = max_abs_diff(after, before);
    for (double theta : theta_grid) {
        Operator p = analyzer_projector(before.dim(), theta);
        r.rate_delta_at_theta.push_back({theta, born_rule(after, p) - born_rule(before, p)});
    }
    r.verdict = verdict_for(r.max_marginal_deviation);
    return r;
}

SignallingReport channel_signalling_deviation(const Operator &rho, const SubsystemShape &shape, const KrausChannel &ch,
                                              std::size_t target) {
    auto grid = default_theta_grid();
    return channel_signalling_deviation(rho, shape, ch, target, grid);
}

double slash_signalling_delta(Population n, double theta) {
    return remote_rate(n, theta) - remote_rate(Population::quanta(0), theta);
}

SignallingReport ansatz_signalling_report(Population n, std::span<const double> theta_grid) {
    SignallingReport r;
    if (n.is_infinite() || n.is_integral()) {
        r.max_marginal_deviation = max_abs_diff(remote_marginal(slash_state(n)), remote_marginal(epr_pair()));
    } else {
        // Real effective populations have no integer-n state; the remote
        // marginal is diag((n+1)/(n+2), 1/(n+2)), off by n/(2(n+2)) from I/2.
        double v = n.value();
        r.max_marginal_deviation = v / (2 * (v + 2));
    }
    for (double theta : theta_grid) {
        r.rate_delta_at_theta.push_back({theta, slash_signalling_delta(n, theta)});
    }
    r.verdict = verdict_for(r.max_marginal_deviation);
    return r;
}

SnrReport snr_report(double p_align, double p_noise, std::int64_t n_claimed) {
    KrausChannel amp = noisy_amplifier_channel(p_align, p_noise);
    Operator rho = epr_pair().density();
    SignallingReport sig = channel_signalling_deviation(rho, kPairShape, amp, 0);

    SnrReport r;
    for (const auto &d : sig.rate_delta_at_theta) {
        r.signal = std::max(r.signal, std::abs(d.delta));
    }
    Operator out = apply_channel(rho, amp, kPairShape, 0);
    double q = std::numbers::pi / 4;
    Operator analyzer = tensor(polarizer_projector(q), polarizer_projector(q));
    r.noise_floor = std::abs(born_rule(out, analyzer) - born_rule(rho, analyzer));
    r.distinguishable = r.signal > r.noise_floor;
    r.ansatz_claimed_signal = slash_signalling_delta(Population::quanta(n_claimed), 0);
    return r;
}

Operator random_density_matrix(std::size_t dim, std::size_t rank, PhiloxStream &rng) {
    if (rank == 0 || rank > dim) {
        throw ContractViolation("random_density_matrix: rank must be in [1, dim]");
    }
    // rho = G G^dag / Tr(G G^dag) with G a dim x rank complex Gaussian matrix.
    std::vector<Cplx> g(dim * rank);
    for (auto &x : g) {
        double re = rng.normal();
        double im = rng.normal();
        x = {re, im};
    }
    Operator rho(dim);
    double tr = 0;
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            Cplx s = 0;
            for (std::size_t k = 0; k < rank; k++) {
                s += g[i * rank + k] * std::conj(g[j * rank + k]);
            }
            rho(i, j) = s;
        }
        tr += rho(i, i).real();
    }
    rho = rho * Cplx{1 / tr};
    // Exact Hermiticity; the product above is Hermitian only up to rounding.
    return (rho + rho.adjoint()) * Cplx{0.5};
}

KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, PhiloxStream &rng) {
    if (dim == 0 || kraus_count == 0) {
        throw ContractViolation("random_channel: dim and kraus_count must be positive");
    }
    const auto rows = static_cast<Eigen::Index>(dim * kraus_count);
    const auto cols = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd g(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        for (Eigen::Index j = 0; j < cols; j++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = {re, im};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);

    std::vector<Operator> ops;
    ops.reserve(kraus_count);
    for (std::size_t k = 0; k < kraus_count; k++) {
        Operator op(dim);
        for (std::size_t i = 0; i < dim; i++) {
            for (std::size_t j = 0; j < dim; j++) {
                op(i, j) = v(static_cast<Eigen::Index>(k * dim + i), static_cast<Eigen::Index>(j));
            }
        }
        ops.push_back(std::move(op));
    }
    return KrausChannel(std::move(ops), "random");
}

FuzzCase fuzz_case(std::uint64_t seed, std::uint64_t index) {
    PhiloxStream rng(seed, index);
    FuzzCase c;
    c.index = index;
    c.shape = SubsystemShape{{static_cast<std::size_t>(rng.uniform_int(2, 4)), static_cast<std::size_t>(rng.uniform_int(2, 4))}};
    c.target = static_cast<std::size_t>(rng.uniform_int(0, 1));
    c.kraus_count = static_cast<std::size_t>(rng.uniform_int(1, 4));
    std::size_t total = c.shape.total_dim();
    c.rank = static_cast<std::size_t>(rng.uniform_int(1, total));
    Operator rho = random_density_matrix(total, c.rank, rng);
    KrausChannel ch = random_channel(c.shape.dims[c.target], c.kraus_count, rng);
    c.report = channel_signalling_deviation(rho, c.shape, ch, c.target);
    return c;
}

namespace {

struct PartialFuzz {
    std::size_t cases = 0;
    double max_deviation = 0;
    std::uint64_t worst_index = 0;
    std::size_t signalling_cases = 0;
};

PartialFuzz fuzz_range(std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
    PartialFuzz p;
    for (std::uint64_t i = begin; i < end; i++) {
        FuzzCase c = fuzz_case(seed, i);
        p.cases++;
        if (c.report.max_marginal_deviation > p.max_deviation || p.cases == 1) {
            p.max_deviation = c.report.max_marginal_deviation;
            p.worst_index = i;
        }
        if (c.report.verdict == Verdict::kSignalling) {
            p.signalling_cases++;
        }
    }
    return p;
}

}  // namespace

FuzzSummary fuzz_no_signalling(std::size_t count, std::uint64_t seed, unsigned workers) {
    if (count == 0) {
        throw ContractViolation("fuzz_no_signalling: count must be at least 1");
    }
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    std::vector<PartialFuzz> parts(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; w++) {
        std::uint64_t begin = count * w / workers;
        std::uint64_t end = count * (w + 1) / workers;
        if (workers == 1) {
            parts[w] = fuzz_range(seed, begin, end);
        } else {
            threads.emplace_back([&parts, w, seed, begin, end] { parts[w] = fuzz_range(seed, begin, end); });
        }
    }
    for (auto &t : threads) {
        t.join();
    }

    FuzzSummary s;
    s.seed = seed;
    for (const auto &p : parts) {
        // Ties resolve to the lowest index, matching a serial scan.
        if (s.cases == 0 || p.max_deviation > s.max_deviation) {
            s.max_deviation = p.max_deviation;
            s.worst_index = p.worst_index;
        }
        s.cases += p.cases;
        s.signalling_cases += p.signalling_cases;
    }
    s.verdict = s.signalling_cases > 0 ? Verdict::kSignalling : Verdict::kNoSignalling;
    return s;
}

}  // namespace slash
