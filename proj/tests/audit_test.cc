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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.h"

using namespace slash;

namespace {

constexpr double kPi = std::numbers::pi;
const SubsystemShape kPair{{2, 2}};

}  // namespace

TEST(verdict, threshold) {
    EXPECT_EQ(verdict_for(0), Verdict::kNoSignalling);
    EXPECT_EQ(verdict_for(1e-8), Verdict::kNoSignalling);
    EXPECT_EQ(verdict_for(1.01e-8), Verdict::kSignalling);
    EXPECT_STREQ(to_string(Verdict::kSignalling), "SIGNALLING");
    EXPECT_STREQ(to_string(Verdict::kNoSignalling), "NO_SIGNALLING");
}

TEST(theta_grid, default_has_thirteen_points) {
    auto g = default_theta_grid();
    ASSERT_EQ(g.size(), 13u);
    EXPECT_EQ(g.front(), 0);
    EXPECT_NEAR(g[1], kPi / 12, 1e-15);
    EXPECT_NEAR(g.back(), kPi, 1e-15);
    EXPECT_EQ(linear_grid(2, 5, 1), std::vector<double>{2});
    EXPECT_THROW(linear_grid(0, 1, 0), ContractViolation);
}

TEST(channel_signalling_deviation, identity_and_dephasing_on_pair) {
    Operator rho = epr_pair().density();
    auto id = channel_signalling_deviation(rho, kPair, identity_channel(2), 0);
    EXPECT_EQ(id.verdict, Verdict::kNoSignalling);
    EXPECT_LE(id.max_marginal_deviation, kAlgebraTol);
    EXPECT_EQ(id.rate_delta_at_theta.size(), 13u);
    auto deph = channel_signalling_deviation(rho, kPair, dephasing_channel(1), 0);
    EXPECT_EQ(deph.verdict, Verdict::kNoSignalling);
    EXPECT_LE(deph.max_marginal_deviation, kEigenTol);
    for (const auto &d : deph.rate_delta_at_theta) {
        EXPECT_LE(std::abs(d.delta), kEigenTol);
    }
}

TEST(channel_signalling_deviation, rejects_non_bipartite) {
    Operator rho = Operator::identity(8) * Cplx(0.125);
    EXPECT_THROW(channel_signalling_deviation(rho, SubsystemShape{{2, 2, 2}}, identity_channel(2), 0), ContractViolation);
    EXPECT_THROW(channel_signalling_deviation(epr_pair().density(), kPair, identity_channel(2), 2), ContractViolation);
}

TEST(channel_signalling_deviation, random_channels_never_signal) {
    PhiloxStream rng(21, 0);
    for (int k = 0; k < 300; k++) {
        std::size_t da = 2 + static_cast<std::size_t>(k % 3);
        std::size_t db = 2 + static_cast<std::size_t>((k / 3) % 3);
        SubsystemShape shape{{da, db}};
        std::size_t target = static_cast<std::size_t>(k % 2);
        Operator rho = random_density_matrix(da * db, 1 + static_cast<std::size_t>(k) % (da * db), rng);
        KrausChannel ch = random_channel(shape.dims[target], 1 + static_cast<std::size_t>(k) % 5, rng);
        auto r = channel_signalling_deviation(rho, shape, ch, target);
        ASSERT_EQ(r.verdict, Verdict::kNoSignalling);
        ASSERT_LE(r.max_marginal_deviation, kEigenTol);
    }
}

TEST(random_generators, produce_valid_objects) {
    PhiloxStream rng(4, 4);
    for (std::size_t d = 1; d <= 6; d++) {
        for (std::size_t rank = 1; rank <= d; rank++) {
            Operator rho = random_density_matrix(d, rank, rng);
            ASSERT_TRUE(is_density_matrix(rho)) << check_density_matrix(rho).describe();
        }
        ASSERT_LE(random_channel(d, 3, rng).completeness_error(), kEigenTol);
    }
    EXPECT_THROW(random_density_matrix(3, 0, rng), ContractViolation);
    EXPECT_THROW(random_density_matrix(3, 4, rng), ContractViolation);
    EXPECT_THROW(random_channel(0, 1, rng), ContractViolation);
}

TEST(slash_signalling_delta, examples) {
    EXPECT_NEAR(slash_signalling_delta(Population::infinite(), 0), 0.5, kAlgebraTol);
    EXPECT_NEAR(slash_signalling_delta(Population::infinite(), kPi / 2), -0.5, kAlgebraTol);
    EXPECT_NEAR(slash_signalling_delta(Population::quanta(2), 0), 0.25, kAlgebraTol);
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        EXPECT_NEAR(slash_signalling_delta(Population::quanta(0), t), 0, kAlgebraTol);
    }
}

TEST(slash_signalling_delta, closed_form_at_zero) {
    for (std::int64_t n = 0; n <= 500; n++) {
        double v = static_cast<double>(n);
        ASSERT_NEAR(slash_signalling_delta(Population::quanta(n), 0), v / (2 * (v + 2)), kAlgebraTol);
    }
}

TEST(slash_signalling_delta, matches_partial_trace_oracle) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(0, kPi);
    for (int k = 0; k < 1000; k++) {
        auto n = static_cast<std::int64_t>(rng() % 5000);
        double t = angle(rng);
        auto with = oracle::outer(oracle::pair_amplitudes(static_cast<double>(n)));
        auto without = oracle::outer(oracle::pair_amplitudes(0));
        double expect = oracle::born(oracle::partial_trace(with, 2, 2, 1), oracle::polarizer(t)) -
                        oracle::born(oracle::partial_trace(without, 2, 2, 1), oracle::polarizer(t));
        ASSERT_NEAR(slash_signalling_delta(Population::quanta(n), t), expect, kAlgebraTol);
    }
}

TEST(slash_signalling_delta, vanishes_at_forty_five_degrees) {
    for (std::int64_t n : {0, 1, 2, 3, 10, 1000, 1000000}) {
        EXPECT_NEAR(slash_signalling_delta(Population::quanta(n), kPi / 4), 0, kAlgebraTol);
    }
    EXPECT_NEAR(slash_signalling_delta(Population::infinite(), kPi / 4), 0, kAlgebraTol);
}

TEST(slash_signalling_delta, sign_follows_malus_offset) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> angle(0, kPi);
    for (int k = 0; k < 1000; k++) {
        auto n = 1 + static_cast<std::int64_t>(rng() % 10000);
        double t = angle(rng);
        double offset = std::cos(t) * std::cos(t) - 0.5;
        if (std::abs(offset) < 1e-9) {
            continue;
        }
        double d = slash_signalling_delta(Population::quanta(n), t);
        ASSERT_EQ(d > 0, offset > 0) << "n=" << n << " theta=" << t;
    }
}

TEST(ansatz_signalling_report, flags_signalling) {
    auto grid = default_theta_grid();
    auto r = ansatz_signalling_report(Population::quanta(2), grid);
    EXPECT_EQ(r.verdict, Verdict::kSignalling);
    EXPECT_NEAR(r.max_marginal_deviation, 0.25, kAlgebraTol);
    ASSERT_EQ(r.rate_delta_at_theta.size(), 13u);
    EXPECT_NEAR(r.rate_delta_at_theta[0].delta, 0.25, kAlgebraTol);
    EXPECT_NEAR(r.rate_delta_at_theta[3].delta, 0, kAlgebraTol);
    auto none = ansatz_signalling_report(Population::quanta(0), grid);
    EXPECT_EQ(none.verdict, Verdict::kNoSignalling);
    auto real = ansatz_signalling_report(Population::effective(2.0000001), grid);
    EXPECT_NEAR(real.max_marginal_deviation, 0.25, 1e-7);
}

TEST(snr_report, examples) {
    auto zero = snr_report(0, 0, 5);
    EXPECT_LE(zero.signal, kEigenTol);
    EXPECT_LE(zero.noise_floor, kEigenTol);
    EXPECT_FALSE(zero.distinguishable);

    auto aligned = snr_report(1, 0, 5);
    EXPECT_LE(aligned.signal, kEigenTol);
    EXPECT_NEAR(aligned.noise_floor, 0.25, kEigenTol);
    EXPECT_FALSE(aligned.distinguishable);
    EXPECT_NEAR(aligned.ansatz_claimed_signal, 5.0 / 14.0, kAlgebraTol);
}

TEST(snr_report, never_distinguishable_over_parameter_grid) {
    for (int i = 0; i < 10; i++) {
        for (int j = 0; j < 10; j++) {
            auto r = snr_report(i / 9.0, j / 9.0, 100);
            ASSERT_FALSE(r.distinguishable) << i << "," << j;
            ASSERT_LE(r.signal, kEigenTol);
        }
    }
}

TEST(fuzz_no_signalling, deterministic_and_worker_independent) {
    auto a = fuzz_no_signalling(120, 5, 1);
    auto b = fuzz_no_signalling(120, 5, 1);
    auto c = fuzz_no_signalling(120, 5, 4);
    EXPECT_EQ(a.cases, 120u);
    EXPECT_EQ(a.max_deviation, b.max_deviation);
    EXPECT_EQ(a.max_deviation, c.max_deviation);
    EXPECT_EQ(a.worst_index, c.worst_index);
    EXPECT_EQ(a.verdict, Verdict::kNoSignalling);
    EXPECT_EQ(a.signalling_cases, 0u);
    EXPECT_LE(a.max_deviation, kEigenTol);
    EXPECT_THROW(fuzz_no_signalling(0, 1), ContractViolation);
}

TEST(fuzz_case, reproducible_per_index) {
    auto x = fuzz_case(9, 17);
    auto y = fuzz_case(9, 17);
    EXPECT_EQ(x.shape.dims, y.shape.dims);
    EXPECT_EQ(x.target, y.target);
    EXPECT_EQ(x.kraus_count, y.kraus_count);
    EXPECT_EQ(x.report.max_marginal_deviation, y.report.max_marginal_deviation);
}
