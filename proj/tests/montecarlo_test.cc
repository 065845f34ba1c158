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

#include "slash/montecarlo.h"

#include <gtest/gtest.h>

#include <numbers>

using namespace slash;

namespace {

constexpr double kPi = std::numbers::pi;

const CountRecord &find(const std::vector<CountRecord> &records, const std::string &id) {
    for (const auto &r : records) {
        if (r.id == id) {
            return r;
        }
    }
    throw std::runtime_error("no record " + id);
}

NlDevice ansatz(Population n) {
    return NlDevice{n, AnsatzModel{}};
}

}  // namespace

TEST(count_record, invariants) {
    CountRecord r = make_count_record("x", 250, 1000);
    EXPECT_DOUBLE_EQ(r.rate_estimate, 0.25);
    EXPECT_DOUBLE_EQ(r.ci95_halfwidth, 1.96 * std::sqrt(0.25 * 0.75 / 1000));
    EXPECT_EQ(make_count_record("z", 0, 10).ci95_halfwidth, 0);
    EXPECT_THROW(make_count_record("x", 1, 0), ContractViolation);
    EXPECT_THROW(make_count_record("x", 11, 10), ContractViolation);
}

TEST(sample_counts, argument_errors) {
    EXPECT_THROW(sample_counts(build_fig1(), false, 0, 1), ContractViolation);
    EXPECT_THROW(sample_counts(build_fig1(), false, 10, 1, 0), ContractViolation);
    EXPECT_THROW(sample_counts(build_fig1(), false, 10, 1, 1.5), ContractViolation);
}

TEST(sample_counts, record_layout) {
    auto recs = sample_counts(build_fig1(), false, 100, 1);
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[0].id, "left");
    EXPECT_EQ(recs[1].id, "right");
    EXPECT_EQ(recs[2].id, "left&right");
    for (const auto &r : recs) {
        EXPECT_EQ(r.trials, 100u);
        EXPECT_LE(r.clicks, r.trials);
    }
}

TEST(sample_counts, impossible_coincidence_never_clicks) {
    auto recs = sample_counts(build_fig1(0, kPi / 2), false, 200000, 3);
    EXPECT_EQ(find(recs, "left&right").clicks, 0u);
    EXPECT_GT(find(recs, "left").clicks, 0u);
}

TEST(sample_counts, perfect_correlation_at_equal_angles) {
    auto recs = sample_counts(build_fig1(0.3, 0.3), false, 50000, 4);
    EXPECT_EQ(find(recs, "left").clicks, find(recs, "left&right").clicks);
    EXPECT_EQ(find(recs, "right").clicks, find(recs, "left&right").clicks);
}

TEST(sample_counts, deterministic_and_worker_independent) {
    Scenario s = build_fig2(ansatz(Population::quanta(2)));
    auto a = sample_counts(s, true, 30001, 77);
    auto b = sample_counts(s, true, 30001, 77);
    auto c = sample_counts(s, true, 30001, 77, 1, std::nullopt, 4);
    auto d = sample_counts(s, true, 30001, 78);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_NE(a, d);
}

TEST(sample_counts, estimates_track_analytic_rates) {
    auto left = find(sample_counts(build_fig1(), false, 200000, 5), "left");
    EXPECT_LE(std::abs(left.rate_estimate - 0.5), 3 * left.ci95_halfwidth);
    auto a = find(sample_counts(build_fig2(ansatz(Population::quanta(2))), true, 200000, 6), "A");
    EXPECT_LE(std::abs(a.rate_estimate - 0.25), 3 * a.ci95_halfwidth);
    auto d = find(sample_counts(build_fig3(0.4, ansatz(Population::quanta(3))), true, 200000, 7), "D");
    double c2 = std::cos(0.4) * std::cos(0.4);
    double expect = 0.8 * c2 + 0.2 * (1 - c2);
    EXPECT_LE(std::abs(d.rate_estimate - expect), 3 * d.ci95_halfwidth);
}

TEST(sample_counts, efficiency_scales_rates) {
    const std::uint64_t trials = 200000;
    for (double eta : {0.25, 0.5, 0.9}) {
        auto recs = sample_counts(build_fig1(0, 0.7), false, trials, 8, eta);
        auto left = find(recs, "left");
        EXPECT_LE(std::abs(left.rate_estimate - 0.5 * eta), 3 * left.ci95_halfwidth) << eta;
        auto both = find(recs, "left&right");
        double c = std::cos(0.7);
        double expect = 0.5 * c * c * eta * eta;
        EXPECT_LE(std::abs(both.rate_estimate - expect), 3 * both.ci95_halfwidth) << eta;
    }
}

TEST(sample_counts, override_changes_device) {
    Scenario s = build_fig2(ansatz(Population::quanta(0)));
    auto a = find(sample_counts(s, true, 50000, 9, 1, ansatz(Population::infinite())), "A");
    EXPECT_EQ(a.clicks, 0u);
}

TEST(distinguishability_trials, ansatz_at_infinity_is_distinguishable) {
    auto r = distinguishability_trials(build_fig1(), ansatz(Population::infinite()), 1000, 10);
    EXPECT_EQ(r.detector, "left");
    EXPECT_TRUE(r.choices_distinguishable);
    EXPECT_NEAR(r.rate_in, 1, 1e-12);
    EXPECT_GT(r.z, 3);
    EXPECT_LT(r.p_value_proxy, 1e-3);
}

TEST(distinguishability_trials, vacuous_and_physical_devices_are_not) {
    auto zero = distinguishability_trials(build_fig1(), ansatz(Population::quanta(0)), 100000, 11);
    EXPECT_FALSE(zero.choices_distinguishable);
    for (const auto &name : builtin_scenario_names()) {
        auto r = distinguishability_trials(builtin_scenario(name), NlDevice{Population::quanta(50), CptpModel{0.8, 0.1}},
                                           1000000, 12);
        EXPECT_FALSE(r.choices_distinguishable) << name << " z=" << r.z;
        EXPECT_LE(std::abs(r.rate_in - r.rate_out), 3 * r.standard_error) << name;
    }
}

TEST(distinguishability_trials, needs_a_remote_detector) {
    Scenario s = build_fig2();
    s.paths.erase(s.paths.begin() + 1);
    s.choice_path = 1;
    s.tail_out = {Element::detector("B")};
    EXPECT_THROW(distinguishability_trials(s, ansatz(Population::quanta(1)), 10, 1), ScenarioError);
}
