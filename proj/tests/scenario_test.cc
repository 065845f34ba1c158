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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.h"
#include "slash/audit.h"

using namespace slash;

namespace {

constexpr double kPi = std::numbers::pi;

NlDevice ansatz(Population n) {
    return NlDevice{n, AnsatzModel{}};
}

NlDevice cptp(double p_align, double p_noise, Population n = Population::quanta(10)) {
    return NlDevice{n, CptpModel{p_align, p_noise}};
}

NlDevice attenuated(AttenuationModel m, double distance, Population n) {
    return NlDevice{n, AttenuatedModel{m, distance}};
}

std::vector<Scenario> all_builtins() {
    std::vector<Scenario> out;
    for (const auto &name : builtin_scenario_names()) {
        out.push_back(builtin_scenario(name));
    }
    return out;
}

void expect_throws_with(const Scenario &s, const std::string &fragment) {
    try {
        validate(s);
        FAIL() << "expected a ScenarioError mentioning '" << fragment << "'";
    } catch (const ScenarioError &e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(models, names_and_physicality) {
    EXPECT_EQ(model_name(AnsatzModel{}), "ansatz");
    EXPECT_EQ(model_name(CptpModel{}), "cptp");
    EXPECT_EQ(model_name(AttenuatedModel{}), "attenuated");
    EXPECT_FALSE(is_physical(AnsatzModel{}));
    EXPECT_TRUE(is_physical(CptpModel{}));
    EXPECT_FALSE(is_physical(AttenuatedModel{}));
}

TEST(effective_population, per_model) {
    EXPECT_EQ(effective_population(ansatz(Population::quanta(4))), Population::quanta(4));
    auto far = attenuated(AttenuationModel::step(1), 2, Population::quanta(40));
    EXPECT_DOUBLE_EQ(effective_population(far).value(), 0);
    auto near = attenuated(AttenuationModel::exponential(2), 2, Population::quanta(10));
    EXPECT_NEAR(effective_population(near).value(), 10 / std::numbers::e, 1e-12);
}

TEST(builtins, validate_and_unknown_name) {
    for (const auto &s : all_builtins()) {
        EXPECT_NO_THROW(validate(s)) << s.name;
    }
    try {
        builtin_scenario("fig9");
        FAIL();
    } catch (const ScenarioError &e) {
        EXPECT_NE(std::string(e.what()).find("fig1, fig2, fig3"), std::string::npos);
    }
}

TEST(fig1, device_out_rates) {
    auto stats = run_scenario(build_fig1(0, 0), false);
    EXPECT_NEAR(stats.rate("left"), 0.5, kAlgebraTol);
    EXPECT_NEAR(stats.rate("right"), 0.5, kAlgebraTol);
    ASSERT_TRUE(stats.coincidence("left", "right").has_value());
    EXPECT_NEAR(*stats.coincidence("left", "right"), 0.5, kAlgebraTol);
    EXPECT_THROW(stats.rate("nope"), ScenarioError);
}

TEST(fig1, coincidence_follows_relative_angle) {
    for (int i = 0; i < 10; i++) {
        for (int j = 0; j < 10; j++) {
            double t1 = kPi * i / 10;
            double t2 = kPi * j / 10 - 0.2;
            auto stats = run_scenario(build_fig1(t1, t2), false);
            double c = std::cos(t1 - t2);
            ASSERT_NEAR(*stats.coincidence("left", "right"), c * c / 2, kAlgebraTol);
            ASSERT_NEAR(stats.rate("left"), 0.5, kAlgebraTol);
        }
    }
}

TEST(fig1, ansatz_rates) {
    auto in = run_scenario(build_fig1(0, 0, ansatz(Population::infinite())), true);
    EXPECT_NEAR(in.rate("left"), 1, kAlgebraTol);
    auto perp = run_scenario(build_fig1(kPi / 2, 0, ansatz(Population::infinite())), true);
    EXPECT_NEAR(perp.rate("left"), 0, kAlgebraTol);
    EXPECT_NEAR(signalling_delta(build_fig1(0, 0, ansatz(Population::infinite()))), 0.5, kAlgebraTol);
}

TEST(fig1, ansatz_matches_oracle_for_random_parameters) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(0, kPi);
    for (int k = 0; k < 300; k++) {
        auto n = static_cast<std::int64_t>(rng() % 200);
        double t = angle(rng);
        Scenario s = build_fig1(t, angle(rng), ansatz(Population::quanta(n)));
        double in = run_scenario(s, true).rate("left");
        ASSERT_NEAR(in, oracle::single_rate(oracle::pair_amplitudes(static_cast<double>(n)), 0, t), kAlgebraTol);
        double c2 = std::cos(t) * std::cos(t);
        double v = static_cast<double>(n);
        ASSERT_NEAR(signalling_delta(s), std::abs((v * c2 + 1) / (v + 2) - 0.5), kAlgebraTol);
    }
}

TEST(fig1, cptp_is_signalling_free) {
    auto s = build_fig1(0, 0, cptp(1, 0));
    EXPECT_NEAR(run_scenario(s, true).rate("left"), 0.5, kEigenTol);
    EXPECT_LE(signalling_delta(s), kEigenTol);
}

TEST(fig2, rates) {
    auto out = run_scenario(build_fig2(), false);
    EXPECT_NEAR(out.rate("A"), 0.5, kAlgebraTol);
    EXPECT_NEAR(out.rate("B"), 0.5, kAlgebraTol);
    EXPECT_NEAR(out.rate("A") + out.rate("B"), 1, kAlgebraTol);
    for (std::int64_t n : {0, 1, 2, 5, 100, 100000}) {
        auto s = build_fig2(ansatz(Population::quanta(n)));
        double v = static_cast<double>(n);
        EXPECT_NEAR(run_scenario(s, true).rate("A"), 1 / (v + 2), kAlgebraTol);
        EXPECT_NEAR(run_scenario(s, true).rate("A"), oracle::fig2_detector_a(v), kAlgebraTol);
        EXPECT_NEAR(signalling_delta(s), v / (2 * (v + 2)), kAlgebraTol);
    }
    EXPECT_NEAR(run_scenario(build_fig2(ansatz(Population::infinite())), true).rate("A"), 0, kAlgebraTol);
}

TEST(fig3, rates) {
    for (double t : linear_grid(0, kPi, 25)) {
        EXPECT_NEAR(run_scenario(build_fig3(t), false).rate("D"), 0.5, kAlgebraTol);
    }
    for (std::int64_t n : {0, 1, 2, 7, 1000}) {
        double v = static_cast<double>(n);
        auto s = build_fig3(0, ansatz(Population::quanta(n)));
        EXPECT_NEAR(run_scenario(s, true).rate("D"), (v + 1) / (v + 2), kAlgebraTol);
        EXPECT_NEAR(signalling_delta(s), v / (2 * (v + 2)), kAlgebraTol);
    }
}

TEST(fig3, ansatz_matches_oracle_over_angles) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> angle(0, kPi);
    for (int k = 0; k < 300; k++) {
        auto n = static_cast<std::int64_t>(rng() % 500);
        double t = angle(rng);
        auto s = build_fig3(t, ansatz(Population::quanta(n)));
        ASSERT_NEAR(run_scenario(s, true).rate("D"), oracle::fig3_detector(static_cast<double>(n), t), kAlgebraTol);
    }
}

TEST(all_figures, cptp_models_never_signal) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 60; k++) {
        NlDevice dev = cptp(u(rng), u(rng), Population::quanta(static_cast<std::int64_t>(rng() % 50)));
        double t = u(rng) * kPi;
        for (auto s : all_builtins()) {
            set_device(s, dev);
            set_analyzer_angle(s, t);
            ASSERT_LE(signalling_delta(s), kEigenTol) << s.name;
            for (const auto &d : run_scenario(s, true).singles) {
                if (d.remote) {
                    ASSERT_NEAR(d.rate, run_scenario(s, false).rate(d.id), kEigenTol);
                }
            }
        }
    }
    // The no-signalling result is independent of the population, even n = inf.
    auto s = build_fig2(cptp(0.5, 0.5, Population::infinite()));
    EXPECT_NEAR(run_scenario(s, true).rate("A"), 0.5, kEigenTol);
}

TEST(all_figures, attenuated_model_uses_effective_population) {
    auto far = attenuated(AttenuationModel::step(1), 5, Population::quanta(1000));
    auto near = attenuated(AttenuationModel::step(10), 5, Population::quanta(2));
    for (auto s : all_builtins()) {
        set_device(s, far);
        EXPECT_NEAR(signalling_delta(s), 0, kAlgebraTol) << s.name;
        set_device(s, near);
        EXPECT_NEAR(signalling_delta(s), 0.25, kAlgebraTol) << s.name;
    }
    auto s = build_fig1(0, 0, attenuated(AttenuationModel::exponential(1), 1, Population::quanta(10)));
    double ne = 10 / std::numbers::e;
    EXPECT_NEAR(run_scenario(s, true).rate("left"), (ne + 1) / (ne + 2), kAlgebraTol);
}

TEST(all_figures, rates_in_unit_interval_and_deterministic) {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 40; k++) {
        NlDevice dev = k % 2 == 0 ? ansatz(Population::quanta(static_cast<std::int64_t>(rng() % 30)))
                                  : cptp(u(rng), u(rng));
        for (auto s : all_builtins()) {
            set_device(s, dev);
            set_analyzer_angle(s, u(rng) * 2 * kPi);
            for (bool in : {false, true}) {
                auto a = run_scenario(s, in);
                auto b = run_scenario(s, in);
                ASSERT_EQ(a, b);
                for (const auto &d : a.singles) {
                    ASSERT_GE(d.rate, 0);
                    ASSERT_LE(d.rate, 1);
                }
                for (const auto &c : a.coincidences) {
                    ASSERT_GE(c.rate, 0);
                    ASSERT_LE(c.rate, 1);
                }
            }
        }
    }
}

TEST(evaluate, state_is_density_matrix_and_outcomes_sum_to_one) {
    for (auto s : all_builtins()) {
        for (const auto &dev : {ansatz(Population::quanta(3)), cptp(0.4, 0.3)}) {
            set_device(s, dev);
            for (bool in : {false, true}) {
                Evaluation e = evaluate(s, in);
                ASSERT_TRUE(is_density_matrix(e.state)) << s.name << " " << check_density_matrix(e.state).describe();
                double total = 0;
                for (const auto &o : joint_outcomes(e)) {
                    ASSERT_GE(o.probability, -kEigenTol);
                    total += o.probability;
                }
                ASSERT_NEAR(total, 1, kEigenTol) << s.name;
            }
        }
    }
}

TEST(evaluate, override_replaces_device) {
    auto s = build_fig1(0, 0, ansatz(Population::quanta(0)));
    EXPECT_NEAR(run_scenario(s, true).rate("left"), 0.5, kAlgebraTol);
    auto stats = run_scenario(s, true, ansatz(Population::infinite()));
    EXPECT_NEAR(stats.rate("left"), 1, kAlgebraTol);
}

TEST(evaluate, one_way_filter_is_transparent) {
    auto s = build_fig1(0.3, 0, ansatz(Population::quanta(4)));
    auto with_filter = s;
    with_filter.tail_in.insert(with_filter.tail_in.begin(), Element::one_way_filter());
    EXPECT_NO_THROW(validate(with_filter));
    EXPECT_NEAR(signalling_delta(with_filter), signalling_delta(s), kAlgebraTol);
}

TEST(setters, angles) {
    auto s = build_fig1();
    set_analyzer_angle(s, 0.7);
    set_choice_analyzer_angle(s, 0.2);
    EXPECT_DOUBLE_EQ(s.paths[0].elements[1].theta, 0.7);
    EXPECT_DOUBLE_EQ(s.tail_out[0].theta, 0.2);
}

TEST(validate, missing_detector) {
    auto s = build_fig1();
    s.paths[0].elements.pop_back();
    s.tail_out = {Element::nl_device({})};
    expect_throws_with(s, "DETECTOR");
}

TEST(validate, dangling_path) {
    auto s = build_fig1();
    s.paths[0].elements.pop_back();
    expect_throws_with(s, "left");
}

TEST(validate, structural_errors) {
    auto s = build_fig2();
    s.paths.clear();
    expect_throws_with(s, "no paths");

    s = build_fig1();
    s.choice_path = 7;
    expect_throws_with(s, "choice");

    s = build_fig1();
    s.paths[1].name = "left";
    expect_throws_with(s, "duplicate path");

    s = build_fig1();
    s.paths[0].elements.erase(s.paths[0].elements.begin());
    expect_throws_with(s, "source");

    s = build_fig1();
    s.tail_in = {Element::mirror(), Element::detector("x")};
    expect_throws_with(s, "NL");

    s = build_fig1();
    s.tail_out = {Element::polarizer(0), Element::detector("left")};
    expect_throws_with(s, "duplicate detector");

    s = build_fig1();
    s.paths[0].elements[1].theta = std::numeric_limits<double>::infinity();
    expect_throws_with(s, "finite");

    s = build_fig1(0, 0, cptp(1.5, 0));
    expect_throws_with(s, "CPTP parameters");

    s = build_fig1();
    s.paths[1].photon = 5;
    expect_throws_with(s, "photon");

    s = build_fig1();
    s.paths[0].port = Port::kV;
    expect_throws_with(s, "CALCITE");

    s = build_fig1();
    s.paths[0].elements = {Element::source_epr(), Element::detector("left"), Element::polarizer(0)};
    expect_throws_with(s, "last");
}

TEST(validate, lists_every_problem) {
    auto s = build_fig1();
    s.paths[0].elements[1].theta = std::nan("");
    s.tail_out = {Element::polarizer(0), Element::detector("left")};
    try {
        validate(s);
        FAIL();
    } catch (const ScenarioError &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("invalid scenario 'fig1'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("finite"), std::string::npos) << msg;
        EXPECT_NE(msg.find("duplicate detector"), std::string::npos) << msg;
    }
}
