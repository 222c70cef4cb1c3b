#include "doctest.h"
#include "semnet/distortion/control.hpp"
#include "semnet/rng.hpp"

using namespace semnet;

namespace {

SemanticVector vec3(double x, double y, double z) {
    Eigen::VectorXd v(3);
    v << x, y, z;
    return SemanticVector(v);
}

}  // namespace

TEST_CASE("observed distortion is cosine distance") {
    const auto s = vec3(1, 0, 0);
    CHECK(observed_distortion(s, s) == doctest::Approx(0.0));
    CHECK(observed_distortion(s, vec3(0, 1, 0)) == doctest::Approx(1.0));
    CHECK(observed_distortion(s, vec3(-1, 0, 0)) == doctest::Approx(2.0));
}

TEST_CASE("distortion gap") {
    CHECK(distortion_gap(0.3, 0.3) == doctest::Approx(0.0));
    CHECK(distortion_gap(0.12, 0.05) == doctest::Approx(0.07).epsilon(1e-12));
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0.0, 2.0);
        const double b = rng.uniform(0.0, 1.0);
        CHECK(distortion_gap(a, b) == doctest::Approx(distortion_gap(b, a)));
    }
    CHECK_THROWS_AS(distortion_gap(-0.1, 0.0), ValidationError);
}

TEST_CASE("relevance-aware tolerance") {
    const ControlConfig cfg;  // delta0 0.05, delta_min 0.01
    CHECK(tolerance(0.0, cfg) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(tolerance(1.0, cfg) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(tolerance(0.5, cfg) == doctest::Approx(0.03).epsilon(1e-12));
    SUBCASE("strictly decreasing in R") {
        Rng rng(2);
        for (int i = 0; i < 200; ++i) {
            const double r1 = rng.uniform();
            const double r2 = rng.uniform();
            if (r1 == r2) continue;
            const double lo = std::min(r1, r2), hi = std::max(r1, r2);
            CHECK(tolerance(lo, cfg) > tolerance(hi, cfg));
        }
    }
    SUBCASE("config validation") {
        ControlConfig bad;
        bad.delta_min = 0.06;
        CHECK_THROWS_AS(bad.validate(), ConfigError);
        ControlConfig bad2;
        bad2.lambda = 1.5;
        CHECK_THROWS_AS(bad2.validate(), ConfigError);
    }
}

TEST_CASE("corrective action walks the control branches") {
    const ControlConfig cfg;
    const auto levels = FidelitySet::defaults();

    SUBCASE("within tolerance: no correction") {
        // gap 0.005 <= tolerance(0.5) = 0.03
        const auto d = corrective_action(0.5, FidelityId::mid, 0.02, 0.025, cfg, levels);
        CHECK(d.action == ControlAction::none);
        CHECK(d.new_level == FidelityId::mid);
    }
    SUBCASE("excess gap at mid escalates to high") {
        // gap 0.08 > tolerance(0.5) = 0.03
        const auto d = corrective_action(0.5, FidelityId::mid, 0.02, 0.10, cfg, levels);
        CHECK(d.action == ControlAction::fidelity_up);
        CHECK(d.new_level == FidelityId::high);
        CHECK(d.f_temp == doctest::Approx(1.0 + 0.1 * 0.08).epsilon(1e-12));
    }
    SUBCASE("excess gap at the top level requests re-routing") {
        const auto d = corrective_action(0.5, FidelityId::high, 0.02, 0.10, cfg, levels);
        CHECK(d.action == ControlAction::reroute);
    }
}

TEST_CASE("distortion-control state machine over random tuples") {
    // 10,000 random (R, f, Dhat, Dobs) tuples: action trichotomy, ceiling
    // projection, top-level reroute, tolerance monotonicity.
    const ControlConfig cfg;
    const auto levels = FidelitySet::defaults();
    Rng rng(1234);
    for (int i = 0; i < 10000; ++i) {
        const double r = rng.uniform();
        const auto f = static_cast<FidelityId>(rng.uniform_int(3));
        const double d_hat = rng.uniform();
        const double d_obs = rng.uniform(0.0, 2.0);
        const auto d = corrective_action(r, f, d_hat, d_obs, cfg, levels);

        const double gap = std::abs(d_obs - d_hat);
        const double tol = tolerance(r, cfg);
        CHECK(d.gap == doctest::Approx(gap));
        CHECK(d.tol == doctest::Approx(tol));

        // Exactly one action, consistent with the branch conditions.
        if (gap <= tol) {
            CHECK(d.action == ControlAction::none);
            CHECK(d.new_level == f);
        } else if (f != FidelityId::high) {
            CHECK(d.action == ControlAction::fidelity_up);
            CHECK(static_cast<int>(d.new_level) == static_cast<int>(f) + 1);  // ceiling: one up
        } else {
            CHECK(d.action == ControlAction::reroute);
        }
        // fidelity_up never at top; reroute never below top.
        if (d.action == ControlAction::fidelity_up) CHECK(f != FidelityId::high);
        if (d.action == ControlAction::reroute) CHECK(f == FidelityId::high);
        // Raw tentative update is recorded on the numeric level scale.
        CHECK(d.f_temp == doctest::Approx(static_cast<double>(f) + cfg.lambda * gap));
    }
}

TEST_CASE("no de-escalation exists") {
    // After an escalation, re-evaluating with the same gap cannot lower the
    // level: the only actions are none / up / reroute.
    const ControlConfig cfg;
    const auto levels = FidelitySet::defaults();
    const auto first = corrective_action(0.8, FidelityId::mid, 0.0, 0.2, cfg, levels);
    REQUIRE(first.action == ControlAction::fidelity_up);
    const auto second =
        corrective_action(0.8, first.new_level, 0.0, 0.2, cfg, levels);
    CHECK(static_cast<int>(second.new_level) >= static_cast<int>(first.new_level));
    CHECK(second.action == ControlAction::reroute);
}

TEST_CASE("distortion record invariants") {
    DistortionRecord rec;
    rec.d_hat = 0.04;
    rec.d_obs = 0.09;
    rec.gap = distortion_gap(rec.d_obs, rec.d_hat);
    rec.tol = 0.03;
    rec.action = rec.gap <= rec.tol ? ControlAction::none : ControlAction::fidelity_up;
    CHECK(rec.gap == doctest::Approx(0.05));
    CHECK(rec.action != ControlAction::none);
}
