#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tailcones/evaluate.hpp"
#include "tailcones/method1.hpp"
#include "tailcones/method2.hpp"
#include "tailcones/simulate.hpp"

using namespace tailcones;

namespace {

MassDistribution make(int d, std::initializer_list<std::pair<std::uint32_t, double>> entries) {
    MassDistribution m(d);
    for (const auto& [bits, v] : entries) m.set(ConeId(bits, d), v);
    return m;
}

}  // namespace

TEST_CASE("hellinger fixtures") {
    auto p = make(2, {{0b01, 0.5}, {0b10, 0.5}});
    CHECK(hellinger(p, p) == 0.0);

    auto point = make(2, {{0b01, 1.0}});
    // direct evaluation: sqrt(((sqrt(.5)-1)^2 + 0.5) / 2)
    const double expected = std::sqrt(((std::sqrt(0.5) - 1) * (std::sqrt(0.5) - 1) + 0.5) / 2);
    CHECK(hellinger(p, point) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.5412).epsilon(1e-3));

    auto other = make(2, {{0b10, 1.0}});
    CHECK(hellinger(point, other) == doctest::Approx(1.0).epsilon(1e-14));

    // symmetry and bounds
    CHECK(hellinger(p, point) == hellinger(point, p));
    CHECK(hellinger(p, point) > 0.0);
    CHECK(hellinger(p, point) < 1.0);

    CHECK_THROWS_AS(hellinger(p, make(3, {{0b001, 1.0}})), std::invalid_argument);
}

TEST_CASE("roc endpoints and perfect detection") {
    auto est = make(2, {{0b01, 0.6}, {0b10, 0.4}});
    std::set<ConeId> truth{ConeId(0b01, 2), ConeId(0b10, 2)};
    auto roc = roc_curve(est, truth);
    CHECK(roc.points.front() == std::pair<double, double>{1.0, 1.0});
    CHECK(roc.points.back() == std::pair<double, double>{0.0, 0.0});
    CHECK(roc.auc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("roc: uniform estimate gives auc one half") {
    auto est = make(2, {{0b01, 1.0 / 3}, {0b10, 1.0 / 3}, {0b11, 1.0 / 3}});
    std::set<ConeId> truth{ConeId(0b01, 2)};
    auto roc = roc_curve(est, truth);
    // the sweep only ever sees all-detected or none-detected: the hull is the
    // diagonal through (0,0) and (1,1)
    CHECK(roc.auc == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("roc: misordered estimate scores below a correct one") {
    std::set<ConeId> truth{ConeId(0b001, 3), ConeId(0b111, 3)};
    auto good = make(3, {{0b001, 0.5}, {0b111, 0.45}, {0b010, 0.05}});
    auto bad = make(3, {{0b010, 0.5}, {0b100, 0.45}, {0b001, 0.05}});
    CHECK(roc_curve(good, truth).auc > roc_curve(bad, truth).auc);
    CHECK(roc_curve(good, truth).auc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("roc rate bounds and scale invariance of auc") {
    auto est = make(3, {{0b001, 0.7}, {0b011, 0.2}, {0b111, 0.1}});
    std::set<ConeId> truth{ConeId(0b001, 3), ConeId(0b011, 3)};
    auto roc = roc_curve(est, truth);
    for (const auto& [fpr, tpr] : roc.points) {
        CHECK(fpr >= 0.0);
        CHECK(fpr <= 1.0);
        CHECK(tpr >= 0.0);
        CHECK(tpr <= 1.0);
    }
    // monotone rescaling of masses preserves the sweep order, hence the AUC
    auto scaled = make(3, {{0b001, 0.49}, {0b011, 0.04}, {0b111, 0.01}});
    scaled.normalize();
    CHECK(roc_curve(scaled, truth).auc == doctest::Approx(roc.auc).epsilon(1e-12));

    CHECK_THROWS_AS(roc_curve(est, std::set<ConeId>{}), std::invalid_argument);
    std::set<ConeId> all;
    for (std::uint32_t b = 1; b <= 7; ++b) all.insert(ConeId(b, 3));
    CHECK_THROWS_AS(roc_curve(est, all), std::invalid_argument);
}

TEST_CASE("detection counts") {
    FitResult a, b;
    a.masses = make(2, {{0b01, 0.9}, {0b10, 0.1}});
    b.masses = make(2, {{0b01, 0.5}, {0b11, 0.5}});
    std::vector<FitResult> reps{a, b};
    auto counts = detection_counts(reps, 0.05);
    CHECK(counts[ConeId(0b01, 2)] == 2);
    CHECK(counts[ConeId(0b10, 2)] == 1);
    CHECK(counts[ConeId(0b11, 2)] == 1);

    // pi above every mass: nothing detected
    CHECK(detection_counts(reps, 0.95).empty());

    // additivity over concatenated lists
    std::vector<FitResult> twice{a, b, a, b};
    auto doubled = detection_counts(twice, 0.05);
    for (const auto& [c, n] : counts) CHECK(doubled[c] == 2 * n);

    CHECK_THROWS_AS(detection_counts({}, 0.1), std::invalid_argument);
}

TEST_CASE("stability: determinism, CI ordering, both methods") {
    auto x = sample_logistic(2000, 2, 1.0, 61);
    auto cfg1 = FitConfig::method1();
    cfg1.seed = 5;
    std::vector<double> grid{0.4, 0.5, 0.6};
    auto t1 = stability(x, cfg1, grid, 25, 0.001);
    auto t1b = stability(x, cfg1, grid, 25, 0.001);
    REQUIRE(t1.counts.size() == 3);
    CHECK(t1.counts == t1b.counts);
    CHECK(t1.ci_low == t1b.ci_low);
    CHECK(t1.ci_high == t1b.ci_high);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(t1.ci_low[i] <= t1.counts[i]);
        CHECK(t1.counts[i] <= t1.ci_high[i]);
    }

    auto cfg2 = FitConfig::method2();
    cfg2.seed = 5;
    auto t2 = stability(x, cfg2, {0.3, 0.5}, 25, 0.001);
    REQUIRE(t2.counts.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(t2.ci_low[i] <= t2.counts[i]);
        CHECK(t2.counts[i] <= t2.ci_high[i]);
    }

    // stability fast path agrees with the plain per-point fit
    auto direct = fit_method2(x, cfg2);
    CHECK(t2.counts[1] == static_cast<int>(direct.masses.entries().size()));

    CHECK_THROWS_AS(stability(x, cfg1, {}, 10, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(stability(x, cfg1, {1.5}, 10, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(stability(x, cfg1, grid, 0, 0.001), std::invalid_argument);
}

TEST_CASE("stability with B = 1 produces a degenerate interval") {
    auto x = sample_logistic(500, 2, 0.5, 62);
    auto cfg = FitConfig::method1();
    auto t = stability(x, cfg, {0.5}, 1, 0.001);
    REQUIRE(t.counts.size() == 1);
    CHECK(t.ci_low[0] <= t.ci_high[0]);
}

TEST_CASE("feasibility check") {
    // a vertex with 26% of the mass in five dimensions breaks the 1/d bound
    auto bad = make(5, {{1u << 4, 0.26}, {0b01111, 0.74}});
    auto violations = feasibility_check(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == FeasibilityViolation::Kind::singleton_excess);
    CHECK(violations[0].coordinate == 5);
    CHECK(violations[0].mass == doctest::Approx(0.26));
    CHECK(!violations[0].describe().empty());

    // uniform singletons sit exactly on the bound: fine
    MassDistribution uniform(5);
    for (int i = 0; i < 5; ++i) uniform.set(ConeId::singleton(i, 5), 0.2);
    CHECK(feasibility_check(uniform).empty());

    // a coordinate missing from every retained cone
    auto partial = make(3, {{0b011, 1.0}});
    auto missing = feasibility_check(partial);
    REQUIRE(missing.size() == 1);
    CHECK(missing[0].kind == FeasibilityViolation::Kind::uncovered_coordinate);
    CHECK(missing[0].coordinate == 3);
}
