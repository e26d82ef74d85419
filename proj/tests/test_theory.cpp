#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tailcones/linalg.hpp"
#include "tailcones/theory.hpp"

using namespace tailcones;

namespace {

TauValue tau(const TauModel& m, std::uint32_t bits, double delta, int d = 3) {
    return tau_oracle({m, ConeId(bits, d), delta});
}

}  // namespace

TEST_CASE("independence copula: tau = 1/|C| for all delta") {
    auto m = TauModel::independence(3);
    for (double delta : {0.0, 0.3, 1.0}) {
        CHECK(tau(m, 0b001, delta).value == 1.0);
        CHECK(tau(m, 0b011, delta).value == 0.5);
        CHECK(tau(m, 0b111, delta).value == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }
}

TEST_CASE("trivariate logistic closed forms") {
    auto m = TauModel::logistic(0.5);
    // alpha = 0.5, delta = 0.5: alpha/(1 + alpha*delta - delta) = 2/3
    CHECK(tau(m, 0b001, 0.5).value == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(tau(m, 0b011, 0.5).value == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(tau(m, 0b111, 0.5).value == 1.0);
    // at delta = 1 every tau reaches 1 (the logistic charges only the full cone)
    CHECK(tau(m, 0b001, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tau(m, 0b110, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
    // symmetry across cones of equal size
    CHECK(tau(m, 0b010, 0.3).value == tau(m, 0b100, 0.3).value);
    CHECK(tau(m, 0b101, 0.3).value == tau(m, 0b011, 0.3).value);
}

TEST_CASE("logistic pair plus independent third variable") {
    const double a = 0.5;
    auto m = TauModel::logistic_pair_plus_indep(a);
    CHECK(tau(m, 0b001, 0.5).value == doctest::Approx(a / (1 + a * 0.5 - 0.5)).epsilon(1e-15));
    CHECK(tau(m, 0b100, 0.5).value == 1.0);           // variable 3 alone
    CHECK(tau(m, 0b011, 0.5).value == 1.0);           // the dependent pair
    CHECK(tau(m, 0b101, 0.5).value ==
          doctest::Approx(a / (a * 0.5 + 1 + a - 0.5)).epsilon(1e-15));
    CHECK(tau(m, 0b111, 0.0).value == 0.5);
    // at delta = 1, tau_{1,3} = alpha/(2 alpha) = 1/2
    CHECK(tau(m, 0b101, 1.0).value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("inverted logistic: |C|^{-alpha}, delta-free") {
    auto m = TauModel::inverted_logistic(0.5);
    CHECK(tau(m, 0b001, 0.0).value == 1.0);
    CHECK(tau(m, 0b011, 0.7).value == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
    CHECK(tau(m, 0b111, 0.2).value == doctest::Approx(std::pow(3.0, -0.5)).epsilon(1e-15));
    CHECK(tau(m, 0b111, 0.2).value == tau(m, 0b111, 0.9).value);
}

TEST_CASE("bivariate EV vertex and joint values") {
    // no vertex mass at coordinate 1: tau_1 follows the spectral-exponent formula
    auto m = TauModel::bivariate_ev(0.0, 0.3, 1.0, 0.5);
    CHECK(tau(m, 0b01, 0.5, 2).value ==
          doctest::Approx(1.0 / ((1.0 + 2.0) - 0.5 * (1.0 + 1.0))).epsilon(1e-15));
    CHECK(tau(m, 0b10, 0.5, 2).value == 1.0);  // theta2 > 0
    // theta1 + theta2 < 1 means mass remains on the joint cone
    CHECK(tau(m, 0b11, 0.5, 2).value == 1.0);
    auto all_vertex = TauModel::bivariate_ev(0.5, 0.5, 0.0, 0.0);
    CHECK(tau(all_vertex, 0b11, 0.5, 2).value == 0.5);
}

TEST_CASE("monotone in delta on a fine grid") {
    for (double a : {0.25, 0.5, 0.75}) {
        for (const auto& m : {TauModel::logistic(a), TauModel::logistic_pair_plus_indep(a),
                              TauModel::inverted_logistic(a)}) {
            for (std::uint32_t bits = 1; bits <= 7; ++bits) {
                double prev = -1;
                for (int g = 0; g <= 100; ++g) {
                    const double v = tau(m, bits, g / 100.0).value;
                    CHECK(v >= prev);
                    CHECK(v <= 1.0);
                    CHECK(v > 0.0);
                    prev = v;
                }
            }
        }
    }
}

TEST_CASE("gaussian eta against hand-inverted matrices") {
    // 2x2: 1^T Sigma^{-1} 1 = 2/(1+rho), so eta = (1+rho)/2
    std::vector<double> s2{1, 0.5, 0.5, 1};
    CHECK(eta_gaussian(s2, 2, ConeId::full(2)) == doctest::Approx(0.75).epsilon(1e-12));
    std::vector<double> ind{1, 0, 0, 1};
    CHECK(eta_gaussian(ind, 2, ConeId::full(2)) == doctest::Approx(0.5).epsilon(1e-12));
    // 3x3 equicorrelated rho: row sums of Sigma^{-1} are 1/(1+2rho) each,
    // so eta = (1+2rho)/3
    std::vector<double> s3{1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1};
    CHECK(eta_gaussian(s3, 3, ConeId::full(3)) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    // submatrix selection: pair {1,3} of a 3-d matrix
    std::vector<double> s3b{1, 0.2, 0.8, 0.2, 1, 0.1, 0.8, 0.1, 1};
    CHECK(eta_gaussian(s3b, 3, ConeId(0b101, 3)) == doctest::Approx((1 + 0.8) / 2).epsilon(1e-12));
    CHECK_THROWS_AS(eta_gaussian(s3, 3, ConeId(0b001, 3)), std::invalid_argument);
}

TEST_CASE("gaussian tau oracle routes through eta with bound marker") {
    std::vector<double> s3{1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1};
    auto m = TauModel::gaussian(s3, 3);
    TauValue full = tau(m, 0b111, 0.5);
    CHECK(full.value == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK_FALSE(full.upper_bound_only);
    TauValue pair = tau(m, 0b011, 0.5);
    CHECK(pair.value == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(pair.upper_bound_only);  // proper subset below delta = 1: bound, not value
    CHECK_THROWS_AS(tau(m, 0b001, 0.5), NoClosedForm);
}

TEST_CASE("gaussian vertex condition") {
    std::vector<double> s3{1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1};
    CHECK(gaussian_vertex_condition(s3, 3, 0, 0.25));   // boundary delta = rho^2
    CHECK_FALSE(gaussian_vertex_condition(s3, 3, 0, 0.2));
    std::vector<double> uncorr{1, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(gaussian_vertex_condition(uncorr, 3, 1, 0.0));
    CHECK_THROWS_AS(gaussian_vertex_condition(s3, 2, 0, 0.5), NoClosedForm);
}

TEST_CASE("eta from tau: max over supersets") {
    std::map<ConeId, double> taus;
    taus[ConeId(0b001, 3)] = 0.9;
    taus[ConeId(0b010, 3)] = 0.2;
    taus[ConeId(0b100, 3)] = 0.3;
    taus[ConeId(0b011, 3)] = 0.6;
    taus[ConeId(0b101, 3)] = 0.4;
    taus[ConeId(0b110, 3)] = 0.1;
    taus[ConeId(0b111, 3)] = 0.5;
    CHECK(eta_from_tau(taus, ConeId(0b001, 3)) == 0.9);
    CHECK(eta_from_tau(taus, ConeId(0b010, 3)) == 0.6);  // via {1,2}
    CHECK(eta_from_tau(taus, ConeId(0b110, 3)) == 0.5);  // via {1,2,3}
    CHECK(eta_from_tau(taus, ConeId(0b111, 3)) == 0.5);  // sole superset
    // nested cones: eta non-increasing as C grows
    CHECK(eta_from_tau(taus, ConeId(0b010, 3)) >= eta_from_tau(taus, ConeId(0b011, 3)));

    std::map<ConeId, double> incomplete{{ConeId(0b111, 3), 1.0}};
    CHECK_THROWS_AS(eta_from_tau(incomplete, ConeId(0b001, 3)), std::invalid_argument);
}

TEST_CASE("theorem boundary: tau at delta = 1 equals eta for logistic families") {
    // logistic charges only the full cone: every eta_C = tau_{123}(1) = 1
    auto lg = TauModel::logistic(0.4);
    std::map<ConeId, double> taus;
    for (std::uint32_t b = 1; b <= 7; ++b) taus[ConeId(b, 3)] = tau(lg, b, 1.0).value;
    for (std::uint32_t b = 1; b <= 7; ++b)
        CHECK(eta_from_tau(taus, ConeId(b, 3)) == doctest::Approx(1.0).epsilon(1e-12));

    // inverted logistic: eta_C = |C|^{-alpha} directly (taus are delta-free and
    // decrease with |C|, so the max over supersets is attained at C itself)
    auto inv = TauModel::inverted_logistic(0.3);
    std::map<ConeId, double> itaus;
    for (std::uint32_t b = 1; b <= 7; ++b) itaus[ConeId(b, 3)] = tau(inv, b, 1.0).value;
    CHECK(eta_from_tau(itaus, ConeId(0b011, 3)) ==
          doctest::Approx(std::pow(2.0, -0.3)).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(TauModel::logistic(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TauModel::logistic(1.0), std::invalid_argument);
    CHECK_THROWS_AS(TauModel::bivariate_ev(0.7, 0.6, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(TauModel::bivariate_ev(0.1, 0.1, -1.0, 0), std::invalid_argument);
    auto m = TauModel::logistic(0.5);
    CHECK_THROWS_AS(tau(m, 0b001, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(tau(m, 0b001, -0.1), std::invalid_argument);
}
