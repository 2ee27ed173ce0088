#include "doctest.h"
#include "otfa/errors.hpp"
#include "otfa/weights.hpp"

using namespace otfa;

TEST_SUITE("weights") {
  TEST_CASE("evaluation") {
    CHECK(Weight::one(2)({3.0, 4.0}) == 1.0);
    CHECK(Weight::polynomial(2.0, 2)({3.0, 4.0}) == doctest::Approx(36.0));
    CHECK(Weight::polynomial(-1.0, 1)({-3.0}) == doctest::Approx(0.25));
    CHECK(Weight::exponential(0.5, 1)({-2.0}) == doctest::Approx(std::exp(1.0)));
    const auto p = Weight::product({Weight::polynomial(1.0, 1), Weight::exponential(1.0, 1)});
    CHECK(p.dim() == 2);
    CHECK(p({2.0, -1.0}) == doctest::Approx(3.0 * std::exp(1.0)));
    CHECK_THROWS_AS(Weight::one(2)({1.0}), ShapeError);
  }

  TEST_CASE("parsing") {
    CHECK(parse_weight("one", 3).is_one());
    CHECK(parse_weight("poly:0.5", 1)({3.0}) == doctest::Approx(2.0));
    CHECK(parse_weight("exp:0.2", 2)({3.0, 4.0}) == doctest::Approx(std::exp(1.0)));
    const auto p = parse_weight("prod:[poly:1;exp:1]", 2);
    CHECK(p({2.0, -1.0}) == doctest::Approx(3.0 * std::exp(1.0)));
    const auto q = parse_weight("prod:[poly:1;one]", 4);
    CHECK(q({3.0, 4.0, 100.0, 100.0}) == doctest::Approx(6.0));
    for (const std::string bad : {"", "poly", "poly:x", "exp:", "prod:[poly:1]x", "prod:[poly:1;one;one]", "bar"}) {
      CHECK_THROWS_AS(parse_weight(bad, 2), ParseError);
    }
  }

  TEST_CASE("grid evaluation uses symmetric representatives") {
    const auto w = Weight::polynomial(1.0, 1);
    const auto v = weight_on_grid(w, GridShape{8});
    CHECK(v[0] == 1.0);
    CHECK(v[4] == doctest::Approx(5.0));  // index 4 -> -4
    CHECK(v[7] == doctest::Approx(2.0));  // index 7 -> -1
    const std::vector<double> steps{2.0};
    const auto s = weight_on_grid(w, GridShape{8}, steps);
    CHECK(s[4] == doctest::Approx(9.0));
  }

  TEST_CASE("moderateness constants") {
    CHECK(moderateness_constant(Weight::one(1), Weight::one(1), {16, 1}) == 1.0);
    CHECK(moderateness_constant(Weight::polynomial(1.0, 1), Weight::polynomial(1.0, 1), {16, 1}) <= 1.0);
    CHECK(moderateness_constant(Weight::polynomial(1.0, 2), Weight::polynomial(1.0, 2), {8, 2}) <= 1.0);
    CHECK(moderateness_constant(Weight::exponential(0.5, 1), Weight::exponential(0.5, 1), {32, 1}) <= 1.0 + 1e-12);
    // (1+|x+y|)^{-1} <= (1+|x|)^{-1}(1+|y|) by Peetre
    CHECK(moderateness_constant(Weight::polynomial(-1.0, 1), Weight::polynomial(1.0, 1), {32, 1}) <= 1.0 + 1e-12);
    // polynomial weight is not moderated by the trivial weight
    CHECK(moderateness_constant(Weight::polynomial(1.0, 1), Weight::one(1), {32, 1}) > 5.0);
    CHECK_THROWS_AS(moderateness_constant(Weight::one(1), Weight::one(2), {8, 1}), ShapeError);
  }

  TEST_CASE("moderateness consequence v(-x)^{-1} <= C w(x) <= C^2 v(x)") {
    const auto w = Weight::polynomial(0.5, 1);
    const auto v = Weight::polynomial(0.5, 1);
    const double C = std::max(1.0, moderateness_constant(w, v, {32, 1}));
    const double w0 = w({0.0});
    for (double x = -16; x < 16; x += 1.0) {
      CHECK(w0 / v({-x}) <= C * w({x}) * (1.0 + 1e-12));
      CHECK(w({x}) <= C * w0 * v({x}) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("T_A transform") {
    Eigen::VectorXd X(2), Y(2);
    X << 2.0, 0.0;
    Y << 0.0, 2.0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Constant(1, 1, 0.5);
    const auto t = t_a_transform(A, X, Y);
    REQUIRE(t.size() == 4);
    CHECK(t(0) == doctest::Approx(1.0));
    CHECK(t(1) == doctest::Approx(1.0));
    CHECK(t(2) == doctest::Approx(2.0));
    CHECK(t(3) == doctest::Approx(2.0));
    const auto t0 = t_a_transform(Eigen::MatrixXd::Zero(1, 1), X, Y);
    CHECK(t0(0) == 0.0);  // y
    CHECK(t0(1) == 0.0);  // ξ
    CHECK(t0(2) == 2.0);  // η - ξ
    CHECK(t0(3) == 2.0);  // x - y
    const auto tI = t_a_transform(Eigen::MatrixXd::Identity(1, 1), X, Y);
    CHECK(tI(0) == 2.0);  // x
    CHECK(tI(1) == 2.0);  // η
  }

  TEST_CASE("weight triple conditions") {
    const Eigen::MatrixXd A = Eigen::MatrixXd::Zero(1, 1);
    CHECK(weight_triple_constant(Weight::one(4), Weight::one(2), Weight::one(2), A, 16, WeightCondition::PseudoCont) ==
          1.0);
    CHECK(weight_triple_constant(Weight::one(4), Weight::one(4), Weight::one(4), A, 16, WeightCondition::Product) ==
          1.0);
    // ω2 = ω1 = (1+|·|)^s with ω = (1+|·|)^{|s|} on the last 2d variables
    const double s = 1.0;
    const auto tail = Weight::product({Weight::one(2), Weight::polynomial(s, 2)});
    const double c = weight_triple_constant(tail, Weight::polynomial(s, 2), Weight::polynomial(s, 2), A, 16,
                                            WeightCondition::PseudoCont);
    CHECK(std::isfinite(c));
    CHECK(c <= 1.0 + 1e-12);
    // exponential growth is not controlled by trivial weights: the constant grows with L
    const double small = weight_triple_constant(Weight::one(4), Weight::one(2), Weight::exponential(1.0, 2), A, 8,
                                                WeightCondition::PseudoCont);
    const double large = weight_triple_constant(Weight::one(4), Weight::one(2), Weight::exponential(1.0, 2), A, 32,
                                                WeightCondition::PseudoCont);
    CHECK(large > 10.0 * small);
    CHECK_THROWS_AS(weight_triple_constant(Weight::one(3), Weight::one(2), Weight::one(2), A, 8,
                                           WeightCondition::PseudoCont),
                    ShapeError);
  }
}
