#pragma once

// Young and quasi-Young functions.
//
// A YoungFunction stores the quasi-Young function Φ itself together with a
// declared order r0 in (0, 1]. The underlying Young function is
// Φ0(u) = Φ(u^{1/r0}), so that Φ(t) = Φ0(t^{r0}); the declared order is only
// valid when this Φ0 is convex. For power:p this means p / r0 >= 1.
//
// Values are extended reals: +infinity is a legitimate result (indicator kind)
// and every consumer in this library treats a sum containing it as infinite.

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace otfa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace young {

/// t -> coeff * t^p
struct Power {
  double p = 1.0;
  double coeff = 1.0;
};
/// 0 for t <= threshold, +inf beyond.
struct Indicator {
  double threshold = 1.0;
};
/// t -> t log(1 + t)
struct Entropy {};
/// t -> cosh(t) - 1
struct CoshMinusOne {};
/// t -> e^t - t - 1
struct ExpMinusOne {};
/// Caller-supplied monotone convex evaluator; validated by sampling.
struct Custom {
  std::shared_ptr<const std::function<double(double)>> fn;
  std::string label = "custom";
};

using Kind = std::variant<Power, Indicator, Entropy, CoshMinusOne, ExpMinusOne, Custom>;

}  // namespace young

/// Sampling parameters for validating custom kinds.
struct YoungValidation {
  double horizon = 64.0;     ///< Φ0 sampled on [0, horizon]
  std::size_t samples = 257; ///< sample count (>= 3)
  double slack = 1e-12;      ///< relative slack for the midpoint-convexity check
};

class YoungFunction {
 public:
  explicit YoungFunction(young::Kind kind, double order = 1.0, YoungValidation validation = {});

  static YoungFunction power(double p, double order = 1.0, double coeff = 1.0);
  static YoungFunction indicator(double threshold = 1.0, double order = 1.0);
  static YoungFunction entropy(double order = 1.0);
  static YoungFunction cosh_minus_one(double order = 1.0);
  static YoungFunction exp_minus_one(double order = 1.0);
  static YoungFunction custom(std::function<double(double)> fn, double order, std::string label = "custom",
                              YoungValidation validation = {});

  /// Φ(t); +inf allowed. Throws DomainError for t < 0 or NaN.
  double operator()(double t) const;
  /// Φ0(u) = Φ(u^{1/r0}).
  double base(double u) const;

  double order() const { return order_; }
  const young::Kind& kind() const { return kind_; }

  bool is_power() const { return std::holds_alternative<young::Power>(kind_); }
  bool is_indicator() const { return std::holds_alternative<young::Indicator>(kind_); }

  /// Textual form accepted by parse_young.
  std::string to_string() const;

 private:
  young::Kind kind_;
  double order_;
};

/// Φ(t) with domain checking.
double evaluate(const YoungFunction& phi, double t);

/// Parses `power:p`, `power:p:coeff`, `indicator:a`, `entropy`, `cosh`, `expm1`,
/// each optionally suffixed with `@r0`.
YoungFunction parse_young(std::string_view spec);

/// Complementary Young function Φ0*(s) = sup_{t>=0} (s t - Φ0(t)).
/// Requires order 1 (ContractError otherwise).
YoungFunction conjugate(const YoungFunction& phi);

/// Numerical sup_{t>=0} (s t - f(t)) for a convex f with f(0) = 0. The search
/// interval [0, T] is doubled until the maximizer is interior.
double numeric_conjugate(const std::function<double(double)>& f, double s);

struct Domination {
  bool bounded = false;
  double constant = 0.0;  ///< sampled sup of Ψ(t)/Φ(t) on (0, t0]
};

/// Whether Ψ(t) <= C Φ(t) on [0, t0], judged on a log-spaced sample grid
/// reaching down to t0 * 1e-12. Unbounded when the sampled ratio keeps growing
/// towards zero.
Domination dominates_near_zero(const YoungFunction& psi, const YoungFunction& phi, double t0,
                               std::size_t samples = 400);

struct ShapeReport {
  bool ok = true;
  double worst_convexity_violation = 0.0;
  double worst_monotonicity_violation = 0.0;
};

/// Sampled check of Φ0(0) = 0, monotonicity and midpoint convexity of Φ0 on [0, horizon].
ShapeReport check_base_shape(const YoungFunction& phi, const YoungValidation& validation = {});

}  // namespace otfa
