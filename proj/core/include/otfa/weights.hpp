#pragma once

// Positive weight functions on R^dim, evaluated on finite grids at the
// symmetric integer representatives of Z_L (scaled by lattice steps where the
// grid is a sampling lattice).

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otfa/grid.hpp"

namespace otfa {

class Weight {
 public:
  enum class Kind { One, Polynomial, Exponential, Product, Custom };
  using Evaluator = std::function<double(std::span<const double>)>;

  static Weight one(std::size_t dim);
  /// (1 + |x|)^s
  static Weight polynomial(double s, std::size_t dim);
  /// e^{r |x|}
  static Weight exponential(double r, std::size_t dim);
  /// Tensor product; factor i acts on the next factors[i].dim() coordinates.
  static Weight product(std::vector<Weight> factors);
  static Weight custom(Evaluator fn, std::size_t dim, std::string label = "custom");

  double operator()(std::span<const double> x) const;
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double parameter() const { return param_; }
  const std::vector<Weight>& factors() const { return factors_; }
  bool is_one() const;

  std::string to_string() const;

 private:
  Weight(Kind kind, std::size_t dim, double param) : kind_(kind), dim_(dim), param_(param) {}

  Kind kind_ = Kind::One;
  std::size_t dim_ = 1;
  double param_ = 0.0;
  std::vector<Weight> factors_;
  std::shared_ptr<const Evaluator> fn_;
  std::string label_;
};

/// Parses `one`, `poly:s`, `exp:r`, `prod:[w1;w2;...]` for a weight on R^dim.
/// Product factors split dim evenly.
Weight parse_weight(std::string_view spec, std::size_t dim);

/// Weight values over every point of a grid, in storage order. Coordinate a of
/// a point with index i is sym_rep(i, n_a) * steps[a] (steps default to 1).
std::vector<double> weight_on_grid(const Weight& w, const GridShape& shape, std::span<const double> steps = {});

struct FiniteGrid {
  long L = 8;        ///< points per axis, representatives in [-L/2, L/2)
  std::size_t dim = 1;
};

/// Grid constant max ω(x+y) / (ω(x) v(y)) over pairs with x + y inside the box.
/// Exhaustive when the pair count is at most max_pairs, seeded sampling otherwise.
double moderateness_constant(const Weight& w, const Weight& v, const FiniteGrid& grid,
                             std::size_t max_pairs = 4'000'000, std::uint64_t seed = 1);

/// (y + A(x-y), ξ + Aᵀ(η-ξ), η-ξ, x-y) for X = (x, ξ), Y = (y, η).
Eigen::VectorXd t_a_transform(const Eigen::MatrixXd& A, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

enum class WeightCondition {
  /// ω2(X)/ω1(Y) against ω(T_A(Y, X)); ω on R^{4d}, ω1, ω2 on R^{2d}.
  PseudoCont,
  /// ω0(T_A(Z, X)) against ω1(T_A(Y, X)) ω2(T_A(Z, Y)); all on R^{4d}.
  Product,
};

/// Sampled sup of the left/right ratio of the chosen weight condition over
/// integer tuples drawn uniformly from [-L/2, L/2)^{2d}.
double weight_triple_constant(const Weight& w, const Weight& w1, const Weight& w2, const Eigen::MatrixXd& A,
                              long L, WeightCondition condition, std::size_t samples = 10'000,
                              std::uint64_t seed = 1);

}  // namespace otfa
