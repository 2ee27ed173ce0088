#include "otfa/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "otfa/errors.hpp"

namespace otfa {

namespace {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(text) + "' in weight '" + std::string(context) + "'");
  }
  return value;
}

double euclidean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void check_dim(const Weight& w, std::size_t dim, const char* what) {
  if (w.dim() != dim) {
    throw ShapeError(std::string(what) + ": weight of dimension " + std::to_string(w.dim()) +
                     " used on R^" + std::to_string(dim));
  }
}

}  // namespace

Weight Weight::one(std::size_t dim) { return Weight(Kind::One, dim, 0.0); }
Weight Weight::polynomial(double s, std::size_t dim) {
  if (!std::isfinite(s)) throw DomainError("polynomial weight exponent must be finite");
  return Weight(Kind::Polynomial, dim, s);
}
Weight Weight::exponential(double r, std::size_t dim) {
  if (!std::isfinite(r)) throw DomainError("exponential weight rate must be finite");
  return Weight(Kind::Exponential, dim, r);
}

Weight Weight::product(std::vector<Weight> factors) {
  if (factors.empty()) throw ShapeError("product weight needs at least one factor");
  std::size_t dim = 0;
  for (const auto& f : factors) dim += f.dim();
  Weight w(Kind::Product, dim, 0.0);
  w.factors_ = std::move(factors);
  return w;
}

Weight Weight::custom(Evaluator fn, std::size_t dim, std::string label) {
  if (!fn) throw ContractError("custom weight needs an evaluator");
  Weight w(Kind::Custom, dim, 0.0);
  w.fn_ = std::make_shared<const Evaluator>(std::move(fn));
  w.label_ = std::move(label);
  return w;
}

double Weight::operator()(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw ShapeError("weight on R^" + std::to_string(dim_) + " evaluated at a point of R^" +
                     std::to_string(x.size()));
  }
  switch (kind_) {
    case Kind::One:
      return 1.0;
    case Kind::Polynomial:
      return std::pow(1.0 + euclidean(x), param_);
    case Kind::Exponential:
      return std::exp(param_ * euclidean(x));
    case Kind::Product: {
      double v = 1.0;
      std::size_t off = 0;
      for (const auto& f : factors_) {
        v *= f(x.subspan(off, f.dim()));
        off += f.dim();
      }
      return v;
    }
    case Kind::Custom: {
      const double v = (*fn_)(x);
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("custom weight '" + label_ + "' must be positive and finite");
      return v;
    }
  }
  return 1.0;
}

bool Weight::is_one() const {
  if (kind_ == Kind::One) return true;
  if ((kind_ == Kind::Polynomial || kind_ == Kind::Exponential) && param_ == 0.0) return true;
  if (kind_ == Kind::Product) {
    return std::all_of(factors_.begin(), factors_.end(), [](const Weight& f) { return f.is_one(); });
  }
  return false;
}

std::string Weight::to_string() const {
  switch (kind_) {
    case Kind::One:
      return "one";
    case Kind::Polynomial:
      return "poly:" + format_number(param_);
    case Kind::Exponential:
      return "exp:" + format_number(param_);
    case Kind::Product: {
      std::string s = "prod:[";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ";";
        s += factors_[i].to_string();
      }
      return s + "]";
    }
    case Kind::Custom:
      return label_;
  }
  return "one";
}

Weight parse_weight(std::string_view spec, std::size_t dim) {
  const std::string full(spec);
  if (spec == "one") return Weight::one(dim);
  if (spec.starts_with("poly:")) return Weight::polynomial(parse_number(spec.substr(5), full), dim);
  if (spec.starts_with("exp:")) return Weight::exponential(parse_number(spec.substr(4), full), dim);
  if (spec.starts_with("prod:[") && spec.ends_with("]")) {
    std::string_view inner = spec.substr(6, spec.size() - 7);
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '[') ++depth;
      if (inner[i] == ']') --depth;
      if (inner[i] == ';' && depth == 0) {
        parts.push_back(inner.substr(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(inner.substr(start));
    if (parts.size() < 2 || dim % parts.size() != 0) {
      throw ParseError("product weight '" + full + "' cannot split dimension " + std::to_string(dim) + " evenly");
    }
    std::vector<Weight> factors;
    for (auto p : parts) factors.push_back(parse_weight(p, dim / parts.size()));
    return Weight::product(std::move(factors));
  }
  throw ParseError("unknown weight spec '" + full + "' (expected one, poly:s, exp:r, prod:[w1;w2])");
}

std::vector<double> weight_on_grid(const Weight& w, const GridShape& shape, std::span<const double> steps) {
  check_dim(w, shape.rank(), "weight_on_grid");
  if (!steps.empty() && steps.size() != shape.rank()) throw ShapeError("one lattice step per axis expected");
  std::vector<double> out(shape.size(), 1.0);
  if (w.is_one()) return out;
  std::vector<long> idx(shape.rank());
  std::vector<double> x(shape.rank());
  for (std::size_t f = 0; f < shape.size(); ++f) {
    shape.unflatten(f, idx);
    for (std::size_t a = 0; a < shape.rank(); ++a) {
      const double step = steps.empty() ? 1.0 : steps[a];
      x[a] = static_cast<double>(sym_rep(idx[a], static_cast<long>(shape.extent(a)))) * step;
    }
    out[f] = w(x);
  }
  return out;
}

double moderateness_constant(const Weight& w, const Weight& v, const FiniteGrid& grid, std::size_t max_pairs,
                             std::uint64_t seed) {
  if (w.dim() != v.dim() || w.dim() != grid.dim) throw ShapeError("moderateness_constant: dimension mismatch");
  const long L = grid.L;
  const long lo = -L / 2;
  const long hi = lo + L;  // exclusive
  const std::size_t dim = grid.dim;
  double points = 1.0;
  for (std::size_t a = 0; a < dim; ++a) points *= static_cast<double>(L);
  std::vector<double> x(dim), y(dim), s(dim);
  double best = 0.0;
  auto consider = [&]() {
    for (std::size_t a = 0; a < dim; ++a) {
      s[a] = x[a] + y[a];
      if (s[a] < lo || s[a] >= hi) return;
    }
    best = std::max(best, w(s) / (w(x) * v(y)));
  };
  if (points * points <= static_cast<double>(max_pairs)) {
    const auto n = static_cast<std::size_t>(points);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = i;
      for (std::size_t a = 0; a < dim; ++a, r /= L) x[a] = static_cast<double>(lo + static_cast<long>(r % L));
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t q = j;
        for (std::size_t a = 0; a < dim; ++a, q /= L) y[a] = static_cast<double>(lo + static_cast<long>(q % L));
        consider();
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(lo, hi - 1);
    for (std::size_t k = 0; k < max_pairs; ++k) {
      for (std::size_t a = 0; a < dim; ++a) {
        x[a] = static_cast<double>(pick(rng));
        y[a] = static_cast<double>(pick(rng));
      }
      consider();
    }
  }
  return best;
}

Eigen::VectorXd t_a_transform(const Eigen::MatrixXd& A, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const Eigen::Index d = A.rows();
  if (A.cols() != d || X.size() != 2 * d || Y.size() != 2 * d) throw ShapeError("t_a_transform: dimension mismatch");
  const Eigen::VectorXd x = X.head(d), xi = X.tail(d), y = Y.head(d), eta = Y.tail(d);
  Eigen::VectorXd out(4 * d);
  out << y + A * (x - y), xi + A.transpose() * (eta - xi), eta - xi, x - y;
  return out;
}

double weight_triple_constant(const Weight& w, const Weight& w1, const Weight& w2, const Eigen::MatrixXd& A,
                              long L, WeightCondition condition, std::size_t samples, std::uint64_t seed) {
  const auto d = static_cast<std::size_t>(A.rows());
  if (static_cast<std::size_t>(A.cols()) != d) throw ShapeError("quantization matrix must be square");
  if (condition == WeightCondition::PseudoCont) {
    check_dim(w, 4 * d, "weight_triple_constant");
    check_dim(w1, 2 * d, "weight_triple_constant");
    check_dim(w2, 2 * d, "weight_triple_constant");
  } else {
    check_dim(w, 4 * d, "weight_triple_constant");
    check_dim(w1, 4 * d, "weight_triple_constant");
    check_dim(w2, 4 * d, "weight_triple_constant");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-L / 2, L / 2 - 1);
  auto draw = [&]() {
    Eigen::VectorXd v(2 * d);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(pick(rng));
    return v;
  };
  auto at = [](const Weight& wt, const Eigen::VectorXd& p) {
    return wt(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
  };
  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Eigen::VectorXd X = draw(), Y = draw();
    double ratio = 0.0;
    if (condition == WeightCondition::PseudoCont) {
      ratio = at(w2, X) / at(w1, Y) / at(w, t_a_transform(A, Y, X));
    } else {
      const Eigen::VectorXd Z = draw();
      ratio = at(w, t_a_transform(A, Z, X)) / (at(w1, t_a_transform(A, Y, X)) * at(w2, t_a_transform(A, Z, Y)));
    }
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace otfa
