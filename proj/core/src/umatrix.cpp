#include <cmath>

#include "otfa/errors.hpp"
#include "otfa/psido.hpp"

namespace otfa {

namespace {

std::vector<double> physical(const GridShape& shape, const std::vector<double>& steps, std::span<const long> idx) {
  std::vector<double> x(shape.rank());
  for (std::size_t a = 0; a < shape.rank(); ++a) {
    const double step = steps.empty() ? 1.0 : steps[a];
    x[a] = static_cast<double>(sym_rep(idx[a], static_cast<long>(shape.extent(a)))) * step;
  }
  return x;
}

double pair_weight(const GaborMatrix& M, const Weight* weight, std::span<const long> row, std::span<const long> col) {
  if (weight == nullptr) return 1.0;
  auto x = physical(M.index_shape, M.steps, row);
  const auto y = physical(M.index_shape, M.steps, col);
  x.insert(x.end(), y.begin(), y.end());
  return (*weight)(x);
}

void check_weight(const GaborMatrix& M, const Weight* weight) {
  if (weight != nullptr && weight->dim() != 2 * M.index_shape.rank()) {
    throw ShapeError("matrix weight must act on (row, column) coordinates");
  }
}

}  // namespace

GaborMatrix make_matrix(Eigen::MatrixXcd entries, GridShape index_shape, std::vector<double> steps) {
  if (entries.rows() != entries.cols()) throw ShapeError("lattice matrices must be square");
  if (static_cast<std::size_t>(entries.rows()) != index_shape.size()) {
    throw ShapeError("matrix size does not match the lattice index shape");
  }
  if (!steps.empty() && steps.size() != index_shape.rank()) throw ShapeError("one step per index axis expected");
  if (steps.empty()) steps.assign(index_shape.rank(), 1.0);
  return GaborMatrix{std::move(entries), std::move(index_shape), std::move(steps)};
}

std::vector<double> rearranged_magnitudes(const GaborMatrix& M, const Weight* weight) {
  check_weight(M, weight);
  const auto& shape = M.index_shape;
  const std::size_t N = shape.size();
  const std::size_t r = shape.rank();
  std::vector<std::vector<long>> idx(N, std::vector<long>(r));
  for (std::size_t f = 0; f < N; ++f) shape.unflatten(f, idx[f]);
  std::vector<double> out(N * N);
  std::vector<long> col(r);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t a = 0; a < r; ++a) col[a] = idx[j][a] - idx[k][a];
      const std::size_t c = shape.flat(col);
      out[j + N * k] = std::abs(M.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c))) *
                       pair_weight(M, weight, idx[j], col);
    }
  }
  return out;
}

double u_norm(const GaborMatrix& M, const YoungFunction& phi1, const YoungFunction& phi2, const Weight* weight) {
  const auto mags = rearranged_magnitudes(M, weight);
  std::vector<std::size_t> sizes = M.index_shape.sizes();
  sizes.insert(sizes.end(), M.index_shape.sizes().begin(), M.index_shape.sizes().end());
  const std::vector<YoungFunction> phis{phi1, phi2};
  const std::vector<std::size_t> split{M.index_shape.rank(), M.index_shape.rank()};
  return mixed_norm(mags, GridShape(sizes), phis, split);
}

double u_norm_inf(const GaborMatrix& M, double r0, const Weight* weight) {
  return u_norm(M, YoungFunction::indicator(1.0), YoungFunction::power(r0, r0), weight);
}

double row_mixed_norm(const GaborMatrix& M, const YoungFunction& phi1, const YoungFunction& phi2,
                      const Weight* weight) {
  check_weight(M, weight);
  const auto& shape = M.index_shape;
  const std::size_t N = shape.size();
  std::vector<std::vector<long>> idx(N, std::vector<long>(shape.rank()));
  for (std::size_t f = 0; f < N; ++f) shape.unflatten(f, idx[f]);
  std::vector<double> mags(N * N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) {
      mags[k + N * j] = std::abs(M.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) *
                        pair_weight(M, weight, idx[j], idx[k]);
    }
  }
  std::vector<std::size_t> sizes = shape.sizes();
  sizes.insert(sizes.end(), shape.sizes().begin(), shape.sizes().end());
  const std::vector<YoungFunction> phis{phi1, phi2};
  const std::vector<std::size_t> split{shape.rank(), shape.rank()};
  return mixed_norm(mags, GridShape(sizes), phis, split);
}

GridSequence matrix_apply(const GaborMatrix& M, const GridSequence& f) {
  if (!(f.shape() == M.index_shape)) throw ShapeError("matrix_apply: sequence does not match the matrix lattice");
  const Eigen::Map<const Eigen::VectorXcd> fv(f.data().data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXcd g = M.entries * fv;
  return GridSequence(M.index_shape, std::vector<cplx>(g.data(), g.data() + g.size()));
}

GaborMatrix compose(const GaborMatrix& M1, const GaborMatrix& M2) {
  if (!(M1.index_shape == M2.index_shape)) throw ShapeError("compose: lattice mismatch");
  return GaborMatrix{M1.entries * M2.entries, M1.index_shape, M1.steps};
}

}  // namespace otfa
