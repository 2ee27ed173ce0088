#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "otfa/errors.hpp"
#include "otfa/psido.hpp"

using namespace otfa;

namespace {

Eigen::VectorXcd vec(const GridSequence& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = f[i];
  return v;
}

double rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_SUITE("psido") {
  TEST_CASE("quantization parsing") {
    CHECK(Quantization::parse("0").A.isZero());
    CHECK(Quantization::parse("I").A.isIdentity());
    CHECK(Quantization::parse("half").A(0, 0) == 0.5);
    CHECK(Quantization::identity().integral());
    CHECK_FALSE(Quantization::weyl().integral());
    CHECK_THROWS_AS(Quantization::parse("2"), ParseError);
  }

  TEST_CASE("kernel against the defining sum") {
    std::mt19937_64 rng(51);
    const auto a = oracle::random_complex(symbol_shape(8), rng);
    CHECK(rel(kernel_from_symbol(a, Quantization::zero()), oracle::kernel_1d(a, 0)) < 1e-13);
    CHECK(rel(kernel_from_symbol(a, Quantization::identity()), oracle::kernel_1d(a, 1)) < 1e-13);
    CHECK_THROWS_AS(kernel_from_symbol(a, Quantization::weyl()), NonIntegralQuantizationError);
    CHECK_THROWS_AS(kernel_from_symbol(oracle::random_complex(GridShape{8, 8, 8}, rng), Quantization::zero()),
                    ShapeError);
  }

  TEST_CASE("constant symbol quantizes to the identity") {
    GridSequence one(symbol_shape(8));
    for (auto& v : one.values()) v = 1.0;
    for (const auto& q : {Quantization::zero(), Quantization::identity(), Quantization::weyl()}) {
      CHECK((operator_matrix(one, q) - Eigen::MatrixXcd::Identity(8, 8)).norm() < 1e-13);
    }
  }

  TEST_CASE("symbols of x alone are multiplications, symbols of xi alone are multipliers") {
    std::mt19937_64 rng(52);
    const auto h = oracle::random_complex(GridShape{8}, rng);
    const auto m = oracle::random_complex(GridShape{8}, rng);
    GridSequence ax(symbol_shape(8)), am(symbol_shape(8));
    for (std::size_t x = 0; x < 8; ++x) {
      for (std::size_t xi = 0; xi < 8; ++xi) {
        ax[x + 8 * xi] = h[x];
        am[x + 8 * xi] = m[xi];
      }
    }
    const auto f = oracle::random_complex(GridShape{8}, rng);
    for (const auto& q : {Quantization::zero(), Quantization::identity(), Quantization::weyl()}) {
      const auto g = apply_op(ax, q, f);
      for (std::size_t x = 0; x < 8; ++x) CHECK(std::abs(g[x] - h[x] * f[x]) < 1e-12);
      auto fh = oracle::naive_dft(f.data(), -1);
      for (std::size_t k = 0; k < 8; ++k) fh[k] *= m[k];
      const auto want = oracle::naive_dft(fh, +1);
      const auto gm = apply_op(am, q, f);
      for (std::size_t x = 0; x < 8; ++x) CHECK(std::abs(gm[x] - want[x] / 8.0) < 1e-12);
    }
  }

  TEST_CASE("symbol round trip") {
    std::mt19937_64 rng(53);
    const auto a = oracle::random_complex(symbol_shape(8), rng);
    for (const auto& q : {Quantization::zero(), Quantization::identity()}) {
      CHECK((symbol_from_kernel(kernel_from_symbol(a, q), 8, q) - a).max_abs() < 1e-12);
    }
    const auto a2 = oracle::random_complex(symbol_shape(4, 2), rng);
    CHECK((symbol_from_kernel(kernel_from_symbol(a2, Quantization::zero(2)), 4, Quantization::zero(2)) - a2).max_abs() <
          1e-12);
    CHECK_THROWS_AS(symbol_from_kernel(Eigen::MatrixXcd::Zero(5, 5), 8, Quantization::zero()), ShapeError);
  }

  TEST_CASE("calculus transfer") {
    std::mt19937_64 rng(54);
    const auto a = oracle::random_complex(symbol_shape(8), rng);
    const auto zero = Quantization::zero();
    const auto ident = Quantization::identity();
    const auto b = calculus_transfer(a, zero.A, ident.A);
    CHECK(rel(oracle::kernel_1d(b, 1), oracle::kernel_1d(a, 0)) < 1e-12);
    CHECK((calculus_transfer(b, ident.A, zero.A) - a).max_abs() < 1e-12);
    const auto w = calculus_transfer(a, zero.A, Quantization::weyl().A);
    CHECK((calculus_transfer(w, Quantization::weyl().A, zero.A) - a).max_abs() < 1e-12);
    CHECK(rel(operator_matrix(w, Quantization::weyl()), oracle::kernel_1d(a, 0)) < 1e-12);
    CHECK(w.l2_norm() == doctest::Approx(a.l2_norm()).epsilon(1e-12));
    CHECK_THROWS_AS(calculus_transfer(a, Eigen::MatrixXd::Zero(2, 2), ident.A), ShapeError);
  }

  TEST_CASE("wigner distribution") {
    std::mt19937_64 rng(55);
    const auto f1 = oracle::random_complex(GridShape{8}, rng);
    const auto f2 = oracle::random_complex(GridShape{8}, rng);
    for (long A : {0L, 1L}) {
      const auto q = A == 0 ? Quantization::zero() : Quantization::identity();
      CHECK((wigner(f1, f2, q) - oracle::wigner_1d(f1, f2, A)).max_abs() < 1e-12);
    }
    CHECK_THROWS_AS(wigner(f1, f2, Quantization::weyl()), NonIntegralQuantizationError);
    CHECK_THROWS_AS(wigner(f1, GridSequence(GridShape{4}), Quantization::zero()), ShapeError);
  }

  TEST_CASE("rank-one operators and the duality link") {
    std::mt19937_64 rng(56);
    const double c1 = rank_one_constant(16);
    const double c2 = duality_constant(16);
    CHECK(c1 == doctest::Approx(4.0));
    CHECK(c2 == doctest::Approx(0.25));
    for (const auto& q : {Quantization::zero(), Quantization::identity()}) {
      const auto f1 = oracle::random_complex(GridShape{16}, rng);
      const auto f2 = oracle::random_complex(GridShape{16}, rng);
      const auto g = oracle::random_complex(GridShape{16}, rng);
      auto W = wigner(f1, f2, q);
      W *= c1;
      const auto got = apply_op(W, q, g);
      const cplx s = pairing(g, f2);
      for (std::size_t x = 0; x < 16; ++x) CHECK(std::abs(got[x] - s * f1[x]) < 1e-10 * std::abs(s));
      const auto a = oracle::random_complex(symbol_shape(16), rng);
      CHECK(duality_link_residual(a, q, f1, g) < 1e-10 * a.l2_norm() * f1.l2_norm() * g.l2_norm());
    }
  }

  TEST_CASE("sharp product composes operators") {
    std::mt19937_64 rng(57);
    const auto a1 = oracle::random_complex(symbol_shape(8), rng);
    const auto a2 = oracle::random_complex(symbol_shape(8), rng);
    const Eigen::MatrixXcd K = oracle::kernel_1d(a1, 0) * oracle::kernel_1d(a2, 0);
    CHECK(rel(oracle::kernel_1d(sharp_product(a1, a2, Quantization::zero()), 0), K) < 1e-12);
    const auto w1 = calculus_transfer(a1, Quantization::zero().A, Quantization::weyl().A);
    const auto w2 = calculus_transfer(a2, Quantization::zero().A, Quantization::weyl().A);
    CHECK(rel(operator_matrix(sharp_product(w1, w2, Quantization::weyl()), Quantization::weyl()), K) < 1e-12);
  }

  TEST_CASE("gabor matrix factorization") {
    std::mt19937_64 rng(58);
    const OperatorFrame frame(16, 2, 2);
    CHECK(frame.dim() == 1);
    CHECK(frame.symbol_system().signal_shape() == symbol_shape(16));
    const Eigen::MatrixXcd D1 = frame.system1().synthesis_matrix(WindowRole::Dual);
    const Eigen::MatrixXcd C2 = frame.system2().analysis_matrix();
    const Eigen::MatrixXcd Dp = frame.system1().synthesis_matrix();
    const auto a = oracle::random_complex(symbol_shape(16), rng);
    const auto b = oracle::random_complex(symbol_shape(16), rng);
    const auto M = frame.gabor_matrix(a);
    CHECK(M.index_shape == frame.system1().coefficient_shape());
    CHECK(rel(Dp * M.entries * C2, oracle::kernel_1d(a, 0)) < 1e-8);
    const auto ab = frame.gabor_matrix(a + cplx(0.0, 2.0) * b);
    CHECK(rel(ab.entries, M.entries + cplx(0.0, 2.0) * frame.gabor_matrix(b).entries) < 1e-12);
    CHECK(frame.transition().entries.rows() == M.entries.rows());
    CHECK(D1.rows() == 16);
    CHECK_THROWS_AS(frame.gabor_matrix(GridSequence(symbol_shape(8))), ShapeError);
    CHECK_THROWS_AS(OperatorFrame(16, 8, 4), NotAFrameError);
  }

  TEST_CASE("matrix classes") {
    const GridShape shape{8};
    const auto I = make_matrix(Eigen::MatrixXcd::Identity(8, 8), shape);
    CHECK(u_norm(I, YoungFunction::power(1.0), YoungFunction::power(1.0)) == doctest::Approx(8.0));
    CHECK(u_norm_inf(I, 1.0) == doctest::Approx(1.0));
    CHECK(u_norm_inf(I, 0.5) == doctest::Approx(1.0));
    CHECK(row_mixed_norm(I, YoungFunction::power(1.0), YoungFunction::power(1.0)) == doctest::Approx(8.0));
    CHECK(row_mixed_norm(I, YoungFunction::indicator(1.0), YoungFunction::power(2.0)) ==
          doctest::Approx(std::sqrt(8.0)));

    // cyclic convolution matrix M(j, c) = h(j - c): its rearrangement is h(k) for every j
    const std::vector<double> h{1.0, -2.0, 0.5, 0.0, 0.0, 0.0, 0.0, 3.0};
    Eigen::MatrixXcd T(8, 8);
    for (long j = 0; j < 8; ++j) {
      for (long c = 0; c < 8; ++c) T(j, c) = h[oracle::wrap(j - c, 8)];
    }
    const auto C = make_matrix(T, shape);
    CHECK(u_norm_inf(C, 1.0) == doctest::Approx(6.5));
    CHECK(u_norm_inf(C, 0.5) == doctest::Approx(std::pow(1.0 + std::sqrt(2.0) + std::sqrt(0.5) + std::sqrt(3.0), 2)));
    CHECK(u_norm(C, YoungFunction::power(2.0), YoungFunction::indicator(1.0)) == doctest::Approx(3.0 * std::sqrt(8.0)));

    // weighted: ω(row, column) = 1 + |column| with column j - k; the sup over j reaches 1 + 4 for every k
    const auto w = Weight::custom([](std::span<const double> x) { return 1.0 + std::abs(x[1]); }, 2, "col");
    CHECK(u_norm_inf(C, 1.0, &w) == doctest::Approx(5.0 * 6.5));
    const auto w3 = Weight::one(3);
    CHECK_THROWS_AS(u_norm_inf(C, 1.0, &w3), ShapeError);

    GridSequence f(shape);
    f[0] = 1.0;
    const auto g = matrix_apply(C, f);
    for (long j = 0; j < 8; ++j) CHECK(g[j] == cplx(h[j]));
    CHECK(rel(compose(C, I).entries, T) < 1e-15);
    CHECK_THROWS_AS(compose(C, make_matrix(Eigen::MatrixXcd::Identity(4, 4), GridShape{4})), ShapeError);
    CHECK_THROWS_AS(make_matrix(Eigen::MatrixXcd::Identity(4, 4), shape), ShapeError);
    CHECK_THROWS_AS(matrix_apply(C, GridSequence(GridShape{4})), ShapeError);
  }
}
