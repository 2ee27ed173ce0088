#include "otfa/psido.hpp"

#include <cmath>

#include "otfa/errors.hpp"

namespace otfa {

namespace {

struct SymbolLayout {
  std::size_t d;
  std::size_t L;
  GridShape signal;
};

SymbolLayout layout_of(const GridSequence& a) {
  const std::size_t r = a.rank();
  if (r == 0 || r % 2 != 0) throw ShapeError("symbols live on Z_L^{2d}; got rank " + std::to_string(r));
  const std::size_t L = a.shape().extent(0);
  for (auto n : a.shape().sizes()) {
    if (n != L) throw ShapeError("symbol grid must have the same extent on every axis");
  }
  return {r / 2, L, GridShape(std::vector<std::size_t>(r / 2, L))};
}

void require_integral(const Quantization& q) {
  if (!q.integral()) {
    throw NonIntegralQuantizationError("kernel evaluation needs an integer quantization matrix; "
                                       "use the transfer path");
  }
}

void check_dim(const Quantization& q, std::size_t d) {
  if (q.dim() != d || static_cast<std::size_t>(q.A.cols()) != d) {
    throw ShapeError("quantization matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  }
}

std::vector<long> integer_entries(const Eigen::MatrixXd& A) {
  std::vector<long> out(static_cast<std::size_t>(A.size()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out[static_cast<std::size_t>(i * A.cols() + j)] = std::lround(A(i, j));
    }
  }
  return out;
}

GridSequence frequency_to_lag(const GridSequence& a, std::size_t d) {
  GridSequence F = a;
  for (std::size_t ax = d; ax < 2 * d; ++ax) dft_axis(F, ax, +1);
  return F;
}

}  // namespace

Quantization Quantization::zero(std::size_t d) { return {Eigen::MatrixXd::Zero(d, d)}; }
Quantization Quantization::identity(std::size_t d) { return {Eigen::MatrixXd::Identity(d, d)}; }
Quantization Quantization::weyl(std::size_t d) { return {0.5 * Eigen::MatrixXd::Identity(d, d)}; }

Quantization Quantization::parse(const std::string& spec, std::size_t d) {
  if (spec == "0") return zero(d);
  if (spec == "I") return identity(d);
  if (spec == "half") return weyl(d);
  throw ParseError("unknown quantization '" + spec + "' (expected 0, I or half)");
}

bool Quantization::integral() const {
  for (Eigen::Index i = 0; i < A.size(); ++i) {
    const double v = A.data()[i];
    if (std::abs(v - std::round(v)) > 1e-12) return false;
  }
  return true;
}

GridShape symbol_shape(std::size_t L, std::size_t d) { return GridShape(std::vector<std::size_t>(2 * d, L)); }

Eigen::MatrixXcd kernel_from_symbol(const GridSequence& a, const Quantization& q) {
  const auto lay = layout_of(a);
  check_dim(q, lay.d);
  require_integral(q);
  const auto Ai = integer_entries(q.A);
  const std::size_t d = lay.d;
  const std::size_t N = lay.signal.size();
  const GridSequence F = frequency_to_lag(a, d);
  const double scale = 1.0 / static_cast<double>(N);
  Eigen::MatrixXcd K(N, N);
  std::vector<long> x(d), y(d), z(d), u(d);
  for (std::size_t xf = 0; xf < N; ++xf) {
    lay.signal.unflatten(xf, x);
    for (std::size_t yf = 0; yf < N; ++yf) {
      lay.signal.unflatten(yf, y);
      for (std::size_t i = 0; i < d; ++i) z[i] = x[i] - y[i];
      for (std::size_t i = 0; i < d; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < d; ++j) s += Ai[i * d + j] * z[j];
        u[i] = x[i] - s;
      }
      K(static_cast<Eigen::Index>(xf), static_cast<Eigen::Index>(yf)) =
          scale * F[lay.signal.flat(u) + N * lay.signal.flat(z)];
    }
  }
  return K;
}

GridSequence symbol_from_kernel(const Eigen::MatrixXcd& K, std::size_t L, const Quantization& q) {
  const std::size_t d = q.dim();
  const GridShape signal(std::vector<std::size_t>(d, L));
  const std::size_t N = signal.size();
  if (static_cast<std::size_t>(K.rows()) != N || static_cast<std::size_t>(K.cols()) != N) {
    throw ShapeError("kernel must be L^d x L^d");
  }
  require_integral(q);
  const auto Ai = integer_entries(q.A);
  GridSequence G(symbol_shape(L, d));
  std::vector<long> u(d), z(d), x(d), y(d);
  for (std::size_t uf = 0; uf < N; ++uf) {
    signal.unflatten(uf, u);
    for (std::size_t zf = 0; zf < N; ++zf) {
      signal.unflatten(zf, z);
      for (std::size_t i = 0; i < d; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < d; ++j) s += Ai[i * d + j] * z[j];
        x[i] = u[i] + s;
        y[i] = x[i] - z[i];
      }
      G[uf + N * zf] = K(static_cast<Eigen::Index>(signal.flat(x)), static_cast<Eigen::Index>(signal.flat(y)));
    }
  }
  for (std::size_t ax = d; ax < 2 * d; ++ax) dft_axis(G, ax, -1);
  return G;
}

GridSequence calculus_transfer(const GridSequence& a1, const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2) {
  const auto lay = layout_of(a1);
  const std::size_t d = lay.d;
  if (static_cast<std::size_t>(A1.rows()) != d || static_cast<std::size_t>(A2.rows()) != d ||
      static_cast<std::size_t>(A1.cols()) != d || static_cast<std::size_t>(A2.cols()) != d) {
    throw ShapeError("quantization matrices must be d x d");
  }
  const Eigen::MatrixXd B = A2 - A1;
  if (B.isZero(0.0)) return a1;
  const long L = static_cast<long>(lay.L);
  const std::size_t N = lay.signal.size();
  GridSequence F = frequency_to_lag(a1, d);
  for (std::size_t ax = 0; ax < d; ++ax) dft_axis(F, ax, -1);
  std::vector<long> eta(d), z(d);
  Eigen::VectorXd zs(d), es(d);
  for (std::size_t zf = 0; zf < N; ++zf) {
    lay.signal.unflatten(zf, z);
    for (std::size_t i = 0; i < d; ++i) zs[i] = static_cast<double>(sym_rep(z[i], L));
    const Eigen::VectorXd shift = B * zs;
    for (std::size_t ef = 0; ef < N; ++ef) {
      lay.signal.unflatten(ef, eta);
      for (std::size_t i = 0; i < d; ++i) es[i] = static_cast<double>(sym_rep(eta[i], L));
      const double angle = kTwoPi * shift.dot(es) / static_cast<double>(L);
      F[ef + N * zf] *= cplx(std::cos(angle), std::sin(angle));
    }
  }
  const double inv = 1.0 / static_cast<double>(L);
  for (std::size_t ax = 0; ax < d; ++ax) dft_axis(F, ax, +1, inv);
  for (std::size_t ax = d; ax < 2 * d; ++ax) dft_axis(F, ax, -1, inv);
  return F;
}

Eigen::MatrixXcd operator_matrix(const GridSequence& a, const Quantization& q) {
  if (q.integral()) return kernel_from_symbol(a, q);
  const auto d = q.dim();
  return kernel_from_symbol(calculus_transfer(a, q.A, Eigen::MatrixXd::Zero(d, d)), Quantization::zero(d));
}

GridSequence apply_op(const GridSequence& a, const Quantization& q, const GridSequence& f) {
  const auto lay = layout_of(a);
  if (!(f.shape() == lay.signal)) throw ShapeError("apply_op: signal does not match the symbol grid");
  const Eigen::MatrixXcd K = operator_matrix(a, q);
  const Eigen::Map<const Eigen::VectorXcd> fv(f.data().data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXcd g = K * fv;
  return GridSequence(lay.signal, std::vector<cplx>(g.data(), g.data() + g.size()));
}

GridSequence wigner(const GridSequence& f1, const GridSequence& f2, const Quantization& q) {
  if (!(f1.shape() == f2.shape())) throw ShapeError("wigner: signal shapes differ");
  const std::size_t d = f1.rank();
  check_dim(q, d);
  require_integral(q);
  const std::size_t L = f1.shape().extent(0);
  const GridShape& signal = f1.shape();
  const std::size_t N = signal.size();
  const auto Ai = integer_entries(q.A);
  GridSequence W(symbol_shape(L, d));
  std::vector<long> x(d), y(d), p(d), r(d);
  GridSequence line(signal);
  for (std::size_t xf = 0; xf < N; ++xf) {
    signal.unflatten(xf, x);
    for (std::size_t yf = 0; yf < N; ++yf) {
      signal.unflatten(yf, y);
      for (std::size_t i = 0; i < d; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < d; ++j) s += Ai[i * d + j] * y[j];
        p[i] = x[i] + s;
        r[i] = x[i] + s - y[i];
      }
      line[yf] = f1.cyclic(p) * std::conj(f2.cyclic(r));
    }
    for (std::size_t ax = 0; ax < d; ++ax) {
      dft_axis(line, ax, -1, 1.0 / std::sqrt(static_cast<double>(L)));
    }
    for (std::size_t kf = 0; kf < N; ++kf) W[xf + N * kf] = line[kf];
  }
  return W;
}

double rank_one_constant(std::size_t L, std::size_t d) {
  const GridShape signal(std::vector<std::size_t>(d, L));
  GridSequence delta(signal);
  delta[0] = 1.0;
  const auto W = wigner(delta, delta, Quantization::zero(d));
  const auto K = kernel_from_symbol(W, Quantization::zero(d));
  return 1.0 / K(0, 0).real();
}

double duality_constant(std::size_t L, std::size_t d) {
  const GridShape signal(std::vector<std::size_t>(d, L));
  GridSequence delta(signal);
  delta[0] = 1.0;
  GridSequence one(symbol_shape(L, d));
  for (auto& v : one.values()) v = 1.0;
  const auto q = Quantization::zero(d);
  const cplx lhs = pairing(apply_op(one, q, delta), delta);
  const cplx rhs = pairing(one, wigner(delta, delta, q));
  return (lhs / rhs).real();
}

double duality_link_residual(const GridSequence& a, const Quantization& q, const GridSequence& f,
                             const GridSequence& g) {
  const auto lay = layout_of(a);
  const double c = duality_constant(lay.L, lay.d);
  const cplx lhs = pairing(apply_op(a, q, f), g);
  const cplx rhs = c * pairing(a, wigner(g, f, q));
  return std::abs(lhs - rhs);
}

GridSequence sharp_product(const GridSequence& a1, const GridSequence& a2, const Quantization& q) {
  const auto lay = layout_of(a1);
  if (!(a1.shape() == a2.shape())) throw ShapeError("sharp_product: symbol shapes differ");
  if (q.integral()) {
    return symbol_from_kernel(kernel_from_symbol(a1, q) * kernel_from_symbol(a2, q), lay.L, q);
  }
  const auto zero = Quantization::zero(lay.d);
  const auto b1 = calculus_transfer(a1, q.A, zero.A);
  const auto b2 = calculus_transfer(a2, q.A, zero.A);
  const auto b = symbol_from_kernel(kernel_from_symbol(b1, zero) * kernel_from_symbol(b2, zero), lay.L, zero);
  return calculus_transfer(b, zero.A, q.A);
}

GridSequence composite_window(const GridSequence& window1, const GridSequence& window2) {
  if (!(window1.shape() == window2.shape())) throw ShapeError("composite_window: window shapes differ");
  const std::size_t d = window1.rank();
  const std::size_t L = window1.shape().extent(0);
  const std::size_t N = window1.size();
  const GridSequence hat2 = unitary_dft(window2);
  GridSequence w(symbol_shape(L, d));
  std::vector<long> x(d), xi(d);
  for (std::size_t xf = 0; xf < N; ++xf) {
    window1.shape().unflatten(xf, x);
    for (std::size_t kf = 0; kf < N; ++kf) {
      window1.shape().unflatten(kf, xi);
      long dot = 0;
      for (std::size_t i = 0; i < d; ++i) dot += x[i] * xi[i];
      const double angle = -kTwoPi * static_cast<double>(mod_rep(dot, static_cast<long>(L))) / static_cast<double>(L);
      w[xf + N * kf] = window1[xf] * std::conj(hat2[kf]) * cplx(std::cos(angle), std::sin(angle));
    }
  }
  return w;
}

OperatorFrame::OperatorFrame(std::size_t L, std::size_t alpha, std::size_t beta, GridSequence window1,
                             GridSequence window2)
    : L_(L) {
  const std::size_t d = window1.rank();
  auto composite = composite_window(window1, window2);
  sys1_ = std::make_shared<const GaborSystem>(GaborSystem::signal(L, alpha, beta, std::move(window1)));
  sys2_ = std::make_shared<const GaborSystem>(GaborSystem::signal(L, alpha, beta, std::move(window2)));
  Lattice lat;
  lat.translation_steps.assign(d, alpha);
  lat.translation_steps.insert(lat.translation_steps.end(), d, beta);
  lat.modulation_steps.assign(d, beta);
  lat.modulation_steps.insert(lat.modulation_steps.end(), d, alpha);
  symbol_ = std::make_shared<const GaborSystem>(L, std::move(lat), std::move(composite));
  if (!sys1_->is_frame() || !sys2_->is_frame() || !symbol_->is_frame()) {
    throw NotAFrameError("operator frame: windows do not generate frames at these lattice steps");
  }
}

OperatorFrame::OperatorFrame(std::size_t L, std::size_t alpha, std::size_t beta, std::size_t d)
    : OperatorFrame(L, alpha, beta, gaussian_window(L, d), gaussian_window(L, d)) {}

GaborMatrix OperatorFrame::lattice_matrix(Eigen::MatrixXcd entries) const {
  return make_matrix(std::move(entries), sys1_->coefficient_shape(), sys1_->coefficient_steps());
}

GaborMatrix OperatorFrame::gabor_matrix(const GridSequence& a) const {
  if (!(a.shape() == symbol_->signal_shape())) throw ShapeError("gabor_matrix: symbol grid mismatch");
  const GridSequence V = symbol_->analysis(a, WindowRole::Dual);
  const std::size_t d = dim();
  const GridShape& idx = sys1_->coefficient_shape();
  const GridShape& vshape = symbol_->coefficient_shape();
  const std::size_t K = idx.size();
  const long L = static_cast<long>(L_);
  const auto& tsteps = sys1_->lattice().translation_steps;
  const auto& msteps = sys1_->lattice().modulation_steps;
  std::vector<std::vector<long>> pos(K, std::vector<long>(2 * d));
  for (std::size_t f = 0; f < K; ++f) idx.unflatten(f, pos[f]);
  Eigen::MatrixXcd M(K, K);
  std::vector<long> v(4 * d);
  for (std::size_t J = 0; J < K; ++J) {
    const auto& jj = pos[J];  // (m_j, n_ι)
    for (std::size_t C = 0; C < K; ++C) {
      const auto& kk = pos[C];  // (m_k, n_κ)
      long phase = 0;
      for (std::size_t i = 0; i < d; ++i) {
        v[i] = jj[i];
        v[d + i] = kk[d + i];
        v[2 * d + i] = jj[d + i] - kk[d + i];
        v[3 * d + i] = kk[i] - jj[i];
        phase += (kk[i] - jj[i]) * static_cast<long>(tsteps[i]) * kk[d + i] * static_cast<long>(msteps[i]);
      }
      const double angle = kTwoPi * static_cast<double>(mod_rep(phase, L)) / static_cast<double>(L);
      M(static_cast<Eigen::Index>(J), static_cast<Eigen::Index>(C)) =
          V[vshape.flat(v)] * cplx(std::cos(angle), std::sin(angle));
    }
  }
  return lattice_matrix(std::move(M));
}

GaborMatrix OperatorFrame::transition() const {
  return lattice_matrix(sys2_->analysis_matrix() * sys1_->synthesis_matrix());
}

}  // namespace otfa
