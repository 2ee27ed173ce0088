#include "otfa/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "otfa/errors.hpp"

namespace otfa {

namespace {

constexpr std::size_t kMaxGroupOrder = 256;

std::vector<std::size_t> concat(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::size_t> quotients(std::size_t L, const std::vector<std::size_t>& steps) {
  std::vector<std::size_t> out;
  for (auto s : steps) out.push_back(L / s);
  return out;
}

// Multi-dimensional DFT over a contiguous buffer laid out on `shape`.
void dft_all(std::vector<cplx>& buf, const GridShape& shape, int sign, double scale) {
  GridSequence tmp(shape, std::move(buf));
  for (std::size_t a = 0; a < shape.rank(); ++a) dft_axis(tmp, a, sign, a == 0 ? scale : 1.0);
  buf.assign(tmp.values().begin(), tmp.values().end());
}

}  // namespace

GaborSystem::GaborSystem(std::size_t L, Lattice lattice, GridSequence window)
    : L_(L), lattice_(std::move(lattice)), window_(std::move(window)) {
  const std::size_t n = lattice_.translation_steps.size();
  if (n == 0 || lattice_.modulation_steps.size() != n) {
    throw ShapeError("lattice needs one translation and one modulation step per axis");
  }
  if (L % 2 != 0 || L < 8 || L > kMaxGroupOrder) {
    throw DomainError("group order L must be even with 8 <= L <= " + std::to_string(kMaxGroupOrder) +
                      ", got " + std::to_string(L));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (auto step : {lattice_.translation_steps[i], lattice_.modulation_steps[i]}) {
      if (step == 0 || L % step != 0) {
        throw DomainError("lattice step " + std::to_string(step) + " does not divide L = " + std::to_string(L));
      }
    }
  }
  signal_shape_ = GridShape(std::vector<std::size_t>(n, L));
  if (!(window_.shape() == signal_shape_)) throw ShapeError("window shape does not match Z_L^n");
  if (window_.is_zero()) throw DomainError("window must be nonzero");
  translation_shape_ = GridShape(quotients(L, lattice_.translation_steps));
  folded_shape_ = GridShape(quotients(L, lattice_.modulation_steps));
  coef_shape_ = GridShape(concat(translation_shape_.sizes(), folded_shape_.sizes()));
  walnut_scale_ = std::pow(static_cast<double>(L), -0.5 * static_cast<double>(n)) *
                  static_cast<double>(folded_shape_.size());
  solve_blocks();
}

GaborSystem GaborSystem::signal(std::size_t L, std::size_t alpha, std::size_t beta, GridSequence window) {
  const std::size_t d = window.rank();
  return GaborSystem(L, Lattice{std::vector<std::size_t>(d, alpha), std::vector<std::size_t>(d, beta)},
                     std::move(window));
}

std::vector<double> GaborSystem::coefficient_steps() const {
  std::vector<double> steps;
  for (auto a : lattice_.translation_steps) steps.push_back(static_cast<double>(a));
  for (auto b : lattice_.modulation_steps) steps.push_back(static_cast<double>(b));
  return steps;
}

const GridSequence& GaborSystem::dual() const {
  if (!is_frame_) {
    throw NotAFrameError("not a frame at these lattice steps (frame operator is singular)");
  }
  return dual_;
}

// The frame operator only couples points that agree modulo L/b on every axis;
// each residue class is a Hermitian block of size Π b_i.
void GaborSystem::solve_blocks() {
  const std::size_t n = rank();
  const std::size_t block = signal_shape_.size() / folded_shape_.size();
  GridShape sub_shape(lattice_.modulation_steps);
  std::vector<long> r(n), s(n), u(n), t(n);
  std::vector<std::size_t> members(block);
  dual_ = GridSequence(signal_shape_);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::vector<Eigen::MatrixXcd> blocks(folded_shape_.size());
  std::vector<std::vector<std::size_t>> block_members(folded_shape_.size());
  for (std::size_t rf = 0; rf < folded_shape_.size(); ++rf) {
    folded_shape_.unflatten(rf, r);
    for (std::size_t sf = 0; sf < block; ++sf) {
      sub_shape.unflatten(sf, s);
      for (std::size_t a = 0; a < n; ++a) u[a] = r[a] + static_cast<long>(folded_shape_.extent(a)) * s[a];
      members[sf] = signal_shape_.flat(u);
    }
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(block, block);
    std::vector<cplx> col(block);
    for (std::size_t mf = 0; mf < translation_shape_.size(); ++mf) {
      translation_shape_.unflatten(mf, t);
      for (std::size_t i = 0; i < block; ++i) {
        signal_shape_.unflatten(members[i], u);
        for (std::size_t a = 0; a < n; ++a) u[a] -= t[a] * static_cast<long>(lattice_.translation_steps[a]);
        col[i] = window_.cyclic(u);
      }
      for (std::size_t i = 0; i < block; ++i) {
        if (col[i] == cplx{}) continue;
        for (std::size_t j = 0; j < block; ++j) B(i, j) += col[i] * std::conj(col[j]);
      }
    }
    B *= walnut_scale_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(B);
    lo = std::min(lo, eig.eigenvalues().minCoeff());
    hi = std::max(hi, eig.eigenvalues().maxCoeff());
    blocks[rf] = std::move(B);
    block_members[rf] = members;
  }
  const double norm = std::pow(static_cast<double>(L_), -0.5 * static_cast<double>(n));
  bounds_ = FrameBounds{std::max(lo, 0.0) * norm, hi * norm};
  is_frame_ = hi > 0.0 && lo > 1e-10 * hi;
  if (!is_frame_) return;
  for (std::size_t rf = 0; rf < blocks.size(); ++rf) {
    const auto& mem = block_members[rf];
    Eigen::VectorXcd rhs(mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i) rhs[i] = window_[mem[i]];
    const Eigen::VectorXcd x = blocks[rf].ldlt().solve(rhs);
    for (std::size_t i = 0; i < mem.size(); ++i) dual_[mem[i]] = x[i];
  }
}

GridSequence GaborSystem::analysis(const GridSequence& f, WindowRole role) const {
  return analysis_with(f, window_for(role));
}

GridSequence GaborSystem::synthesis(const GridSequence& c, WindowRole role) const {
  return synthesis_with(c, window_for(role));
}

GridSequence GaborSystem::analysis_with(const GridSequence& f, const GridSequence& w) const {
  if (!(f.shape() == signal_shape_)) throw ShapeError("analysis: signal shape does not match the system");
  const std::size_t n = rank();
  const std::size_t N = signal_shape_.size();
  const std::size_t F = folded_shape_.size();
  const double scale = std::pow(static_cast<double>(L_), -0.5 * static_cast<double>(n));
  std::vector<std::size_t> fold(N);
  std::vector<long> y(n), t(n), z(n);
  for (std::size_t yf = 0; yf < N; ++yf) {
    signal_shape_.unflatten(yf, y);
    fold[yf] = folded_shape_.flat(y);
  }
  GridSequence out(coef_shape_);
  std::vector<cplx> buf(F);
  for (std::size_t mf = 0; mf < translation_shape_.size(); ++mf) {
    translation_shape_.unflatten(mf, t);
    std::fill(buf.begin(), buf.end(), cplx{});
    for (std::size_t yf = 0; yf < N; ++yf) {
      if (f[yf] == cplx{}) continue;
      signal_shape_.unflatten(yf, y);
      for (std::size_t a = 0; a < n; ++a) z[a] = y[a] - t[a] * static_cast<long>(lattice_.translation_steps[a]);
      buf[fold[yf]] += f[yf] * std::conj(w.cyclic(z));
    }
    dft_all(buf, folded_shape_, -1, scale);
    for (std::size_t kf = 0; kf < F; ++kf) out[mf + translation_shape_.size() * kf] = buf[kf];
  }
  return out;
}

GridSequence GaborSystem::synthesis_with(const GridSequence& c, const GridSequence& w) const {
  if (!(c.shape() == coef_shape_)) throw ShapeError("synthesis: coefficient shape does not match the lattice");
  const std::size_t n = rank();
  const std::size_t N = signal_shape_.size();
  const std::size_t F = folded_shape_.size();
  const std::size_t M = translation_shape_.size();
  std::vector<std::size_t> fold(N);
  std::vector<long> y(n), t(n), z(n);
  for (std::size_t yf = 0; yf < N; ++yf) {
    signal_shape_.unflatten(yf, y);
    fold[yf] = folded_shape_.flat(y);
  }
  GridSequence out(signal_shape_);
  std::vector<cplx> buf(F);
  for (std::size_t mf = 0; mf < M; ++mf) {
    bool any = false;
    for (std::size_t kf = 0; kf < F; ++kf) {
      buf[kf] = c[mf + M * kf];
      any = any || buf[kf] != cplx{};
    }
    if (!any) continue;
    dft_all(buf, folded_shape_, +1, 1.0);
    translation_shape_.unflatten(mf, t);
    for (std::size_t yf = 0; yf < N; ++yf) {
      signal_shape_.unflatten(yf, y);
      for (std::size_t a = 0; a < n; ++a) z[a] = y[a] - t[a] * static_cast<long>(lattice_.translation_steps[a]);
      out[yf] += buf[fold[yf]] * w.cyclic(z);
    }
  }
  return out;
}

Eigen::MatrixXcd GaborSystem::frame_operator() const {
  const std::size_t n = rank();
  const std::size_t N = signal_shape_.size();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
  std::vector<long> u(n), v(n), t(n), z(n);
  for (std::size_t i = 0; i < N; ++i) {
    signal_shape_.unflatten(i, u);
    for (std::size_t j = 0; j < N; ++j) {
      signal_shape_.unflatten(j, v);
      bool same = true;
      for (std::size_t a = 0; a < n && same; ++a) {
        same = mod_rep(u[a] - v[a], static_cast<long>(folded_shape_.extent(a))) == 0;
      }
      if (!same) continue;
      cplx acc{};
      for (std::size_t mf = 0; mf < translation_shape_.size(); ++mf) {
        translation_shape_.unflatten(mf, t);
        for (std::size_t a = 0; a < n; ++a) {
          const long shift = t[a] * static_cast<long>(lattice_.translation_steps[a]);
          z[a] = u[a] - shift;
          v[a] -= shift;
        }
        acc += window_.cyclic(z) * std::conj(window_.cyclic(v));
        for (std::size_t a = 0; a < n; ++a) v[a] += t[a] * static_cast<long>(lattice_.translation_steps[a]);
      }
      S(i, j) = walnut_scale_ * acc;
    }
  }
  return S;
}

Eigen::MatrixXcd GaborSystem::analysis_matrix(WindowRole role) const {
  const auto& w = window_for(role);
  const std::size_t N = signal_shape_.size();
  Eigen::MatrixXcd C(coef_shape_.size(), N);
  GridSequence e(signal_shape_);
  for (std::size_t j = 0; j < N; ++j) {
    e[j] = 1.0;
    const auto col = analysis_with(e, w);
    for (std::size_t i = 0; i < col.size(); ++i) C(i, j) = col[i];
    e[j] = 0.0;
  }
  return C;
}

Eigen::MatrixXcd GaborSystem::synthesis_matrix(WindowRole role) const {
  const auto& w = window_for(role);
  const std::size_t K = coef_shape_.size();
  Eigen::MatrixXcd D(signal_shape_.size(), K);
  GridSequence e(coef_shape_);
  for (std::size_t j = 0; j < K; ++j) {
    e[j] = 1.0;
    const auto col = synthesis_with(e, w);
    for (std::size_t i = 0; i < col.size(); ++i) D(i, j) = col[i];
    e[j] = 0.0;
  }
  return D;
}

GridSequence stft(const GridSequence& f, const GridSequence& window) {
  if (!(f.shape() == window.shape())) throw ShapeError("stft: signal and window shapes differ");
  if (window.is_zero()) throw DomainError("stft: window must be nonzero");
  const std::size_t n = f.rank();
  const std::size_t N = f.size();
  const double scale = std::pow(static_cast<double>(N), -0.5);
  std::vector<std::size_t> sizes = f.shape().sizes();
  sizes.insert(sizes.end(), f.shape().sizes().begin(), f.shape().sizes().end());
  GridSequence out{GridShape(sizes)};
  std::vector<long> x(n), y(n), z(n);
  std::vector<cplx> buf(N);
  for (std::size_t xf = 0; xf < N; ++xf) {
    f.shape().unflatten(xf, x);
    for (std::size_t yf = 0; yf < N; ++yf) {
      f.shape().unflatten(yf, y);
      for (std::size_t a = 0; a < n; ++a) z[a] = y[a] - x[a];
      buf[yf] = f[yf] * std::conj(window.cyclic(z));
    }
    dft_all(buf, f.shape(), -1, scale);
    for (std::size_t kf = 0; kf < N; ++kf) out[xf + N * kf] = buf[kf];
  }
  return out;
}

namespace {

GridSequence tensor_window(const std::vector<double>& profile, std::size_t d) {
  const std::size_t L = profile.size();
  GridShape shape(std::vector<std::size_t>(d, L));
  GridSequence w(shape);
  std::vector<long> idx(d);
  for (std::size_t f = 0; f < shape.size(); ++f) {
    shape.unflatten(f, idx);
    double v = 1.0;
    for (auto i : idx) v *= profile[static_cast<std::size_t>(i)];
    w[f] = v;
  }
  w *= 1.0 / w.l2_norm();
  return w;
}

}  // namespace

GridSequence gaussian_window(std::size_t L, std::size_t d) {
  if (L == 0 || d == 0) throw DomainError("window needs positive size and dimension");
  std::vector<double> g(L, 0.0);
  const double root = std::sqrt(static_cast<double>(L));
  for (std::size_t x = 0; x < L; ++x) {
    for (int k = -4; k <= 4; ++k) {
      const double s = (static_cast<double>(x) + k * static_cast<double>(L)) / root;
      g[x] += std::exp(-std::numbers::pi * s * s);
    }
  }
  return tensor_window(g, d);
}

GridSequence boxcar_window(std::size_t L, std::size_t width, std::size_t d) {
  if (width == 0 || width > L) throw DomainError("boxcar width must lie in [1, L]");
  std::vector<double> g(L, 0.0);
  const long start = -static_cast<long>(width / 2);
  for (long i = 0; i < static_cast<long>(width); ++i) g[mod_rep(start + i, static_cast<long>(L))] = 1.0;
  return tensor_window(g, d);
}

GridSequence parse_window(const std::string& spec, std::size_t L, std::size_t d) {
  if (spec == "gauss" || spec == "gaussian") return gaussian_window(L, d);
  if (spec.rfind("box:", 0) == 0) {
    try {
      std::size_t pos = 0;
      const unsigned long w = std::stoul(spec.substr(4), &pos);
      if (pos == spec.size() - 4) return boxcar_window(L, w, d);
    } catch (const std::logic_error&) {
    }
  }
  throw ParseError("unknown window '" + spec + "' (expected gauss or box:w)");
}

}  // namespace otfa
