#include "otfa/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "otfa/errors.hpp"

namespace otfa {

GridShape::GridShape(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  strides_.resize(sizes_.size());
  total_ = 1;
  for (std::size_t a = 0; a < sizes_.size(); ++a) {
    if (sizes_[a] == 0) throw ShapeError("grid extents must be positive");
    strides_[a] = total_;
    total_ *= sizes_[a];
  }
}

std::size_t GridShape::flat(std::span<const long> index) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < sizes_.size(); ++a) {
    f += static_cast<std::size_t>(mod_rep(index[a], static_cast<long>(sizes_[a]))) * strides_[a];
  }
  return f;
}

void GridShape::unflatten(std::size_t flat, std::span<long> index) const {
  for (std::size_t a = 0; a < sizes_.size(); ++a) {
    index[a] = static_cast<long>(flat % sizes_[a]);
    flat /= sizes_[a];
  }
}

std::size_t GridShape::block_size(std::size_t first, std::size_t count) const {
  std::size_t n = 1;
  for (std::size_t a = first; a < first + count; ++a) n *= sizes_.at(a);
  return n;
}

GridSequence::GridSequence(GridShape shape)
    : shape_(std::move(shape)), values_(shape_.size(), cplx{0.0, 0.0}) {}

GridSequence::GridSequence(GridShape shape, std::vector<cplx> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw ShapeError("value count " + std::to_string(values_.size()) +
                     " does not match shape size " + std::to_string(shape_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("grid sequence values must be finite");
    }
  }
}

cplx GridSequence::cyclic(std::span<const long> index) const { return values_[shape_.flat(index)]; }

bool GridSequence::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx{}; });
}

double GridSequence::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridSequence::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

GridSequence& GridSequence::operator+=(const GridSequence& other) {
  if (!(shape_ == other.shape_)) throw ShapeError("shape mismatch in addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridSequence& GridSequence::operator-=(const GridSequence& other) {
  if (!(shape_ == other.shape_)) throw ShapeError("shape mismatch in subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridSequence& GridSequence::operator*=(cplx scalar) {
  for (auto& v : values_) v *= scalar;
  return *this;
}

GridSequence operator+(GridSequence a, const GridSequence& b) { return a += b; }
GridSequence operator-(GridSequence a, const GridSequence& b) { return a -= b; }
GridSequence operator*(cplx s, GridSequence a) { return a *= s; }

namespace {

// Twiddles e^{+2πi k/n}, k = 0..n-1; the sign is applied by conjugation.
const std::vector<cplx>& twiddles(std::size_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::size_t, std::vector<cplx>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return cache.emplace(n, std::move(w)).first->second;
}

void fft_radix2(std::span<cplx> a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& w = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx tw = w[k * step];
        if (sign < 0) tw = std::conj(tw);
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * tw;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

void dft_direct(std::span<cplx> a, int sign) {
  const std::size_t n = a.size();
  const auto& w = twiddles(n);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t x = 0; x < n; ++x) {
      cplx tw = w[(x * k) % n];
      if (sign < 0) tw = std::conj(tw);
      acc += a[x] * tw;
    }
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), a.begin());
}

}  // namespace

void dft(std::span<cplx> data, int sign, double scale) {
  const std::size_t n = data.size();
  if (n <= 1) {
    for (auto& v : data) v *= scale;
    return;
  }
  if (std::has_single_bit(n)) {
    fft_radix2(data, sign);
  } else {
    dft_direct(data, sign);
  }
  if (scale != 1.0) {
    for (auto& v : data) v *= scale;
  }
}

void dft_axis(GridSequence& seq, std::size_t axis, int sign, double scale) {
  const auto& shape = seq.shape();
  const std::size_t n = shape.extent(axis);
  const std::size_t stride = shape.stride(axis);
  const std::size_t outer = shape.size() / (n * stride);
  std::vector<cplx> line(n);
  auto values = seq.values();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < stride; ++i) {
      const std::size_t base = o * n * stride + i;
      for (std::size_t k = 0; k < n; ++k) line[k] = values[base + k * stride];
      dft(line, sign, scale);
      for (std::size_t k = 0; k < n; ++k) values[base + k * stride] = line[k];
    }
  }
}

GridSequence unitary_dft(GridSequence f) {
  for (std::size_t a = 0; a < f.rank(); ++a) {
    dft_axis(f, a, -1, 1.0 / std::sqrt(static_cast<double>(f.shape().extent(a))));
  }
  return f;
}

GridSequence unitary_idft(GridSequence f) {
  for (std::size_t a = 0; a < f.rank(); ++a) {
    dft_axis(f, a, +1, 1.0 / std::sqrt(static_cast<double>(f.shape().extent(a))));
  }
  return f;
}

}  // namespace otfa
