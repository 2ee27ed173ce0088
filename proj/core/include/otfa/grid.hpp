#pragma once

// Finite cyclic grids Z_{n_0} x ... x Z_{n_{k-1}}, complex sequences on them,
// and the discrete Fourier transform along single axes.
//
// Storage order: axis 0 varies fastest. A block of leading axes is therefore
// contiguous in memory, which is what the iterated (mixed) norms reduce over.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

namespace otfa {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Canonical representative of i mod n in [-n/2, n/2).
constexpr long sym_rep(long i, long n) {
  long r = i % n;
  if (r < 0) r += n;
  if (2 * r >= n) r -= n;
  return r;
}

/// Non-negative representative of i mod n.
constexpr long mod_rep(long i, long n) {
  long r = i % n;
  return r < 0 ? r + n : r;
}

class GridShape {
 public:
  GridShape() = default;
  explicit GridShape(std::vector<std::size_t> sizes);
  GridShape(std::initializer_list<std::size_t> sizes)
      : GridShape(std::vector<std::size_t>(sizes)) {}

  std::size_t rank() const { return sizes_.size(); }
  std::size_t size() const { return total_; }
  std::size_t extent(std::size_t axis) const { return sizes_[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  std::size_t flat(std::span<const long> index) const;
  void unflatten(std::size_t flat, std::span<long> index) const;

  /// Product of the extents of axes [first, first+count).
  std::size_t block_size(std::size_t first, std::size_t count) const;

  bool operator==(const GridShape& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Complex-valued sequence on a finite multi-dimensional cyclic grid.
class GridSequence {
 public:
  GridSequence() = default;
  explicit GridSequence(GridShape shape);
  GridSequence(GridShape shape, std::vector<cplx> values);

  const GridShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return shape_.rank(); }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  const std::vector<cplx>& data() const { return values_; }

  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  cplx& at(std::span<const long> index) { return values_[shape_.flat(index)]; }
  const cplx& at(std::span<const long> index) const { return values_[shape_.flat(index)]; }

  /// Cyclic lookup with arbitrary (possibly negative) indices.
  cplx cyclic(std::span<const long> index) const;

  bool is_zero() const;
  double max_abs() const;
  double l2_norm() const;

  GridSequence& operator+=(const GridSequence& other);
  GridSequence& operator-=(const GridSequence& other);
  GridSequence& operator*=(cplx scalar);

 private:
  GridShape shape_;
  std::vector<cplx> values_;
};

GridSequence operator+(GridSequence a, const GridSequence& b);
GridSequence operator-(GridSequence a, const GridSequence& b);
GridSequence operator*(cplx s, GridSequence a);

/// In-place DFT of a contiguous buffer: out(k) = scale * sum_x in(x) e^{sign 2πi xk/n}.
/// Radix-2 FFT when n is a power of two, direct summation otherwise.
void dft(std::span<cplx> data, int sign, double scale = 1.0);

/// DFT along one axis of a grid sequence.
void dft_axis(GridSequence& seq, std::size_t axis, int sign, double scale = 1.0);

/// Unitary DFT over every axis: L^{-n/2} sum_x f(x) e^{-2πi<x,ξ>/L}.
GridSequence unitary_dft(GridSequence f);
GridSequence unitary_idft(GridSequence f);

}  // namespace otfa
