#pragma once

// Gabor systems on Z_L^n: short-time Fourier transform, analysis and synthesis
// over a separable lattice, the frame operator and the canonical dual window.
//
//   V_φ f(x, ξ) = L^{-n/2} Σ_y f(y) conj(φ(y - x)) e^{-2πi<y,ξ>/L}
//   C_φ f(m, k) = V_φ f(a·m, b·k)
//   D_ψ c(y)    = Σ_{m,k} c(m, k) e^{2πi<y, b·k>/L} ψ(y - a·m)
//
// Coefficient arrays have the translation axes first, then the modulation axes.

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "otfa/grid.hpp"

namespace otfa {

struct Lattice {
  std::vector<std::size_t> translation_steps;  ///< a_i, one per axis
  std::vector<std::size_t> modulation_steps;   ///< b_i, one per axis
};

enum class WindowRole { Primary, Dual };

struct FrameBounds {
  double lower = 0.0;  ///< A in A‖f‖² <= ‖C_φ f‖²
  double upper = 0.0;  ///< B in ‖C_φ f‖² <= B‖f‖²
};

class GaborSystem {
 public:
  /// Window on Z_L^n (n = lattice rank). Bounds and, for frames, the canonical
  /// dual are computed here; the object is immutable afterwards.
  GaborSystem(std::size_t L, Lattice lattice, GridSequence window);

  /// Separable system on Z_L^d with steps α in every time axis and β in every frequency axis.
  static GaborSystem signal(std::size_t L, std::size_t alpha, std::size_t beta, GridSequence window);

  std::size_t group_order() const { return L_; }
  std::size_t rank() const { return lattice_.translation_steps.size(); }
  const Lattice& lattice() const { return lattice_; }
  const GridShape& signal_shape() const { return signal_shape_; }
  const GridShape& coefficient_shape() const { return coef_shape_; }
  /// Physical step of each coefficient axis (translation steps then modulation steps).
  std::vector<double> coefficient_steps() const;

  const GridSequence& window() const { return window_; }
  /// Canonical dual S^{-1}φ; throws NotAFrameError when the system is not a frame.
  const GridSequence& dual() const;
  bool is_frame() const { return is_frame_; }
  FrameBounds frame_bounds() const { return bounds_; }
  const GridSequence& window_for(WindowRole role) const {
    return role == WindowRole::Primary ? window() : dual();
  }

  GridSequence analysis(const GridSequence& f, WindowRole role = WindowRole::Primary) const;
  GridSequence synthesis(const GridSequence& c, WindowRole role = WindowRole::Primary) const;

  /// Dense matrix of D_φ ∘ C_φ (rows and columns in signal storage order).
  Eigen::MatrixXcd frame_operator() const;
  /// Dense matrices of C and D for the chosen window.
  Eigen::MatrixXcd analysis_matrix(WindowRole role = WindowRole::Primary) const;
  Eigen::MatrixXcd synthesis_matrix(WindowRole role = WindowRole::Primary) const;

 private:
  GridSequence analysis_with(const GridSequence& f, const GridSequence& w) const;
  GridSequence synthesis_with(const GridSequence& c, const GridSequence& w) const;
  void solve_blocks();

  std::size_t L_;
  Lattice lattice_;
  GridShape signal_shape_;
  GridShape coef_shape_;
  GridShape folded_shape_;
  GridShape translation_shape_;
  GridSequence window_;
  GridSequence dual_;
  FrameBounds bounds_;
  bool is_frame_ = false;
  double walnut_scale_ = 1.0;
};

/// Full STFT on Z_L^n x Z_L^n (x axes first).
GridSequence stft(const GridSequence& f, const GridSequence& window);

/// Periodized Gaussian c Σ_k e^{-π((x+kL)/√L)²}, tensored over d axes, unit ℓ² norm.
GridSequence gaussian_window(std::size_t L, std::size_t d = 1);

/// Indicator of `width` consecutive points centred at 0, tensored over d axes, unit ℓ² norm.
GridSequence boxcar_window(std::size_t L, std::size_t width, std::size_t d = 1);

/// Parses `gauss` or `box:w`.
GridSequence parse_window(const std::string& spec, std::size_t L, std::size_t d = 1);

}  // namespace otfa
