#pragma once

// Pseudo-differential operators on Z_L^d in A-quantization.
//
// A symbol a lives on Z_L^{2d} with axes (x_1..x_d, ξ_1..ξ_d). With
// F(u, z) = Σ_ξ a(u, ξ) e^{2πi<z,ξ>/L} the kernel of Op_A(a) is
//
//   K(x, y) = L^{-d} F(x - A(x-y), x - y),
//
// so the constant symbol 1 quantizes to the identity.

#include <Eigen/Dense>
#include <memory>

#include "otfa/gabor.hpp"
#include "otfa/orlicz.hpp"

namespace otfa {

struct Quantization {
  Eigen::MatrixXd A;

  static Quantization zero(std::size_t d = 1);
  static Quantization identity(std::size_t d = 1);
  static Quantization weyl(std::size_t d = 1);
  /// Parses `0`, `I` or `half`.
  static Quantization parse(const std::string& spec, std::size_t d = 1);

  std::size_t dim() const { return static_cast<std::size_t>(A.rows()); }
  /// True when every entry of A is an integer, so x - A(x-y) stays on the grid.
  bool integral() const;
};

/// Shape (L,..,L) of rank 2d for symbols on Z_L^{2d}.
GridShape symbol_shape(std::size_t L, std::size_t d = 1);

/// Kernel matrix (rows x, columns y in signal storage order). Integral A only.
Eigen::MatrixXcd kernel_from_symbol(const GridSequence& a, const Quantization& q);

/// Exact inverse of kernel_from_symbol.
GridSequence symbol_from_kernel(const Eigen::MatrixXcd& K, std::size_t L, const Quantization& q);

/// Matrix of Op_A(a); non-integral A goes through calculus_transfer to A = 0.
Eigen::MatrixXcd operator_matrix(const GridSequence& a, const Quantization& q);

/// Op_A(a) f.
GridSequence apply_op(const GridSequence& a, const Quantization& q, const GridSequence& f);

/// Symbol a2 with Op_{A2}(a2) = Op_{A1}(a1). Any real A1, A2.
GridSequence calculus_transfer(const GridSequence& a1, const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2);

/// W(x, ξ) = L^{-d/2} Σ_y f1(x+Ay) conj(f2(x+(A-I)y)) e^{-2πi<y,ξ>/L}. Integral A only.
GridSequence wigner(const GridSequence& f1, const GridSequence& f2, const Quantization& q);

/// c with Op_A(c W^A_{f1,f2}) g = (g, f2) f1, calibrated on delta signals.
double rank_one_constant(std::size_t L, std::size_t d = 1);

/// c with (Op_A(a) f, g) = c (a, W^A_{g,f}), calibrated on a constant symbol and delta signals.
double duality_constant(std::size_t L, std::size_t d = 1);

/// |(Op_A(a) f, g) - c (a, W^A_{g,f})|.
double duality_link_residual(const GridSequence& a, const Quantization& q, const GridSequence& f,
                             const GridSequence& g);

/// Symbol of Op_A(a1) ∘ Op_A(a2).
GridSequence sharp_product(const GridSequence& a1, const GridSequence& a2, const Quantization& q);

/// Matrix over a lattice square. Rows and columns are flat indices of index_shape.
struct GaborMatrix {
  Eigen::MatrixXcd entries;
  GridShape index_shape;
  std::vector<double> steps;  ///< physical step per index axis
};

/// Frames for the matrix representation of Op(a): analysis with φ2, synthesis
/// with φ1 on the signal lattice, and the symbol-side system on Z_L^{2d} with
/// composite window φ1(x) conj(Fφ2(ξ)) e^{-2πi<x,ξ>/L}.
class OperatorFrame {
 public:
  OperatorFrame(std::size_t L, std::size_t alpha, std::size_t beta, GridSequence window1, GridSequence window2);
  /// Both windows Gaussian.
  OperatorFrame(std::size_t L, std::size_t alpha, std::size_t beta, std::size_t d = 1);

  const GaborSystem& system1() const { return *sys1_; }
  const GaborSystem& system2() const { return *sys2_; }
  const GaborSystem& symbol_system() const { return *symbol_; }
  std::shared_ptr<const GaborSystem> symbol_system_ptr() const { return symbol_; }
  std::size_t group_order() const { return L_; }
  std::size_t dim() const { return sys1_->rank(); }

  /// A_a with entries V_ψ a(j, κ, ι-κ, k-j) e^{2πi<k-j,κ>/L}, ψ the canonical
  /// dual of the composite window on the symbol lattice.
  GaborMatrix gabor_matrix(const GridSequence& a) const;

  /// C_{φ2} ∘ D_{φ1} as a lattice matrix.
  GaborMatrix transition() const;

  /// Empty lattice matrix of the right shape.
  GaborMatrix lattice_matrix(Eigen::MatrixXcd entries) const;

 private:
  std::size_t L_;
  std::shared_ptr<const GaborSystem> sys1_;
  std::shared_ptr<const GaborSystem> sys2_;
  std::shared_ptr<const GaborSystem> symbol_;
};

/// Composite window φ1(x) conj(Fφ2(ξ)) e^{-2πi<x,ξ>/L} on Z_L^{2d}.
GridSequence composite_window(const GridSequence& window1, const GridSequence& window2);

// Matrix classes over a lattice square.

/// T(a·ω)(j, k) = a(j, j-k) ω(j, j-k) as nonnegative magnitudes on
/// (index axes of j, index axes of k), j inner. The weight acts on the
/// concatenated physical coordinates of (row, column); null means ω ≡ 1.
std::vector<double> rearranged_magnitudes(const GaborMatrix& M, const Weight* weight = nullptr);

/// ‖T(a·ω)‖ in ℓ^{Φ1,Φ2} with the j block inner.
double u_norm(const GaborMatrix& M, const YoungFunction& phi1, const YoungFunction& phi2,
              const Weight* weight = nullptr);

/// U^{∞,r0}: sup over j inside, ℓ^{r0} over the difference outside.
double u_norm_inf(const GaborMatrix& M, double r0, const Weight* weight = nullptr);

/// ‖(‖a(j,·)ω(j,·)‖_{Φ1})_j‖_{Φ2}: row-wise inner norm, no rearrangement.
double row_mixed_norm(const GaborMatrix& M, const YoungFunction& phi1, const YoungFunction& phi2,
                      const Weight* weight = nullptr);

/// Plain matrix-vector product on the lattice.
GridSequence matrix_apply(const GaborMatrix& M, const GridSequence& f);

/// M1 M2.
GaborMatrix compose(const GaborMatrix& M1, const GaborMatrix& M2);

/// Lattice matrix from a dense matrix and a shape; steps default to 1.
GaborMatrix make_matrix(Eigen::MatrixXcd entries, GridShape index_shape, std::vector<double> steps = {});

}  // namespace otfa
