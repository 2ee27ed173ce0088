#pragma once

// Weighted Luxemburg quasi-norms of sequences, iterated (mixed) Orlicz norms,
// cyclic convolution, translation and the ℓ² pairing.

#include <span>
#include <vector>

#include "otfa/grid.hpp"
#include "otfa/weights.hpp"
#include "otfa/young.hpp"

namespace otfa {

/// inf{λ > 0 : Σ Φ(m_i / λ) <= 1} for nonnegative magnitudes m. Zero for m = 0,
/// exact max(m)/a for indicator:a, geometric bisection otherwise.
double luxemburg_norm(std::span<const double> magnitudes, const YoungFunction& phi);

/// Luxemburg quasi-norm of |a·ω|. An empty weight span means ω ≡ 1.
double luxemburg_norm(std::span<const cplx> values, const YoungFunction& phi,
                      std::span<const double> weight = {});

/// Weight evaluated at sym_rep(index) * steps on the sequence grid.
double luxemburg_norm(const GridSequence& a, const YoungFunction& phi, const Weight& w,
                      std::span<const double> steps = {});

/// Iterated norm over nonnegative magnitudes laid out on `shape`. `split`
/// groups consecutive axes into blocks, first block innermost; block k is
/// reduced with phis[k].
double mixed_norm(std::span<const double> magnitudes, const GridShape& shape, std::span<const YoungFunction> phis,
                  std::span<const std::size_t> split);

/// Mixed norm of |a·ω|; the weight enters at the innermost stage only.
double mixed_norm(const GridSequence& a, std::span<const YoungFunction> phis, std::span<const std::size_t> split,
                  std::span<const double> weight = {});

double mixed_norm(const GridSequence& a, std::span<const YoungFunction> phis, std::span<const std::size_t> split,
                  const Weight& w, std::span<const double> steps = {});

/// Smallest order among the given functions.
double effective_order(std::span<const YoungFunction> phis);

/// Cyclic convolution (f*g)(j) = Σ_k f(k) g(j-k). Direct sums up to 1024 points, FFT above.
GridSequence convolve(const GridSequence& f, const GridSequence& g);

/// out(j) = a(j - shift), cyclic.
GridSequence translate(const GridSequence& a, std::span<const long> shift);

/// Σ a(j) conj(b(j)).
cplx pairing(const GridSequence& a, const GridSequence& b);
cplx pairing(std::span<const cplx> a, std::span<const cplx> b);

/// |a(j)| * w(j) (w may be empty).
std::vector<double> weighted_magnitudes(std::span<const cplx> values, std::span<const double> weight = {});

}  // namespace otfa
