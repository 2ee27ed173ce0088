#pragma once

// Orlicz modulation quasi-norms computed from lattice Gabor coefficients, and
// batch checks for window independence, collapse of iterated norms and
// inclusions between modulation spaces.

#include <memory>
#include <vector>

#include "otfa/gabor.hpp"
#include "otfa/orlicz.hpp"

namespace otfa {

struct ModulationSpaceSpec {
  std::vector<YoungFunction> phis;
  std::vector<std::size_t> split;  ///< axis blocks over (time axes, frequency axes), innermost first
  Weight weight;                   ///< on R^{2d}, evaluated at lattice points
  std::shared_ptr<const GaborSystem> system;

  /// Throws ShapeError unless some prefix of blocks covers exactly the time axes.
  void validate() const;
};

/// Standard two-block spec: time axes inner with phis[0], frequency axes outer with phis[1].
ModulationSpaceSpec two_block_spec(YoungFunction phi1, YoungFunction phi2, Weight weight,
                                   std::shared_ptr<const GaborSystem> system);

/// Mixed Orlicz norm of C_φ f with the spec's weight and grouping.
double mod_norm(const GridSequence& f, const ModulationSpaceSpec& spec);

/// Same, with the coefficients taken against an arbitrary system on the same lattice.
double mod_norm_with(const GridSequence& f, const ModulationSpaceSpec& spec, const GaborSystem& system,
                     WindowRole role = WindowRole::Primary);

struct Band {
  double min = 0.0;
  double max = 0.0;
};

/// Extreme ratios mod_norm(alternative window) / mod_norm(spec window) over the batch
/// (zero signals skipped).
Band window_equivalence_band(const std::vector<GridSequence>& batch, const ModulationSpaceSpec& spec,
                             const GridSequence& alternative_window);

struct CollapseReport {
  Band ratio;        ///< iterated norm / flat norm over the batch
  bool exact_kind = false;  ///< power or indicator, where the ratio is 1
};

/// Iterated norm with Φ in every block of `split` against the single Φ norm over the whole lattice.
CollapseReport collapse_check(const std::vector<GridSequence>& batch, const YoungFunction& phi, const Weight& weight,
                              const GaborSystem& system, std::vector<std::size_t> split = {});

struct InclusionReport {
  bool implied = false;               ///< every Ψ_j is dominated by Φ_j on [0, t0_j]
  std::vector<Domination> dominations;
  std::vector<double> thresholds;     ///< t0_j = sup{t : Φ_j(t) <= 1}
  double predicted_constant = 0.0;    ///< Π max(1, C_j)^{1/r(Ψ_j)} when implied
  double max_ratio = 0.0;             ///< max ‖f‖_Ψ / ‖f‖_Φ over the batch
  bool holds = false;                 ///< implied and max_ratio within the predicted constant
};

InclusionReport inclusion_check(const std::vector<YoungFunction>& phis, const std::vector<YoungFunction>& psis,
                                std::shared_ptr<const GaborSystem> system, const Weight& weight,
                                const std::vector<GridSequence>& batch);

/// sup{t >= 0 : Φ(t) <= 1}.
double unit_level(const YoungFunction& phi);

}  // namespace otfa
