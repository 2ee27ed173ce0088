#include "otfa/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "otfa/errors.hpp"

namespace otfa {

void ModulationSpaceSpec::validate() const {
  if (!system) throw ContractError("modulation spec needs a Gabor system");
  const std::size_t d = system->rank();
  if (phis.size() != split.size() || split.empty()) {
    throw ShapeError("modulation spec needs one Young function per axis block");
  }
  std::size_t total = 0;
  bool covers_time = false;
  for (auto s : split) {
    if (s == 0) throw ShapeError("axis blocks must be nonempty");
    total += s;
    covers_time = covers_time || total == d;
  }
  if (total != 2 * d) throw ShapeError("axis split must cover all 2d time-frequency axes");
  if (!covers_time) throw ShapeError("a prefix of the axis blocks must cover exactly the time axes");
  if (weight.dim() != 2 * d) throw ShapeError("modulation weight must live on R^{2d}");
}

ModulationSpaceSpec two_block_spec(YoungFunction phi1, YoungFunction phi2, Weight weight,
                                   std::shared_ptr<const GaborSystem> system) {
  if (!system) throw ContractError("modulation spec needs a Gabor system");
  const std::size_t d = system->rank();
  ModulationSpaceSpec spec{{std::move(phi1), std::move(phi2)}, {d, d}, std::move(weight), std::move(system)};
  spec.validate();
  return spec;
}

double mod_norm_with(const GridSequence& f, const ModulationSpaceSpec& spec, const GaborSystem& system,
                     WindowRole role) {
  spec.validate();
  const auto c = system.analysis(f, role);
  const auto steps = system.coefficient_steps();
  return mixed_norm(c, spec.phis, spec.split, spec.weight, steps);
}

double mod_norm(const GridSequence& f, const ModulationSpaceSpec& spec) {
  spec.validate();
  return mod_norm_with(f, spec, *spec.system);
}

Band window_equivalence_band(const std::vector<GridSequence>& batch, const ModulationSpaceSpec& spec,
                             const GridSequence& alternative_window) {
  spec.validate();
  const GaborSystem alt(spec.system->group_order(), spec.system->lattice(), alternative_window);
  if (!alt.is_frame()) throw NotAFrameError("alternative window is not a frame at these lattice steps");
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& f : batch) {
    const double base = mod_norm(f, spec);
    if (base == 0.0) continue;
    const double r = mod_norm_with(f, spec, alt) / base;
    band.min = std::min(band.min, r);
    band.max = std::max(band.max, r);
  }
  if (band.max == 0.0) band.min = 0.0;
  return band;
}

CollapseReport collapse_check(const std::vector<GridSequence>& batch, const YoungFunction& phi, const Weight& weight,
                              const GaborSystem& system, std::vector<std::size_t> split) {
  const std::size_t d = system.rank();
  if (split.empty()) split = {d, d};
  const std::vector<YoungFunction> iterated(split.size(), phi);
  const std::vector<YoungFunction> flat{phi};
  const std::vector<std::size_t> whole{2 * d};
  const auto steps = system.coefficient_steps();
  CollapseReport report;
  report.exact_kind = phi.is_power() || phi.is_indicator();
  report.ratio = {std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& f : batch) {
    const auto c = system.analysis(f);
    const double den = mixed_norm(c, flat, whole, weight, steps);
    if (den == 0.0) continue;
    const double r = mixed_norm(c, iterated, split, weight, steps) / den;
    report.ratio.min = std::min(report.ratio.min, r);
    report.ratio.max = std::max(report.ratio.max, r);
  }
  if (report.ratio.max == 0.0) report.ratio.min = 0.0;
  return report;
}

double unit_level(const YoungFunction& phi) {
  if (const auto* ind = std::get_if<young::Indicator>(&phi.kind())) return ind->threshold;
  double lo = 0.0;
  double hi = 1.0;
  while (phi(hi) <= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) <= 1.0) lo = mid; else hi = mid;
  }
  return lo;
}

InclusionReport inclusion_check(const std::vector<YoungFunction>& phis, const std::vector<YoungFunction>& psis,
                                std::shared_ptr<const GaborSystem> system, const Weight& weight,
                                const std::vector<GridSequence>& batch) {
  if (phis.size() != 2 || psis.size() != 2) throw ShapeError("inclusion_check compares two-block spaces");
  InclusionReport report;
  report.implied = true;
  report.predicted_constant = 1.0;
  for (std::size_t j = 0; j < 2; ++j) {
    const double t0 = unit_level(phis[j]);
    report.thresholds.push_back(t0);
    const auto dom = dominates_near_zero(psis[j], phis[j], std::isfinite(t0) ? t0 : 1e6);
    report.dominations.push_back(dom);
    report.implied = report.implied && dom.bounded && std::isfinite(t0);
    report.predicted_constant *= std::pow(std::max(1.0, dom.constant), 1.0 / psis[j].order());
  }
  if (!report.implied) report.predicted_constant = std::numeric_limits<double>::infinity();
  const auto phi_spec = two_block_spec(phis[0], phis[1], weight, system);
  const auto psi_spec = two_block_spec(psis[0], psis[1], weight, system);
  for (const auto& f : batch) {
    const double den = mod_norm(f, phi_spec);
    if (den == 0.0) continue;
    report.max_ratio = std::max(report.max_ratio, mod_norm(f, psi_spec) / den);
  }
  report.holds = report.implied && report.max_ratio <= report.predicted_constant * (1.0 + 1e-9);
  return report;
}

}  // namespace otfa
