#include "otfa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "otfa/errors.hpp"
#include "otfa/modulation.hpp"
#include "otfa/psido.hpp"

namespace otfa {

namespace {

using Rng = std::mt19937_64;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PropertyEntry {
  PropertyId id;
  std::string_view name;
};

constexpr PropertyEntry kProperties[] = {
    {PropertyId::LemmaT, "lemma-t"},
    {PropertyId::ConvLemma, "conv-lemma"},
    {PropertyId::PropnCond, "propn-cond"},
    {PropertyId::PropInvariance, "prop-invariance"},
    {PropertyId::Collapse, "collapse"},
    {PropertyId::GaborRecon, "gabor-recon"},
    {PropertyId::FrameEquiv, "frame-equiv"},
    {PropertyId::URemark, "u-remark"},
    {PropertyId::ThmAop, "thm-aop"},
    {PropertyId::Lemma1Compose, "lemma1-compose"},
    {PropertyId::Factorization, "factorization"},
    {PropertyId::CalcTransfer, "calc-transfer"},
    {PropertyId::WignerRank1, "wigner-rank1"},
    {PropertyId::DualityLink, "duality-link"},
    {PropertyId::ThmPseudoCont, "thm-pseudocont"},
    {PropertyId::ThmPseudoCont2Part1, "thm-pseudocont2-1"},
    {PropertyId::ThmPseudoCont2Part2, "thm-pseudocont2-2"},
    {PropertyId::ThmMain, "thm-main"},
};

// ---------------------------------------------------------------------------
// random data

GridSequence complex_gauss(const GridShape& shape, Rng& rng) {
  std::normal_distribution<double> n;
  GridSequence a(shape);
  for (auto& v : a.values()) v = {n(rng), n(rng)};
  return a;
}

// Nonnegative data with a random sparsity level and a random tail.
GridSequence nonneg(const GridShape& shape, Rng& rng) {
  std::uniform_real_distribution<double> u;
  const double zero_prob = 0.8 * u(rng);
  const double power = 1.0 + 3.0 * u(rng);
  GridSequence a(shape);
  for (auto& v : a.values()) v = u(rng) < zero_prob ? 0.0 : std::pow(u(rng), power);
  if (a.is_zero()) a[0] = 1.0;
  return a;
}

Eigen::MatrixXcd nonneg_matrix(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u;
  const double zero_prob = 0.9 * u(rng);
  const double power = 1.0 + 3.0 * u(rng);
  const bool banded = u(rng) < 0.3;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (banded && std::abs(static_cast<long>(i) - static_cast<long>(j)) > 3) continue;
      if (u(rng) < zero_prob) continue;
      M(i, j) = std::pow(u(rng), power);
    }
  }
  if (M.isZero()) M(0, 0) = 1.0;
  return M;
}

Eigen::MatrixXcd complex_matrix(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd M(n, n);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = {g(rng), g(rng)};
  return M;
}

/// A few time-frequency shifted Gaussian bumps on Z_L^2 with widths scaled by √L.
GridSequence smooth_symbol(std::size_t L, Rng& rng) {
  std::uniform_real_distribution<double> u;
  std::normal_distribution<double> g;
  GridSequence a(symbol_shape(L, 1));
  const double width = std::sqrt(static_cast<double>(L));
  const long n = static_cast<long>(L);
  for (int bump = 0; bump < 3; ++bump) {
    const double cx = u(rng) * static_cast<double>(L);
    const double cxi = u(rng) * static_cast<double>(L);
    const double fx = std::floor(u(rng) * 4.0) / static_cast<double>(L);
    const double fxi = std::floor(u(rng) * 4.0) / static_cast<double>(L);
    const cplx amp{g(rng), g(rng)};
    for (long x = 0; x < n; ++x) {
      for (long xi = 0; xi < n; ++xi) {
        const double dx = static_cast<double>(sym_rep(static_cast<long>(std::lround(x - cx)), n)) / width;
        const double dxi = static_cast<double>(sym_rep(static_cast<long>(std::lround(xi - cxi)), n)) / width;
        const double phase = kTwoPi * (fx * static_cast<double>(x) + fxi * static_cast<double>(xi));
        a[static_cast<std::size_t>(x + n * xi)] +=
            amp * std::exp(-std::numbers::pi * (dx * dx + dxi * dxi)) * cplx(std::cos(phase), std::sin(phase));
      }
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// helpers

std::vector<YoungFunction> order_family(double r0) {
  return {YoungFunction::power(r0, r0), YoungFunction::power(2.0, r0), YoungFunction::entropy(r0),
          YoungFunction::indicator(1.0, r0)};
}

double finite_or_inf(double v) { return std::isnan(v) ? kInfinity : v; }

struct Builder {
  TrialReport r;

  Builder(PropertyId id, const VerifyConfig& c, std::string metric, double tolerance) {
    r.property = std::string(property_name(id));
    r.seed = c.seed;
    r.metric_name = std::move(metric);
    r.tolerance = tolerance;
  }
  void observe(double v) { r.metric_max = std::max(r.metric_max, finite_or_inf(v)); }
  void keep_max(const std::string& key, double v) {
    auto it = r.constants.find(key);
    v = finite_or_inf(v);
    if (it == r.constants.end()) r.constants[key] = v; else it->second = std::max(it->second, v);
  }
  void keep_min(const std::string& key, double v) {
    auto it = r.constants.find(key);
    v = finite_or_inf(v);
    if (it == r.constants.end()) r.constants[key] = v; else it->second = std::min(it->second, v);
  }
  void param(const std::string& key, ParamValue v) { r.params[key] = std::move(v); }
  TrialReport finish(std::size_t trials) {
    r.trials = trials;
    r.pass = r.metric_max <= r.tolerance;
    return r;
  }
};

std::size_t trials_or(const VerifyConfig& c, std::size_t fallback) { return c.trials ? c.trials : fallback; }
std::size_t order_or(const VerifyConfig& c, std::size_t fallback) { return c.L ? c.L : fallback; }

std::vector<std::size_t> size_ladder(const VerifyConfig& c, std::size_t first) {
  const std::size_t base = c.L ? c.L : first;
  return {base, 2 * base, 4 * base};
}

/// Side of the 2D index lattice of a matrix property: Z_L with steps 2.
std::size_t lattice_side(const VerifyConfig& c) { return order_or(c, 16) / 2; }

std::string lattice_label(std::size_t n) { return std::to_string(n) + "x" + std::to_string(n); }

/// max(max/min) over the lower and upper endpoints of per-size bands.
double drift(const std::vector<Band>& bands) {
  double lo_min = kInfinity, lo_max = 0.0, hi_min = kInfinity, hi_max = 0.0;
  for (const auto& b : bands) {
    lo_min = std::min(lo_min, b.min);
    lo_max = std::max(lo_max, b.min);
    hi_min = std::min(hi_min, b.max);
    hi_max = std::max(hi_max, b.max);
  }
  if (!(lo_min > 0.0) || !(hi_min > 0.0)) return kInfinity;
  return std::max(lo_max / lo_min, hi_max / hi_min);
}

/// Largest growth factor of an upper bound from a smaller L to a larger one.
double upward_drift(const std::vector<double>& maxima) {
  double worst = 1.0;
  for (std::size_t i = 0; i < maxima.size(); ++i) {
    for (std::size_t j = i + 1; j < maxima.size(); ++j) {
      if (!(maxima[i] > 0.0)) return kInfinity;
      worst = std::max(worst, maxima[j] / maxima[i]);
    }
  }
  return worst;
}

void widen(Band& b, double v) {
  b.min = std::min(b.min, v);
  b.max = std::max(b.max, v);
}

Band empty_band() { return {kInfinity, 0.0}; }

std::string label(std::size_t L) { return "L" + std::to_string(L); }

Weight quotient_weight(const Weight& num, const Weight& den) {
  return Weight::custom(
      [num, den](std::span<const double> x) {
        const std::size_t h = x.size() / 2;
        return num(x.first(h)) / den(x.last(h));
      },
      num.dim() + den.dim(), "quotient");
}

Weight difference_weight(double s, std::size_t dim) {
  return Weight::custom(
      [s](std::span<const double> x) {
        const std::size_t h = x.size() / 2;
        double r = 0.0;
        for (std::size_t i = 0; i < h; ++i) r += (x[i] - x[h + i]) * (x[i] - x[h + i]);
        return std::pow(1.0 + std::sqrt(r), s);
      },
      2 * dim, "difference");
}

std::vector<double> magnitudes(const GridSequence& a) { return weighted_magnitudes(a.values()); }

double rel_frobenius(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double n = b.norm();
  return n == 0.0 ? a.norm() : (a - b).norm() / n;
}

// ---------------------------------------------------------------------------
// properties

TrialReport lemma_t(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::LemmaT, c, "max ||f(.-s)|| / (||f|| v(s) max(1,C))", 1.0 + 1e-9);
  const std::size_t L = order_or(c, 32);
  const std::size_t trials = trials_or(c, 10);
  b.param("L", static_cast<double>(L));
  const GridShape shape{L};
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"poly:1", "poly:1"}, {"poly:-1", "poly:1"}, {"exp:0.2", "exp:0.2"}, {"one", "one"}};
  const std::vector<YoungFunction> phis{YoungFunction::power(2.0), YoungFunction::power(0.5, 0.5),
                                        YoungFunction::entropy(), YoungFunction::indicator(1.0),
                                        YoungFunction::cosh_minus_one()};
  for (const auto& [ws, vs] : pairs) {
    const auto w = parse_weight(ws, 1);
    const auto v = parse_weight(vs, 1);
    const double C = moderateness_constant(w, v, {static_cast<long>(L), 1});
    b.r.constants["grid_constant[" + ws + "]"] = C;
    const auto wv = weight_on_grid(w, shape);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto a = complex_gauss(shape, rng);
      for (const auto& phi : phis) {
        const double base = luxemburg_norm(a.values(), phi, wv);
        for (long s = 0; s < static_cast<long>(L); ++s) {
          const long shift[] = {s};
          const double moved = luxemburg_norm(translate(a, shift).values(), phi, wv);
          const double vs_val = v({static_cast<double>(sym_rep(s, static_cast<long>(L)))});
          b.observe(moved / (base * vs_val * std::max(1.0, C)));
        }
      }
    }
  }
  return b.finish(trials);
}

TrialReport conv_lemma(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ConvLemma, c, "max ||f*g|| / (||f|| ||g||_r0)", 1.0 + 1e-9);
  const std::size_t n = c.L ? std::max<std::size_t>(c.L / 4, 4) : 8;
  const std::size_t trials = trials_or(c, 25);
  b.param("grid", std::to_string(n) + "x" + std::to_string(n));
  const GridShape shape{n, n};
  const std::vector<std::size_t> split{1, 1};
  for (double r0 : {1.0, 0.5}) {
    const auto family = order_family(r0);
    const auto g_norm = YoungFunction::power(r0, r0);
    for (const auto& p1 : family) {
      for (const auto& p2 : family) {
        const std::vector<YoungFunction> phis{p1, p2};
        for (std::size_t t = 0; t < trials; ++t) {
          const auto f = nonneg(shape, rng);
          const auto g = nonneg(shape, rng);
          const auto fg = convolve(f, g);
          const double lhs = mixed_norm(magnitudes(fg), shape, phis, split);
          const double rhs = mixed_norm(magnitudes(f), shape, phis, split) * luxemburg_norm(g.values(), g_norm);
          const double ratio = lhs / rhs;
          b.observe(ratio);
          b.keep_max("max_ratio[" + p1.to_string() + "," + p2.to_string() + "]", ratio);
        }
      }
    }
  }
  return b.finish(trials);
}

TrialReport propn_cond(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::PropnCond, c, "max(exact residual/1e-10, band drift/2)", 1.0);
  const auto sizes = size_ladder(c, 16);
  const std::size_t trials = trials_or(c, 20);
  b.param("L", static_cast<double>(sizes.front()));
  b.param("sizes", std::to_string(sizes[0]) + "," + std::to_string(sizes[1]) + "," + std::to_string(sizes[2]));
  const std::vector<std::string> exact{"power:2", "power:1", "power:3", "power:0.5@0.5", "indicator:1"};
  const std::vector<std::string> banded{"entropy", "cosh"};
  const std::vector<std::size_t> split{1, 1};
  const std::vector<std::size_t> whole{2};
  for (const auto& spec : exact) {
    const auto phi = parse_young(spec);
    const std::vector<YoungFunction> two{phi, phi}, one{phi};
    double worst = 0.0;
    for (auto L : sizes) {
      const GridShape shape{L, L};
      for (std::size_t t = 0; t < trials; ++t) {
        const auto a = complex_gauss(shape, rng);
        const double r = mixed_norm(a, two, split) / mixed_norm(a, one, whole);
        worst = std::max(worst, std::abs(r - 1.0));
      }
    }
    b.r.constants["residual[" + spec + "]"] = worst;
    b.observe(worst / 1e-10);
  }
  for (const auto& spec : banded) {
    const auto phi = parse_young(spec);
    const std::vector<YoungFunction> two{phi, phi}, one{phi};
    std::vector<Band> bands;
    for (auto L : sizes) {
      const GridShape shape{L, L};
      Band band = empty_band();
      for (std::size_t t = 0; t < trials; ++t) {
        const auto a = complex_gauss(shape, rng);
        widen(band, mixed_norm(a, two, split) / mixed_norm(a, one, whole));
      }
      b.r.constants["band_min[" + spec + "," + label(L) + "]"] = band.min;
      b.r.constants["band_max[" + spec + "," + label(L) + "]"] = band.max;
      bands.push_back(band);
    }
    const double dr = drift(bands);
    b.r.constants["drift[" + spec + "]"] = dr;
    b.observe(dr / 2.0);
  }
  return b.finish(trials);
}

TrialReport prop_invariance(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::PropInvariance, c, "max ||f||_Psi / (K ||f||_Phi) over implied inclusions", 1.0 + 1e-9);
  const std::size_t L = order_or(c, 32);
  const std::size_t step = L >= 32 ? 4 : 2;
  const std::size_t trials = trials_or(c, 10);
  b.param("L", static_cast<double>(L));
  b.param("alpha", static_cast<double>(step));
  b.param("beta", static_cast<double>(step));
  auto sys = std::make_shared<const GaborSystem>(GaborSystem::signal(L, step, step, gaussian_window(L)));
  std::vector<GridSequence> batch;
  for (std::size_t t = 0; t < trials; ++t) batch.push_back(complex_gauss(sys->signal_shape(), rng));
  struct Case {
    std::string name;
    std::vector<std::string> phi, psi;
    std::string weight;
    bool expect_implied;
  };
  const std::vector<Case> cases{
      {"l1-in-l2", {"power:1", "power:1"}, {"power:2", "power:2"}, "one", true},
      {"l2-in-linf", {"power:2", "power:2"}, {"indicator:1", "indicator:1"}, "poly:0.5", true},
      {"entropy-in-l2", {"entropy", "entropy"}, {"power:2", "power:2"}, "one", true},
      {"mixed", {"power:1", "power:2"}, {"power:2", "indicator:1"}, "poly:1", true},
      {"same", {"entropy", "power:1"}, {"entropy", "power:1"}, "one", true},
      {"quasi", {"power:0.5@0.5", "power:0.5@0.5"}, {"power:1@0.5", "power:1@0.5"}, "one", true},
      {"l2-not-in-l1", {"power:2", "power:2"}, {"power:1", "power:1"}, "one", false},
  };
  for (const auto& cs : cases) {
    std::vector<YoungFunction> phis, psis;
    for (const auto& s : cs.phi) phis.push_back(parse_young(s));
    for (const auto& s : cs.psi) psis.push_back(parse_young(s));
    const auto rep = inclusion_check(phis, psis, sys, parse_weight(cs.weight, 2), batch);
    b.r.constants["implied[" + cs.name + "]"] = rep.implied ? 1.0 : 0.0;
    b.r.constants["max_ratio[" + cs.name + "]"] = rep.max_ratio;
    if (rep.implied != cs.expect_implied) {
      b.observe(kInfinity);
      continue;
    }
    if (rep.implied) {
      b.r.constants["K[" + cs.name + "]"] = rep.predicted_constant;
      b.observe(rep.max_ratio / rep.predicted_constant);
    }
  }
  return b.finish(trials);
}

TrialReport collapse(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::Collapse, c, "max(exact residual/1e-10, band drift/2)", 1.0);
  const auto sizes = size_ladder(c, 16);
  const std::size_t trials = trials_or(c, 8);
  b.param("L", static_cast<double>(sizes.front()));
  const auto weight = parse_weight("poly:0.5", 2);
  b.param("weight", weight.to_string());
  std::vector<std::shared_ptr<GaborSystem>> systems;
  std::vector<std::vector<GridSequence>> batches;
  for (auto L : sizes) {
    const std::size_t step = L >= 16 ? 4 : 2;
    systems.push_back(std::make_shared<GaborSystem>(GaborSystem::signal(L, step, step, gaussian_window(L))));
    std::vector<GridSequence> batch;
    for (std::size_t t = 0; t < trials; ++t) batch.push_back(complex_gauss(systems.back()->signal_shape(), rng));
    batches.push_back(std::move(batch));
  }
  for (const std::string spec : {"power:2", "power:1", "power:0.5@0.5", "indicator:1", "entropy", "cosh"}) {
    const auto phi = parse_young(spec);
    std::vector<Band> bands;
    double residual = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const auto rep = collapse_check(batches[i], phi, weight, *systems[i]);
      residual = std::max({residual, std::abs(rep.ratio.max - 1.0), std::abs(rep.ratio.min - 1.0)});
      bands.push_back(rep.ratio);
      b.r.constants["band_max[" + spec + "," + label(sizes[i]) + "]"] = rep.ratio.max;
      b.r.constants["band_min[" + spec + "," + label(sizes[i]) + "]"] = rep.ratio.min;
    }
    if (phi.is_power() || phi.is_indicator()) {
      b.r.constants["residual[" + spec + "]"] = residual;
      b.observe(residual / 1e-10);
    } else {
      const double dr = drift(bands);
      b.r.constants["drift[" + spec + "]"] = dr;
      b.observe(dr / 2.0);
    }
  }
  return b.finish(trials);
}

TrialReport gabor_recon(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::GaborRecon, c, "max ||Df - f|| / ||f||", 1e-10);
  const std::size_t L = order_or(c, 64);
  const std::size_t step = L >= 32 ? 4 : 2;
  const std::size_t trials = trials_or(c, 50);
  b.param("L", static_cast<double>(L));
  b.param("alpha", static_cast<double>(step));
  b.param("beta", static_cast<double>(step));
  b.param("window", std::string("gauss"));
  const auto sys = GaborSystem::signal(L, step, step, gaussian_window(L));
  b.r.constants["frame_lower"] = sys.frame_bounds().lower;
  b.r.constants["frame_upper"] = sys.frame_bounds().upper;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto f = complex_gauss(sys.signal_shape(), rng);
    const auto r1 = sys.synthesis(sys.analysis(f), WindowRole::Dual);
    const auto r2 = sys.synthesis(sys.analysis(f, WindowRole::Dual), WindowRole::Primary);
    b.observe((r1 - f).l2_norm() / f.l2_norm());
    b.observe((r2 - f).l2_norm() / f.l2_norm());
  }
  return b.finish(trials);
}

TrialReport frame_equiv(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::FrameEquiv, c, "band drift of ||V_psi f|| / ||V_phi f|| across L", 2.0);
  b.r.hard = false;
  const auto sizes = size_ladder(c, 16);
  const std::size_t trials = trials_or(c, 8);
  b.param("L", static_cast<double>(sizes.front()));
  b.param("alpha", 2.0);
  b.param("beta", 2.0);
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"power:1", "power:2"}, {"entropy", "entropy"}, {"indicator:1", "power:1"}};
  for (const auto& [s1, s2] : pairs) {
    std::vector<Band> bands;
    for (auto L : sizes) {
      auto sys = std::make_shared<const GaborSystem>(GaborSystem::signal(L, 2, 2, gaussian_window(L)));
      GridSequence dual = sys->dual();
      dual *= 1.0 / dual.l2_norm();
      const GaborSystem alt(L, sys->lattice(), dual);
      const auto spec = two_block_spec(parse_young(s1), parse_young(s2), Weight::one(2), sys);
      Band band = empty_band();
      for (std::size_t t = 0; t < trials; ++t) {
        const auto f = complex_gauss(sys->signal_shape(), rng);
        widen(band, mod_norm_with(f, spec, alt) / mod_norm(f, spec));
      }
      b.r.constants["band_min[" + s1 + "," + s2 + "," + label(L) + "]"] = band.min;
      b.r.constants["band_max[" + s1 + "," + s2 + "," + label(L) + "]"] = band.max;
      bands.push_back(band);
    }
    const double dr = drift(bands);
    b.r.constants["drift[" + s1 + "," + s2 + "]"] = dr;
    b.observe(dr);
  }
  return b.finish(trials);
}

TrialReport u_remark(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::URemark, c, "max relative residual of exact matrix-class identities", 1e-10);
  const std::size_t n = lattice_side(c);
  const std::size_t trials = trials_or(c, 10);
  const GridShape idx{n, n};
  const std::vector<double> steps{2.0, 2.0};
  b.param("lattice", lattice_label(n));
  b.param("L", static_cast<double>(2 * n));
  const auto w = difference_weight(0.5, 2);
  const std::size_t N = idx.size();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto M = make_matrix(complex_matrix(N, rng), idx, steps);
    for (const std::string spec : {"power:1", "power:2", "power:0.5@0.5", "indicator:1"}) {
      const auto phi = parse_young(spec);
      for (const Weight* wp : {static_cast<const Weight*>(nullptr), &w}) {
        const double u = u_norm(M, phi, phi, wp);
        const auto mags = rearranged_magnitudes(M, wp);
        const double flat = luxemburg_norm(std::span<const double>(mags), phi);
        b.observe(std::abs(u - flat) / flat);
      }
    }
    for (const std::string spec : {"entropy", "cosh"}) {
      const auto phi = parse_young(spec);
      const double u = u_norm(M, phi, phi);
      const auto mags = rearranged_magnitudes(M);
      const double flat_rearranged = luxemburg_norm(std::span<const double>(mags), phi);
      std::vector<double> plain(N * N);
      for (std::size_t i = 0; i < N * N; ++i) plain[i] = std::abs(M.entries.data()[i]);
      const double flat = luxemburg_norm(std::span<const double>(plain), phi);
      b.observe(std::abs(flat_rearranged - flat) / flat);
      b.keep_max("band_max[" + spec + "]", u / flat);
      b.keep_min("band_min[" + spec + "]", u / flat);
    }
    // circulant: every row of the rearranged array is the generating sequence
    const auto h = complex_gauss(idx, rng);
    Eigen::MatrixXcd circ(N, N);
    std::vector<long> j(2), k(2), dif(2);
    for (std::size_t r = 0; r < N; ++r) {
      idx.unflatten(r, j);
      for (std::size_t s = 0; s < N; ++s) {
        idx.unflatten(s, k);
        dif = {mod_rep(j[0] - k[0], static_cast<long>(n)), mod_rep(j[1] - k[1], static_cast<long>(n))};
        circ(r, s) = h[idx.flat(dif)];
      }
    }
    const double hr = luxemburg_norm(h.values(), YoungFunction::power(0.5, 0.5));
    b.observe(std::abs(u_norm_inf(make_matrix(circ, idx, steps), 0.5) - hr) / hr);
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t r = 0; r < N; ++r) diag(r, r) = h[r];
    b.observe(std::abs(u_norm_inf(make_matrix(diag, idx, steps), 1.0) - h.max_abs()) / h.max_abs());
  }
  return b.finish(trials);
}

TrialReport thm_aop(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ThmAop, c, "max ||Af|| / (||A||_U(inf,r0) ||f||), nonnegative data", 1.0 + 1e-9);
  const std::size_t n = lattice_side(c);
  const std::size_t trials = trials_or(c, 15);
  const GridShape idx{n, n};
  const std::vector<double> steps{2.0, 2.0};
  b.param("lattice", lattice_label(n));
  b.param("L", static_cast<double>(2 * n));
  const auto w1 = Weight::polynomial(0.5, 2);
  const auto w2 = Weight::polynomial(1.0, 2);
  const auto w = quotient_weight(w2, w1);
  const auto one = Weight::one(2);
  const std::vector<std::size_t> split{1, 1};
  for (double r0 : {1.0, 0.5}) {
    const auto family = order_family(r0);
    for (const auto& p1 : family) {
      for (const auto& p2 : family) {
        const std::vector<YoungFunction> phis{p1, p2};
        for (std::size_t t = 0; t < trials; ++t) {
          const bool weighted = t % 2 == 1;
          const Weight& in = weighted ? w1 : one;
          const Weight& out = weighted ? w2 : one;
          const Weight* mw = weighted ? &w : nullptr;
          const auto M = make_matrix(nonneg_matrix(idx.size(), rng), idx, steps);
          const auto f = nonneg(idx, rng);
          const double ratio = mixed_norm(matrix_apply(M, f), phis, split, out, steps) /
                               (u_norm_inf(M, r0, mw) * mixed_norm(f, phis, split, in, steps));
          b.observe(ratio);
          const auto Mc = make_matrix(complex_matrix(idx.size(), rng), idx, steps);
          const auto fc = complex_gauss(idx, rng);
          b.keep_max("complex_max_ratio", mixed_norm(matrix_apply(Mc, fc), phis, split, out, steps) /
                                              (u_norm_inf(Mc, r0, mw) * mixed_norm(fc, phis, split, in, steps)));
        }
      }
    }
  }
  b.r.constants["nonneg_max_ratio"] = b.r.metric_max;
  return b.finish(trials);
}

TrialReport lemma1_compose(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::Lemma1Compose, c, "max ||A1 A2||_U / (||A1||_U ||A2||_U(inf,r0)), nonnegative data",
            1.0 + 1e-9);
  const std::size_t n = lattice_side(c);
  const std::size_t trials = trials_or(c, 8);
  const GridShape idx{n, n};
  const std::vector<double> steps{2.0, 2.0};
  b.param("lattice", lattice_label(n));
  b.param("L", static_cast<double>(2 * n));
  const auto w = difference_weight(0.5, 2);
  for (double r0 : {1.0, 0.5}) {
    const auto family = order_family(r0);
    for (const auto& p1 : family) {
      for (const auto& p2 : family) {
        for (std::size_t t = 0; t < trials; ++t) {
          const Weight* wp = t % 2 == 1 ? &w : nullptr;
          const auto A1 = make_matrix(nonneg_matrix(idx.size(), rng), idx, steps);
          const auto A2 = make_matrix(nonneg_matrix(idx.size(), rng), idx, steps);
          const double ratio =
              u_norm(compose(A1, A2), p1, p2, wp) / (u_norm(A1, p1, p2, wp) * u_norm_inf(A2, r0, wp));
          b.observe(ratio);
        }
      }
    }
  }
  return b.finish(trials);
}

TrialReport factorization(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::Factorization, c, "max ||Op(a) - D A_a C||_F / ||Op(a)||_F", 1e-8);
  const std::size_t L = order_or(c, 32);
  const std::size_t trials = trials_or(c, 20);
  b.param("L", static_cast<double>(L));
  b.param("alpha", 2.0);
  b.param("beta", 2.0);
  const OperatorFrame frame(L, 2, 2);
  const Eigen::MatrixXcd D1 = frame.system1().synthesis_matrix();
  const Eigen::MatrixXcd C2 = frame.system2().analysis_matrix();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = complex_gauss(symbol_shape(L), rng);
    const Eigen::MatrixXcd op = kernel_from_symbol(a, Quantization::zero());
    const Eigen::MatrixXcd rebuilt = D1 * frame.gabor_matrix(a).entries * C2;
    b.observe(rel_frobenius(rebuilt, op));
  }
  return b.finish(trials);
}

TrialReport calc_transfer(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::CalcTransfer, c, "max normalized residual (operator 1e-8, round trip 1e-12, norm 1e-10)", 1.0);
  const std::size_t L = order_or(c, 16);
  const std::size_t trials = trials_or(c, 10);
  b.param("L", static_cast<double>(L));
  const auto zero = Quantization::zero();
  const auto ident = Quantization::identity();
  const auto weyl = Quantization::weyl();
  // symbol-side system and its transferred window
  const auto window = gaussian_window(L, 2);
  Lattice lat{{2, 2}, {2, 2}};
  const GaborSystem sys(L, lat, window);
  const GaborSystem moved(L, lat, calculus_transfer(window, zero.A, ident.A));
  const auto w = Weight::polynomial(0.5, 4);
  const long Ln = static_cast<long>(L);
  const auto wA = Weight::custom(
      [w, Ln](std::span<const double> z) {
        auto wrap = [Ln](double v) { return static_cast<double>(sym_rep(std::lround(v), Ln)); };
        const double p[] = {wrap(z[0] - z[3]), wrap(z[1] - z[2]), z[2], z[3]};
        return w(std::span<const double>(p, 4));
      },
      4, "transferred");
  const auto steps = sys.coefficient_steps();
  const std::vector<std::size_t> split{2, 2};
  double op_res = 0.0, rt_res = 0.0, path_res = 0.0, norm_res = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = complex_gauss(symbol_shape(L), rng);
    const auto op0 = kernel_from_symbol(a, zero);
    const auto aI = calculus_transfer(a, zero.A, ident.A);
    op_res = std::max(op_res, rel_frobenius(kernel_from_symbol(aI, ident), op0));
    path_res = std::max(path_res, rel_frobenius(kernel_from_symbol(calculus_transfer(aI, ident.A, zero.A), zero),
                                                 operator_matrix(aI, ident)));
    const auto aw = calculus_transfer(a, zero.A, weyl.A);
    path_res = std::max(path_res, rel_frobenius(operator_matrix(aw, weyl), op0));
    const auto back = calculus_transfer(aw, weyl.A, zero.A);
    rt_res = std::max(rt_res, (back - a).max_abs() / a.max_abs());
    for (const auto& pair : {std::pair{"power:1", "power:2"}, std::pair{"entropy", "indicator:1"}}) {
      const std::vector<YoungFunction> phis{parse_young(pair.first), parse_young(pair.second)};
      const double na = mixed_norm(sys.analysis(a), phis, split, w, steps);
      const double nb = mixed_norm(moved.analysis(aI), phis, split, wA, steps);
      norm_res = std::max(norm_res, std::abs(nb / na - 1.0));
    }
  }
  b.r.constants["operator_residual"] = op_res;
  b.r.constants["path_residual"] = path_res;
  b.r.constants["round_trip_residual"] = rt_res;
  b.r.constants["norm_equality_residual"] = norm_res;
  b.observe(op_res / 1e-8);
  b.observe(path_res / 1e-8);
  b.observe(rt_res / 1e-12);
  b.observe(norm_res / 1e-10);
  return b.finish(trials);
}

TrialReport wigner_rank1(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::WignerRank1, c, "max ||Op(cW)g - (g,f2)f1|| / (|f1||f2||g|)", 1e-8);
  const std::size_t L = order_or(c, 16);
  const std::size_t trials = trials_or(c, 50);
  b.param("L", static_cast<double>(L));
  const double cst = rank_one_constant(L);
  b.r.constants["model_constant"] = cst;
  const GridShape shape{L};
  for (const auto& q : {Quantization::zero(), Quantization::identity()}) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto f1 = complex_gauss(shape, rng);
      const auto f2 = complex_gauss(shape, rng);
      const auto g = complex_gauss(shape, rng);
      auto W = wigner(f1, f2, q);
      W *= cst;
      const auto lhs = apply_op(W, q, g);
      const auto rhs = pairing(g, f2) * f1;
      b.observe((lhs - rhs).l2_norm() / (f1.l2_norm() * f2.l2_norm() * g.l2_norm()));
    }
  }
  return b.finish(trials);
}

TrialReport duality_link(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::DualityLink, c, "max |(Op(a)f,g) - c(a,W_{g,f})| / (|a||f||g|)", 1e-8);
  const std::size_t L = order_or(c, 16);
  const std::size_t trials = trials_or(c, 50);
  b.param("L", static_cast<double>(L));
  b.r.constants["model_constant"] = duality_constant(L);
  const GridShape shape{L};
  for (const auto& q : {Quantization::zero(), Quantization::identity()}) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto a = complex_gauss(symbol_shape(L), rng);
      const auto f = complex_gauss(shape, rng);
      const auto g = complex_gauss(shape, rng);
      b.observe(duality_link_residual(a, q, f, g) / (a.l2_norm() * f.l2_norm() * g.l2_norm()));
    }
  }
  return b.finish(trials);
}

TrialReport thm_pseudocont(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ThmPseudoCont, c,
            "max ||Op(a)f||_M / (||C D||_U ||A_a||_U ||f||_M), plus U-norm identity residual/1e-10", 1.0 + 1e-9);
  const std::size_t L = order_or(c, 16);
  const std::size_t trials = trials_or(c, 6);
  b.param("L", static_cast<double>(L));
  b.param("alpha", 2.0);
  b.param("beta", 2.0);
  const OperatorFrame frame(L, 2, 2);
  const auto& sys = frame.system1();
  const auto steps = sys.coefficient_steps();
  const auto w1 = Weight::polynomial(0.5, 2);
  const auto w2 = Weight::polynomial(-0.5, 2);
  const auto w_a = quotient_weight(w2, w1);
  const auto w_cd = quotient_weight(w2, w2);
  const auto CD = frame.transition();
  struct Case {
    std::string phi1, phi2;
    double r0;
  };
  const std::vector<Case> cases{{"power:1", "power:2", 1.0},
                                {"entropy", "indicator:1", 1.0},
                                {"power:0.5@0.5", "power:1@0.5", 0.5}};
  const std::vector<std::size_t> split{1, 1};
  const std::vector<std::size_t> symbol_split{2, 2};
  for (const auto& cs : cases) {
    const std::vector<YoungFunction> phis{parse_young(cs.phi1), parse_young(cs.phi2)};
    const double j1 = u_norm_inf(CD, cs.r0, &w_cd);
    b.r.constants["J_transition[r0=" + std::to_string(cs.r0).substr(0, 3) + "]"] = j1;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto a = complex_gauss(symbol_shape(L), rng);
      const auto f = complex_gauss(sys.signal_shape(), rng);
      const auto A = frame.gabor_matrix(a);
      const auto g = apply_op(a, Quantization::zero(), f);
      const double lhs = mixed_norm(sys.analysis(g), phis, split, w2, steps);
      const double j2 = u_norm_inf(A, cs.r0, &w_a);
      const double rhs = j1 * j2 * mixed_norm(sys.analysis(f), phis, split, w1, steps);
      b.observe(lhs / rhs);
      b.keep_max("max_chain_ratio", lhs / rhs);
      b.keep_max("J_matrix_max", j2);
      // ‖A_a‖ in U^{Φ1,Φ2} equals the lattice norm of V_ψ a, positions inner
      const double u = u_norm(A, phis[0], phis[1]);
      const double v = mixed_norm(frame.symbol_system().analysis(a, WindowRole::Dual), phis, symbol_split);
      const double res = std::abs(u - v) / v;
      b.keep_max("u_norm_identity_residual", res);
      b.observe(res / 1e-10);
    }
  }
  return b.finish(trials);
}

TrialReport thm_pseudocont2_1(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ThmPseudoCont2Part1, c, "max |(a,b)| / (|a|_Phi0 |b|_Phi0*) and matrix form", 2.0 * (1.0 + 1e-9));
  const std::size_t trials = trials_or(c, 40);
  const std::size_t n = lattice_side(c);
  const GridShape idx{n, n};
  const std::vector<double> steps{2.0, 2.0};
  b.param("lattice", lattice_label(n));
  b.param("L", static_cast<double>(2 * n));
  const auto w1 = Weight::polynomial(0.5, 2);
  const auto w2 = Weight::polynomial(0.5, 2);
  const auto w = quotient_weight(w2, w1);
  const OperatorFrame frame(2 * n, 2, 2);
  for (const std::string spec : {"power:2", "entropy"}) {
    const auto phi = parse_young(spec);
    const auto dual = conjugate(phi);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto x = complex_gauss(GridShape{64}, rng);
      const auto y = complex_gauss(GridShape{64}, rng);
      const double holder =
          std::abs(pairing(x, y)) / (luxemburg_norm(x.values(), phi) * luxemburg_norm(y.values(), dual));
      b.observe(holder);
      b.keep_max("holder_ratio[" + spec + "]", holder);
      GaborMatrix M = t % 2 == 0 ? make_matrix(nonneg_matrix(idx.size(), rng), idx, steps)
                                 : frame.gabor_matrix(complex_gauss(symbol_shape(2 * n), rng));
      M.entries = M.entries.cwiseAbs().cast<cplx>();
      const auto f = nonneg(idx, rng);
      const double lhs = luxemburg_norm(matrix_apply(M, f), phi, w2, steps);
      const double fnorm = luxemburg_norm(f, dual, w1, steps);
      const double ratio = lhs / (row_mixed_norm(M, phi, phi, &w) * fnorm);
      b.observe(ratio);
      b.keep_max("matrix_ratio[" + spec + "]", ratio);
      b.keep_max("u_form_ratio[" + spec + "]", lhs / (u_norm(M, phi, phi, &w) * fnorm));
    }
  }
  return b.finish(trials);
}

TrialReport thm_pseudocont2_2(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ThmPseudoCont2Part2, c, "max ||A f||_Phi / (||A||_U(Phi,Phi) ||f||_inf), power kinds",
            1.0 + 1e-9);
  const std::size_t trials = trials_or(c, 40);
  const std::size_t n = lattice_side(c);
  const GridShape idx{n, n};
  const std::vector<double> steps{2.0, 2.0};
  b.param("lattice", lattice_label(n));
  b.param("L", static_cast<double>(2 * n));
  const OperatorFrame frame(2 * n, 2, 2);
  const auto sup = YoungFunction::indicator(1.0);
  const std::vector<std::pair<std::string, YoungFunction>> phis{
      {"power:1", YoungFunction::power(1.0)},
      {"power:0.5@0.5", YoungFunction::power(0.5, 0.5)},
      {"t+t*log(1+t)", YoungFunction::custom([](double t) { return t + t * std::log1p(t); }, 1.0, "linear-entropy")},
  };
  for (const auto& [name, phi] : phis) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto M = t % 2 == 0 ? make_matrix(complex_matrix(idx.size(), rng), idx, steps)
                                : frame.gabor_matrix(complex_gauss(symbol_shape(2 * n), rng));
      const auto f = complex_gauss(idx, rng);
      const double ratio =
          luxemburg_norm(matrix_apply(M, f).values(), phi) / (u_norm(M, phi, phi) * luxemburg_norm(f.values(), sup));
      b.keep_max("ratio[" + name + "]", ratio);
      if (phi.is_power()) b.observe(ratio);
    }
  }
  return b.finish(trials);
}

TrialReport thm_main(const VerifyConfig& c, Rng& rng) {
  Builder b(PropertyId::ThmMain, c,
            "max(chain residual/1e-8, multiplier residual/1e-10, U-chain ratio, symbol bound growth/2)", 1.0 + 1e-9);
  const std::size_t L = order_or(c, 32);
  const std::size_t trials = trials_or(c, 3);
  b.param("L", static_cast<double>(L));
  b.param("alpha", 2.0);
  b.param("beta", 2.0);
  const OperatorFrame frame(L, 2, 2);
  const auto T = frame.transition();
  const auto zero = Quantization::zero();
  struct Pair {
    std::string phi1, phi2;
    double r0;
  };
  const std::vector<Pair> pairs{{"power:1", "power:2", 1.0}, {"entropy", "indicator:1", 1.0},
                                {"power:0.5@0.5", "power:1@0.5", 0.5}};
  double chain = 0.0, mult = 0.0, uchain = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a1 = complex_gauss(symbol_shape(L), rng);
    const auto a2 = complex_gauss(symbol_shape(L), rng);
    const auto A1 = frame.gabor_matrix(a1);
    const auto A2 = frame.gabor_matrix(a2);
    const auto A12 = frame.gabor_matrix(sharp_product(a1, a2, zero));
    chain = std::max(chain, rel_frobenius(A1.entries * T.entries * A2.entries, A12.entries));
    const auto TA2 = compose(T, A2);
    for (const auto& p : pairs) {
      const auto y1 = parse_young(p.phi1);
      const auto y2 = parse_young(p.phi2);
      const double ratio = u_norm(A12, y1, y2) / (u_norm(A1, y1, y2) * u_norm_inf(T, p.r0) * u_norm_inf(A2, p.r0));
      const double inner = u_norm(A12, y1, y2) / (u_norm(A1, y1, y2) * u_norm_inf(TA2, p.r0));
      uchain = std::max({uchain, ratio, inner});
    }
    // Fourier multipliers compose to the pointwise product in every quantization
    GridSequence m1(symbol_shape(L)), m2(symbol_shape(L));
    const auto h1 = complex_gauss(GridShape{L}, rng);
    const auto h2 = complex_gauss(GridShape{L}, rng);
    for (std::size_t x = 0; x < L; ++x) {
      for (std::size_t xi = 0; xi < L; ++xi) {
        m1[x + L * xi] = h1[xi];
        m2[x + L * xi] = h2[xi];
      }
    }
    GridSequence prod(symbol_shape(L));
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = m1[i] * m2[i];
    for (const auto& q : {Quantization::zero(), Quantization::identity(), Quantization::weyl()}) {
      mult = std::max(mult, (sharp_product(m1, m2, q) - prod).max_abs() / prod.max_abs());
    }
  }
  b.r.constants["chain_residual"] = chain;
  b.r.constants["multiplier_residual"] = mult;
  b.r.constants["u_chain_max_ratio"] = uchain;
  b.observe(chain / 1e-8);
  b.observe(mult / 1e-10);
  b.observe(uchain);
  // symbol-level product bound: stability of the empirical constant across L
  const auto sizes = size_ladder(c, 16);
  const std::size_t symbol_trials = std::max<std::size_t>(4, trials);
  for (const auto& p : pairs) {
    std::vector<double> maxima;
    for (auto n : sizes) {
      const OperatorFrame fr(n, 2, 2);
      const auto sys = fr.symbol_system_ptr();
      const auto one = Weight::one(4);
      const ModulationSpaceSpec full{{parse_young(p.phi1), parse_young(p.phi2)}, {2, 2}, one, sys};
      const ModulationSpaceSpec sup{{YoungFunction::indicator(1.0), YoungFunction::power(p.r0, p.r0)}, {2, 2}, one, sys};
      Band band = empty_band();
      for (std::size_t t = 0; t < symbol_trials; ++t) {
        const auto a1 = smooth_symbol(n, rng);
        const auto a2 = smooth_symbol(n, rng);
        const double ratio = mod_norm(sharp_product(a1, a2, zero), full) / (mod_norm(a1, full) * mod_norm(a2, sup));
        widen(band, ratio);
      }
      b.r.constants["symbol_band_max[" + p.phi1 + "," + p.phi2 + "," + label(n) + "]"] = band.max;
      maxima.push_back(band.max);
    }
    const double dr = upward_drift(maxima);
    b.r.constants["symbol_drift[" + p.phi1 + "," + p.phi2 + "]"] = dr;
    b.observe(dr / 2.0);
  }
  return b.finish(trials);
}

using PropertyFn = TrialReport (*)(const VerifyConfig&, Rng&);

PropertyFn dispatch_table(PropertyId id) {
  switch (id) {
    case PropertyId::LemmaT: return lemma_t;
    case PropertyId::ConvLemma: return conv_lemma;
    case PropertyId::PropnCond: return propn_cond;
    case PropertyId::PropInvariance: return prop_invariance;
    case PropertyId::Collapse: return collapse;
    case PropertyId::GaborRecon: return gabor_recon;
    case PropertyId::FrameEquiv: return frame_equiv;
    case PropertyId::URemark: return u_remark;
    case PropertyId::ThmAop: return thm_aop;
    case PropertyId::Lemma1Compose: return lemma1_compose;
    case PropertyId::Factorization: return factorization;
    case PropertyId::CalcTransfer: return calc_transfer;
    case PropertyId::WignerRank1: return wigner_rank1;
    case PropertyId::DualityLink: return duality_link;
    case PropertyId::ThmPseudoCont: return thm_pseudocont;
    case PropertyId::ThmPseudoCont2Part1: return thm_pseudocont2_1;
    case PropertyId::ThmPseudoCont2Part2: return thm_pseudocont2_2;
    case PropertyId::ThmMain: return thm_main;
  }
  throw ContractError("unknown property");
}

// ---------------------------------------------------------------------------
// serialization

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number_from(const json& j) { return j.is_null() ? kInfinity : j.get<double>(); }

json to_json_value(const TrialReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) {
    if (const auto* d = std::get_if<double>(&v)) params[k] = number_or_null(*d); else params[k] = std::get<std::string>(v);
  }
  json constants = json::object();
  for (const auto& [k, v] : r.constants) constants[k] = number_or_null(v);
  json j;
  j["property"] = r.property;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["params"] = std::move(params);
  j["metric"] = {{"name", r.metric_name}, {"max", number_or_null(r.metric_max)}, {"tolerance", number_or_null(r.tolerance)}};
  j["constants"] = std::move(constants);
  j["pass"] = r.pass;
  j["hard"] = r.hard;
  return j;
}

TrialReport from_json_value(const json& j) {
  TrialReport r;
  r.property = j.at("property").get<std::string>();
  r.trials = j.at("trials").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) {
      if (v.is_string()) r.params[k] = v.get<std::string>(); else r.params[k] = number_from(v);
    }
  }
  const auto& m = j.at("metric");
  r.metric_name = m.at("name").get<std::string>();
  r.metric_max = number_from(m.at("max"));
  r.tolerance = number_from(m.at("tolerance"));
  if (j.contains("constants")) {
    for (const auto& [k, v] : j.at("constants").items()) r.constants[k] = number_from(v);
  }
  r.pass = j.at("pass").get<bool>();
  r.hard = j.value("hard", true);
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, PropertyId id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> ids = [] {
    std::vector<PropertyId> v;
    for (const auto& e : kProperties) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string_view property_name(PropertyId id) {
  for (const auto& e : kProperties) {
    if (e.id == id) return e.name;
  }
  throw ContractError("unknown property id");
}

PropertyId parse_property(std::string_view name) {
  for (const auto& e : kProperties) {
    if (e.name == name) return e.id;
  }
  std::string known;
  for (const auto& e : kProperties) known += (known.empty() ? "" : ", ") + std::string(e.name);
  throw ParseError("unknown property '" + std::string(name) + "' (known: " + known + ")");
}

TrialReport run(PropertyId id, const VerifyConfig& config) {
  Rng rng(mix_seed(config.seed, id));
  return dispatch_table(id)(config, rng);
}

SuiteResult run_all(const VerifyConfig& config) {
  std::vector<std::future<TrialReport>> jobs;
  for (auto id : all_properties()) {
    jobs.push_back(std::async(std::launch::async, [id, config] { return run(id, config); }));
  }
  SuiteResult out;
  for (auto& j : jobs) out.reports.push_back(j.get());
  for (const auto& r : out.reports) {
    if (r.hard && !r.pass) out.exit_code = 2;
  }
  return out;
}

std::string report_to_json(const TrialReport& report, int indent) { return to_json_value(report).dump(indent); }

TrialReport report_from_json(std::string_view text) {
  try {
    return from_json_value(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
}

std::vector<TrialReport> reports_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    std::vector<TrialReport> out;
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(from_json_value(item));
    } else {
      out.push_back(from_json_value(j));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
}

std::string reports_to_json(const std::vector<TrialReport>& reports, int indent) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json_value(r));
  return arr.dump(indent);
}

std::string reports_to_csv(const std::vector<TrialReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "property,L,metric_max,tolerance,pass\n";
  for (const auto& r : reports) {
    out << r.property << ',';
    if (auto it = r.params.find("L"); it != r.params.end()) {
      if (const auto* d = std::get_if<double>(&it->second)) out << *d;
    }
    out << ',' << r.metric_max << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace otfa
