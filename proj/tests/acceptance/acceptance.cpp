// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "otfa/gabor.hpp"
#include "otfa/orlicz.hpp"
#include "otfa/psido.hpp"
#include "otfa/verify.hpp"

using namespace otfa;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

GridSequence random_len(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(8, 64);
  return oracle::random_complex(GridShape{len(rng)}, rng);
}

Outcome property(PropertyId id, std::size_t trials) {
  VerifyConfig c;
  c.trials = trials;
  const auto r = run(id, c);
  return {r.pass, std::string(property_name(id)) + fmt(" metric %.3e tolerance %.3e", r.metric_max, r.tolerance)};
}

Outcome power_exactness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const auto phi = YoungFunction::power(p, std::min(p, 1.0));
    for (int i = 0; i < 500; ++i) {
      const auto a = random_len(rng);
      const double want = oracle::lp_norm(a, p);
      worst = std::max(worst, std::abs(luxemburg_norm(a.values(), phi) - want) / want);
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 5.0, fmt("max rel error %.3e, %.2f s", worst, t)};
}

Outcome non_power_oracle() {
  std::mt19937_64 rng(1002);
  const std::vector<std::pair<YoungFunction, std::function<double(double)>>> cases{
      {YoungFunction::entropy(), [](double t) { return t * std::log1p(t); }},
      {YoungFunction::cosh_minus_one(), [](double t) { return std::cosh(t) - 1.0; }},
      {YoungFunction::exp_minus_one(), [](double t) { return std::expm1(t) - t; }},
  };
  double worst = 0.0;
  for (const auto& [phi, f] : cases) {
    for (int i = 0; i < 100; ++i) {
      const auto a = random_len(rng);
      std::vector<double> m;
      for (const auto& v : a.values()) m.push_back(std::abs(v));
      const double want = oracle::luxemburg_scan(m, f);
      worst = std::max(worst, std::abs(luxemburg_norm(a.values(), phi) - want) / want);
    }
  }
  return {worst <= 1e-8, fmt("max rel deviation from grid scan %.3e", worst)};
}

Outcome indicator_sup() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto a = random_len(rng);
    std::vector<double> w(a.size());
    double want = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      w[k] = u(rng);
      want = std::max(want, std::abs(a[k]) * w[k]);
    }
    worst = std::max(worst, std::abs(luxemburg_norm(a.values(), YoungFunction::indicator(1.0), w) - want) / want);
  }
  return {worst <= 1e-14, fmt("max rel error %.3e", worst)};
}

Outcome axioms() {
  std::mt19937_64 rng(1004);
  std::normal_distribution<double> g;
  double hom = 0.0, sub = 0.0;
  for (double r0 : {1.0, 0.5}) {
    const std::vector<YoungFunction> phis{
        YoungFunction::power(std::max(r0, 0.5), r0), YoungFunction::power(2.0, r0),  YoungFunction::indicator(1.0, r0),
        YoungFunction::entropy(r0),                  YoungFunction::cosh_minus_one(r0), YoungFunction::exp_minus_one(r0)};
    for (const auto& phi : phis) {
      for (int i = 0; i < 200; ++i) {
        const auto a = random_len(rng);
        const auto b = oracle::random_complex(a.shape(), rng);
        const cplx c{g(rng), g(rng)};
        const double na = luxemburg_norm(a.values(), phi);
        const double nb = luxemburg_norm(b.values(), phi);
        hom = std::max(hom, std::abs(luxemburg_norm((c * a).values(), phi) - std::abs(c) * na) / (std::abs(c) * na));
        const double lhs = std::pow(luxemburg_norm((a + b).values(), phi), r0);
        const double rhs = std::pow(na, r0) + std::pow(nb, r0);
        sub = std::max(sub, lhs / rhs - 1.0);
      }
    }
  }
  return {hom <= 1e-10 && sub <= 1e-9, fmt("homogeneity %.3e, subadditivity excess %.3e", hom, sub)};
}

Outcome reconstruction() {
  const auto t0 = Clock::now();
  const auto sys = GaborSystem::signal(64, 4, 4, gaussian_window(64));
  std::mt19937_64 rng(1006);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::random_complex(GridShape{64}, rng);
    worst = std::max(worst, (sys.synthesis(sys.analysis(f), WindowRole::Dual) - f).l2_norm() / f.l2_norm());
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 10.0, fmt("max rel error %.3e, %.2f s", worst, t)};
}

Outcome factorization() {
  const OperatorFrame frame(32, 2, 2);
  const Eigen::MatrixXcd D1 = frame.system1().synthesis_matrix();
  const Eigen::MatrixXcd C2 = frame.system2().analysis_matrix();
  std::mt19937_64 rng(1007);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle::random_complex(symbol_shape(32), rng);
    worst = std::max(worst, rel(D1 * frame.gabor_matrix(a).entries * C2, oracle::kernel_1d(a, 0)));
  }
  return {worst <= 1e-8, fmt("max rel Frobenius residual %.3e", worst)};
}

Outcome transfer() {
  std::mt19937_64 rng(1010);
  const auto zero = Quantization::zero().A;
  const auto ident = Quantization::identity().A;
  double op = 0.0, trip = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle::random_complex(symbol_shape(16), rng);
    const auto b = calculus_transfer(a, zero, ident);
    op = std::max(op, rel(oracle::kernel_1d(b, 1), oracle::kernel_1d(a, 0)));
    op = std::max(op, rel(oracle::kernel_1d(calculus_transfer(a, ident, zero), 0), oracle::kernel_1d(a, 1)));
    trip = std::max(trip, (calculus_transfer(b, ident, zero) - a).max_abs() / a.max_abs());
  }
  return {op <= 1e-8 && trip <= 1e-12, fmt("operator residual %.3e, round trip %.3e", op, trip)};
}

Outcome wigner_links() {
  constexpr std::size_t L = 16;
  std::mt19937_64 rng(1011);
  const double c1 = rank_one_constant(L);
  double rank1 = 0.0, link = 0.0;
  for (long A : {0L, 1L}) {
    const auto q = A == 0 ? Quantization::zero() : Quantization::identity();
    for (int i = 0; i < 50; ++i) {
      const auto f1 = oracle::random_complex(GridShape{L}, rng);
      const auto f2 = oracle::random_complex(GridShape{L}, rng);
      const auto g = oracle::random_complex(GridShape{L}, rng);
      const auto W = oracle::wigner_1d(f1, f2, A);
      const Eigen::MatrixXcd K = c1 * oracle::kernel_1d(W, A);
      Eigen::VectorXcd want(L), gv(L);
      cplx s{};
      for (std::size_t k = 0; k < L; ++k) s += g[k] * std::conj(f2[k]);
      for (std::size_t k = 0; k < L; ++k) {
        want(k) = s * f1[k];
        gv(k) = g[k];
      }
      rank1 = std::max(rank1, (K * gv - want).norm() / want.norm());
      const auto a = oracle::random_complex(symbol_shape(L), rng);
      const double scale = a.l2_norm() * f1.l2_norm() * g.l2_norm();
      link = std::max(link, duality_link_residual(a, q, f1, g) / scale);
    }
  }
  return {rank1 <= 1e-8 && link <= 1e-8, fmt("rank-one residual %.3e, duality residual %.3e", rank1, link)};
}

Outcome sharp_chain() {
  constexpr std::size_t L = 32;
  const OperatorFrame frame(L, 2, 2);
  const auto T = frame.transition().entries;
  std::mt19937_64 rng(1014);
  double chain = 0.0, mult = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto a1 = oracle::random_complex(symbol_shape(L), rng);
    const auto a2 = oracle::random_complex(symbol_shape(L), rng);
    const auto a12 = sharp_product(a1, a2, Quantization::zero());
    chain = std::max(chain, rel(frame.gabor_matrix(a1).entries * T * frame.gabor_matrix(a2).entries,
                                frame.gabor_matrix(a12).entries));
    const auto h1 = oracle::random_complex(GridShape{L}, rng);
    const auto h2 = oracle::random_complex(GridShape{L}, rng);
    GridSequence m1(symbol_shape(L)), m2(symbol_shape(L)), prod(symbol_shape(L));
    for (std::size_t x = 0; x < L; ++x) {
      for (std::size_t xi = 0; xi < L; ++xi) {
        m1[x + L * xi] = h1[xi];
        m2[x + L * xi] = h2[xi];
        prod[x + L * xi] = h1[xi] * h2[xi];
      }
    }
    for (const auto& q : {Quantization::zero(), Quantization::identity(), Quantization::weyl()}) {
      mult = std::max(mult, (sharp_product(m1, m2, q) - prod).max_abs() / prod.max_abs());
    }
  }
  return {chain <= 1e-8 && mult <= 1e-10, fmt("chain residual %.3e, multiplier residual %.3e", chain, mult)};
}

Outcome full_suite() {
  const auto t0 = Clock::now();
  const auto suite = run_all(VerifyConfig{});
  const double t = seconds_since(t0);
  std::string failed;
  for (const auto& r : suite.reports) {
    if (!r.pass) failed += " " + r.property;
  }
  return {suite.exit_code == 0 && t < 180.0,
          fmt("exit %.0f, %.1f s, %.0f reports", suite.exit_code, t, static_cast<double>(suite.reports.size())) +
              (failed.empty() ? "" : ", failing:" + failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Luxemburg norm of powers is the closed-form lp norm", power_exactness},
      {"Luxemburg norm of non-powers matches the grid-scan oracle", non_power_oracle},
      {"indicator norm recovers the weighted sup", indicator_sup},
      {"quasi-norm homogeneity and r0-subadditivity", axioms},
      {"convolution bound", [] { return property(PropertyId::ConvLemma, 200); }},
      {"Gabor reconstruction with the canonical dual", reconstruction},
      {"operator factorization through the Gabor matrix", factorization},
      {"matrix operator bound, nonnegative path", [] { return property(PropertyId::ThmAop, 200); }},
      {"matrix composition bound", [] { return property(PropertyId::Lemma1Compose, 200); }},
      {"calculus transfer between quantizations", transfer},
      {"Wigner rank-one identity and duality link", wigner_links},
      {"Orlicz-Hoelder pairing bound and matrix form", [] { return property(PropertyId::ThmPseudoCont2Part1, 200); }},
      {"iterated norm collapse and band stability", [] { return property(PropertyId::PropnCond, 0); }},
      {"sharp product chain and multiplier products", sharp_chain},
      {"full verification suite", full_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
