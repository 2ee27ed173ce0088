#include "otfa/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "otfa/errors.hpp"

namespace otfa {

namespace {

double level(std::span<const double> m, const YoungFunction& phi, double lambda) {
  double s = 0.0;
  for (double v : m) {
    if (v == 0.0) continue;
    s += phi(v / lambda);
    if (std::isinf(s)) return s;
  }
  return s;
}

}  // namespace

double luxemburg_norm(std::span<const double> m, const YoungFunction& phi) {
  double top = 0.0;
  for (double v : m) {
    if (!(v >= 0.0) || std::isinf(v)) throw DomainError("Luxemburg norm needs finite nonnegative magnitudes");
    top = std::max(top, v);
  }
  if (top == 0.0) return 0.0;
  if (const auto* ind = std::get_if<young::Indicator>(&phi.kind())) return top / ind->threshold;

  double hi = top;
  double lo = top;
  if (level(m, phi, hi) > 1.0) {
    do {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw ContractError("Luxemburg bracket diverged for " + phi.to_string());
    } while (level(m, phi, hi) > 1.0);
  } else {
    do {
      hi = lo;
      lo *= 0.5;
      if (lo < top * 1e-300 || lo == 0.0) {
        throw ContractError(phi.to_string() + " vanishes on the sampled range; not a Young function");
      }
    } while (level(m, phi, lo) <= 1.0);
  }
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (level(m, phi, mid) <= 1.0) hi = mid; else lo = mid;
  }
  return hi;
}

std::vector<double> weighted_magnitudes(std::span<const cplx> values, std::span<const double> weight) {
  if (!weight.empty() && weight.size() != values.size()) throw ShapeError("weight size does not match sequence size");
  std::vector<double> m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m[i] = std::abs(values[i]) * (weight.empty() ? 1.0 : weight[i]);
  }
  return m;
}

double luxemburg_norm(std::span<const cplx> values, const YoungFunction& phi, std::span<const double> weight) {
  const auto m = weighted_magnitudes(values, weight);
  return luxemburg_norm(std::span<const double>(m), phi);
}

double luxemburg_norm(const GridSequence& a, const YoungFunction& phi, const Weight& w, std::span<const double> steps) {
  const auto wv = weight_on_grid(w, a.shape(), steps);
  return w.is_one() ? luxemburg_norm(a.values(), phi) : luxemburg_norm(a.values(), phi, wv);
}

double mixed_norm(std::span<const double> magnitudes, const GridShape& shape, std::span<const YoungFunction> phis,
                  std::span<const std::size_t> split) {
  if (magnitudes.size() != shape.size()) throw ShapeError("magnitude count does not match shape");
  if (phis.size() != split.size() || split.empty()) {
    throw ShapeError("mixed norm needs one Young function per axis block");
  }
  std::size_t axes = 0;
  for (auto s : split) {
    if (s == 0) throw ShapeError("axis blocks must be nonempty");
    axes += s;
  }
  if (axes != shape.rank()) {
    throw ShapeError("axis split covers " + std::to_string(axes) + " axes, sequence has " +
                     std::to_string(shape.rank()));
  }
  std::vector<double> current(magnitudes.begin(), magnitudes.end());
  std::size_t first = 0;
  for (std::size_t k = 0; k < split.size(); ++k) {
    const std::size_t chunk = shape.block_size(first, split[k]);
    first += split[k];
    std::vector<double> next(current.size() / chunk);
    for (std::size_t o = 0; o < next.size(); ++o) {
      next[o] = luxemburg_norm(std::span<const double>(current).subspan(o * chunk, chunk), phis[k]);
    }
    current = std::move(next);
  }
  return current.front();
}

double mixed_norm(const GridSequence& a, std::span<const YoungFunction> phis, std::span<const std::size_t> split,
                  std::span<const double> weight) {
  const auto m = weighted_magnitudes(a.values(), weight);
  return mixed_norm(m, a.shape(), phis, split);
}

double mixed_norm(const GridSequence& a, std::span<const YoungFunction> phis, std::span<const std::size_t> split,
                  const Weight& w, std::span<const double> steps) {
  const auto wv = weight_on_grid(w, a.shape(), steps);
  return w.is_one() ? mixed_norm(a, phis, split) : mixed_norm(a, phis, split, wv);
}

double effective_order(std::span<const YoungFunction> phis) {
  double r = 1.0;
  for (const auto& p : phis) r = std::min(r, p.order());
  return r;
}

constexpr std::size_t kDirectConvolution = 1024;

GridSequence convolve(const GridSequence& f, const GridSequence& g) {
  if (!(f.shape() == g.shape())) throw ShapeError("convolve: shape mismatch");
  const auto& shape = f.shape();
  if (shape.size() <= kDirectConvolution) {
    // direct sums keep exact zeros, which quasi-norms with r < 1 are sensitive to
    GridSequence out(shape);
    std::vector<long> j(shape.rank()), k(shape.rank()), d(shape.rank());
    for (std::size_t kf = 0; kf < shape.size(); ++kf) {
      if (f[kf] == cplx{}) continue;
      shape.unflatten(kf, k);
      for (std::size_t jf = 0; jf < shape.size(); ++jf) {
        shape.unflatten(jf, j);
        for (std::size_t a = 0; a < j.size(); ++a) d[a] = mod_rep(j[a] - k[a], static_cast<long>(shape.extent(a)));
        out[jf] += f[kf] * g[shape.flat(d)];
      }
    }
    return out;
  }
  GridSequence F = f;
  GridSequence G = g;
  for (std::size_t a = 0; a < f.rank(); ++a) {
    dft_axis(F, a, -1);
    dft_axis(G, a, -1);
  }
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= G[i];
  for (std::size_t a = 0; a < f.rank(); ++a) {
    dft_axis(F, a, +1, 1.0 / static_cast<double>(f.shape().extent(a)));
  }
  return F;
}

GridSequence translate(const GridSequence& a, std::span<const long> shift) {
  if (shift.size() != a.rank()) throw ShapeError("translate: shift rank mismatch");
  GridSequence out(a.shape());
  std::vector<long> idx(a.rank());
  for (std::size_t f = 0; f < a.size(); ++f) {
    a.shape().unflatten(f, idx);
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] += shift[k];
    out.at(idx) = a[f];
  }
  return out;
}

cplx pairing(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw ShapeError("pairing: size mismatch");
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

cplx pairing(const GridSequence& a, const GridSequence& b) {
  if (!(a.shape() == b.shape())) throw ShapeError("pairing: shape mismatch");
  return pairing(a.values(), b.values());
}

}  // namespace otfa
