#include "otfa/young.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "otfa/errors.hpp"

namespace otfa {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(text) + "' in '" + std::string(context) + "'");
  }
  return value;
}

// e^t - t - 1 without cancellation near zero.
double expm1_minus_t(double t) {
  if (t < 0.1) {
    double term = t * t / 2.0;
    double sum = 0.0;
    for (int n = 3; n < 40 && term > 1e-18 * sum; ++n) {
      sum += term;
      term *= t / n;
    }
    return sum + term;
  }
  return std::expm1(t) - t;
}

// (1+s) log(1+s) - s, series for small s.
double expm1_conjugate(double s) {
  if (s <= 0.0) return 0.0;
  if (s < 0.1) {
    double sum = 0.0;
    double power = s * s;
    for (int n = 2; n < 60; ++n) {
      const double term = power / (static_cast<double>(n) * (n - 1));
      sum += (n % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      power *= s;
    }
    return sum;
  }
  return (1.0 + s) * std::log1p(s) - s;
}

double cosh_conjugate(double s) {
  if (s <= 0.0) return 0.0;
  return s * std::asinh(s) - s * s / (1.0 + std::sqrt(1.0 + s * s));
}

// Root t* of log(1+t) + t/(1+t) = s; conjugate value t*^2/(1+t*).
double entropy_conjugate(double s) {
  if (s <= 0.0) return 0.0;
  auto h = [s](double t) { return std::log1p(t) + t / (1.0 + t) - s; };
  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return kInf;
  }
  double t = std::min(s / 2.0, hi);
  if (t <= lo) t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = h(t);
    if (v == 0.0) break;
    if (v < 0.0) lo = t; else hi = t;
    const double d = 1.0 / (1.0 + t) + 1.0 / ((1.0 + t) * (1.0 + t));
    double next = t - v / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, t)) {
      t = next;
      break;
    }
    t = next;
  }
  return t * t / (1.0 + t);
}

void validate_kind(const young::Kind& kind, double order) {
  std::visit(overloaded{
                 [order](const young::Power& k) {
                   if (!(k.p > 0.0) || !std::isfinite(k.p)) throw ContractError("power exponent must be positive");
                   if (!(k.coeff > 0.0) || !std::isfinite(k.coeff)) throw ContractError("power coefficient must be positive");
                   if (k.p / order < 1.0 - 1e-12) {
                     throw ContractError("power:" + format_number(k.p) + " is not quasi-Young of order " +
                                         format_number(order) + " (needs p/r0 >= 1)");
                   }
                 },
                 [](const young::Indicator& k) {
                   if (!(k.threshold > 0.0) || !std::isfinite(k.threshold)) {
                     throw ContractError("indicator threshold must be positive");
                   }
                 },
                 [](const young::Custom& k) {
                   if (!k.fn || !*k.fn) throw ContractError("custom Young function needs an evaluator");
                 },
                 [](const auto&) {},
             },
             kind);
}

}  // namespace

YoungFunction::YoungFunction(young::Kind kind, double order, YoungValidation validation)
    : kind_(std::move(kind)), order_(order) {
  if (!(order_ > 0.0 && order_ <= 1.0)) {
    throw ContractError("order r0 must lie in (0, 1], got " + format_number(order_));
  }
  validate_kind(kind_, order_);
  if (std::holds_alternative<young::Custom>(kind_)) {
    const auto report = check_base_shape(*this, validation);
    if (!report.ok) {
      throw ContractError("custom function '" + std::get<young::Custom>(kind_).label +
                          "' is not a quasi-Young function of order " + format_number(order_) +
                          " on the sampled grid");
    }
  }
}

YoungFunction YoungFunction::power(double p, double order, double coeff) {
  return YoungFunction(young::Power{p, coeff}, order);
}
YoungFunction YoungFunction::indicator(double threshold, double order) {
  return YoungFunction(young::Indicator{threshold}, order);
}
YoungFunction YoungFunction::entropy(double order) { return YoungFunction(young::Entropy{}, order); }
YoungFunction YoungFunction::cosh_minus_one(double order) { return YoungFunction(young::CoshMinusOne{}, order); }
YoungFunction YoungFunction::exp_minus_one(double order) { return YoungFunction(young::ExpMinusOne{}, order); }

YoungFunction YoungFunction::custom(std::function<double(double)> fn, double order, std::string label,
                                    YoungValidation validation) {
  young::Custom c{std::make_shared<const std::function<double(double)>>(std::move(fn)), std::move(label)};
  return YoungFunction(std::move(c), order, validation);
}

double YoungFunction::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("Young functions are defined for t >= 0");
  if (t == 0.0) return 0.0;
  return std::visit(overloaded{
                        [t](const young::Power& k) { return k.coeff * std::pow(t, k.p); },
                        [t](const young::Indicator& k) { return t <= k.threshold ? 0.0 : kInf; },
                        [t](const young::Entropy&) { return t * std::log1p(t); },
                        [t](const young::CoshMinusOne&) {
                          const double s = std::sinh(0.5 * t);
                          return 2.0 * s * s;
                        },
                        [t](const young::ExpMinusOne&) { return expm1_minus_t(t); },
                        [t](const young::Custom& k) { return (*k.fn)(t); },
                    },
                    kind_);
}

double YoungFunction::base(double u) const {
  if (!(u >= 0.0)) throw DomainError("Young functions are defined for t >= 0");
  return (*this)(order_ == 1.0 ? u : std::pow(u, 1.0 / order_));
}

std::string YoungFunction::to_string() const {
  std::string s = std::visit(overloaded{
                                 [](const young::Power& k) {
                                   std::string r = "power:" + format_number(k.p);
                                   if (k.coeff != 1.0) r += ":" + format_number(k.coeff);
                                   return r;
                                 },
                                 [](const young::Indicator& k) { return "indicator:" + format_number(k.threshold); },
                                 [](const young::Entropy&) { return std::string("entropy"); },
                                 [](const young::CoshMinusOne&) { return std::string("cosh"); },
                                 [](const young::ExpMinusOne&) { return std::string("expm1"); },
                                 [](const young::Custom& k) { return k.label; },
                             },
                             kind_);
  if (order_ != 1.0) s += "@" + format_number(order_);
  return s;
}

double evaluate(const YoungFunction& phi, double t) { return phi(t); }

YoungFunction parse_young(std::string_view spec) {
  const std::string full(spec);
  std::string_view body = spec;
  double order = 1.0;
  if (auto at = spec.find('@'); at != std::string_view::npos) {
    body = spec.substr(0, at);
    order = parse_number(spec.substr(at + 1), full);
  }
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    auto next = body.find(':', pos);
    parts.push_back(body.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  const auto& name = parts[0];
  try {
    if (name == "power" && (parts.size() == 2 || parts.size() == 3)) {
      const double p = parse_number(parts[1], full);
      const double c = parts.size() == 3 ? parse_number(parts[2], full) : 1.0;
      return YoungFunction::power(p, order, c);
    }
    if (name == "indicator" && parts.size() <= 2) {
      return YoungFunction::indicator(parts.size() == 2 ? parse_number(parts[1], full) : 1.0, order);
    }
    if (parts.size() == 1) {
      if (name == "entropy") return YoungFunction::entropy(order);
      if (name == "cosh") return YoungFunction::cosh_minus_one(order);
      if (name == "expm1") return YoungFunction::exp_minus_one(order);
    }
  } catch (const ContractError& e) {
    throw ParseError("invalid Young function '" + full + "': " + e.what());
  }
  throw ParseError("unknown Young function spec '" + full +
                   "' (expected power:p[:c], indicator:a, entropy, cosh, expm1, optional @r0)");
}

double numeric_conjugate(const std::function<double(double)>& f, double s) {
  if (!(s > 0.0)) return 0.0;
  auto g = [&](double t) {
    const double v = f(t);
    return std::isfinite(v) ? s * t - v : -kInf;
  };
  constexpr double invphi = 0.6180339887498948482;
  double T = 1.0;
  for (int doubling = 0; doubling < 2000; ++doubling) {
    double a = 0.0;
    double b = T;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double gc = g(c);
    double gd = g(d);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * T; ++it) {
      if (gc >= gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - invphi * (b - a);
        gc = g(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + invphi * (b - a);
        gd = g(d);
      }
    }
    const double t = 0.5 * (a + b);
    const double best = std::max({g(t), gc, gd, 0.0});
    if (t < 0.9 * T) return best;
    if (!std::isfinite(T * 2.0) || !std::isfinite(best)) return kInf;
    T *= 2.0;
  }
  return kInf;
}

YoungFunction conjugate(const YoungFunction& phi) {
  if (phi.order() != 1.0) {
    throw ContractError("conjugate is defined for Young functions (order 1) only, got order " +
                        format_number(phi.order()));
  }
  return std::visit(
      overloaded{
          [](const young::Power& k) {
            if (k.p == 1.0) return YoungFunction::indicator(k.coeff);
            const double q = k.p / (k.p - 1.0);
            const double c = (k.p - 1.0) / k.p * std::pow(k.coeff * k.p, -1.0 / (k.p - 1.0));
            return YoungFunction::power(q, 1.0, c);
          },
          [](const young::Indicator& k) { return YoungFunction::power(1.0, 1.0, k.threshold); },
          [](const young::Entropy&) {
            return YoungFunction::custom([](double s) { return entropy_conjugate(s); }, 1.0, "entropy*");
          },
          [](const young::CoshMinusOne&) {
            return YoungFunction::custom([](double s) { return cosh_conjugate(s); }, 1.0, "cosh*");
          },
          [](const young::ExpMinusOne&) {
            return YoungFunction::custom([](double s) { return expm1_conjugate(s); }, 1.0, "expm1*");
          },
          [](const young::Custom& k) {
            auto fn = k.fn;
            return YoungFunction::custom([fn](double s) { return numeric_conjugate(*fn, s); }, 1.0,
                                         k.label + "*");
          },
      },
      phi.kind());
}

Domination dominates_near_zero(const YoungFunction& psi, const YoungFunction& phi, double t0,
                               std::size_t samples) {
  if (!(t0 > 0.0)) throw DomainError("t0 must be positive");
  if (samples < 2) throw ContractError("dominates_near_zero needs at least two samples");
  auto ratio = [](double num, double den) {
    if (num == den) return 1.0;  // 0/0 and inf/inf
    if (den == 0.0 || std::isinf(num)) return kInf;
    return num / den;
  };
  const double span = 12.0;
  double sup_full = 0.0;
  double sup_upper = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double e = -span * (1.0 - static_cast<double>(i) / static_cast<double>(samples - 1));
    const double t = t0 * std::pow(10.0, e);
    const double r = ratio(psi(t), phi(t));
    sup_full = std::max(sup_full, r);
    if (e >= -6.0) sup_upper = std::max(sup_upper, r);
  }
  Domination out;
  out.constant = sup_full;
  out.bounded = std::isfinite(sup_full) && sup_full <= 2.0 * sup_upper + 1e-300;
  if (sup_full == 0.0) out.bounded = true;
  return out;
}

ShapeReport check_base_shape(const YoungFunction& phi, const YoungValidation& validation) {
  ShapeReport report;
  const std::size_t n = std::max<std::size_t>(validation.samples, 3);
  std::vector<double> u(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = validation.horizon * static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = phi.base(u[i]);
    if (std::isnan(v[i]) || v[i] < 0.0) {
      report.ok = false;
      report.worst_monotonicity_violation = kInf;
      return report;
    }
  }
  if (v[0] != 0.0) report.ok = false;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] < v[i - 1]) {
      const double viol = (v[i - 1] - v[i]) / std::max(1.0, v[i - 1]);
      report.worst_monotonicity_violation = std::max(report.worst_monotonicity_violation, viol);
      if (viol > validation.slack) report.ok = false;
    }
  }
  for (std::size_t stride = 1; stride < n / 2; stride *= 2) {
    for (std::size_t i = stride; i + stride < n; ++i) {
      const double avg = 0.5 * (v[i - stride] + v[i + stride]);
      if (std::isinf(avg)) continue;
      if (std::isinf(v[i])) {
        report.ok = false;
        report.worst_convexity_violation = kInf;
        continue;
      }
      const double viol = (v[i] - avg) / std::max(1.0, avg);
      if (viol > 0.0) {
        report.worst_convexity_violation = std::max(report.worst_convexity_violation, viol);
        if (viol > validation.slack) report.ok = false;
      }
    }
  }
  if (!(v[n - 1] > 0.0)) report.ok = false;
  return report;
}

}  // namespace otfa
