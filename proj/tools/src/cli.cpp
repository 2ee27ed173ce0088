#include "otfa_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "otfa/errors.hpp"
#include "otfa/modulation.hpp"
#include "otfa/psido.hpp"
#include "otfa/sequence_io.hpp"
#include "otfa/verify.hpp"

namespace otfa::cli {

namespace {

using nlohmann::json;

/// Bad flag values; reported like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

GridSequence load(const std::string& path) {
  try {
    return read_sequence(path);
  } catch (const ParseError& e) {
    throw IoError(e.what());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
  } else {
    write_text(path, text + "\n");
  }
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_split(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& part : split_list(s, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v <= 0) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw UsageError("--split expects positive integers separated by commas, got '" + s + "'");
    }
  }
  return out;
}

void check_lattice(std::size_t L, std::size_t alpha, std::size_t beta) {
  if (L % 2 != 0) throw UsageError("--L must be even");
  if (alpha == 0 || L % alpha != 0) throw UsageError("--alpha must divide --L");
  if (beta == 0 || L % beta != 0) throw UsageError("--beta must divide --L");
}

GaborSystem make_system(std::size_t L, std::size_t alpha, std::size_t beta, const std::string& window,
                        std::size_t dim) {
  check_lattice(L, alpha, beta);
  Lattice lat{std::vector<std::size_t>(dim, alpha), std::vector<std::size_t>(dim, beta)};
  return GaborSystem(L, lat, parse_window(window, L, dim));
}

std::string seed_help() { return "random seed (default 7, or $OTFA_SEED)"; }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OTFA_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw UsageError(std::string("OTFA_SEED is not an unsigned integer: '") + env + "'");
  }
  return VerifyConfig{}.seed;
}

// ---------------------------------------------------------------------------

struct NormArgs {
  std::string phi, weight = "one", input, mixed, split;
};

int run_norm(const NormArgs& a, std::ostream& out) {
  const auto seq = load(a.input);
  const auto phi = parse_young(a.phi);
  const auto w = parse_weight(a.weight, seq.rank());
  double value = 0.0;
  if (a.mixed.empty()) {
    if (!a.split.empty()) throw UsageError("--split requires --mixed");
    value = luxemburg_norm(seq, phi, w);
  } else {
    const std::vector<YoungFunction> phis{phi, parse_young(a.mixed)};
    std::vector<std::size_t> split;
    if (a.split.empty()) {
      if (seq.rank() % 2 != 0) throw UsageError("--split is required for odd-rank input");
      split = {seq.rank() / 2, seq.rank() / 2};
    } else {
      split = parse_split(a.split);
    }
    value = mixed_norm(seq, phis, split, w);
  }
  out << fmt(value) << '\n';
  return kOk;
}

struct ModnormArgs {
  std::string phi, split, weight = "one", window = "gauss", input;
  std::size_t L = 0, alpha = 0, beta = 0;
};

int run_modnorm(const ModnormArgs& a, std::ostream& out) {
  const auto f = load(a.input);
  const std::size_t d = f.rank();
  const std::size_t L = f.shape().extent(0);
  for (auto n : f.shape().sizes()) {
    if (n != L) throw UsageError("input must have equal extents on every axis");
  }
  if (a.L != 0 && a.L != L) throw UsageError("--L " + std::to_string(a.L) + " does not match the input extent " +
                                             std::to_string(L));
  auto sys = std::make_shared<const GaborSystem>(make_system(L, a.alpha, a.beta, a.window, d));
  std::vector<YoungFunction> phis;
  for (const auto& s : split_list(a.phi, ',')) phis.push_back(parse_young(s));
  std::vector<std::size_t> split;
  if (!a.split.empty()) {
    split = parse_split(a.split);
  } else if (phis.size() == 2) {
    split = {d, d};
  } else if (phis.size() == 2 * d) {
    split.assign(2 * d, 1);
  } else {
    throw UsageError("--split is required for " + std::to_string(phis.size()) + " Young functions");
  }
  const ModulationSpaceSpec spec{phis, split, parse_weight(a.weight, 2 * d), sys};
  out << fmt(mod_norm(f, spec)) << '\n';
  return kOk;
}

struct GaborArgs {
  std::size_t L = 0, alpha = 0, beta = 0, dim = 1;
  std::string window = "gauss", dump_dual, input, output;
};

int run_gabor(const GaborArgs& a, std::ostream& out) {
  const auto sys = make_system(a.L, a.alpha, a.beta, a.window, a.dim);
  if (!a.input.empty()) {
    const auto f = load(a.input);
    emit(a.output, sequence_to_json(sys.analysis(f)), out);
  }
  json summary;
  summary["L"] = a.L;
  summary["alpha"] = a.alpha;
  summary["beta"] = a.beta;
  summary["dim"] = a.dim;
  summary["window"] = a.window;
  summary["is_frame"] = sys.is_frame();
  const auto bounds = sys.frame_bounds();
  summary["frame_bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
  if (!a.dump_dual.empty()) {
    write_sequence(a.dump_dual, sys.dual());
    summary["dual"] = a.dump_dual;
  }
  if (a.input.empty() || !a.output.empty()) out << summary.dump(2) << '\n';
  return kOk;
}

struct PsidoArgs {
  std::size_t L = 0;
  std::string A = "0", symbol, apply, output;
};

int run_psido(const PsidoArgs& a, std::ostream& out) {
  const auto sym = load(a.symbol);
  if (sym.rank() % 2 != 0) throw UsageError("symbol must have even rank (x axes then frequency axes)");
  const std::size_t d = sym.rank() / 2;
  const std::size_t L = sym.shape().extent(0);
  if (!(sym.shape() == symbol_shape(L, d))) throw UsageError("symbol must have equal extents on every axis");
  if (a.L != 0 && a.L != L) throw UsageError("--L " + std::to_string(a.L) + " does not match the symbol extent " +
                                             std::to_string(L));
  const auto q = Quantization::parse(a.A, d);
  if (!a.apply.empty()) {
    const auto f = load(a.apply);
    emit(a.output, sequence_to_json(apply_op(sym, q, f)), out);
    return kOk;
  }
  const Eigen::MatrixXcd K = operator_matrix(sym, q);
  const auto n = static_cast<std::size_t>(K.rows());
  GridSequence kernel(GridShape{n, n}, std::vector<cplx>(K.data(), K.data() + K.size()));
  emit(a.output, sequence_to_json(kernel), out);
  return kOk;
}

struct VerifyArgs {
  std::string property, json_out, csv_out;
  std::size_t trials = 0, L = 0;
  std::optional<std::uint64_t> seed;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyConfig cfg;
  cfg.seed = a.seed ? *a.seed : default_seed();
  cfg.trials = a.trials;
  cfg.L = a.L;
  if (cfg.L != 0 && (cfg.L % 2 != 0 || cfg.L < 8 || cfg.L > 256)) throw UsageError("--L must be even, in [8, 256]");
  std::vector<TrialReport> reports;
  int code = kOk;
  if (!a.property.empty()) {
    reports.push_back(run(parse_property(a.property), cfg));
    if (!reports.front().pass) code = kVerificationFailed;
  } else {
    auto suite = run_all(cfg);
    reports = std::move(suite.reports);
    if (suite.exit_code != 0) code = kVerificationFailed;
  }
  const std::string text = reports.size() == 1 ? report_to_json(reports.front()) : reports_to_json(reports);
  out << text << '\n';
  if (!a.json_out.empty()) write_text(a.json_out, text + "\n");
  if (!a.csv_out.empty()) write_text(a.csv_out, reports_to_csv(reports));
  return code;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string output;
};

int run_report(const ReportArgs& a, std::ostream& out) {
  std::vector<TrialReport> all;
  for (const auto& path : a.inputs) {
    const auto text = read_text(path);
    try {
      auto part = reports_from_json(text);
      all.insert(all.end(), part.begin(), part.end());
    } catch (const ParseError& e) {
      throw IoError(path + ": " + e.what());
    }
  }
  const auto csv = reports_to_csv(all);
  if (a.output.empty()) out << csv; else write_text(a.output, csv);
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz modulation spaces and pseudo-differential operators on finite grids", "otfa"};
  app.require_subcommand(1);

  NormArgs norm;
  auto* c_norm = app.add_subcommand("norm", "Luxemburg or two-level mixed norm of a sequence");
  c_norm->add_option("--phi", norm.phi, "Young function, e.g. power:2, entropy@0.5")->required();
  c_norm->add_option("--weight", norm.weight, "weight: one, poly:s, exp:r, prod:[..;..]");
  c_norm->add_option("--input", norm.input, "sequence JSON")->required();
  c_norm->add_option("--mixed", norm.mixed, "outer Young function for a mixed norm");
  c_norm->add_option("--split", norm.split, "axes per block, inner first, e.g. 1,1");

  ModnormArgs mod;
  auto* c_mod = app.add_subcommand("modnorm", "modulation space norm from lattice Gabor coefficients");
  c_mod->add_option("--phi", mod.phi, "comma separated Young functions, innermost first")->required();
  c_mod->add_option("--split", mod.split, "axes per block over (time, frequency)");
  c_mod->add_option("--weight", mod.weight, "weight on the time-frequency plane");
  c_mod->add_option("--L", mod.L, "group order (checked against the input)");
  c_mod->add_option("--alpha", mod.alpha, "translation step")->required();
  c_mod->add_option("--beta", mod.beta, "modulation step")->required();
  c_mod->add_option("--window", mod.window, "gauss or box:w");
  c_mod->add_option("--input", mod.input, "signal JSON")->required();

  GaborArgs gab;
  auto* c_gab = app.add_subcommand("gabor", "frame bounds, dual window and coefficients of a Gabor system");
  c_gab->add_option("--L", gab.L, "group order")->required();
  c_gab->add_option("--alpha", gab.alpha, "translation step")->required();
  c_gab->add_option("--beta", gab.beta, "modulation step")->required();
  c_gab->add_option("--window", gab.window, "gauss or box:w");
  c_gab->add_option("--dim", gab.dim, "dimension of the signal grid")->check(CLI::Range(1, 4));
  c_gab->add_option("--dump-dual", gab.dump_dual, "write the canonical dual window");
  c_gab->add_option("--input", gab.input, "signal JSON to analyse");
  c_gab->add_option("--output", gab.output, "coefficient JSON (default stdout)");

  PsidoArgs ps;
  auto* c_ps = app.add_subcommand("psido", "kernel of Op_A(a) or its action on a signal");
  c_ps->add_option("--L", ps.L, "group order (checked against the symbol)");
  c_ps->add_option("--A", ps.A, "quantization: 0, I or half");
  c_ps->add_option("--symbol", ps.symbol, "symbol JSON on Z_L^{2d}")->required();
  c_ps->add_option("--apply", ps.apply, "signal JSON to apply the operator to");
  c_ps->add_option("--output", ps.output, "output JSON (default stdout)");

  VerifyArgs ver;
  std::uint64_t seed_value = 0;
  auto* c_ver = app.add_subcommand("verify", "run the randomized property suite");
  c_ver->add_option("--property", ver.property, "single property id (default: all)");
  c_ver->add_option("--trials", ver.trials, "trials per case (default: per property)");
  auto* seed_opt = c_ver->add_option("--seed", seed_value, seed_help());
  c_ver->add_option("--L", ver.L, "group order override");
  c_ver->add_option("--json", ver.json_out, "also write the JSON report here");
  c_ver->add_option("--csv", ver.csv_out, "also write a CSV summary here");

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "merge JSON reports into one CSV");
  c_rep->add_option("--in", rep.inputs, "report JSON files")->required()->expected(1, -1);
  c_rep->add_option("--out", rep.output, "CSV path (default stdout)");

  std::vector<std::string> rest;
  for (std::size_t i = args.size(); i > 1; --i) rest.push_back(args[i - 1]);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_norm) return run_norm(norm, out);
    if (*c_mod) return run_modnorm(mod, out);
    if (*c_gab) return run_gabor(gab, out);
    if (*c_ps) return run_psido(ps, out);
    if (*c_ver) {
      if (*seed_opt) ver.seed = seed_value;
      return run_verify(ver, out);
    }
    if (*c_rep) return run_report(rep, out);
  } catch (const IoError& e) {
    err << "otfa: " << e.what() << '\n';
    return kIoError;
  } catch (const UsageError& e) {
    err << "otfa: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "otfa: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return dispatch(args, out, err);
}

}  // namespace otfa::cli
