// Command-line front end: eigenstate construction for the two-site
// Bose-Hubbard dimer via Bethe rapidities, with exact-diagonalization
// cross-checks and the full verification suite.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "bethe/bae.hpp"
#include "bethe/checks.hpp"
#include "bethe/correlators.hpp"
#include "bethe/json_writer.hpp"
#include "bethe/parallel.hpp"
#include "bethe/roots_parse.hpp"

namespace {

using namespace bethe;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitIncomplete = 3;

struct Options {
  int N = -1;
  std::optional<double> K, dmu, ej;
  std::optional<double> eta, omega;
  double tol = 1e-10;
  int attempts = 0;  // 0 resolves to 200*(N+1)
  std::uint64_t seed = 0;
  std::string format = "json";
  bool normalized = false;
  int index = 0;
  int bra = 0;
  int ket = 0;
  std::string bra_roots, ket_roots;
  double start_scale = 2.0;
  int max_iter = 80;
};

struct ResolvedParams {
  ModelParams mp;
  ABAParams aba;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ResolvedParams resolve_params(const Options& o) {
  const bool physical = o.K.has_value() || o.dmu.has_value() || o.ej.has_value();
  const bool integrable = o.eta.has_value() || o.omega.has_value();
  if (physical == integrable) {
    throw ConfigError("give exactly one parameter group: --K/--dmu/--ej or --eta/--omega");
  }
  ResolvedParams r;
  if (physical) {
    if (!o.K || !o.ej) throw ConfigError("physical input needs both --K and --ej");
    r.mp = {*o.K, o.dmu.value_or(0.0), *o.ej};
    r.mp.validate();
    r.aba = to_aba(r.mp);
  } else {
    if (!o.eta) throw ConfigError("integrable input needs --eta");
    r.aba = {*o.eta, o.omega.value_or(0.0)};
    r.aba.validate();
    r.mp = to_physical(r.aba);
  }
  return r;
}

int resolved_attempts(const Options& o, int N) {
  return o.attempts > 0 ? o.attempts : 200 * (N + 1);
}

SolverConfig solver_config(const Options& o, const ResolvedParams& p, int N) {
  SolverConfig cfg;
  cfg.attempts = resolved_attempts(o, N);
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.seed = o.seed;
  cfg.radius_scale = o.start_scale;
  cfg.ej = p.mp.ej;
  return cfg;
}

json::Value config_json(const std::string& mode, const Options& o, const ResolvedParams& p,
                        int N) {
  json::Value params = json::Value::object();
  params.set("K", p.mp.K);
  params.set("dmu", p.mp.dmu);
  params.set("ej", p.mp.ej);
  params.set("eta", p.aba.eta);
  params.set("omega", p.aba.omega);

  json::Value cfg = json::Value::object();
  cfg.set("N", N);
  cfg.set("attempts", resolved_attempts(o, N));
  cfg.set("format", o.format);
  cfg.set("mode", mode);
  cfg.set("normalized", o.normalized);
  cfg.set("params", std::move(params));
  cfg.set("seed", o.seed);
  cfg.set("start_scale", o.start_scale);
  cfg.set("tol", o.tol);
  return cfg;
}

void emit(json::Value config, json::Value results, json::Value checks) {
  json::Value top = json::Value::object();
  top.set("checks", std::move(checks));
  top.set("config", std::move(config));
  top.set("results", std::move(results));
  std::cout << top.dump() << '\n';
}

void csv_line(std::initializer_list<double> values) {
  bool first = true;
  char buf[32];
  for (double v : values) {
    if (!first) std::cout << ',';
    first = false;
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    std::cout << buf;
  }
  std::cout << '\n';
}

json::Value solution_json(const TaggedSolution& sol, int index) {
  json::Value item = json::Value::object();
  item.set("conjugation_closed", sol.conjugation_closed);
  item.set("eigvec_residual", sol.eigvec_residual);
  item.set("energy", sol.energy);
  item.set("index", index);
  item.set("norm", std::sqrt(sol.norm2));
  item.set("residual", sol.roots.residual);
  item.set("residual_raw", sol.roots.residual_raw);
  item.set("roots", json::complex_list(sol.roots.v));
  item.set("seeded", sol.seeded);
  return item;
}

int run_spectrum(const Options& o, const ResolvedParams& p) {
  if (o.N < 0) throw ConfigError("spectrum needs --N");
  const SolveReport report = find_all_solutions(p.aba, o.N, solver_config(o, p, o.N));
  const Spectrum exact = exact_spectrum(p.mp, o.N);

  if (o.format == "csv") {
    std::cout << "index,energy_exact,energy_bethe\n";
    for (int i = 0; i <= o.N; ++i) {
      const bool have = i < static_cast<int>(report.solutions.size());
      csv_line({static_cast<double>(i), exact.values(i),
                have ? report.solutions[i].energy : std::nan("")});
    }
  } else {
    json::Value results = json::Value::array();
    for (int i = 0; i <= o.N; ++i) {
      json::Value item = json::Value::object();
      item.set("energy_exact", exact.values(i));
      if (i < static_cast<int>(report.solutions.size())) {
        const TaggedSolution& sol = report.solutions[i];
        item.set("energy_bethe", sol.energy);
        item.set("energy_gap", std::abs(sol.energy - exact.values(i)));
        item.set("residual", sol.roots.residual);
        item.set("roots", json::complex_list(sol.roots.v));
        item.set("seeded", sol.seeded);
      } else {
        item.set("energy_bethe", nullptr);
      }
      item.set("index", i);
      results.push_back(std::move(item));
    }
    emit(config_json("spectrum", o, p, o.N), std::move(results), json::Value::array());
  }
  if (!report.complete) {
    std::cerr << "incomplete: found " << report.solutions.size() << " of " << (o.N + 1)
              << " root sets\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

int run_roots(const Options& o, const ResolvedParams& p) {
  if (o.N < 0) throw ConfigError("roots needs --N");
  const SolveReport report = find_all_solutions(p.aba, o.N, solver_config(o, p, o.N));

  if (o.format == "csv") {
    std::cout << "solution,root,re,im\n";
    for (std::size_t s = 0; s < report.solutions.size(); ++s) {
      const auto& v = report.solutions[s].roots.v;
      for (std::size_t k = 0; k < v.size(); ++k) {
        csv_line({static_cast<double>(s), static_cast<double>(k), v[k].real(), v[k].imag()});
      }
      if (v.empty()) csv_line({static_cast<double>(s)});
    }
  } else {
    json::Value results = json::Value::array();
    for (std::size_t s = 0; s < report.solutions.size(); ++s) {
      results.push_back(solution_json(report.solutions[s], static_cast<int>(s)));
    }
    emit(config_json("roots", o, p, o.N), std::move(results), json::Value::array());
  }
  if (!report.complete) {
    std::cerr << "incomplete: found " << report.solutions.size() << " of " << (o.N + 1)
              << " root sets\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

int run_state(const Options& o, const ResolvedParams& p) {
  if (o.N < 0) throw ConfigError("state needs --N");
  const SolveReport report = find_all_solutions(p.aba, o.N, solver_config(o, p, o.N));
  if (o.index < 0 || o.index >= static_cast<int>(report.solutions.size())) {
    throw ConfigError("solution index " + std::to_string(o.index) + " out of range (found " +
                      std::to_string(report.solutions.size()) + ")");
  }
  const TaggedSolution& sol = report.solutions[o.index];
  Eigen::VectorXcd amps = sol.state;
  if (o.normalized) amps /= std::sqrt(sol.norm2);

  if (o.format == "csv") {
    std::cout << "component,re,im,abs\n";
    for (int k = 0; k < amps.size(); ++k) {
      csv_line({static_cast<double>(k), amps(k).real(), amps(k).imag(), std::abs(amps(k))});
    }
  } else {
    json::Value amplitudes = json::Value::array();
    for (int k = 0; k < amps.size(); ++k) amplitudes.push_back(json::complex_value(amps(k)));
    json::Value item = solution_json(sol, o.index);
    item.set("amplitudes", std::move(amplitudes));
    json::Value results = json::Value::array();
    results.push_back(std::move(item));
    emit(config_json("state", o, p, o.N), std::move(results), json::Value::array());
  }
  return report.complete ? kExitOk : kExitIncomplete;
}

struct SideSpec {
  std::vector<Complex> roots;
  bool on_shell = false;
  int index = -1;  // -1 means explicit roots
};

int run_overlap(const Options& o, const ResolvedParams& p, Weight weight) {
  const char* mode_name = weight == Weight::Imbalance ? "form-factor" : "overlap";
  SideSpec bra, ket;
  const bool bra_explicit = !o.bra_roots.empty();
  const bool ket_explicit = !o.ket_roots.empty();

  try {
    if (bra_explicit) bra.roots = parse_offshell_roots(o.bra_roots);
    if (ket_explicit) ket.roots = parse_offshell_roots(o.ket_roots);
  } catch (const RootsParseError& e) {
    throw ConfigError(std::string("bad rapidity list: ") + e.what());
  }

  int N = o.N;
  if (bra_explicit) {
    const int n = static_cast<int>(bra.roots.size());
    if (N >= 0 && N != n) throw ConfigError("--N disagrees with the bra root count");
    N = n;
  }
  if (ket_explicit) {
    const int n = static_cast<int>(ket.roots.size());
    if (N >= 0 && N != n) throw ConfigError("--N disagrees with the ket root count");
    N = n;
  }
  if (N < 0) throw ConfigError(std::string(mode_name) + " needs --N or explicit root lists");
  if (weight == Weight::Imbalance && N < 1) throw ConfigError("form factor needs N >= 1");

  bool complete = true;
  if (!bra_explicit || !ket_explicit) {
    const SolveReport report = find_all_solutions(p.aba, N, solver_config(o, p, N));
    complete = report.complete;
    const auto pick = [&report](int index, SideSpec& side) {
      if (index < 0 || index >= static_cast<int>(report.solutions.size())) {
        throw ConfigError("solution index " + std::to_string(index) + " out of range (found " +
                          std::to_string(report.solutions.size()) + ")");
      }
      side.roots = report.solutions[index].roots.v;
      side.on_shell = true;
      side.index = index;
    };
    if (!bra_explicit) pick(o.bra, bra);
    if (!ket_explicit) pick(o.ket, ket);
  }

  const OverlapReport rep = compare(bra.roots, ket.roots, p.aba, weight, bra.on_shell,
                                    ket.on_shell);
  Complex normalized_value{0.0, 0.0};
  if (o.normalized) {
    const CoeffTableC table(N, p.aba.eta);
    const double nb = norm_formula(compute_F(f_values(bra.roots, p.aba.omega)), table, N);
    const double nk = norm_formula(compute_F(f_values(ket.roots, p.aba.omega)), table, N);
    normalized_value = rep.formula_value / std::sqrt(nb * nk);
  }

  if (o.format == "csv") {
    std::cout << "formula_re,formula_im,oracle_re,oracle_im,rel_error\n";
    csv_line({rep.formula_value.real(), rep.formula_value.imag(), rep.oracle_value.real(),
              rep.oracle_value.imag(), rep.rel_error});
  } else {
    const auto side_json = [](const SideSpec& side) {
      json::Value v = json::Value::object();
      v.set("index", side.index >= 0 ? json::Value(side.index) : json::Value(nullptr));
      v.set("on_shell", side.on_shell);
      v.set("roots", json::complex_list(side.roots));
      return v;
    };
    json::Value item = json::Value::object();
    item.set("bra", side_json(bra));
    item.set("formula", json::complex_value(rep.formula_value));
    item.set("ket", side_json(ket));
    if (o.normalized) item.set("normalized_value", json::complex_value(normalized_value));
    item.set("oracle", json::complex_value(rep.oracle_value));
    item.set("rel_error", rep.rel_error);
    json::Value results = json::Value::array();
    results.push_back(std::move(item));
    emit(config_json(mode_name, o, p, N), std::move(results), json::Value::array());
  }
  return complete ? kExitOk : kExitIncomplete;
}

int run_verify(const Options& o, const ResolvedParams& p) {
  VerifySettings settings;
  settings.N = o.N >= 0 ? o.N : 6;
  settings.params = p.aba;
  settings.tol = o.tol;
  settings.attempts = o.attempts;
  settings.seed = o.seed;
  const std::vector<CheckResult> checks = run_verification(settings);

  bool all_pass = true;
  if (o.format == "csv") {
    std::cout << "check,value,threshold,pass\n";
    for (const CheckResult& c : checks) {
      all_pass = all_pass && c.pass;
      char buf[32];
      std::cout << c.name << ',';
      std::snprintf(buf, sizeof(buf), "%.9g", c.value);
      std::cout << buf << ',';
      std::snprintf(buf, sizeof(buf), "%.9g", c.threshold);
      std::cout << buf << ',' << (c.pass ? 1 : 0) << '\n';
    }
  } else {
    json::Value list = json::Value::array();
    for (const CheckResult& c : checks) {
      all_pass = all_pass && c.pass;
      // No timing field: output must be byte-identical for a fixed config.
      json::Value item = json::Value::object();
      item.set("name", c.name);
      item.set("pass", c.pass);
      item.set("threshold", c.threshold);
      item.set("value", c.value);
      list.push_back(std::move(item));
    }
    emit(config_json("verify", o, p, o.N >= 0 ? o.N : 6), json::Value::array(),
         std::move(list));
  }
  for (const CheckResult& c : checks) {
    if (!c.pass) std::cerr << "check failed: " << c.name << " value=" << c.value << '\n';
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

void add_common_options(CLI::App* cmd, Options& o, bool solver_opts) {
  cmd->add_option("--N", o.N, "total particle number (sector label)");
  cmd->add_option("--K", o.K, "interaction strength (physical group)");
  cmd->add_option("--dmu", o.dmu, "external potential (physical group)");
  cmd->add_option("--ej", o.ej, "tunnelling amplitude (physical group)");
  cmd->add_option("--eta", o.eta, "quantum parameter (integrable group)");
  cmd->add_option("--omega", o.omega, "inhomogeneity (integrable group)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--tol", o.tol, "solver tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (solver_opts) {
    cmd->add_option("--attempts", o.attempts, "multi-start attempts (0 = 200*(N+1))")
        ->capture_default_str();
    cmd->add_option("--start-scale", o.start_scale, "start disk radius scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "Newton iteration cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bethe-state toolkit for the two-site Bose-Hubbard dimer"};
  app.require_subcommand(1);

  Options o;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "exact eigenvalues next to the rapidity-tagged energies");
  CLI::App* roots = app.add_subcommand("roots", "all solved rapidity sets with residuals");
  CLI::App* state = app.add_subcommand("state", "sector amplitudes of one solution");
  CLI::App* overlap = app.add_subcommand("overlap", "scalar product, formula versus oracle");
  CLI::App* form_factor =
      app.add_subcommand("form-factor", "imbalance form factor, formula versus oracle");
  CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");

  for (CLI::App* cmd : {spectrum, roots, state, overlap, form_factor}) {
    add_common_options(cmd, o, true);
  }
  add_common_options(verify, o, false);
  verify->add_option("--attempts", o.attempts, "multi-start attempts (0 = 200*(N+1))")
      ->capture_default_str();

  state->add_option("--index", o.index, "solution index (energy order)")
      ->capture_default_str();
  state->add_flag("--normalized", o.normalized, "emit unit-norm amplitudes");
  for (CLI::App* cmd : {overlap, form_factor}) {
    cmd->add_option("--bra", o.bra, "bra solution index")->capture_default_str();
    cmd->add_option("--ket", o.ket, "ket solution index")->capture_default_str();
    cmd->add_option("--bra-roots", o.bra_roots, "explicit bra rapidities, e.g. 0.5+0.5i,0.5-0.5i");
    cmd->add_option("--ket-roots", o.ket_roots, "explicit ket rapidities");
    cmd->add_flag("--normalized", o.normalized, "also report the normalized value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    const ResolvedParams p = resolve_params(o);
    if (app.got_subcommand(spectrum)) return run_spectrum(o, p);
    if (app.got_subcommand(roots)) return run_roots(o, p);
    if (app.got_subcommand(state)) return run_state(o, p);
    if (app.got_subcommand(overlap)) return run_overlap(o, p, Weight::None);
    if (app.got_subcommand(form_factor)) return run_overlap(o, p, Weight::Imbalance);
    if (app.got_subcommand(verify)) return run_verify(o, p);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitBadConfig;
}
