#pragma once

// Command dispatch for the ordercdf tool. Everything writes to the given
// streams so the tests can drive it in-process.
//
// Exit codes: 0 ok, 2 config or usage error, 3 domain error, 4 unsupported
// space, 5 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordercdf/cli/config.hpp"
#include "ordercdf/integration.hpp"
#include "ordercdf/oracle/proposition_suite.hpp"
#include "ordercdf/pseudo_inverse.hpp"
#include "ordercdf/sampling.hpp"

namespace ordercdf::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDomainError = 3,
  kUnsupportedSpace = 4,
  kVerificationFailure = 5,
};

inline std::string fmt15(double v) { return text::format_value(v); }

namespace detail {

inline std::string param_string(const json& params, const char* key, const char* command) {
  if (!params.contains(key)) {
    throw ConfigError(std::string("params.") + key, std::string(command) + " needs --" + key);
  }
  const auto& v = params.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return text::format_real(v.get<double>());
  throw ConfigError(std::string("params.") + key, "expected a string or number");
}

template <class T>
T param_number(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("params.") + key, "expected a number");
  }
}

inline bool param_flag(const json& params, const char* key) {
  return params.contains(key) && params.at(key).is_boolean() && params.at(key).get<bool>();
}

// Built-in integrands: one, x, x^2, exp, sin, indicator:<union>. x is the
// point's numeric value (the rank on finite spaces, the inner coordinate on
// lex spaces).
template <OrderedSpace S>
Integrand<typename S::point_type> builtin_integrand(const S& space, const std::string& expr) {
  using P = typename S::point_type;
  auto val = [space](const P& x) { return space.numeric_value(x); };
  if (expr == "one") return {[](const P&) { return 1.0; }, {}, expr};
  if (expr == "x") return {val, {}, expr};
  if (expr == "x^2") return {[val](const P& x) { return val(x) * val(x); }, {}, expr};
  if (expr == "exp") return {[val](const P& x) { return std::exp(val(x)); }, {}, expr};
  if (expr == "sin") return {[val](const P& x) { return std::sin(val(x)); }, {}, expr};
  constexpr std::string_view prefix = "indicator:";
  if (expr.starts_with(prefix)) {
    const auto u = parse_union(space, std::string_view(expr).substr(prefix.size()));
    std::vector<P> breaks;
    for (const auto& iv : u.intervals()) {
      if (iv.lo.is_point()) breaks.push_back(iv.lo.point());
      if (iv.hi.is_point()) breaks.push_back(iv.hi.point());
    }
    return {[space, u](const P& x) { return membership(space, x, u) ? 1.0 : 0.0; }, breaks, expr};
  }
  throw ConfigError("params.expr",
                    "unknown expression '" + expr + "' (one, x, x^2, exp, sin, indicator:<union>)");
}

inline bool suite_lines(const oracle::SuiteReport& rep, std::ostream& out) {
  bool ok = true;
  for (const auto& r : rep.results) {
    json line{{"proposition", r.name}, {"instance", rep.instance}, {"status", oracle::to_string(r.status)}};
    if (!r.witness.empty()) line["witness"] = r.witness;
    out << line.dump() << '\n';
    ok = ok && r.status != oracle::Status::fail;
  }
  return ok;
}

template <OrderedSpace S>
oracle::SuiteReport run_suite(const MeasureSpec<S>& spec, const std::string& name) {
  if constexpr (!S::has_continuum) {
    if (spec.space().grid_size(1.0) <= oracle::kMaxFiniteCase) {
      return oracle::check_proposition_suite(oracle::FiniteCase<S>(spec), name);
    }
  }
  return oracle::check_proposition_suite(PseudoInverse<S>(spec), name);
}

inline bool verify_spec(const AnySpec& spec, const std::string& name, std::ostream& out) {
  return std::visit([&](const auto& ms) { return suite_lines(run_suite(ms, name), out); },
                    spec);
}

template <OrderedSpace S>
int run_command(const RunConfig& cfg, const MeasureSpec<S>& spec, std::ostream& out) {
  using P = typename S::point_type;
  const auto& cmd = cfg.command;
  const auto& prm = cfg.params;
  const S& space = spec.space();
  auto parse_point = [&](const std::string& t) -> P {
    P x = space.parse(t);
    require_member(space, x);
    return x;
  };

  if (cmd == "eval-cdf") {
    const Cdf<S> cdf(spec);
    const P x = parse_point(param_string(prm, "at", "eval-cdf"));
    out << fmt15(param_flag(prm, "minus") ? cdf.eval_F_minus(x) : cdf.eval_F(x)) << '\n';
    return kOk;
  }
  if (cmd == "eval-quantile") {
    const PseudoInverse<S> gi(spec);
    const auto rs = param_string(prm, "at", "eval-quantile");
    const auto g = gi.eval_G(text::parse_real(rs));
    if (g) out << space.format(g.point()) << '\n';
    else out << "undefined: " << g.reason() << '\n';
    return kOk;
  }
  if (cmd == "interval-measure") {
    const Cdf<S> cdf(spec);
    const auto u = parse_union(space, param_string(prm, "interval", "interval-measure"));
    out << fmt15(cdf.interval_measure(u)) << '\n';
    return kOk;
  }
  if (cmd == "sample") {
    const auto n = param_number<std::size_t>(prm, "n", 0);
    Sampler<S> sampler(PseudoInverse<S>(spec), cfg.seed);
    const auto draws = sampler.sample(n);
    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output) {
      file.open(*cfg.output, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("output", "cannot write '" + *cfg.output + "'");
      sink = &file;
    }
    json header{{"seed", cfg.seed}, {"rng", kRngId}, {"n", n}, {"spec_hash", spec_hash(AnySpec(spec))}};
    *sink << header.dump() << '\n';
    for (const auto& x : draws) *sink << space.format(x) << '\n';
    return kOk;
  }
  if (cmd == "integrate") {
    const PseudoInverse<S> gi(spec);
    const auto g = builtin_integrand(space, param_string(prm, "expr", "integrate"));
    QuadratureSpec q;
    const auto sub = param_number<long long>(prm, "subdivisions", 1000);
    if (sub < 1) throw ConfigError("params.subdivisions", "must be at least 1");
    q.subdivisions = static_cast<std::size_t>(sub);
    out << fmt15(integrate(gi, g, q)) << '\n';
    return kOk;
  }
  if (cmd == "report") {
    if (param_flag(prm, "config")) {
      out << to_json(cfg).dump(2) << '\n';
      return kOk;
    }
    if (param_flag(prm, "bijectivity")) {
      const PseudoInverse<S> gi(spec);
      const auto rep = gi.bijectivity_report();
      auto cond = [](const ConditionVerdict& c) { return json{{"holds", c.holds}, {"evidence", c.evidence}}; };
      json j{{"domain", gi.domain().describe()},
             {"inverse_pair", cond(rep.inverse_pair)},
             {"f_injective_onto_domain", cond(rep.f_onto_domain)},
             {"g_bijective", cond(rep.g_bijective)},
             {"support_and_no_atoms", cond(rep.support_no_atoms)},
             {"consistent", rep.consistent()}};
      out << j.dump(2) << '\n';
      return rep.consistent() ? kOk : kVerificationFailure;
    }
    throw ConfigError("params", "report needs --bijectivity or --config");
  }
  throw ConfigError("command", "unknown command '" + cmd + "'");
}

}  // namespace detail

// Executes a fully built RunConfig. Errors propagate as exceptions; see
// main() for the mapping to exit codes.
inline int run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command.empty()) throw ConfigError("command", "no command given");
  if (cfg.command == "verify") {
    const auto& prm = cfg.params;
    if (detail::param_flag(prm, "all")) {
      bool ok = true;
      for (const auto& inst : shipped_instances()) ok = detail::verify_spec(inst.spec, inst.name, out) && ok;
      return ok ? kOk : kVerificationFailure;
    }
    if (prm.contains("case")) {
      const auto inst = find_instance(detail::param_string(prm, "case", "verify"));
      return detail::verify_spec(inst.spec, inst.name, out) ? kOk : kVerificationFailure;
    }
    return detail::verify_spec(cfg.spec, "config", out) ? kOk : kVerificationFailure;
  }
  return std::visit([&](const auto& ms) { return detail::run_command(cfg, ms, out); }, cfg.spec);
}

// Maps an in-flight exception to an exit code, printing the message.
inline int report_error(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnsupportedSpace& e) {
    err << "unsupported space: " << e.what() << '\n';
    return kUnsupportedSpace;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

// Full command line: global --config / --case, then a subcommand whose flags
// override the config's "command" and "params".
inline int main_with_args(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cdfs, quantiles, sampling and integration on linearly ordered spaces", "ordercdf"};
  app.set_help_all_flag("--help-all", "Expand all help");
  std::string config_path, case_name;
  app.add_option("-c,--config", config_path, "JSON config with space and measure blocks");
  app.add_option("--case", case_name, "use a shipped instance instead of a config file");
  app.require_subcommand(0, 1);
  app.footer(
      "Exit codes: 0 ok, 2 config/usage error, 3 domain error, 4 unsupported space,\n"
      "5 verification failure.\n"
      "Shipped instances: three_atom, uniform, mixed, gapped, lex, open_uniform, binomial.");

  json params = json::object();
  std::string at, interval, expr, out_path;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  long long subdivisions = 1000;
  bool minus = false, all = false, bij = false, cfg_flag = false;

  auto* eval_cdf = app.add_subcommand("eval-cdf", "print F(x) (or F-(x) with --minus)");
  eval_cdf->add_option("--at", at, "point in element syntax")->required();
  eval_cdf->add_flag("--minus", minus, "print F-(x) = mu(<x) instead");
  auto* eval_q = app.add_subcommand("eval-quantile", "print G(r) = inf {y : F(y) >= r}");
  eval_q->add_option("--at", at, "level r in [0,1]")->required();
  auto* imeas = app.add_subcommand("interval-measure", "print mu of an interval union");
  imeas->add_option("--interval", interval, "e.g. \"[0,0.2],(0.5,0.6)\" or \"{}\"")->required();
  auto* sample = app.add_subcommand("sample", "inverse-transform samples, one point per line");
  sample->add_option("--n", n, "number of draws")->required();
  auto* seed_opt = sample->add_option("--seed", seed, "64-bit RNG seed (default: config seed)");
  sample->add_option("--out", out_path, "output file (default: stdout)");
  auto* integ = app.add_subcommand("integrate", "integral of a built-in function against mu");
  integ->add_option("--expr", expr, "one | x | x^2 | exp | sin | indicator:<union>")->required();
  auto* sub_opt = integ->add_option("--subdivisions", subdivisions, "midpoint cells per density piece");
  auto* verify = app.add_subcommand("verify", "run the proposition suite, JSON lines");
  verify->add_option("--case", case_name, "shipped instance name");
  verify->add_flag("--all", all, "every shipped instance");
  auto* report = app.add_subcommand("report", "structured reports");
  report->add_flag("--bijectivity", bij, "the four equivalent bijectivity conditions");
  report->add_flag("--config", cfg_flag, "echo the canonical config");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    auto base = [&]() -> RunConfig {
      if (!config_path.empty()) return load_config(config_path);
      if (!case_name.empty()) return RunConfig{find_instance(case_name).spec};
      // verify --all reads no spec of its own
      if (verify->parsed() && all) return RunConfig{instances::three_atom()};
      throw ConfigError("config", "give --config <file> or --case <instance>");
    };
    RunConfig cfg = base();
    if (auto* sc = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      cfg.command = sc->get_name();
      cfg.params = json::object();
      if (sc == eval_cdf) {
        cfg.params["at"] = at;
        if (minus) cfg.params["minus"] = true;
      } else if (sc == eval_q) {
        cfg.params["at"] = at;
      } else if (sc == imeas) {
        cfg.params["interval"] = interval;
      } else if (sc == sample) {
        cfg.params["n"] = n;
        if (seed_opt->count()) cfg.seed = seed;
        if (!out_path.empty()) cfg.output = out_path;
      } else if (sc == integ) {
        cfg.params["expr"] = expr;
        if (sub_opt->count()) cfg.params["subdivisions"] = subdivisions;
      } else if (sc == verify) {
        if (all) cfg.params["all"] = true;
        else if (!case_name.empty()) cfg.params["case"] = case_name;
      } else if (sc == report) {
        if (bij) cfg.params["bijectivity"] = true;
        if (cfg_flag) cfg.params["config"] = true;
      }
    }
    return run(cfg, out);
  } catch (...) {
    return report_error(err);
  }
}

}  // namespace ordercdf::cli
