#include "almsq/cli/run.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "almsq/analytic.hpp"
#include "almsq/core.hpp"
#include "almsq/detector.hpp"
#include "almsq/error.hpp"
#include "almsq/oracles.hpp"
#include "almsq/parallel.hpp"
#include "almsq/scanner.hpp"

#ifndef ALMSQ_VERSION
#define ALMSQ_VERSION "dev"
#endif

namespace almsq::cli {

namespace {

struct Subcommand {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> list = {
      {"certify", "decide whether n is a (theta, C)-almost square", {"n", "theta", "C"}},
      {"enumerate", "list almost squares in [lo, hi]", {"lo", "hi", "theta", "C", "method", "chunk_size"}},
      {"scan", "coverage of short intervals [x, x + H(x)]",
       {"X", "span", "samples", "seed", "theta", "C", "eps", "spec", "A", "gamma", "delta", "mode",
        "chunk_size"}},
      {"gaps", "gap statistics between consecutive almost squares", {"lo", "hi", "theta", "C", "chunk_size"}},
      {"params", "parameter choice U, L, T, V, Y for scale X", {"X", "theta", "C", "eps"}},
      {"zeta", "zeta, chi and the approximate functional equation", {"sigma", "t", "function", "terms"}},
      {"phi", "product count Phi(y) against its main term", {"y", "U", "L", "V"}},
      {"discrepancy", "mean square of Phi minus its main term",
       {"X", "Y", "U", "L", "V", "samples", "quadrature", "theta", "C", "eps"}},
      {"verify", "brute-force sums and integrals against their bounds", {"lemma", "grid", "step"}},
      {"measure", "predicted exceptional-set fraction", {"X", "theta", "C", "eps"}},
  };
  return list;
}

KeyType type_of(const std::string& key) {
  for (const auto& k : config_keys())
    if (k.name == key) return k.type;
  return KeyType::text;
}

std::string help_of(const std::string& key) {
  for (const auto& k : config_keys())
    if (k.name == key) return k.help;
  return "";
}

Json parse_flag(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  try {
    switch (type_of(key)) {
      case KeyType::real: {
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
        break;
      }
      case KeyType::integer: {
        if (!text.empty() && text[0] == '-') break;
        const unsigned long long v = std::stoull(text, &used);
        if (used == text.size()) return static_cast<std::uint64_t>(v);
        break;
      }
      case KeyType::text:
        return text;
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::invalid_input, "flag --" + key + ": cannot parse '" + text + "'");
}

double real_of(const Json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw Error(ErrorKind::invalid_input, "missing required key '" + key + "'");
  return cfg[key].get<double>();
}

std::uint64_t int_of(const Json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw Error(ErrorKind::invalid_input, "missing required key '" + key + "'");
  return cfg[key].get<std::uint64_t>();
}

AlmostSquareParams params_of(const Json& cfg) { return {real_of(cfg, "theta"), real_of(cfg, "C")}; }

std::uint64_t auto_chunk(const Json& cfg, double span) {
  if (cfg.contains("chunk_size")) return cfg["chunk_size"].get<std::uint64_t>();
  const double per_worker = span / (8.0 * worker_count());
  std::uint64_t chunk = std::uint64_t{1} << 12;
  while (chunk < (std::uint64_t{1} << 20) && static_cast<double>(chunk) < per_worker) chunk <<= 1;
  return chunk;
}

IntervalSpec spec_of(const Json& cfg) {
  const double theta = real_of(cfg, "theta");
  const double eps = real_of(cfg, "eps");
  switch (*parse_interval_preset(cfg["spec"].get<std::string>())) {
    case IntervalPreset::theorem: return IntervalSpec::theorem(theta, eps);
    case IntervalPreset::corollary: return IntervalSpec::corollary(eps);
    case IntervalPreset::conjecture: return IntervalSpec::conjecture(theta, eps);
    case IntervalPreset::custom: break;
  }
  return IntervalSpec::custom(real_of(cfg, "A"), real_of(cfg, "gamma"), real_of(cfg, "delta"));
}

Json witness_payload(const Witness& w) { return {{"n", w.n}, {"a", w.a}, {"b", w.b}}; }

Json gap_payload(const GapBucket& b) {
  return {{"bucket_lo", b.lo}, {"bucket_hi", b.hi}, {"count", b.count}};
}

Json choice_payload(const ParameterChoice& p) {
  return {{"U", p.config.big_u}, {"L", p.config.big_l}, {"T", p.config.big_t},
          {"V", p.config.big_v}, {"Y", p.big_y},        {"eta", p.config.eta},
          {"c", p.config.perron_c}};
}

LemmaGrid grid_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open grid file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string("grid parse error: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::invalid_input, "grid must be a JSON object");
  LemmaGrid g;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n1_ranges") g.n1_ranges = value.get<std::vector<std::uint64_t>>();
      else if (key == "n2_ranges") g.n2_ranges = value.get<std::vector<std::uint64_t>>();
      else if (key == "u_values") g.u_values = value.get<std::vector<double>>();
      else if (key == "l_values") g.l_values = value.get<std::vector<double>>();
      else if (key == "t_values") g.t_values = value.get<std::vector<double>>();
      else if (key == "x_values") g.x_values = value.get<std::vector<double>>();
      else if (key == "y_values") g.y_values = value.get<std::vector<double>>();
      else if (key == "a_values") g.a_values = value.get<std::vector<double>>();
      else if (key == "beta") g.beta = value.get<double>();
      else if (key == "samples") g.samples = value.get<std::uint64_t>();
      else if (key == "step") g.step = value.get<double>();
      else throw Error(ErrorKind::invalid_input, "grid: unknown key '" + key + "'");
    } catch (const Json::exception&) {
      throw Error(ErrorKind::invalid_input, "grid: bad value for '" + key + "'");
    }
  }
  return g;
}

Outcome run_certify(const Json& cfg) {
  Outcome o;
  const std::uint64_t n = int_of(cfg, "n");
  const auto w = certify(n, params_of(cfg));
  Json p = w ? witness_payload(*w) : Json{{"n", n}};
  p["found"] = w.has_value();
  o.records.push_back({"witness", p});
  return o;
}

Outcome run_enumerate(const Json& cfg) {
  Outcome o;
  const std::uint64_t lo = int_of(cfg, "lo"), hi = int_of(cfg, "hi");
  o.chunk_size = auto_chunk(cfg, hi >= lo ? static_cast<double>(hi - lo) + 1.0 : 1.0);
  const EnumerateOptions opts{o.chunk_size, 0};
  const auto list = cfg["method"] == "oracle" ? enumerate_oracle(lo, hi, params_of(cfg), opts)
                                               : enumerate(lo, hi, params_of(cfg), opts);
  for (const auto& w : list) o.records.push_back({"witness", witness_payload(w)});
  return o;
}

Outcome run_scan(const Json& cfg) {
  Outcome o;
  ScanConfig sc;
  sc.big_x = real_of(cfg, "X");
  sc.span = cfg.contains("span") ? real_of(cfg, "span") : 0.0;
  sc.params = params_of(cfg);
  sc.spec = spec_of(cfg);
  sc.samples = int_of(cfg, "samples");
  sc.seed = int_of(cfg, "seed");
  sc.mode = *parse_scan_mode(cfg["mode"].get<std::string>());
  o.chunk_size = sc.chunk_size = auto_chunk(cfg, sc.span > 0.0 ? sc.span : sc.big_x);
  const CoverageReport r = coverage_scan(sc);
  o.records.push_back({"coverage",
                       {{"X", sc.big_x},
                        {"span", sc.span > 0.0 ? sc.span : sc.big_x},
                        {"mode", std::string(to_string(sc.mode))},
                        {"spec", {{"A", sc.spec.coef}, {"gamma", sc.spec.pow}, {"delta", sc.spec.logpow}}},
                        {"sampled", r.sampled},
                        {"exceptional", r.exceptional},
                        {"exceptional_fraction", r.exceptional_fraction},
                        {"max_gap", r.max_gap}}});
  for (const auto& b : r.gap_histogram) o.records.push_back({"gap", gap_payload(b)});
  return o;
}

Outcome run_gaps(const Json& cfg) {
  Outcome o;
  const std::uint64_t lo = int_of(cfg, "lo"), hi = int_of(cfg, "hi");
  o.chunk_size = auto_chunk(cfg, hi >= lo ? static_cast<double>(hi - lo) + 1.0 : 1.0);
  const GapStats g = gap_stats(lo, hi, params_of(cfg));
  o.records.push_back({"coverage", {{"lo", lo}, {"hi", hi}, {"max_gap", g.max_gap}}});
  for (const auto& b : g.histogram) o.records.push_back({"gap", gap_payload(b)});
  return o;
}

Outcome run_params(const Json& cfg) {
  Outcome o;
  const double x = real_of(cfg, "X"), eps = real_of(cfg, "eps");
  const AlmostSquareParams params = params_of(cfg);
  Json p = choice_payload(parameter_formulas(x, params, eps));
  bool feasible = true;
  try {
    choose_parameters(x, params, eps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::infeasible) throw;
    feasible = false;
    o.exit_code = exit_code(e.kind());
    o.message = e.what();
  }
  p["function"] = "parameters";
  p["X"] = x;
  p["feasible"] = feasible;
  o.records.push_back({"eval", p});
  return o;
}

Outcome run_zeta(const Json& cfg) {
  Outcome o;
  const std::string fn = cfg["function"].get<std::string>();
  const double t = real_of(cfg, "t");
  double sigma = fn == "afe" ? 0.5 : real_of(cfg, "sigma");
  std::complex<double> v;
  Json p{{"function", fn}};
  if (fn == "em") {
    const ComplexPoint s{sigma, t};
    const std::uint64_t terms = cfg.contains("terms") ? int_of(cfg, "terms") : default_em_terms(s);
    v = zeta_em(s, terms);
    p["error_bound"] = zeta_em_error_bound(s, terms);
    p["terms"] = terms;
  } else if (fn == "afe") {
    v = zeta_afe(t);
  } else if (fn == "chi") {
    v = chi({sigma, t});
  } else {
    v = convexity_ratio(sigma, t);
  }
  p["sigma"] = sigma;
  p["t"] = t;
  p["re"] = v.real();
  p["im"] = v.imag();
  p["abs"] = std::abs(v);
  o.records.push_back({"eval", p});
  return o;
}

AnalyticConfig window_of_cfg(const Json& cfg) {
  AnalyticConfig a;
  a.big_u = real_of(cfg, "U");
  a.big_l = real_of(cfg, "L");
  a.big_v = real_of(cfg, "V");
  return a;
}

Outcome run_phi(const Json& cfg) {
  Outcome o;
  const AnalyticConfig a = window_of_cfg(cfg);
  const double y = real_of(cfg, "y");
  o.records.push_back({"eval",
                       {{"function", "phi"}, {"y", y}, {"U", a.big_u}, {"L", a.big_l}, {"V", a.big_v},
                        {"phi", phi_count(y, a)}, {"main_term", main_term(y, a)}}});
  return o;
}

Outcome run_discrepancy(const Json& cfg) {
  Outcome o;
  const double x = real_of(cfg, "X");
  AnalyticConfig a;
  double big_y = 0.0;
  if (cfg.contains("U")) {
    a = window_of_cfg(cfg);
    big_y = real_of(cfg, "Y");
  } else {
    const ParameterChoice p = parameter_formulas(x, params_of(cfg), real_of(cfg, "eps"));
    a = p.config;
    big_y = cfg.contains("Y") ? real_of(cfg, "Y") : p.big_y;
  }
  const QuadratureMode mode = *parse_quadrature_mode(cfg["quadrature"].get<std::string>());
  const DiscrepancyReport r = discrepancy(x, big_y, a, int_of(cfg, "samples"), mode);
  o.records.push_back({"eval",
                       {{"function", "discrepancy"}, {"X", x}, {"Y", big_y}, {"U", a.big_u},
                        {"L", a.big_l}, {"V", a.big_v}, {"i_xy", r.i_xy},
                        {"main_term_sq", r.main_term_sq}, {"relative", r.i_xy / r.main_term_sq},
                        {"samples", r.samples}, {"tolerance", r.tolerance},
                        {"mode", std::string(to_string(r.mode))}}});
  return o;
}

Outcome run_verify(const Json& cfg) {
  Outcome o;
  if (!cfg.contains("lemma")) throw Error(ErrorKind::invalid_input, "missing required key 'lemma'");
  const Lemma lemma = *parse_lemma(cfg["lemma"].get<std::string>());
  const std::string grid_name = cfg["grid"].get<std::string>();
  LemmaGrid grid = grid_name == "default" ? default_grid(lemma) : grid_from_file(grid_name);
  if (real_of(cfg, "step") > 0.0) grid.step = real_of(cfg, "step");
  for (const auto& r : verify_lemma(lemma, grid)) {
    Json point = Json::array();
    for (const auto& [k, v] : r.grid_point) point.push_back(Json::array({k, v}));
    o.records.push_back({"bound",
                         {{"lemma", std::string(to_string(r.lemma))}, {"grid_point", point},
                          {"lhs", r.lhs}, {"bound", r.bound}, {"ratio", r.ratio},
                          {"bound_terms", r.bound_terms}}});
  }
  return o;
}

Outcome run_measure(const Json& cfg) {
  Outcome o;
  const double x = real_of(cfg, "X");
  const MeasureBound m = measure_bound(x, params_of(cfg), real_of(cfg, "eps"));
  Json p = choice_payload(m.choice);
  p["function"] = "measure_bound";
  p["X"] = x;
  p["terms"] = m.terms;
  p["predicted_fraction"] = m.predicted_fraction;
  p["vacuous"] = m.vacuous;
  o.records.push_back({"eval", p});
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::invalid_input, "cannot write " + path);
  f << text;
}

}  // namespace

Outcome execute(const std::string& command, const Json& cfg) {
  if (command == "certify") return run_certify(cfg);
  if (command == "enumerate") return run_enumerate(cfg);
  if (command == "scan") return run_scan(cfg);
  if (command == "gaps") return run_gaps(cfg);
  if (command == "params") return run_params(cfg);
  if (command == "zeta") return run_zeta(cfg);
  if (command == "phi") return run_phi(cfg);
  if (command == "discrepancy") return run_discrepancy(cfg);
  if (command == "verify") return run_verify(cfg);
  if (command == "measure") return run_measure(cfg);
  throw Error(ErrorKind::invalid_input, "unknown subcommand '" + command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"almost squares in short intervals"};
  app.set_version_flag("--version", ALMSQ_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, in_path;
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, CLI::App*> apps;
  for (const auto& sub : subcommands()) {
    CLI::App* s = app.add_subcommand(sub.name, sub.help);
    s->add_option("--config", config_path, "JSON config file");
    s->add_option("--out", out_path, "JSONL output path");
    s->add_option("--csv", csv_path, "CSV table path");
    for (const auto& key : sub.keys) s->add_option("--" + key, flags[sub.name][key], help_of(key));
    apps[sub.name] = s;
  }
  CLI::App* summary = app.add_subcommand("summary", "regenerate the summary table of a JSONL file");
  summary->add_option("--in", in_path, "JSONL file")->required();
  summary->add_option("--csv", csv_path, "CSV table path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::invalid_input);
  }

  try {
    if (summary->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + in_path);
      const JsonlFile file = read_jsonl(in);
      out << summarize(file.manifest.command, file.records);
      if (!csv_path.empty()) write_file(csv_path, to_csv(file.records));
      return 0;
    }

    std::string command;
    for (const auto& [name, s] : apps)
      if (s->parsed()) command = name;

    Json raw = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::invalid_input, "cannot open config file " + config_path);
      try {
        raw = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::invalid_input, std::string("config parse error: ") + e.what());
      }
      if (!raw.is_object()) throw Error(ErrorKind::invalid_input, "config must be a JSON object");
    }
    for (const auto& [key, text] : flags[command])
      if (apps[command]->count("--" + key) > 0) raw[key] = parse_flag(key, text);
    const Json cfg = canonicalize(raw);

    RunManifest manifest;
    manifest.command = command;
    manifest.config_digest = config_digest(command, cfg);
    manifest.started = utc_timestamp();
    manifest.tool_version = ALMSQ_VERSION;
    manifest.seed = cfg["seed"].get<std::uint64_t>();
    manifest.config = cfg;

    Outcome outcome = execute(command, cfg);
    manifest.finished = utc_timestamp();
    manifest.chunk_size = outcome.chunk_size;

    if (!out_path.empty()) {
      std::ostringstream jsonl;
      write_jsonl(jsonl, manifest, outcome.records);
      write_file(out_path, jsonl.str());
    }
    out << summarize(command, outcome.records);
    if (!csv_path.empty()) write_file(csv_path, to_csv(outcome.records));
    if (outcome.exit_code != 0) err << "error: " << outcome.message << '\n';
    return outcome.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code(ErrorKind::precision);
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace almsq::cli
