#include "nctorus/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>

#include "nctorus/anzai.hpp"
#include "nctorus/classical.hpp"
#include "nctorus/cohomology.hpp"
#include "nctorus/counterexample.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/gns.hpp"
#include "nctorus/spec_parser.hpp"

namespace nct::cli {

namespace fs = std::filesystem;

namespace {

json with_fourier(json p) {
  p["grid"] = 4096;
  p["trunc"] = 512;
  return p;
}

const std::map<std::string, json>& schema() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    t["trace-invariance"] = with_fourier({{"alpha", "1/3"},
                                          {"theta", "auto"},
                                          {"f", "char:z0=1,w=1"},
                                          {"samples", 50},
                                          {"k_max", 1000},
                                          {"terms", 6},
                                          {"radius", 3},
                                          {"seed", 1}});
    t["ergodic-average"] = with_fourier({{"alpha", "0"},
                                         {"theta", "auto"},
                                         {"f", "char:z0=1,w=1"},
                                         {"a", "V"},
                                         {"limit", ""},
                                         {"schedule", {64, 256, 1024, 4096}},
                                         {"norm_grid", 4096}});
    t["weighted-average"] = with_fourier({{"alpha", "0"},
                                          {"theta", "auto"},
                                          {"f", "char:z0=1,w=1"},
                                          {"a", "UV"},
                                          {"lambda", "theta"},
                                          {"limit", ""},
                                          {"schedule", {1024, 4096, 16384}},
                                          {"norm_grid", 4096}});
    t["spectral-measure"] = with_fourier({{"alpha", "0"},
                                          {"theta", "auto"},
                                          {"f", "char:z0=1,w=1"},
                                          {"xi", "1"},
                                          {"lambda", "1"},
                                          {"horizon", 4096},
                                          {"density_grid", 1024},
                                          {"toeplitz_order", 256}});
    t["cohomology"] = with_fourier({{"alpha", "0"},
                                    {"theta", "auto"},
                                    {"f", "char:z0=1,w=1"},
                                    {"n", {1, 2, 3, 4, 5, -1, -2, -3, -4, -5}},
                                    {"K", {64, 128, 256}},
                                    {"kernel_threshold", 1e-6},
                                    {"gap_threshold", 1e-2},
                                    {"scaled_gap_threshold", 1.0}});
    t["classical-crosscheck"] = with_fourier({{"theta", "auto"},
                                              {"f", "char:z0=1,w=1"},
                                              {"a", "U"},
                                              {"schedule", {256, 1024}},
                                              {"samples", 16},
                                              {"seed", 7},
                                              {"orbit_steps", 256}});
    t["counterexample"] = json{{"levels", 4},
                               {"seed", 3},
                               {"nu", kDefaultNu},
                               {"alpha", "0"},
                               {"n_min", 1024},
                               {"n_max", 65536},
                               {"points", 32},
                               {"control", "char:z0=1,w=1"},
                               {"control_theta", "golden"}};
    return t;
  }();
  return table;
}

std::string type_name(const json& v) {
  if (v.is_number_integer()) return "an integer";
  if (v.is_number()) return "a number";
  if (v.is_string()) return "a string";
  if (v.is_boolean()) return "a boolean";
  if (v.is_array()) return "an array of integers";
  return "a value";
}

bool same_type(const json& def, const json& v) {
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_number()) return v.is_number();
  if (def.is_string()) return v.is_string() || v.is_number();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_array()) {
    return v.is_array() && !v.empty() &&
           std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); });
  }
  return false;
}

/// String-or-number spec parameter.
template <class Parse>
double spec_real(const json& v, Parse&& parse) {
  return v.is_number() ? v.get<double>() : parse(v.get<std::string>());
}

std::string spec_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Objects shared by the experiments driven by one winding map.
struct Setup {
  MapSpec map;
  double alpha = 0.0;
  double theta = kGoldenTheta;
  double nu = kDefaultNu;
  FourierOptions fourier;
};

double resolve_theta(const json& v, const MapSpec& map) {
  if (v.is_string() && v.get<std::string>() == "auto") return map.theta.value_or(kGoldenTheta);
  return spec_real(v, parse_theta);
}

Setup setup(const json& p) {
  Setup s;
  s.map = parse_map(spec_text(p.at("f")));
  s.alpha = p.contains("alpha") ? spec_real(p["alpha"], parse_alpha) : 0.0;
  s.theta = resolve_theta(p.at("theta"), s.map);
  s.nu = s.map.nu.value_or(kDefaultNu);
  s.fourier.grid = p.at("grid").get<Eigen::Index>();
  s.fourier.trunc = p.at("trunc").get<std::int64_t>();
  return s;
}

std::optional<NCPoly> optional_poly(const json& v, double alpha) {
  const std::string text = spec_text(v);
  if (text.find_first_not_of(" \t") == std::string::npos) return std::nullopt;
  return parse_poly(text, alpha);
}

void check_positive(const json& p, const std::string& key) {
  if (!p.contains(key)) return;
  const json& v = p[key];
  auto bad = [&](const json& e) { return e.is_number() && e.get<double>() <= 0.0; };
  if (v.is_array() ? std::any_of(v.begin(), v.end(), bad) : bad(v)) {
    throw ConfigError("parameter '" + key + "' must be positive");
  }
}

void check_increasing(const json& p, const std::string& key) {
  if (!p.contains(key)) return;
  const auto xs = p[key].get<std::vector<std::int64_t>>();
  if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw ConfigError("parameter '" + key + "' must be strictly increasing");
  }
}

/// Parses every spec string so malformed values fail at validation time.
void check_semantics(const std::string& experiment, const json& p) {
  std::string key;
  try {
    for (const char* k : {"samples", "k_max", "terms", "horizon", "density_grid", "toeplitz_order",
                          "orbit_steps", "levels", "n_min", "n_max", "points", "grid", "trunc",
                          "norm_grid", "schedule", "K", "kernel_threshold", "gap_threshold",
                          "scaled_gap_threshold"}) {
      check_positive(p, k);
    }
    if (p.contains("radius") && p["radius"].get<std::int64_t>() < 0) {
      throw ConfigError("parameter 'radius' must be non-negative");
    }
    check_increasing(p, "schedule");
    check_increasing(p, "K");
    if (p.contains("n")) {
      for (const auto& n : p["n"]) {
        if (n.get<std::int64_t>() == 0) throw ConfigError("parameter 'n' must not contain 0");
      }
    }
    if (experiment == "counterexample") {
      key = "nu";
      spec_real(p["nu"], parse_real);
      key = "alpha";
      spec_real(p["alpha"], parse_alpha);
      key = "control";
      const MapSpec control = parse_map(spec_text(p["control"]));
      key = "control_theta";
      resolve_theta(p["control_theta"], control);
      if (p["n_min"].get<std::int64_t>() > p["n_max"].get<std::int64_t>()) {
        throw ConfigError("parameter 'n_min' exceeds 'n_max'");
      }
      return;
    }
    key = "f";
    const MapSpec map = parse_map(spec_text(p["f"]));
    double alpha = 0.0;
    if (p.contains("alpha")) {
      key = "alpha";
      alpha = spec_real(p["alpha"], parse_alpha);
    }
    key = "theta";
    const double theta = resolve_theta(p["theta"], map);
    for (const char* k : {"a", "xi"}) {
      key = k;
      if (p.contains(k)) parse_poly(spec_text(p[k]), alpha);
    }
    key = "limit";
    if (p.contains("limit")) optional_poly(p["limit"], alpha);
    key = "lambda";
    if (p.contains("lambda")) {
      const cplx l = p["lambda"].is_number() ? cplx(p["lambda"].get<double>())
                                             : parse_lambda(p["lambda"].get<std::string>(), theta);
      if (std::abs(std::abs(l) - 1.0) > 1e-12) throw ConfigError("parameter 'lambda' must be unimodular");
    }
  } catch (const ParseError& e) {
    throw ConfigError("parameter '" + key + "': " + e.what());
  }
}

std::uint64_t seed_of(const json& p) { return static_cast<std::uint64_t>(p.at("seed").get<std::int64_t>()); }

/// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

class Output {
 public:
  Output(fs::path dir) : dir_(std::move(dir)) {}

  void emit(const std::string& name, const CsvTable& t) {
    t.write(dir_ / name);
    files.push_back(name);
  }
  void emit(const std::string& name, const json& j) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw ExperimentError("cannot write " + (dir_ / name).string());
    f << j.dump(2) << '\n';
    files.push_back(name);
  }

  json summary = json::object();
  json files = json::array();
  std::optional<json> construction;

 private:
  fs::path dir_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void trace_invariance(const json& p, Output& out) {
  const Setup s = setup(p);
  const AnzaiMap A(s.theta, s.alpha, s.map.f, s.fourier);
  const auto k_max = p["k_max"].get<std::int64_t>();
  const auto terms = p["terms"].get<std::int64_t>();
  const auto radius = p["radius"].get<std::int64_t>();
  std::mt19937_64 rng(seed_of(p));
  std::vector<double> worst(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (std::int64_t i = 0; i < p["samples"].get<std::int64_t>(); ++i) {
    NCPoly x(s.alpha);
    for (std::int64_t t = 0; t < terms; ++t) {
      const std::int64_t m = uniform_int(rng, -radius, radius);
      const std::int64_t n = uniform_int(rng, -radius, radius);
      const double re = 2.0 * uniform(rng) - 1.0;
      x.add(m, n, {re, 2.0 * uniform(rng) - 1.0});
    }
    const cplx tau = trace(x);
    IterateStream stream(A, x);
    for (std::int64_t k = 0; k <= k_max; ++k) {
      auto& w = worst[static_cast<std::size_t>(k)];
      w = std::max(w, std::abs(trace(stream.current()) - tau));
      if (k < k_max) stream.advance();
    }
  }
  CsvTable t({"k", "max_trace_deviation"});
  for (std::size_t k = 0; k < worst.size(); ++k) {
    t.row().cell(static_cast<std::int64_t>(k)).cell(worst[k]);
  }
  out.emit("results.csv", t);
  out.summary["max_trace_deviation"] = *std::max_element(worst.begin(), worst.end());
}

void average(const json& p, Output& out, bool weighted) {
  const Setup s = setup(p);
  const AnzaiMap A(s.theta, s.alpha, s.map.f, s.fourier);
  const NCPoly a = parse_poly(spec_text(p["a"]), s.alpha);
  const Angle lambda = !weighted ? Angle{}
                       : p["lambda"].is_number()
                           ? reduce(std::arg(cplx(p["lambda"].get<double>())))
                           : parse_lambda_angle(p["lambda"].get<std::string>(), s.theta, s.nu);
  CesaroOptions opts;
  opts.limit = optional_poly(p["limit"], s.alpha);
  opts.norm_grid = p["norm_grid"].get<Eigen::Index>();
  const auto schedule = p["schedule"].get<std::vector<std::int64_t>>();
  const CesaroResult r = cesaro(A, a, lambda, schedule, opts);
  out.emit("results.csv", cesaro_csv(r));
  const CesaroCheckpoint& last = r.checkpoints.back();
  out.emit("average.json", to_json(last.average));
  out.summary["lambda"] = complex_json(r.lambda);
  out.summary["N"] = last.n;
  out.summary["lower_norm"] = last.bounds.lower;
  out.summary["upper_norm"] = last.bounds.upper;
  out.summary["gns_norm"] = last.gns_norm;
}

void spectral_measure(const json& p, Output& out) {
  const Setup s = setup(p);
  const AnzaiMap A(s.theta, s.alpha, s.map.f, s.fourier);
  const GNSVector xi(parse_poly(spec_text(p["xi"]), s.alpha));
  const cplx lambda = p["lambda"].is_number() ? cplx(p["lambda"].get<double>())
                                              : parse_lambda(p["lambda"].get<std::string>(), s.theta, s.nu);
  const CorrSeq c = correlation(A, xi, p["horizon"].get<std::int64_t>(), spec_text(p["xi"]));
  const AtomEstimate atom = atom_mass(c, lambda);
  const std::vector<double> density = fejer_density(c, p["density_grid"].get<Eigen::Index>());
  const double toeplitz = toeplitz_min_eigenvalue(c, p["toeplitz_order"].get<std::int64_t>());

  out.emit("results.csv", correlation_csv(c));
  out.emit("density.csv", density_csv(density));
  CsvTable trace_table({"N", "re", "im"});
  for (const auto& [n, v] : atom.trace) {
    trace_table.row().cell(n).cell(v.real()).cell(v.imag());
  }
  out.emit("atom.csv", trace_table);

  const auto [lo, hi] = std::minmax_element(density.begin(), density.end());
  out.summary["lambda"] = complex_json(lambda);
  out.summary["norm_squared"] = xi.norm_squared();
  out.summary["atom_mass"] = atom.mass;
  out.summary["is_atom"] = is_atom(atom);
  out.summary["density_min"] = *lo;
  out.summary["density_max"] = *hi;
  out.summary["toeplitz_min_eigenvalue"] = toeplitz;
}

void cohomology(const json& p, Output& out, unsigned threads) {
  const Setup s = setup(p);
  VerdictOptions opts;
  opts.kernel_threshold = p["kernel_threshold"].get<double>();
  opts.gap_threshold = p["gap_threshold"].get<double>();
  opts.scaled_gap_threshold = p["scaled_gap_threshold"].get<double>();
  opts.threads = threads;
  const auto ns = p["n"].get<std::vector<std::int64_t>>();
  const auto ks = p["K"].get<std::vector<std::int64_t>>();
  const ErgodicityReport rep = verdict(s.theta, s.alpha, s.map.f, ns, ks, opts);

  CsvTable t({"n", "K", "gap"});
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& [n, m] : rep.per_n) {
    for (const auto& [K, gap] : m.gaps) {
      t.row().cell(n).cell(K).cell(gap);
    }
    min_gap = std::min(min_gap, m.gap);
  }
  out.emit("results.csv", t);
  out.emit("report.json", to_json(rep));
  out.summary["verdict"] = to_string(rep.verdict);
  out.summary["heuristic"] = rep.heuristic;
  out.summary["min_gap"] = min_gap;
  out.summary["K"] = ks.back();

  // Characters have an exact closed-form decision next to the numerics.
  if (s.map.f.phase().empty()) {
    json decisions = json::object();
    for (const std::int64_t n : ns) {
      const CharacterVerdict cv =
          character_decision(s.map.f.offset().phasor(), s.map.f.winding(), s.theta, s.alpha, n);
      decisions[std::to_string(n)] = cv.solvable ? "Solvable" : "NoSolution";
    }
    out.summary["character_decision"] = std::move(decisions);
  }
}

void classical_crosscheck(const json& p, Output& out, unsigned threads) {
  const Setup s = setup(p);
  const AnzaiMap A(s.theta, 0.0, s.map.f, s.fourier);
  const NCPoly a = parse_poly(spec_text(p["a"]), 0.0);
  std::mt19937_64 rng(seed_of(p));
  std::vector<TorusPoint> samples(p["samples"].get<std::size_t>());
  for (auto& pt : samples) {
    pt.s = kTwoPi * uniform(rng);
    pt.t = kTwoPi * uniform(rng);
  }
  CsvTable t({"N", "deviation"});
  double worst = 0.0;
  for (const std::int64_t N : p["schedule"].get<std::vector<std::int64_t>>()) {
    const double d = crosscheck_alpha0(A, a, N, samples, threads);
    t.row().cell(N).cell(d);
    worst = std::max(worst, d);
  }
  out.emit("results.csv", t);
  out.emit("orbit.csv", orbit_csv(s.theta, log_of(s.map.f), samples.front(),
                                  p["orbit_steps"].get<std::int64_t>()));
  out.summary["max_deviation"] = worst;
}

CsvTable oscillation_csv(const OscillationResult& r) {
  CsvTable t({"N", "x", "re", "im"});
  for (std::size_t i = 0; i < r.ns.size(); ++i) {
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      const cplx v = r.values[i](static_cast<Eigen::Index>(j));
      t.row().cell(r.ns[i]).cell(r.points[j]).cell(v.real()).cell(v.imag());
    }
  }
  return t;
}

void counterexample(const json& p, Output& out) {
  const int levels = p["levels"].get<int>();
  const LiouvilleAngle L = liouville_theta(levels, {Growth::Liouville, p["seed"].get<std::int64_t>()});
  const double nu = spec_real(p["nu"], parse_real);
  const double alpha = spec_real(p["alpha"], parse_alpha);
  const RoughSolution g = rough_solution(L);
  const FurstenbergMap fm = furstenberg_f(L.theta, g, nu);
  const TrigPoly h = TrigPoly::constant(1.0);
  const auto n_min = p["n_min"].get<std::int64_t>();
  const auto n_max = p["n_max"].get<std::int64_t>();
  const int points = p["points"].get<int>();

  const OscillationResult run = oscillation_stat(L.theta, fm.f_tilde, h, nu, n_min, n_max, points);
  const MapSpec control = parse_map(spec_text(p["control"]));
  const double control_theta = resolve_theta(p["control_theta"], control);
  const OscillationResult ctrl =
      oscillation_stat(control_theta, control.f, h, nu, n_min, n_max, points);

  out.emit("results.csv", oscillation_csv(run));
  out.emit("control.csv", oscillation_csv(ctrl));
  out.construction = construction_json(L, g, nu, fm);
  out.emit("construction.json", *out.construction);

  out.summary["theta"] = L.theta;
  out.summary["liouville_score"] = L.liouville_score;
  out.summary["tail_bound"] = fm.tail_bound;
  out.summary["h_overlap"] = std::abs(h_overlap(h, g));
  out.summary["eigen_residual"] = eigenvector(L.theta, g, nu, alpha).residual;
  out.summary["eigen_residual_golden"] = eigenvector(L.theta, g, nu, alpha, kGoldenTheta).residual;
  out.summary["osc"] = run.osc;
  out.summary["control_osc"] = ctrl.osc;
}

}  // namespace

const json& defaults(const std::string& experiment) {
  const auto it = schema().find(experiment);
  if (it == schema().end()) throw ConfigError("unknown experiment '" + experiment + "'");
  return it->second;
}

json load_config(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("version") && j.contains("summary")) {
    return j["config"];
  }
  return j;
}

void apply_override(json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  if (key == "experiment" || key == "output_dir") {
    config[key] = text;
    return;
  }
  if (key.rfind("parameters.", 0) == 0) key.erase(0, 11);
  if (key.empty()) throw ConfigError("override with an empty parameter name");
  config["parameters"][key] = std::move(value);
}

json resolve(const json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : config.items()) {
    if (k != "experiment" && k != "parameters" && k != "output_dir") {
      throw ConfigError("unknown key '" + k + "'");
    }
  }
  if (!config.contains("experiment") || !config["experiment"].is_string()) {
    throw ConfigError("'experiment' must be one of the experiment names");
  }
  const std::string experiment = config["experiment"];
  json params = defaults(experiment);
  if (config.contains("parameters")) {
    if (!config["parameters"].is_object()) throw ConfigError("'parameters' must be an object");
    for (const auto& [k, v] : config["parameters"].items()) {
      if (!params.contains(k)) {
        throw ConfigError("unknown parameter '" + k + "' for experiment '" + experiment + "'");
      }
      if (!same_type(params[k], v)) {
        throw ConfigError("parameter '" + k + "' must be " + type_name(params[k]));
      }
      params[k] = v;
    }
  }
  check_semantics(experiment, params);
  json out = {{"experiment", experiment}, {"parameters", std::move(params)}};
  if (config.contains("output_dir")) {
    if (!config["output_dir"].is_string()) throw ConfigError("'output_dir' must be a string");
    out["output_dir"] = config["output_dir"];
  }
  return out;
}

fs::path output_dir(const json& resolved, const std::optional<fs::path>& flag) {
  if (flag) return *flag;
  if (resolved.contains("output_dir")) return resolved["output_dir"].get<std::string>();
  if (const char* env = std::getenv("NCTORUS_OUT"); env != nullptr && *env != '\0') return env;
  return kDefaultOutDir;
}

json run(const json& resolved, const fs::path& out, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw ExperimentError("cannot create output directory " + out.string());
  }
  const std::string experiment = resolved.at("experiment");
  const json& p = resolved.at("parameters");
  threads = std::max(1u, threads);
  Output o(out);
  try {
    if (experiment == "trace-invariance") trace_invariance(p, o);
    else if (experiment == "ergodic-average") average(p, o, false);
    else if (experiment == "weighted-average") average(p, o, true);
    else if (experiment == "spectral-measure") spectral_measure(p, o);
    else if (experiment == "cohomology") cohomology(p, o, threads);
    else if (experiment == "classical-crosscheck") classical_crosscheck(p, o, threads);
    else if (experiment == "counterexample") counterexample(p, o);
    else throw ConfigError("unknown experiment '" + experiment + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const ExperimentError&) {
    throw;
  } catch (const Error& e) {
    throw ExperimentError(e.kind() + ": " + e.what());
  } catch (const std::exception& e) {
    throw ExperimentError(std::string("internal error: ") + e.what());
  }

  if (!o.construction && p.contains("f")) {
    if (const MapSpec m = parse_map(spec_text(p["f"])); m.construction) o.construction = m.construction;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"version", kVersion},
                   {"experiment", experiment},
                   {"config", resolved},
                   {"threads", threads},
                   {"wall_clock_seconds", seconds},
                   {"summary", std::move(o.summary)},
                   {"files", std::move(o.files)}};
  if (o.construction) manifest["construction"] = *o.construction;
  std::ofstream f(out / "manifest.json", std::ios::binary);
  if (!f) throw ExperimentError("cannot write " + (out / "manifest.json").string());
  f << manifest.dump(2) << '\n';
  return manifest;
}

json error_json(const std::exception& e) {
  json j;
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j = {{"error", pe->kind()}, {"message", pe->what()}, {"position", pe->position()}};
  } else if (const auto* ne = dynamic_cast<const Error*>(&e)) {
    j = {{"error", ne->kind()}, {"message", ne->what()}};
  } else {
    j = {{"error", "InternalError"}, {"message", e.what()}};
  }
  return j;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const Error*>(&e)) return 3;
  return 1;
}

}  // namespace nct::cli
