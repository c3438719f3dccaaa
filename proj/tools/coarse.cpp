#include "coarse/catalog.hpp"
#include "coarse/entropy.hpp"
#include "coarse/errors.hpp"
#include "coarse/geometry.hpp"
#include "coarse/graph.hpp"
#include "coarse/paths.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace coarse;
using nlohmann::json;

namespace {

/// A command-line mistake, reported before any computation starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpaceSpec {
  std::string tag;
  std::string params = "{}";
  std::string edges;
};

struct RunConfig {
  std::string command;
  SpaceSpec space;
  SpaceSpec target;
  std::string point;
  std::vector<std::int64_t> n;
  std::string delta = "1";
  std::string radius;
  std::optional<std::int64_t> window;
  std::optional<std::uint64_t> cap;
  std::string out;
  std::string format = "json";
  bool strict = false;
  std::string log_base = "e";
  // command specific
  std::int64_t p = 1;
  int level = 4;
  bool measured = false;
  std::string paths_out;
  std::string s = "2";
  std::string D = "2";
  std::vector<int> depths{1, 2, 3, 4, 5, 6, 7, 8};
  std::string pairs;
};

struct Loaded {
  SpaceHandle space;
  std::optional<MeasuredSpaceHandle> measured;
};

Dist parse_dist(const std::string& text, const char* flag) {
  Dist d;
  try {
    d = Dist::parse(text);
  } catch (const Error&) {
    throw ConfigError(std::string(flag) + ": not a distance: '" + text + "'");
  }
  if (!d.is_exact() || d.is_zero() || d < Dist(0)) throw ConfigError(std::string(flag) + " must be a positive rational");
  return d;
}

Loaded load_space(const SpaceSpec& spec, const std::optional<std::int64_t>& window, const char* which) {
  if (spec.tag.empty() == spec.edges.empty()) {
    const std::string w = which;
    throw ConfigError("give exactly one of --" + w + " and " + (w == "space" ? "--edges" : "--" + w + "-edges"));
  }
  if (!spec.edges.empty()) {
    if (spec.params != "{}") throw ConfigError("params apply to catalog spaces only, not to edge lists");
    if (window) throw ConfigError("--window applies to catalog spaces only");
    return {space_from_edges(load_edge_csv(spec.edges)), std::nullopt};
  }
  json params;
  try {
    params = json::parse(spec.params);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("params are not valid JSON: ") + e.what());
  }
  if (!params.is_object()) throw ConfigError("params must be a JSON object");
  if (window) params["window"] = *window;
  auto ex = make_example(spec.tag, params);
  return {ex.space, ex.measured};
}

PointRef load_point(const MetricSpace& space, const std::string& text) {
  if (text.empty()) return space.basepoint();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw ConfigError("--point is not valid JSON: '" + text + "'");
  }
  auto p = space.decode(j);
  space.check(p);
  return p;
}

double log_scale(const std::string& base) {
  if (base == "e") return 1.0;
  double b = 0;
  try {
    std::size_t used = 0;
    b = std::stod(base, &used);
    if (used != base.size()) b = 0;
  } catch (const std::exception&) {
    b = 0;
  }
  if (!(b > 0) || b == 1.0 || !std::isfinite(b)) throw ConfigError("--log-base must be 'e' or a positive number other than 1");
  return 1.0 / std::log(b);
}

// doubles print the same in both formats
std::string num(double v) { return json(v).dump(); }

std::string decimal(const Rational& q) {
  std::ostringstream os;
  os.precision(17);
  os << to_double(q);
  return os.str();
}

std::string cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Output {
  json doc;
  std::vector<std::vector<std::string>> csv;  // first row is the header
  int status = 0;
};

Caps caps_of(const RunConfig& c) {
  Caps caps;
  if (c.cap) caps.orbits = *c.cap;
  return caps;
}

void rescale_rate(json& point, double scale) {
  if (point.is_object() && point.contains("rate")) point["rate"] = point["rate"].get<double>() * scale;
}

// ---------------------------------------------------------------- commands

Output cmd_growth(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist delta = parse_dist(c.delta, "--delta");
  const PointRef x = load_point(*sp.space, c.point);
  GrowthOptions opts;
  opts.l_max = c.n.empty() ? 16 : c.n.back();
  if (c.cap) opts.point_budget = *c.cap;
  const Measure* mu = nullptr;
  if (c.measured) {
    if (!sp.measured) throw ConfigError("--measured: this space carries no measure");
    mu = &sp.measured->mu;
  }
  auto g = growth_series(mu ? *sp.measured->space : *sp.space, x, delta, opts, mu);
  auto slope = fit_log_slope(g.values);
  Output out;
  out.doc = to_json(g, *sp.space);
  out.doc["log_base"] = c.log_base;
  out.doc["slope"] = slope ? json(*slope * log_scale(c.log_base)) : json(nullptr);
  out.csv.push_back({"l", "value", "decimal"});
  for (std::size_t l = 0; l < g.values.size(); ++l)
    out.csv.push_back({std::to_string(l), format_rational(g.values[l]), decimal(g.values[l])});
  return out;
}

Output cmd_orbits(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist delta = parse_dist(c.delta, "--delta");
  const PointRef x0 = load_point(*sp.space, c.point);
  const Caps caps = caps_of(c);
  Output out;
  out.doc = {{"schema", "v1"}, {"delta", delta.to_string()}, {"x0", sp.space->encode(x0)}, {"cap", caps.orbits}};
  json rows = json::array();
  out.csv.push_back({"n", "paths", "saturated"});
  for (auto n : c.n) {
    const auto count = count_orbits(*sp.space, x0, n, delta, caps.orbits + 1);
    const bool saturated = count > caps.orbits;
    rows.push_back({{"n", n}, {"paths", saturated ? json(nullptr) : json(count)}, {"over_cap", saturated}});
    out.csv.push_back({std::to_string(n), saturated ? "" : std::to_string(count), saturated ? "true" : "false"});
  }
  out.doc["rows"] = rows;
  if (!c.paths_out.empty()) {
    const auto orbits = enumerate_orbits(*sp.space, x0, c.n.back(), delta, caps.orbits);
    std::ofstream f(c.paths_out);
    if (!f) throw ConfigError("cannot write " + c.paths_out);
    write_jsonl(f, orbits, *sp.space);
    out.doc["paths_file"] = c.paths_out;
  }
  return out;
}

Output cmd_rates(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist delta = parse_dist(c.delta, "--delta");
  if (c.radius.empty()) throw ConfigError("rates needs --radius");
  const Dist R = parse_dist(c.radius, "--radius");
  const PointRef x0 = load_point(*sp.space, c.point);
  const double scale = log_scale(c.log_base);
  auto series = rate_series(sp.space, x0, delta, R, c.n, caps_of(c));
  Output out;
  out.doc = to_json(series, *sp.space);
  out.doc["log_base"] = c.log_base;
  for (auto& row : out.doc["rows"]) {
    rescale_rate(row["separated"], scale);
    rescale_rate(row["dense"], scale);
  }
  out.csv.push_back({"n", "kind", "count", "certificate", "method", "rate", "paths"});
  for (const auto& row : out.doc["rows"]) {
    for (const char* kind : {"separated", "dense"}) {
      const auto& p = row[kind];
      if (p.is_null()) continue;
      out.csv.push_back({row["n"].dump(), kind, p["count"].dump(), p["certificate"].get<std::string>(),
                         p["method"].get<std::string>(), num(p["rate"].get<double>()),
                         p["paths"].is_null() ? "" : p["paths"].dump()});
    }
  }
  return out;
}

Output cmd_witness(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist delta = parse_dist(c.delta, "--delta");
  if (c.radius.empty()) throw ConfigError("witness needs --radius");
  const Dist R = parse_dist(c.radius, "--radius");
  if (c.p < 1) throw ConfigError("--p must be positive");
  const PointRef x0 = load_point(*sp.space, c.point);
  auto family = build_pingpong(*sp.space, x0, delta, R, c.p, c.level);
  const std::uint64_t limit = c.cap ? *c.cap : 100'000;
  auto sep = check_separation(*sp.space, family, limit);
  const double rate = family.rate_bound() * log_scale(c.log_base);
  Output out;
  out.doc = {{"schema", "v1"},
             {"delta", delta.to_string()},
             {"R", R.to_string()},
             {"p", c.p},
             {"level", c.level},
             {"arms", family.arms().size()},
             {"arm_length", family.arm_length()},
             {"base_length", family.base().length()},
             {"size", family.size() ? json(*family.size()) : json(nullptr)},
             {"length", family.length()},
             {"log_base", c.log_base},
             {"rate_bound", rate},
             {"separated", sep.ok},
             {"pairs_checked", sep.pairs},
             {"violation", sep.violation ? json(*sep.violation) : json(nullptr)}};
  out.csv.push_back({"p", "arms", "size", "length", "rate_bound", "separated"});
  out.csv.push_back({std::to_string(c.p), std::to_string(family.arms().size()),
                     family.size() ? std::to_string(*family.size()) : "", std::to_string(family.length()), num(rate),
                     sep.ok ? "true" : "false"});
  if (!sep.ok) out.status = 1;
  return out;
}

ClassificationReport classify_spec(const SpaceSpec& spec, const RunConfig& c, const char* which) {
  auto sp = load_space(spec, c.window, which);
  ClassifyConfig config;
  config.caps = caps_of(c);
  return classify(sp.space, config, sp.measured);
}

Output cmd_classify(const RunConfig& c) {
  auto rep = classify_spec(c.space, c, "space");
  Output out;
  out.doc = to_json(rep);
  out.csv.push_back({"space", "verdict", "rule", "certified", "indicated"});
  out.csv.push_back({rep.space, to_string(rep.verdict), rep.rule, rep.certified ? "true" : "false",
                     to_string(rep.indicated)});
  if (c.strict && rep.verdict == Verdict::inconclusive) out.status = 2;
  return out;
}

Output cmd_obstruct(const RunConfig& c) {
  auto src = classify_spec(c.space, c, "space");
  auto tgt = classify_spec(c.target, c, "target");
  auto ob = embedding_obstruction(src, tgt);
  Output out;
  out.doc = {{"schema", "v1"},
             {"source", to_json(src)},
             {"target", to_json(tgt)},
             {"obstructed", ob.obstructed},
             {"reason", ob.reason}};
  out.csv.push_back({"source", "source_verdict", "target", "target_verdict", "obstructed"});
  out.csv.push_back({src.space, to_string(src.verdict), tgt.space, to_string(tgt.verdict),
                     ob.obstructed ? "true" : "false"});
  if (c.strict && !ob.obstructed &&
      (src.verdict == Verdict::inconclusive || tgt.verdict == Verdict::inconclusive))
    out.status = 2;
  return out;
}

Output cmd_qgcheck(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist delta = parse_dist(c.delta, "--delta");
  std::vector<std::pair<PointRef, PointRef>> pairs;
  if (c.pairs.empty()) {
    pairs = default_qg_pairs(*sp.space);
  } else {
    json j;
    try {
      j = json::parse(c.pairs);
    } catch (const json::parse_error&) {
      throw ConfigError("--pairs is not valid JSON");
    }
    if (!j.is_array()) throw ConfigError("--pairs must be a JSON array of [a, b] pairs");
    for (const auto& pr : j) {
      if (!pr.is_array() || pr.size() != 2) throw ConfigError("--pairs must be a JSON array of [a, b] pairs");
      pairs.emplace_back(sp.space->decode(pr[0]), sp.space->decode(pr[1]));
    }
  }
  auto rep = quasi_geodesic_check(*sp.space, delta, pairs);
  Output out;
  out.doc = to_json(rep, *sp.space);
  out.csv.push_back({"a", "b", "distance", "bound", "hops", "pass"});
  for (const auto& p : rep.pairs)
    out.csv.push_back({sp.space->encode(p.a).dump(), sp.space->encode(p.b).dump(), p.distance.to_string(),
                       std::to_string(p.bound), p.hops ? std::to_string(*p.hops) : "", p.pass ? "true" : "false"});
  return out;
}

Output cmd_bgcheck(const RunConfig& c) {
  auto sp = load_space(c.space, c.window, "space");
  const Dist s = parse_dist(c.s, "--s");
  const Dist D = parse_dist(c.D, "--D");
  BGOptions opts;
  if (c.cap) opts.window_points = *c.cap;
  auto ev = bounded_geometry_evidence(*sp.space, s, D, c.depths, opts);
  Output out;
  out.doc = to_json(ev, *sp.space);
  out.csv.push_back({"depth", "center", "window_points", "cardinality", "exact"});
  for (const auto& r : ev.records)
    out.csv.push_back({std::to_string(r.depth), sp.space->encode(r.center).dump(), std::to_string(r.window_points),
                       std::to_string(r.set.size()), r.exact ? "true" : "false"});
  return out;
}

void validate(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  log_scale(c.log_base);
  for (std::size_t i = 0; i < c.n.size(); ++i) {
    if (c.n[i] < 0) throw ConfigError("--n values must be nonnegative");
    if (i > 0 && c.n[i] <= c.n[i - 1]) throw ConfigError("--n values must be strictly increasing");
  }
  const bool needs_n = c.command == "orbits" || c.command == "rates";
  if (needs_n && c.n.empty()) throw ConfigError(c.command + " needs --n");
  if (c.window && *c.window < 1) throw ConfigError("--window must be positive");
  if (c.cap && *c.cap < 1) throw ConfigError("--cap must be positive");
  if (c.command != "obstruct" && (!c.target.tag.empty() || !c.target.edges.empty()))
    throw ConfigError("--target applies to obstruct only");
}

Output dispatch(const RunConfig& c) {
  if (c.command == "growth") return cmd_growth(c);
  if (c.command == "orbits") return cmd_orbits(c);
  if (c.command == "rates") return cmd_rates(c);
  if (c.command == "witness") return cmd_witness(c);
  if (c.command == "classify") return cmd_classify(c);
  if (c.command == "obstruct") return cmd_obstruct(c);
  if (c.command == "qgcheck") return cmd_qgcheck(c);
  if (c.command == "bgcheck") return cmd_bgcheck(c);
  throw ConfigError("unknown command " + c.command);
}

void emit(const Output& out, const RunConfig& c) {
  std::ostringstream os;
  if (c.format == "json") {
    os << out.doc.dump(2) << "\n";
  } else {
    for (const auto& row : out.csv) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
      os << "\n";
    }
  }
  if (c.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + c.out);
  f << os.str();
}

void add_space_flags(CLI::App* sub, SpaceSpec& spec) {
  sub->add_option("--space", spec.tag, "catalog tag")->check(CLI::IsMember(catalog_tags()));
  sub->add_option("--params", spec.params, "catalog parameters as a JSON object");
  sub->add_option("--edges", spec.edges, "edge-list CSV (src,dst[,weight])");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"coarse entropy toolkit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  auto common = [&](CLI::App* sub) {
    add_space_flags(sub, c.space);
    sub->add_option("--point", c.point, "starting point as JSON (default: basepoint)");
    sub->add_option("--window", c.window, "override the catalog window");
    sub->add_option("--cap", c.cap, "enumeration cap");
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--log-base", c.log_base, "log base for reported rates: e or a number");
  };

  auto* growth = app.add_subcommand("growth", "step-ball growth series");
  common(growth);
  growth->add_option("--delta", c.delta);
  growth->add_option("--n", c.n, "largest ball radius l");
  growth->add_flag("--measured", c.measured, "report measured volume instead of cardinality");

  auto* orbits = app.add_subcommand("orbits", "count delta-paths");
  common(orbits);
  orbits->add_option("--delta", c.delta);
  orbits->add_option("--n", c.n, "path lengths")->delimiter(',');
  orbits->add_option("--paths", c.paths_out, "write the paths of the last length as JSONL");

  auto* rates = app.add_subcommand("rates", "separated and dense counts with rates");
  common(rates);
  rates->add_option("--delta", c.delta);
  rates->add_option("--radius", c.radius);
  rates->add_option("--n", c.n, "path lengths")->delimiter(',');

  auto* witness = app.add_subcommand("witness", "ping-pong lower-bound family");
  common(witness);
  witness->add_option("--delta", c.delta);
  witness->add_option("--radius", c.radius);
  witness->add_option("--p", c.p, "number of excursions");
  witness->add_option("--level", c.level, "hub level in the catalog space");

  auto* cls = app.add_subcommand("classify", "zero/infinite coarse entropy verdict");
  common(cls);
  cls->add_flag("--strict", c.strict, "exit 2 when inconclusive");

  auto* obstruct = app.add_subcommand("obstruct", "coarse embedding obstruction from source into target");
  common(obstruct);
  obstruct->add_flag("--strict", c.strict, "exit 2 when either verdict is inconclusive");
  obstruct->add_option("--target", c.target.tag)->check(CLI::IsMember(catalog_tags()));
  obstruct->add_option("--target-params", c.target.params);
  obstruct->add_option("--target-edges", c.target.edges);

  auto* qg = app.add_subcommand("qgcheck", "quasi-geodesic criterion on sample pairs");
  common(qg);
  qg->add_option("--delta", c.delta);
  qg->add_option("--pairs", c.pairs, "JSON array of [a, b] point pairs");

  auto* bg = app.add_subcommand("bgcheck", "bounded geometry evidence");
  common(bg);
  bg->add_option("--s", c.s, "separation");
  bg->add_option("--D", c.D, "diameter bound");
  bg->add_option("--depths", c.depths)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    validate(c);
    auto out = dispatch(c);
    emit(out, c);
    return out.status;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (reached " << e.reached() << "; raise --cap)\n";
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (raise --window)\n";
  } catch (const UnknownPoint& e) {
    std::cerr << "unknown point: " << e.what() << "\n";
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
  }
  return 1;
}
