#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>

namespace coarse {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::zero: return "zero";
    case Verdict::infinite: return "infinite";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr const char* kWindowCaveat =
    "finite-window evidence: slopes and separated sets are computed on a truncation and do not "
    "prove an asymptotic statement";
constexpr const char* kAnnotationCaveat =
    "certified by the catalog annotation; the attached evidence is a finite consistency check";

bool ultrametric_on(const MetricSpace& space, const std::vector<PointRef>& pts) {
  const std::size_t n = pts.size();
  std::vector<Dist> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = space.distance(pts[i], pts[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && d[i * n + k] > max(d[i * n + j], d[j * n + k])) return false;
  return true;
}

GrowthClass indicated_growth(Verdict v) {
  if (v == Verdict::zero) return GrowthClass::subexponential;
  if (v == Verdict::infinite) return GrowthClass::exponential;
  return GrowthClass::unknown;
}

// Certified only when the annotation and the evidence agree.
void settle(ClassificationReport& rep, GrowthClass tag) {
  if (tag == GrowthClass::unknown) {
    rep.certified = false;
    rep.verdict = Verdict::inconclusive;
    rep.caveat = std::string(kWindowCaveat) + "; no catalog growth annotation, so the verdict stays inconclusive";
  } else if (tag != indicated_growth(rep.indicated)) {
    rep.certified = false;
    rep.verdict = Verdict::inconclusive;
    rep.caveat = std::string(kWindowCaveat) + "; the catalog annotation (" + to_string(tag) +
                 ") and the fitted slope disagree";
  } else {
    rep.certified = true;
    rep.verdict = rep.indicated;
    rep.caveat = std::string(kWindowCaveat) + "; the verdict is certified by the catalog growth annotation";
  }
}

nlohmann::json slope_json(const std::optional<double>& s) { return s ? nlohmann::json(*s) : nlohmann::json(nullptr); }

}  // namespace

ClassificationReport classify(const SpaceHandle& space, const ClassifyConfig& config,
                              const std::optional<MeasuredSpaceHandle>& measured) {
  ClassificationReport rep;
  rep.space = space->describe();
  const auto& tr = space->traits();
  const PointRef x0 = space->basepoint();
  if (!tr.catalog_tag.empty()) rep.evidence["catalog_tag"] = tr.catalog_tag;
  if (!tr.growth_formula.empty()) rep.evidence["growth_formula"] = tr.growth_formula;

  // (1) zero by bounded components
  if (config.allow_zero_rules) {
    if (tr.finite) {
      auto pts = space->points();
      rep.evidence["points"] = pts.size();
      rep.certified = true;
      rep.verdict = rep.indicated = Verdict::zero;
      if (pts.size() <= config.exhaustive_limit && ultrametric_on(*space, pts)) {
        rep.rule = "ultrametric";
        rep.evidence["certification"] = "ultrametric inequality checked on all triples";
      } else {
        rep.rule = "bounded-components";
        rep.evidence["certification"] = "finite space: every delta-component is bounded";
      }
      rep.caveat = "exhaustive check on a finite space";
      return rep;
    }
    if (tr.ultrametric || tr.bounded_components) {
      rep.rule = tr.ultrametric ? "ultrametric" : "bounded-components";
      rep.certified = true;
      rep.verdict = rep.indicated = Verdict::zero;
      rep.evidence["certification"] = "catalog annotation";
      // every delta-component is bounded, so one delta-path of any length already captures s
      auto c = delta_component(*space, x0, Dist(1), 64);
      rep.evidence["component_of_basepoint"] = {{"delta", "1"}, {"points", c.points.size()}, {"complete", c.complete}};
      rep.caveat = kAnnotationCaveat;
      return rep;
    }
    if (tr.coding_map_zero) {
      rep.rule = "coding-map-bound";
      rep.certified = true;
      rep.verdict = rep.indicated = Verdict::zero;
      rep.evidence["certification"] = "catalog annotation";
      try {
        rep.evidence["coding_map"] = to_json(check_coding_map(*space, x0, Dist(2), Dist(17), 3, config.caps));
      } catch (const Error& e) {
        rep.evidence["coding_map_error"] = e.what();
      }
      rep.caveat = kAnnotationCaveat;
      return rep;
    }
  }

  // (2) quasi-geodesic without bounded geometry
  if (config.allow_bounded_geometry_rule && tr.quasi_geodesic == true && tr.coarsely_bounded_geometry != true) {
    rep.rule = "not-coarsely-bounded-geometry";
    std::optional<BGEvidence> bg;
    try {
      BGOptions opts;
      opts.window_points = config.caps.window_points;
      bg = bounded_geometry_evidence(*space, config.bg_s, config.bg_D, config.bg_depths, opts);
      rep.evidence["bounded_geometry"] = to_json(*bg, *space);
    } catch (const Error& e) {
      rep.evidence["bounded_geometry_error"] = e.what();
    }
    try {
      auto family = build_pingpong(*space, x0, Dist(1), config.bg_s, config.witness_p, config.witness_level);
      auto sep = check_separation(*space, family, 10'000);
      rep.evidence["witness"] = {{"delta", "1"},
                                 {"R", config.bg_s.to_string()},
                                 {"p", family.p()},
                                 {"arms", family.arms().size()},
                                 {"arm_length", family.arm_length()},
                                 {"base_length", family.base().length()},
                                 {"size", *family.size()},
                                 {"length", family.length()},
                                 {"rate_bound", family.rate_bound()},
                                 {"separated", sep.ok},
                                 {"pairs_checked", sep.pairs}};
    } catch (const Error& e) {
      rep.evidence["witness_error"] = e.what();
    }
    const bool unbounded = bg && bg->verdict == BGVerdict::unbounded_evidence;
    rep.indicated = unbounded ? Verdict::infinite : Verdict::inconclusive;
    if (tr.coarsely_bounded_geometry == false && !(bg && bg->verdict == BGVerdict::bounded_evidence)) {
      rep.certified = true;
      rep.verdict = Verdict::infinite;
      rep.caveat = kAnnotationCaveat;
    } else {
      rep.verdict = Verdict::inconclusive;
      rep.caveat = std::string(kWindowCaveat) + "; unbounded geometry is not annotated, so the verdict stays inconclusive";
    }
    return rep;
  }

  // (3) bounded geometry: sup-ball growth
  if (config.allow_growth_rule && (tr.coarsely_bounded_geometry == true || tr.max_degree)) {
    std::vector<double> slopes;
    nlohmann::json series = nlohmann::json::array();
    // on graphs the sup-ball growth is V_1; other spaces need every delta
    std::vector<Dist> deltas = config.deltas;
    if (tr.graph_metric) deltas = {Dist(1)};
    bool fitted = true;
    for (const auto& d : deltas) {
      GrowthOptions opts;
      opts.l_max = config.l_max;
      opts.point_budget = config.ball_budget;
      opts.stop_at_budget = true;
      auto g = growth_series(*space, x0, d, opts);
      auto s = fit_log_slope(g.values);
      auto j = to_json(g, *space);
      j["slope"] = slope_json(s);
      series.push_back(std::move(j));
      if (s) {
        slopes.push_back(*s);
      } else {
        fitted = false;
      }
    }
    rep.evidence["growth"] = series;
    rep.evidence["thresholds"] = {{"zero_below", config.zero_slope}, {"positive_above", config.positive_slope}};
    rep.evidence["slope"] = slopes.empty() ? nlohmann::json(nullptr) : nlohmann::json(slopes.front());
    if (fitted && !slopes.empty() && *std::max_element(slopes.begin(), slopes.end()) < config.zero_slope) {
      rep.indicated = Verdict::zero;
    } else if (fitted && !slopes.empty() && *std::min_element(slopes.begin(), slopes.end()) > config.positive_slope) {
      rep.indicated = Verdict::infinite;
    }
    const bool transitive_only = tr.vertex_transitive && tr.step_growth == GrowthClass::unknown;
    if (transitive_only) {
      rep.rule = "vertex-transitive-growth";
    } else if (rep.indicated == Verdict::zero ||
               (rep.indicated == Verdict::inconclusive && tr.step_growth == GrowthClass::subexponential)) {
      rep.rule = "bounded-geometry-growth-zero";
    } else {
      rep.rule = "bounded-geometry-growth-positive";
    }
    settle(rep, tr.step_growth);
    return rep;
  }

  // (4) measured volume growth
  if (config.allow_measured_rule && measured && tr.measured_volume_finite) {
    rep.rule = "measured-volume";
    GrowthOptions opts;
    opts.l_max = config.l_max;
    opts.point_budget = config.ball_budget;
    opts.stop_at_budget = true;
    auto g = growth_series(*measured->space, x0, Dist(1), opts, &measured->mu);
    auto s = fit_log_slope(g.values);
    auto j = to_json(g, *space);
    j["slope"] = slope_json(s);
    rep.evidence["volume"] = j;
    rep.evidence["thresholds"] = {{"positive_above", config.positive_slope}};
    if (s && *s > config.positive_slope) rep.indicated = Verdict::infinite;
    if (rep.indicated == Verdict::infinite) {
      settle(rep, tr.measured_growth);
    } else {
      rep.verdict = Verdict::inconclusive;
      rep.caveat = std::string(kWindowCaveat) + "; slow volume growth alone does not certify zero entropy";
    }
    return rep;
  }

  rep.caveat = "no rule applies to this space with the given configuration";
  return rep;
}

Obstruction embedding_obstruction(const ClassificationReport& source, const ClassificationReport& target) {
  Obstruction out;
  if (source.verdict == Verdict::infinite && target.verdict == Verdict::zero) {
    out.obstructed = true;
    out.reason = "no coarse embedding: " + source.space + " has infinite entropy (" + source.rule + ") and " +
                 target.space + " has zero entropy (" + target.rule + "), and an embedding cannot raise entropy";
  } else {
    out.reason = "no obstruction: source is " + to_string(source.verdict) + ", target is " + to_string(target.verdict);
  }
  return out;
}

}  // namespace coarse
