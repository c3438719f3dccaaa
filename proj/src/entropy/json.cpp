#include "coarse/entropy.hpp"

namespace coarse {

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const RatePoint& p) {
  return {{"n", p.n},
          {"count", p.count},
          {"certificate", to_string(p.certificate)},
          {"rate", p.rate},
          {"method", p.method},
          {"paths", opt(p.paths)}};
}

nlohmann::json to_json(const RateSeries& s, const MetricSpace& space) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"n", r.n},
                    {"separated", r.separated ? to_json(*r.separated) : nlohmann::json(nullptr)},
                    {"dense", r.dense ? to_json(*r.dense) : nlohmann::json(nullptr)},
                    {"checkpoint_bound_log", opt(r.checkpoint_bound_log)},
                    {"covering_bound_log", opt(r.covering_bound_log)}});
  }
  return {{"schema", "v1"},
          {"x0", space.encode(s.x0)},
          {"delta", s.delta.to_string()},
          {"R", s.R.to_string()},
          {"k", s.k},
          {"v_k", opt(s.v_k)},
          {"v_ceil", opt(s.v_ceil)},
          {"rows", rows}};
}

nlohmann::json to_json(const GrowthSeries& g, const MetricSpace& space) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : g.values) values.push_back(format_rational(v));
  nlohmann::json bases = nlohmann::json::array();
  for (const auto& b : g.base_points) bases.push_back(space.encode(b));
  return {{"schema", "v1"},
          {"delta", g.delta.to_string()},
          {"basepoint", space.encode(g.basepoint)},
          {"measured", g.measured},
          {"sup_mode", to_string(g.sup_mode)},
          {"window", g.window},
          {"truncated", g.truncated},
          {"base_points", bases},
          {"values", values}};
}

nlohmann::json to_json(const CodingMapReport& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"n", r.n},
                    {"paths", r.paths},
                    {"codes", r.codes},
                    {"largest_group", r.largest_group},
                    {"worst", r.worst.to_string()},
                    {"ok", r.ok}});
  }
  return {{"delta", c.delta.to_string()},
          {"R", c.R.to_string()},
          {"r", format_rational(c.r)},
          {"q", c.q},
          {"net_size", c.net_size},
          {"window_points", c.window_points},
          {"ok", c.ok},
          {"rows", rows}};
}

nlohmann::json to_json(const ClassificationReport& r) {
  return {{"schema", "v1"},
          {"space", r.space},
          {"verdict", to_string(r.verdict)},
          {"rule", r.rule.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.rule)},
          {"certified", r.certified},
          {"indicated", to_string(r.indicated)},
          {"evidence", r.evidence},
          {"caveat", r.caveat}};
}

}  // namespace coarse
