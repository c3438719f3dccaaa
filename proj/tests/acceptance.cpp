// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "coarse/catalog.hpp"
#include "coarse/entropy.hpp"
#include "coarse/errors.hpp"
#include "coarse/extremal.hpp"
#include "coarse/geometry.hpp"
#include "coarse/graph.hpp"
#include "coarse/paths.hpp"
#include "generators.hpp"

#include <chrono>
#include <cmath>
#include <bit>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace coarse;

namespace {

// pinned tolerances and time limits (seconds)
constexpr double kRateTolerance = 1e-9;
constexpr double kSlopeTolerance = 0.05;
constexpr double kZeroSlope = 0.05;
constexpr double kLimit1 = 10, kLimit2 = 5, kLimit3 = 60, kLimit4 = 30, kLimit5 = 120, kLimit6 = 5, kLimit7 = 10,
                 kLimit8 = 60, kLimit9 = 60, kLimit10 = 5, kLimit11 = 120;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs > limit) {
    o.ok = false;
    o.detail = "over the time limit";
  }
  if (!o.ok) ++failures;
  std::ostringstream line;
  line << (o.ok ? "PASS" : "FAIL") << " " << std::setw(2) << id << " " << name << " (" << std::fixed
       << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << limit << " s)";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}

std::string str(const auto& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- 1
Outcome ultrametric_zero_rule() {
  Outcome o;
  auto u = make_example("ultrametric_product").space;
  const std::vector<std::string> radii{"1/2", "1", "3/2", "2", "3", "4", "5", "8", "17"};
  for (int delta : {1, 2, 4}) {
    for (const auto& rt : radii) {
      const Dist R = Dist::parse(rt);
      if (!(Dist(delta) < R)) continue;
      for (std::int64_t n = 0; n <= 6; ++n) {
        auto s = separated_count(u, pt(0), n, Dist(delta), R);
        const std::string at = "delta=" + std::to_string(delta) + " R=" + rt + " n=" + std::to_string(n);
        o.require(s.count == 1, at + ": count " + std::to_string(s.count));
        o.require(s.certificate == Certificate::exact, at + ": not exact");
        if (n <= 2) {
          // independent: exact packing over every enumerated path
          auto all = std::make_shared<const OrbitSet>(enumerate_orbits(*u, pt(0), n, Dist(delta), 100'000));
          auto best = max_separated(MetricItems::of_paths(u, all), R, 1'000);
          o.require(best.certificate == Certificate::exact && best.size() == 1, at + ": brute-force packing disagrees");
        }
      }
    }
  }
  return o;
}

// ---------------------------------------------------------------- 2
Outcome ball_cardinality() {
  Outcome o;
  auto u = make_example("ultrametric_product").space;
  auto small = make_example("ultrametric_product", {{"window", 12}}).space;
  for (std::int64_t n = 0; n <= 12; ++n) {
    const std::size_t expect = std::size_t{1} << n;
    const std::size_t ball = n == 0 ? 1 : u->delta_neighbors(pt(0), Dist(n)).size() + 1;
    o.require(ball == expect, "n=" + std::to_string(n) + ": |B| = " + std::to_string(ball));
    // independent: scan every point of the 12-coordinate window
    std::size_t scanned = 0;
    for (std::int64_t mask = 0; mask < (1 << 12); ++mask)
      if (!(Dist(n) < small->distance(pt(0), pt(mask)))) ++scanned;
    o.require(scanned == expect, "n=" + std::to_string(n) + ": scan gives " + std::to_string(scanned));
  }
  return o;
}

// ---------------------------------------------------------------- 3
Outcome covering_bound() {
  Outcome o;
  auto line = make_example("integer_line").space;
  Caps caps;
  caps.exact_covering = 32;
  std::string summary;
  for (std::int64_t n : {3, 6, 9, 12}) {
    auto r = dense_count(line, pt(0), n, Dist(1), Dist(4), caps);
    const double bound = std::pow(7.0, static_cast<double>(n) / 3 + 1);
    const std::string at = "n=" + std::to_string(n);
    o.require(static_cast<double>(r.count) <= bound, at + ": r = " + std::to_string(r.count) + " > " + str(bound));
    o.require(r.certificate != Certificate::lower_bound, at + ": only a lower bound");
    summary += (summary.empty() ? "" : ", ") + at + " r=" + std::to_string(r.count) + " (" + to_string(r.certificate) + ")";
    if (n <= 9) {
      // independent density check of the construction against all of P(n)
      auto all = enumerate_orbits(*line, pt(0), n, Dist(1), 100'000);
      auto cover = checkpoint_cover(*line, pt(0), n, Dist(1), Dist(4));
      o.require(cover && cover->family.size() <= bound, at + ": construction over the bound");
      if (!cover) continue;
      for (std::size_t i = 0; i < all.size(); ++i) {
        auto u = all.points(i);
        bool covered = false;
        for (std::size_t f = 0; f < cover->family.size() && !covered; ++f) {
          auto v = cover->family.points(f);
          std::int64_t worst = 0;
          for (std::size_t t = 0; t < u.size(); ++t) worst = std::max(worst, std::abs(u[t].major - v[t].major));
          covered = worst < 4;
        }
        if (!covered) {
          o.require(false, at + ": path " + std::to_string(i) + " not covered");
          break;
        }
      }
    }
  }
  if (o.ok) o.detail = summary;
  return o;
}

// ---------------------------------------------------------------- 4
Outcome pingpong_witness_tree_line() {
  Outcome o;
  auto tl = make_example("tree_line").space;
  const Dist delta(4), R(4);
  // x_n = 4^n, so x_{2R} = 4^8
  const double x2R = std::pow(4.0, 8);
  for (std::int64_t p : {1, 2, 3}) {
    const std::string at = "p=" + std::to_string(p);
    auto fam = build_pingpong(*tl, pt(0), delta, R, p, 0);
    const std::uint64_t expect = std::uint64_t{1} << (4 * p);
    o.require(fam.size() && *fam.size() == expect, at + ": size " + (fam.size() ? std::to_string(*fam.size()) : "?"));
    auto sep = check_separation(*tl, fam, 10'000);
    o.require(sep.ok && sep.pairs == expect * (expect - 1) / 2, at + ": separation check failed");
    const double formula = static_cast<double>(p) * 4 * std::log(2.0) / (std::ceil(x2R / 4) + 2.0 * p * std::ceil(8.0 / 4));
    o.require(std::abs(fam.rate_bound() - formula) <= kRateTolerance,
              at + ": rate " + str(fam.rate_bound()) + " vs " + str(formula));
    o.require(std::abs(rate_of(expect, static_cast<std::int64_t>(fam.length())) - formula) <= kRateTolerance,
              at + ": ln|family| / length differs from the formula");
    if (p <= 2) {
      // independent brute force over the coordinates where members differ
      auto all = fam.materialize(expect);
      const std::size_t len = static_cast<std::size_t>(all.n) + 1;
      std::vector<std::size_t> cols;
      for (std::size_t t = 0; t < len; ++t) {
        bool varies = false;
        for (std::size_t i = 1; i < all.size() && !varies; ++i) varies = all.indices(i)[t] != all.indices(0)[t];
        if (varies) cols.push_back(t);
      }
      bool all_sep = true;
      for (std::size_t i = 0; i < all.size() && all_sep; ++i) {
        for (std::size_t j = i + 1; j < all.size() && all_sep; ++j) {
          Dist worst(0);
          for (auto t : cols) worst = max(worst, tl->distance(all.table[all.indices(i)[t]], all.table[all.indices(j)[t]]));
          all_sep = !(worst < R);
        }
      }
      o.require(all_sep, at + ": brute-force pair closer than R");
      for (std::size_t i = 0; i < all.size(); ++i)
        if (!validate_path(all.points(i), delta, *tl)) o.require(false, at + ": member is not a delta-path");
    }
  }
  return o;
}

// ---------------------------------------------------------------- 5
Outcome prime_cycle_coding_map() {
  Outcome o;
  auto pc = make_example("prime_cycle").space;
  const Dist delta(2), R(17);
  const Rational r = make_rational(17, 4);
  const std::int64_t q = floor_of(r / 2);
  const std::int64_t n_max = 3 * q;
  auto rep = check_coding_map(*pc, pt(0), delta, R, n_max);
  o.require(rep.q == q, "q = " + std::to_string(rep.q));
  o.require(rep.ok, "library check reports a code shared by paths at distance >= R");

  // independent: own net, own Voronoi cells, pairwise distances within each code class
  auto window = pc->delta_neighbors(pt(0), delta * n_max + Dist(r));
  window.insert(window.begin(), pt(0));
  std::vector<PointRef> net;
  for (const auto& w : window) {
    bool far = true;
    for (const auto& z : net) far = far && !(pc->distance(w, z) < Dist(r));
    if (far) net.push_back(w);
  }
  std::map<PointRef, std::size_t> cell;
  auto code_of = [&](const PointRef& p) {
    auto it = cell.find(p);
    if (it != cell.end()) return it->second;
    std::size_t best = 0;
    for (std::size_t i = 1; i < net.size(); ++i)
      if (pc->distance(p, net[i]) < pc->distance(p, net[best])) best = i;
    return cell[p] = best;
  };
  std::map<std::pair<PointRef, PointRef>, Dist> dcache;
  auto d = [&](const PointRef& a, const PointRef& b) {
    if (a == b) return Dist(0);
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = dcache.find(key);
    return it != dcache.end() ? it->second : dcache[key] = pc->distance(a, b);
  };
  std::uint64_t paths = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto all = enumerate_orbits(*pc, pt(0), n, delta, 1'000'000);
    paths += all.size();
    o.require(rep.rows[static_cast<std::size_t>(n - 1)].paths == all.size(), "path counts differ");
    // sup over same-code pairs of the orbit distance = max over positions of the
    // diameter of the class's points at that position
    std::map<std::vector<std::size_t>, std::vector<std::set<std::uint32_t>>> classes;
    for (std::size_t i = 0; i < all.size(); ++i) {
      auto idx = all.indices(i);
      std::vector<std::size_t> key;
      for (std::int64_t j = 0; j <= n; j += q) key.push_back(code_of(all.table[idx[static_cast<std::size_t>(j)]]));
      auto& cols = classes[key];
      cols.resize(idx.size());
      for (std::size_t t = 0; t < idx.size(); ++t) cols[t].insert(idx[t]);
    }
    for (const auto& [key, cols] : classes) {
      for (const auto& col : cols) {
        for (auto a = col.begin(); a != col.end(); ++a) {
          for (auto b = std::next(a); b != col.end(); ++b) {
            Dist gap = d(all.table[*a], all.table[*b]);
            if (!(gap < R)) {
              o.require(false, "n=" + std::to_string(n) + ": equal codes at orbit distance " + gap.to_string());
              return o;
            }
          }
        }
      }
    }
    o.require(classes.size() == rep.rows[static_cast<std::size_t>(n - 1)].codes, "code counts differ");
  }
  o.detail = std::to_string(paths) + " paths coded up to n=" + std::to_string(n_max);
  return o;
}

// ---------------------------------------------------------------- 6
Outcome measured_tree_identities() {
  Outcome o;
  auto ex = make_example("branch_tree");
  auto tree = std::dynamic_pointer_cast<const BranchTree>(ex.space);
  o.require(tree != nullptr && ex.measured.has_value(), "branch_tree has no measure");
  if (!o.ok) return o;
  const auto& mu = ex.measured->mu;
  std::mt19937_64 rng(6);
  for (std::int64_t depth = 0; depth <= 8; ++depth) {
    std::int64_t vertices = 1;
    for (std::int64_t k = 2; k <= depth + 1; ++k) vertices *= k;  // (depth+1)! vertices at this depth
    std::set<std::int64_t> picks{0, vertices - 1};
    while (picks.size() < std::min<std::size_t>(6, static_cast<std::size_t>(vertices)))
      picks.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(vertices)));
    for (auto idx : picks) {
      const PointRef v{depth, idx};
      const std::string at = "v=(" + std::to_string(depth) + "," + std::to_string(idx) + ")";
      Rational kids = 0;
      for (const auto& c : tree->children(v)) kids += mu(c);
      o.require(kids == 2 * mu(v), at + ": mu(children) != 2 mu(v)");
      // subtree T_v(l) by levels
      std::vector<PointRef> level{v};
      Rational sub = mu(v);
      for (std::int64_t l = 1; l <= 3; ++l) {
        std::vector<PointRef> next;
        for (const auto& w : level)
          for (const auto& c : tree->children(w)) next.push_back(c);
        for (const auto& w : next) sub += mu(w);
        level = std::move(next);
        const Rational expect = (Rational((std::int64_t{1} << (l + 1)) - 1)) * mu(v);
        o.require(sub == expect, at + ": mu(T_v(" + std::to_string(l) + ")) = " + format_rational(sub));
      }
      for (std::int64_t l = 0; l <= 3; ++l) {
        Rational ball = mu(v);
        if (l > 0)
          for (const auto& w : tree->delta_neighbors(v, Dist(l))) ball += mu(w);
        o.require(ball <= Rational(std::int64_t{1} << (l + 2)), at + ": mu(B(v," + std::to_string(l) + ")) too big");
      }
    }
  }
  return o;
}

// ---------------------------------------------------------------- 7
Outcome transfer_isometry() {
  Outcome o;
  std::mt19937_64 rng(7);
  int pairs = 0;
  while (pairs < 100) {
    const int n = 4 + static_cast<int>(rng() % 6);
    auto sigma = test::random_permutation(rng, n);
    auto space = build_matrix_space(test::random_invariant_metric(rng, sigma));
    std::vector<std::pair<PointRef, PointRef>> images;
    for (int i = 0; i < n; ++i) images.emplace_back(pt(i), pt(sigma[i]));
    PointMap f(images);
    if (!check_isometry(*space, f, space->points()).ok) {
      o.require(false, "generated permutation is not an isometry");
      return o;
    }
    const Dist delta(1 + static_cast<std::int64_t>(rng() % 4));
    const int len = 1 + static_cast<int>(rng() % 5);
    const PointRef x0 = pt(static_cast<std::int64_t>(rng() % n));
    auto u = test::random_walk(rng, *space, x0, len, delta);
    auto v = test::random_walk(rng, *space, x0, len, delta);
    auto ids = make_orbit_set({u, v});
    auto fwd = transfer_orbits(TransferDirection::forward, *space, f, ids);
    // independent: y_i = sigma^i(x_i)
    for (int w = 0; w < 2; ++w) {
      const auto& src = w == 0 ? u.points : v.points;
      auto out = fwd.points(static_cast<std::size_t>(w));
      for (std::size_t i = 0; i < src.size(); ++i) {
        std::int64_t y = src[i].major;
        for (std::size_t k = 0; k < i; ++k) y = sigma[static_cast<std::size_t>(y)];
        o.require(out[i] == pt(y), "forward image differs from sigma^i(x_i)");
      }
      o.require(is_pseudoorbit(out, delta, *space, f), "forward image is not a delta-pseudoorbit of f");
    }
    o.require(orbit_distance(fwd.points(0), fwd.points(1), *space) == orbit_distance(u, v, *space),
              "forward map changed an orbit distance");
    auto back = transfer_orbits(TransferDirection::backward, *space, f, fwd);
    for (int w = 0; w < 2; ++w)
      o.require(validate_path(back.points(static_cast<std::size_t>(w)), delta, *space),
                "backward image is not a delta-path");
    o.require(orbit_distance(back.points(0), back.points(1), *space) == orbit_distance(u, v, *space),
              "backward map changed an orbit distance");
    ++pairs;
  }
  return o;
}

// ---------------------------------------------------------------- 8
std::size_t brute_packing(const MetricItems& items, const Dist& R) {
  const std::size_t n = items.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && items.distance(i, j) < R) ok = false;
    if (ok) best = static_cast<std::size_t>(std::popcount(mask));
  }
  return best;
}

std::size_t brute_covering(const MetricItems& items, const Dist& R) {
  const std::size_t n = items.size();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) >= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool near = false;
      for (std::size_t j = 0; j < n && !near; ++j) near = (mask >> j & 1) && items.distance(i, j) < R;
      ok = near;
    }
    if (ok) best = static_cast<std::size_t>(std::popcount(mask));
  }
  return best;
}

Outcome packing_covering_duality() {
  Outcome o;
  std::mt19937_64 rng(8);
  int brute = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 19);
    auto items = MetricItems::of_matrix(test::random_metric_matrix(rng, n, 8));
    const Dist R = Dist::parse(std::to_string(1 + rng() % 16) + "/2");
    auto s1 = max_separated(items, R);
    auto s2 = max_separated(items, R * 2);
    auto r1 = min_dense(items, R);
    const std::string at = "instance " + std::to_string(t);
    o.require(s1.certificate == Certificate::exact && s2.certificate == Certificate::exact &&
                  r1.certificate == Certificate::exact,
              at + ": a solver was not exact");
    o.require(s2.size() <= r1.size() && r1.size() <= s1.size(),
              at + ": s(2R)=" + std::to_string(s2.size()) + " r(R)=" + std::to_string(r1.size()) +
                  " s(R)=" + std::to_string(s1.size()));
    o.require(is_separated(items, s1.selected, R) && is_dense(items, r1.selected, R), at + ": invalid certificate set");
    if (n <= 12) {
      ++brute;
      o.require(brute_packing(items, R) == s1.size(), at + ": packing differs from brute force");
      o.require(brute_covering(items, R) == r1.size(), at + ": covering differs from brute force");
    }
  }
  o.detail = std::to_string(brute) + " instances also brute-forced";
  return o;
}

// ---------------------------------------------------------------- 9
Outcome subspace_monotonicity() {
  Outcome o;
  std::mt19937_64 rng(9);
  int done = 0, attempts = 0;
  Caps caps;
  caps.exact_packing = 160;
  while (done < 50 && attempts < 5000) {
    ++attempts;
    const int n = 5 + static_cast<int>(rng() % 5);
    auto Y = test::random_metric(rng, n, 6);
    std::vector<PointRef> sub{pt(0)};
    for (int i = 1; i < n; ++i)
      if (rng() % 2) sub.push_back(pt(i));
    auto X = induced_subspace(Y, sub);
    const Dist delta(1 + static_cast<std::int64_t>(rng() % 3));
    const Dist R = Dist::parse(std::to_string(1 + rng() % 12) + "/2");
    const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 3);
    if (count_orbits(*Y, pt(0), len, delta, 161) > 160) continue;
    auto sx = separated_count(X, pt(0), len, delta, R, caps);
    auto sy = separated_count(Y, pt(0), len, delta, R, caps);
    const std::string at = "pair " + std::to_string(done);
    o.require(sx.certificate == Certificate::exact && sy.certificate == Certificate::exact, at + ": not exact");
    o.require(sx.count <= sy.count,
              at + ": s_X = " + std::to_string(sx.count) + " > s_Y = " + std::to_string(sy.count));
    ++done;
  }
  o.require(done == 50, "only " + std::to_string(done) + " pairs generated");
  return o;
}

// ---------------------------------------------------------------- 10
Outcome quasi_geodesic_discrimination() {
  Outcome o;
  auto line = make_example("integer_line").space;
  auto pairs = default_qg_pairs(*line);
  auto q = quasi_geodesic_check(*line, Dist(1), pairs);
  o.require(q.pass && !pairs.empty(), "integer line fails a sampled pair");
  for (const auto& p : q.pairs)
    o.require(p.hops && *p.hops == std::abs(p.a.major - p.b.major), "integer line hop count is not |a - b|");
  auto log = make_example("log_line").space;
  const std::int64_t far = std::int64_t{1} << 20;
  for (std::int64_t delta = 1; delta <= 8; ++delta) {
    auto r = quasi_geodesic_check(*log, Dist(delta), {{pt(0), pt(far)}});
    const std::string at = "log_line delta=" + std::to_string(delta);
    o.require(!r.pass, at + ": passes");
    // each step moves at most 2^delta - 1, so 21 steps cannot reach 2^20
    o.require(r.pairs.size() == 1 && r.pairs[0].bound == 21 && 21 * ((std::int64_t{1} << delta) - 1) < far,
              at + ": bound or step reach unexpected");
  }
  return o;
}

// ---------------------------------------------------------------- 11
Outcome classifier_end_to_end() {
  Outcome o;
  auto um = classify(make_example("ultrametric_product").space);
  o.require(um.verdict == Verdict::zero && um.certified, "ultrametric_product: " + to_string(um.verdict));

  auto bt = make_example("branch_tree");
  auto br = classify(bt.space, {}, bt.measured);
  o.require(br.verdict == Verdict::infinite && br.rule == "not-coarsely-bounded-geometry",
            "branch_tree: " + to_string(br.verdict) + " via " + br.rule);
  o.require(br.evidence.contains("witness") && br.evidence["witness"]["separated"] == true,
            "branch_tree: no separated witness family");

  auto tree = make_example("regular_tree").space;
  auto rt = classify(tree);
  o.require(rt.verdict == Verdict::infinite, "regular_tree: " + to_string(rt.verdict));
  GrowthOptions opts;
  opts.l_max = 14;
  const auto g = growth_series(*tree, pt(0), Dist(1), opts);
  const auto slope = fit_log_slope(g.values);
  o.require(slope && std::abs(*slope - std::log(2.0)) <= kSlopeTolerance,
            "regular_tree slope over l <= 14: " + (slope ? str(*slope) : std::string("none")));

  auto il = classify(make_example("integer_line").space);
  o.require(il.verdict == Verdict::zero, "integer_line: " + to_string(il.verdict));
  o.require(il.evidence.contains("slope") && il.evidence["slope"].is_number() &&
                il.evidence["slope"].get<double>() < kZeroSlope,
            "integer_line slope not below threshold");

  auto src = classify(make_example("tree_line").space);
  auto pce = make_example("prime_cycle");
  auto tgt = classify(pce.space, {}, pce.measured);
  auto ob = embedding_obstruction(src, tgt);
  o.require(ob.obstructed, "tree_line -> prime_cycle: " + ob.reason);
  if (o.ok) o.detail = "regular_tree slope " + str(*slope);
  return o;
}

}  // namespace

int main() {
  run(1, "ultrametric zero-rule", kLimit1, ultrametric_zero_rule);
  run(2, "ball cardinality 2^n", kLimit2, ball_cardinality);
  run(3, "covering bound 7^(n/3+1)", kLimit3, covering_bound);
  run(4, "ping-pong witness on tree_line", kLimit4, pingpong_witness_tree_line);
  run(5, "prime-cycle coding map", kLimit5, prime_cycle_coding_map);
  run(6, "measured tree identities", kLimit6, measured_tree_identities);
  run(7, "transfer-map isometry", kLimit7, transfer_isometry);
  run(8, "packing/covering duality", kLimit8, packing_covering_duality);
  run(9, "subspace monotonicity", kLimit9, subspace_monotonicity);
  run(10, "quasi-geodesic discrimination", kLimit10, quasi_geodesic_discrimination);
  run(11, "classifier end-to-end", kLimit11, classifier_end_to_end);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures;
}
