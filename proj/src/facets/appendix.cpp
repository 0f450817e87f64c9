#include <algorithm>
#include <stdexcept>

#include "thmc/facets.hpp"

namespace thmc::facets {

namespace {

using PointSet = std::set<RationalVector>;

RationalVector rv(std::initializer_list<const char*> entries) {
  RationalVector out;
  for (const char* e : entries) out.push_back(parse_rational(e));
  return out;
}

std::string point_str(const RationalVector& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + "]";
}

std::string int_str(const IntVector& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + "]";
}

Rational l1(const RationalVector& x) {
  Rational s = 0;
  for (const auto& v : x) s += abs(v);
  return s;
}

Rational total(const RationalVector& x) {
  Rational s = 0;
  for (const auto& v : x) s += v;
  return s;
}

PointSet expand(const std::vector<RationalVector>& points, bool with_reversal) {
  PointSet out;
  for (const auto& p : points) {
    for (const auto& s : label_permutations()) {
      RationalVector q = permute_labels(p, s);
      if (with_reversal) out.insert(reverse_pairs(q));
      out.insert(std::move(q));
    }
  }
  return out;
}

}  // namespace

const std::vector<RationalVector>& appendix_vertices(int r) {
  static const std::array<std::vector<RationalVector>, 6> lists = {{
      {rv({"0", "1", "1", "0", "0", "1"}), rv({"0", "1", "2", "1/2", "1", "3/2"}),
       rv({"0", "1", "3/2", "1", "1/2", "2"}), rv({"0", "2", "2", "0", "1", "2"}),
       rv({"0", "2", "2", "0", "2", "5"}), rv({"0", "2", "2", "2/3", "0", "7/3"}),
       rv({"0", "2", "3", "0", "2", "4"}), rv({"0", "2", "4", "2", "0", "3"}),
       rv({"0", "2", "3/2", "0", "0", "3/2"}), rv({"0", "2", "7/3", "0", "2/3", "2"}),
       rv({"0", "3", "4", "0", "0", "4"}), rv({"0", "6/5", "8/5", "4/5", "2/5", "11/5"}),
       rv({"0", "6/5", "11/5", "2/5", "4/5", "8/5"}), rv({"2/3", "4/3", "4/3", "2/3", "2/3", "7/3"})},
      {rv({"0", "0", "0", "0", "0", "0"}), rv({"0", "0", "0", "1", "3", "2"}), rv({"0", "0", "1", "0", "2", "3"}),
       rv({"0", "1", "1", "0", "1", "3"}), rv({"0", "1", "1", "0", "2", "2"}), rv({"0", "1", "2", "0", "1", "2"}),
       rv({"0", "1", "2", "1", "0", "2"}), rv({"0", "1", "1/2", "1/2", "1/2", "1/2"}),
       rv({"0", "1/2", "0", "1/2", "1", "1"}), rv({"0", "1/2", "1", "1", "1/2", "0"}),
       rv({"0", "1/2", "1/2", "1", "1/2", "1/2"}), rv({"0", "1/2", "1/2", "1/2", "1", "1/2"})},
      {rv({"0", "1", "1", "0", "1", "2"}), rv({"0", "1", "2", "1/2", "2", "5/2"}),
       rv({"0", "1", "3", "3/2", "1", "3/2"}), rv({"0", "1", "3/2", "1", "3/2", "3"}),
       rv({"0", "1", "5/2", "2", "1/2", "2"}), rv({"0", "2", "2", "0", "2", "5"}), rv({"0", "2", "2", "0", "3", "4"}),
       rv({"0", "2", "2", "1", "2", "4"}), rv({"0", "2", "3", "0", "2", "4"}), rv({"0", "2", "4", "2", "0", "3"}),
       rv({"0", "2", "4", "2", "1", "2"}), rv({"0", "3", "4", "0", "3", "7"}), rv({"0", "3", "7", "3", "0", "4"}),
       rv({"1/3", "2/3", "2/3", "1/3", "1/3", "2/3"}), rv({"1/3", "2/3", "5/3", "5/6", "4/3", "7/6"}),
       rv({"1/3", "2/3", "7/6", "4/3", "5/6", "5/3"}), rv({"2/3", "4/3", "4/3", "2/3", "2/3", "7/3"}),
       rv({"2/3", "4/3", "4/3", "2/3", "5/3", "4/3"})},
      {rv({"0", "0", "0", "0", "0", "0"}), rv({"0", "0", "0", "1", "1", "0"}), rv({"0", "1", "1", "0", "2", "4"}),
       rv({"0", "1", "2", "0", "2", "3"}), rv({"0", "1", "3", "2", "0", "2"})},
      {rv({"0", "1", "1", "0", "0", "1"}), rv({"0", "1", "2", "1/2", "1", "3/2"}),
       rv({"0", "1", "3/2", "1", "1/2", "2"}), rv({"0", "2", "2", "0", "1", "4"}), rv({"0", "2", "2", "0", "2", "3"}),
       rv({"0", "2", "2", "1", "1", "3"}), rv({"0", "2", "3", "0", "1", "3"}), rv({"0", "2", "3", "1", "0", "3"}),
       rv({"0", "2", "3", "1", "1", "2"}), rv({"0", "3", "4", "0", "2", "6"}), rv({"0", "3", "6", "2", "0", "4"}),
       rv({"1/3", "5/3", "5/3", "1/3", "1/3", "8/3"}), rv({"1/3", "5/3", "5/3", "1/3", "4/3", "5/3"})},
      {rv({"0", "0", "0", "0", "1", "1"}), rv({"0", "0", "0", "1", "4", "3"}), rv({"0", "0", "1", "0", "3", "4"}),
       rv({"0", "1", "1", "0", "2", "4"}), rv({"0", "1", "1", "0", "3", "3"}), rv({"0", "1", "2", "0", "2", "3"}),
       rv({"0", "1", "3", "2", "0", "2"}), rv({"0", "1", "1/2", "1/2", "3/2", "3/2"}),
       rv({"0", "1", "3/2", "3/2", "1/2", "1/2"}), rv({"0", "1/2", "0", "1/2", "2", "2"}),
       rv({"0", "1/2", "2", "2", "1/2", "0"}), rv({"0", "1/2", "1/2", "1/2", "2", "3/2"}),
       rv({"0", "1/2", "3/2", "2", "1/2", "1/2"}), rv({"1", "2", "1/2", "1/2", "1/2", "1/2"})},
  }};
  if (r < 0 || r > 5) throw std::invalid_argument("appendix_vertices: residue must be in 0..5");
  return lists[static_cast<std::size_t>(r)];
}

RationalVector to_canonical(const RationalVector& p, IndexConvention convention) {
  if (p.size() != kDim) throw std::invalid_argument("to_canonical: expected 6 coordinates");
  if (convention == IndexConvention::Canonical) return p;
  // printed: x12, x21, x13, x31, x23, x32
  return {p[0], p[2], p[1], p[4], p[3], p[5]};
}

AppendixResult verify_appendix_vertices(int r) {
  AppendixResult res;
  res.r = r;
  const auto forms = q_forms(r);
  const auto h = q_polyhedron(r);
  res.report.add("24 inequalities", forms.size() == 24, std::to_string(forms.size()));

  const auto v = polytope::vertex_enumeration(h);
  const PointSet computed(v.vertices.begin(), v.vertices.end());
  res.computed = computed.size();
  for (const auto& x : computed) res.max_l1 = std::max(res.max_l1, l1(x));

  const std::set<IntVector> rays(v.rays.begin(), v.rays.end());
  const std::set<IntVector> loops(loop_rays().begin(), loop_rays().end());
  res.report.add("recession cone is spanned by the five loops", rays == loops,
                 std::to_string(rays.size()) + " rays");

  // Vertex sanity: feasible, at least 6 tight rows of rank 6.
  std::size_t bad = 0;
  for (const auto& x : computed) {
    std::vector<IntVector> tight;
    bool feasible = true;
    for (const auto& f : forms) {
      const Rational lhs = dot(f.c, x);
      if (lhs < f.offset) feasible = false;
      if (lhs == f.offset) tight.push_back(f.c);
    }
    if (!feasible || tight.size() < 6 || exactla::rank(tight) != 6) ++bad;
  }
  res.report.add("every vertex is feasible with a tight set of rank 6", bad == 0,
                 std::to_string(bad) + " bad of " + std::to_string(computed.size()));

  struct Attempt {
    IndexConvention convention;
    bool reversal;
    const char* name;
  };
  const Attempt attempts[] = {
      {IndexConvention::Printed, false, "printed order, permutations"},
      {IndexConvention::Canonical, false, "canonical order, permutations"},
      {IndexConvention::Printed, true, "printed order, permutations and reversal"},
      {IndexConvention::Canonical, true, "canonical order, permutations and reversal"},
  };
  for (const auto& a : attempts) {
    std::vector<RationalVector> listed;
    for (const auto& p : appendix_vertices(r)) listed.push_back(to_canonical(p, a.convention));
    const PointSet expanded = expand(listed, a.reversal);
    if (a.convention == IndexConvention::Printed && !a.reversal) {
      res.listed_expanded = expanded.size();
      std::set_difference(computed.begin(), computed.end(), expanded.begin(), expanded.end(),
                          std::back_inserter(res.missing));
      std::set_difference(expanded.begin(), expanded.end(), computed.begin(), computed.end(),
                          std::back_inserter(res.extra));
    }
    if (!res.matching && expanded == computed) res.matching = a.name;
  }
  // Diagnostic: the same system with the offsets of the even and 3k+2 rows
  // negated. Not a valid outer description of P^T, but it is what the printed
  // lists turn out to describe when they disagree with the computed ones.
  {
    polytope::HPolyhedron flipped;
    flipped.dim = kDim;
    for (const auto& f : forms) {
      const bool flip = f.family == "even" || f.family == "3k+2";
      flipped.inequalities.push_back({f.c, Rational(flip ? Integer(-f.offset) : f.offset)});
    }
    const auto fv = polytope::vertex_enumeration(flipped);
    const PointSet fset(fv.vertices.begin(), fv.vertices.end());
    std::vector<RationalVector> listed;
    for (const auto& p : appendix_vertices(r)) listed.push_back(to_canonical(p, IndexConvention::Printed));
    for (const auto& x : fset) res.flipped_max_l1 = std::max(res.flipped_max_l1, l1(x));
    res.flipped_offsets_match = expand(listed, false) == fset;
    res.report.note("printed lists equal the vertices with even and 3k+2 offsets negated", res.flipped_offsets_match,
                    std::to_string(fset.size()) + " vertices, max L1 " + to_string(res.flipped_max_l1));
  }

  std::string detail = res.matching ? *res.matching : "no convention matches";
  detail += "; printed order differences: " + std::to_string(res.missing.size()) + " unlisted, " +
            std::to_string(res.extra.size()) + " spurious";
  res.report.add("listed vertices reproduce the computed vertex set", res.matching.has_value(), detail);
  return res;
}

nlohmann::json to_json(const AppendixResult& res) {
  auto pts = [](const std::vector<RationalVector>& xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back(point_str(x));
    return out;
  };
  nlohmann::json j = res.report.to_json();
  j["r"] = res.r;
  j["computed_vertices"] = res.computed;
  j["listed_expanded"] = res.listed_expanded;
  j["matching_convention"] = res.matching ? nlohmann::json(*res.matching) : nlohmann::json(nullptr);
  j["unlisted"] = pts(res.missing);
  j["spurious"] = pts(res.extra);
  j["max_l1"] = to_string(res.max_l1);
  j["flipped_offsets_match"] = res.flipped_offsets_match;
  j["flipped_max_l1"] = to_string(res.flipped_max_l1);
  return j;
}

// ---------------------------------------------------------------------------
// The 24-facet pipeline

RationalVector vertex_ray_extension(const RationalVector& v, const IntVector& e, std::size_t T) {
  if (v.size() != kDim || e.size() != kDim) throw std::invalid_argument("vertex_ray_extension: expected 6 coordinates");
  Integer se = 0;
  for (const auto& x : e) se += x;
  if (se == 0) throw std::invalid_argument("vertex_ray_extension: ray is parallel to the hyperplane");
  const Rational room = Rational(static_cast<long>(T) - 1) - total(v);
  if (room < 0) throw std::invalid_argument("vertex_ray_extension: vertex lies beyond sum(x) = T-1");
  const Rational t = room / Rational(se);
  RationalVector out(kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    out[i] = v[i] + t * e[i];
    out[i].canonicalize();
  }
  return out;
}

Verify24Result verify_24_facets(std::size_t T) {
  if (T < 5) throw std::invalid_argument("verify_24_facets: T must be at least 5");
  Verify24Result res;
  res.T = T;
  const int r = static_cast<int>(T % 6);

  const auto columns = distinct_columns(kStates, T);
  std::vector<RationalVector> points;
  for (const auto& c : columns) points.push_back(to_rational_vector(c.counts()));

  // Ground truth: the hull of the columns.
  const auto hull = polytope::convex_hull(points);
  res.hull_facets = hull.inequalities.size();
  const std::set<polytope::Inequality> hull_set(hull.inequalities.begin(), hull.inequalities.end());
  res.report.add("hull has 24 facets", res.hull_facets == 24, std::to_string(res.hull_facets));

  std::set<polytope::Inequality> orbit;
  std::set<IntVector> cone_orbit;
  for (const auto& f : table1_vectors(T)) {
    for (const auto& c : symmetry_orbit(f.c, true)) {
      cone_orbit.insert(c);
      orbit.insert(polytope::canonical_inequality({c, 0}, hull.equations));
    }
  }
  res.orbit_size = orbit.size();
  res.hull_equals_orbit = orbit == hull_set;
  res.report.add("hull facets equal the orbit of the listed rows", res.hull_equals_orbit,
                 std::to_string(orbit.size()) + " orbit vectors");

  std::set<polytope::Inequality> q_set;
  for (const auto& f : q_forms(r)) q_set.insert(polytope::canonical_inequality({f.c, Rational(f.offset)}, hull.equations));
  res.hull_equals_q = q_set == hull_set;
  res.report.add("Q^r restricted to sum(x) = T-1 has the hull facets", res.hull_equals_q);

  const auto cone = polytope::conic_hull(points);
  const std::set<IntVector> cone_facets = [&] {
    std::set<IntVector> s;
    for (const auto& f : cone.inequalities) s.insert(f.normal);
    return s;
  }();
  res.report.add("cone facets equal the orbit of the listed rows", cone.equations.empty() && cone_facets == cone_orbit,
                 std::to_string(cone_facets.size()) + " cone facets");

  // Every half-line from a vertex of Q^r along a loop must meet sum(x) = T-1
  // inside P^T.
  const auto qv = polytope::vertex_enumeration(q_polyhedron(r));
  res.q_vertices = qv.vertices.size();
  res.q_rays = qv.rays.size();
  const std::set<IntVector> loops(loop_rays().begin(), loop_rays().end());
  res.report.add("recession rays of Q^r are the five loops",
                 std::set<IntVector>(qv.rays.begin(), qv.rays.end()) == loops);

  std::size_t outside = 0, witness_failures = 0, lift_failures = 0;
  for (const auto& v : qv.vertices) {
    if (total(v) > static_cast<long>(T) - 1) {
      res.pairs_skipped += loop_rays().size();
      res.extension_argument_complete = false;
      continue;
    }
    for (std::size_t e = 0; e < loop_rays().size(); ++e) {
      const IntVector& ray = loop_rays()[e];
      ExtensionCheck chk{v, ray, vertex_ray_extension(v, ray, T), false, false, std::nullopt, std::nullopt};
      chk.integral = std::all_of(chk.point.begin(), chk.point.end(), [](const Rational& x) { return x.get_den() == 1; });
      chk.in_polytope = exactla::nonnegative_combination(points, chk.point, true).has_value();
      if (!chk.in_polytope) ++outside;
      if (chk.integral && chk.in_polytope) {
        std::vector<std::int64_t> counts;
        for (const auto& x : chk.point) counts.push_back(x.get_num().get_si());
        chk.witness = eulerian_path(TransitionVector(kStates, counts));
        if (!chk.witness || chk.witness->length() != T) {
          ++witness_failures;
        } else {
          // Adding 6 transitions: three 2-loops or two 3-loops.
          const Word& loop = loop_words()[e];
          const std::size_t copies = 6 / (loop.length() - 1);
          Word lifted = insert_cycle(*chk.witness, loop, copies);
          const auto target = vertex_ray_extension(v, ray, T + 6);
          const auto got = transition_counts(lifted, kStates);
          bool ok = lifted.length() == T + 6;
          for (std::size_t i = 0; i < kDim; ++i) ok = ok && Rational(got[i]) == target[i];
          if (ok) chk.lifted = std::move(lifted);
          else ++lift_failures;
        }
      }
      res.extensions.push_back(std::move(chk));
    }
  }
  res.report.add("every extension point lies in P^T", outside == 0,
                 std::to_string(res.extensions.size()) + " checked, " + std::to_string(outside) + " outside, " +
                     std::to_string(res.pairs_skipped) + " skipped");
  res.report.add("integral extension points have word witnesses lifting to T+6",
                 witness_failures == 0 && lift_failures == 0,
                 std::to_string(witness_failures) + " missing, " + std::to_string(lift_failures) + " bad lifts");
  return res;
}

nlohmann::json to_json(const Verify24Result& res) {
  nlohmann::json j = res.report.to_json();
  j["T"] = res.T;
  j["hull_facets"] = res.hull_facets;
  j["orbit_size"] = res.orbit_size;
  j["hull_equals_orbit"] = res.hull_equals_orbit;
  j["hull_equals_q"] = res.hull_equals_q;
  j["q_vertices"] = res.q_vertices;
  j["q_rays"] = res.q_rays;
  j["pairs_skipped"] = res.pairs_skipped;
  j["extension_argument_complete"] = res.extension_argument_complete;
  nlohmann::json ext = nlohmann::json::array();
  for (const auto& c : res.extensions) {
    nlohmann::json e{{"vertex", point_str(c.vertex)},
                     {"ray", int_str(c.ray)},
                     {"point", point_str(c.point)},
                     {"in_polytope", c.in_polytope},
                     {"integral", c.integral}};
    if (c.witness) e["witness"] = c.witness->str();
    if (c.lifted) e["lifted"] = c.lifted->str();
    ext.push_back(std::move(e));
  }
  j["extensions"] = ext;
  return j;
}

}  // namespace thmc::facets
