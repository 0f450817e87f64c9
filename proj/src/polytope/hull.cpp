#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "thmc/polytope.hpp"

namespace thmc::polytope {

namespace {

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// (normal, -offset) scaled to a primitive integer vector.
IntVector homogenize(const IntVector& normal, const Rational& offset) {
  RationalVector h = to_rational_vector(normal);
  h.push_back(-offset);
  return primitive_integer(h);
}

IntVector homogenize_point(const RationalVector& p) {
  RationalVector h = p;
  h.emplace_back(1);
  return primitive_integer(h);
}

std::vector<IntVector> null_rows(const std::vector<IntVector>& rows, std::size_t dim) {
  if (rows.empty()) {
    std::vector<IntVector> id;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, 0);
      e[i] = 1;
      id.push_back(std::move(e));
    }
    return id;
  }
  return exactla::nullspace(exactla::IntegerMatrix::from_rows(rows));
}

}  // namespace

bool HPolyhedron::contains(const RationalVector& x) const {
  if (x.size() != dim) throw std::invalid_argument("HPolyhedron::contains: dimension mismatch");
  for (const auto& e : equations) {
    if (dot(e.normal, x) != e.rhs) return false;
  }
  for (const auto& i : inequalities) {
    if (dot(i.normal, x) < i.offset) return false;
  }
  return true;
}

Inequality canonical_inequality(const Inequality& ineq, const std::vector<Equation>& canonical_equations) {
  RationalVector h = to_rational_vector(ineq.normal);
  Rational offset = ineq.offset;
  for (const auto& e : canonical_equations) {
    std::size_t p = 0;
    while (p < e.normal.size() && e.normal[p] == 0) ++p;
    if (p == e.normal.size() || h[p] == 0) continue;
    const Rational f = h[p] / Rational(e.normal[p]);
    for (std::size_t j = 0; j < h.size(); ++j) h[j] -= f * e.normal[j];
    offset -= f * e.rhs;
  }
  Inequality out;
  out.normal = primitive_integer(h);
  std::size_t j = 0;
  while (j < h.size() && h[j] == 0) ++j;
  if (j == h.size()) {
    out.offset = offset;
    return out;
  }
  const Rational scale = Rational(out.normal[j]) / h[j];
  out.offset = offset * scale;
  out.offset.canonicalize();
  return out;
}

HPolyhedron canonicalize(HPolyhedron h) {
  const std::size_t d = h.dim;
  std::vector<IntVector> hom;
  for (const auto& e : h.equations) {
    if (e.normal.size() != d) throw std::invalid_argument("canonicalize: equation has the wrong dimension");
    hom.push_back(homogenize(e.normal, e.rhs));
  }
  HPolyhedron out;
  out.dim = d;
  for (auto& row : exactla::row_echelon(hom)) {
    Equation e;
    e.normal.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
    e.rhs = -Rational(row[d]);
    out.equations.push_back(std::move(e));
  }
  std::map<IntVector, Rational> best;
  for (const auto& i : h.inequalities) {
    if (i.normal.size() != d) throw std::invalid_argument("canonicalize: inequality has the wrong dimension");
    auto c = canonical_inequality(i, out.equations);
    if (is_zero(c.normal) && c.offset <= 0) continue;  // implied by the equations
    auto [it, inserted] = best.emplace(c.normal, c.offset);
    if (!inserted && c.offset > it->second) it->second = c.offset;
  }
  for (auto& [n, o] : best) out.inequalities.push_back({n, o});
  return out;
}

HPolyhedron convex_hull(const std::vector<RationalVector>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  const std::size_t d = points.front().size();
  std::set<IntVector> homog;
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("convex_hull: points of mixed dimension");
    homog.insert(homogenize_point(p));
  }
  std::vector<IntVector> q(homog.begin(), homog.end());
  auto lineality = null_rows(q, d + 1);
  auto facets = extreme_rays(q, lineality, d + 1);
  HPolyhedron h;
  h.dim = d;
  for (const auto& n : lineality) {
    Equation e;
    e.normal.assign(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(d));
    e.rhs = -Rational(n[d]);
    h.equations.push_back(std::move(e));
  }
  for (const auto& c : facets) {
    Inequality i;
    i.normal.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d));
    i.offset = -Rational(c[d]);
    h.inequalities.push_back(std::move(i));
  }
  return canonicalize(std::move(h));
}

HPolyhedron conic_hull(const std::vector<RationalVector>& generators) {
  if (generators.empty()) throw std::invalid_argument("conic_hull: no generators");
  const std::size_t d = generators.front().size();
  std::set<IntVector> rows;
  for (const auto& g : generators) {
    if (g.size() != d) throw std::invalid_argument("conic_hull: generators of mixed dimension");
    auto v = primitive_integer(g);
    if (!is_zero(v)) rows.insert(std::move(v));
  }
  std::vector<IntVector> q(rows.begin(), rows.end());
  auto lineality = null_rows(q, d);
  HPolyhedron h;
  h.dim = d;
  for (const auto& n : lineality) h.equations.push_back({n, Rational(0)});
  if (!q.empty()) {
    for (auto& c : extreme_rays(q, lineality, d)) h.inequalities.push_back({std::move(c), Rational(0)});
  }
  return canonicalize(std::move(h));
}

VPolyhedron vertex_enumeration(const HPolyhedron& h) {
  const std::size_t d = h.dim;
  std::vector<IntVector> ineq;
  std::vector<IntVector> eq;
  for (const auto& i : h.inequalities) ineq.push_back(homogenize(i.normal, i.offset));
  IntVector positive(d + 1, 0);
  positive[d] = 1;
  ineq.push_back(positive);
  for (const auto& e : h.equations) eq.push_back(homogenize(e.normal, e.rhs));
  auto rays = extreme_rays(ineq, eq, d + 1);
  VPolyhedron v;
  v.dim = d;
  for (const auto& r : rays) {
    if (r[d] > 0) {
      RationalVector x(d);
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = Rational(r[j], r[d]);
        x[j].canonicalize();
      }
      v.vertices.push_back(std::move(x));
    } else {
      v.rays.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
    }
  }
  if (v.vertices.empty()) throw std::domain_error("vertex_enumeration: infeasible system");
  std::sort(v.vertices.begin(), v.vertices.end());
  std::sort(v.rays.begin(), v.rays.end());
  return v;
}

std::vector<IntVector> recession_rays(const HPolyhedron& h) {
  std::vector<IntVector> ineq;
  std::vector<IntVector> eq;
  for (const auto& i : h.inequalities) ineq.push_back(i.normal);
  for (const auto& e : h.equations) eq.push_back(e.normal);
  return extreme_rays(ineq, eq, h.dim);
}

bool membership(const RationalVector& x, const VPolyhedron& v) {
  if (x.size() != v.dim) throw std::invalid_argument("membership: dimension mismatch");
  std::vector<RationalVector> gens;
  for (const auto& p : v.vertices) {
    RationalVector g = p;
    g.emplace_back(1);
    gens.push_back(std::move(g));
  }
  for (const auto& r : v.rays) {
    RationalVector g = to_rational_vector(r);
    g.emplace_back(0);
    gens.push_back(std::move(g));
  }
  if (gens.empty()) return false;
  RationalVector target = x;
  target.emplace_back(1);
  return exactla::nonnegative_combination(gens, target, false).has_value();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json strings(const IntVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

nlohmann::json strings(const RationalVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

IntVector int_vector(const nlohmann::json& a) {
  IntVector v;
  for (const auto& x : a) v.emplace_back(x.get<std::string>());
  return v;
}

RationalVector rational_vector(const nlohmann::json& a) {
  RationalVector v;
  for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

}  // namespace

nlohmann::json to_json(const HPolyhedron& h) {
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : h.equations) eqs.push_back({{"normal", strings(e.normal)}, {"rhs", to_string(e.rhs)}});
  nlohmann::json ineqs = nlohmann::json::array();
  for (const auto& i : h.inequalities) {
    ineqs.push_back({{"normal", strings(i.normal)}, {"offset", to_string(i.offset)}});
  }
  return {{"dim", h.dim}, {"equations", eqs}, {"inequalities", ineqs}};
}

nlohmann::json to_json(const VPolyhedron& v) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& p : v.vertices) verts.push_back(strings(p));
  nlohmann::json rays = nlohmann::json::array();
  for (const auto& r : v.rays) rays.push_back(strings(r));
  return {{"dim", v.dim}, {"vertices", verts}, {"rays", rays}};
}

HPolyhedron hpolyhedron_from_json(const nlohmann::json& j) {
  HPolyhedron h;
  h.dim = j.at("dim").get<std::size_t>();
  for (const auto& e : j.at("equations")) {
    h.equations.push_back({int_vector(e.at("normal")), parse_rational(e.at("rhs").get<std::string>())});
  }
  for (const auto& i : j.at("inequalities")) {
    h.inequalities.push_back({int_vector(i.at("normal")), parse_rational(i.at("offset").get<std::string>())});
  }
  return h;
}

VPolyhedron vpolyhedron_from_json(const nlohmann::json& j) {
  VPolyhedron v;
  v.dim = j.at("dim").get<std::size_t>();
  for (const auto& p : j.at("vertices")) v.vertices.push_back(rational_vector(p));
  for (const auto& r : j.at("rays")) v.rays.push_back(int_vector(r));
  return v;
}

}  // namespace thmc::polytope
