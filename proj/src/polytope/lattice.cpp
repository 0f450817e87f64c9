#include <stdexcept>

#include "thmc/polytope.hpp"

namespace thmc::polytope {

HPolyhedron dilate(const HPolyhedron& h, const Rational& n) {
  if (n <= 0) throw std::invalid_argument("dilate: factor must be positive");
  HPolyhedron out = h;
  for (auto& e : out.equations) e.rhs *= n;
  for (auto& i : out.inequalities) i.offset *= n;
  return out;
}

std::vector<IntVector> nonnegative_integer_points(const HPolyhedron& h, std::int64_t total, std::uint64_t cap) {
  if (total < 0 || h.dim == 0) return {};
  // C(total + dim - 1, dim - 1) candidates.
  Integer count = 1;
  for (std::size_t k = 1; k < h.dim; ++k) {
    count *= static_cast<unsigned long>(total) + k;
    count /= static_cast<unsigned long>(k);
  }
  if (count > cap) throw std::length_error("nonnegative_integer_points: " + count.get_str() + " candidates exceed the cap");

  std::vector<IntVector> out;
  RationalVector x(h.dim, Rational(0));
  auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
    if (k + 1 == h.dim) {
      x[k] = left;
      if (h.contains(x)) {
        IntVector p(h.dim);
        for (std::size_t j = 0; j < h.dim; ++j) p[j] = x[j].get_num();
        out.push_back(std::move(p));
      }
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      x[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

}  // namespace thmc::polytope
