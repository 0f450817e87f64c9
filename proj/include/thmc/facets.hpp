// Facet families of the three-state design polytope P^T = conv(A^T):
// the homogeneous rows (c . x >= 0) parametrized by T, their inhomogeneous
// forms on the hyperplane sum(x) = n(T-1), symmetry orbits, exact facet
// certificates, the polyhedra Q^r and the checks that the 24 listed facets
// are all of them. Everything is specific to S = 3.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "thmc/design.hpp"
#include "thmc/exactla.hpp"
#include "thmc/polytope.hpp"
#include "thmc/report.hpp"
#include "thmc/words.hpp"

namespace thmc::facets {

inline constexpr int kStates = 3;
inline constexpr std::size_t kDim = 6;

/// Which lengths T a family row applies to.
enum class Applicability { All, Odd, Even, Mod3Is1, Mod3Is2, Mod6Is3, Mod6Is0 };

bool applies(Applicability when, std::size_t T) noexcept;
const char* applicability_name(Applicability when) noexcept;

/// A homogeneous row c(T) = k * slope + intercept with T = period * k + residue.
/// Constant rows have a zero slope.
struct FacetFamily {
  std::string label;
  Applicability when = Applicability::All;
  IntVector slope;
  IntVector intercept;
  long period = 1;
  long residue = 0;

  IntVector instantiate(std::size_t T) const;
};

/// c . x >= offset * n on n P^T. Homogeneous forms have offset 0.
struct FacetForm {
  IntVector c;
  Integer offset;
  Applicability when = Applicability::All;
  std::string family;
};

/// The eight homogeneous families, in table order.
const std::vector<FacetFamily>& families();

/// The inhomogeneous forms as published, one per family, in the same order.
const std::vector<FacetForm>& inhomogeneous_table();

/// The applicable homogeneous rows at T: two unconditional rows, the parity
/// row and the T mod 3 row (the T mod 6 row when 3 divides T). Throws
/// std::invalid_argument for T < 5.
std::vector<FacetForm> table1_vectors(std::size_t T);

/// c'_{ij} = c_{s(i) s(j)} for a permutation s of {0,1,2}.
IntVector permute_labels(const IntVector& c, const std::array<int, 3>& s);
/// c'_{ij} = c_{ji}; reversing a word transposes its counts.
IntVector reverse_pairs(const IntVector& c);
RationalVector permute_labels(const RationalVector& x, const std::array<int, 3>& s);
RationalVector reverse_pairs(const RationalVector& x);
const std::array<std::array<int, 3>, 6>& label_permutations();

/// Orbit under the six label permutations, optionally with reversal, after
/// primitive scaling. Sorted and duplicate free.
std::set<IntVector> symmetry_orbit(const IntVector& c, bool include_reversal);
/// Orbit of an inhomogeneous form. The total sum(x) is invariant, so the
/// offset is carried along unchanged.
std::vector<FacetForm> symmetry_orbit(const FacetForm& form, bool include_reversal);

struct FacetCertificate {
  IntVector facet;
  std::size_t T = 0;
  Integer min_value;
  std::size_t tight_count = 0;
  /// Rank of the tight columns; only evaluated when min_value is 0.
  std::size_t tight_rank = 0;
  std::vector<std::size_t> tight_columns;  // indices into the design matrix
  std::vector<Word> sample_tight_words;

  /// Valid iff min_value == 0 and tight_rank == 5.
  bool valid() const;
};

/// Exact minimum of c . a_w over all columns, the tight set and its rank.
FacetCertificate certify_facet(const IntVector& c, const DesignMatrix& A, unsigned threads = 0);
FacetCertificate certify_facet(const IntVector& c, std::size_t T, unsigned threads = 0);
nlohmann::json to_json(const FacetCertificate& cert);

/// The (c~, a) form of a homogeneous row: same supporting hyperplane on
/// sum(x) = n(T-1), with c~ independent of T. Throws std::invalid_argument
/// when the row does not apply at T.
FacetForm inhomogenize(const FacetFamily& family, std::size_t T);

/// The 24 inequalities c~ . x >= a (n = 1) for the residue class r = T mod 6.
polytope::HPolyhedron q_polyhedron(int r);
std::vector<FacetForm> q_forms(int r);

/// Transition counts of the loops 121, 131, 232, 1231, 1321.
const std::vector<IntVector>& loop_rays();
const std::vector<Word>& loop_words();

/// Vertex lists of Q^r as printed, in the printed coordinate order
/// x12, x21, x13, x31, x23, x32.
const std::vector<RationalVector>& appendix_vertices(int r);

/// How printed vertex lists map to the canonical order [12,13,21,23,31,32].
enum class IndexConvention { Printed, Canonical };
RationalVector to_canonical(const RationalVector& printed, IndexConvention convention);

struct AppendixResult {
  int r = 0;
  std::size_t computed = 0;
  std::size_t listed_expanded = 0;
  /// The first convention/group combination whose expansion equals the
  /// computed vertex set, e.g. "printed order, permutations".
  std::optional<std::string> matching;
  /// Symmetric difference under the printed order and permutations only.
  std::vector<RationalVector> missing;  // computed, not listed
  std::vector<RationalVector> extra;    // listed, not computed
  Rational max_l1;
  /// Whether the printed lists are the vertices of the system with the even
  /// and 3k+2 offsets negated, and that system's largest L1 norm.
  bool flipped_offsets_match = false;
  Rational flipped_max_l1;
  Report report;
};
AppendixResult verify_appendix_vertices(int r);
nlohmann::json to_json(const AppendixResult& result);

/// v + t e on sum(x) = T-1, t = (T-1 - 1.v) / 1.e. Throws
/// std::invalid_argument when 1.e = 0 or 1.v > T-1.
RationalVector vertex_ray_extension(const RationalVector& v, const IntVector& e, std::size_t T);

struct ExtensionCheck {
  RationalVector vertex;
  IntVector ray;
  RationalVector point;
  bool in_polytope = false;
  bool integral = false;
  std::optional<Word> witness;      // a word of length T with these counts
  std::optional<Word> lifted;       // witness extended to length T + 6
};

struct Verify24Result {
  std::size_t T = 0;
  std::size_t hull_facets = 0;
  std::size_t orbit_size = 0;
  bool hull_equals_orbit = false;
  bool hull_equals_q = false;
  std::size_t q_vertices = 0;
  std::size_t q_rays = 0;
  std::size_t pairs_skipped = 0;
  /// False when some vertex lies beyond sum(x) = T-1, so its half-lines
  /// could not be checked at this T.
  bool extension_argument_complete = true;
  std::vector<ExtensionCheck> extensions;
  Report report;
};
Verify24Result verify_24_facets(std::size_t T);
nlohmann::json to_json(const Verify24Result& result);

/// Exhaustive checks of the short-window inequalities and their equality
/// cases, for windows of 3 and 6 transitions, T = 6k+1 with k <= max_k and
/// even T = 2k <= 6 max_k.
Report verify_window_lemmas(int max_k);

}  // namespace thmc::facets
