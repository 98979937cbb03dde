#pragma once

// Fibers W = t as branched covers of a coordinate line, sheet tracking,
// vanishing cycles transported by point pushing, and intersection numbers.

#include <string>
#include <vector>

#include "toricstokes/superpotential.hpp"

namespace toricstokes {

struct MonodromyConfig {
  double critical_tol = 1e-7;     // relative distance of t to a critical value
  double approach = 1e-6;         // relative distance to u where the loop is built
  int loop_vertices = 32;
  double epsilon = 1e-3;          // angular split of paths inside a cluster
  std::size_t max_vertices = 40000;
  std::uint64_t seed = 7;
};

/// W(x, y) - t with denominators cleared, as a polynomial in y over the base
/// variable. When `swapped` is set the base variable is the original y;
/// cycle vertices and lifts are always in (base, fiber) coordinates.
struct FiberCover {
  LaurentPolynomial w;  // in projection coordinates
  bool swapped = false;
  cplx t;
  int sheet_count = 0;
  std::vector<UniPoly> poly_in_y;  // coefficient of y^j in the base variable
  std::vector<cplx> branch_points;
  /// Base-plane points over which the fiber leaves the torus: 0 and the roots
  /// of the extreme y-coefficients.
  std::vector<cplx> punctures;
  std::vector<cplx> critical_values;
  int t_row = 0;  // y-power and base-power carrying the -t term
  int t_col = 0;

  FiberCover with_t(cplx t) const;
  /// All fiber points over x, sorted lexicographically.
  std::vector<cplx> roots_at(cplx x) const;
  cplx eval(cplx x, cplx y) const;
  /// Branch points followed by punctures.
  std::vector<cplx> marked() const;
  /// Smallest distance between distinct marked points.
  double marked_separation() const;
  /// Regular values of W over which a branch point sits on a puncture. The
  /// fiber is smooth there but its projection is not a simple cover.
  std::vector<cplx> projection_degenerate_values() const;
};

/// Projects to the variable whose top y-coefficient is constant, else to the
/// one of larger fiber degree; ties go to x.
FiberCover fiber_cover(const LaurentPolynomial& w, cplx t, const std::vector<cplx>& critical_values = {},
                       const MonodromyConfig& cfg = {});

struct SheetTrack {
  std::vector<cplx> start_roots;
  std::vector<cplx> end_roots;
  /// permutation[i]: index in start_roots of the root that start root i
  /// reaches at the end (meaningful for closed paths).
  std::vector<int> permutation;
};

/// Continues every fiber point along a polyline in the base plane.
SheetTrack track_sheets(const FiberCover& cover, const std::vector<cplx>& path);

/// Closed polygon in the base plane with its lift: lift[k] is the fiber
/// coordinate over vertices[k].
struct VanishingCycle {
  std::vector<cplx> vertices;
  std::vector<cplx> lift;
  int label = -1;
  int orientation_sign = 1;
  cplx t;

  /// Sheet index of each vertex among the sorted fiber points there.
  std::vector<int> sheets(const FiberCover& cover) const;
};

/// Straight paths from the base point, split by epsilon rotations of the
/// midpoint inside clusters. Indexed by label.
std::vector<std::vector<cplx>> distinguished_paths(const OrderedCriticalValues& ordered, double epsilon);

/// Builds the loop around the colliding branch points near the end of
/// `path_t` and pushes it back to the cover's base value path_t.front().
VanishingCycle vanishing_cycle(const FiberCover& cover, const CriticalPoint& critical,
                               const std::vector<cplx>& path_t, const MonodromyConfig& cfg = {});

/// Transports a cycle over cover.with_t(path_t.front()) along path_t.
VanishingCycle transport_cycle(const FiberCover& cover, const VanishingCycle& cycle, const std::vector<cplx>& path_t,
                               const MonodromyConfig& cfg = {});

/// Signed count of transversal same-sheet crossings.
int intersection_number(const FiberCover& cover, const VanishingCycle& a, const VanishingCycle& b,
                        const MonodromyConfig& cfg = {});

struct IntersectionMatrix {
  std::vector<std::vector<int>> entries;
  std::vector<int> ordering;
};

/// Entries indexed by position in `cycles`.
IntersectionMatrix intersection_matrix(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                       const std::vector<int>& ordering, const MonodromyConfig& cfg = {});

/// Closed t-loop: along `path` until distance `radius` from its end, once
/// counterclockwise around the end, and back.
std::vector<cplx> loop_around(const std::vector<cplx>& path, double radius);

/// Closed t-loop circling every value once counterclockwise, starting on the
/// side away from the values: around the base point when it lies among the
/// values, otherwise a circle around their centroid reached by a straight
/// tether from the base point.
std::vector<cplx> large_loop(const OrderedCriticalValues& ordered);

/// Replaces stretches of a t-path passing near projection-degenerate values
/// by small detours; the result is homotopic in the regular values.
std::vector<cplx> avoid_degenerate(const FiberCover& cover, const std::vector<cplx>& path);

/// `base` itself when it is projection-regular, otherwise a nearby point
/// from which the straight paths keep the same ordering and sweep no
/// critical value.
cplx regular_base_point(const FiberCover& cover, const OrderedCriticalValues& ordered);

/// CSV rows "segment,x_re,x_im,sheet".
std::string cycle_csv(const FiberCover& cover, const VanishingCycle& cycle);

}  // namespace toricstokes
