#include "toricstokes/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool lex_less(cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

double point_segment_distance(cplx p, cplx a, cplx b) {
  cplx d = b - a;
  double t = std::norm(d) == 0.0 ? 0.0 : std::clamp(((p - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double min_separation(const std::vector<cplx>& pts) {
  double s = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) s = std::min(s, std::abs(pts[i] - pts[j]));
  return s;
}

int winding(const std::vector<cplx>& poly, cplx p) {
  double total = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    cplx a = poly[k] - p, b = poly[(k + 1) % poly.size()] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

bool in_triangle(cplx p, cplx a, cplx b, cplx c) {
  double d1 = cross(b - a, p - a), d2 = cross(c - b, p - b), d3 = cross(a - c, p - c);
  bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

double distance_to_set(cplx a, cplx b, const std::vector<cplx>& pts) {
  double d = kInf;
  for (auto p : pts) d = std::min(d, point_segment_distance(p, a, b));
  return d;
}

// Nearest-neighbour matching; fails unless every match is unambiguous.
bool match_points(const std::vector<cplx>& from, const std::vector<cplx>& to, std::vector<int>& idx,
                  double ratio = 0.3) {
  if (from.size() != to.size()) return false;
  const double sep = std::min(min_separation(from), min_separation(to));
  idx.assign(from.size(), -1);
  std::vector<char> used(to.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    int best = -1;
    double bd = kInf;
    for (std::size_t j = 0; j < to.size(); ++j) {
      double d = std::abs(from[i] - to[j]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || used[best] || !(bd < ratio * sep || (from.size() == 1 && std::isfinite(bd)))) return false;
    used[best] = 1;
    idx[i] = best;
  }
  return true;
}

// Continues one fiber point from (x0, y0) to x1, subdividing as needed.
bool continue_root(const FiberCover& cover, cplx x0, cplx y0, cplx x1, cplx& y1, int depth = 0) {
  auto r1 = cover.roots_at(x1);
  if (r1.empty()) return false;
  double sep = min_separation(r1);
  int best = 0;
  double bd = kInf;
  for (std::size_t j = 0; j < r1.size(); ++j) {
    double d = std::abs(r1[j] - y0);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(j);
    }
  }
  if (r1.size() == 1 || bd < 0.25 * sep) {
    // Confirm against the root set at x0 too: a large jump means the step was too long.
    auto r0 = cover.roots_at(x0);
    double sep0 = min_separation(r0);
    if (r1.size() == 1 || bd < 0.25 * sep0) {
      y1 = r1[best];
      return true;
    }
  }
  if (depth > 40) return false;
  cplx mid = 0.5 * (x0 + x1), ym;
  return continue_root(cover, x0, y0, mid, ym, depth + 1) && continue_root(cover, mid, ym, x1, y1, depth + 1);
}

// Fiber coordinate over every vertex of a closed polygon; false if it does not close up.
bool lift_polygon(const FiberCover& cover, const std::vector<cplx>& verts, cplx y0, std::vector<cplx>& lift) {
  lift.assign(verts.size(), 0.0);
  lift[0] = y0;
  for (std::size_t k = 0; k + 1 < verts.size(); ++k)
    if (!continue_root(cover, verts[k], lift[k], verts[k + 1], lift[k + 1])) return false;
  cplx back;
  if (!continue_root(cover, verts.back(), lift.back(), verts[0], back)) return false;
  return std::abs(back - y0) <= 1e-6 * (1.0 + std::abs(y0));
}

double smoothstep_bump(double s) {
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

struct PushState {
  std::vector<cplx> verts;
  cplx y0;
  cplx t;
  std::vector<cplx> marked;
};

void refine(std::vector<cplx>& verts, const std::vector<cplx>& marked, std::size_t cap) {
  std::vector<cplx> out;
  out.reserve(verts.size() * 2);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    cplx a = verts[k], b = verts[(k + 1) % verts.size()];
    double dist = distance_to_set(a, b, marked);
    int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / (0.25 * dist))));
    pieces = std::min(pieces, 1 << 12);
    for (int i = 0; i < pieces; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / pieces));
    if (out.size() > cap) break;
  }
  verts.swap(out);
}

void simplify(std::vector<cplx>& verts, const std::vector<cplx>& marked) {
  if (verts.size() <= 8) return;
  std::vector<char> keep(verts.size(), 1);
  const std::size_t n = verts.size();
  std::size_t prev = 0, kept = n;
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t next = (k + 1) % n;
    cplx a = verts[prev], b = verts[k], c = verts[next];
    bool ok = std::abs(c - a) <= 0.25 * distance_to_set(a, c, marked);
    if (ok)
      for (auto p : marked)
        if (in_triangle(p, a, b, c)) {
          ok = false;
          break;
        }
    if (ok && kept > 8) {
      keep[k] = 0;
      --kept;
    } else {
      prev = k;
    }
  }
  std::vector<cplx> out;
  for (std::size_t k = 0; k < n; ++k)
    if (keep[k]) out.push_back(verts[k]);
  verts.swap(out);
}

bool push_step(const FiberCover& cover, PushState& s, cplx t1, const MonodromyConfig& cfg) {
  FiberCover c1 = cover.with_t(t1);
  auto m1 = c1.marked();
  std::vector<int> idx;
  if (!match_points(s.marked, m1, idx)) return false;
  const std::size_t nm = s.marked.size();
  std::vector<cplx> delta(nm), m1_ordered(nm);
  std::vector<double> radius(nm, kInf);
  for (std::size_t p = 0; p < nm; ++p) {
    m1_ordered[p] = m1[idx[p]];
    delta[p] = m1_ordered[p] - s.marked[p];
    for (std::size_t q = 0; q < nm; ++q)
      if (q != p) radius[p] = std::min(radius[p], 0.5 * std::abs(s.marked[p] - s.marked[q]));
    if (!std::isfinite(radius[p])) radius[p] = 1.0;
    if (std::abs(delta[p]) > 0.1 * radius[p]) return false;
  }
  std::vector<cplx> verts = s.verts;
  refine(verts, s.marked, cfg.max_vertices);
  if (verts.size() > cfg.max_vertices) return false;
  std::vector<cplx> moved(verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    cplx v = verts[k];
    for (std::size_t p = 0; p < nm; ++p)
      if (delta[p] != cplx(0.0)) v += delta[p] * smoothstep_bump(std::abs(verts[k] - s.marked[p]) / radius[p]);
    moved[k] = v;
  }
  for (std::size_t p = 0; p < nm; ++p)
    if (winding(verts, s.marked[p]) != winding(moved, m1_ordered[p])) return false;
  // Fiber point over vertex 0 moves with both x and t.
  auto r1 = c1.roots_at(moved[0]);
  double sep = min_separation(r1);
  int best = -1;
  double bd = kInf;
  for (std::size_t j = 0; j < r1.size(); ++j)
    if (std::abs(r1[j] - s.y0) < bd) {
      bd = std::abs(r1[j] - s.y0);
      best = static_cast<int>(j);
    }
  if (best < 0 || !(r1.size() == 1 || bd < 0.2 * sep)) return false;
  simplify(moved, m1_ordered);
  s.verts = std::move(moved);
  s.y0 = r1[best];
  s.t = t1;
  s.marked = std::move(m1_ordered);
  return true;
}

void push_along(const FiberCover& cover, PushState& s, const std::vector<cplx>& path, double initial_step,
                const MonodromyConfig& cfg) {
  double h = initial_step;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplx a = path[seg], b = path[seg + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    double pos = std::abs(s.t - a) / len;  // s.t lies on this segment
    while (pos < 1.0) {
      double step = std::min(h / len, 1.0 - pos);
      cplx t1 = (pos + step >= 1.0) ? b : a + (b - a) * (pos + step);
      if (push_step(cover, s, t1, cfg)) {
        pos += step;
        h = std::min(h * 1.5, 0.05 * std::max(1.0, len));
      } else {
        h *= 0.5;
        if (h < 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)))
          throw Error(ErrorCode::TransportFailure,
                      "point pushing stalled at t = (" + std::to_string(s.t.real()) + ", " +
                          std::to_string(s.t.imag()) + ")");
      }
    }
    s.t = b;
  }
}

VanishingCycle finish(const FiberCover& cover_at_end, const PushState& s, int label) {
  VanishingCycle c;
  c.vertices = s.verts;
  c.label = label;
  c.t = s.t;
  if (!lift_polygon(cover_at_end, c.vertices, s.y0, c.lift))
    throw Error(ErrorCode::TransportFailure, "transported cycle does not close on the base fiber");
  return c;
}

std::vector<cplx> marked_in_order(const FiberCover& cover) { return cover.marked(); }

}  // namespace

FiberCover FiberCover::with_t(cplx t_new) const {
  FiberCover c = *this;
  c.t = t_new;
  auto& row = c.poly_in_y[t_row].coeffs;
  if (static_cast<int>(row.size()) <= t_col) row.resize(t_col + 1, 0.0);
  row[t_col] += t - t_new;  // the term is -t
  // Branch points: Res_y(F, F_y) = +-a_n disc; drop the a_n factor and roots at punctures.
  std::vector<UniPoly> dy;
  for (int j = 1; j < static_cast<int>(c.poly_in_y.size()); ++j) {
    UniPoly q = c.poly_in_y[j];
    for (auto& z : q.coeffs) z *= static_cast<double>(j);
    dy.push_back(q);
  }
  UniPoly res = resultant_in_y(c.poly_in_y, dy);
  double mx = 0.0;
  for (auto z : res.coeffs) mx = std::max(mx, std::abs(z));
  for (auto& z : res.coeffs)
    if (std::abs(z) <= 1e-10 * mx) z = 0.0;
  c.branch_points.clear();
  for (auto r : roots(res.trimmed(1e-10))) {
    bool at_puncture = false;
    for (auto p : c.punctures)
      if (std::abs(r - p) <= 1e-6 * (1.0 + std::abs(p))) at_puncture = true;
    if (!at_puncture) c.branch_points.push_back(r);
  }
  std::sort(c.branch_points.begin(), c.branch_points.end(), lex_less);
  return c;
}

std::vector<cplx> FiberCover::roots_at(cplx x) const {
  UniPoly p;
  for (const auto& a : poly_in_y) p.coeffs.push_back(a(x));
  auto r = roots(p);
  std::sort(r.begin(), r.end(), lex_less);
  return r;
}

cplx FiberCover::eval(cplx x, cplx y) const {
  cplx s = 0, yp = 1;
  for (const auto& a : poly_in_y) {
    s += a(x) * yp;
    yp *= y;
  }
  return s;
}

std::vector<cplx> FiberCover::marked() const {
  std::vector<cplx> m = branch_points;
  m.insert(m.end(), punctures.begin(), punctures.end());
  return m;
}

double FiberCover::marked_separation() const { return min_separation(marked()); }

std::vector<cplx> FiberCover::projection_degenerate_values() const {
  // W - t is linear in t, so a branch point reaches the puncture p exactly
  // when the coefficient next to the vanishing extreme one does.
  std::vector<cplx> out;
  const int n = sheet_count;
  auto without_t = [&](int j, cplx p) {
    cplx v = poly_in_y[j](p);
    if (j == t_row) v += t * std::pow(p, t_col);
    return v;
  };
  auto collect = [&](int extreme, int next) {
    if (t_row != next) return;
    for (auto p : roots(poly_in_y[extreme])) {
      if (std::abs(p) < 1e-9) continue;
      cplx td = without_t(next, p) / std::pow(p, t_col);
      bool dup = false;
      for (auto q : out)
        if (std::abs(q - td) <= 1e-9 * (1.0 + std::abs(q))) dup = true;
      if (!dup) out.push_back(td);
    }
  };
  collect(0, 1);
  if (n >= 2) collect(n, n - 1);
  return out;
}

std::vector<cplx> avoid_degenerate(const FiberCover& cover, const std::vector<cplx>& path) {
  const auto degs = cover.projection_degenerate_values();
  if (degs.empty() || path.size() < 2) return path;
  std::vector<double> radius;
  for (auto d : degs) {
    double r = 0.2;
    for (auto u : cover.critical_values) r = std::min(r, 0.2 * std::abs(d - u));
    for (auto v : path) r = std::min(r, 0.5 * std::abs(d - v));
    radius.push_back(r);
  }
  std::vector<cplx> out{path.front()};
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const cplx a = path[k], b = path[k + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    const cplx dir = (b - a) / len;
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t i = 0; i < degs.size(); ++i)
      if (radius[i] > 0 && point_segment_distance(degs[i], a, b) < radius[i])
        hits.push_back({((degs[i] - a) * std::conj(dir)).real(), i});
    std::sort(hits.begin(), hits.end());
    for (const auto& [along, i] : hits) {
      const cplx d = degs[i];
      const double r = radius[i];
      const cplx foot = a + along * dir;
      const double side = std::abs(foot - d) > 1e-12 ? (cross(dir, foot - d) > 0 ? 1.0 : -1.0) : 1.0;
      // side = +1: pass on the left of the direction of travel.
      const double base_angle = std::arg(dir);
      for (int j = 0; j <= 6; ++j)
        out.push_back(d + std::polar(r, base_angle + std::numbers::pi - side * std::numbers::pi * j / 6));
    }
    out.push_back(b);
  }
  return out;
}

cplx regular_base_point(const FiberCover& cover, const OrderedCriticalValues& ordered) {
  const auto degs = cover.projection_degenerate_values();
  const cplx b0 = ordered.base_point;
  double scale = 1.0;
  for (auto u : ordered.values) scale = std::max(scale, std::abs(u));
  double near = kInf;
  for (auto d : degs) near = std::min(near, std::abs(d - b0));
  if (near > 1e-3 * scale) return b0;
  double delta = 0.1;
  for (auto u : ordered.values) delta = std::min(delta, 0.1 * std::abs(u - b0));
  cplx best = b0;
  double best_clear = -1.0;
  for (int k = 0; k < 16; ++k) {
    const cplx b = b0 + std::polar(delta, std::numbers::pi + 2 * std::numbers::pi * k / 16);
    OrderedCriticalValues o;
    try {
      o = distinguished_ordering(ordered.values, b, ordered.phi);
    } catch (const Error&) {
      continue;
    }
    if (o.ordering != ordered.ordering) continue;
    bool swept = false;
    for (auto u : ordered.values)
      for (auto v : ordered.values)
        if (std::abs(u - v) > 1e-8 * scale && in_triangle(v, b0, b, u)) swept = true;
    if (swept) continue;
    double clear = kInf;
    for (auto d : degs)
      for (auto u : ordered.values) clear = std::min(clear, point_segment_distance(d, b, u));
    if (clear > best_clear * (1 + 1e-9)) {
      best_clear = clear;
      best = b;
    }
  }
  if (best_clear < 0) throw Error(ErrorCode::BasePointTooClose, "no projection-regular base point nearby");
  return best;
}

FiberCover fiber_cover(const LaurentPolynomial& w_in, cplx t, const std::vector<cplx>& critical_values,
                       const MonodromyConfig& cfg) {
  for (auto u : critical_values)
    if (std::abs(t - u) <= cfg.critical_tol * std::max(1.0, std::abs(u)))
      throw Error(ErrorCode::CriticalValue, "base value is a critical value");

  struct Shape {
    int minx = 0, maxx = 0, miny = 0, maxy = 0, top_terms = 0;
  };
  auto shape = [](const LaurentPolynomial& w) {
    Shape s;
    for (const auto& [e, c] : w.terms) {
      if (c == cplx(0.0)) continue;
      s.minx = std::min(s.minx, e.first);
      s.maxx = std::max(s.maxx, e.first);
      s.miny = std::min(s.miny, e.second);
      s.maxy = std::max(s.maxy, e.second);
    }
    for (const auto& [e, c] : w.terms)
      if (c != cplx(0.0) && e.second == s.maxy) ++s.top_terms;
    return s;
  };
  Shape sx = shape(w_in);
  LaurentPolynomial wy = w_in.swapped();
  Shape sy = shape(wy);
  const bool mono_x = sx.top_terms == 1, mono_y = sy.top_terms == 1;
  bool swap = false;
  if (mono_y && !mono_x) swap = true;
  else if (mono_x == mono_y && sy.maxy - sy.miny > sx.maxy - sx.miny) swap = true;

  FiberCover c;
  c.swapped = swap;
  c.w = swap ? wy : w_in;
  const Shape s = swap ? sy : sx;
  c.sheet_count = s.maxy - s.miny;
  if (c.sheet_count < 1) throw Error(ErrorCode::LeadingCoefficientVanishes, "fiber has no sheets over the base");
  c.poly_in_y.assign(c.sheet_count + 1, UniPoly{});
  for (auto& a : c.poly_in_y) a.coeffs.assign(s.maxx - s.minx + 1, 0.0);
  for (const auto& [e, coef] : c.w.terms) c.poly_in_y[e.second - s.miny].coeffs[e.first - s.minx] += coef;
  c.t_row = -s.miny;
  c.t_col = -s.minx;
  c.t = 0.0;
  c.critical_values = critical_values;
  if (c.poly_in_y.back().degree() < 0)
    throw Error(ErrorCode::LeadingCoefficientVanishes, "top fiber coefficient vanishes identically");

  c.punctures = {0.0};
  for (const auto* a : {&c.poly_in_y.front(), &c.poly_in_y.back()})
    for (auto r : roots(*a)) {
      bool dup = false;
      for (auto p : c.punctures)
        if (std::abs(r - p) <= 1e-9 * (1.0 + std::abs(p))) dup = true;
      if (!dup) c.punctures.push_back(r);
    }
  return c.with_t(t);
}

SheetTrack track_sheets(const FiberCover& cover, const std::vector<cplx>& path) {
  SheetTrack out;
  if (path.empty()) return out;
  double sep = min_separation(cover.branch_points);
  if (!std::isfinite(sep)) sep = 1.0;
  const double margin = 1e-3 * sep;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    for (auto b : cover.branch_points)
      if (point_segment_distance(b, path[k], path[k + 1]) < margin)
        throw Error(ErrorCode::PathTooClose, "path passes too close to a branch point");
  out.start_roots = cover.roots_at(path.front());
  out.end_roots = out.start_roots;
  for (std::size_t i = 0; i < out.start_roots.size(); ++i) {
    cplx y = out.start_roots[i];
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      cplx y1;
      if (!continue_root(cover, path[k], y, path[k + 1], y1))
        throw Error(ErrorCode::TrackingFailure, "root continuation failed");
      y = y1;
    }
    out.end_roots[i] = y;
  }
  out.permutation.assign(out.start_roots.size(), -1);
  for (std::size_t i = 0; i < out.end_roots.size(); ++i) {
    double bd = kInf;
    for (std::size_t j = 0; j < out.start_roots.size(); ++j) {
      double d = std::abs(out.end_roots[i] - out.start_roots[j]);
      if (d < bd) {
        bd = d;
        out.permutation[i] = static_cast<int>(j);
      }
    }
  }
  return out;
}

std::vector<int> VanishingCycle::sheets(const FiberCover& cover) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    auto r = cover.roots_at(vertices[k]);
    int best = 0;
    for (std::size_t j = 1; j < r.size(); ++j)
      if (std::abs(r[j] - lift[k]) < std::abs(r[best] - lift[k])) best = static_cast<int>(j);
    out.push_back(best);
  }
  return out;
}

std::vector<std::vector<cplx>> distinguished_paths(const OrderedCriticalValues& ordered, double epsilon) {
  std::vector<std::vector<cplx>> paths(ordered.values.size());
  for (const auto& cluster : ordered.clusters) {
    const int k = static_cast<int>(cluster.size());
    for (int j = 0; j < k; ++j) {
      const int label = cluster[j];
      const cplx u = ordered.values[label], b = ordered.base_point;
      if (k == 1) {
        paths[label] = {b, u};
      } else {
        cplx mid = u + 0.5 * (b - u) * std::polar(1.0, epsilon * (j - 0.5 * (k - 1)));
        paths[label] = {b, mid, u};
      }
    }
  }
  return paths;
}

VanishingCycle vanishing_cycle(const FiberCover& cover, const CriticalPoint& critical,
                               const std::vector<cplx>& path_t, const MonodromyConfig& cfg) {
  if (path_t.size() < 2) throw Error(ErrorCode::IndexOutOfRange, "path needs at least two points");
  const cplx u = path_t.back();
  const cplx xc = cover.swapped ? critical.y : critical.x;
  const cplx yc = cover.swapped ? critical.x : critical.y;
  cplx prev = path_t[path_t.size() - 2];
  const cplx dir = (prev - u) / std::abs(prev - u);

  for (double s : {cfg.approach, cfg.approach * 1e-2, cfg.approach * 1e2}) {
    const double dist = s * std::max(1.0, std::abs(u));
    const cplx ts = u + dir * dist;
    FiberCover cs = cover.with_t(ts);
    auto bp = cs.branch_points;
    if (bp.size() < 2) continue;
    std::sort(bp.begin(), bp.end(), [&](cplx a, cplx b) { return std::abs(a - xc) < std::abs(b - xc); });
    const cplx b1 = bp[0], b2 = bp[1];
    const double d = std::abs(b1 - b2);
    const cplx centre = 0.5 * (b1 + b2);
    if (std::abs(centre - xc) > d) continue;
    double others = kInf;
    for (auto m : cs.marked())
      if (std::abs(m - b1) > 0 && std::abs(m - b2) > 0) others = std::min(others, std::abs(m - centre));
    if (!(others > 4 * d)) continue;

    PushState st;
    const double radius = d;
    for (int k = 0; k < cfg.loop_vertices; ++k)
      st.verts.push_back(centre + std::polar(radius, 2 * std::numbers::pi * k / cfg.loop_vertices));
    auto r0 = cs.roots_at(st.verts[0]);
    if (r0.size() < 2) continue;
    std::vector<int> order(r0.size());
    for (std::size_t j = 0; j < r0.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(r0[a] - yc) < std::abs(r0[b] - yc); });
    st.y0 = r0[std::min(order[0], order[1])];
    std::vector<cplx> lift;
    if (!lift_polygon(cs, st.verts, st.y0, lift)) continue;
    st.t = ts;
    st.marked = cs.marked();

    std::vector<cplx> back;
    back.push_back(ts);
    for (int k = static_cast<int>(path_t.size()) - 2; k >= 0; --k) back.push_back(path_t[k]);
    push_along(cover, st, avoid_degenerate(cover, back), 0.05 * dist, cfg);
    auto c = finish(cover.with_t(path_t.front()), st, critical.label);
    return c;
  }
  throw Error(ErrorCode::NoCollidingPair, "no pair of branch points collides at critical point " +
                                              std::to_string(critical.label));
}

VanishingCycle transport_cycle(const FiberCover& cover, const VanishingCycle& cycle, const std::vector<cplx>& path_t,
                               const MonodromyConfig& cfg) {
  if (path_t.empty()) return cycle;
  PushState st;
  st.verts = cycle.vertices;
  st.y0 = cycle.lift.at(0);
  st.t = path_t.front();
  st.marked = marked_in_order(cover.with_t(path_t.front()));
  double scale = 0.0;
  for (std::size_t k = 0; k + 1 < path_t.size(); ++k) scale = std::max(scale, std::abs(path_t[k + 1] - path_t[k]));
  push_along(cover, st, avoid_degenerate(cover, path_t), 0.01 * std::max(scale, 1e-3), cfg);
  auto c = finish(cover.with_t(path_t.back()), st, cycle.label);
  c.orientation_sign = cycle.orientation_sign;
  return c;
}

namespace {

// Returns INT_MIN when the configuration is not in general position.
int count_crossings(const FiberCover& cover, const VanishingCycle& a, const VanishingCycle& b) {
  const std::size_t na = a.vertices.size(), nb = b.vertices.size();
  int total = 0;
  for (std::size_t i = 0; i < na; ++i) {
    const cplx p = a.vertices[i], p2 = a.vertices[(i + 1) % na], r = p2 - p;
    const double ax0 = std::min(p.real(), p2.real()), ax1 = std::max(p.real(), p2.real());
    const double ay0 = std::min(p.imag(), p2.imag()), ay1 = std::max(p.imag(), p2.imag());
    for (std::size_t j = 0; j < nb; ++j) {
      const cplx q = b.vertices[j], q2 = b.vertices[(j + 1) % nb], sv = q2 - q;
      if (std::max(q.real(), q2.real()) < ax0 || std::min(q.real(), q2.real()) > ax1 ||
          std::max(q.imag(), q2.imag()) < ay0 || std::min(q.imag(), q2.imag()) > ay1)
        continue;
      const double den = cross(r, sv);
      const double scale = std::abs(r) * std::abs(sv);
      if (std::abs(den) <= 1e-12 * scale) {
        if (point_segment_distance(q, p, p2) < 1e-12 * (1 + std::abs(p)) ||
            point_segment_distance(q2, p, p2) < 1e-12 * (1 + std::abs(p)))
          return std::numeric_limits<int>::min();
        continue;
      }
      const double s = cross(q - p, sv) / den;
      const double tt = cross(q - p, r) / den;
      const double e = 1e-9;
      if (s < -e || s > 1 + e || tt < -e || tt > 1 + e) continue;
      if (s < e || s > 1 - e || tt < e || tt > 1 - e) return std::numeric_limits<int>::min();
      const cplx x = p + s * r;
      cplx ya, yb;
      if (!continue_root(cover, p, a.lift[i], x, ya) || !continue_root(cover, q, b.lift[j], x, yb))
        throw Error(ErrorCode::TransportFailure, "lift continuation failed at a crossing");
      if (std::abs(ya - yb) <= 1e-6 * (1.0 + std::abs(ya))) total += den > 0 ? 1 : -1;
    }
  }
  return total;
}

}  // namespace

int intersection_number(const FiberCover& cover, const VanishingCycle& a, const VanishingCycle& b,
                        const MonodromyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  VanishingCycle moved = b;
  for (int attempt = 0; attempt < 6; ++attempt) {
    int n = count_crossings(cover, a, moved);
    if (n != std::numeric_limits<int>::min()) return n * a.orientation_sign * b.orientation_sign;
    double sep = cover.marked_separation();
    cplx shift(normal(rng), normal(rng));
    shift *= 1e-7 * (std::isfinite(sep) ? sep : 1.0);
    moved = b;
    for (auto& v : moved.vertices) v += shift;
    cplx y0;
    if (!continue_root(cover, b.vertices[0], b.lift[0], moved.vertices[0], y0) ||
        !lift_polygon(cover, moved.vertices, y0, moved.lift))
      break;
  }
  throw Error(ErrorCode::NonTransversal, "cycles could not be put in general position");
}

IntersectionMatrix intersection_matrix(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                       const std::vector<int>& ordering, const MonodromyConfig& cfg) {
  const std::size_t n = cycles.size();
  IntersectionMatrix m;
  m.ordering = ordering;
  m.entries.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m.entries[i][j] = intersection_number(cover, cycles[i], cycles[j], cfg);
      m.entries[j][i] = -m.entries[i][j];
    }
  return m;
}

std::vector<cplx> loop_around(const std::vector<cplx>& path, double radius) {
  const cplx u = path.back();
  std::vector<cplx> out(path.begin(), path.end() - 1);
  const cplx prev = path[path.size() - 2];
  const cplx q = u + (prev - u) * (radius / std::abs(prev - u));
  out.push_back(q);
  const double a0 = std::arg(q - u);
  const int n = 64;
  for (int k = 1; k <= n; ++k) out.push_back(k == n ? q : u + std::polar(radius, a0 + 2 * std::numbers::pi * k / n));
  for (int k = static_cast<int>(path.size()) - 2; k >= 0; --k) out.push_back(path[k]);
  return out;
}

std::vector<cplx> large_loop(const OrderedCriticalValues& ordered) {
  const cplx b = ordered.base_point;
  cplx c = 0.0;
  for (auto v : ordered.values) c += v;
  c /= static_cast<double>(std::max<std::size_t>(1, ordered.values.size()));
  double spread = 0.0;
  for (auto v : ordered.values) spread = std::max(spread, std::abs(v - c));
  const double r = 1.3 * spread + 0.2;
  const cplx left = -std::conj(frame_rotation(ordered.phi));
  const int n = 128;
  std::vector<cplx> out{b};
  if (std::abs(b - c) < r) {
    // Base inside: circle around the base itself.
    double rb = 0.0;
    for (auto v : ordered.values) rb = std::max(rb, std::abs(v - b));
    rb = 1.3 * rb + 0.2;
    const cplx start = b + rb * left;
    out.push_back(start);
    for (int k = 1; k <= n; ++k)
      out.push_back(k == n ? start : b + std::polar(rb, std::arg(left) + 2 * std::numbers::pi * k / n));
  } else {
    // Base outside: tether to the point of the circle facing the base.
    const cplx dir = (b - c) / std::abs(b - c);
    const cplx start = c + r * dir;
    out.push_back(start);
    for (int k = 1; k <= n; ++k)
      out.push_back(k == n ? start : c + std::polar(r, std::arg(dir) + 2 * std::numbers::pi * k / n));
  }
  out.push_back(b);
  return out;
}

std::string cycle_csv(const FiberCover& cover, const VanishingCycle& cycle) {
  std::ostringstream os;
  os << "segment,x_re,x_im,sheet\n";
  auto sh = cycle.sheets(cover);
  char buf[128];
  for (std::size_t k = 0; k < cycle.vertices.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%d\n", k, cycle.vertices[k].real(), cycle.vertices[k].imag(),
                  sh[k]);
    os << buf;
  }
  return os.str();
}

}  // namespace toricstokes
