#include "toricstokes/superpotential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

template <class C>
C ipow(C z, int n) {
  C base = n < 0 ? C(1) / z : z;
  C r = 1;
  for (int k = 0; k < std::abs(n); ++k) r *= base;
  return r;
}

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool same_value(cplx a, cplx b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// x W_x and y W_y with their log-coordinate Jacobian.
struct LogSystem {
  lcplx g1 = 0, g2 = 0, j11 = 0, j12 = 0, j22 = 0;
};

LogSystem log_system(const LaurentPolynomial& w, lcplx x, lcplx y) {
  LogSystem s;
  for (const auto& [e, c] : w.terms) {
    const long double a = e.first, b = e.second;
    lcplx m = widen(c) * ipow(x, e.first) * ipow(y, e.second);
    s.g1 += a * m;
    s.g2 += b * m;
    s.j11 += a * a * m;
    s.j12 += a * b * m;
    s.j22 += b * b * m;
  }
  return s;
}

// Newton in log coordinates; returns false when the iteration diverges.
bool refine(const LaurentPolynomial& w, lcplx& x, lcplx& y) {
  for (int it = 0; it < 60; ++it) {
    auto s = log_system(w, x, y);
    lcplx d = s.j11 * s.j22 - s.j12 * s.j12;
    if (std::abs(d) == 0.0L) return false;
    lcplx dx = -(s.j22 * s.g1 - s.j12 * s.g2) / d;
    lcplx dy = -(s.j11 * s.g2 - s.j12 * s.g1) / d;
    if (!std::isfinite(std::abs(dx)) || !std::isfinite(std::abs(dy))) return false;
    if (std::abs(dx) > 1.0L || std::abs(dy) > 1.0L) {
      long double sc = 1.0L / std::max(std::abs(dx), std::abs(dy));
      dx *= sc;
      dy *= sc;
    }
    x *= std::exp(dx);
    y *= std::exp(dy);
    if (std::abs(dx) + std::abs(dy) < 1e-17L) break;
  }
  return true;
}

double coefficient_scale(const LaurentPolynomial& w) {
  double s = 0.0;
  for (const auto& [e, c] : w.terms) s = std::max(s, std::abs(c));
  return std::max(s, 1.0);
}

SparsePoly cleared(const LaurentPolynomial& w, bool dx) {
  SparsePoly p;
  p.nvars = 2;
  int mx = 0, my = 0;
  bool first = true;
  for (const auto& [e, c] : w.terms) {
    const int f = dx ? e.first : e.second;
    if (f == 0 || c == cplx(0.0)) continue;
    mx = first ? e.first : std::min(mx, e.first);
    my = first ? e.second : std::min(my, e.second);
    first = false;
  }
  for (const auto& [e, c] : w.terms) {
    const int f = dx ? e.first : e.second;
    if (f == 0 || c == cplx(0.0)) continue;
    p.terms.push_back({{e.first - mx, e.second - my}, c * static_cast<double>(f)});
  }
  return p;
}

std::vector<CriticalPoint> attempt(const LaurentPolynomial& w, const SolverConfig& cfg, std::uint64_t seed) {
  HomotopyConfig hc = cfg.homotopy;
  hc.seed = seed;
  auto paths = solve_total_degree({cleared(w, true), cleared(w, false)}, hc);
  const double scale = coefficient_scale(w);
  std::vector<CriticalPoint> found;
  for (const auto& p : paths) {
    if (!p.finite) continue;
    cplx x0 = p.affine[0], y0 = p.affine[1];
    if (!std::isfinite(std::abs(x0)) || !std::isfinite(std::abs(y0))) continue;
    if (std::abs(x0) < 1e-6 || std::abs(y0) < 1e-6 || std::abs(x0) > 1e6 || std::abs(y0) > 1e6) continue;
    lcplx x = widen(x0), y = widen(y0);
    if (!refine(w, x, y)) continue;
    auto s = log_system(w, x, y);
    double residual = static_cast<double>(std::max(std::abs(s.g1), std::abs(s.g2)));
    if (!(residual < cfg.tol * scale)) continue;
    CriticalPoint cp;
    cp.x = narrow(x);
    cp.y = narrow(y);
    cp.residual = residual;
    bool dup = false;
    for (const auto& q : found) {
      if (std::abs(q.x - cp.x) + std::abs(q.y - cp.y) <=
          cfg.cluster_tol * (1.0 + std::abs(cp.x) + std::abs(cp.y))) {
        dup = true;
        break;
      }
    }
    if (!dup) found.push_back(cp);
  }
  return found;
}

}  // namespace

cplx LaurentPolynomial::operator()(cplx x, cplx y) const {
  cplx s = 0;
  for (const auto& [e, c] : terms) s += c * ipow(x, e.first) * ipow(y, e.second);
  return s;
}

lcplx LaurentPolynomial::operator()(lcplx x, lcplx y) const {
  lcplx s = 0;
  for (const auto& [e, c] : terms) s += widen(c) * ipow(x, e.first) * ipow(y, e.second);
  return s;
}

std::pair<cplx, cplx> LaurentPolynomial::log_gradient(cplx x, cplx y) const {
  auto s = log_system(*this, widen(x), widen(y));
  return {narrow(s.g1), narrow(s.g2)};
}

std::array<cplx, 3> LaurentPolynomial::hessian(cplx xd, cplx yd) const {
  lcplx x = widen(xd), y = widen(yd);
  lcplx hxx = 0, hxy = 0, hyy = 0;
  for (const auto& [e, c] : terms) {
    const long double a = e.first, b = e.second;
    lcplx cc = widen(c);
    hxx += cc * a * (a - 1) * ipow(x, e.first - 2) * ipow(y, e.second);
    hxy += cc * a * b * ipow(x, e.first - 1) * ipow(y, e.second - 1);
    hyy += cc * b * (b - 1) * ipow(x, e.first) * ipow(y, e.second - 2);
  }
  return {narrow(hxx), narrow(hxy), narrow(hyy)};
}

std::vector<LatticeVector> LaurentPolynomial::exponents() const {
  std::vector<LatticeVector> out;
  for (const auto& [e, c] : terms)
    if (c != cplx(0.0)) out.push_back({e.first, e.second});
  return out;
}

LaurentPolynomial LaurentPolynomial::swapped() const {
  LaurentPolynomial out;
  for (const auto& [e, c] : terms) out.terms[{e.second, e.first}] = c;
  return out;
}

LaurentPolynomial LaurentPolynomial::scaled(cplx s) const {
  LaurentPolynomial out = *this;
  for (auto& [e, c] : out.terms) c *= s;
  return out;
}

std::string LaurentPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (c == cplx(0.0)) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << 'i';
    os << ')';
    if (e.first != 0) os << "*x^" << e.first;
    if (e.second != 0) os << "*y^" << e.second;
  }
  return first ? "0" : os.str();
}

LaurentPolynomial build_w(const Fan& fan, const std::optional<std::map<int, cplx>>& coefficients, cplx constant) {
  LaurentPolynomial w;
  if (coefficients) {
    for (const auto& [label, c] : *coefficients) {
      int k = fan.index_of_label(label);
      if (k < 0) throw Error(ErrorCode::UnknownRayLabel, "no ray with label " + std::to_string(label));
      const auto& v = fan.rays[k];
      w.terms[{static_cast<int>(v.x), static_cast<int>(v.y)}] += c;
    }
  } else {
    for (const auto& v : fan.rays) w.terms[{static_cast<int>(v.x), static_cast<int>(v.y)}] += 1.0;
  }
  if (constant != cplx(0.0)) w.terms[{0, 0}] += constant;
  return w;
}

std::vector<CriticalPoint> critical_points(const LaurentPolynomial& w, const SolverConfig& cfg) {
  auto ex = w.exponents();
  std::erase(ex, LatticeVector{0, 0});
  ex.push_back({0, 0});
  const std::int64_t expected = normalized_hull_area(ex);
  if (expected == 0) throw Error(ErrorCode::DegenerateNewtonPolygon, "Newton polygon of W is not two-dimensional");

  std::vector<CriticalPoint> pts;
  for (int tries = 0; tries < 3; ++tries) {
    pts = attempt(w, cfg, cfg.homotopy.seed + 7919 * tries);
    if (static_cast<std::int64_t>(pts.size()) == expected) break;
  }
  if (static_cast<std::int64_t>(pts.size()) != expected)
    throw Error(ErrorCode::CountMismatch, "found " + std::to_string(pts.size()) + " critical points, expected " +
                                              std::to_string(expected));

  auto key = [](const CriticalPoint& p) {
    auto r = [](double v) { return std::round(v * 1e6); };
    return std::array<double, 4>{r(p.x.real()), r(p.x.imag()), r(p.y.real()), r(p.y.imag())};
  };
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });

  const double scale = coefficient_scale(w);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& p = pts[i];
    p.label = static_cast<int>(i);
    p.value = narrow(w(widen(p.x), widen(p.y)));
    auto h = w.hessian(p.x, p.y);
    p.hessian_det = h[0] * h[2] - h[1] * h[1];
    // x^2 y^2 det H is the log-coordinate Hessian, comparable to the coefficients.
    if (std::abs(p.hessian_det * p.x * p.x * p.y * p.y) < cfg.degenerate_tol * scale * scale)
      throw Error(ErrorCode::DegenerateCritical, "critical point " + std::to_string(i) + " is not Morse");
    p.sqrt_hessian = std::sqrt(p.hessian_det);
    p.sqrt_sign = 1;
    p.prefactor = 1.0 / (p.x * p.y * p.sqrt_hessian);
  }
  return pts;
}

cplx saddle_leading_term(const CriticalPoint& cp, cplx hbar) {
  if (cp.hessian_det == cplx(0.0) || !std::isfinite(std::abs(cp.prefactor)))
    throw Error(ErrorCode::DegenerateCritical, "leading term at a degenerate critical point");
  return cp.prefactor * std::exp(cp.value / hbar) / (std::numbers::pi * hbar);
}

double admissibility_margin(const std::vector<cplx>& values, double phi, double value_tol) {
  double margin = std::numbers::pi / 2;
  const cplx l = std::polar(1.0, -phi);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (same_value(values[i], values[j], value_tol)) continue;
      cplx d = (values[j] - values[i]) * l;
      double theta = std::atan2(std::abs(d.imag()), std::abs(d.real()));
      margin = std::min(margin, std::numbers::pi / 2 - theta);
    }
  return margin;
}

bool admissible_check(const std::vector<cplx>& values, double phi, double angle_tol, double value_tol) {
  return admissibility_margin(values, phi, value_tol) >= angle_tol;
}

cplx frame_rotation(double phi) { return std::polar(1.0, std::numbers::pi / 2 - phi); }

double choose_admissible_phi(const std::vector<cplx>& values, double value_tol) {
  const double step = std::numbers::pi / 36;
  for (int k = 0; k < 36; ++k) {
    for (int s : {1, -1}) {
      if (k == 0 && s < 0) continue;
      double phi = std::numbers::pi / 2 + s * k * step;
      if (admissibility_margin(values, phi, value_tol) >= step / 2) return phi;
    }
  }
  throw Error(ErrorCode::NotAdmissible, "no admissible direction on the search grid");
}

namespace {

double point_segment_distance(cplx p, cplx a, cplx b) {
  cplx d = b - a;
  double t = std::norm(d) == 0.0 ? 0.0 : std::clamp(((p - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Smallest distance from a straight path to a critical value it does not end at.
double path_clearance(const std::vector<cplx>& values, cplx base, double value_tol) {
  double c = 1e300;
  for (const auto& v : values) {
    c = std::min(c, std::abs(v - base));
    for (const auto& u : values)
      if (!same_value(u, v, value_tol)) c = std::min(c, point_segment_distance(u, base, v));
  }
  return c;
}

}  // namespace

cplx choose_base_point(const std::vector<cplx>& values, double phi, double value_tol) {
  const cplx rot = frame_rotation(phi);
  double lo_re = 1e300, lo_im = 1e300, hi_im = -1e300, hi_re = -1e300;
  std::vector<cplx> rv;
  for (auto v : values) {
    cplx r = v * rot;
    rv.push_back(r);
    lo_re = std::min(lo_re, r.real());
    hi_re = std::max(hi_re, r.real());
    lo_im = std::min(lo_im, r.imag());
    hi_im = std::max(hi_im, r.imag());
  }
  const double spread = std::max({1.0, hi_re - lo_re, hi_im - lo_im});
  const double re = lo_re - spread;
  cplx best = cplx(re, 0.5 * (lo_im + hi_im));
  double best_c = -1.0;
  const int n = 64;
  for (int k = 0; k <= n; ++k) {
    cplx b(re, lo_im - 0.5 * spread + (hi_im - lo_im + spread) * k / n);
    double c = path_clearance(rv, b, value_tol);
    if (c > best_c * (1.0 + 1e-9)) {
      best_c = c;
      best = b;
    }
  }
  return best / rot;
}

OrderedCriticalValues distinguished_ordering(const std::vector<cplx>& values, cplx base_point, double phi,
                                             const SolverConfig& cfg) {
  if (!admissible_check(values, phi, cfg.angle_tol, cfg.value_cluster_tol))
    throw Error(ErrorCode::NotAdmissible, "line is orthogonal to a segment between critical values");
  OrderedCriticalValues out;
  out.values = values;
  out.base_point = base_point;
  out.phi = phi;

  double scale = 1.0;
  for (auto v : values) scale = std::max(scale, std::abs(v));
  if (path_clearance(values, base_point, cfg.value_cluster_tol) < 1e-8 * scale)
    throw Error(ErrorCode::BasePointTooClose, "a straight path from the base point meets a critical value");

  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const auto& c) {
      return same_value(values[c.front()], values[i], cfg.value_cluster_tol);
    });
    if (it == clusters.end())
      clusters.push_back({i});
    else
      it->push_back(i);
  }
  const cplx rot = frame_rotation(phi);
  auto angle = [&](const std::vector<int>& c) { return std::arg((values[c.front()] - base_point) * rot); };
  std::stable_sort(clusters.begin(), clusters.end(),
                   [&](const auto& a, const auto& b) { return angle(a) > angle(b); });
  out.clusters = clusters;
  for (const auto& c : clusters) out.ordering.insert(out.ordering.end(), c.begin(), c.end());
  return out;
}

std::string critical_points_csv(const std::vector<CriticalPoint>& points) {
  std::ostringstream os;
  os << "label,x_re,x_im,y_re,y_im,value_re,value_im,hessian_re,hessian_im,residual\n";
  char buf[512];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3g\n", p.label,
                  p.x.real(), p.x.imag(), p.y.real(), p.y.imag(), p.value.real(), p.value.imag(),
                  p.hessian_det.real(), p.hessian_det.imag(), p.residual);
    os << buf;
  }
  return os.str();
}

}  // namespace toricstokes
