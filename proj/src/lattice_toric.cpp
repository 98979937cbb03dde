#include "toricstokes/lattice_toric.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

std::int64_t det(const LatticeVector& a, const LatticeVector& b) {
  return a.x * b.y - a.y * b.x;
}

int Fan::index_of_label(int label) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return static_cast<int>(k);
  return -1;
}

namespace {

// Half-plane index for exact angular sorting: 0 for angle in [0, pi), 1 for [pi, 2pi).
int half(const LatticeVector& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

// Exact inverse of a square integer matrix; nullopt when singular.
std::optional<std::vector<std::vector<mpq_class>>> rational_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpq_class(static_cast<long>(a[i][j]));
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    mpq_class p = m[col][col];
    for (auto& e : m[col]) e /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::optional<IntMatrix> integer_inverse(const IntMatrix& a) {
  auto inv = rational_inverse(a);
  if (!inv) return std::nullopt;
  IntMatrix out(a.size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const mpq_class& q = (*inv)[i][j];
      if (q.get_den() != 1) return std::nullopt;
      out[i][j] = q.get_num().get_si();
    }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Calls f(subset) for every increasing subset of {0..n-1} of size k, until f returns true.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return false;
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Fan parse_fan(std::span<const LatticeVector> rays, std::string name) {
  if (rays.size() < 3)
    throw Error(ErrorCode::TooFewRays, "a complete fan needs at least 3 rays");
  Fan fan;
  fan.name = std::move(name);
  std::vector<int> order(rays.size());
  std::iota(order.begin(), order.end(), 0);
  for (const auto& v : rays) {
    if (std::gcd(v.x, v.y) != 1)
      throw Error(ErrorCode::NonPrimitiveRay,
                  "ray (" + std::to_string(v.x) + "," + std::to_string(v.y) + ") is not primitive");
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return angle_less(rays[a], rays[b]); });
  for (int i : order) {
    fan.rays.push_back(rays[i]);
    fan.labels.push_back(i + 1);
  }
  const std::size_t n = fan.rays.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = fan.rays[k];
    const auto& b = fan.rays[(k + 1) % n];
    if (a == b) throw Error(ErrorCode::NotSmooth, "repeated ray");
    // A gap of at least pi means the rays lie in a closed half-plane.
    if (det(a, b) <= 0)
      throw Error(ErrorCode::NotComplete, "rays do not positively span the plane");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (det(fan.rays[k], fan.rays[(k + 1) % n]) != 1)
      throw Error(ErrorCode::NotSmooth, "consecutive rays " + std::to_string(fan.labels[k]) +
                                            " and " + std::to_string(fan.labels[(k + 1) % n]) +
                                            " do not form a lattice basis");
  }
  return fan;
}

Fan parse_fan_text(const std::string& text) {
  std::istringstream in(text);
  std::string line, name;
  std::vector<LatticeVector> rays;
  const std::regex integer(R"(-?\d+)");
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw Error(ErrorCode::ParseError, "fan file: expected key = value, got '" + line + "'");
      continue;
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      name = value;
    } else if (key == "rays" || key == "ray") {
      std::vector<std::int64_t> ints;
      for (auto it = std::sregex_iterator(value.begin(), value.end(), integer);
           it != std::sregex_iterator(); ++it)
        ints.push_back(std::stoll(it->str()));
      if (ints.size() % 2 != 0)
        throw Error(ErrorCode::ParseError, "fan file: odd number of ray coordinates");
      for (std::size_t i = 0; i < ints.size(); i += 2) rays.push_back({ints[i], ints[i + 1]});
    } else {
      throw Error(ErrorCode::ParseError, "fan file: unknown key '" + key + "'");
    }
  }
  return parse_fan(rays, name);
}

Fan load_fan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open fan file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan_text(ss.str());
}

std::string format_fan_text(const Fan& fan) {
  // Rays are written in input-label order so that labels survive a round trip.
  std::vector<LatticeVector> by_label(fan.size());
  for (std::size_t k = 0; k < fan.size(); ++k) by_label[fan.labels[k] - 1] = fan.rays[k];
  std::ostringstream out;
  if (!fan.name.empty()) out << "name = " << fan.name << "\n";
  out << "rays =";
  for (const auto& v : by_label) out << " (" << v.x << "," << v.y << ")";
  out << "\n";
  return out.str();
}

std::vector<std::string> registered_fan_names() { return {"P2", "P1xP1", "F1", "Y-bl6"}; }

std::optional<Fan> registered_fan(const std::string& name) {
  std::vector<LatticeVector> rays;
  if (name == "P2") {
    rays = {{1, 0}, {0, 1}, {-1, -1}};
  } else if (name == "P1xP1") {
    rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  } else if (name == "F1") {
    rays = {{1, 0}, {1, 1}, {0, 1}, {-1, -1}};
  } else if (name == "Y-bl6") {
    // Labels 1..9 follow the figure of the toric data of Y.
    rays = {{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {-1, 1}, {1, -1}, {-1, 2}, {2, -1}};
  } else {
    return std::nullopt;
  }
  return parse_fan(rays, name);
}

std::vector<std::int64_t> boundary_self_intersections(const Fan& fan) {
  const std::size_t n = fan.size();
  std::vector<std::int64_t> self(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& prev = fan.rays[(k + n - 1) % n];
    const auto& next = fan.rays[(k + 1) % n];
    const auto& v = fan.rays[k];
    LatticeVector sum{prev.x + next.x, prev.y + next.y};
    // sum = a v with a integer because det(prev, v) = det(v, next) = 1.
    std::int64_t a = v.x != 0 ? sum.x / v.x : sum.y / v.y;
    self[k] = -a;
  }
  return self;
}

bool is_nef_anticanonical(const Fan& fan) {
  // <D_k, -K> = 2 + D_k^2 by adjunction on a rational curve.
  for (auto s : boundary_self_intersections(fan))
    if (2 + s < 0) return false;
  return true;
}

std::int64_t normalized_hull_area(std::span<const LatticeVector> points) {
  std::vector<LatticeVector> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](auto& a, auto& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return 0;
  auto cross = [](const LatticeVector& o, const LatticeVector& a, const LatticeVector& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<LatticeVector> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  std::int64_t twice_area = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) twice_area += det(hull[i], hull[(i + 1) % hull.size()]);
  return twice_area < 0 ? -twice_area : twice_area;
}

std::int64_t kouchnirenko_count(const Fan& fan) { return normalized_hull_area(fan.rays); }

std::vector<std::int64_t> PicardData::divisor_degrees(std::span<const std::int64_t> d) const {
  std::vector<std::int64_t> out(m_matrix.size(), 0);
  for (std::size_t k = 0; k < m_matrix.size(); ++k)
    for (int a = 0; a < picard_rank; ++a) out[k] += m_matrix[k][a] * d[a];
  return out;
}

std::int64_t PicardData::anticanonical_degree(std::span<const std::int64_t> d) const {
  std::int64_t s = 0;
  for (int a = 0; a < picard_rank; ++a) s += r_degrees[a] * d[a];
  return s;
}

PicardData picard_data(const Fan& fan) {
  const int n = static_cast<int>(fan.size());
  const int rho = n - 2;
  PicardData pd;
  pd.picard_rank = rho;
  pd.cohomology_rank = rho + 2;

  auto self = boundary_self_intersections(fan);
  pd.divisor_intersections.assign(n, std::vector<std::int64_t>(n, 0));
  for (int k = 0; k < n; ++k) {
    pd.divisor_intersections[k][k] = self[k];
    if (n > 2) {
      int nx = (k + 1) % n;
      pd.divisor_intersections[k][nx] += 1;
      pd.divisor_intersections[nx][k] += 1;
    }
  }

  // Divisor basis T0_a = D_{a+2}; D_0 and D_1 follow from the relations
  // sum_k <m, v_k> D_k = 0 with m the dual basis of (v_0, v_1).
  const auto& v0 = fan.rays[0];
  const auto& v1 = fan.rays[1];
  LatticeVector m0{v1.y, -v1.x};
  LatticeVector m1{-v0.y, v0.x};
  IntMatrix m_div(n, std::vector<std::int64_t>(rho, 0));
  for (int a = 0; a < rho; ++a) {
    const auto& v = fan.rays[a + 2];
    m_div[a + 2][a] = 1;
    m_div[0][a] = -(m0.x * v.x + m0.y * v.y);
    m_div[1][a] = -(m1.x * v.x + m1.y * v.y);
  }
  IntMatrix section0(n, std::vector<std::int64_t>(rho, 0));
  for (int a = 0; a < rho; ++a) section0[a + 2][a] = 1;

  // Boundary curve coordinates in the divisor basis: <D_j, T0_a> = D_j . D_{a+2}.
  IntMatrix curves0(n, std::vector<std::int64_t>(rho));
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < rho; ++a) curves0[j][a] = pd.divisor_intersections[j][a + 2];

  // Look for rho boundary curves forming a Z-basis of H_2 that generate the
  // cone spanned by all boundary curves.
  std::vector<int> distinct;
  for (int j = 0; j < n; ++j) {
    bool seen = false;
    for (int i : distinct) seen = seen || curves0[i] == curves0[j];
    if (!seen) distinct.push_back(j);
  }
  IntMatrix G, G_inv;
  for_each_subset(static_cast<int>(distinct.size()), rho, [&](const std::vector<int>& subset) {
    IntMatrix g(rho);
    for (int i = 0; i < rho; ++i) g[i] = curves0[distinct[subset[i]]];
    auto inv = integer_inverse(g);
    if (!inv) return false;
    // Every boundary curve must be a non-negative combination: c = lambda g.
    for (int j = 0; j < n; ++j) {
      for (int b = 0; b < rho; ++b) {
        std::int64_t lambda = 0;
        for (int a = 0; a < rho; ++a) lambda += curves0[j][a] * (*inv)[a][b];
        if (lambda < 0) return false;
      }
    }
    G = std::move(g);
    G_inv = std::move(*inv);
    return true;
  });

  if (!G.empty()) {
    pd.nef_basis = true;
    pd.basis_change = G_inv;
    pd.m_matrix = multiply(m_div, transpose(G));
  } else {
    pd.basis_change.assign(rho, std::vector<std::int64_t>(rho, 0));
    for (int a = 0; a < rho; ++a) pd.basis_change[a][a] = 1;
    pd.m_matrix = m_div;
  }
  pd.divisor_section = multiply(section0, pd.basis_change);

  IntMatrix q0(rho, std::vector<std::int64_t>(rho));
  for (int a = 0; a < rho; ++a)
    for (int b = 0; b < rho; ++b) q0[a][b] = pd.divisor_intersections[a + 2][b + 2];
  pd.intersection_form = multiply(transpose(pd.basis_change), multiply(q0, pd.basis_change));
  pd.boundary_curves = multiply(curves0, pd.basis_change);

  pd.r_degrees.assign(rho, 0);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < rho; ++a) pd.r_degrees[a] += pd.m_matrix[k][a];
  return pd;
}

}  // namespace toricstokes
