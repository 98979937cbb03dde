#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oracles {

namespace {

cplx omega_pow(int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0); }

int mod3(int k) { return ((k % 3) + 3) % 3; }

// Weights with multiplicities, possibly negative (virtual).
using Character = std::map<int, int>;

Character from_list(const std::vector<int>& w) {
  Character c;
  for (int x : w) c[mod3(x)] += 1;
  return c;
}

Character tensor(const Character& a, const Character& b) {
  Character c;
  for (auto [wa, ma] : a)
    for (auto [wb, mb] : b) c[mod3(wa + wb)] += ma * mb;
  return c;
}

Character minus(Character a, const Character& b) {
  for (auto [w, m] : b) a[w] -= m;
  return a;
}

// Linear forms x, y, z; the group acts on x by w, so on the form by w^{-1}.
const std::vector<int> kV{1, 2, 0};

Character v_dual() {
  std::vector<int> w;
  for (int x : kV) w.push_back(-x);
  return from_list(w);
}

Character sym2(const std::vector<int>& w) {
  std::vector<int> out;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a; b < w.size(); ++b) out.push_back(w[a] + w[b]);
  return from_list(out);
}

Class zero_class(int rank) { return {0, std::vector<mpq_class>(rank, 0), 0}; }

Class multiply(const Class& a, const Class& b, const toricstokes::PicardData& pd) {
  const int r = pd.picard_rank;
  Class c = zero_class(r);
  c.c0 = a.c0 * b.c0;
  for (int i = 0; i < r; ++i) c.c2[i] = a.c0 * b.c2[i] + b.c0 * a.c2[i];
  c.c4 = a.c0 * b.c4 + b.c0 * a.c4;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c.c4 += a.c2[i] * b.c2[j] * mpq_class(static_cast<long>(pd.intersection_form[i][j]));
  return c;
}

Class add(const Class& a, const Class& b) {
  Class c = a;
  c.c0 += b.c0;
  for (std::size_t i = 0; i < c.c2.size(); ++i) c.c2[i] += b.c2[i];
  c.c4 += b.c4;
  return c;
}

Class scale(Class a, const mpq_class& s) {
  a.c0 *= s;
  for (auto& x : a.c2) x *= s;
  a.c4 *= s;
  return a;
}

// Series in u = 1/hbar: power -> class.
using Series = std::map<int, Class>;

Series mul(const Series& a, const Series& b, const toricstokes::PicardData& pd) {
  Series out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      auto prod = multiply(ca, cb, pd);
      auto it = out.find(pa + pb);
      if (it == out.end())
        out.emplace(pa + pb, prod);
      else
        it->second = add(it->second, prod);
    }
  return out;
}

}  // namespace

bool Class::zero() const {
  if (c0 != 0 || c4 != 0) return false;
  return std::all_of(c2.begin(), c2.end(), [](const mpq_class& x) { return x == 0; });
}

P2Critical oracle_p2_critical(int k) {
  const cplx w = omega_pow(k);
  // Hessian of x + y + 1/(xy) at x = y = w: entries 2/(x^3 y), 1/(x^2 y^2), 2/(x y^3).
  const cplx hxx = 2.0 / (w * w * w * w), hxy = 1.0 / (w * w * w * w);
  return {w, w, 3.0 * w, hxx * hxx - hxy * hxy};
}

std::pair<cplx, cplx> oracle_y_critical(int i, int j) { return {omega_pow(i + j - 1), omega_pow(2 * j)}; }

int oracle_invariants_bruteforce(const std::vector<int>& weights, int twist) {
  cplx sum = 0.0;
  for (int g = 0; g < 3; ++g) {
    cplx chi = 0.0;
    for (int w : weights) chi += omega_pow(w * g);
    sum += chi * omega_pow(twist * g);
  }
  return static_cast<int>(std::lround((sum / 3.0).real()));
}

std::vector<int> oracle_beilinson_hom_weights(int i, int l) {
  Character c;
  if (i == l) {
    c = from_list({0});
  } else if (i == 1 && l == 2) {
    // V^dual (x) V^dual -> Sym^2 V^dual is onto with kernel Lambda^2 V^dual.
    std::vector<int> vd;
    for (int x : kV) vd.push_back(-x);
    c = minus(tensor(v_dual(), v_dual()), sym2(vd));
  } else if (i == 1 && l == 3) {
    c = v_dual();
  } else if (i == 2 && l == 3) {
    c = from_list(kV);
  }
  std::vector<int> out;
  for (auto [w, m] : c)
    for (int k = 0; k < m; ++k) out.push_back(w);
  return out;
}

int oracle_equivariant_hom(int i, int j, int l, int m) {
  if (i > l) return 0;
  return oracle_invariants_bruteforce(oracle_beilinson_hom_weights(i, l), m - j);
}

std::map<int, Class> oracle_defI_direct(const toricstokes::PicardData& pd, const std::vector<std::int64_t>& d) {
  const int r = pd.picard_rank;
  Series s{{0, zero_class(r)}};
  s[0].c0 = 1;
  for (std::size_t k = 0; k < pd.m_matrix.size(); ++k) {
    std::int64_t dk = 0;
    for (int a = 0; a < r; ++a) dk += pd.m_matrix[k][a] * d[a];
    Class w = zero_class(r);
    for (int a = 0; a < r; ++a) w.c2[a] = static_cast<long>(pd.m_matrix[k][a]);
    if (dk >= 0) {
      for (std::int64_t l = 1; l <= dk; ++l) {
        // (w + l hbar)^{-1} = sum_j (-1)^j w^j u^{j+1} / l^{j+1}, w^3 = 0.
        Series inv;
        Class wj = zero_class(r);
        wj.c0 = 1;
        for (int j = 0; j <= 2; ++j) {
          mpq_class coef(j % 2 == 0 ? 1 : -1);
          for (int e = 0; e <= j; ++e) coef /= mpq_class(static_cast<long>(l));
          inv[j + 1] = scale(wj, coef);
          wj = multiply(wj, w, pd);
        }
        s = mul(s, inv, pd);
      }
    } else {
      for (std::int64_t l = dk + 1; l <= 0; ++l) {
        // w + l hbar = w u^0 + l u^{-1}
        Series f{{0, w}};
        if (l != 0) {
          Class c = zero_class(r);
          c.c0 = static_cast<long>(l);
          f[-1] = c;
        }
        s = mul(s, f, pd);
      }
    }
  }
  std::map<int, Class> out;
  for (auto& [p, c] : s)
    if (!c.zero()) out.emplace(p, c);
  return out;
}

std::int64_t oracle_rr_p2(int a, int b) {
  const std::int64_t d = b - a;
  return (d + 1) * (d + 2) / 2;
}

std::int64_t oracle_rr_p1p1(int a1, int a2, int b1, int b2) {
  return static_cast<std::int64_t>(b1 - a1 + 1) * (b2 - a2 + 1);
}

std::vector<int> oracle_cycle_type_at_infinity(const std::vector<std::pair<int, int>>& exponents) {
  // Largest x-degree in each y-power.
  std::map<int, int> top;
  for (auto [a, b] : exponents) top[b] = top.count(b) ? std::max(top[b], a) : a;
  std::vector<std::pair<int, int>> pts(top.begin(), top.end());  // (j, e_j)
  // Upper hull of (j, e_j) by brute force: an edge joins two points with no
  // point strictly above the line.
  std::vector<int> out;
  for (std::size_t s = 0; s < pts.size(); ++s)
    for (std::size_t t = s + 1; t < pts.size(); ++t) {
      const auto [j1, e1] = pts[s];
      const auto [j2, e2] = pts[t];
      bool edge = true;
      for (std::size_t u = 0; u < pts.size() && edge; ++u) {
        const auto [j, e] = pts[u];
        const long side = static_cast<long>(j2 - j1) * (e - e1) - static_cast<long>(e2 - e1) * (j - j1);
        if (side > 0) edge = false;
      }
      if (!edge) continue;
      bool between = false;
      for (std::size_t u = 0; u < pts.size(); ++u) {
        const auto [j, e] = pts[u];
        const long side = static_cast<long>(j2 - j1) * (e - e1) - static_cast<long>(e2 - e1) * (j - j1);
        if (side == 0 && (j < j1 || j > j2)) between = true;  // a longer collinear edge exists
      }
      if (between) continue;
      const int width = j2 - j1;
      const int q = width / std::gcd(width, std::abs(e2 - e1));
      for (int k = 0; k < width / q; ++k) out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> oracle_above_order(const std::vector<cplx>& values, cplx base, double phi) {
  const cplx rot = std::polar(1.0, std::numbers::pi / 2 - phi);
  const int n = static_cast<int>(values.size());
  double nearest = 1e300;
  for (auto v : values) nearest = std::min(nearest, std::abs(v - base));
  const double r = 1e-3 * nearest;
  // Clockwise from the leftmost point of the circle: key in [0, 2 pi).
  std::vector<std::pair<long long, int>> keys;
  for (int k = 0; k < n; ++k) {
    const cplx p = r * (values[k] - base) / std::abs(values[k] - base) * rot;
    double a = std::numbers::pi - std::atan2(p.imag(), p.real());
    if (a >= 2 * std::numbers::pi) a -= 2 * std::numbers::pi;
    keys.push_back({std::llround(a * 1e8), k});
  }
  std::sort(keys.begin(), keys.end());
  std::vector<int> out;
  for (auto [a, k] : keys) out.push_back(k);
  return out;
}

}  // namespace oracles
