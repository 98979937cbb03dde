#include "toricstokes/ifunction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

// Laurent series in hbar (key: exponent of hbar) with class coefficients.
using Laurent = std::map<int, RationalClass>;

Laurent multiply(const Laurent& a, const Laurent& b, const PicardData& pd) {
  Laurent c;
  for (const auto& [p, x] : a)
    for (const auto& [q, y] : b) {
      auto z = ring_multiply(x, y, pd);
      if (z.is_zero()) continue;
      auto it = c.find(p + q);
      if (it == c.end())
        c.emplace(p + q, z);
      else
        it->second += z;
    }
  std::erase_if(c, [](const auto& kv) { return kv.second.is_zero(); });
  return c;
}

// w + l hbar
Laurent linear(const RationalClass& w, std::int64_t l, int rho) {
  Laurent f;
  if (!w.is_zero()) f[0] = w;
  if (l != 0) f[1] = RationalClass::unit(rho) * mpq_class(static_cast<long>(l));
  return f;
}

// (w + l hbar)^{-1} = sum_m (-1)^m w^m (l hbar)^{-m-1}, l != 0, w nilpotent.
Laurent inverse_linear(const RationalClass& w, std::int64_t l, const PicardData& pd) {
  const int rho = pd.picard_rank;
  Laurent f;
  RationalClass power = RationalClass::unit(rho);
  mpq_class lq(static_cast<long>(l));
  mpq_class scale = 1 / lq;
  for (int m = 0; m <= 2 && !power.is_zero(); ++m) {
    f[-m - 1] = power * scale;
    power = ring_multiply(power, w, pd) * mpq_class(-1);
    scale /= lq;
  }
  return f;
}

Laurent unit_series(int rho) { return Laurent{{0, RationalClass::unit(rho)}}; }

HbarSeries to_hbar_series(const Laurent& l) {
  HbarSeries s;
  for (const auto& [p, c] : l) s.emplace(-p, c);
  return s;
}

Laurent from_hbar_series(const HbarSeries& s) {
  Laurent l;
  for (const auto& [k, c] : s) l.emplace(-k, c);
  return l;
}

int class_degree(const RationalClass& c) {
  // Returns the unique degree of a homogeneous class, -1 for mixed or zero.
  bool d0 = c.deg0 != 0, d4 = c.deg4 != 0, d2 = false;
  for (const auto& x : c.deg2) d2 = d2 || x != 0;
  int count = d0 + d2 + d4;
  if (count != 1) return -1;
  return d0 ? 0 : (d2 ? 1 : 2);
}

std::vector<RationalClass> homogeneous_parts(const RationalClass& c) {
  std::vector<RationalClass> out;
  const int rho = c.rank();
  RationalClass a(rho), b(rho), e(rho);
  a.deg0 = c.deg0;
  b.deg2 = c.deg2;
  e.deg4 = c.deg4;
  for (auto* p : {&a, &b, &e})
    if (!p->is_zero()) out.push_back(*p);
  return out;
}

void for_each_lattice_point(int rho, int max_norm, const std::function<void(const CurveClass&)>& f) {
  CurveClass d(rho, 0);
  std::function<void(int, int)> rec = [&](int a, int left) {
    if (a == rho) {
      f(d);
      return;
    }
    for (int v = -left; v <= left; ++v) {
      d[a] = v;
      rec(a + 1, left - std::abs(v));
    }
    d[a] = 0;
  };
  rec(0, max_norm);
}

std::int64_t l1(const CurveClass& d) {
  std::int64_t s = 0;
  for (auto v : d) s += std::llabs(v);
  return s;
}

mpq_class max_abs(const RationalClass& c) {
  mpq_class m = abs(c.deg0);
  for (const auto& x : c.deg2) m = std::max<mpq_class>(m, abs(x));
  return std::max<mpq_class>(m, abs(c.deg4));
}

}  // namespace

bool anticanonical_nef(const PicardData& pd) {
  for (const auto& curve : pd.boundary_curves)
    if (pd.anticanonical_degree(curve) < 0) return false;
  return true;
}

HbarSeries i_coefficient(const PicardData& pd, const CurveClass& d) {
  const int rho = pd.picard_rank;
  Laurent acc = unit_series(rho);
  auto dk = pd.divisor_degrees(d);
  for (std::size_t k = 0; k < dk.size() && !acc.empty(); ++k) {
    auto w = divisor_class(pd, static_cast<int>(k));
    if (dk[k] >= 0) {
      for (std::int64_t l = 1; l <= dk[k]; ++l) acc = multiply(acc, inverse_linear(w, l, pd), pd);
    } else {
      for (std::int64_t l = dk[k] + 1; l <= 0; ++l) acc = multiply(acc, linear(w, l, rho), pd);
    }
  }
  return to_hbar_series(acc);
}

ISeriesTruncation i_series(const PicardData& pd, int max_degree, int max_norm) {
  if (!anticanonical_nef(pd)) throw Error(ErrorCode::NotNef, "anticanonical class is not nef");
  if (max_norm < 0) max_norm = max_degree + 2;
  ISeriesTruncation t;
  t.max_degree = max_degree;
  t.max_norm = max_norm;
  t.r_degrees = pd.r_degrees;
  for_each_lattice_point(pd.picard_rank, max_norm, [&](const CurveClass& d) {
    auto deg = pd.anticanonical_degree(d);
    if (deg < 0 || deg > max_degree) return;
    auto c = i_coefficient(pd, d);
    if (c.empty()) return;
    for (const auto& [k, cls] : c)
      if (k < 0) throw Error(ErrorCode::NotNef, "positive power of hbar in the I-function");
    t.coefficients.emplace(d, std::move(c));
  });
  return t;
}

GkzResidual gkz_residual(const PicardData& pd, const CurveClass& d, const ISeriesTruncation& trunc) {
  GkzResidual out;
  const int rho = pd.picard_rank;
  auto dd = pd.divisor_degrees(d);
  bool trivial = std::all_of(dd.begin(), dd.end(), [](auto v) { return v == 0; });
  if (trivial) return out;
  auto in_box = [&](const CurveClass& e) {
    auto deg = pd.anticanonical_degree(e);
    return l1(e) <= trunc.max_norm && deg <= trunc.max_degree;
  };
  auto lookup = [&](const CurveClass& e) -> Laurent {
    auto it = trunc.coefficients.find(e);
    return it == trunc.coefficients.end() ? Laurent{} : from_hbar_series(it->second);
  };
  // Classes of negative anticanonical degree are not effective and are not
  // stored, so they count as zero.
  for_each_lattice_point(rho, trunc.max_norm, [&](const CurveClass& e) {
    CurveClass f(rho);
    for (int a = 0; a < rho; ++a) f[a] = e[a] - d[a];
    if (!in_box(e) || !in_box(f)) return;
    if (pd.anticanonical_degree(e) < 0) return;
    auto de = pd.divisor_degrees(e), df = pd.divisor_degrees(f);
    Laurent pos = lookup(e), neg = lookup(f);
    if (pos.empty() && neg.empty()) return;
    for (std::size_t k = 0; k < dd.size(); ++k) {
      auto w = divisor_class(pd, static_cast<int>(k));
      if (dd[k] > 0)
        for (std::int64_t l = 0; l < dd[k] && !pos.empty(); ++l) pos = multiply(pos, linear(w, de[k] - l, rho), pd);
      if (dd[k] < 0)
        for (std::int64_t l = 0; l < -dd[k] && !neg.empty(); ++l)
          neg = multiply(neg, linear(w, df[k] - l, rho), pd);
    }
    for (const auto& [p, c] : neg) {
      auto it = pos.find(p);
      if (it == pos.end())
        pos.emplace(p, c * mpq_class(-1));
      else
        it->second -= c;
    }
    ++out.checked_terms;
    for (const auto& [p, c] : pos) out.max_abs = std::max(out.max_abs, max_abs(c));
  });
  return out;
}

bool homogeneity_check(const ISeriesTruncation& trunc) {
  for (const auto& [d, series] : trunc.coefficients) {
    std::int64_t qdeg = 0;
    for (std::size_t a = 0; a < d.size(); ++a) qdeg += trunc.r_degrees[a] * d[a];
    for (const auto& [k, c] : series) {
      if (k < 0) return false;
      for (const auto& part : homogeneous_parts(c))
        if (class_degree(part) - k + qdeg != 0) return false;
    }
  }
  return true;
}

double multiplication_norm(const RationalClass& c, const PicardData& pd) {
  const int rho = pd.picard_rank;
  const int dim = rho + 2;
  // Column j is the image of basis element j; rows are coordinates.
  std::vector<std::vector<double>> m(dim, std::vector<double>(dim, 0.0));
  for (int j = 0; j < dim; ++j) {
    RationalClass b(rho);
    if (j == 0)
      b = RationalClass::unit(rho);
    else if (j == dim - 1)
      b = RationalClass::point(rho);
    else
      b = RationalClass::basis(rho, j - 1);
    auto img = ring_multiply(c, b, pd);
    m[0][j] = img.deg0.get_d();
    for (int a = 0; a < rho; ++a) m[a + 1][j] = img.deg2[a].get_d();
    m[dim - 1][j] = img.deg4.get_d();
  }
  double norm = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  return norm;
}

ConvergenceDomain convergence_domain(const PicardData& pd) {
  if (!anticanonical_nef(pd)) throw Error(ErrorCode::NotNef, "anticanonical class is not nef");
  ConvergenceDomain out;
  const int n = static_cast<int>(pd.m_matrix.size());
  double c1 = 1.0;
  for (int k = 0; k < n; ++k) {
    auto w = divisor_class(pd, k);
    double a = multiplication_norm(w, pd);
    double b = multiplication_norm(ring_multiply(w, w, pd), pd);
    // |hbar| = 1, |l| >= 1: bounds for w, 1 + w/(l hbar) and its inverse.
    c1 = std::max({c1, a, 1.0 + a, 1.0 + a + b});
  }
  int m = 0;
  for (int a = 0; a < pd.picard_rank; ++a) {
    int s = 0;
    for (int k = 0; k < n; ++k) s += static_cast<int>(std::llabs(pd.m_matrix[k][a]));
    m = std::max(m, s);
  }
  out.c1 = c1;
  out.exponent = m;
  out.c2 = std::pow(n * c1 * c1, m);
  out.radius = 1.0 / out.c2;
  std::ostringstream os;
  os << "|q_a| < " << out.radius << " for all a";
  out.description = os.str();
  return out;
}

bool MirrorMapData::identity() const {
  for (const auto& [d, v] : t0_shift)
    if (v != 0) return false;
  for (const auto& [d, v] : t_shift)
    for (const auto& x : v)
      if (x != 0) return false;
  return true;
}

MirrorMapData mirror_map(const ISeriesTruncation& trunc) {
  MirrorMapData out;
  const int rho = static_cast<int>(trunc.r_degrees.size());
  for (const auto& [d, series] : trunc.coefficients) {
    if (auto it = series.find(0); it != series.end() && it->second.deg0 != 0) out.i0[d] = it->second.deg0;
    if (auto it = series.find(1); it != series.end()) {
      if (it->second.deg0 != 0) out.i10[d] = it->second.deg0;
      if (std::any_of(it->second.deg2.begin(), it->second.deg2.end(), [](const auto& x) { return x != 0; }))
        out.i11[d] = it->second.deg2;
    }
  }
  const CurveClass zero(rho, 0);
  if (auto it = out.i0.find(zero); it == out.i0.end() || it->second != 1)
    throw Error(ErrorCode::NonUnitLeadingTerm, "i0 does not start with 1");

  // 1 / i0 = sum_j (1 - i0)^j, truncated to the norm cap.
  auto in_cap = [&](const CurveClass& d) { return l1(d) <= trunc.max_norm; };
  auto times = [&](const ScalarSeries& a, const ScalarSeries& b) {
    ScalarSeries c;
    for (const auto& [da, va] : a)
      for (const auto& [db, vb] : b) {
        CurveClass s(rho);
        for (int i = 0; i < rho; ++i) s[i] = da[i] + db[i];
        if (!in_cap(s)) continue;
        c[s] += va * vb;
      }
    std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
    return c;
  };
  ScalarSeries nil;
  for (const auto& [d, v] : out.i0)
    if (d != zero) nil[d] = -v;
  ScalarSeries inv{{zero, 1}}, power{{zero, 1}};
  for (int j = 1; j <= trunc.max_norm && !power.empty(); ++j) {
    power = times(power, nil);
    for (const auto& [d, v] : power) inv[d] += v;
  }
  std::erase_if(inv, [](const auto& kv) { return kv.second == 0; });
  out.t0_shift = times(inv, out.i10);
  for (const auto& [di, vi] : inv)
    for (const auto& [d, vec] : out.i11) {
      CurveClass s(rho);
      for (int i = 0; i < rho; ++i) s[i] = di[i] + d[i];
      if (!in_cap(s)) continue;
      auto& slot = out.t_shift[s];
      slot.resize(vec.size());
      for (std::size_t a = 0; a < vec.size(); ++a) slot[a] += vi * vec[a];
    }
  return out;
}

std::string series_text(const ISeriesTruncation& trunc) {
  std::ostringstream os;
  for (const auto& [d, series] : trunc.coefficients)
    for (const auto& [k, c] : series) {
      os << "d=(";
      for (std::size_t a = 0; a < d.size(); ++a) os << (a ? "," : "") << d[a];
      os << ") k=" << k << ' ' << c.deg0.get_str() << " |";
      for (const auto& x : c.deg2) os << ' ' << x.get_str();
      os << " | " << c.deg4.get_str() << '\n';
    }
  return os.str();
}

}  // namespace toricstokes
