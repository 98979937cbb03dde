// Runs the seven acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "toricstokes/derived_euler.hpp"
#include "toricstokes/ifunction.hpp"
#include "toricstokes/pipeline.hpp"
#include "toricstokes/report.hpp"
#include "toricstokes/stokes.hpp"

using namespace toricstokes;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

PipelineConfig full_config() {
  PipelineConfig c;
  c.picard_lefschetz = true;
  return c;
}

const VerificationReport& report_for(const std::string& name) {
  static std::map<std::string, VerificationReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, run_verify(*registered_fan(name), full_config())).first;
  return it->second;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

std::vector<CurveClass> ball(int rank, int radius) {
  std::vector<CurveClass> out;
  CurveClass d(rank, -radius);
  while (true) {
    std::int64_t n = 0;
    bool zero = true;
    for (auto x : d) n += std::llabs(x), zero = zero && x == 0;
    if (n <= radius && !zero) out.push_back(d);
    int k = 0;
    while (k < rank && d[k] == radius) d[k++] = -radius;
    if (k == rank) break;
    ++d[k];
  }
  return out;
}

Outcome criterion_y() {
  const auto& r = report_for("Y-bl6");
  std::vector<std::string> bad;
  const cplx w = std::polar(1.0, 2 * std::numbers::pi / 3);

  if (r.critical_points.size() != 9) bad.push_back("critical point count " + std::to_string(r.critical_points.size()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto [x, y] = oracles::oracle_y_critical(i, j);
      int n = 0;
      for (std::size_t k = 0; k < r.critical_points.size(); ++k)
        if (std::abs(r.critical_points[k].x - x) < 1e-10 && std::abs(r.critical_points[k].y - y) < 1e-10) ++n;
      if (n != 1) bad.push_back("p_" + std::to_string(i) + std::to_string(j) + " matched " + std::to_string(n) + " times");
    }
  for (int k = 0; k < 3; ++k) {
    int mult = 0;
    for (const auto& c : r.critical_points) mult += std::abs(c.value - 3.0 * std::pow(w, k)) < 1e-10;
    if (mult != 3) bad.push_back("value 3w^" + std::to_string(k) + " multiplicity " + std::to_string(mult));
  }

  // Cluster of each position; clusters run C_0*, C_1*, C_2* from the top.
  const auto& o = r.ordered;
  const auto& m = r.intersections.entries;
  const int n = static_cast<int>(m.size());
  std::vector<int> cl(n, -1);
  for (int p = 0; p < n; ++p)
    for (std::size_t c = 0; c < o.clusters.size(); ++c)
      for (int l : o.clusters[c])
        if (l == o.ordering[p]) cl[p] = static_cast<int>(c);
  // Orientations are a choice: take the one closest to the pattern, which
  // must then hold exactly.
  auto errors_for = [&](const std::vector<int>& eps) {
    int e = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto v = eps[a] * eps[b] * m[a][b];
        e += cl[a] == cl[b] ? v != 0 : cl[a] < cl[b] ? v != -1 : v != 1;
      }
    return e;
  };
  std::vector<int> eps(n, 1);
  int pattern_errors = errors_for(eps);
  for (unsigned bits = 0; n > 0 && bits < (1u << (n - 1)); ++bits) {
    std::vector<int> e(n, 1);
    for (int p = 1; p < n; ++p) e[p] = (bits >> (p - 1)) & 1 ? -1 : 1;
    if (int k = errors_for(e); k < pattern_errors) pattern_errors = k, eps = e;
  }
  if (pattern_errors) bad.push_back(std::to_string(pattern_errors) + " intersection entries off the pattern");

  auto c = compare_up_to_signs(r.stokes.entries, euler_matrix_y().entries, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  if (!r.matched()) bad.push_back("pipeline certificate not matched");
  if (!c.matched) bad.push_back("compare_up_to_signs against euler_matrix_y: no match");
  std::string orient;
  for (int e : eps) orient += e > 0 ? '+' : '-';
  return {bad.empty(), bad.empty() ? "9 points, 3 values x3, pattern exact with orientations " + orient +
                                         ", certificate " + braid_word_string(r.certificate.braid_word)
                                   : join(bad)};
}

Outcome criterion_p2() {
  const auto& r = report_for("P2");
  IntMatrix rr(3, std::vector<std::int64_t>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) rr[a][b] = a > b ? 0 : oracles::oracle_rr_p2(a, b);
  std::vector<std::string> bad;
  if (r.euler.entries != rr) bad.push_back("Euler matrix differs from Riemann-Roch");
  auto c = compare_up_to_signs(r.stokes.entries, rr, {}, r.config.max_braid_length);
  if (!c.matched || apply_certificate(r.stokes.entries, c) != rr) bad.push_back("certificate does not reproduce");
  if (!r.matched()) bad.push_back("pipeline not matched");
  if (!r.mutation || !r.mutation->agrees) bad.push_back("geometric braid move disagrees");
  return {bad.empty(), bad.empty() ? "matched via " + braid_word_string(c.braid_word) + ", braid move realised geometrically"
                                   : join(bad)};
}

Outcome criterion_p1p1() {
  const auto& r = report_for("P1xP1");
  const int a1[] = {0, 1, 0, 1}, a2[] = {0, 0, 1, 1};
  IntMatrix rr(4, std::vector<std::int64_t>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rr[a][b] = oracles::oracle_rr_p1p1(a1[a], a2[a], a1[b], a2[b]);
  std::vector<std::string> bad;
  if (rr != IntMatrix{{1, 2, 2, 4}, {0, 1, 0, 2}, {0, 0, 1, 2}, {0, 0, 0, 1}}) bad.push_back("oracle matrix");
  bool pair = false;
  for (const auto& c : r.ordered.clusters) pair = pair || c.size() == 2;
  if (!pair) bad.push_back("no cluster of size 2");
  if (r.euler.entries != rr) bad.push_back("Euler matrix differs from Riemann-Roch");
  if (!r.matched() || apply_certificate(r.stokes.entries, r.certificate) != rr) bad.push_back("not matched");
  return {bad.empty(), bad.empty() ? "matched via " + braid_word_string(r.certificate.braid_word) +
                                         ", degenerate cluster handled"
                                   : join(bad)};
}

Outcome criterion_pl() {
  std::vector<std::string> bad, good;
  for (const std::string name : {"Y-bl6", "P2", "P1xP1"}) {
    const auto& r = report_for(name);
    if (!r.picard_lefschetz) {
      bad.push_back(name + ": no check ran");
      continue;
    }
    const auto& pl = *r.picard_lefschetz;
    if (!pl.local_ok) bad.push_back(name + ": local monodromy off the formula");
    if (!pl.large_ok) bad.push_back(name + ": large loop differs from the product");
    good.push_back(name + " " + std::to_string(pl.local.size()) + " transports");
  }
  return {bad.empty(), bad.empty() ? join(good) : join(bad)};
}

Outcome criterion_ifunction() {
  std::vector<std::string> bad;
  for (const std::string name : {"P2", "Y-bl6"}) {
    auto pd = picard_data(*registered_fan(name));
    auto t = i_series(pd, 6, 4);
    for (const auto& d : ball(pd.picard_rank, 2)) {
      auto res = gkz_residual(pd, d, t);
      if (!res.zero()) bad.push_back(name + ": GKZ residual nonzero");
    }
    if (!homogeneity_check(t)) bad.push_back(name + ": not homogeneous");
    auto mm = mirror_map(t);
    if (name == "P2" && !mm.identity()) bad.push_back("P2 mirror map is not the identity");
    if (name == "Y-bl6") {
      if (mm.identity()) bad.push_back("Y mirror map is trivial");
      auto off = [&](const CurveClass& d) { return pd.anticanonical_degree(d) != 0; };
      for (const auto& [d, v] : mm.i0)
        if (off(d)) bad.push_back("Y i0 correction off degree 0");
      for (const auto& [d, v] : mm.t_shift)
        if (off(d) && std::any_of(v.begin(), v.end(), [](const auto& x) { return x != 0; }))
          bad.push_back("Y mirror map correction off degree 0");
    }
  }

  std::mt19937 rng(20240611);
  const std::vector<std::string> names = registered_fan_names();
  int agreed = 0;
  for (int k = 0; k < 20; ++k) {
    const auto& name = names[rng() % names.size()];
    auto pd = picard_data(*registered_fan(name));
    CurveClass d(pd.picard_rank);
    for (auto& x : d) x = static_cast<std::int64_t>(rng() % 4) - 1;
    auto got = i_coefficient(pd, d);
    auto want = oracles::oracle_defI_direct(pd, d);
    std::map<int, oracles::Class> g;
    for (const auto& [p, c] : got)
      if (!c.is_zero()) g.emplace(p, oracles::Class{c.deg0, c.deg2, c.deg4});
    if (g == want) ++agreed;
    else bad.push_back("oracle disagreement on " + name);
  }
  std::ostringstream os;
  os << "GKZ/homogeneity exact, P2 identity, Y nontrivial on degree 0, " << agreed << "/20 oracle samples";
  return {bad.empty(), bad.empty() ? os.str() : join(bad)};
}

Outcome criterion_ext() {
  std::vector<std::string> bad;
  for (int i = 1; i <= 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 1; l <= 3; ++l)
        for (int m = 0; m < 3; ++m) {
          auto d = equivariant_ext_dims(i, j, l, m);
          if (d[0] - d[1] + d[2] != oracles::oracle_equivariant_hom(i, j, l, m) || d[1] || d[2])
            bad.push_back("tuple " + std::to_string(i) + std::to_string(j) + std::to_string(l) + std::to_string(m));
        }
  auto e = euler_matrix_y().entries;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      const int want = a / 3 == b / 3 ? (a == b) : (a / 3 < b / 3 ? 1 : 0);
      if (e[a][b] != want) bad.push_back("block entry " + std::to_string(a) + "," + std::to_string(b));
    }
  return {bad.empty(), bad.empty() ? "81 tuples agree, block structure exact" : join(bad)};
}

Outcome criterion_determinism() {
  const auto& first = report_for("Y-bl6");
  auto second = run_verify(*registered_fan("Y-bl6"), full_config());
  std::vector<std::string> bad;
  if (first.intersections.entries != second.intersections.entries) bad.push_back("intersection matrices differ");
  if (first.stokes.entries != second.stokes.entries) bad.push_back("Stokes matrices differ");
  if (report_json(first, false)["certificate"] != report_json(second, false)["certificate"])
    bad.push_back("certificates differ");
  if (report_text(first, false) != report_text(second, false)) bad.push_back("reports differ");
  return {bad.empty(), bad.empty() ? "two Y runs byte-identical" : join(bad)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Y end-to-end", criterion_y},
      {"P2 cross-check", criterion_p2},
      {"P1xP1 cross-check", criterion_p1p1},
      {"Picard-Lefschetz consistency", criterion_pl},
      {"I-function suite", criterion_ifunction},
      {"equivariant Ext suite", criterion_ext},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
