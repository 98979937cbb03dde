#include "toricstokes/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

template <class F>
auto stage(VerificationReport& r, const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    r.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    r.stages.push_back(name);
  };
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      finish();
    } else {
      auto out = body();
      finish();
      return out;
    }
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.code(), std::string(e.what()), name);
  }
}

std::vector<int> pairing_vector(const FiberCover& cover, const VanishingCycle& x,
                                const std::vector<VanishingCycle>& basis, const MonodromyConfig& cfg) {
  std::vector<int> out;
  for (const auto& c : basis) out.push_back(intersection_number(cover, x, c, cfg));
  return out;
}

std::vector<int> positions_of(const std::vector<int>& labels, const std::vector<int>& ordering) {
  std::vector<int> out;
  for (int l : labels) out.push_back(static_cast<int>(std::find(ordering.begin(), ordering.end(), l) - ordering.begin()));
  return out;
}

std::vector<CurveClass> lattice_ball(int rank, int radius) {
  std::vector<CurveClass> out;
  CurveClass d(rank, 0);
  std::function<void(int, int)> rec = [&](int a, int left) {
    if (a == rank) {
      out.push_back(d);
      return;
    }
    for (int v = -left; v <= left; ++v) {
      d[a] = v;
      rec(a + 1, left - std::abs(v));
    }
    d[a] = 0;
  };
  rec(0, radius);
  return out;
}

double loop_radius(const OrderedCriticalValues& ordered, const std::vector<cplx>& path) {
  const cplx u = path.back();
  double r = std::abs(u - path[path.size() - 2]);
  for (auto v : ordered.values)
    if (std::abs(v - u) > 1e-8 * (1.0 + std::abs(u))) r = std::min(r, std::abs(v - u));
  return 0.25 * r;
}

std::vector<cplx> reversed(std::vector<cplx> p) {
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

bool VerificationReport::has_stage(const std::string& s) const {
  return std::find(stages.begin(), stages.end(), s) != stages.end();
}

Fan resolve_surface(const std::string& name, const std::optional<std::filesystem::path>& fan_file) {
  if (fan_file) return load_fan_file(*fan_file);
  auto fan = registered_fan(name);
  if (!fan) throw Error(ErrorCode::UnknownSurface, "unknown surface '" + name + "'", "toric");
  return *fan;
}

LaurentPolynomial pipeline_superpotential(const Fan& fan) {
  if (fan.name == "Y-bl6") return build_w(fan, std::map<int, cplx>{{3, 1.0}, {8, 1.0}, {9, 1.0}});
  return build_w(fan, std::nullopt);
}

PicardLefschetzReport picard_lefschetz_check(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                             const OrderedCriticalValues& ordered,
                                             const std::vector<std::vector<cplx>>& paths,
                                             const IntersectionMatrix& q, const MonodromyConfig& cfg) {
  PicardLefschetzReport rep;
  const int n = static_cast<int>(cycles.size());
  const auto& Q = q.entries;
  std::vector<std::vector<int>> cluster_pos;
  for (const auto& c : ordered.clusters) cluster_pos.push_back(positions_of(c, ordered.ordering));

  bool all_plus = true, all_minus = true;
  for (std::size_t a = 0; a < ordered.clusters.size(); ++a) {
    const auto& path = paths[ordered.clusters[a].front()];
    const auto loop = loop_around(path, loop_radius(ordered, path));
    for (int b = 0; b < n; ++b) {
      LocalMonodromyCheck chk;
      chk.cluster = static_cast<int>(a);
      chk.position = b;
      chk.observed = pairing_vector(cover, transport_cycle(cover, cycles[b], loop, cfg), cycles, cfg);
      for (int sigma : {1, -1}) {
        bool ok = true;
        for (int k = 0; k < n; ++k) {
          int pred = Q[b][k];
          for (int m : cluster_pos[a]) pred += sigma * Q[m][b] * Q[m][k];
          ok = ok && pred == chk.observed[k];
        }
        (sigma == 1 ? chk.plus_ok : chk.minus_ok) = ok;
      }
      all_plus = all_plus && chk.plus_ok;
      all_minus = all_minus && chk.minus_ok;
      rep.local.push_back(std::move(chk));
    }
  }
  // Both hold only when every loop acts trivially on the pairings.
  rep.sigma = all_minus ? -1 : (all_plus ? 1 : 0);
  rep.local_ok = rep.sigma != 0;

  const auto big = large_loop(ordered);
  const int sigma = rep.sigma == 0 ? -1 : rep.sigma;
  rep.large_ok = rep.local_ok;
  for (int b = 0; b < n; ++b) {
    std::vector<long> x(n, 0);
    x[b] = 1;
    for (int a = static_cast<int>(cluster_pos.size()) - 1; a >= 0; --a) {
      std::vector<long> add(n, 0);
      for (int m : cluster_pos[a]) {
        long p = 0;
        for (int j = 0; j < n; ++j) p += Q[m][j] * x[j];
        add[m] += sigma * p;
      }
      for (int j = 0; j < n; ++j) x[j] += add[j];
    }
    std::vector<int> pred(n, 0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) pred[k] += static_cast<int>(x[j] * Q[j][k]);
    auto obs = pairing_vector(cover, transport_cycle(cover, cycles[b], big, cfg), cycles, cfg);
    rep.large_ok = rep.large_ok && obs == pred;
    rep.large_observed.push_back(std::move(obs));
    rep.large_predicted.push_back(std::move(pred));
  }
  return rep;
}

GeometricMutation realise_braid_word(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                     const OrderedCriticalValues& ordered,
                                     const std::vector<std::vector<cplx>>& paths, const StokesMatrix& stokes,
                                     const EulerMatrix& euler, const std::vector<BraidMove>& word,
                                     const MonodromyConfig& cfg) {
  GeometricMutation g;
  g.word = word;
  g.formula_stokes = apply_braid_word(stokes, word).entries;
  if (word.size() != 1) {
    g.note = word.empty() ? "no braid move needed" : "only single moves are realised geometrically";
    return g;
  }
  const int n = static_cast<int>(cycles.size());
  const int i = word[0].position - 1, j = word[0].position;
  if (i < 0 || j >= n) throw Error(ErrorCode::IndexOutOfRange, "braid position outside the basis");
  auto q = intersection_matrix(cover, cycles, ordered.ordering, cfg).entries;

  // Forward: (C_i, C_j) -> (C_j + (C_i, C_j) C_i, C_i), moving C_j around u_i.
  // Inverse: (C_i, C_j) -> (C_j, C_i + (C_i, C_j) C_j), moving C_i around u_j.
  const int fixed = word[0].inverse ? j : i;
  const int moved = word[0].inverse ? i : j;
  const auto& path = paths[ordered.ordering[fixed]];
  const auto loop = loop_around(path, loop_radius(ordered, path));
  std::vector<int> want(n);
  for (int k = 0; k < n; ++k) want[k] = q[moved][k] + q[i][j] * q[fixed][k];

  std::optional<VanishingCycle> image;
  for (bool ccw : {true, false}) {
    auto c = transport_cycle(cover, cycles[moved], ccw ? loop : reversed(loop), cfg);
    if (pairing_vector(cover, c, cycles, cfg) == want) {
      image = std::move(c);
      g.counterclockwise = ccw;
      break;
    }
  }
  if (!image) {
    g.note = "neither loop direction reproduces the move";
    return g;
  }
  auto moved_cycles = cycles;
  auto moved_order = ordered.ordering;
  if (!word[0].inverse) {
    moved_cycles[i] = *image;
    moved_cycles[j] = cycles[i];
  } else {
    moved_cycles[i] = cycles[j];
    moved_cycles[j] = *image;
  }
  std::swap(moved_order[i], moved_order[j]);
  g.realised = true;
  g.geometric_stokes = stokes_from_intersections(intersection_matrix(cover, moved_cycles, moved_order, cfg)).entries;
  g.agrees = g.geometric_stokes == g.formula_stokes;
  g.matches_euler = compare_up_to_signs(g.geometric_stokes, euler.entries).matched;
  return g;
}

VerificationReport run_verify(const Fan& fan, const PipelineConfig& cfg) {
  VerificationReport r;
  r.surface = fan.name.empty() ? "custom" : fan.name;
  r.fan = fan;
  r.config = cfg;
  const bool is_y = fan.name == "Y-bl6";

  const PicardData pd = stage(r, "toric", [&] {
    auto p = picard_data(fan);
    if (!is_nef_anticanonical(fan))
      throw Error(ErrorCode::NotNef, "-K is not nef on " + r.surface + "; the I-function does not apply");
    return p;
  });

  stage(r, "superpotential", [&] {
    r.w = pipeline_superpotential(fan);
    r.critical_points = critical_points(r.w, cfg.solver);
  });
  std::vector<cplx> values;
  for (const auto& c : r.critical_points) values.push_back(c.value);

  FiberCover cover = stage(r, "ordering", [&] {
    const double phi = cfg.phi ? *cfg.phi : choose_admissible_phi(values, cfg.solver.value_cluster_tol);
    if (!admissible_check(values, phi, cfg.solver.angle_tol, cfg.solver.value_cluster_tol))
      throw Error(ErrorCode::NotAdmissible, "line at angle " + format_double(phi) + " is not admissible");
    r.requested_base = cfg.base_point ? *cfg.base_point
                                      : (is_y ? cplx(0.0) : choose_base_point(values, phi, cfg.solver.value_cluster_tol));
    r.ordered = distinguished_ordering(values, r.requested_base, phi, cfg.solver);
    auto probe = fiber_cover(r.w, r.requested_base + cplx(0.37, 0.21), values, cfg.monodromy);
    const cplx base = regular_base_point(probe, r.ordered);
    if (base != r.requested_base) r.ordered = distinguished_ordering(values, base, phi, cfg.solver);
    return fiber_cover(r.w, base, values, cfg.monodromy);
  });

  auto build_cycles = [&](double eps) {
    auto paths = distinguished_paths(r.ordered, eps);
    std::vector<VanishingCycle> cyc;
    for (int l : r.ordered.ordering) cyc.push_back(vanishing_cycle(cover, r.critical_points[l], paths[l], cfg.monodromy));
    return std::make_pair(paths, cyc);
  };

  stage(r, "monodromy", [&] {
    r.cover_swapped = cover.swapped;
    r.sheet_count = cover.sheet_count;
    r.branch_points = cover.branch_points;
    r.punctures = cover.punctures;
    std::tie(r.paths, r.cycles) = build_cycles(cfg.monodromy.epsilon);
    for (const auto& c : r.cycles) r.cycle_sheets.push_back(c.sheets(cover));
    r.intersections = intersection_matrix(cover, r.cycles, r.ordered.ordering, cfg.monodromy);
  });

  stage(r, "stokes", [&] { r.stokes = stokes_from_intersections(r.intersections); });

  stage(r, "euler", [&] {
    if (is_y) {
      r.euler = euler_matrix_y();
    } else {
      auto coll = default_collection(fan, pd);
      r.euler = euler_matrix_line_bundles(pd, coll.classes, coll.labels);
    }
  });

  stage(r, "compare", [&] {
    std::vector<std::vector<int>> clusters;
    for (const auto& c : r.ordered.clusters) clusters.push_back(positions_of(c, r.ordered.ordering));
    r.certificate = compare_up_to_signs(r.stokes.entries, r.euler.entries, clusters, cfg.max_braid_length);
    r.certificate_reproduces = r.certificate.matched && apply_certificate(r.stokes.entries, r.certificate) == r.euler.entries;
  });

  if (cfg.ifunction) {
    stage(r, "ifunction", [&] {
      IFunctionSummary s;
      s.max_degree = cfg.max_degree;
      s.max_norm = cfg.max_norm;
      auto trunc = i_series(pd, cfg.max_degree, cfg.max_norm);
      s.terms = trunc.coefficients.size();
      s.homogeneous = homogeneity_check(trunc);
      s.gkz_zero = true;
      for (const auto& d : lattice_ball(pd.picard_rank, 2)) {
        if (std::all_of(d.begin(), d.end(), [](auto v) { return v == 0; })) continue;
        ++s.gkz_classes;
        s.gkz_zero = s.gkz_zero && gkz_residual(pd, d, trunc).zero();
      }
      s.mirror_identity = mirror_map(trunc).identity();
      s.convergence = convergence_domain(pd);
      r.ifunction = s;
    });
  }

  stage(r, "checks", [&] {
    if (cfg.epsilon_check) {
      auto [p2, c2] = build_cycles(2 * cfg.monodromy.epsilon);
      r.epsilon_independent = intersection_matrix(cover, c2, r.ordered.ordering, cfg.monodromy).entries ==
                              r.intersections.entries;
    }
    if (cfg.geometric_mutation && r.certificate.matched && !r.certificate.braid_word.empty())
      r.mutation = realise_braid_word(cover, r.cycles, r.ordered, r.paths, r.stokes, r.euler,
                                      r.certificate.braid_word, cfg.monodromy);
    if (cfg.picard_lefschetz)
      r.picard_lefschetz = picard_lefschetz_check(cover, r.cycles, r.ordered, r.paths, r.intersections, cfg.monodromy);
  });
  return r;
}

}  // namespace toricstokes
