#include "toricstokes/report.hpp"

#include <fstream>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

using nlohmann::ordered_json;

namespace {

ordered_json cj(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json cvec(const std::vector<cplx>& v) {
  ordered_json a = ordered_json::array();
  for (auto z : v) a.push_back(cj(z));
  return a;
}

cplx to_c(const ordered_json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::vector<cplx> to_cvec(const ordered_json& j) {
  std::vector<cplx> v;
  for (const auto& z : j) v.push_back(to_c(z));
  return v;
}

template <class Labels>
ordered_json matrix_json(const IntMatrix& m, const Labels& labels) {
  return ordered_json{{"labels", labels}, {"entries", m}};
}

IntMatrix as_int(const std::vector<std::vector<int>>& m) {
  IntMatrix out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace

ordered_json report_json(const VerificationReport& r, bool with_timings) {
  ordered_json j;
  j["surface"] = r.surface;
  ordered_json rays = ordered_json::array();
  for (const auto& v : r.fan.rays) rays.push_back({v.x, v.y});
  j["fan"] = {{"name", r.fan.name}, {"rays", rays}, {"labels", r.fan.labels}};
  j["config"] = format_config(r.config);
  j["stages"] = r.stages;
  j["matched"] = r.matched();

  if (r.has_stage("superpotential")) {
    ordered_json w = ordered_json::array();
    for (const auto& [e, c] : r.w.terms) w.push_back({{"exponent", {e.first, e.second}}, {"coefficient", cj(c)}});
    j["superpotential"] = w;
    ordered_json cps = ordered_json::array();
    for (const auto& c : r.critical_points)
      cps.push_back({{"label", c.label},
                     {"x", cj(c.x)},
                     {"y", cj(c.y)},
                     {"value", cj(c.value)},
                     {"hessian_det", cj(c.hessian_det)},
                     {"residual", c.residual}});
    j["critical_points"] = cps;
  }
  if (r.has_stage("ordering")) {
    j["ordering"] = {{"phi", r.ordered.phi},
                     {"requested_base_point", cj(r.requested_base)},
                     {"base_point", cj(r.ordered.base_point)},
                     {"values", cvec(r.ordered.values)},
                     {"ordering", r.ordered.ordering},
                     {"clusters", r.ordered.clusters}};
  }
  if (r.has_stage("monodromy")) {
    j["cover"] = {{"projection", r.cover_swapped ? "y" : "x"},
                  {"sheets", r.sheet_count},
                  {"branch_points", cvec(r.branch_points)},
                  {"punctures", cvec(r.punctures)}};
    ordered_json paths = ordered_json::array();
    for (const auto& p : r.paths) paths.push_back(cvec(p));
    j["paths"] = paths;
    ordered_json cycles = ordered_json::array();
    for (std::size_t k = 0; k < r.cycles.size(); ++k)
      cycles.push_back({{"label", r.cycles[k].label},
                        {"vertices", cvec(r.cycles[k].vertices)},
                        {"sheets", k < r.cycle_sheets.size() ? r.cycle_sheets[k] : std::vector<int>{}}});
    j["cycles"] = cycles;
    j["intersection_matrix"] = matrix_json(as_int(r.intersections.entries), r.intersections.ordering);
  }
  if (r.has_stage("stokes")) j["stokes_matrix"] = matrix_json(r.stokes.entries, r.stokes.labels);
  if (r.has_stage("euler")) j["euler_matrix"] = matrix_json(r.euler.entries, r.euler.labels);
  if (r.has_stage("compare")) {
    ordered_json moves = ordered_json::array();
    for (const auto& m : r.certificate.braid_word) moves.push_back({{"position", m.position}, {"inverse", m.inverse}});
    j["certificate"] = {{"matched", r.certificate.matched},
                        {"reproduces_euler", r.certificate_reproduces},
                        {"signs", r.certificate.sign_vector},
                        {"permutation", r.certificate.cluster_permutation},
                        {"braid_word", braid_word_string(r.certificate.braid_word)},
                        {"braid_moves", moves}};
  }
  if (r.ifunction) {
    const auto& s = *r.ifunction;
    j["ifunction"] = {{"max_degree", s.max_degree},
                      {"max_norm", s.max_norm},
                      {"terms", s.terms},
                      {"homogeneous", s.homogeneous},
                      {"gkz_operators", s.gkz_classes},
                      {"gkz_zero", s.gkz_zero},
                      {"mirror_map_identity", s.mirror_identity},
                      {"convergence", {{"c1", s.convergence.c1},
                                       {"c2", s.convergence.c2},
                                       {"radius", s.convergence.radius},
                                       {"description", s.convergence.description}}}};
  }
  if (r.has_stage("checks")) {
    ordered_json c = ordered_json::object();
    if (r.epsilon_independent) c["epsilon_independent"] = *r.epsilon_independent;
    if (r.mutation) {
      const auto& g = *r.mutation;
      c["geometric_mutation"] = {{"braid_word", braid_word_string(g.word)},
                                 {"realised", g.realised},
                                 {"loop", g.counterclockwise ? "counterclockwise" : "clockwise"},
                                 {"geometric_stokes", g.geometric_stokes},
                                 {"formula_stokes", g.formula_stokes},
                                 {"agrees", g.agrees},
                                 {"matches_euler", g.matches_euler},
                                 {"note", g.note}};
    }
    if (r.picard_lefschetz) {
      const auto& p = *r.picard_lefschetz;
      ordered_json local = ordered_json::array();
      for (const auto& l : p.local)
        local.push_back({{"cluster", l.cluster}, {"position", l.position}, {"observed", l.observed}});
      c["picard_lefschetz"] = {{"sigma", p.sigma},
                               {"local_ok", p.local_ok},
                               {"large_loop_ok", p.large_ok},
                               {"local", local},
                               {"large_observed", p.large_observed},
                               {"large_predicted", p.large_predicted}};
    }
    j["checks"] = c;
  }
  if (with_timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [name, sec] : r.timings) t[name] = sec;
    j["timings"] = t;
  }
  return j;
}

std::string report_text(const VerificationReport& r, bool with_timings) {
  return report_json(r, with_timings).dump(2) + "\n";
}

void write_report(const VerificationReport& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << report_text(r);
}

VerificationReport report_from_json(const ordered_json& j) {
  VerificationReport r;
  try {
    r.surface = j.at("surface").get<std::string>();
    std::vector<LatticeVector> rays;
    for (const auto& v : j.at("fan").at("rays")) rays.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
    r.fan = parse_fan(rays, j.at("fan").at("name").get<std::string>());
    r.config = parse_config(j.at("config").get<std::string>());
    r.stages = j.at("stages").get<std::vector<std::string>>();
    if (j.contains("superpotential"))
      for (const auto& t : j["superpotential"])
        r.w.terms[{t.at("exponent").at(0).get<int>(), t.at("exponent").at(1).get<int>()}] = to_c(t.at("coefficient"));
    if (j.contains("critical_points"))
      for (const auto& c : j["critical_points"]) {
        CriticalPoint p;
        p.label = c.at("label").get<int>();
        p.x = to_c(c.at("x"));
        p.y = to_c(c.at("y"));
        p.value = to_c(c.at("value"));
        p.hessian_det = to_c(c.at("hessian_det"));
        p.residual = c.at("residual").get<double>();
        r.critical_points.push_back(p);
      }
    if (j.contains("ordering")) {
      const auto& o = j["ordering"];
      r.ordered.phi = o.at("phi").get<double>();
      r.requested_base = to_c(o.at("requested_base_point"));
      r.ordered.base_point = to_c(o.at("base_point"));
      r.ordered.values = to_cvec(o.at("values"));
      r.ordered.ordering = o.at("ordering").get<std::vector<int>>();
      r.ordered.clusters = o.at("clusters").get<std::vector<std::vector<int>>>();
    }
    if (j.contains("cover")) {
      const auto& c = j["cover"];
      r.cover_swapped = c.at("projection").get<std::string>() == "y";
      r.sheet_count = c.at("sheets").get<int>();
      r.branch_points = to_cvec(c.at("branch_points"));
      r.punctures = to_cvec(c.at("punctures"));
    }
    if (j.contains("paths"))
      for (const auto& p : j["paths"]) r.paths.push_back(to_cvec(p));
    if (j.contains("cycles"))
      for (const auto& c : j["cycles"]) {
        VanishingCycle v;
        v.label = c.at("label").get<int>();
        v.vertices = to_cvec(c.at("vertices"));
        r.cycles.push_back(v);
        r.cycle_sheets.push_back(c.at("sheets").get<std::vector<int>>());
      }
    if (j.contains("intersection_matrix")) {
      r.intersections.entries = j["intersection_matrix"].at("entries").get<std::vector<std::vector<int>>>();
      r.intersections.ordering = j["intersection_matrix"].at("labels").get<std::vector<int>>();
    }
    if (j.contains("stokes_matrix")) {
      r.stokes.entries = j["stokes_matrix"].at("entries").get<IntMatrix>();
      r.stokes.labels = j["stokes_matrix"].at("labels").get<std::vector<int>>();
    }
    if (j.contains("euler_matrix")) {
      r.euler.entries = j["euler_matrix"].at("entries").get<IntMatrix>();
      r.euler.labels = j["euler_matrix"].at("labels").get<std::vector<std::string>>();
    }
    if (j.contains("certificate")) {
      const auto& c = j["certificate"];
      r.certificate.matched = c.at("matched").get<bool>();
      r.certificate_reproduces = c.at("reproduces_euler").get<bool>();
      r.certificate.sign_vector = c.at("signs").get<std::vector<int>>();
      r.certificate.cluster_permutation = c.at("permutation").get<std::vector<int>>();
      for (const auto& m : c.at("braid_moves"))
        r.certificate.braid_word.push_back({m.at("position").get<int>(), m.at("inverse").get<bool>()});
    }
    if (j.contains("ifunction")) {
      const auto& f = j["ifunction"];
      IFunctionSummary s;
      s.max_degree = f.at("max_degree").get<int>();
      s.max_norm = f.at("max_norm").get<int>();
      s.terms = f.at("terms").get<std::size_t>();
      s.homogeneous = f.at("homogeneous").get<bool>();
      s.gkz_classes = f.at("gkz_operators").get<int>();
      s.gkz_zero = f.at("gkz_zero").get<bool>();
      s.mirror_identity = f.at("mirror_map_identity").get<bool>();
      const auto& c = f.at("convergence");
      s.convergence.c1 = c.at("c1").get<double>();
      s.convergence.c2 = c.at("c2").get<double>();
      s.convergence.radius = c.at("radius").get<double>();
      s.convergence.description = c.at("description").get<std::string>();
      r.ifunction = s;
    }
    if (j.contains("checks")) {
      const auto& c = j["checks"];
      if (c.contains("epsilon_independent")) r.epsilon_independent = c["epsilon_independent"].get<bool>();
      if (c.contains("geometric_mutation")) {
        const auto& m = c["geometric_mutation"];
        GeometricMutation g;
        g.word = parse_braid_word(m.at("braid_word").get<std::string>());
        g.realised = m.at("realised").get<bool>();
        g.counterclockwise = m.at("loop").get<std::string>() == "counterclockwise";
        g.geometric_stokes = m.at("geometric_stokes").get<IntMatrix>();
        g.formula_stokes = m.at("formula_stokes").get<IntMatrix>();
        g.agrees = m.at("agrees").get<bool>();
        g.matches_euler = m.at("matches_euler").get<bool>();
        g.note = m.at("note").get<std::string>();
        r.mutation = g;
      }
      if (c.contains("picard_lefschetz")) {
        const auto& p = c["picard_lefschetz"];
        PicardLefschetzReport pl;
        pl.sigma = p.at("sigma").get<int>();
        pl.local_ok = p.at("local_ok").get<bool>();
        pl.large_ok = p.at("large_loop_ok").get<bool>();
        for (const auto& l : p.at("local")) {
          LocalMonodromyCheck lc;
          lc.cluster = l.at("cluster").get<int>();
          lc.position = l.at("position").get<int>();
          lc.observed = l.at("observed").get<std::vector<int>>();
          lc.plus_ok = pl.sigma == 1 && pl.local_ok;
          lc.minus_ok = pl.sigma == -1 && pl.local_ok;
          pl.local.push_back(lc);
        }
        pl.large_observed = p.at("large_observed").get<std::vector<std::vector<int>>>();
        pl.large_predicted = p.at("large_predicted").get<std::vector<std::vector<int>>>();
        r.picard_lefschetz = pl;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
  return r;
}

VerificationReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read report " + path.string());
  try {
    return report_from_json(ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("report is not JSON: ") + e.what());
  }
}

ReverifyResult reverify(const VerificationReport& r) {
  ReverifyResult out;
  const auto& c = r.intersections.entries;
  const std::size_t n = c.size();
  out.skew = n > 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.skew = out.skew && c[a][b] == -c[b][a];
  out.stokes_from_intersections = n > 0 && stokes_from_intersections(r.intersections).entries == r.stokes.entries;

  EulerMatrix e;
  if (r.fan.name == "Y-bl6") {
    e = euler_matrix_y();
  } else {
    const auto pd = picard_data(r.fan);
    const auto coll = default_collection(r.fan, pd);
    e = euler_matrix_line_bundles(pd, coll.classes, coll.labels);
  }
  out.euler_recomputed = e.entries == r.euler.entries && e.labels == r.euler.labels;
  bool shaped = r.certificate.matched && r.certificate.sign_vector.size() == n &&
                r.certificate.cluster_permutation.size() == n && r.stokes.entries.size() == n;
  for (int p : r.certificate.cluster_permutation) shaped = shaped && p >= 0 && static_cast<std::size_t>(p) < n;
  try {
    out.certificate = shaped && apply_certificate(r.stokes.entries, r.certificate) == r.euler.entries;
  } catch (const Error&) {
    out.certificate = false;
  }
  return out;
}

}  // namespace toricstokes
