#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "toricstokes/config.hpp"
#include "toricstokes/errors.hpp"
#include "toricstokes/figures.hpp"
#include "toricstokes/ifunction.hpp"
#include "toricstokes/matrix_io.hpp"
#include "toricstokes/pipeline.hpp"
#include "toricstokes/report.hpp"

namespace fs = std::filesystem;
using namespace toricstokes;

namespace {

struct Common {
  std::string surface = "Y-bl6";
  std::string fan_file;
  std::string config;
  std::string out_dir;
  std::optional<int> max_degree;
  std::optional<double> tol;
  std::optional<double> phi;
  std::string base_point;

  void add_to(CLI::App* app) {
    app->add_option("--surface", surface, "registered surface: P2, P1xP1, F1, Y-bl6");
    app->add_option("--fan-file", fan_file, "fan file, overrides --surface")->check(CLI::ExistingFile);
    app->add_option("--config", config, "INI config file")->check(CLI::ExistingFile);
    app->add_option("--out-dir", out_dir, "directory for report, CSV and SVG output");
    app->add_option("--max-degree", max_degree, "I-function truncation <d,-K> <= N");
    app->add_option("--tol", tol, "critical point residual tolerance");
    app->add_option("--phi", phi, "admissible line angle in radians");
    app->add_option("--base-point", base_point, "base point as 're,im'");
  }

  Fan fan() const {
    return resolve_surface(surface, fan_file.empty() ? std::nullopt : std::optional<fs::path>(fan_file));
  }

  PipelineConfig pipeline_config() const {
    PipelineConfig c = config.empty() ? PipelineConfig{} : load_config(config);
    if (max_degree) c.max_degree = *max_degree;
    if (tol) c.solver.tol = *tol;
    if (phi) c.phi = *phi;
    if (!base_point.empty()) {
      std::string s = base_point;
      for (char& ch : s)
        if (ch == ',') ch = ' ';
      std::istringstream in(s);
      double re = 0, im = 0;
      if (!(in >> re)) throw Error(ErrorCode::ParseError, "bad --base-point '" + base_point + "'");
      in >> im;
      c.base_point = cplx(re, im);
    }
    return c;
  }
};

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + p.string());
  out << text;
}

void print_matrix(const std::string& title, const IntMatrix& m) {
  std::cout << title << "\n";
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << row[j];
    std::cout << "\n";
  }
}

int cmd_verify(const Common& o, bool pl) {
  auto cfg = o.pipeline_config();
  cfg.picard_lefschetz = cfg.picard_lefschetz || pl;
  auto r = run_verify(o.fan(), cfg);
  std::cout << "surface " << r.surface << ": " << r.critical_points.size() << " critical points, base point "
            << r.ordered.base_point << ", phi " << r.ordered.phi << "\n";
  print_matrix("Stokes matrix (distinguished order)", r.stokes.entries);
  print_matrix("Euler matrix", r.euler.entries);
  std::cout << "certificate: " << (r.matched() ? "matched" : "not matched");
  if (r.certificate.matched) std::cout << ", braid word " << braid_word_string(r.certificate.braid_word);
  std::cout << "\n";
  if (r.mutation) {
    std::cout << "geometric braid move: ";
    if (r.mutation->realised)
      std::cout << (r.mutation->agrees ? "agrees" : "disagrees") << " with the formula\n";
    else
      std::cout << "not realised (" << r.mutation->note << ")\n";
  }
  if (r.epsilon_independent) std::cout << "epsilon independence: " << (*r.epsilon_independent ? "yes" : "no") << "\n";
  if (r.picard_lefschetz)
    std::cout << "Picard-Lefschetz: sigma " << r.picard_lefschetz->sigma << ", large loop "
              << (r.picard_lefschetz->large_ok ? "consistent" : "inconsistent") << "\n";
  if (!o.out_dir.empty()) {
    const fs::path dir = o.out_dir;
    write_file(dir / (r.surface + "-report.json"), report_text(r));
    write_file(dir / (r.surface + "-stokes.txt"), format_matrix({r.stokes.entries, [&] {
                                                                   std::vector<std::string> l;
                                                                   for (int x : r.stokes.labels) l.push_back("C" + std::to_string(x));
                                                                   return l;
                                                                 }()}));
    write_file(dir / (r.surface + "-euler.txt"), format_matrix({r.euler.entries, r.euler.labels}));
    export_figure(r, FigureKind::CriticalValues, dir);
    export_figure(r, FigureKind::Cycles, dir);
    std::cout << "wrote report and figures to " << dir.string() << "\n";
  }
  return r.matched() ? 0 : 1;
}

int cmd_critical_points(const Common& o) {
  auto cfg = o.pipeline_config();
  const auto w = pipeline_superpotential(o.fan());
  const auto csv = critical_points_csv(critical_points(w, cfg.solver));
  if (o.out_dir.empty())
    std::cout << csv;
  else
    write_file(fs::path(o.out_dir) / "critical_points.csv", csv);
  return 0;
}

int cmd_ifunction(const Common& o) {
  auto cfg = o.pipeline_config();
  const auto fan = o.fan();
  const auto pd = picard_data(fan);
  auto trunc = i_series(pd, cfg.max_degree, cfg.max_norm);
  const auto text = series_text(trunc);
  const auto mm = mirror_map(trunc);
  const auto conv = convergence_domain(pd);
  std::ostringstream summary;
  summary << "terms " << trunc.coefficients.size() << "\nhomogeneous " << (homogeneity_check(trunc) ? "yes" : "no")
          << "\nmirror map " << (mm.identity() ? "identity" : "nontrivial") << "\nconvergence " << conv.description
          << "\n";
  if (o.out_dir.empty()) {
    std::cout << text << summary.str();
  } else {
    write_file(fs::path(o.out_dir) / (fan.name + "-ifunction.txt"), text);
    std::cout << summary.str();
  }
  return 0;
}

int cmd_euler(const Common& o) {
  const auto fan = o.fan();
  EulerMatrix e;
  if (fan.name == "Y-bl6") {
    e = euler_matrix_y();
  } else {
    const auto pd = picard_data(fan);
    const auto coll = default_collection(fan, pd);
    e = euler_matrix_line_bundles(pd, coll.classes, coll.labels);
  }
  const auto text = format_matrix({e.entries, e.labels});
  if (o.out_dir.empty())
    std::cout << text;
  else
    write_file(fs::path(o.out_dir) / (fan.name + "-euler.txt"), text);
  return 0;
}

int cmd_export_figure(const Common& o, const std::string& report, const std::string& kind) {
  const auto k = parse_figure_kind(kind);
  VerificationReport r = report.empty() ? run_verify(o.fan(), o.pipeline_config()) : load_report(report);
  const auto out = export_figure(r, k, o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir));
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_reverify(const std::string& report) {
  const auto r = load_report(report);
  const auto res = reverify(r);
  std::cout << "stokes from intersections " << (res.stokes_from_intersections ? "ok" : "FAILED") << "\n"
            << "skew-symmetric intersections " << (res.skew ? "ok" : "FAILED") << "\n"
            << "euler matrix recomputed " << (res.euler_recomputed ? "ok" : "FAILED") << "\n"
            << "certificate " << (res.certificate ? "ok" : "FAILED") << "\n";
  return res.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes matrices of toric surface mirrors against Euler matrices of exceptional collections"};
  app.require_subcommand(1);

  Common verify_o, cp_o, if_o, eu_o, fig_o;
  bool pl = false;
  std::string report, kind = "critical-values", reverify_report;

  auto* verify = app.add_subcommand("verify", "run the full pipeline and compare");
  verify_o.add_to(verify);
  verify->add_flag("--picard-lefschetz", pl, "also check local and global monodromy");
  auto* cp = app.add_subcommand("critical-points", "critical points of the mirror as CSV");
  cp_o.add_to(cp);
  auto* ifn = app.add_subcommand("ifunction", "truncated I-function with exact coefficients");
  if_o.add_to(ifn);
  auto* eu = app.add_subcommand("euler", "Euler matrix of the default exceptional collection");
  eu_o.add_to(eu);
  auto* fig = app.add_subcommand("export-figure", "SVG and CSV for critical values or cycles");
  fig_o.add_to(fig);
  fig->add_option("--report", report, "report JSON; the pipeline is rerun when absent")->check(CLI::ExistingFile);
  fig->add_option("--kind", kind, "critical-values or cycles");
  auto* rv = app.add_subcommand("reverify", "re-check a stored report without numerics");
  rv->add_option("--report", reverify_report)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*verify) return cmd_verify(verify_o, pl);
    if (*cp) return cmd_critical_points(cp_o);
    if (*ifn) return cmd_ifunction(if_o);
    if (*eu) return cmd_euler(eu_o);
    if (*fig) return cmd_export_figure(fig_o, report, kind);
    if (*rv) return cmd_reverify(reverify_report);
  } catch (const Error& e) {
    std::cerr << "error";
    if (!e.stage().empty()) std::cerr << " [" << e.stage() << "]";
    std::cerr << " " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
