#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "toricstokes/config.hpp"
#include "toricstokes/errors.hpp"
#include "toricstokes/figures.hpp"
#include "toricstokes/matrix_io.hpp"
#include "toricstokes/pipeline.hpp"
#include "toricstokes/report.hpp"

using namespace toricstokes;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

PipelineConfig quick() {
  PipelineConfig c;
  c.ifunction = false;
  c.epsilon_check = false;
  c.geometric_mutation = false;
  return c;
}

const VerificationReport& p2_report() {
  static const VerificationReport r = [] {
    PipelineConfig c;
    c.max_degree = 4;
    return run_verify(*registered_fan("P2"), c);
  }();
  return r;
}

}  // namespace

TEST_CASE("config round trip") {
  PipelineConfig c;
  c.phi = 1.2345678901234567;
  c.base_point = cplx(0.1, -2.5);
  c.max_degree = 3;
  c.picard_lefschetz = true;
  c.solver.tol = 1e-11;
  auto text = format_config(c);
  auto d = parse_config(text);
  CHECK(format_config(d) == text);
  CHECK(*d.phi == c.phi);
  CHECK(*d.base_point == *c.base_point);
  CHECK(d.picard_lefschetz);

  auto e = parse_config("[stokes]\nmax_braid_length = 1\n");
  CHECK(e.max_braid_length == 1);
  CHECK_FALSE(e.phi.has_value());
  CHECK_THROWS_AS(parse_config("[solver]\ntolerance = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[nonsense]\nx = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[ifunction]\nmax_degree = six\n"), Error);
}

TEST_CASE("matrix text round trip") {
  LabelledMatrix m{{{1, -3, 3}, {0, 1, -3}, {0, 0, 1}}, {"O", "O(1)", "O(2)"}};
  CHECK(parse_matrix(format_matrix(m)) == m);
  CHECK_THROWS_AS(parse_matrix("labels: a b\n1 2\n0\n"), Error);
  CHECK_THROWS_AS(parse_matrix("labels: a b\n1 x\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_matrix("labels: a\n1 2\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_matrix("labels: a b\n1 2 3\n0 1 3\n"), Error);
}

TEST_CASE("P2 end to end") {
  const auto& r = p2_report();
  CHECK(r.matched());
  CHECK(r.has_stage("checks"));
  CHECK(r.stokes.entries.size() == 3);
  REQUIRE(r.ifunction.has_value());
  CHECK(r.ifunction->homogeneous);
  CHECK(r.ifunction->gkz_zero);
  REQUIRE(r.epsilon_independent.has_value());
  CHECK(*r.epsilon_independent);

  auto back = report_from_json(report_json(r));
  CHECK(back.stokes.entries == r.stokes.entries);
  CHECK(back.euler.entries == r.euler.entries);
  CHECK(report_text(back, false) == report_text(r, false));
  CHECK(reverify(back).ok());

  auto tampered = back;
  tampered.stokes.entries[0][1] += 1;
  CHECK_FALSE(reverify(tampered).ok());
}

TEST_CASE("report files and figures") {
  const auto& r = p2_report();
  auto dir = std::filesystem::temp_directory_path() / "toricstokes_test_verifier";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_report(r, dir / "p2.json");
  CHECK(reverify(load_report(dir / "p2.json")).ok());

  auto cyc = render_figure(r, FigureKind::Cycles);
  CHECK(count(cyc.svg, "<polygon") == 3);
  CHECK(count(cyc.csv, "\n") > 4);
  auto path = export_figure(r, FigureKind::CriticalValues, dir);
  CHECK(std::filesystem::exists(path));
  CHECK(std::filesystem::exists(std::filesystem::path(path).replace_extension(".csv")));
  CHECK(render_figure(r, FigureKind::Cycles).svg == cyc.svg);

  CHECK(parse_figure_kind(to_string(FigureKind::Cycles)) == FigureKind::Cycles);
  CHECK_THROWS_AS(parse_figure_kind("histogram"), Error);
  try {
    render_figure(VerificationReport{}, FigureKind::Cycles);
    FAIL("expected MissingStage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingStage);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("Y critical value figure has three clusters") {
  auto r = run_verify(*registered_fan("Y-bl6"), quick());
  CHECK(r.matched());
  auto fig = render_figure(r, FigureKind::CriticalValues);
  CHECK(count(fig.svg, "r=\"7\"") == 3);
  CHECK(count(fig.svg, " x3</text>") == 3);
}

TEST_CASE("errors carry their stage") {
  auto f3 = parse_fan(std::vector<LatticeVector>{{1, 0}, {0, 1}, {-1, -3}, {0, -1}});
  try {
    run_verify(f3, quick());
    FAIL("expected NotNef");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNef);
    CHECK(e.stage() == "toric");
  }
  try {
    resolve_surface("dP5");
    FAIL("expected UnknownSurface");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSurface);
  }
}
