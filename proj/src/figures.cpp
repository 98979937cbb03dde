#include "toricstokes/figures.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 40.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csvnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Maps the bounding box of the data onto the canvas with equal scales.
struct Frame {
  double x0 = 0, y0 = 0, scale = 1;

  explicit Frame(const std::vector<cplx>& pts) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (auto p : pts) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    if (pts.empty()) xmin = ymin = -1, xmax = ymax = 1;
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    scale = (kCanvas - 2 * kMargin) / span;
    x0 = 0.5 * (xmin + xmax);
    y0 = 0.5 * (ymin + ymax);
  }
  double sx(cplx p) const { return kCanvas / 2 + (p.real() - x0) * scale; }
  double sy(cplx p) const { return kCanvas / 2 - (p.imag() - y0) * scale; }
};

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
         "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n"
         "<text x=\"20\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";
}

std::string polyline(const Frame& f, const std::vector<cplx>& pts, const std::string& colour, bool closed,
                     double width) {
  std::ostringstream os;
  os << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << colour << "\" stroke-width=\""
     << num(width) << "\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? " " : "") << num(f.sx(pts[k])) << "," << num(f.sy(pts[k]));
  os << "\"/>\n";
  return os.str();
}

Figure critical_values_figure(const VerificationReport& r) {
  if (!r.has_stage("ordering") || r.ordered.values.empty())
    throw Error(ErrorCode::MissingStage, "report has no ordered critical values");
  const auto& o = r.ordered;
  std::vector<std::vector<cplx>> paths = r.paths;
  if (paths.size() != o.values.size()) {
    paths.clear();
    for (auto v : o.values) paths.push_back({o.base_point, v});
  }
  std::vector<cplx> pts{o.base_point};
  for (const auto& p : paths) pts.insert(pts.end(), p.begin(), p.end());
  Frame f(pts);

  std::ostringstream svg, csv;
  svg << header(r.surface + ": critical values and distinguished paths");
  csv << "position,label,cluster,value_re,value_im\n";
  for (std::size_t pos = 0; pos < o.ordering.size(); ++pos) {
    const int l = o.ordering[pos];
    svg << polyline(f, paths[l], "#888888", false, 1.0);
  }
  for (std::size_t c = 0; c < o.clusters.size(); ++c) {
    const cplx u = o.values[o.clusters[c].front()];
    const std::string colour = kPalette[c % 10];
    svg << "<circle cx=\"" << num(f.sx(u)) << "\" cy=\"" << num(f.sy(u)) << "\" r=\"7\" fill=\"" << colour
        << "\"/>\n";
    svg << "<text x=\"" << num(f.sx(u) + 10) << "\" y=\"" << num(f.sy(u) - 10)
        << "\" font-family=\"sans-serif\" font-size=\"13\">u" << c << " x" << o.clusters[c].size() << "</text>\n";
  }
  svg << "<rect x=\"" << num(f.sx(o.base_point) - 5) << "\" y=\"" << num(f.sy(o.base_point) - 5)
      << "\" width=\"10\" height=\"10\" fill=\"black\"/>\n</svg>\n";
  for (std::size_t pos = 0; pos < o.ordering.size(); ++pos) {
    const int l = o.ordering[pos];
    std::size_t cl = 0;
    for (std::size_t c = 0; c < o.clusters.size(); ++c)
      if (std::find(o.clusters[c].begin(), o.clusters[c].end(), l) != o.clusters[c].end()) cl = c;
    csv << pos << "," << l << "," << cl << "," << csvnum(o.values[l].real()) << "," << csvnum(o.values[l].imag())
        << "\n";
  }
  return {svg.str(), csv.str()};
}

Figure cycles_figure(const VerificationReport& r) {
  if (!r.has_stage("monodromy") || r.cycles.empty()) throw Error(ErrorCode::MissingStage, "report has no cycles");
  std::vector<cplx> pts = r.branch_points;
  for (const auto& c : r.cycles) pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
  Frame f(pts);

  std::ostringstream svg, csv;
  const std::string axis = r.cover_swapped ? "y" : "x";
  svg << header(r.surface + ": vanishing cycles over the " + axis + "-plane");
  csv << "position,label,vertex,re,im,sheet\n";
  for (std::size_t k = 0; k < r.cycles.size(); ++k) {
    const auto& c = r.cycles[k];
    svg << polyline(f, c.vertices, kPalette[k % 10], true, 1.5);
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      const int sheet = k < r.cycle_sheets.size() && v < r.cycle_sheets[k].size() ? r.cycle_sheets[k][v] : -1;
      csv << k << "," << c.label << "," << v << "," << csvnum(c.vertices[v].real()) << ","
          << csvnum(c.vertices[v].imag()) << "," << sheet << "\n";
    }
  }
  for (auto b : r.branch_points) {
    const double x = f.sx(b), y = f.sy(b);
    svg << "<path d=\"M" << num(x - 4) << " " << num(y - 4) << " L" << num(x + 4) << " " << num(y + 4) << " M"
        << num(x - 4) << " " << num(y + 4) << " L" << num(x + 4) << " " << num(y - 4)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  for (auto p : r.punctures)
    svg << "<circle cx=\"" << num(f.sx(p)) << "\" cy=\"" << num(f.sy(p))
        << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "</svg>\n";
  return {svg.str(), csv.str()};
}

}  // namespace

FigureKind parse_figure_kind(const std::string& s) {
  if (s == "critical-values") return FigureKind::CriticalValues;
  if (s == "cycles") return FigureKind::Cycles;
  throw Error(ErrorCode::ParseError, "unknown figure kind '" + s + "'");
}

std::string to_string(FigureKind k) { return k == FigureKind::CriticalValues ? "critical-values" : "cycles"; }

Figure render_figure(const VerificationReport& r, FigureKind kind) {
  return kind == FigureKind::CriticalValues ? critical_values_figure(r) : cycles_figure(r);
}

std::filesystem::path export_figure(const VerificationReport& r, FigureKind kind, const std::filesystem::path& out_dir) {
  const auto fig = render_figure(r, kind);
  std::filesystem::create_directories(out_dir);
  const auto stem = out_dir / (r.surface + "-" + to_string(kind));
  std::ofstream(stem.string() + ".svg") << fig.svg;
  std::ofstream(stem.string() + ".csv") << fig.csv;
  return stem.string() + ".svg";
}

}  // namespace toricstokes
