#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "satconc/cli.hpp"
#include "satconc/errors.hpp"

namespace satconc::cli {

using nlohmann::json;

namespace {

struct Point {
  double x, y, lo, hi;
};

struct Figure {
  std::string title, xlabel, ylabel;
  std::map<std::string, std::vector<Point>> series;
};

bool number(const json& j, const char* key) { return j.contains(key) && j[key].is_number(); }

void add_estimate(Figure& fig, const std::string& label, double x, const json& rec) {
  if (!number(rec, "value")) return;
  const double y = rec["value"].get<double>();
  const double lo = number(rec, "ci_low") ? rec["ci_low"].get<double>() : y;
  const double hi = number(rec, "ci_high") ? rec["ci_high"].get<double>() : y;
  fig.series[label].push_back({x, y, lo, hi});
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

Figure collect(const std::vector<json>& lines, const std::string& kind) {
  Figure fig;
  for (const auto& line : lines) {
    const json& rec = line.contains("record") ? line["record"] : line;
    const std::string q = rec.value("quantity", std::string());
    if (kind == "p-vs-alpha" && q == "P_n" && number(rec, "alpha")) {
      add_estimate(fig, "n=" + fmt(rec.value("n", 0)) + " phi=" + fmt(rec.value("phi", 0.0)), rec["alpha"].get<double>(), rec);
    } else if (kind == "psi-vs-alpha" && q == "psi_n" && number(rec, "alpha")) {
      add_estimate(fig, "n=" + fmt(rec.value("n", 0)), rec["alpha"].get<double>(), rec);
    } else if (kind == "interp" && q == "interpolation_curve") {
      const std::string label = "curve " + std::to_string(fig.series.size() + 1);
      for (const auto& pt : rec.at("points"))
        if (number(pt, "t")) add_estimate(fig, label, pt["t"].get<double>(), pt);
    } else if (kind == "std-vs-n" && q == "std_log2_Z_over_n" && number(rec, "n")) {
      add_estimate(fig, "alpha=" + fmt(rec.value("alpha", 0.0)), rec["n"].get<double>(), rec);
    }
  }
  if (kind == "p-vs-alpha") {
    fig.title = "P̂ vs α";
    fig.xlabel = "α";
    fig.ylabel = "P̂";
  } else if (kind == "psi-vs-alpha") {
    fig.title = "ψ̂ vs α";
    fig.xlabel = "α";
    fig.ylabel = "ψ̂";
  } else if (kind == "interp") {
    fig.title = "interpolation curve";
    fig.xlabel = "t";
    fig.ylabel = "E log₂(1+Z(F(t)))";
  } else if (kind == "std-vs-n") {
    fig.title = "std of (1/n) log₂ Z given SAT";
    fig.xlabel = "n";
    fig.ylabel = "std";
  } else {
    std::string valid;
    for (const auto& k : plot_kinds()) valid += (valid.empty() ? "" : ", ") + k;
    throw InvalidInput("unknown plot kind '" + kind + "'; valid kinds: " + valid);
  }
  if (fig.series.empty()) throw InvalidInput("no records usable for plot kind '" + kind + "'");
  for (auto& [label, pts] : fig.series)
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  return fig;
}

std::pair<double, double> padded(double lo, double hi) {
  if (hi - lo < 1e-12) {
    const double d = std::max(std::abs(lo) * 0.1, 0.5);
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

const std::vector<std::string>& plot_kinds() {
  static const std::vector<std::string> kinds = {"p-vs-alpha", "psi-vs-alpha", "interp", "std-vs-n"};
  return kinds;
}

std::string render_plot(const std::vector<json>& lines, const std::string& kind) {
  const Figure fig = collect(lines, kind);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& [label, pts] : fig.series)
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min({ymin, p.lo, p.y});
      ymax = std::max({ymax, p.hi, p.y});
    }
  std::tie(xmin, xmax) = padded(xmin, xmax);
  std::tie(ymin, ymax) = padded(ymin, ymax);

  constexpr double W = 640, H = 420, L = 80, R = 20, T = 40, B = 60;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(fig.title) << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0, yv = ymin + (ymax - ymin) * i / 5.0;
    s << "<line x1=\"" << sx(xv) << "\" y1=\"" << H - B << "\" x2=\"" << sx(xv) << "\" y2=\"" << H - B + 5
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    s << "<line x1=\"" << L - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << L << "\" y2=\"" << sy(yv)
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << L - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << escape(fig.xlabel)
    << "</text>\n";
  s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (T + H - B) / 2 << ")\">" << escape(fig.ylabel) << "</text>\n";

  std::size_t idx = 0;
  for (const auto& [label, pts] : fig.series) {
    const char* color = colors[idx % std::size(colors)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) s << sx(p.x) << ',' << sy(p.y) << ' ';
    s << "\"/>\n";
    for (const auto& p : pts) {
      s << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.lo) << "\" x2=\"" << sx(p.x) << "\" y2=\"" << sy(p.hi)
        << "\" stroke=\"" << color << "\"/>\n";
      s << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = T + 10 + 16.0 * static_cast<double>(idx);
    s << "<rect x=\"" << W - R - 150 << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\"" << color
      << "\"/>\n";
    s << "<text x=\"" << W - R - 135 << "\" y=\"" << ly + 1 << "\">" << escape(label) << "</text>\n";
    ++idx;
  }
  s << "</svg>\n";
  return s.str();
}

int plot(const std::string& results_path, const std::string& kind, const std::string& out_path, std::ostream& err) {
  try {
    const auto lines = read_jsonl(results_path);
    if (lines.empty()) throw InvalidInput("results file " + results_path + " is empty");
    const std::string svg = render_plot(lines, kind);
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot write " + out_path);
    out << svg;
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace satconc::cli
