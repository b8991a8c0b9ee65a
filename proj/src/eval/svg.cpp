#include "greenlaunch/eval/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::eval {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Scale {
  double lo = 0.0;
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;

  double operator()(double v) const {
    if (hi == lo) return (px_lo + px_hi) / 2.0;
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

void expand(double& lo, double& hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.06 * (hi - lo);
  lo -= pad;
  hi += pad;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::ofstream open_chart(const std::string& path, const std::string& title) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open chart file for writing: " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"17\" font-weight=\"bold\">" << escape(title) << "</text>\n";
  return os;
}

void draw_y_axis(std::ofstream& os, const Scale& ys, const std::string& y_label) {
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
     << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = ys.lo + (ys.hi - ys.lo) * i / 5.0;
    const double y = ys(v);
    os << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt(y) << "\" x2=\""
       << kWidth - kMarginRight << "\" y2=\"" << fmt(y)
       << "\" stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n"
       << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
       << "</text>\n";
  }
  os << "<text x=\"18\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"13\" transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << escape(y_label)
     << "</text>\n";
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  for (const Series& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double e = i < s.err.size() ? s.err[i] : 0.0;
      if (first) {
        x_lo = x_hi = s.x[i];
        y_lo = s.y[i] - e;
        y_hi = s.y[i] + e;
        first = false;
      } else {
        x_lo = std::min(x_lo, s.x[i]);
        x_hi = std::max(x_hi, s.x[i]);
        y_lo = std::min(y_lo, s.y[i] - e);
        y_hi = std::max(y_hi, s.y[i] + e);
      }
    }
  }
  expand(x_lo, x_hi);
  expand(y_lo, y_hi);
  const Scale xs{x_lo, x_hi, kMarginLeft, static_cast<double>(kWidth - kMarginRight)};
  const Scale ys{y_lo, y_hi, static_cast<double>(kHeight - kMarginBottom), static_cast<double>(kMarginTop)};

  std::ofstream os = open_chart(path, title);
  draw_y_axis(os, ys, y_label);
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
     << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = x_lo + (x_hi - x_lo) * i / 5.0;
    os << "<text x=\"" << fmt(xs(v)) << "\" y=\"" << kHeight - kMarginBottom + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
       << "</text>\n";
  }
  os << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\"" << kHeight - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label)
     << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    std::string points;
    for (size_t i = 0; i < s.x.size(); ++i) {
      points += fmt(xs(s.x[i])) + "," + fmt(ys(s.y[i])) + " ";
      if (i < s.err.size() && s.err[i] > 0.0) {
        os << "<line x1=\"" << fmt(xs(s.x[i])) << "\" y1=\"" << fmt(ys(s.y[i] - s.err[i]))
           << "\" x2=\"" << fmt(xs(s.x[i])) << "\" y2=\"" << fmt(ys(s.y[i] + s.err[i]))
           << "\" stroke=\"" << color << "\" stroke-width=\"1.2\"/>\n";
      }
      os << "<circle cx=\"" << fmt(xs(s.x[i])) << "\" cy=\"" << fmt(ys(s.y[i])) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
    }
    if (s.x.size() > 1) {
      os << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.8\"/>\n";
    }
    const int ly = kMarginTop + 18 * static_cast<int>(si);
    os << "<rect x=\"" << kWidth - kMarginRight + 12 << "\" y=\"" << ly - 9
       << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
       << "<text x=\"" << kWidth - kMarginRight + 30 << "\" y=\"" << ly + 2
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  if (!os) throw IoError("failed writing chart file: " + path);
}

void write_bar_chart(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<Bar>& bars) {
  double y_lo = 0.0, y_hi = 0.0;
  for (const Bar& b : bars) {
    y_lo = std::min(y_lo, b.value);
    y_hi = std::max(y_hi, b.value);
  }
  expand(y_lo, y_hi);
  const Scale ys{y_lo, y_hi, static_cast<double>(kHeight - kMarginBottom), static_cast<double>(kMarginTop)};

  std::ofstream os = open_chart(path, title);
  draw_y_axis(os, ys, y_label);
  const double span = static_cast<double>(kWidth - kMarginRight - kMarginLeft);
  const double slot = bars.empty() ? span : span / static_cast<double>(bars.size());
  const double bar_w = slot * 0.68;
  const double base = ys(std::max(0.0, y_lo));
  for (size_t i = 0; i < bars.size(); ++i) {
    const Bar& b = bars[i];
    const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
    const double top = ys(b.value);
    const char* color = kPalette[b.group % kPaletteSize];
    os << "<rect x=\"" << fmt(cx - bar_w / 2) << "\" y=\"" << fmt(std::min(top, base)) << "\" width=\""
       << fmt(bar_w) << "\" height=\"" << fmt(std::fabs(base - top)) << "\" fill=\"" << color
       << "\"/>\n"
       << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(std::min(top, base) - 5)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(b.value)
       << "</text>\n"
       << "<text x=\"" << fmt(cx) << "\" y=\"" << kHeight - kMarginBottom + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\" transform=\"rotate(-18 "
       << fmt(cx) << " " << kHeight - kMarginBottom + 16 << ")\">" << escape(b.label) << "</text>\n";
  }
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
     << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n"
     << "</svg>\n";
  if (!os) throw IoError("failed writing chart file: " + path);
}

}  // namespace greenlaunch::eval
