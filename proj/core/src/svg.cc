// Copyright 2026 The padeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "padeval/svg.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include <fmt/format.h>

#include "padeval/error.h"
#include "padeval/format.h"
#include "padeval/probit.h"

namespace padeval {
namespace {

constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                         "#ff7f0e", "#9467bd", "#8c564b",
                                         "#e377c2", "#17becf", "#7f7f7f"};

std::string_view color(std::size_t i) {
  return kPalette[i % std::size(kPalette)];
}

std::string num(double v) {
  if (v == 0.0) return "0";  // no "-0"
  return fmt::format("{:.6g}", v);
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Maps [lo, hi] in data space onto [a, b] in pixels.
struct Axis {
  double lo, hi, a, b;
  double operator()(double v) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

// Polyline points, dropping points that coincide with the previous one at
// print precision and collapsing straight horizontal or vertical runs.
// Vertices are snapped to a 0.1 px lattice so dense step curves collapse to
// what is actually visible.
class PointList {
 public:
  void add(double x, double y) {
    std::string sx = num(std::round(x * 10.0) / 10.0);
    std::string sy = num(std::round(y * 10.0) / 10.0);
    if (!pts_.empty() && pts_.back().first == sx && pts_.back().second == sy) {
      return;
    }
    if (pts_.size() >= 2) {
      const auto& p = pts_[pts_.size() - 2];
      const auto& q = pts_.back();
      if ((p.first == q.first && q.first == sx) ||
          (p.second == q.second && q.second == sy)) {
        pts_.back() = {std::move(sx), std::move(sy)};
        return;
      }
    }
    pts_.emplace_back(std::move(sx), std::move(sy));
  }
  bool empty() const { return pts_.empty(); }
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += pts_[i].first + "," + pts_[i].second;
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> pts_;
};

class Canvas {
 public:
  Canvas(const PlotOptions& o, std::string_view default_title)
      : width_(o.width), height_(o.height) {
    if (o.width < 200 || o.height < 150 || o.width > 20000 || o.height > 20000) {
      throw ArgumentError("plot size must be between 200x150 and 20000x20000");
    }
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        o.width, o.height);
    out_ += fmt::format(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        o.width, o.height);
    const std::string& title = o.title.empty() ? std::string(default_title) : o.title;
    text(o.width / 2.0, 22, title, "middle", "font-size=\"15\"");
  }

  double left() const { return 70; }
  double right() const { return width_ - 20; }
  double top() const { return 40; }
  double bottom() const { return height_ - 55; }

  void raw(std::string_view s) { out_ += s; }

  void text(double x, double y, std::string_view t, std::string_view anchor,
            std::string_view extra = {}) {
    out_ += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"{}\"{}{}>{}</text>\n",
                        num(x), num(y), anchor, extra.empty() ? "" : " ", extra,
                        escape(t));
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            std::string_view extra = {}) {
    out_ += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"{}{}/>\n",
        num(x1), num(y1), num(x2), num(y2), stroke, extra.empty() ? "" : " ",
        extra);
  }

  void frame(std::string_view x_label, std::string_view y_label) {
    out_ += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
        "stroke=\"black\"/>\n",
        num(left()), num(top()), num(right() - left()), num(bottom() - top()));
    text((left() + right()) / 2, height_ - 15, x_label, "middle");
    const double cy = (top() + bottom()) / 2;
    text(18, cy, y_label, "middle",
         fmt::format("transform=\"rotate(-90 18 {})\"", num(cy)));
    out_ += fmt::format(
        "<clipPath id=\"plot-area\"><rect x=\"{}\" y=\"{}\" width=\"{}\" "
        "height=\"{}\"/></clipPath>\n",
        num(left()), num(top()), num(right() - left()), num(bottom() - top()));
  }

  void x_tick(double px, std::string_view label) {
    line(px, bottom(), px, bottom() + 5, "black");
    line(px, top(), px, bottom(), "#dddddd");
    text(px, bottom() + 18, label, "middle");
  }

  void y_tick(double py, std::string_view label) {
    line(left() - 5, py, left(), py, "black");
    line(left(), py, right(), py, "#dddddd");
    text(left() - 8, py + 4, label, "end");
  }

  void polyline(const PointList& pts, std::string_view stroke,
                std::string_view extra = {}) {
    if (pts.empty()) return;
    out_ += fmt::format(
        "<polyline clip-path=\"url(#plot-area)\" fill=\"none\" stroke=\"{}\" "
        "stroke-width=\"1.5\"{}{} points=\"{}\"/>\n",
        stroke, extra.empty() ? "" : " ", extra, pts.str());
  }

  void legend(const std::vector<std::pair<std::string, std::string_view>>& items) {
    double y = top() + 16;
    for (const auto& [label, stroke] : items) {
      line(right() - 170, y - 4, right() - 150, y - 4, stroke,
           "stroke-width=\"2\"");
      text(right() - 145, y, label, "start");
      y += 16;
    }
  }

  std::string finish() && {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  int width_, height_;
  std::string out_;
};

std::string det_tick_label(double rate) {
  return num(rate * 100.0);
}

std::string render_det(const DetPlot& plot, const PlotOptions& o) {
  if (plot.entries.empty()) throw DataError("DET plot has no series");
  const double x_lo = o.x_min.value_or(kDetFloor);
  const double x_hi = o.x_max.value_or(kDetCeiling);
  const double y_lo = o.y_min.value_or(kDetFloor);
  const double y_hi = o.y_max.value_or(kDetCeiling);
  if (!(x_lo > 0 && x_lo < x_hi && x_hi < 1 && y_lo > 0 && y_lo < y_hi && y_hi < 1)) {
    throw ArgumentError("DET axis bounds must satisfy 0 < min < max < 1");
  }

  Canvas c(o, "DET curve");
  c.frame("APCER (%)", "BPCER (%)");
  const Axis ax{probit(x_lo), probit(x_hi), c.left(), c.right()};
  const Axis ay{probit(y_lo), probit(y_hi), c.bottom(), c.top()};
  auto px = [&](double r) { return ax(probit(std::clamp(r, x_lo, 1.0 - x_lo))); };
  auto py = [&](double r) { return ay(probit(std::clamp(r, y_lo, 1.0 - y_lo))); };

  constexpr double kTicks[] = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05,
                               0.1,   0.2,   0.3,   0.4,  0.5};
  for (double t : kTicks) {
    if (t >= x_lo && t <= x_hi) c.x_tick(px(t), det_tick_label(t));
    if (t >= y_lo && t <= y_hi) c.y_tick(py(t), det_tick_label(t));
  }

  // Operating-point guides: BPCER10 at APCER = 10%, BPCER20 at APCER = 5%.
  struct Guide {
    double apcer;
    std::string_view name;
  };
  constexpr Guide kGuides[] = {{0.10, "BPCER10"}, {0.05, "BPCER20"}};
  for (const auto& g : kGuides) {
    if (g.apcer < x_lo || g.apcer > x_hi) continue;
    c.line(px(g.apcer), c.top(), px(g.apcer), c.bottom(), "black",
           "stroke-dasharray=\"6,4\"");
    c.text(px(g.apcer) + 3, c.top() + 12, g.name, "start", "font-size=\"10\"");
  }

  std::vector<std::pair<std::string, std::string_view>> legend;
  for (std::size_t i = 0; i < plot.entries.size(); ++i) {
    const auto& e = plot.entries[i];
    if (e.curve.points.empty()) {
      throw DataError("DET series '" + e.curve.label + "' is empty");
    }
    const bool visible = std::any_of(
        e.curve.points.begin(), e.curve.points.end(),
        [&](const CurvePoint& p) { return p.apcer <= x_hi && p.bpcer <= y_hi; });
    if (!visible) {
      throw DataError("DET series '" + e.curve.label +
                      "' lies entirely outside the plotted range");
    }
    PointList pts;
    for (const auto& p : e.curve.points) pts.add(px(p.apcer), py(p.bpcer));
    c.polyline(pts, color(i));
    for (const auto& [apcer, value] :
         {std::pair{0.10, e.bpcer10}, std::pair{0.05, e.bpcer20}}) {
      if (apcer < x_lo || apcer > x_hi || value > y_hi) continue;
      c.raw(fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{}\"/>\n",
                        num(px(apcer)), num(py(value)), color(i)));
      c.text(px(apcer) + 5, py(value) - 5, format_percent(value, 2) + "%",
             "start", fmt::format("font-size=\"10\" fill=\"{}\"", color(i)));
    }
    legend.emplace_back(
        fmt::format("{} ({})", e.curve.label, format_percent(e.eer, 2)),
        color(i));
  }
  c.legend(legend);
  return std::move(c).finish();
}

std::string render_eer(const EerPlot& plot, const PlotOptions& o) {
  const auto& curve = plot.curve;
  if (curve.bpcer.tau.empty() || curve.apcer.tau.empty()) {
    throw DataError("EER plot has no data");
  }
  Canvas c(o, "APCER and BPCER vs threshold");
  c.frame("Threshold (τ)", "Error rate (%)");
  const Axis ax{o.x_min.value_or(0.0), o.x_max.value_or(1.0), c.left(), c.right()};
  const Axis ay{o.y_min.value_or(0.0), o.y_max.value_or(1.0), c.bottom(), c.top()};
  if (!(ax.lo < ax.hi && ay.lo < ay.hi)) throw ArgumentError("empty axis range");
  for (int i = 0; i <= 10; ++i) {
    const double t = ax.lo + (ax.hi - ax.lo) * i / 10.0;
    c.x_tick(ax(t), num(t));
    const double r = ay.lo + (ay.hi - ay.lo) * i / 10.0;
    c.y_tick(ay(r), num(r * 100.0));
  }
  std::size_t i = 0;
  std::vector<std::pair<std::string, std::string_view>> legend;
  for (const RateSeries* s : {&curve.bpcer, &curve.apcer}) {
    // Right-continuous step function: constant from each threshold to the next.
    PointList pts;
    for (std::size_t k = 0; k < s->tau.size(); ++k) {
      if (k > 0) pts.add(ax(s->tau[k]), ay(s->rate[k - 1]));
      pts.add(ax(s->tau[k]), ay(s->rate[k]));
    }
    c.polyline(pts, color(i));
    legend.emplace_back(s->label, color(i));
    ++i;
  }
  const auto& x = curve.crossing;
  c.line(ax(x.tau), c.top(), ax(x.tau), c.bottom(), "black",
         "stroke-dasharray=\"6,4\"");
  c.raw(fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
                    num(ax(x.tau)), num(ay(x.eer))));
  c.text(ax(x.tau) + 6, ay(x.eer) - 6,
         fmt::format("EER {}% at τ = {}", format_percent(x.eer, 2),
                     format_fixed(x.tau, 4)),
         "start");
  c.legend(legend);
  return std::move(c).finish();
}

std::string render_kde(const KdePlot& plot, const PlotOptions& o) {
  if (plot.series.empty()) throw DataError("KDE plot has no series");
  double peak = 0.0;
  double smallest = 0.0;
  for (const auto& s : plot.series) {
    if (s.xs.empty()) throw DataError("KDE series '" + s.class_label + "' is empty");
    for (double d : s.densities) {
      peak = std::max(peak, d);
      if (d > 0.0 && (smallest == 0.0 || d < smallest)) smallest = d;
    }
  }
  if (!(peak > 0.0)) throw DataError("KDE plot has no positive density");
  const bool log_scale = plot.scale == DensityScale::kLog;

  Canvas c(o, log_scale ? "Score distributions (log scale)"
                        : "Score distributions");
  c.frame("Bona fide score", log_scale ? "Density (log)" : "Density");
  const Axis ax{o.x_min.value_or(0.0), o.x_max.value_or(1.0), c.left(), c.right()};
  if (!(ax.lo < ax.hi)) throw ArgumentError("empty axis range");

  std::function<double(double)> py;
  if (log_scale) {
    const double lo = std::log10(
        o.y_min.value_or(std::max(smallest, peak * 1e-6)));
    const double hi = std::log10(o.y_max.value_or(peak * 2.0));
    if (!(lo < hi)) throw ArgumentError("empty axis range");
    const Axis ay{lo, hi, c.bottom(), c.top()};
    py = [ay, lo](double d) { return ay(d > 0.0 ? std::max(std::log10(d), lo) : lo); };
    for (int e = static_cast<int>(std::ceil(lo)); e <= static_cast<int>(std::floor(hi)); ++e) {
      c.y_tick(ay(e), fmt::format("1e{}", e));
    }
  } else {
    const Axis ay{o.y_min.value_or(0.0), o.y_max.value_or(peak * 1.05), c.bottom(), c.top()};
    if (!(ay.lo < ay.hi)) throw ArgumentError("empty axis range");
    py = ay;
    for (int i = 0; i <= 5; ++i) {
      const double v = ay.lo + (ay.hi - ay.lo) * i / 5.0;
      c.y_tick(ay(v), num(v));
    }
  }
  for (int i = 0; i <= 10; ++i) {
    const double t = ax.lo + (ax.hi - ax.lo) * i / 10.0;
    c.x_tick(ax(t), num(t));
  }

  std::vector<std::pair<std::string, std::string_view>> legend;
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    PointList pts;
    for (std::size_t k = 0; k < s.xs.size(); ++k) pts.add(ax(s.xs[k]), py(s.densities[k]));
    c.polyline(pts, color(i));
    legend.emplace_back(fmt::format("{} (h={})", s.class_label, num(s.bandwidth)),
                        color(i));
  }
  if (plot.threshold) {
    const double t = *plot.threshold;
    c.line(ax(t), c.top(), ax(t), c.bottom(), "black", "stroke-dasharray=\"6,4\"");
    c.text(ax(t) + 4, c.top() + 12, "τ = " + format_fixed(t, 4), "start",
           "font-size=\"10\"");
  }
  c.legend(legend);
  return std::move(c).finish();
}

std::string render_confusion(const ConfusionPlot& plot, const PlotOptions& o) {
  const auto& m = plot.matrix;
  const auto rows = m.true_labels.size();
  const auto cols = m.predicted_labels.size();
  if (rows == 0 || cols == 0 || m.counts.size() != rows * cols) {
    throw DataError("confusion matrix is empty or malformed");
  }
  Canvas c(o, "Confusion matrix");
  const double left = 110, top = 50;
  const double right = o.width - 20.0, bottom = o.height - 60.0;
  const double cw = (right - left) / static_cast<double>(cols);
  const double ch = (bottom - top) / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto total = m.row_total(r);
    for (std::size_t k = 0; k < cols; ++k) {
      const auto count = m.at(r, k);
      const double frac = total == 0 ? 0.0 : static_cast<double>(count) / total;
      const int shade = static_cast<int>(std::lround(255.0 - 200.0 * frac));
      const double x = left + cw * static_cast<double>(k);
      const double y = top + ch * static_cast<double>(r);
      c.raw(fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
          "fill=\"rgb({},{},255)\" stroke=\"white\"/>\n",
          num(x), num(y), num(cw), num(ch), shade, shade));
      c.text(x + cw / 2, y + ch / 2, std::to_string(count), "middle",
             frac > 0.6 ? "fill=\"white\"" : "");
      c.text(x + cw / 2, y + ch / 2 + 14,
             format_percent(frac, 2) + "%", "middle",
             frac > 0.6 ? "font-size=\"10\" fill=\"white\"" : "font-size=\"10\"");
    }
    c.text(left - 6, top + ch * (static_cast<double>(r) + 0.5) + 4,
           m.true_labels[r], "end");
  }
  for (std::size_t k = 0; k < cols; ++k) {
    c.text(left + cw * (static_cast<double>(k) + 0.5), bottom + 18,
           m.predicted_labels[k], "middle");
  }
  c.text((left + right) / 2, o.height - 15.0, "Predicted label", "middle");
  c.text(14, (top + bottom) / 2, "True label", "middle",
         fmt::format("transform=\"rotate(-90 14 {})\"", num((top + bottom) / 2)));
  return std::move(c).finish();
}

}  // namespace

std::string render_svg(const PlotData& plot, const PlotOptions& options) {
  return std::visit(
      [&](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DetPlot>) return render_det(p, options);
        else if constexpr (std::is_same_v<T, EerPlot>) return render_eer(p, options);
        else if constexpr (std::is_same_v<T, KdePlot>) return render_kde(p, options);
        else return render_confusion(p, options);
      },
      plot);
}

}  // namespace padeval
