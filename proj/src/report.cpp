#include "illusion/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace illusion {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream &out, const TrajectoryLog &log) {
  out << kCsvHeader << '\n';
  auto num = [&](double v) { out << ',' << format_number(v); };
  for (const auto &r : log.records) {
    out << r.stage;
    num(r.position.x());
    num(r.position.y());
    if (r.estimate) {
      num(r.estimate->x());
      num(r.estimate->y());
      num(r.error.x());
      num(r.error.y());
    } else {
      out << ",,,,";
    }
    num(r.receiver_action.x());
    num(r.receiver_action.y());
    num(r.producer_action.x());
    num(r.producer_action.y());
    for (int i = 0; i < 3; ++i)
      num(r.intensities[i]);
    for (int i = 0; i < 3; ++i)
      num(r.observation[i]);
    out << ',' << (r.plausible ? 1 : 0) << ',' << (r.illusion ? 1 : 0) << '\n';
  }
}

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 56;
constexpr const char *kBlue = "#1f77b4";
constexpr const char *kOrange = "#ff7f0e";

struct Range {
  double lo = INFINITY, hi = -INFINITY;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1;
      hi += 1;
    }
    const double p = 0.05 * (hi - lo);
    lo -= p;
    hi += p;
  }
};

// Maps data coordinates into the plot area, y pointing up.
struct Frame {
  Range x, y;
  double px(double v) const { return kMargin + (v - x.lo) / (x.hi - x.lo) * (kWidth - 2 * kMargin); }
  double py(double v) const { return kHeight - kMargin - (v - y.lo) / (y.hi - y.lo) * (kHeight - 2 * kMargin); }
};

double nice_step(double span) {
  const double raw = span / 6;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw)
      return m * mag;
  return 10 * mag;
}

void open_svg(std::ostream &out, const std::string &title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << title << "</text>\n";
}

void axes(std::ostream &out, const Frame &f, const std::string &xlabel, const std::string &ylabel) {
  out << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
      << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double sx = nice_step(f.x.hi - f.x.lo);
  for (double v = std::ceil(f.x.lo / sx) * sx; v <= f.x.hi; v += sx) {
    out << "<line x1=\"" << f.px(v) << "\" y1=\"" << kMargin << "\" x2=\"" << f.px(v) << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << f.px(v) << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"middle\">"
        << format_number(std::abs(v) < 1e-12 ? 0.0 : v) << "</text>\n";
  }
  const double sy = nice_step(f.y.hi - f.y.lo);
  for (double v = std::ceil(f.y.lo / sy) * sy; v <= f.y.hi; v += sy) {
    out << "<line x1=\"" << kMargin << "\" y1=\"" << f.py(v) << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
        << f.py(v) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << f.py(v) + 4 << "\" text-anchor=\"end\">"
        << format_number(std::abs(v) < 1e-12 ? 0.0 : v) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << ylabel << "</text>\n";
  out << "</g>\n";
}

void polyline(std::ostream &out, const Frame &f, const std::vector<Point2> &pts, const char *color) {
  if (pts.empty())
    return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out << (i ? " " : "") << format_number(f.px(pts[i].x())) << ',' << format_number(f.py(pts[i].y()));
  out << "\"/>\n";
  for (const auto &p : pts)
    out << "<circle cx=\"" << format_number(f.px(p.x())) << "\" cy=\"" << format_number(f.py(p.y()))
        << "\" r=\"2\" fill=\"" << color << "\"/>\n";
}

void legend(std::ostream &out, const std::vector<std::pair<std::string, const char *>> &entries) {
  double y = kMargin + 16;
  for (const auto &[label, color] : entries) {
    out << "<line x1=\"" << kWidth - kMargin - 120 << "\" y1=\"" << y - 4 << "\" x2=\"" << kWidth - kMargin - 100
        << "\" y2=\"" << y - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kWidth - kMargin - 94 << "\" y=\"" << y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    y += 16;
  }
}

} // namespace

void write_trajectory_svg(std::ostream &out, const TrajectoryLog &log, const Scenario &s) {
  std::vector<Point2> truth, estimate;
  Frame f;
  for (const auto &r : log.records) {
    truth.push_back(r.position);
    f.x.add(r.position.x());
    f.y.add(r.position.y());
    if (r.estimate) {
      estimate.push_back(*r.estimate);
      f.x.add(r.estimate->x());
      f.y.add(r.estimate->y());
    }
  }
  for (const auto &p : {s.receiver.goal, s.producer.goal}) {
    f.x.add(p.x());
    f.y.add(p.y());
  }
  f.x.pad();
  f.y.pad();

  open_svg(out, "Receiver position and I-state");
  axes(out, f, "x", "y");
  polyline(out, f, truth, kBlue);
  polyline(out, f, estimate, kOrange);
  for (const auto &[p, name] : {std::pair{s.receiver.goal, "receiver goal"}, std::pair{s.producer.goal, "producer goal"}})
    out << "<rect x=\"" << format_number(f.px(p.x()) - 4) << "\" y=\"" << format_number(f.py(p.y()) - 4)
        << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"black\"><title>" << name << "</title></rect>\n";
  legend(out, {{"position", kBlue}, {"estimate", kOrange}});
  out << "</svg>\n";
}

void write_action_svg(std::ostream &out, const TrajectoryLog &log) {
  std::vector<Point2> ux, uy;
  Frame f;
  for (const auto &r : log.records) {
    const double k = static_cast<double>(r.stage);
    ux.emplace_back(k, r.producer_action.x());
    uy.emplace_back(k, r.producer_action.y());
    f.x.add(k);
    f.y.add(r.producer_action.x());
    f.y.add(r.producer_action.y());
  }
  f.x.pad();
  f.y.pad();

  open_svg(out, "Producer actions");
  axes(out, f, "stage", "u_p");
  polyline(out, f, ux, kBlue);
  polyline(out, f, uy, kOrange);
  legend(out, {{"u_p,1", kBlue}, {"u_p,2", kOrange}});
  out << "</svg>\n";
}

} // namespace illusion
