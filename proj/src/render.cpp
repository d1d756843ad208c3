#include "coxaut/render.hpp"

#include <cmath>
#include <cstdio>

namespace coxaut {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 693.0;
constexpr double kMargin = 40.0;

struct Point2 {
  double x, y;
};

// Vertices for alpha_1, alpha_2, alpha_3: an equilateral triangle.
Point2 vertex(int i) {
  const double side = kWidth - 2 * kMargin;
  const double base = kHeight - kMargin;
  switch (i) {
    case 0:
      return {kMargin, base};
    case 1:
      return {kWidth - kMargin, base};
    default:
      return {kWidth / 2, base - side * std::sqrt(3.0) / 2};
  }
}

Point2 place(const RootVector& p) {
  Point2 out{0, 0};
  for (int i = 0; i < 3; ++i) {
    const double w = p[i].to_double();
    const Point2 v = vertex(i);
    out.x += w * v.x;
    out.y += w * v.y;
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", std::abs(v) < 5e-7 ? 0.0 : v);
  return buf;
}

}  // namespace

ProjectivePicture projective_picture(const SmallRootTable& table) {
  const CoxeterSystem& sys = table.system();
  if (sys.rank() != 3) throw Error(ErrorKind::UnsupportedRank, "pictures need rank 3, got " + std::to_string(sys.rank()));
  ProjectivePicture pic;
  for (const auto& node : table.nodes()) {
    const RootVector& r = sys.root(node.root);
    const Scalar total = r[0] + r[1] + r[2];
    const Scalar inv = total.inverse();
    pic.points.push_back({r[0] * inv, r[1] * inv, r[2] * inv});
  }
  for (std::size_t id = 0; id < table.size(); ++id) {
    // f(x) = B(x, alpha) is linear; its values at the vertices are the pairings.
    std::vector<Scalar> f;
    for (int s = 0; s < 3; ++s) f.push_back(sys.pairing(s, table.node(static_cast<int>(id)).root));
    std::vector<RootVector> hits;
    auto add_hit = [&](RootVector p) {
      for (const auto& h : hits) {
        if (h == p) return;
      }
      hits.push_back(std::move(p));
    };
    for (int i = 0; i < 3; ++i) {
      if (f[i].is_zero()) {
        RootVector p = sys.zero_vector();
        p[i] = Scalar(sys.field(), 1);
        add_hit(std::move(p));
      }
      const int j = (i + 1) % 3;
      if (f[i].sign() * f[j].sign() < 0) {
        // Point t*e_i + (1-t)*e_j with t f_i + (1-t) f_j = 0.
        const Scalar t = f[j] / (f[j] - f[i]);
        RootVector p = sys.zero_vector();
        p[i] = t;
        p[j] = Scalar(sys.field(), 1) - t;
        add_hit(std::move(p));
      }
    }
    if (hits.size() >= 2) pic.segments.push_back({static_cast<int>(id), hits[0], hits[1]});
  }
  return pic;
}

std::string render_rank3_svg(const SmallRootTable& table, const RenderOptions& opts) {
  const ProjectivePicture pic = projective_picture(table);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"693\" viewBox=\"0 0 800 693\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"693\" fill=\"white\"/>\n";
  out += "  <polygon points=\"";
  for (int i = 0; i < 3; ++i) {
    const Point2 v = vertex(i);
    if (i) out += " ";
    out += fmt(v.x) + "," + fmt(v.y);
  }
  out += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out += "  <g id=\"traces\" stroke=\"#4a6fa5\" stroke-width=\"1\">\n";
  for (const auto& seg : pic.segments) {
    const Point2 a = place(seg.from), b = place(seg.to);
    out += "    <line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) +
           "\" data-root=\"" + std::to_string(seg.node) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g id=\"roots\" fill=\"#b22222\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < pic.points.size(); ++i) {
    const Point2 p = place(pic.points[i]);
    out += "    <circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"4\"/>\n";
    if (opts.labels) {
      out += "    <text x=\"" + fmt(p.x + 6) + "\" y=\"" + fmt(p.y - 6) + "\">" + std::to_string(i) + "</text>\n";
    }
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace coxaut
