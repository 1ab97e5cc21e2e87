#include "anchorvote/geometry.hpp"

#include <cmath>

namespace anchorvote::geometry {

namespace {

double side(const HalfPlane& h, const Point2& p) { return h.a * p.x + h.b * p.y - h.c; }

}  // namespace

Polygon clip(const Polygon& polygon, const HalfPlane& half) {
  Polygon out;
  if (polygon.empty()) return out;
  out.reserve(polygon.size() + 1);
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& cur = polygon[i];
    const Point2& next = polygon[(i + 1) % polygon.size()];
    const double sc = side(half, cur);
    const double sn = side(half, next);
    if (sc <= 0.0) out.push_back(cur);
    if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back({cur.x + t * (next.x - cur.x), cur.y + t * (next.y - cur.y)});
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

double area(const Polygon& polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& p = polygon[i];
    const Point2& q = polygon[(i + 1) % polygon.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return std::abs(twice) / 2.0;
}

Polygon simplex_triangle() { return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}; }

Point2 to_chart(std::span<const double> u) { return {u[0], u[1]}; }

Point2 to_planar(const Point2& chart) {
  const double u1 = chart.x;
  const double u2 = chart.y;
  return {std::sqrt(2.0) * u1 + std::sqrt(2.0) / 2.0 * u2, std::sqrt(6.0) / 2.0 * u2};
}

HalfPlane closer_to(std::span<const double> r, std::span<const double> s) {
  // |u - r|^2 <= |u - s|^2  <=>  2 <u, s - r> <= |s|^2 - |r|^2, with u = (x, y, 1 - x - y).
  const double d1 = s[0] - r[0];
  const double d2 = s[1] - r[1];
  const double d3 = s[2] - r[2];
  const double rhs = dot(s, s) - dot(r, r);
  return {2.0 * (d1 - d3), 2.0 * (d2 - d3), rhs - 2.0 * d3};
}

std::vector<Polygon> level_set_cells(const ReportMenu& menu) {
  if (menu.dim() != 3) throw Unsupported("planar level-set geometry requires m = 3");
  std::vector<Polygon> cells;
  cells.reserve(menu.size());
  for (std::size_t r = 0; r < menu.size(); ++r) {
    Polygon cell = simplex_triangle();
    for (std::size_t s = 0; s < menu.size() && !cell.empty(); ++s) {
      if (s == r) continue;
      cell = clip(cell, closer_to(menu.position(r), menu.position(s)));
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

bool contains(const Polygon& outer, const Polygon& inner, double tolerance) {
  if (outer.size() < 3) return inner.empty();
  // Orientation-independent: every inner vertex must lie on the same side of
  // each outer edge as the outer polygon's interior.
  double orient = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Point2& p = outer[i];
    const Point2& q = outer[(i + 1) % outer.size()];
    orient += p.x * q.y - q.x * p.y;
  }
  const double sign = orient >= 0.0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Point2& p = outer[i];
    const Point2& q = outer[(i + 1) % outer.size()];
    for (const Point2& v : inner) {
      const double cross = (q.x - p.x) * (v.y - p.y) - (q.y - p.y) * (v.x - p.x);
      if (sign * cross < -tolerance) return false;
    }
  }
  return true;
}

}  // namespace anchorvote::geometry
