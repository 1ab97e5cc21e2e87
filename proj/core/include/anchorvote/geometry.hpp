#pragma once

// Planar geometry for the three-alternative simplex.
//
// Points of the simplex are handled in the chart (x, y) = (u1, u2), with
// u3 = 1 - x - y; the simplex becomes the triangle (1,0), (0,1), (0,0). The
// chart is affine, so area ratios computed in it are exact measure ratios
// under the uniform density.

#include <array>
#include <vector>

#include "anchorvote/simplex.hpp"

namespace anchorvote::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

using Polygon = std::vector<Point2>;

/// The closed half-plane a x + b y <= c.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Convex polygon clipped against one half-plane (Sutherland-Hodgman step).
Polygon clip(const Polygon& polygon, const HalfPlane& half);

/// Unsigned shoelace area.
double area(const Polygon& polygon);

/// The simplex triangle in chart coordinates, counter-clockwise.
Polygon simplex_triangle();

/// Chart coordinates of a 3-vector (its first two entries).
Point2 to_chart(std::span<const double> u);

/// Isometric embedding used for emitted figures: e3 at the origin, e1 at
/// (sqrt 2, 0), e2 at (sqrt 2 / 2, sqrt 6 / 2).
Point2 to_planar(const Point2& chart);

/// Points of the plane u1 + u2 + u3 = 1 closer to position r than to
/// position s, as a half-plane in chart coordinates.
HalfPlane closer_to(std::span<const double> r, std::span<const double> s);

/// Nearest-report cell of every report, clipped to the simplex, in chart
/// coordinates. Requires a menu of dimension 3. Empty cells come back empty.
std::vector<Polygon> level_set_cells(const ReportMenu& menu);

/// True iff every vertex of `inner` satisfies all edge constraints of the
/// convex polygon `outer` within tolerance.
bool contains(const Polygon& outer, const Polygon& inner, double tolerance = 1e-12);

}  // namespace anchorvote::geometry
