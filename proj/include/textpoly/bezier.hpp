#pragma once

#include <array>
#include <span>
#include <vector>

#include "textpoly/core.hpp"

namespace textpoly {

// Cubic curve given by four control points in pixel coordinates.
struct BezierCurve {
  std::array<Vec2, 4> ctrl{};
};

struct Polyline {
  std::vector<Vec2> verts;
};

// Paired boundary of a text instance: top[s]/bot[s] flank centerline vertex s.
// Walking the centerline in vertex order, top vertices lie on the left of the
// travel direction (y-up axes).
struct TextPolygon {
  std::vector<Vec2> top;
  std::vector<Vec2> bot;

  int samples() const { return static_cast<int>(top.size()); }
};

// Unitless placement of a curve inside a reference box: per-control-point
// offsets as fractions of the box size, plus a log-scale width factor.
struct BezierDelta {
  std::array<Vec2, 4> dp{};
  double dwp = 0.0;
};

// Values of the four cubic Bernstein polynomials at t in [0, 1].
std::array<double, 4> bernstein_basis(double t);

// Control points placed relative to the box: ctrl_j = center + dp_j * size.
BezierCurve bezier_from_box(const Box& box, const BezierDelta& delta);

// Uniform parameter sampling at t_s = s/(S-1); endpoints are interpolated
// exactly.
Polyline sample_polyline(const BezierCurve& curve, int samples);

// Width of the buffered polygon: sqrt(w*h) * exp(dwp).
double polygon_width(const Box& box, double dwp);

// Expands a polyline by width/2 to each side along per-vertex left normals.
// Tangents use central differences at interior vertices and one-sided
// differences at the ends, falling back to the nearest non-zero segment
// direction when a difference vanishes.
TextPolygon buffer_polyline(const Polyline& line, double width);

// Composite transform: place curve in box, sample S vertices, buffer by the
// predicted width.
TextPolygon box_to_poly(const Box& box, const BezierDelta& delta, int samples);

// Cubic through the endpoints of pts with inner control points chosen by
// least squares under uniform parameterization. Used to lift polygon
// boundaries back to curve form.
BezierCurve fit_cubic(std::span<const Vec2> pts);

}  // namespace textpoly
