#include "textpoly/bezier.hpp"

#include <cmath>

namespace textpoly {

namespace {

// Per-vertex travel directions. Interior vertices use the central difference
// v[s+1] - v[s-1]; the ends use the adjacent segment. A vanishing difference
// falls back to the nearest non-zero segment direction (ties prefer the
// earlier segment).
std::vector<Vec2> polyline_tangents(const std::vector<Vec2>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<Vec2> tangents(n);
  for (int s = 0; s < n; ++s) {
    Vec2 d;
    if (s == 0) {
      d = v[1] - v[0];
    } else if (s == n - 1) {
      d = v[n - 1] - v[n - 2];
    } else {
      d = v[s + 1] - v[s - 1];
    }
    if (norm2(d) == 0.0) {
      // Segment i runs v[i] -> v[i+1]; scan outward from the vertex.
      for (int off = 0; off < n - 1 && norm2(d) == 0.0; ++off) {
        const int left = s - 1 - off;
        const int right = s + off;
        if (left >= 0 && norm2(v[left + 1] - v[left]) > 0.0) {
          d = v[left + 1] - v[left];
        } else if (right < n - 1 && norm2(v[right + 1] - v[right]) > 0.0) {
          d = v[right + 1] - v[right];
        }
      }
      if (norm2(d) == 0.0)
        throw DegenerateGeometryError("polyline has no non-zero segment near vertex " +
                                      std::to_string(s));
    }
    tangents[s] = d;
  }
  return tangents;
}

}  // namespace

std::array<double, 4> bernstein_basis(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("bernstein_basis: t must lie in [0, 1]");
  const double u = 1.0 - t;
  return {u * u * u, 3.0 * t * (u * u), 3.0 * (t * t) * u, t * t * t};
}

BezierCurve bezier_from_box(const Box& box, const BezierDelta& delta) {
  validate_box(box);
  BezierCurve curve;
  for (int j = 0; j < 4; ++j) {
    if (!finite(delta.dp[j])) throw DomainError("bezier_from_box: non-finite offset");
    curve.ctrl[j] = {box.cx + delta.dp[j].x * box.w, box.cy + delta.dp[j].y * box.h};
  }
  return curve;
}

Polyline sample_polyline(const BezierCurve& curve, int samples) {
  if (samples < 2) throw DomainError("sample_polyline: need at least 2 samples");
  Polyline line;
  line.verts.resize(samples);
  for (int s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(samples - 1);
    const auto b = bernstein_basis(t);
    Vec2 p{0.0, 0.0};
    for (int j = 0; j < 4; ++j) p += b[j] * curve.ctrl[j];
    line.verts[s] = p;
  }
  return line;
}

double polygon_width(const Box& box, double dwp) {
  validate_box(box);
  return std::sqrt(box.w * box.h) * std::exp(dwp);
}

TextPolygon buffer_polyline(const Polyline& line, double width) {
  if (line.verts.size() < 2)
    throw DomainError("buffer_polyline: need at least 2 vertices");
  if (!(width > 0.0)) throw DomainError("buffer_polyline: width must be positive");

  const auto tangents = polyline_tangents(line.verts);
  const double half = width / 2.0;

  TextPolygon poly;
  poly.top.resize(line.verts.size());
  poly.bot.resize(line.verts.size());
  for (std::size_t s = 0; s < line.verts.size(); ++s) {
    const Vec2 n = rot90ccw(tangents[s] / norm(tangents[s]));
    poly.top[s] = line.verts[s] + half * n;
    poly.bot[s] = line.verts[s] - half * n;
  }
  return poly;
}

TextPolygon box_to_poly(const Box& box, const BezierDelta& delta, int samples) {
  const BezierCurve curve = bezier_from_box(box, delta);
  const Polyline line = sample_polyline(curve, samples);
  return buffer_polyline(line, polygon_width(box, delta.dwp));
}

BezierCurve fit_cubic(std::span<const Vec2> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw DomainError("fit_cubic: need at least 2 points");

  BezierCurve curve;
  curve.ctrl[0] = pts.front();
  curve.ctrl[3] = pts.back();
  if (n == 2) {
    // Straight segment; inner controls at thirds.
    curve.ctrl[1] = pts[0] + (1.0 / 3.0) * (pts[1] - pts[0]);
    curve.ctrl[2] = pts[0] + (2.0 / 3.0) * (pts[1] - pts[0]);
    return curve;
  }

  // Solve the 2x2 normal equations for the two inner control points with the
  // endpoints pinned, one axis at a time.
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
  Vec2 r1{0.0, 0.0}, r2{0.0, 0.0};
  for (int s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(n - 1);
    const auto b = bernstein_basis(t);
    const Vec2 res = pts[s] - (b[0] * curve.ctrl[0] + b[3] * curve.ctrl[3]);
    a11 += b[1] * b[1];
    a12 += b[1] * b[2];
    a22 += b[2] * b[2];
    r1 += b[1] * res;
    r2 += b[2] * res;
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-30) {
    // Degenerate sampling; fall back to the chord.
    curve.ctrl[1] = curve.ctrl[0] + (1.0 / 3.0) * (curve.ctrl[3] - curve.ctrl[0]);
    curve.ctrl[2] = curve.ctrl[0] + (2.0 / 3.0) * (curve.ctrl[3] - curve.ctrl[0]);
    return curve;
  }
  curve.ctrl[1] = (a22 * r1 - a12 * r2) / det;
  curve.ctrl[2] = (a11 * r2 - a12 * r1) / det;
  return curve;
}

}  // namespace textpoly
