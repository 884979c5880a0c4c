#include "textpoly/polyalign.hpp"

#include <algorithm>
#include <cmath>

namespace textpoly {

namespace {

// Adds the interpolated channel values at image point (x, y) into out.
void bilinear_accumulate(const FeatureMap& map, double x, double y, double* out) {
  // Cell space: u = j at the center of column j.
  double u = x / map.stride - 0.5;
  double v = y / map.stride - 0.5;
  u = std::clamp(u, 0.0, static_cast<double>(map.width - 1));
  v = std::clamp(v, 0.0, static_cast<double>(map.height - 1));

  const int j0 = std::min(static_cast<int>(u), std::max(map.width - 2, 0));
  const int i0 = std::min(static_cast<int>(v), std::max(map.height - 2, 0));
  const int j1 = std::min(j0 + 1, map.width - 1);
  const int i1 = std::min(i0 + 1, map.height - 1);
  const double fu = u - j0;
  const double fv = v - i0;

  const double w00 = (1.0 - fu) * (1.0 - fv);
  const double w10 = fu * (1.0 - fv);
  const double w01 = (1.0 - fu) * fv;
  const double w11 = fu * fv;
  for (int c = 0; c < map.channels; ++c) {
    out[c] += w00 * map.at(i0, j0, c) + w10 * map.at(i0, j1, c) +
              w01 * map.at(i1, j0, c) + w11 * map.at(i1, j1, c);
  }
}

void pyramid_accumulate(const FeaturePyramid& pyramid, Vec2 p, double* out) {
  for (const auto& level : pyramid.levels) bilinear_accumulate(level, p.x, p.y, out);
}

Vec2 bezier_point(const BezierCurve& c, double t) {
  const auto b = bernstein_basis(t);
  Vec2 p{0.0, 0.0};
  for (int j = 0; j < 4; ++j) p += b[j] * c.ctrl[j];
  return p;
}

Vec2 bezier_derivative(const BezierCurve& c, double t) {
  const double u = 1.0 - t;
  return 3.0 * u * u * (c.ctrl[1] - c.ctrl[0]) + 6.0 * u * t * (c.ctrl[2] - c.ctrl[1]) +
         3.0 * t * t * (c.ctrl[3] - c.ctrl[2]);
}

void validate_poly_pair(const TextPolygon& poly) {
  if (poly.top.size() != poly.bot.size() || poly.top.size() < 2)
    throw DomainError("polyalign: polygon needs matching top/bottom lists of >= 2 vertices");
}

}  // namespace

void validate_feature_map(const FeatureMap& map) {
  if (map.height < 1 || map.width < 1 || map.channels < 1)
    throw DataError("feature map: all dimensions must be >= 1");
  if (!(map.stride > 0.0)) throw DataError("feature map: stride must be positive");
  if (map.data.size() != static_cast<std::size_t>(map.height) * map.width * map.channels)
    throw DataError("feature map: data size does not match dimensions");
  for (double v : map.data)
    if (!std::isfinite(v)) throw DataError("feature map: non-finite value");
}

void validate_pyramid(const FeaturePyramid& pyramid) {
  if (pyramid.levels.empty()) throw DataError("pyramid: needs at least one level");
  double prev = 0.0;
  for (const auto& level : pyramid.levels) {
    validate_feature_map(level);
    if (!(level.stride > prev)) throw DataError("pyramid: strides must strictly increase");
    if (level.channels != pyramid.levels.front().channels)
      throw DataError("pyramid: all levels must share the channel count");
    prev = level.stride;
  }
}

std::vector<double> bilinear(const FeatureMap& map, double x, double y) {
  std::vector<double> out(map.channels, 0.0);
  bilinear_accumulate(map, x, y, out.data());
  return out;
}

PolyRoiFeature polyalign_vertex(const FeaturePyramid& pyramid, const TextPolygon& poly) {
  validate_poly_pair(poly);
  const int s_count = poly.samples();
  const int c_count = pyramid.channels();
  PolyRoiFeature out{s_count, c_count,
                     std::vector<double>(static_cast<std::size_t>(s_count) * 3 * c_count, 0.0)};
  for (int s = 0; s < s_count; ++s) {
    const Vec2 center = 0.5 * (poly.top[s] + poly.bot[s]);
    pyramid_accumulate(pyramid, poly.top[s], &out.at(s, PolyRoiFeature::kTop, 0));
    pyramid_accumulate(pyramid, center, &out.at(s, PolyRoiFeature::kCenter, 0));
    pyramid_accumulate(pyramid, poly.bot[s], &out.at(s, PolyRoiFeature::kBottom, 0));
  }
  return out;
}

PolyRoiFeature polyalign_grid(const FeaturePyramid& pyramid, const TextPolygon& poly) {
  validate_poly_pair(poly);
  const int s_count = poly.samples();
  const int c_count = pyramid.channels();
  PolyRoiFeature out{s_count, c_count,
                     std::vector<double>(static_cast<std::size_t>(s_count) * 3 * c_count, 0.0)};

  // Lengthwise parameter lambda in [0, S-1] spans the quads between
  // consecutive vertex pairs; crosswise mu in [0, 1] runs top to bottom.
  // Cell centers blend the corners of the covering quad bilinearly.
  const auto point_at = [&](double lambda, double mu) {
    int q = std::min(static_cast<int>(lambda), s_count - 2);
    const double a = lambda - q;
    const Vec2 top = (1.0 - a) * poly.top[q] + a * poly.top[q + 1];
    const Vec2 bot = (1.0 - a) * poly.bot[q] + a * poly.bot[q + 1];
    return (1.0 - mu) * top + mu * bot;
  };

  for (int k = 0; k < s_count; ++k) {
    const double lambda = (k + 0.5) * static_cast<double>(s_count - 1) / s_count;
    for (int r = 0; r < 3; ++r) {
      const double mu = (r + 0.5) / 3.0;
      pyramid_accumulate(pyramid, point_at(lambda, mu), &out.at(k, r, 0));
    }
  }
  return out;
}

PolyRoiFeature polyalign_bezier(const FeaturePyramid& pyramid, const BezierCurve& top,
                                const BezierCurve& bot, int samples) {
  if (samples < 2) throw DomainError("polyalign_bezier: need at least 2 samples");
  const int c_count = pyramid.channels();
  const int s_count = samples;
  PolyRoiFeature out{s_count, c_count,
                     std::vector<double>(static_cast<std::size_t>(s_count) * 3 * c_count, 0.0)};

  for (int k = 0; k < s_count; ++k) {
    const double t0 = static_cast<double>(k) / s_count;
    const double t1 = static_cast<double>(k + 1) / s_count;
    const double tc = (t0 + t1) / 2.0;

    const Vec2 top_c = bezier_point(top, tc);
    const Vec2 bot_c = bezier_point(bot, tc);

    // Local text direction: averaged boundary tangents at the cell center.
    Vec2 dir = bezier_derivative(top, tc) + bezier_derivative(bot, tc);
    const double len = norm(dir);
    dir = len > 0.0 ? dir / len : Vec2{0.0, 0.0};

    // Lengthwise cell extent measured along the center curve chord.
    const Vec2 mid0 = 0.5 * (bezier_point(top, t0) + bezier_point(bot, t0));
    const Vec2 mid1 = 0.5 * (bezier_point(top, t1) + bezier_point(bot, t1));
    const double extent = norm(mid1 - mid0);
    const Vec2 offset = (extent / 4.0) * dir;

    for (int r = 0; r < 3; ++r) {
      const double mu = (r + 0.5) / 3.0;
      const Vec2 center = (1.0 - mu) * top_c + mu * bot_c;
      std::vector<double> acc(static_cast<std::size_t>(c_count), 0.0);
      pyramid_accumulate(pyramid, center - offset, acc.data());
      pyramid_accumulate(pyramid, center + offset, acc.data());
      for (int c = 0; c < c_count; ++c) out.at(k, r, c) = acc[c] / 2.0;
    }
  }
  return out;
}

RoiGrid roialign_box(const FeaturePyramid& pyramid, const Box& box, int out_w, int out_h,
                     int sampling) {
  validate_box(box);
  if (out_w < 1 || out_h < 1 || sampling < 1)
    throw DomainError("roialign_box: output size and sampling must be >= 1");

  const int c_count = pyramid.channels();
  RoiGrid out{out_h, out_w, c_count,
              std::vector<double>(static_cast<std::size_t>(out_h) * out_w * c_count, 0.0)};

  const double x0 = box.cx - box.w / 2.0;
  const double y0 = box.cy - box.h / 2.0;
  const double bin_w = box.w / out_w;
  const double bin_h = box.h / out_h;
  const double inv = 1.0 / (sampling * sampling);

  for (int i = 0; i < out_h; ++i) {
    for (int j = 0; j < out_w; ++j) {
      double* cell = &out.at(i, j, 0);
      for (int ii = 0; ii < sampling; ++ii) {
        for (int jj = 0; jj < sampling; ++jj) {
          const double x = x0 + (j + (jj + 0.5) / sampling) * bin_w;
          const double y = y0 + (i + (ii + 0.5) / sampling) * bin_h;
          pyramid_accumulate(pyramid, {x, y}, cell);
        }
      }
      for (int c = 0; c < c_count; ++c) cell[c] *= inv;
    }
  }
  return out;
}

PolyAlignVariant polyalign_variant_from_string(const std::string& name) {
  if (name == "vertex") return PolyAlignVariant::vertex;
  if (name == "grid") return PolyAlignVariant::grid;
  if (name == "bezier") return PolyAlignVariant::bezier;
  throw ConfigError("unknown polyalign variant: " + name);
}

std::string to_string(PolyAlignVariant variant) {
  switch (variant) {
    case PolyAlignVariant::vertex: return "vertex";
    case PolyAlignVariant::grid: return "grid";
    case PolyAlignVariant::bezier: return "bezier";
  }
  return "vertex";
}

PolyRoiFeature poly_roi_features(const FeaturePyramid& pyramid, const TextPolygon& poly,
                                 PolyAlignVariant variant) {
  switch (variant) {
    case PolyAlignVariant::vertex: return polyalign_vertex(pyramid, poly);
    case PolyAlignVariant::grid: return polyalign_grid(pyramid, poly);
    case PolyAlignVariant::bezier:
      return polyalign_bezier(pyramid, fit_cubic(poly.top), fit_cubic(poly.bot),
                              poly.samples());
  }
  throw ConfigError("unknown polyalign variant");
}

}  // namespace textpoly
