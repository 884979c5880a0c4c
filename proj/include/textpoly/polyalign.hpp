#pragma once

#include <string>
#include <vector>

#include "textpoly/bezier.hpp"
#include "textpoly/core.hpp"

namespace textpoly {

// One dense feature grid. data is row-major [i][j][c] and the value at
// data(i, j) lives at image coordinates ((j+0.5)*stride, (i+0.5)*stride).
struct FeatureMap {
  int height = 0;
  int width = 0;
  int channels = 0;
  double stride = 1.0;
  std::vector<double> data;

  double at(int i, int j, int c) const {
    return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
  }
  double& at(int i, int j, int c) {
    return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
  }
};

void validate_feature_map(const FeatureMap& map);

// Ordered levels with strictly increasing stride; all levels share channels.
struct FeaturePyramid {
  std::vector<FeatureMap> levels;

  int channels() const { return levels.empty() ? 0 : levels.front().channels; }
};

void validate_pyramid(const FeaturePyramid& pyramid);

// Features sampled along a polygon: samples x 3 x channels, where the middle
// row holds the centerline and the outer rows hold top/bottom boundaries.
struct PolyRoiFeature {
  int samples = 0;
  int channels = 0;
  std::vector<double> data;

  static constexpr int kTop = 0;
  static constexpr int kCenter = 1;
  static constexpr int kBottom = 2;

  double at(int s, int row, int c) const {
    return data[(static_cast<std::size_t>(s) * 3 + row) * channels + c];
  }
  double& at(int s, int row, int c) {
    return data[(static_cast<std::size_t>(s) * 3 + row) * channels + c];
  }
};

// Output of box RoIAlign: rows x cols x channels.
struct RoiGrid {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<double> data;

  double at(int i, int j, int c) const {
    return data[(static_cast<std::size_t>(i) * cols + j) * channels + c];
  }
  double& at(int i, int j, int c) {
    return data[(static_cast<std::size_t>(i) * cols + j) * channels + c];
  }
};

// Bilinear interpolation of all channels at image coordinates (x, y).
// Coordinates are clamped to the cell-center rectangle (replicate padding).
std::vector<double> bilinear(const FeatureMap& map, double x, double y);

// Samples at each top vertex, pair midpoint, and bottom vertex; levels are
// combined by summation.
PolyRoiFeature polyalign_vertex(const FeaturePyramid& pyramid, const TextPolygon& poly);

// Samples at the centers of an S x 3 lattice of cells covering the polygon.
PolyRoiFeature polyalign_grid(const FeaturePyramid& pyramid, const TextPolygon& poly);

// Boundary curves instead of vertex lists; each lattice cell averages two
// samples placed along the local text direction.
PolyRoiFeature polyalign_bezier(const FeaturePyramid& pyramid, const BezierCurve& top,
                                const BezierCurve& bot, int samples = 8);

// Standard RoIAlign over an axis-aligned box.
RoiGrid roialign_box(const FeaturePyramid& pyramid, const Box& box, int out_w, int out_h,
                     int sampling);

enum class PolyAlignVariant { vertex, grid, bezier };

PolyAlignVariant polyalign_variant_from_string(const std::string& name);
std::string to_string(PolyAlignVariant variant);

// Dispatch on the configured variant. The bezier variant lifts the polygon
// boundaries to cubics with fit_cubic first.
PolyRoiFeature poly_roi_features(const FeaturePyramid& pyramid, const TextPolygon& poly,
                                 PolyAlignVariant variant);

}  // namespace textpoly
