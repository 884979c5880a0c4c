#pragma once

#include <span>
#include <vector>

#include "textpoly/bezier.hpp"
#include "textpoly/core.hpp"

namespace textpoly {

enum class Orientation { forward, reversed };

struct Prediction {
  TextPolygon poly;
  double score = 0.5;  // clamped into (0, 1) via clamp_score
};

struct GroundTruth {
  TextPolygon poly;  // single "text" class
};

struct MatchPair {
  int pred = -1;
  int gt = -1;
  Orientation orientation = Orientation::forward;
  double cost = 0.0;
};

using MatchResult = std::vector<MatchPair>;

struct OrientedCost {
  double cost = 0.0;
  Orientation orientation = Orientation::forward;
};

struct DenseCost {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
};

struct CostMatrix {
  DenseCost cost;
  std::vector<Orientation> orientation;  // rows x cols, chosen per entry

  Orientation orientation_at(int i, int j) const {
    return orientation[static_cast<std::size_t>(i) * cost.cols + j];
  }
};

struct MatchWeights {
  double w_class = 2.0;
  double w_coord = 5.0;
};

// Reversed traversal with swapped boundaries: pair k of the result is
// (bot[S-1-k], top[S-1-k]). Involution.
TextPolygon reverse_polygon(const TextPolygon& poly);

// Sum of absolute coordinate differences over all 4S coordinates.
double l1_poly_cost(const TextPolygon& pred, const TextPolygon& gt);

// Minimum L1 cost over the ground truth's two orientations; ties pick
// forward.
OrientedCost oriented_l1_cost(const TextPolygon& pred, const TextPolygon& gt);

double clamp_score(double score);

// Focal-style class matching cost, decreasing in score (alpha=0.25, gamma=2).
double focal_class_cost(double score);

// Entry (i, j) = w_class * focal(score_i) + w_coord * oriented L1(pred_i, gt_j).
// With use_oea false the orientation minimum is skipped and costs are
// forward-only.
CostMatrix build_cost_matrix(std::span<const Prediction> preds,
                             std::span<const GroundTruth> gts, double w_class,
                             double w_coord, bool use_oea = true);

// Minimum-cost assignment of every column to a distinct row (cols <= rows).
// Returns, for each column, its assigned row.
std::vector<int> hungarian(const DenseCost& cost);

// Convenience wrapper: cost matrix + assignment -> per-pair match records.
MatchResult match_polygons(std::span<const Prediction> preds,
                           std::span<const GroundTruth> gts, const MatchWeights& weights,
                           bool use_oea = true);

struct SetLoss {
  double total = 0.0;
  double class_term = 0.0;  // already weighted
  double coord_term = 0.0;
  // d(total)/d(coordinate) for every predicted polygon, stored in the same
  // top/bot layout as the predictions.
  std::vector<TextPolygon> coord_grad;
};

// Focal classification loss over all predictions (matched pairs count as
// positives) plus the L1 term over matched pairs in the orientation chosen
// at matching time.
SetLoss set_prediction_loss(std::span<const Prediction> preds,
                            std::span<const GroundTruth> gts, const MatchResult& match,
                            double w_class, double w_coord);

}  // namespace textpoly
