#pragma once

#include <memory>
#include <vector>

#include "textpoly/bezier.hpp"
#include "textpoly/core.hpp"
#include "textpoly/polyalign.hpp"

namespace textpoly {

// Box refinement offsets: center shifts as fractions of the box size,
// log-scale size updates.
struct BoxDelta {
  double dx = 0.0;
  double dy = 0.0;
  double dw = 0.0;
  double dh = 0.0;
};

// Per-vertex-pair state during polygon refinement: midpoint of the top/bottom
// pair and the top-minus-bottom difference vector.
struct PolyCenterDiff {
  std::vector<Vec2> center;
  std::vector<Vec2> diff;

  int samples() const { return static_cast<int>(center.size()); }
};

// Scale/location-invariant refinement offsets: center moves are scaled by the
// current difference magnitudes, difference updates are log-scale.
struct PolyDelta {
  std::vector<Vec2> d_center;
  std::vector<Vec2> d_diff;

  int samples() const { return static_cast<int>(d_center.size()); }
};

struct CascadeConfig {
  int box_stages = 3;   // K
  int poly_stages = 3;  // M
  int proposals = 300;  // N
  int samples = 8;      // S
  double delta_clip = 4.0;
  int box_roi_size = 7;
  int box_roi_sampling = 2;

  void validate() const;
};

Box apply_box_delta(const Box& box, const BoxDelta& d);

PolyCenterDiff to_center_diff(const TextPolygon& poly);
TextPolygon from_center_diff(const PolyCenterDiff& cd);

// One refinement step. Difference signs are preserved: exp() scaling cannot
// flip top/bottom ordering, and a zero difference freezes its center axis.
PolyCenterDiff apply_poly_delta(const PolyCenterDiff& cd, const PolyDelta& d);

// Exact inverse of apply_poly_delta. Throws NotRepresentableError when any
// difference component has mismatched sign or magnitude below 1e-12 - one
// update step cannot flip the top/bottom ordering.
PolyDelta inverse_poly_delta(const PolyCenterDiff& cd, const PolyCenterDiff& target);

// Best-effort inverse used by the oracle regressor: components the exact
// inverse cannot represent are frozen at zero instead of throwing.
PolyDelta inverse_poly_delta_clamped(const PolyCenterDiff& cd, const PolyCenterDiff& target);

// Clamps every delta component into [-limit, limit].
PolyDelta clamp_poly_delta(PolyDelta d, double limit);
BoxDelta clamp_box_delta(BoxDelta d, double limit);

// Supplies per-stage refinement offsets given the current geometry and its
// sampled features. Implementations must be safe for concurrent read-only
// invocation; the cascade never shares mutable state across proposals.
class Regressor {
 public:
  virtual ~Regressor() = default;

  virtual BoxDelta box_delta(int stage, int proposal, const Box& box,
                             const RoiGrid& feature) const = 0;

  // Box-to-polygon transition. Returning false asks the cascade to use the
  // default placement (controls spread along the longer box axis).
  virtual bool transition_delta(int proposal, const Box& box, const RoiGrid& feature,
                                BezierDelta& out) const = 0;

  virtual PolyDelta poly_delta(int stage, int proposal, const PolyCenterDiff& cd,
                               const PolyRoiFeature& feature) const = 0;

  virtual double score(int proposal, const PolyRoiFeature& feature) const = 0;
};

// Default transition placement when the regressor abstains: control points
// spread along the longer box axis, width at half the shorter side.
BezierDelta default_transition_delta(const Box& box);

struct StageRecord {
  enum class Kind { box, transition, poly };

  int stage = 0;
  Kind kind = Kind::box;
  std::vector<Box> boxes;          // kind == box
  std::vector<TextPolygon> polys;  // kind == transition or poly
};

struct CascadeResult {
  std::vector<TextPolygon> polys;
  std::vector<double> scores;
  std::vector<StageRecord> trace;
};

// Runs K box stages, the box-to-polygon transition, and M polygon stages.
// Every stage consumes the previous stage's geometry as a constant value
// snapshot; the trace records each snapshot.
CascadeResult run_cascade(const CascadeConfig& config, const Regressor& regressor,
                          const FeaturePyramid& pyramid, const std::vector<Box>& init_boxes,
                          PolyAlignVariant variant = PolyAlignVariant::vertex);

}  // namespace textpoly
