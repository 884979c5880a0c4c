#include "textpoly/refine.hpp"

#include <algorithm>
#include <cmath>

namespace textpoly {

namespace {

constexpr double kDiffEpsilon = 1e-12;

double clamp_sym(double v, double limit) { return std::clamp(v, -limit, limit); }

void check_same_samples(int a, int b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": vertex counts differ");
}

}  // namespace

void CascadeConfig::validate() const {
  if (box_stages < 1 || poly_stages < 1)
    throw ConfigError("cascade: box and polygon stage counts must be >= 1");
  if (proposals < 1) throw ConfigError("cascade: proposal count must be >= 1");
  if (samples < 2) throw ConfigError("cascade: sample count must be >= 2");
  if (!(delta_clip > 0.0)) throw ConfigError("cascade: delta_clip must be positive");
  if (box_roi_size < 1 || box_roi_sampling < 1)
    throw ConfigError("cascade: box RoI size and sampling must be >= 1");
}

Box apply_box_delta(const Box& box, const BoxDelta& d) {
  validate_box(box);
  return {box.cx + d.dx * box.w, box.cy + d.dy * box.h, box.w * std::exp(d.dw),
          box.h * std::exp(d.dh)};
}

PolyCenterDiff to_center_diff(const TextPolygon& poly) {
  check_same_samples(static_cast<int>(poly.top.size()), static_cast<int>(poly.bot.size()),
                     "to_center_diff");
  PolyCenterDiff cd;
  cd.center.resize(poly.top.size());
  cd.diff.resize(poly.top.size());
  for (std::size_t s = 0; s < poly.top.size(); ++s) {
    cd.center[s] = {(poly.top[s].x + poly.bot[s].x) / 2.0,
                    (poly.top[s].y + poly.bot[s].y) / 2.0};
    cd.diff[s] = poly.top[s] - poly.bot[s];
  }
  return cd;
}

TextPolygon from_center_diff(const PolyCenterDiff& cd) {
  check_same_samples(cd.samples(), static_cast<int>(cd.diff.size()), "from_center_diff");
  TextPolygon poly;
  poly.top.resize(cd.center.size());
  poly.bot.resize(cd.center.size());
  for (std::size_t s = 0; s < cd.center.size(); ++s) {
    const Vec2 half = cd.diff[s] / 2.0;
    poly.top[s] = cd.center[s] + half;
    poly.bot[s] = cd.center[s] - half;
  }
  return poly;
}

PolyCenterDiff apply_poly_delta(const PolyCenterDiff& cd, const PolyDelta& d) {
  check_same_samples(cd.samples(), d.samples(), "apply_poly_delta");
  PolyCenterDiff out;
  out.center.resize(cd.center.size());
  out.diff.resize(cd.center.size());
  for (std::size_t s = 0; s < cd.center.size(); ++s) {
    out.center[s] = {cd.center[s].x + d.d_center[s].x * std::abs(cd.diff[s].x),
                     cd.center[s].y + d.d_center[s].y * std::abs(cd.diff[s].y)};
    out.diff[s] = {cd.diff[s].x * std::exp(d.d_diff[s].x),
                   cd.diff[s].y * std::exp(d.d_diff[s].y)};
  }
  return out;
}

namespace {

// Shared machinery for the exact and clamped inverses. In strict mode any
// unrepresentable component throws; otherwise it is frozen at zero.
PolyDelta inverse_impl(const PolyCenterDiff& cd, const PolyCenterDiff& target, bool strict) {
  check_same_samples(cd.samples(), target.samples(), "inverse_poly_delta");
  PolyDelta d;
  d.d_center.resize(cd.center.size());
  d.d_diff.resize(cd.center.size());

  const auto component = [&](double cur_diff, double tgt_diff, double cur_center,
                             double tgt_center, double& d_center, double& d_diff) {
    const bool cur_zero = std::abs(cur_diff) < kDiffEpsilon;
    const bool tgt_zero = std::abs(tgt_diff) < kDiffEpsilon;
    if (cur_zero || tgt_zero || (cur_diff > 0.0) != (tgt_diff > 0.0)) {
      if (strict)
        throw NotRepresentableError(
            "inverse_poly_delta: difference sign flip or zero difference cannot be "
            "reached in one step");
      d_center = 0.0;
      d_diff = 0.0;
      return;
    }
    d_diff = std::log(tgt_diff / cur_diff);
    d_center = (tgt_center - cur_center) / std::abs(cur_diff);
  };

  for (std::size_t s = 0; s < cd.center.size(); ++s) {
    component(cd.diff[s].x, target.diff[s].x, cd.center[s].x, target.center[s].x,
              d.d_center[s].x, d.d_diff[s].x);
    component(cd.diff[s].y, target.diff[s].y, cd.center[s].y, target.center[s].y,
              d.d_center[s].y, d.d_diff[s].y);
  }
  return d;
}

}  // namespace

PolyDelta inverse_poly_delta(const PolyCenterDiff& cd, const PolyCenterDiff& target) {
  return inverse_impl(cd, target, true);
}

PolyDelta inverse_poly_delta_clamped(const PolyCenterDiff& cd, const PolyCenterDiff& target) {
  return inverse_impl(cd, target, false);
}

PolyDelta clamp_poly_delta(PolyDelta d, double limit) {
  for (auto& v : d.d_center) v = {clamp_sym(v.x, limit), clamp_sym(v.y, limit)};
  for (auto& v : d.d_diff) v = {clamp_sym(v.x, limit), clamp_sym(v.y, limit)};
  return d;
}

BoxDelta clamp_box_delta(BoxDelta d, double limit) {
  d.dx = clamp_sym(d.dx, limit);
  d.dy = clamp_sym(d.dy, limit);
  d.dw = clamp_sym(d.dw, limit);
  d.dh = clamp_sym(d.dh, limit);
  return d;
}

BezierDelta default_transition_delta(const Box& box) {
  validate_box(box);
  BezierDelta delta;
  const double spread[4] = {-0.5, -1.0 / 6.0, 1.0 / 6.0, 0.5};
  const bool horizontal = box.w >= box.h;
  for (int j = 0; j < 4; ++j)
    delta.dp[j] = horizontal ? Vec2{spread[j], 0.0} : Vec2{0.0, spread[j]};
  // Width at half the shorter side: wp = sqrt(wh) * exp(dwp) = min(w,h)/2.
  delta.dwp = std::log(0.5 * std::min(box.w, box.h) / std::sqrt(box.w * box.h));
  return delta;
}

CascadeResult run_cascade(const CascadeConfig& config, const Regressor& regressor,
                          const FeaturePyramid& pyramid, const std::vector<Box>& init_boxes,
                          PolyAlignVariant variant) {
  config.validate();
  validate_pyramid(pyramid);
  if (static_cast<int>(init_boxes.size()) != config.proposals)
    throw DomainError("run_cascade: init_boxes size must equal the proposal count");
  for (const auto& b : init_boxes) validate_box(b);

  const int n = config.proposals;
  CascadeResult result;
  result.polys.resize(n);
  result.scores.resize(n);

  const int total_stages = config.box_stages + 1 + config.poly_stages;
  result.trace.resize(total_stages);
  for (int k = 0; k < config.box_stages; ++k) {
    result.trace[k].stage = k;
    result.trace[k].kind = StageRecord::Kind::box;
    result.trace[k].boxes.resize(n);
  }
  auto& transition = result.trace[config.box_stages];
  transition.stage = config.box_stages;
  transition.kind = StageRecord::Kind::transition;
  transition.polys.resize(n);
  for (int m = 0; m < config.poly_stages; ++m) {
    auto& rec = result.trace[config.box_stages + 1 + m];
    rec.stage = config.box_stages + 1 + m;
    rec.kind = StageRecord::Kind::poly;
    rec.polys.resize(n);
  }

  // Proposals are independent; state lives entirely in locals so this loop
  // could be parallelized without changing results.
  for (int i = 0; i < n; ++i) {
    Box box = init_boxes[i];
    for (int k = 0; k < config.box_stages; ++k) {
      const RoiGrid feat =
          roialign_box(pyramid, box, config.box_roi_size, config.box_roi_size,
                       config.box_roi_sampling);
      const BoxDelta d =
          clamp_box_delta(regressor.box_delta(k, i, box, feat), config.delta_clip);
      box = apply_box_delta(box, d);
      result.trace[k].boxes[i] = box;
    }

    const RoiGrid trans_feat = roialign_box(pyramid, box, config.box_roi_size,
                                            config.box_roi_size, config.box_roi_sampling);
    BezierDelta bez;
    if (!regressor.transition_delta(i, box, trans_feat, bez))
      bez = default_transition_delta(box);
    TextPolygon poly = box_to_poly(box, bez, config.samples);
    transition.polys[i] = poly;

    PolyCenterDiff cd = to_center_diff(poly);
    for (int m = 0; m < config.poly_stages; ++m) {
      const PolyRoiFeature feat = poly_roi_features(pyramid, from_center_diff(cd), variant);
      const PolyDelta d =
          clamp_poly_delta(regressor.poly_delta(m, i, cd, feat), config.delta_clip);
      cd = apply_poly_delta(cd, d);
      result.trace[config.box_stages + 1 + m].polys[i] = from_center_diff(cd);
    }

    result.polys[i] = from_center_diff(cd);
    const PolyRoiFeature final_feat = poly_roi_features(pyramid, result.polys[i], variant);
    result.scores[i] = regressor.score(i, final_feat);
  }
  return result;
}

}  // namespace textpoly
