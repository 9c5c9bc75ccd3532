// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <vector>

#include "ffgs/camera.hpp"

namespace ffgs {

// Depth image in meters. Every valid entry is strictly positive and finite;
// invalid pixels carry no depth information.
struct DepthMap {
  torch::Tensor values;    // HxW float
  torch::Tensor validity;  // HxW bool

  int64_t height() const { return values.size(0); }
  int64_t width() const { return values.size(1); }
  void validate() const;
};

// 3D points in the world frame with optional per-point features and an
// optional source-view id per point.
struct FeaturePointCloud {
  torch::Tensor positions;  // Nx3
  torch::Tensor features;   // NxC or undefined
  torch::Tensor view_ids;   // N int64 or undefined

  int64_t size() const { return positions.defined() ? positions.size(0) : 0; }
  void validate() const;
};

// Per-view, per-point weights in [0, 1]. For every point seen by at least
// one view the column sums to 1; points seen by no view fall back to the
// uniform 1/M column.
struct VisibilityWeights {
  torch::Tensor weights;  // MxN
};

struct ProjectionResult {
  torch::Tensor pixels;  // Nx2 continuous pixel coordinates (u, v)
  torch::Tensor depths;  // N camera-frame z; negative for points behind the camera
};

// Perspective projection. Differentiable w.r.t. point positions; points
// behind the camera are reported with their (negative) camera depth rather
// than dropped.
ProjectionResult project(const torch::Tensor& positions, const CameraModel& cam);

inline ProjectionResult project(const FeaturePointCloud& points, const CameraModel& cam) {
  return project(points.positions, cam);
}

// One world point per valid pixel (optionally subsampled by `stride`). When
// `pixel_features` (CxHxW) is given, each point carries that pixel's feature
// vector. Differentiable w.r.t. the depth values.
FeaturePointCloud unproject(const DepthMap& depth, const CameraModel& cam, int64_t stride = 1,
                            const torch::Tensor& pixel_features = {});

// Z-buffered disk splatting of a point set; pixels covered by no splat are
// invalid. Throws on an empty point cloud.
DepthMap splat_template_depth(const FeaturePointCloud& points, const CameraModel& cam,
                              double radius_px);

struct VisibilityOptions {
  double tau = 0.02;    // depth-consistency bandwidth, meters
  double znear = 0.01;  // points closer than this are treated as not visible
};

// Depth-consistency visibility: per view m, exp(-(z - D_m(u))^2 / (2 tau^2))
// for points projecting in front of the near plane onto a valid depth pixel,
// 0 otherwise; normalized per point with a uniform 1/M fallback.
VisibilityWeights visibility_weights(const FeaturePointCloud& points,
                                     const std::vector<CameraModel>& cams,
                                     const std::vector<DepthMap>& view_depths,
                                     const VisibilityOptions& opts = {});

// Bilinear interpolation of a CxHxW map at continuous pixel coordinates
// (Nx2), zero outside the image. Differentiable w.r.t. map and coordinates.
torch::Tensor sample_bilinear(const torch::Tensor& map, const torch::Tensor& pixels);

}  // namespace ffgs
