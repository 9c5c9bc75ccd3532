// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <vector>

namespace ffgs {

// Calibrated pinhole camera. World frame is right-handed; the extrinsics map
// world to camera coordinates with +z forward, +x right, +y down. Pixel
// origin is the top-left image corner and pixel (i, j) has its center at
// (i + 0.5, j + 0.5) in continuous pixel coordinates.
struct CameraModel {
  torch::Tensor intrinsics;  // 3x3 double, upper triangular, fx/fy > 0
  torch::Tensor extrinsics;  // 4x4 double, rigid world-to-camera transform
  int64_t width = 0;
  int64_t height = 0;

  double fx() const { return intrinsics[0][0].item<double>(); }
  double fy() const { return intrinsics[1][1].item<double>(); }
  double cx() const { return intrinsics[0][2].item<double>(); }
  double cy() const { return intrinsics[1][2].item<double>(); }

  torch::Tensor rotation() const { return extrinsics.slice(0, 0, 3).slice(1, 0, 3); }
  torch::Tensor translation() const { return extrinsics.slice(0, 0, 3).slice(1, 3, 4).squeeze(1); }
  // Camera center in world coordinates, -R^T t.
  torch::Tensor center() const;

  // Throws c10::Error if the type invariants are violated (non-positive
  // focal lengths, non-rigid extrinsics, non-positive image size).
  void validate(double tol = 1e-6) const;
};

CameraModel make_camera(double fx, double fy, double cx, double cy,
                        const torch::Tensor& extrinsics, int64_t width, int64_t height);

// World-to-camera transform for a camera at `position` whose optical axis
// points at `look_at`, with `up` fixing the roll (image up = world up).
torch::Tensor look_at_extrinsics(const torch::Tensor& position, const torch::Tensor& look_at,
                                 const torch::Tensor& up);

}  // namespace ffgs
