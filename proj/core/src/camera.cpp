// SPDX-License-Identifier: Apache-2.0
#include "ffgs/camera.hpp"

namespace ffgs {

torch::Tensor CameraModel::center() const {
  auto R = rotation();
  auto t = translation();
  return -R.t().matmul(t);
}

void CameraModel::validate(double tol) const {
  TORCH_CHECK(intrinsics.defined() && intrinsics.sizes() == torch::IntArrayRef({3, 3}),
              "intrinsics must be 3x3");
  TORCH_CHECK(extrinsics.defined() && extrinsics.sizes() == torch::IntArrayRef({4, 4}),
              "extrinsics must be 4x4");
  TORCH_CHECK(width > 0 && height > 0, "image size must be positive");
  auto K = intrinsics.to(torch::kDouble);
  TORCH_CHECK(K[0][0].item<double>() > 0 && K[1][1].item<double>() > 0,
              "focal lengths must be strictly positive");
  TORCH_CHECK(std::abs(K[1][0].item<double>()) == 0 && std::abs(K[2][0].item<double>()) == 0 &&
                  std::abs(K[2][1].item<double>()) == 0,
              "intrinsics must be upper triangular");
  TORCH_CHECK(std::abs(K[2][2].item<double>() - 1.0) < tol, "K[2][2] must be 1");

  auto E = extrinsics.to(torch::kDouble);
  auto R = E.slice(0, 0, 3).slice(1, 0, 3);
  auto err = (R.matmul(R.t()) - torch::eye(3, torch::kDouble)).abs().max().item<double>();
  TORCH_CHECK(err < tol, "rotation block is not orthonormal, max deviation ", err);
  auto det = torch::linalg_det(R).item<double>();
  TORCH_CHECK(std::abs(det - 1.0) < tol, "rotation determinant must be +1, got ", det);
  auto bottom = E[3];
  TORCH_CHECK(std::abs(bottom[0].item<double>()) < tol && std::abs(bottom[1].item<double>()) < tol &&
                  std::abs(bottom[2].item<double>()) < tol &&
                  std::abs(bottom[3].item<double>() - 1.0) < tol,
              "extrinsics bottom row must be [0 0 0 1]");
}

CameraModel make_camera(double fx, double fy, double cx, double cy,
                        const torch::Tensor& extrinsics, int64_t width, int64_t height) {
  CameraModel cam;
  cam.intrinsics = torch::zeros({3, 3}, torch::kDouble);
  cam.intrinsics[0][0] = fx;
  cam.intrinsics[1][1] = fy;
  cam.intrinsics[0][2] = cx;
  cam.intrinsics[1][2] = cy;
  cam.intrinsics[2][2] = 1.0;
  cam.extrinsics = extrinsics.to(torch::kDouble);
  cam.width = width;
  cam.height = height;
  cam.validate();
  return cam;
}

torch::Tensor look_at_extrinsics(const torch::Tensor& position, const torch::Tensor& look_at,
                                 const torch::Tensor& up) {
  auto pos = position.to(torch::kDouble);
  auto fwd = (look_at.to(torch::kDouble) - pos);
  fwd = fwd / fwd.norm();
  auto u = up.to(torch::kDouble);
  u = u / u.norm();
  // Image y points down: project world "down" onto the plane orthogonal to fwd.
  auto down = -(u - fwd.dot(u) * fwd);
  auto dn = down.norm().item<double>();
  TORCH_CHECK(dn > 1e-9, "look direction is parallel to up");
  down = down / down.norm();
  auto right = torch::cross(down, fwd, 0);

  auto E = torch::eye(4, torch::kDouble);
  E[0].slice(0, 0, 3) = right;
  E[1].slice(0, 0, 3) = down;
  E[2].slice(0, 0, 3) = fwd;
  auto R = E.slice(0, 0, 3).slice(1, 0, 3);
  E.slice(0, 0, 3).slice(1, 3, 4) = -R.matmul(pos.unsqueeze(1));
  return E;
}

}  // namespace ffgs
