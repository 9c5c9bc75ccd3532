// SPDX-License-Identifier: Apache-2.0
#include "ffgs/geometry.hpp"

#include "ffgs/common.hpp"

namespace ffgs {

uint64_t tensor_bytes_hash(const torch::Tensor& t, uint64_t seed) {
  auto c = t.detach().contiguous().cpu();
  return fnv1a64(c.data_ptr(), c.numel() * c.element_size(), seed);
}

void DepthMap::validate() const {
  TORCH_CHECK(values.defined() && validity.defined(), "depth map tensors must be defined");
  TORCH_CHECK(values.dim() == 2 && validity.sizes() == values.sizes(),
              "values and validity must both be HxW");
  TORCH_CHECK(validity.dtype() == torch::kBool, "validity must be boolean");
  auto valid = values.masked_select(validity);
  if (valid.numel() > 0) {
    TORCH_CHECK(all_finite(valid) && (valid > 0).all().item<bool>(),
                "valid depth entries must be strictly positive and finite");
  }
}

void FeaturePointCloud::validate() const {
  TORCH_CHECK(positions.defined() && positions.dim() == 2 && positions.size(1) == 3,
              "positions must be Nx3");
  TORCH_CHECK(all_finite(positions), "positions must be finite");
  if (features.defined()) {
    TORCH_CHECK(features.dim() == 2 && features.size(0) == positions.size(0),
                "feature count must equal point count");
  }
  if (view_ids.defined()) {
    TORCH_CHECK(view_ids.numel() == positions.size(0), "view id count must equal point count");
  }
}

ProjectionResult project(const torch::Tensor& positions, const CameraModel& cam) {
  auto dtype = positions.scalar_type();
  auto R = cam.rotation().to(dtype);
  auto t = cam.translation().to(dtype);
  auto p_cam = positions.matmul(R.t()) + t;  // Nx3
  auto z = p_cam.select(1, 2);
  // Guard the division for points on the camera plane; their depth still
  // reports the true (near-zero) value.
  auto z_safe = torch::where(z.abs() < 1e-12, torch::full_like(z, 1e-12), z);
  auto u = p_cam.select(1, 0) / z_safe * cam.fx() + cam.cx();
  auto v = p_cam.select(1, 1) / z_safe * cam.fy() + cam.cy();
  return {torch::stack({u, v}, 1), z};
}

FeaturePointCloud unproject(const DepthMap& depth, const CameraModel& cam, int64_t stride,
                            const torch::Tensor& pixel_features) {
  TORCH_CHECK(stride >= 1, "stride must be positive");
  auto dtype = depth.values.scalar_type();
  const int64_t H = depth.height(), W = depth.width();

  auto ys = torch::arange(0, H, stride, torch::kLong);
  auto xs = torch::arange(0, W, stride, torch::kLong);
  auto vals = depth.values.index({ys}).index({torch::indexing::Slice(), xs});
  auto valid = depth.validity.index({ys}).index({torch::indexing::Slice(), xs});

  auto grid_y = ys.to(dtype).unsqueeze(1).expand({ys.size(0), xs.size(0)}) + 0.5;
  auto grid_x = xs.to(dtype).unsqueeze(0).expand({ys.size(0), xs.size(0)}) + 0.5;

  auto keep = valid.reshape(-1);
  auto z = vals.reshape(-1).masked_select(keep);
  auto u = grid_x.reshape(-1).masked_select(keep);
  auto v = grid_y.reshape(-1).masked_select(keep);

  auto x = (u - cam.cx()) / cam.fx() * z;
  auto y = (v - cam.cy()) / cam.fy() * z;
  auto p_cam = torch::stack({x, y, z}, 1);

  auto R = cam.rotation().to(dtype);
  auto t = cam.translation().to(dtype);
  auto world = (p_cam - t).matmul(R);  // (p - t) R == R^T (p - t) row-wise

  FeaturePointCloud out;
  out.positions = world;
  if (pixel_features.defined()) {
    TORCH_CHECK(pixel_features.dim() == 3 && pixel_features.size(1) == H &&
                    pixel_features.size(2) == W,
                "pixel features must be CxHxW matching the depth map");
    auto feats = pixel_features.index({torch::indexing::Slice(), ys})
                     .index({torch::indexing::Slice(), torch::indexing::Slice(), xs})
                     .reshape({pixel_features.size(0), -1})
                     .t();  // PxC
    auto idx = keep.nonzero().squeeze(1);
    out.features = feats.index_select(0, idx);
  }
  return out;
}

DepthMap splat_template_depth(const FeaturePointCloud& points, const CameraModel& cam,
                              double radius_px) {
  TORCH_CHECK(points.size() > 0, "empty template");
  TORCH_CHECK(radius_px > 0, "splat radius must be positive");
  const int64_t H = cam.height, W = cam.width;

  auto proj = project(points.positions.detach().to(torch::kDouble), cam);
  auto pix = proj.pixels.contiguous();
  auto dep = proj.depths.contiguous();

  auto values = torch::zeros({H, W}, torch::kFloat);
  auto best = torch::full({H, W}, std::numeric_limits<float>::infinity(), torch::kFloat);
  auto va = values.accessor<float, 2>();
  auto ba = best.accessor<float, 2>();
  auto pa = pix.accessor<double, 2>();
  auto da = dep.accessor<double, 1>();

  const double r2 = radius_px * radius_px;
  for (int64_t i = 0; i < points.size(); ++i) {
    const double z = da[i];
    if (z <= 0) continue;
    const double u = pa[i][0], v = pa[i][1];
    // Pixels whose center (x+0.5, y+0.5) lies within radius_px of (u, v).
    int64_t x0 = (int64_t)std::ceil(u - radius_px - 0.5);
    int64_t x1 = (int64_t)std::floor(u + radius_px - 0.5);
    int64_t y0 = (int64_t)std::ceil(v - radius_px - 0.5);
    int64_t y1 = (int64_t)std::floor(v + radius_px - 0.5);
    x0 = std::max<int64_t>(x0, 0);
    y0 = std::max<int64_t>(y0, 0);
    x1 = std::min<int64_t>(x1, W - 1);
    y1 = std::min<int64_t>(y1, H - 1);
    for (int64_t y = y0; y <= y1; ++y) {
      for (int64_t x = x0; x <= x1; ++x) {
        const double du = x + 0.5 - u, dv = y + 0.5 - v;
        if (du * du + dv * dv > r2) continue;
        if (z < ba[y][x]) {
          ba[y][x] = (float)z;
          va[y][x] = (float)z;
        }
      }
    }
  }
  DepthMap out;
  out.values = values;
  out.validity = best.isfinite();
  return out;
}

VisibilityWeights visibility_weights(const FeaturePointCloud& points,
                                     const std::vector<CameraModel>& cams,
                                     const std::vector<DepthMap>& view_depths,
                                     const VisibilityOptions& opts) {
  TORCH_CHECK(cams.size() == view_depths.size(), "one depth map per camera required");
  TORCH_CHECK(!cams.empty(), "at least one view required");
  const int64_t M = (int64_t)cams.size();
  const int64_t N = points.size();

  torch::NoGradGuard no_grad;
  auto pos = points.positions.detach().to(torch::kDouble);
  auto w = torch::zeros({M, N}, torch::kDouble);
  const double inv_two_tau2 = 1.0 / (2.0 * opts.tau * opts.tau);

  for (int64_t m = 0; m < M; ++m) {
    const auto& cam = cams[m];
    const auto& dm = view_depths[m];
    auto proj = project(pos, cam);
    auto u = proj.pixels.select(1, 0);
    auto v = proj.pixels.select(1, 1);
    auto z = proj.depths;

    auto xi = u.floor().clamp(0, cam.width - 1).to(torch::kLong);
    auto yi = v.floor().clamp(0, cam.height - 1).to(torch::kLong);
    auto flat = yi * cam.width + xi;
    auto depth_at = dm.values.reshape(-1).to(torch::kDouble).index_select(0, flat);
    auto valid_at = dm.validity.reshape(-1).index_select(0, flat);

    auto in_frustum = (z > opts.znear) & (u >= 0) & (u < (double)cam.width) & (v >= 0) &
                      (v < (double)cam.height) & valid_at;
    auto score = torch::exp(-(z - depth_at).square() * inv_two_tau2);
    w[m] = torch::where(in_frustum, score, torch::zeros_like(score));
  }

  auto col = w.sum(0);  // N
  auto fallback = torch::full({M, N}, 1.0 / (double)M, torch::kDouble);
  auto normalized = w / col.clamp_min(1e-30).unsqueeze(0);
  auto out = torch::where((col > 0).unsqueeze(0), normalized, fallback);
  return {out.to(points.positions.scalar_type())};
}

torch::Tensor sample_bilinear(const torch::Tensor& map, const torch::Tensor& pixels) {
  TORCH_CHECK(map.dim() == 3, "map must be CxHxW");
  const int64_t C = map.size(0), H = map.size(1), W = map.size(2);
  auto dtype = map.scalar_type();

  // Interpolate between pixel centers; zero padding outside the image.
  auto gx = pixels.select(1, 0).to(dtype) - 0.5;
  auto gy = pixels.select(1, 1).to(dtype) - 0.5;
  auto x0 = gx.floor();
  auto y0 = gy.floor();
  auto wx = gx - x0;
  auto wy = gy - y0;

  auto flat = map.reshape({C, H * W});
  auto corner = [&](const torch::Tensor& xi, const torch::Tensor& yi) {
    auto inside = (xi >= 0) & (xi < W) & (yi >= 0) & (yi < H);
    auto xc = xi.clamp(0, W - 1).to(torch::kLong);
    auto yc = yi.clamp(0, H - 1).to(torch::kLong);
    auto vals = flat.index_select(1, yc * W + xc).t();  // NxC
    return vals * inside.to(dtype).unsqueeze(1);
  };

  auto v00 = corner(x0, y0);
  auto v10 = corner(x0 + 1, y0);
  auto v01 = corner(x0, y0 + 1);
  auto v11 = corner(x0 + 1, y0 + 1);

  auto wxu = wx.unsqueeze(1);
  auto wyu = wy.unsqueeze(1);
  return v00 * (1 - wxu) * (1 - wyu) + v10 * wxu * (1 - wyu) + v01 * (1 - wxu) * wyu +
         v11 * wxu * wyu;
}

}  // namespace ffgs
