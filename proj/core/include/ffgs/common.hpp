// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffgs {

// Thrown on malformed command lines and config files. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on missing/corrupt files and unwritable paths. Exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a training loss goes non-finite. Exit code 2.
struct TrainingDiverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline uint64_t fnv1a64(const void* data, size_t n, uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s, uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), seed);
}

// Hash of a tensor's raw storage bytes, independent of autograd state.
uint64_t tensor_bytes_hash(const torch::Tensor& t, uint64_t seed = 0xcbf29ce484222325ull);

inline bool all_finite(const torch::Tensor& t) {
  return torch::isfinite(t).all().item<bool>();
}

}  // namespace ffgs
