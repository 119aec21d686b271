#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "viasnet/core/tensor.hpp"

namespace viasnet::io {

// Single-file archive: magic "VCKPT1", version, JSON metadata (model config,
// ablation mask, step counter), then named f64 tensors stored bit-exact.
struct Checkpoint {
    std::string meta_json; // canonical serialized form; parse with nlohmann
    std::map<std::string, Tensor> tensors;
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

} // namespace viasnet::io
