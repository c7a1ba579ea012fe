// Copyright 2026 The hegel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEGEL_CHECKPOINT_H_
#define HEGEL_CHECKPOINT_H_

#include <string>

#include "hegel/model.h"
#include "json.hpp"

namespace hegel {

inline constexpr char kCheckpointMagic[] = "HGCKPT1";

// Trained state. Tensors are kept at 32-bit, the on-disk precision.
struct Checkpoint {
  ModelConfig config;
  ParameterSet<float> params;
  std::size_t epoch = 0;          // 1-based epoch that produced `params`
  double val_rouge1_f = 0;        // in [0, 1]
  nlohmann::json metadata = nlohmann::json::object();  // training config, manifest
};

template <typename T>
void snapshot_params(const ParameterSet<T>& from, ParameterSet<float>& to);

// Model with the checkpoint's config and weights, cast to T.
template <typename T>
HegelModel<T> restore_model(const Checkpoint& checkpoint);

// Layout: magic, u32 little-endian header length, JSON header (config, epoch,
// score, metadata, tensor names and shapes), tensors as f32 LE in header order.
std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint parse_checkpoint(const std::string& bytes);
void write_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace hegel

#endif  // HEGEL_CHECKPOINT_H_
