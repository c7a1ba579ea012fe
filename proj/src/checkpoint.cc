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

#include "hegel/checkpoint.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hegel {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

template <typename T>
void snapshot_params(const ParameterSet<T>& from, ParameterSet<float>& to) {
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto& p = from[i];
    Parameter<float>& dst = to.contains(p.name)
                                ? to.get(p.name)
                                : to.add(p.name, p.value.rows(), p.value.cols());
    if (dst.value.rows() != p.value.rows() || dst.value.cols() != p.value.cols()) {
      throw ShapeError("snapshot_params: shape mismatch for " + p.name);
    }
    dst.value = p.value.template cast<float>();
  }
}

template <typename T>
HegelModel<T> restore_model(const Checkpoint& checkpoint) {
  HegelModel<T> model(checkpoint.config, 0);
  auto& params = model.params();
  if (params.size() != checkpoint.params.size()) {
    throw FormatError("checkpoint has " + std::to_string(checkpoint.params.size()) +
                      " tensors, model expects " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    if (!checkpoint.params.contains(p.name)) {
      throw FormatError("checkpoint is missing tensor " + p.name);
    }
    const auto& src = checkpoint.params.get(p.name).value;
    if (src.rows() != p.value.rows() || src.cols() != p.value.cols()) {
      throw FormatError("checkpoint tensor " + p.name + " has shape " +
                        shape_string(src.rows(), src.cols()) + ", expected " +
                        shape_string(p.value.rows(), p.value.cols()));
    }
    p.value = src.template cast<T>();
  }
  return model;
}

std::string serialize_checkpoint(const Checkpoint& checkpoint) {
  nlohmann::json header;
  header["config"] = checkpoint.config.to_json();
  header["epoch"] = checkpoint.epoch;
  header["val_rouge1_f"] = checkpoint.val_rouge1_f;
  header["metadata"] = checkpoint.metadata;
  nlohmann::json tensors = nlohmann::json::array();
  std::size_t floats = 0;
  for (std::size_t i = 0; i < checkpoint.params.size(); ++i) {
    const auto& p = checkpoint.params[i];
    tensors.push_back({{"name", p.name}, {"rows", p.value.rows()}, {"cols", p.value.cols()}});
    floats += p.value.size();
  }
  header["tensors"] = tensors;
  const std::string text = header.dump();
  std::string out(kCheckpointMagic);
  const auto len = static_cast<std::uint32_t>(text.size());
  out.append(reinterpret_cast<const char*>(&len), 4);
  out += text;
  out.reserve(out.size() + 4 * floats);
  for (std::size_t i = 0; i < checkpoint.params.size(); ++i) {
    const auto& v = checkpoint.params[i].value;
    out.append(reinterpret_cast<const char*>(v.data()), 4 * v.size());
  }
  return out;
}

Checkpoint parse_checkpoint(const std::string& bytes) {
  const std::size_t magic = std::strlen(kCheckpointMagic);
  if (bytes.size() < magic + 4 || bytes.compare(0, magic, kCheckpointMagic) != 0) {
    throw FormatError("not a checkpoint: bad magic");
  }
  std::uint32_t len = 0;
  std::memcpy(&len, bytes.data() + magic, 4);
  std::size_t pos = magic + 4;
  if (bytes.size() - pos < len) throw FormatError("checkpoint header truncated");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, len));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header: ") + e.what());
  }
  pos += len;
  Checkpoint ck;
  try {
    ck.config = ModelConfig::from_json(header.at("config"));
    ck.epoch = header.at("epoch").get<std::size_t>();
    ck.val_rouge1_f = header.at("val_rouge1_f").get<double>();
    ck.metadata = header.value("metadata", nlohmann::json::object());
    for (const auto& t : header.at("tensors")) {
      const auto rows = t.at("rows").get<std::size_t>();
      const auto cols = t.at("cols").get<std::size_t>();
      const std::size_t nbytes = 4 * rows * cols;
      if (bytes.size() - pos < nbytes) {
        throw FormatError("checkpoint tensor data truncated");
      }
      auto& p = ck.params.add(t.at("name").get<std::string>(), rows, cols);
      std::memcpy(p.value.data(), bytes.data() + pos, nbytes);
      pos += nbytes;
      for (float x : p.value.storage()) {
        if (!std::isfinite(x)) throw FormatError("checkpoint tensor " + p.name + " is not finite");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header field: ") + e.what());
  }
  if (pos != bytes.size()) throw FormatError("checkpoint has trailing bytes");
  return ck;
}

void write_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  const std::string bytes = serialize_checkpoint(checkpoint);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

template void snapshot_params(const ParameterSet<float>&, ParameterSet<float>&);
template void snapshot_params(const ParameterSet<double>&, ParameterSet<float>&);
template HegelModel<float> restore_model(const Checkpoint&);
template HegelModel<double> restore_model(const Checkpoint&);

}  // namespace hegel
