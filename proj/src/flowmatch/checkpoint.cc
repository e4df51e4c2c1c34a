// Copyright 2026 The ppgedit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppgedit/flowmatch/checkpoint.h"

#include <cstring>
#include <fstream>
#include <string>

#include "../binary_io.h"
#include "ppgedit/error.h"

namespace ppgedit::flowmatch {

using detail::read_le;
using detail::write_le;

void save_checkpoint(const Mlp& model, std::ostream& os) {
  const MlpConfig& c = model.config();
  os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  write_le<std::uint32_t>(os, kCheckpointVersion);
  write_le<std::uint32_t>(os, c.data_dim);
  write_le<std::uint32_t>(os, c.num_classes);
  write_le<std::uint32_t>(os, c.cond_dim);
  write_le<std::uint32_t>(os, c.time_frequencies);
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(c.activation));
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(c.hidden.size()));
  for (auto w : c.hidden) write_le<std::uint32_t>(os, w);
  write_le<std::uint64_t>(os, model.num_parameters());
  for (double p : model.parameters()) write_le<float>(os, static_cast<float>(p));
  if (!os) throw Error(ErrorCode::kIoError, "failed writing checkpoint");
}

Mlp load_checkpoint(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw Error(ErrorCode::kParseError, "bad checkpoint magic bytes");
  const auto version = read_le<std::uint32_t>(is, "checkpoint version");
  if (version != kCheckpointVersion)
    throw Error(ErrorCode::kCheckpointVersionMismatch,
                "checkpoint version " + std::to_string(version) + ", expected " +
                    std::to_string(kCheckpointVersion));
  MlpConfig c;
  c.data_dim = read_le<std::uint32_t>(is, "data_dim");
  c.num_classes = read_le<std::uint32_t>(is, "num_classes");
  c.cond_dim = read_le<std::uint32_t>(is, "cond_dim");
  c.time_frequencies = read_le<std::uint32_t>(is, "time_frequencies");
  c.activation = static_cast<Activation>(read_le<std::uint32_t>(is, "activation"));
  const auto depth = read_le<std::uint32_t>(is, "hidden layer count");
  if (depth > 64) throw Error(ErrorCode::kParseError, "implausible hidden layer count");
  c.hidden.clear();
  for (std::uint32_t l = 0; l < depth; ++l)
    c.hidden.push_back(read_le<std::uint32_t>(is, "hidden width"));
  if (c.time_frequencies > 30)
    throw Error(ErrorCode::kParseError, "implausible time frequency count");
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, std::string("checkpoint architecture: ") + e.what());
  }
  const auto count = read_le<std::uint64_t>(is, "parameter count");
  Mlp shape(c, std::uint64_t{0});
  if (count != shape.num_parameters())
    throw Error(ErrorCode::kParseError,
                "parameter count " + std::to_string(count) + " does not match architecture (" +
                    std::to_string(shape.num_parameters()) + ")");
  std::vector<double> params(count);
  for (double& p : params) p = read_le<float>(is, "parameters");
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorCode::kParseError, "trailing bytes after checkpoint parameters");
  return Mlp(std::move(c), std::move(params));
}

void save_checkpoint(const Mlp& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  save_checkpoint(model, out);
}

Mlp load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return load_checkpoint(in);
}

}  // namespace ppgedit::flowmatch
