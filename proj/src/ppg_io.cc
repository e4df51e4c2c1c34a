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

#include "ppgedit/ppg_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "binary_io.h"

namespace ppgedit {

using detail::read_le;
using detail::write_le;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorCode::kParseError, "not a number: '" + std::string(text) + "'");
  return value;
}

void write_ppg_binary(const Ppg& ppg, std::ostream& os) {
  os.write(kPpgMagic, sizeof(kPpgMagic));
  write_le<std::uint32_t>(os, kPpgVersion);
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ppg.num_frames()));
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ppg.num_phonemes()));
  write_le<double>(os, ppg.frame_period());
  for (const auto& label : ppg.inventory().labels()) {
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(label.size()));
    os.write(label.data(), static_cast<std::streamsize>(label.size()));
  }
  for (double v : ppg.matrix().data()) write_le<float>(os, static_cast<float>(v));
  if (!os) throw Error(ErrorCode::kIoError, "failed writing PPG binary");
}

Ppg read_ppg_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kPpgMagic, 4) != 0)
    throw Error(ErrorCode::kParseError, "bad PPG magic bytes");
  const auto version = read_le<std::uint32_t>(is, "version");
  if (version != kPpgVersion)
    throw Error(ErrorCode::kParseError,
                "unsupported PPG version " + std::to_string(version));
  const auto frames = read_le<std::uint32_t>(is, "T");
  const auto phonemes = read_le<std::uint32_t>(is, "P");
  const auto frame_period = read_le<double>(is, "frame_period");
  constexpr std::uint32_t kMaxLabelBytes = 1 << 16;
  std::vector<std::string> labels;
  labels.reserve(phonemes);
  for (std::uint32_t p = 0; p < phonemes; ++p) {
    const auto len = read_le<std::uint32_t>(is, "label length");
    if (len > kMaxLabelBytes)
      throw Error(ErrorCode::kParseError, "label length " + std::to_string(len));
    std::string label(len, '\0');
    if (!is.read(label.data(), len))
      throw Error(ErrorCode::kParseError, "truncated PPG label");
    labels.push_back(std::move(label));
  }
  Matrix matrix(frames, phonemes);
  for (double& v : matrix.data()) v = read_le<float>(is, "values");
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorCode::kParseError, "trailing bytes after PPG values");
  return Ppg::create(std::move(matrix), PhonemeInventory(std::move(labels)),
                     frame_period);
}

void write_ppg_csv(const Ppg& ppg, std::ostream& os) {
  const auto& labels = ppg.inventory().labels();
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p].find_first_of(",\n\r\"") != std::string::npos)
      throw Error(ErrorCode::kInvalidParameter,
                  "label '" + labels[p] + "' cannot be written to CSV");
    os << (p ? "," : "") << labels[p];
  }
  os << '\n';
  for (std::size_t t = 0; t < ppg.num_frames(); ++t) {
    const auto frame = ppg.frame(t);
    for (std::size_t p = 0; p < frame.size(); ++p)
      os << (p ? "," : "") << format_double(frame[p]);
    os << '\n';
  }
  if (!os) throw Error(ErrorCode::kIoError, "failed writing PPG CSV");
}

Ppg read_ppg_csv(std::istream& is, double frame_period) {
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorCode::kParseError, "missing CSV header");
  std::vector<std::string> labels;
  for (auto& f : split_csv_line(line)) labels.push_back(strip(f));
  PhonemeInventory inventory(std::move(labels));

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    std::vector<double> row;
    for (auto& f : split_csv_line(line)) {
      try {
        row.push_back(parse_double(strip(f)));
      } catch (const Error& e) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (row.size() != inventory.size())
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(row.size()) + " fields, header has " +
                      std::to_string(inventory.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kParseError, "CSV has a header but no frames");
  return Ppg::create(Matrix::from_rows(rows), std::move(inventory), frame_period);
}

Ppg load_ppg(const std::filesystem::path& path, double csv_frame_period) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  // Binary files start with the magic and carry NUL bytes in the header
  // integers; CSV text never does. Anything binary-looking without the exact
  // magic is reported as a corrupt binary rather than parsed as CSV.
  char head[16] = {};
  in.read(head, sizeof head);
  const auto got = static_cast<std::size_t>(in.gcount());
  const bool binary = (got >= 3 && std::memcmp(head, kPpgMagic, 3) == 0) ||
                      std::find(head, head + got, '\0') != head + got;
  in.clear();
  in.seekg(0);
  if (binary) return read_ppg_binary(in);
  return read_ppg_csv(in, csv_frame_period);
}

void save_ppg(const Ppg& ppg, const std::filesystem::path& path, PpgFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  if (format == PpgFormat::kBinary)
    write_ppg_binary(ppg, out);
  else
    write_ppg_csv(ppg, out);
}

PpgFormat format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".ppg" || ext == ".bin") ? PpgFormat::kBinary : PpgFormat::kCsv;
}

}  // namespace ppgedit
