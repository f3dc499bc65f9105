// Copyright 2026 The crossprop Authors
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

#include "crossprop/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

namespace crossprop {
namespace {

constexpr char kBinaryMagic[4] = {'X', 'P', 'F', '1'};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool is_skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_for_write(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<unsigned char, 8> bytes;
  for (int i = 0; i < 8; ++i) {
    bytes[static_cast<std::size_t>(i)] =
        static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!in) throw ConfigError("binary matrix: truncated header");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | bytes[static_cast<std::size_t>(i)];
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw ConfigError("cannot format double");
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& token) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("not a finite number: '" + token + "'");
  }
  return v;
}

void write_matrix_text(const std::string& path, const Matrix& m) {
  std::ofstream out = open_for_write(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

Matrix read_matrix_text(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    std::vector<double> row;
    for (const std::string& token : tokenize(line)) {
      row.push_back(parse_double(token));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError("ragged row in matrix file: " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty matrix file: " + path);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void write_matrix_binary(const std::string& path, const Matrix& m) {
  std::ofstream out = open_for_write(path, /*binary=*/true);
  out.write(kBinaryMagic, 4);
  write_u64_le(out, static_cast<std::uint64_t>(m.rows()));
  write_u64_le(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      write_u64_le(out, bits);
    }
  }
  if (!out) throw ConfigError("write failed: " + path);
}

Matrix read_matrix_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kBinaryMagic, 4) != 0) {
    throw ConfigError("binary matrix: bad magic in " + path);
  }
  const std::uint64_t rows = read_u64_le(in);
  const std::uint64_t cols = read_u64_le(in);
  if (rows == 0 || cols == 0 || rows > (1u << 22) || cols > (1u << 22)) {
    throw ConfigError("binary matrix: implausible dimensions in " + path);
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::uint64_t i = 0; i < rows; ++i) {
    for (std::uint64_t j = 0; j < cols; ++j) {
      const std::uint64_t bits = read_u64_le(in);
      double v;
      std::memcpy(&v, &bits, 8);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return m;
}

void write_sparse_text(const std::string& path, const SparseMatrix& m) {
  std::ofstream out = open_for_write(path);
  // Collect row-major for a deterministic order.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int outer = 0; outer < m.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(m, outer); it; ++it) {
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.row() != b.row()) return a.row() < b.row();
    return a.col() < b.col();
  });
  out << "sparse " << m.rows() << ' ' << m.cols() << ' ' << entries.size()
      << '\n';
  for (const auto& e : entries) {
    out << e.row() << ' ' << e.col() << ' ' << format_double(e.value()) << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

SparseMatrix read_sparse_text(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    header = tokenize(line);
    break;
  }
  if (header.size() != 4 || header[0] != "sparse") {
    throw ConfigError("sparse matrix: missing 'sparse rows cols nnz' header in " +
                      path);
  }
  const long rows = std::stol(header[1]);
  const long cols = std::stol(header[2]);
  const long nnz = std::stol(header[3]);
  if (rows <= 0 || cols <= 0 || nnz < 0) {
    throw ConfigError("sparse matrix: bad header in " + path);
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 3) {
      throw ConfigError("sparse matrix: expected 'i j value' in " + path);
    }
    const long i = std::stol(tokens[0]);
    const long j = std::stol(tokens[1]);
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      throw ConfigError("sparse matrix: index out of range in " + path);
    }
    entries.emplace_back(i, j, parse_double(tokens[2]));
  }
  if (static_cast<long>(entries.size()) != nnz) {
    throw ConfigError("sparse matrix: entry count does not match header in " +
                      path);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out = open_for_write(path);
  for (int label : labels) out << label << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 1) {
      throw ConfigError("labels: expected one label per line in " + path);
    }
    labels.push_back(std::stoi(tokens[0]));
  }
  if (labels.empty()) throw ConfigError("labels: empty file " + path);
  return labels;
}

void write_constraints(const std::string& path, const ConstraintMatrix& z) {
  std::ofstream out = open_for_write(path);
  out << "# " << (z.kind() == ConstraintKind::kInter ? "inter" : "intra")
      << " constraints over " << z.rows() << " x " << z.cols() << " items\n";
  for (const ConstraintEntry& e : z.entries()) {
    out << e.i << ' ' << e.j << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

ConstraintMatrix read_constraints(const std::string& path, ConstraintKind kind,
                                  Eigen::Index rows, Eigen::Index cols) {
  std::ifstream in = open_for_read(path);
  std::vector<ConstraintEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 3) {
      throw ConfigError("constraints: expected 'i j s' in " + path);
    }
    int sign = 0;
    if (tokens[2] == "+1" || tokens[2] == "1") {
      sign = 1;
    } else if (tokens[2] == "-1") {
      sign = -1;
    } else {
      throw ConfigError("constraints: sign must be +1 or -1 in " + path);
    }
    entries.push_back({std::stoi(tokens[0]), std::stoi(tokens[1]), sign});
  }
  try {
    return ConstraintMatrix(kind, rows, cols, std::move(entries));
  } catch (const InvalidInputError& e) {
    throw ConfigError("constraints file " + path + ": " + e.what());
  }
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[65536];
  while (in) {
    in.read(buffer, sizeof(buffer));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  std::ostringstream hex;
  hex << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) {
    hex << ((hash >> shift) & 0xf);
  }
  return hex.str();
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in = open_for_read(path);
  KeyValueConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    config.set(key, value);
  }
  return config;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto v = get(key);
  return v ? *v : fallback;
}

std::string KeyValueConfig::require_string(const std::string& key) const {
  const auto v = get(key);
  if (!v || v->empty()) throw ConfigError("missing config key: " + key);
  return *v;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    return parse_double(*v);
  } catch (const ConfigError&) {
    throw ConfigError("config key " + key + ": not a number: '" + *v + "'");
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const int parsed = std::stoi(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: '" + *v + "'");
  }
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key,
                                         std::uint64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const std::uint64_t parsed = std::stoull(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: '" + *v + "'");
  }
}

}  // namespace crossprop
