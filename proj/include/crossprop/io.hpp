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

#ifndef CROSSPROP_IO_HPP_
#define CROSSPROP_IO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// Shortest round-trip decimal representation of a double ("nan"/"inf" are
/// rejected on read).
std::string format_double(double v);
double parse_double(const std::string& token);

// Dense text format: one row per line, values separated by spaces. Lines
// starting with '#' and blank lines are ignored. Values use shortest
// round-trip formatting, so write/read is lossless.
void write_matrix_text(const std::string& path, const Matrix& m);
Matrix read_matrix_text(const std::string& path);

// Dense binary format: magic "XPF1", then rows and cols as little-endian
// uint64, then row-major IEEE-754 binary64 values, little-endian.
void write_matrix_binary(const std::string& path, const Matrix& m);
Matrix read_matrix_binary(const std::string& path);

// Sparse text format: a first line "sparse <rows> <cols> <nnz>" followed by
// one "i j value" triple per line (0-based row-major order).
void write_sparse_text(const std::string& path, const SparseMatrix& m);
SparseMatrix read_sparse_text(const std::string& path);

// Labels: one integer per line; '#' comments allowed.
void write_labels(const std::string& path, const std::vector<int>& labels);
std::vector<int> read_labels(const std::string& path);

// Constraints: one "i j s" triple per line with 0-based indices and
// s in {+1, -1}; '#' comments allowed. Dimensions come from the caller.
void write_constraints(const std::string& path, const ConstraintMatrix& z);
ConstraintMatrix read_constraints(const std::string& path, ConstraintKind kind,
                                  Eigen::Index rows, Eigen::Index cols);

/// FNV-1a (64-bit) checksum of a file's bytes, as 16 hex digits.
std::string file_checksum(const std::string& path);

/// Plain-text key=value configuration. '#' comments and blank lines are
/// ignored; keys and values are trimmed. Later assignments win.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  static KeyValueConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace crossprop

#endif  // CROSSPROP_IO_HPP_
