// Copyright 2026 The hkcurve Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hk/gf.hpp"

namespace hk::la {

/// Dense matrix over GF(p^k). Over GF(2) rows are bit-packed into 64-bit
/// words; every other field stores one code per entry, row-major.
class Matrix {
 public:
  Matrix(gf::FieldPtr field, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const gf::FieldPtr& field() const { return field_; }
  bool packed() const { return packed_; }

  gf::Code get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, gf::Code v);
  /// entry += v
  void accumulate(std::size_t r, std::size_t c, gf::Code v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;

  std::size_t words_per_row() const { return words_; }
  std::span<const std::uint64_t> packed_row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }
  std::span<const gf::Code> cells() const { return cells_; }

 private:
  friend std::size_t rank(Matrix&& m);

  gf::FieldPtr field_;
  std::size_t rows_, cols_;
  bool packed_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<gf::Code> cells_;
};

/// Exact rank; dispatches to the bit-packed path over GF(2).
std::size_t rank(const Matrix& m);

/// Same as rank() but eliminates in the matrix's own storage.
std::size_t rank(Matrix&& m);

/// Entry-wise Gaussian elimination, whatever the storage. Used to
/// cross-check the packed path.
std::size_t rank_generic(const Matrix& m);

/// Word-XOR elimination; requires a packed matrix.
std::size_t rank_packed(const Matrix& m);

}  // namespace hk::la
