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

#include "hk/matrix.hpp"

#include <algorithm>
#include <utility>

#include "hk/error.hpp"

namespace hk::la {

using gf::Code;

Matrix::Matrix(gf::FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (!field_) throw DomainError("matrix without a field");
  packed_ = field_->characteristic() == 2 && field_->degree() == 1;
  if (packed_) {
    words_ = (cols + 63) / 64;
    bits_.assign(rows * words_, 0);
  } else {
    cells_.assign(rows * cols, 0);
  }
}

Code Matrix::get(std::size_t r, std::size_t c) const {
  if (packed_) return (bits_[r * words_ + c / 64] >> (c % 64)) & 1;
  return cells_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, Code v) {
  if (packed_) {
    auto& w = bits_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = (v & 1) ? (w | bit) : (w & ~bit);
  } else {
    cells_[r * cols_ + c] = v;
  }
}

void Matrix::accumulate(std::size_t r, std::size_t c, Code v) {
  if (packed_)
    bits_[r * words_ + c / 64] ^= (v & 1) << (c % 64);
  else
    cells_[r * cols_ + c] = field_->add(cells_[r * cols_ + c], v);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, get(r, c));
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw DomainError("matrix dimension mismatch");
  const gf::Field& f = *field_;
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Code a = get(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Code b = o.get(k, j);
        if (b != 0) out.accumulate(i, j, f.mul(a, b));
      }
    }
  return out;
}

namespace {

// Moduli below 2^32 keep products inside 64 bits.
struct SmallPrimeOps {
  std::uint64_t p;
  Code add(Code a, Code b) const {
    Code s = a + b;
    return s >= p ? s - p : s;
  }
  Code sub(Code a, Code b) const { return a >= b ? a - b : a + (p - b); }
  Code mul(Code a, Code b) const { return a * b % p; }
};

struct PrimeOps {
  std::uint64_t p;
  Code add(Code a, Code b) const {
    Code s = a + b;
    return s >= p ? s - p : s;
  }
  Code sub(Code a, Code b) const { return a >= b ? a - b : a + (p - b); }
  Code mul(Code a, Code b) const { return static_cast<Code>((static_cast<unsigned __int128>(a) * b) % p); }
};

struct FieldOps {
  const gf::Field& f;
  Code add(Code a, Code b) const { return f.add(a, b); }
  Code sub(Code a, Code b) const { return f.sub(a, b); }
  Code mul(Code a, Code b) const { return f.mul(a, b); }
};

template <class Ops>
std::size_t eliminate(std::vector<Code> a, std::size_t rows, std::size_t cols, const Ops& ops, const gf::Field& f) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * cols + col, a.begin() + (piv + 1) * cols, a.begin() + rank * cols + col);
    Code* prow = a.data() + rank * cols;
    const Code inv = f.inv(prow[col]);
    for (std::size_t c = col; c < cols; ++c) prow[c] = ops.mul(prow[c], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      Code* row = a.data() + r * cols;
      const Code factor = row[col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < cols; ++c)
        if (prow[c] != 0) row[c] = ops.sub(row[c], ops.mul(factor, prow[c]));
    }
    ++rank;
  }
  return rank;
}

std::size_t eliminate_cells(std::vector<Code> a, std::size_t rows, std::size_t cols, const gf::Field& f) {
  if (f.degree() > 1) return eliminate(std::move(a), rows, cols, FieldOps{f}, f);
  if (f.characteristic() < (std::uint64_t{1} << 32))
    return eliminate(std::move(a), rows, cols, SmallPrimeOps{f.characteristic()}, f);
  return eliminate(std::move(a), rows, cols, PrimeOps{f.characteristic()}, f);
}

}  // namespace

std::size_t rank_generic(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<Code> a;
  if (m.packed()) {
    a.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.get(r, c);
  } else {
    a.assign(m.cells().begin(), m.cells().end());
  }
  return eliminate_cells(std::move(a), rows, cols, *m.field());
}

std::size_t rank_packed(const Matrix& m) {
  if (!m.packed()) throw DomainError("rank_packed needs a GF(2) matrix");
  const std::size_t rows = m.rows(), cols = m.cols(), words = m.words_per_row();
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::uint64_t> a;
  a.reserve(rows * words);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = m.packed_row(r);
    a.insert(a.end(), row.begin(), row.end());
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t piv = rank;
    while (piv < rows && !(a[piv * words + w] & bit)) ++piv;
    if (piv == rows) continue;
    std::uint64_t* prow = a.data() + rank * words;
    if (piv != rank) std::swap_ranges(prow + w, prow + words, a.data() + piv * words + w);
    for (std::size_t r = piv + 1; r < rows; ++r) {
      std::uint64_t* row = a.data() + r * words;
      if (row[w] & bit)
        for (std::size_t i = w; i < words; ++i) row[i] ^= prow[i];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const Matrix& m) { return m.packed() ? rank_packed(m) : rank_generic(m); }

std::size_t rank(Matrix&& m) {
  if (m.packed() || m.rows() == 0 || m.cols() == 0) return rank(static_cast<const Matrix&>(m));
  return eliminate_cells(std::move(m.cells_), m.rows(), m.cols(), *m.field());
}

}  // namespace hk::la
