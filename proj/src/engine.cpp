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

#include "hk/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace hk {

using gf::Code;

namespace {

// #{(a, b) : a + b = m, a < q, b < q}
std::uint64_t pair_count(std::int64_t m, std::uint64_t q) {
  const auto qq = static_cast<std::int64_t>(q);
  if (m < 0 || m > 2 * qq - 2) return 0;
  return static_cast<std::uint64_t>(std::min(m, 2 * qq - 2 - m) + 1);
}

std::int64_t last_degree(std::uint64_t q, unsigned d) { return 3 * (static_cast<std::int64_t>(q) - 1) - d; }

void check_q(const HomogeneousPoly& f, std::uint64_t q, const EngineOptions& opts) {
  frobenius_exponent(q, f.gf().characteristic());
  if (opts.max_q != 0 && q > opts.max_q)
    throw ResourceError("q = " + std::to_string(q) + " exceeds the configured limit " + std::to_string(opts.max_q));
  if (q > (std::uint64_t{1} << 20)) throw ResourceError("q = " + std::to_string(q) + " is out of range");
}

std::size_t dense_bytes(const gf::Field& f, std::size_t rows, std::size_t cols) {
  if (f.characteristic() == 2 && f.degree() == 1) return rows * ((cols + 63) / 64) * 8;
  return rows * cols * sizeof(Code);
}

// Runs body(i) for i in [0, count) on up to `threads` workers; results are
// written by the body into caller-owned slots.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, const Body& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

// Coordinates in which f has a nonzero z^d coefficient, if any exist over
// f's own field. The coordinate change preserves (x^q, y^q, z^q) and the
// grading, so every block rank is unchanged.
std::optional<HomogeneousPoly> z_monic_form(const HomogeneousPoly& f) {
  const unsigned d = f.degree();
  if (f.coefficient({0, 0, d}) != 0) return f;
  if (f.coefficient({0, d, 0}) != 0) return permute_variables(f, {Var::X, Var::Z, Var::Y});
  if (f.coefficient({d, 0, 0}) != 0) return permute_variables(f, {Var::Z, Var::Y, Var::X});
  const gf::Field& field = f.gf();
  const auto& fp = f.field();
  const Code order = field.order();
  auto try_point = [&](Code u, Code v, Code w) -> std::optional<HomogeneousPoly> {
    gf::FieldElement val =
        f.evaluate({gf::FieldElement(fp, u), gf::FieldElement(fp, v), gf::FieldElement(fp, w)});
    if (val.is_zero()) return std::nullopt;
    // Columns: two unit vectors and the point; the point has a 1 in its last
    // nonzero slot, so the matrix is invertible.
    std::array<std::array<Code, 3>, 3> m{};
    const std::array<Code, 3> pt{u, v, w};
    int j = w != 0 ? 2 : (v != 0 ? 1 : 0);
    int col = 0;
    for (int i = 0; i < 3; ++i)
      if (i != j) m[i][col++] = 1;
    for (int i = 0; i < 3; ++i) m[i][2] = pt[i];
    return substitute_linear(f, m);
  };
  for (Code u = 0; u < order; ++u)
    for (Code v = 0; v < order; ++v)
      if (auto g = try_point(u, v, 1)) return g;
  for (Code u = 0; u < order; ++u)
    if (auto g = try_point(u, 1, 0)) return g;
  return try_point(1, 0, 0);
}

// Per-degree ranks through the pivot structure of a z-monic equation.
class ReducedBlocks {
 public:
  ReducedBlocks(const HomogeneousPoly& g, std::uint64_t q) : field_(g.gf()), fp_(g.field()), q_(q), d_(g.degree()) {
    const Code lead_inv = field_.inv(g.coefficient({0, 0, d_}));
    // h[j][a] = coefficient of x^a y^(d-j-a) z^j in g / lead
    h_.assign(d_ + 1, {});
    for (unsigned j = 0; j <= d_; ++j) h_[j].assign(d_ - j + 1, 0);
    for (const auto& [m, c] : g.terms()) h_[m.c][m.a] = field_.mul(c, lead_inv);
    build_remainders();
  }

  std::size_t block_rank(unsigned n, const EngineOptions& opts) const {
    const auto nn = static_cast<std::int64_t>(n);
    const auto qq = static_cast<std::int64_t>(q_);
    const auto dd = static_cast<std::int64_t>(d_);
    std::uint64_t pivots = 0;
    for (std::int64_t c = 0; c <= std::min(nn, qq - 1 - dd); ++c) pivots += pair_count(nn - c, q_);

    // Schur columns: z-exponent c in [q - d, q - 1].
    struct Col {
      std::int64_t a, b, c;
    };
    std::vector<Col> cols;
    for (std::int64_t c = std::max<std::int64_t>(0, qq - dd); c <= std::min(qq - 1, nn); ++c) {
      const std::int64_t m = nn - c;
      for (std::int64_t a = std::max<std::int64_t>(0, m - (qq - 1)); a <= std::min(qq - 1, m); ++a)
        cols.push_back({a, m - a, c});
    }
    if (cols.empty()) return pivots;
    // Rows: z-exponent i < min(d, q), grouped by i.
    std::vector<std::int64_t> row_offset(d_ + 1, 0), row_amin(d_, 0);
    std::int64_t total_rows = 0;
    for (std::int64_t i = 0; i < dd; ++i) {
      row_offset[i] = total_rows;
      const std::int64_t m = nn + dd - i;
      if (i < qq && m >= 0 && m <= 2 * qq - 2) {
        row_amin[i] = std::max<std::int64_t>(0, m - (qq - 1));
        total_rows += std::min(qq - 1, m) - row_amin[i] + 1;
      }
    }
    row_offset[dd] = total_rows;
    if (total_rows == 0) return pivots;
    struct Entry {
      std::size_t row, col;
      Code value;
    };
    std::vector<Entry> entries;
    std::vector<char> row_used(static_cast<std::size_t>(total_rows), 0), col_used(cols.size(), 0);
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      const auto& col = cols[ci];
      const auto& s = schur_[static_cast<std::size_t>(col.c - (qq - static_cast<std::int64_t>(schur_.size())))];
      for (std::int64_t i = 0; i < dd; ++i) {
        if (row_offset[i + 1] == row_offset[i]) continue;
        const std::int64_t deg = col.c + dd - i;  // degree of s[i] in x, y
        const auto& si = s[static_cast<std::size_t>(i)];
        // x^(a + a2) y^(b + deg - a2) survives truncation only in this window
        const std::int64_t lo = std::max<std::int64_t>(0, col.b + deg - qq + 1);
        const std::int64_t hi = qq - 1 - col.a;
        auto it = std::lower_bound(si.begin(), si.end(), lo, [](const Term& t, std::int64_t x) { return t.a < x; });
        for (; it != si.end() && it->a <= hi; ++it) {
          const Code v = it->value;
          const std::int64_t ar = col.a + it->a;
          const auto row = static_cast<std::size_t>(row_offset[i] + ar - row_amin[i]);
          entries.push_back({row, ci, v});
          row_used[row] = 1;
          col_used[ci] = 1;
        }
      }
    }
    if (entries.empty()) return pivots;
    // Only rows and columns that carry an entry can contribute to the rank.
    std::vector<std::size_t> row_index(row_used.size()), col_index(col_used.size());
    std::size_t rows = 0, ncols = 0;
    for (std::size_t r = 0; r < row_used.size(); ++r)
      if (row_used[r]) row_index[r] = rows++;
    for (std::size_t c = 0; c < col_used.size(); ++c)
      if (col_used[c]) col_index[c] = ncols++;
    if (dense_bytes(field_, rows, ncols) > opts.max_block_bytes)
      throw ResourceError("reduced block of degree " + std::to_string(n) + " exceeds the memory limit");
    la::Matrix mat(fp_, rows, ncols);
    for (const auto& e : entries) mat.set(row_index[e.row], col_index[e.col], e.value);
    return pivots + la::rank(std::move(mat));
  }

 private:
  using Form = std::vector<Code>;  // homogeneous form in x, y indexed by the x exponent

  // out += u * v, truncated at x^q, y^q; u has degree du, v degree dv.
  void mul_add(Form& out, const Form& u, std::int64_t du, const Form& v, std::int64_t dv) const {
    const auto qq = static_cast<std::int64_t>(q_);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        const auto a = static_cast<std::int64_t>(i + j);
        if (a >= qq || du + dv - a >= qq) continue;
        out[static_cast<std::size_t>(a)] = field_.add(out[static_cast<std::size_t>(a)], field_.mul(u[i], v[j]));
      }
    }
  }

  // R_e = z^e mod g in B[z], B = k[x,y]/(x^q, y^q), for e up to q + d - 1;
  // then S_c = sum_{j >= q - c} h_j R_{c + j} for c in [max(0, q - d), q - 1].
  void build_remainders() {
    const auto qq = static_cast<std::int64_t>(q_);
    const auto dd = static_cast<std::int64_t>(d_);
    const std::int64_t e_max = qq + dd - 1;
    const std::int64_t c_lo = std::max<std::int64_t>(0, qq - dd);
    std::map<std::int64_t, std::vector<Form>> keep;  // e -> R_e for e >= q
    auto form_size = [](std::int64_t deg) { return deg < 0 ? std::size_t{0} : static_cast<std::size_t>(deg + 1); };
    std::vector<Form> r(d_);
    for (std::int64_t i = 0; i < dd; ++i) r[i].assign(form_size(-i), 0);
    r[0] = {1};
    auto record = [&](std::int64_t e) {
      if (e >= qq) keep[e] = r;
    };
    record(0);
    for (std::int64_t e = 0; e < e_max; ++e) {
      std::vector<Form> next(d_);
      for (std::int64_t i = 0; i < dd; ++i) {
        next[i] = i == 0 ? Form(form_size(e + 1), 0) : r[i - 1];
        const Form& top = r[d_ - 1];
        if (!top.empty()) {
          Form neg_h = h_[i];
          for (auto& c : neg_h) c = field_.neg(c);
          mul_add(next[i], top, e - dd + 1, neg_h, dd - i);
        }
      }
      r = std::move(next);
      record(e + 1);
    }
    for (std::int64_t c = c_lo; c <= qq - 1; ++c) {
      std::vector<Form> s(d_);
      for (std::int64_t i = 0; i < dd; ++i) s[i].assign(form_size(c + dd - i), 0);
      for (std::int64_t j = qq - c; j <= dd; ++j) {
        const auto& re = keep.at(c + j);
        for (std::int64_t i = 0; i < dd; ++i) mul_add(s[i], re[i], c + j - i, h_[j], dd - j);
      }
      std::vector<std::vector<Term>> sparse(d_);
      for (std::int64_t i = 0; i < dd; ++i)
        for (std::size_t a = 0; a < s[i].size(); ++a)
          if (s[i][a] != 0) sparse[i].push_back({static_cast<std::int64_t>(a), s[i][a]});
      schur_.push_back(std::move(sparse));
    }
  }

  const gf::Field& field_;
  gf::FieldPtr fp_;
  std::uint64_t q_;
  unsigned d_;
  std::vector<Form> h_;
  struct Term {
    std::int64_t a;  // x exponent
    Code value;
  };
  std::vector<std::vector<std::vector<Term>>> schur_;  // [c - max(0, q - d)][z power], nonzero terms by x exponent
};

}  // namespace

std::vector<Monomial> truncated_basis(unsigned n, std::uint64_t q) {
  std::vector<Monomial> out;
  if (q == 0) return out;
  const unsigned top = static_cast<unsigned>(std::min<std::uint64_t>(n, q - 1));
  for (unsigned a = 0; a <= top; ++a)
    for (unsigned b = 0; b <= top && a + b <= n; ++b) {
      const unsigned c = n - a - b;
      if (c < q) out.push_back({a, b, c});
    }
  return out;
}

GradedBlock graded_block(const HomogeneousPoly& f, unsigned n, std::uint64_t q) {
  GradedBlock block{n, truncated_basis(n, q), truncated_basis(n + f.degree(), q),
                    la::Matrix(f.field(), 0, 0)};
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t i = 0; i < block.codomain_basis.size(); ++i) row_of.emplace(block.codomain_basis[i], i);
  block.matrix = la::Matrix(f.field(), block.codomain_basis.size(), block.domain_basis.size());
  for (std::size_t j = 0; j < block.domain_basis.size(); ++j)
    for (const auto& [t, c] : f.terms()) {
      const Monomial m = block.domain_basis[j] * t;
      if (m.a >= q || m.b >= q || m.c >= q) continue;
      block.matrix.set(row_of.at(m), j, c);
    }
  return block;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("HK_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

unsigned frobenius_exponent(std::uint64_t q, std::uint64_t p) {
  if (q == 0) throw DomainError("q must be a positive power of p");
  unsigned n = 0;
  std::uint64_t v = q;
  while (v % p == 0) {
    v /= p;
    ++n;
  }
  if (v != 1) throw DomainError("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
  return n;
}

std::vector<std::size_t> block_ranks(const HomogeneousPoly& f, std::uint64_t q, const EngineOptions& opts) {
  check_q(f, q, opts);
  const std::int64_t last = last_degree(q, f.degree());
  if (last < 0) return {};
  const std::size_t count = static_cast<std::size_t>(last + 1);
  std::vector<std::size_t> ranks(count, 0);
  const unsigned threads = opts.threads ? opts.threads : default_thread_count();
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const unsigned n_exp = frobenius_exponent(q, f.gf().characteristic());
  auto report = [&] {
    const std::size_t k = ++done;
    if (opts.on_progress) {
      std::lock_guard lock(progress_mutex);
      opts.on_progress(Progress{n_exp, q, k, count});
    }
  };

  std::optional<HomogeneousPoly> monic;
  if (opts.strategy != BlockStrategy::Dense) monic = z_monic_form(f);
  if (opts.strategy == BlockStrategy::Reduced && !monic)
    throw DomainError("no coordinate system over " + f.gf().spec() + " makes the z^d coefficient nonzero");
  if (monic) {
    ReducedBlocks reduced(*monic, q);
    parallel_for(count, threads, [&](std::size_t i) {
      ranks[i] = reduced.block_rank(static_cast<unsigned>(i), opts);
      report();
    });
  } else {
    parallel_for(count, threads, [&](std::size_t i) {
      const auto rows = truncated_basis(static_cast<unsigned>(i) + f.degree(), q).size();
      const auto cols = truncated_basis(static_cast<unsigned>(i), q).size();
      if (dense_bytes(f.gf(), rows, cols) > opts.max_block_bytes)
        throw ResourceError("graded block of degree " + std::to_string(i) + " exceeds the memory limit");
      ranks[i] = la::rank(graded_block(f, static_cast<unsigned>(i), q).matrix);
      report();
    });
  }
  return ranks;
}

HKSample colength(const HomogeneousPoly& f, std::uint64_t q, const EngineOptions& opts) {
  if (f.is_zero()) throw DomainError("colength of the zero polynomial");
  const unsigned n = frobenius_exponent(q, f.gf().characteristic());
  std::uint64_t total = q * q * q;
  for (auto r : block_ranks(f, q, opts)) total -= r;
  return HKSample{n, q, total};
}

std::uint64_t oracle_cutoff(std::uint64_t p) {
  if (p == 2) return 8;
  if (p == 3) return 9;
  return 5;
}

HKSample colength_naive(const HomogeneousPoly& f, std::uint64_t q, std::uint64_t cutoff) {
  if (f.is_zero()) throw DomainError("colength of the zero polynomial");
  const std::uint64_t p = f.gf().characteristic();
  const unsigned n = frobenius_exponent(q, p);
  if (cutoff == 0) cutoff = oracle_cutoff(p);
  if (q > cutoff)
    throw ResourceError("naive oracle refuses q = " + std::to_string(q) + " above cutoff " + std::to_string(cutoff));
  const std::size_t dim = q * q * q;
  auto index = [q](const Monomial& m) { return (m.a * q + m.b) * q + m.c; };
  la::Matrix mat(f.field(), dim, dim);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 0; c < q; ++c) {
        const Monomial m{a, b, c};
        for (const auto& [t, coef] : f.terms()) {
          const Monomial image = m * t;
          if (image.a >= q || image.b >= q || image.c >= q) continue;
          mat.set(index(image), index(m), coef);
        }
      }
  return HKSample{n, q, dim - la::rank(mat)};
}

std::vector<HKSample> hk_sequence(const PlaneCurve& curve, unsigned n_max, const EngineOptions& opts) {
  const std::uint64_t p = curve.characteristic();
  std::vector<HKSample> out;
  std::uint64_t q = 1;
  for (unsigned n = 0; n <= n_max; ++n) {
    try {
      out.push_back(colength(curve.equation(), q, opts));
    } catch (const ResourceError& e) {
      throw SequenceError(e.what(), out);
    }
    if (n < n_max) {
      if (q > (std::uint64_t{1} << 40) / p) throw SequenceError("q overflows", out);
      q *= p;
    }
  }
  return out;
}

bool smooth_check(const PlaneCurve& curve) {
  const HomogeneousPoly& f = curve.equation();
  const unsigned d = f.degree();
  const unsigned top = 3 * d - 3;
  const auto rows = truncated_basis(top, top + 1);
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);

  std::vector<const HomogeneousPoly*> gens;
  std::vector<HomogeneousPoly> partials;
  for (Var v : {Var::X, Var::Y, Var::Z}) partials.push_back(partial(f, v));
  gens.push_back(&f);
  for (const auto& g : partials)
    if (!g.is_zero()) gens.push_back(&g);

  std::vector<std::pair<const HomogeneousPoly*, Monomial>> cols;
  for (const auto* g : gens)
    for (const auto& m : truncated_basis(top - g->degree(), top + 1)) cols.emplace_back(g, m);
  la::Matrix mat(f.field(), rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [t, c] : cols[j].first->terms()) mat.set(row_of.at(cols[j].second * t), j, c);
  return la::rank(mat) == rows.size();
}

}  // namespace hk
