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

#include "hk/gf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <utility>

#include "hk/error.hpp"

namespace hk::gf {
namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;
constexpr std::uint64_t kTableOrder = std::uint64_t{1} << 16;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Univariate polynomials over a field, coefficient codes low degree first.
// The zero polynomial is the empty vector.
class UPoly {
 public:
  using Vec = std::vector<Code>;

  explicit UPoly(const Field& f) : f_(f) {}

  static void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Vec sub(Vec a, const Vec& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f_.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Vec add(Vec a, const Vec& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f_.add(a[i], b[i]);
    trim(a);
    return a;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  // Remainder of a modulo a nonzero m.
  Vec mod(Vec a, const Vec& m) const {
    const std::size_t dm = m.size() - 1;
    const Code lead_inv = f_.inv(m.back());
    trim(a);
    while (a.size() > dm) {
      const Code factor = f_.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f_.sub(a[shift + i], f_.mul(factor, m[i]));
      trim(a);
    }
    return a;
  }

  Vec mulmod(const Vec& a, const Vec& b, const Vec& m) const { return mod(mul(a, b), m); }

  Vec powmod(Vec base, std::uint64_t e, const Vec& m) const {
    Vec result = mod(Vec{1}, m);
    base = mod(std::move(base), m);
    while (e > 0) {
      if (e & 1) result = mulmod(result, base, m);
      e >>= 1;
      if (e > 0) base = mulmod(base, base, m);
    }
    return result;
  }

  Vec gcd(Vec a, Vec b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Vec r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      const Code li = f_.inv(a.back());
      for (auto& c : a) c = f_.mul(c, li);
    }
    return a;
  }

 private:
  const Field& f_;
};

// All roots of a squarefree polynomial that splits into linear factors over f.
void split_roots(const Field& f, const UPoly::Vec& g, std::vector<Code>& roots) {
  UPoly ring(f);
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    roots.push_back(f.neg(f.mul(g[0], f.inv(g[1]))));
    return;
  }
  const std::uint64_t p = f.characteristic();
  for (Code beta = 1; beta < f.order(); ++beta) {
    UPoly::Vec h;
    if (p == 2) {
      UPoly::Vec term = ring.mod(UPoly::Vec{0, beta}, g);
      h = term;
      for (unsigned i = 1; i < f.degree(); ++i) {
        term = ring.mulmod(term, term, g);
        h = ring.add(h, term);
      }
    } else {
      h = ring.powmod(UPoly::Vec{beta, 1}, (f.order() - 1) / 2, g);
      h = ring.sub(h, UPoly::Vec{1});
    }
    UPoly::Vec d = ring.gcd(h, g);
    const std::size_t dd = d.empty() ? 0 : d.size() - 1;
    if (dd == 0 || dd == deg) continue;
    // g / d by long division.
    UPoly::Vec q(deg - dd + 1, 0);
    UPoly::Vec r = g;
    const Code li = f.inv(d.back());
    for (std::size_t i = deg - dd + 1; i-- > 0;) {
      const Code c = f.mul(r[i + dd], li);
      q[i] = c;
      for (std::size_t j = 0; j <= dd; ++j) r[i + j] = f.sub(r[i + j], f.mul(c, d[j]));
    }
    split_roots(f, d, roots);
    split_roots(f, q, roots);
    return;
  }
  throw DomainError("polynomial does not split into distinct linear factors");
}

std::string trim_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range: " + s);
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> modulus_msf) {
  if (!is_prime(p) || modulus_msf.size() < 2 || modulus_msf[0] != 1) return false;
  for (auto c : modulus_msf)
    if (c >= p) return false;
  const unsigned k = static_cast<unsigned>(modulus_msf.size() - 1);
  if (k == 1) return true;
  auto prime = Field::make(p, 1);
  UPoly ring(*prime);
  UPoly::Vec m(modulus_msf.rbegin(), modulus_msf.rend());
  // frob[i] = x^(p^i) mod m
  std::vector<UPoly::Vec> frob(k + 1);
  frob[0] = UPoly::Vec{0, 1};
  for (unsigned i = 1; i <= k; ++i) frob[i] = ring.powmod(frob[i - 1], p, m);
  if (frob[k] != UPoly::Vec{0, 1}) return false;
  for (auto r : prime_factors(k)) {
    auto g = ring.gcd(ring.sub(frob[k / r], UPoly::Vec{0, 1}), m);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw DomainError("extension degree must be at least 1");
  if (k == 1) return {1, 0};
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>> memo;
  {
    std::lock_guard lock(mutex);
    auto it = memo.find({p, k});
    if (it != memo.end()) return it->second;
  }
  std::uint64_t span = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (span > kMaxOrder / p) throw DomainError("field order exceeds 2^62");
    span *= p;
  }
  std::vector<std::uint64_t> msf(k + 1, 0);
  for (std::uint64_t low = 1; low < span; ++low) {
    std::uint64_t v = low;
    msf[0] = 1;
    for (unsigned i = 0; i < k; ++i) {
      msf[k - i] = v % p;
      v /= p;
    }
    if (msf[k] == 0) continue;
    if (is_irreducible(p, msf)) {
      std::lock_guard lock(mutex);
      memo[{p, k}] = msf;
      return msf;
    }
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for valid (p, k)
}

FieldPtr Field::make(std::uint64_t p, unsigned k) { return make(p, default_modulus(p, k)); }

FieldPtr Field::make(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw DomainError("characteristic too large");
  if (modulus.size() < 2) throw DomainError("modulus must have degree at least 1");
  if (modulus[0] != 1) throw DomainError("modulus must be monic");
  for (auto c : modulus)
    if (c >= p) throw DomainError("modulus coefficient out of range [0, p)");
  if (!is_irreducible(p, modulus)) throw DomainError("modulus is not irreducible over GF(" + std::to_string(p) + ")");
  return FieldPtr(new Field(p, std::move(modulus)));
}

Field::Field(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), order_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < k_; ++i) {
    if (order_ > kMaxOrder / p_) throw DomainError("field order exceeds 2^62");
    order_ *= p_;
  }
  reduction_.resize(k_);
  for (unsigned i = 0; i < k_; ++i) reduction_[i] = (p_ - modulus_[k_ - i]) % p_;
  if (k_ > 1 && order_ <= kTableOrder) build_tables();
}

void Field::build_tables() {
  const std::uint64_t n = order_ - 1;
  const auto factors = prime_factors(n);
  Code g = 0;
  for (Code c = 2; c < order_; ++c) {
    bool primitive = true;
    for (auto r : factors) {
      Code x = 1, b = c;
      for (std::uint64_t e = n / r; e > 0; e >>= 1) {
        if (e & 1) x = mul_slow(x, b);
        b = mul_slow(b, b);
      }
      if (x == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }
  exp_.resize(2 * n);
  log_.assign(order_, 0);
  Code x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    exp_[i + n] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, g);
  }
}

Code Field::add(Code a, Code b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) {
    Code s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Code result = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Code s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    result += s * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

Code Field::neg(Code a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Code result = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Code d = a % p_;
    result += (d == 0 ? 0 : p_ - d) * place;
    place *= p_;
    a /= p_;
  }
  return result;
}

Code Field::sub(Code a, Code b) const { return add(a, neg(b)); }

Code Field::mul(Code a, Code b) const {
  if (k_ == 1) return static_cast<Code>((u128{a} * b) % p_);
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[std::size_t{log_[a]} + log_[b]];
  return mul_slow(a, b);
}

Code Field::mul_slow(Code a, Code b) const {
  if (k_ == 1) return static_cast<Code>((u128{a} * b) % p_);
  if (p_ == 2) {
    u128 prod = 0;
    for (unsigned i = 0; i < k_; ++i)
      if ((b >> i) & 1) prod ^= u128{a} << i;
    Code red = 0;
    for (unsigned i = 0; i < k_; ++i) red |= reduction_[i] << i;
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
      if ((prod >> i) & 1) {
        prod ^= u128{1} << i;
        prod ^= u128{red} << (i - k_);
      }
    }
    return static_cast<Code>(prod);
  }
  std::vector<std::uint64_t> da(k_), db(k_), r(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = a % p_;
    db[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p_;
  for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (unsigned j = 0; j < k_; ++j) r[i - k_ + j] = (r[i - k_ + j] + c * reduction_[j]) % p_;
  }
  Code out = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += r[i] * place;
    place *= p_;
  }
  return out;
}

Code Field::pow(Code a, std::uint64_t e) const {
  Code result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

Code Field::inv(Code a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (!exp_.empty()) {
    const std::uint64_t n = order_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  return pow(a, order_ - 2);
}

Code Field::from_int(std::int64_t v) const {
  const auto pp = static_cast<std::int64_t>(p_);
  std::int64_t r = v % pp;
  if (r < 0) r += pp;
  return static_cast<Code>(r);
}

Code Field::generator() const { return k_ == 1 ? reduction_[0] : p_; }

Code Field::from_coeffs(std::span<const std::uint64_t> msf) const {
  if (msf.size() > k_) throw ParseError("element has more than " + std::to_string(k_) + " coefficients");
  Code out = 0;
  for (auto c : msf) {
    if (c >= p_) throw ParseError("coefficient " + std::to_string(c) + " not in [0, " + std::to_string(p_) + ")");
    out = out * p_ + c;
  }
  return out;
}

std::vector<std::uint64_t> Field::coeffs(Code a) const {
  std::vector<std::uint64_t> out(k_);
  for (unsigned i = 0; i < k_; ++i) {
    out[k_ - 1 - i] = a % p_;
    a /= p_;
  }
  return out;
}

std::string Field::spec() const {
  if (k_ == 1 && modulus_[1] == 0) return "GF(" + std::to_string(p_) + ")";
  std::string s = "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + "; modulus=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(modulus_[i]);
  }
  return s + ")";
}

std::string Field::format(Code a) const {
  if (k_ == 1) return std::to_string(a);
  std::string s;
  auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

Code Field::parse_element(std::string_view text) const {
  std::string s = trim_spaces(text);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  auto parts = split_commas(s);
  if (parts.empty()) throw ParseError("empty field element");
  if (parts.size() == 1) {
    std::string body = parts[0];
    bool negative = false;
    if (!body.empty() && body[0] == '-') {
      negative = true;
      body = body.substr(1);
    }
    const std::uint64_t v = parse_u64(body, "field element") % p_;
    return negative ? neg(v) : v;
  }
  std::vector<std::uint64_t> msf;
  for (auto& part : parts) msf.push_back(parse_u64(part, "coefficient"));
  return from_coeffs(msf);
}

FieldPtr parse_field(std::string_view text) {
  static const std::regex re(R"(^GF\((\d+)(?:\^(\d+))?(?:;modulus=([0-9,]+))?\)$)");
  const std::string s = trim_spaces(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("malformed field spec '" + std::string(text) + "'");
  std::uint64_t base = parse_u64(m[1].str(), "field size");
  unsigned k = m[2].matched ? static_cast<unsigned>(parse_u64(m[2].str(), "extension degree")) : 0;
  std::uint64_t p = base;
  if (!is_prime(base)) {
    if (k != 0) throw ParseError("GF(p^k) needs a prime p, got " + std::to_string(base));
    auto f = prime_factors(base);
    if (f.size() != 1) throw ParseError(std::to_string(base) + " is not a prime power");
    p = f[0];
    k = 0;
    for (std::uint64_t v = base; v > 1; v /= p) ++k;
  }
  if (m[3].matched) {
    std::vector<std::uint64_t> mod;
    for (auto& part : split_commas(m[3].str())) mod.push_back(parse_u64(part, "modulus coefficient"));
    if (k != 0 && mod.size() != k + 1)
      throw ParseError("modulus degree " + std::to_string(mod.size() - 1) + " does not match k = " + std::to_string(k));
    try {
      return Field::make(p, std::move(mod));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (k == 0) k = 1;
  return Field::make(p, k);
}

FieldElement::FieldElement(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_) throw DomainError("field element without a field");
  if (code_ >= field_->order()) throw DomainError("element code out of range");
}

FieldElement FieldElement::from_int(FieldPtr field, std::int64_t v) {
  const Code c = field->from_int(v);
  return FieldElement(std::move(field), c);
}

FieldElement FieldElement::generator(FieldPtr field) {
  const Code c = field->generator();
  return FieldElement(std::move(field), c);
}

const Field& FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw DomainError("operands live in different fields");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, same_field(o).add(code_, o.code_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, same_field(o).sub(code_, o.code_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, same_field(o).mul(code_, o.code_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const {
  const Field& f = same_field(o);
  return {field_, f.mul(code_, f.inv(o.code_))};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
FieldElement FieldElement::inverse() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::frobenius() const { return {field_, field_->frobenius(code_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return code_ == o.code_ && (field_ == o.field_ || *field_ == *o.field_);
}

unsigned frobenius_orbit_degree(const FieldElement& a) {
  const Field& f = *a.field();
  unsigned e = 1;
  for (Code b = f.frobenius(a.code()); b != a.code(); b = f.frobenius(b)) ++e;
  return e;
}

FieldElement embed(const FieldElement& a, const FieldPtr& target) {
  const Field& src = *a.field();
  if (src.characteristic() != target->characteristic() || target->degree() % src.degree() != 0)
    throw DomainError("no embedding of " + src.spec() + " into " + target->spec());
  if (src == *target) return FieldElement(target, a.code());
  if (src.degree() == 1) return FieldElement(target, a.code());
  const auto& msf = src.modulus();
  UPoly::Vec g(msf.rbegin(), msf.rend());  // prime-field coefficients embed as themselves
  std::vector<Code> roots;
  split_roots(*target, g, roots);
  const Code root = *std::min_element(roots.begin(), roots.end());
  // Horner on the source coefficients.
  Code image = 0;
  for (auto c : src.coeffs(a.code())) image = target->add(target->mul(image, root), c);
  return FieldElement(target, image);
}

namespace {

// Solves lambda^2 + lambda = alpha inside alpha's field; false if no solution.
bool solve_as_in_field(const Field& f, Code alpha, Code& lambda) {
  const unsigned k = f.degree();
  struct Row {
    Code vec;
    Code combo;
  };
  std::vector<Row> basis;  // distinct leading bits
  auto lead = [](Code v) { return 63 - __builtin_clzll(v); };
  for (unsigned i = 0; i < k; ++i) {
    const Code ti = Code{1} << i;
    Row r{f.add(f.mul(ti, ti), ti), ti};
    for (const auto& b : basis)
      if (r.vec != 0 && ((r.vec >> lead(b.vec)) & 1)) {
        r.vec ^= b.vec;
        r.combo ^= b.combo;
      }
    if (r.vec == 0) continue;
    for (auto& b : basis)
      if ((b.vec >> lead(r.vec)) & 1) {
        b.vec ^= r.vec;
        b.combo ^= r.combo;
      }
    basis.push_back(r);
  }
  Code rest = alpha, sol = 0;
  for (const auto& b : basis)
    if ((rest >> lead(b.vec)) & 1) {
      rest ^= b.vec;
      sol ^= b.combo;
    }
  if (rest != 0) return false;
  lambda = sol;
  return true;
}

}  // namespace

FieldElement artin_schreier_solve(const FieldElement& alpha) {
  const Field& f = *alpha.field();
  if (f.characteristic() != 2) throw DomainError("Artin-Schreier solving needs characteristic 2");
  Code lambda = 0;
  if (solve_as_in_field(f, alpha.code(), lambda)) return FieldElement(alpha.field(), lambda);
  if (2 * f.degree() > 62) throw DomainError("quadratic extension of " + f.spec() + " is too large");
  auto big = Field::make(2, 2 * f.degree());
  FieldElement lifted = embed(alpha, big);
  if (!solve_as_in_field(*big, lifted.code(), lambda))
    throw DomainError("Artin-Schreier equation unsolvable in the quadratic extension");  // unreachable
  return FieldElement(big, lambda);
}

unsigned m_alpha(const FieldElement& alpha) {
  if (alpha.field()->characteristic() != 2) throw DomainError("m(alpha) is defined in characteristic 2");
  if (alpha.is_zero()) throw DomainError("m(alpha) needs alpha != 0");
  return frobenius_orbit_degree(artin_schreier_solve(alpha));
}

unsigned d_lambda(const FieldElement& lambda) {
  if (lambda.field()->characteristic() != 3) throw DomainError("d(lambda) is defined in characteristic 3");
  if (lambda.is_zero() || lambda.is_one()) throw DomainError("d(lambda) needs lambda not in {0, 1}");
  return frobenius_orbit_degree(lambda);
}

}  // namespace hk::gf
