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

#include "hk/poly.hpp"

#include <algorithm>
#include <cctype>

#include "hk/error.hpp"

namespace hk {

using gf::Code;

HomogeneousPoly::HomogeneousPoly(gf::FieldPtr field, unsigned degree) : field_(std::move(field)), degree_(degree) {
  if (!field_) throw DomainError("polynomial without a field");
}

HomogeneousPoly HomogeneousPoly::from_terms(gf::FieldPtr field,
                                            const std::vector<std::pair<Monomial, Code>>& terms) {
  if (terms.empty()) throw DomainError("empty term list");
  HomogeneousPoly out(std::move(field), terms.front().first.degree());
  for (const auto& [m, c] : terms) out.add_term(m, c);
  return out;
}

Code HomogeneousPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void HomogeneousPoly::add_term(const Monomial& m, Code c) {
  if (m.degree() != degree_)
    throw DomainError("term of degree " + std::to_string(m.degree()) + " in a polynomial of degree " +
                      std::to_string(degree_));
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  HomogeneousPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  HomogeneousPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, field_->neg(c));
  return out;
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  HomogeneousPoly out(field_, degree_ + o.degree_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, field_->mul(c1, c2));
  return out;
}

HomogeneousPoly HomogeneousPoly::scaled(Code c) const {
  HomogeneousPoly out(field_, degree_);
  for (const auto& [m, v] : terms_) out.add_term(m, field_->mul(v, c));
  return out;
}

gf::FieldElement HomogeneousPoly::evaluate(const std::array<gf::FieldElement, 3>& point) const {
  const gf::Field& f = *field_;
  for (const auto& e : point)
    if (!(*e.field() == f)) throw DomainError("point and polynomial live in different fields");
  Code acc = 0;
  for (const auto& [m, c] : terms_) {
    Code t = c;
    t = f.mul(t, f.pow(point[0].code(), m.a));
    t = f.mul(t, f.pow(point[1].code(), m.b));
    t = f.mul(t, f.pow(point[2].code(), m.c));
    acc = f.add(acc, t);
  }
  return gf::FieldElement(field_, acc);
}

std::string HomogeneousPoly::str() const {
  if (terms_.empty()) return "0";
  const gf::Field& f = *field_;
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    std::string coeff = f.degree() == 1 ? f.format(c) : "[" + f.format(c) + "]";
    std::string mono;
    auto append = [&mono](const char* name, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    append("x", m.a);
    append("y", m.b);
    append("z", m.c);
    if (mono.empty())
      out += coeff;
    else if (c == 1)
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

namespace {

// Inhomogeneous sparse polynomial used while parsing.
using Sparse = std::map<Monomial, Code>;

class Parser {
 public:
  Parser(std::string_view text, const gf::FieldPtr& field) : s_(text), f_(*field) {}

  Sparse parse() {
    Sparse r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  static constexpr unsigned kMaxExponent = 4096;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void add_into(Sparse& acc, const Sparse& b, bool negate) const {
    for (const auto& [m, c] : b) {
      Code v = negate ? f_.neg(c) : c;
      auto [it, inserted] = acc.try_emplace(m, v);
      if (!inserted) {
        it->second = f_.add(it->second, v);
        if (it->second == 0) acc.erase(it);
      }
    }
  }

  Sparse mul(const Sparse& a, const Sparse& b) const {
    Sparse r;
    for (const auto& [m1, c1] : a)
      for (const auto& [m2, c2] : b) add_into(r, Sparse{{m1 * m2, f_.mul(c1, c2)}}, false);
    return r;
  }

  Sparse constant(Code c) const {
    if (c == 0) return {};
    return Sparse{{Monomial{}, c}};
  }

  std::uint64_t number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return std::stoull(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("number out of range");
    }
  }

  Sparse expr() {
    Sparse acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    add_into(acc, term(), negate);
    while (true) {
      if (accept('+'))
        add_into(acc, term(), false);
      else if (accept('-'))
        add_into(acc, term(), true);
      else
        break;
    }
    return acc;
  }

  Sparse term() {
    Sparse acc = factor();
    while (accept('*')) acc = mul(acc, factor());
    return acc;
  }

  Sparse factor() {
    if (accept('-')) {
      Sparse inner = factor();
      Sparse out;
      add_into(out, inner, true);
      return out;
    }
    Sparse base = primary();
    if (accept('^')) {
      const std::uint64_t e = number();
      if (e > kMaxExponent) fail("exponent too large");
      Sparse r = constant(1);
      for (std::uint64_t i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  Sparse primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Sparse r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (ch == '[') {
      const std::size_t close = s_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated '['");
      Code c = 0;
      try {
        c = f_.parse_element(s_.substr(pos_, close - pos_ + 1));
      } catch (const ParseError& e) {
        fail(e.what());
      }
      pos_ = close + 1;
      return constant(c);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return constant(static_cast<Code>(number() % f_.characteristic()));
    ++pos_;
    switch (ch) {
      case 'x':
        return Sparse{{Monomial{1, 0, 0}, 1}};
      case 'y':
        return Sparse{{Monomial{0, 1, 0}, 1}};
      case 'z':
        return Sparse{{Monomial{0, 0, 1}, 1}};
      case 't':
        if (f_.degree() == 1) {
          --pos_;
          fail("the generator t is only available in extension fields");
        }
        return constant(f_.generator());
      default:
        --pos_;
        fail("unexpected '" + std::string(1, ch) + "'");
    }
  }

  std::string_view s_;
  const gf::Field& f_;
  std::size_t pos_ = 0;
};

}  // namespace

HomogeneousPoly parse_poly(std::string_view text, const gf::FieldPtr& field) {
  Sparse terms = Parser(text, field).parse();
  if (terms.empty()) throw ParseError("zero polynomial");
  const unsigned d0 = terms.begin()->first.degree();
  for (const auto& [m, c] : terms)
    if (m.degree() != d0)
      throw ParseError("inhomogeneous polynomial: terms of degree " + std::to_string(std::max(d0, m.degree())) +
                       " and " + std::to_string(std::min(d0, m.degree())));
  HomogeneousPoly out(field, d0);
  for (const auto& [m, c] : terms) out.add_term(m, c);
  return out;
}

HomogeneousPoly partial(const HomogeneousPoly& f, Var v) {
  const gf::Field& field = f.gf();
  HomogeneousPoly out(f.field(), f.degree() == 0 ? 0 : f.degree() - 1);
  for (const auto& [m, c] : f.terms()) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    Monomial n = m;
    n.exponent(v) = e - 1;
    out.add_term(n, field.mul(c, field.from_int(e)));
  }
  return out;
}

HomogeneousPoly substitute_linear(const HomogeneousPoly& f, const std::array<std::array<Code, 3>, 3>& m) {
  const auto& field = f.field();
  std::array<HomogeneousPoly, 3> forms{HomogeneousPoly(field, 1), HomogeneousPoly(field, 1),
                                       HomogeneousPoly(field, 1)};
  for (int i = 0; i < 3; ++i) {
    forms[i].add_term({1, 0, 0}, m[i][0]);
    forms[i].add_term({0, 1, 0}, m[i][1]);
    forms[i].add_term({0, 0, 1}, m[i][2]);
  }
  // powers[i][e] = forms[i]^e
  std::array<std::vector<HomogeneousPoly>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    HomogeneousPoly one(field, 0);
    one.add_term({}, 1);
    powers[i].push_back(one);
    for (unsigned e = 1; e <= f.degree(); ++e) powers[i].push_back(powers[i].back() * forms[i]);
  }
  HomogeneousPoly out(field, f.degree());
  for (const auto& [mono, c] : f.terms())
    out = out + (powers[0][mono.a] * powers[1][mono.b] * powers[2][mono.c]).scaled(c);
  return out;
}

HomogeneousPoly permute_variables(const HomogeneousPoly& f, const std::array<Var, 3>& perm) {
  HomogeneousPoly out(f.field(), f.degree());
  for (const auto& [m, c] : f.terms()) {
    Monomial n;
    n.exponent(perm[0]) = m.a;
    n.exponent(perm[1]) = m.b;
    n.exponent(perm[2]) = m.c;
    out.add_term(n, c);
  }
  return out;
}

unsigned multiplicity_at(const HomogeneousPoly& f, const std::array<gf::FieldElement, 3>& point) {
  const gf::Field& field = f.gf();
  for (const auto& e : point)
    if (!(*e.field() == field)) throw DomainError("point and polynomial live in different fields");
  int chart = -1;
  for (int i = 2; i >= 0; --i)
    if (!point[i].is_zero()) {
      chart = i;
      break;
    }
  if (chart < 0) throw DomainError("(0:0:0) is not a projective point");
  const Code scale = field.inv(point[chart].code());
  std::array<Code, 3> pt;
  for (int i = 0; i < 3; ++i) pt[i] = field.mul(point[i].code(), scale);
  std::array<int, 2> others{};
  for (int i = 0, j = 0; i < 3; ++i)
    if (i != chart) others[j++] = i;

  // Binomial coefficients mod p up to degree d.
  const unsigned d = f.degree();
  std::vector<std::vector<Code>> binom(d + 1);
  for (unsigned n = 0; n <= d; ++n) {
    binom[n].assign(n + 1, 1);
    for (unsigned r = 1; r < n; ++r) binom[n][r] = field.add(binom[n - 1][r - 1], binom[n - 1][r]);
  }

  // Translated affine polynomial in (u, v), keyed by exponent pair.
  std::map<std::pair<unsigned, unsigned>, Code> g;
  for (const auto& [m, c] : f.terms()) {
    const std::array<unsigned, 3> e{m.a, m.b, m.c};
    const unsigned eu = e[others[0]];
    const unsigned ev = e[others[1]];
    const Code pu = pt[others[0]];
    const Code pv = pt[others[1]];
    // (u + pu)^eu (v + pv)^ev
    for (unsigned i = 0; i <= eu; ++i) {
      const Code cu = field.mul(binom[eu][i], field.pow(pu, eu - i));
      if (cu == 0) continue;
      for (unsigned j = 0; j <= ev; ++j) {
        const Code cv = field.mul(binom[ev][j], field.pow(pv, ev - j));
        if (cv == 0) continue;
        Code& slot = g[{i, j}];
        slot = field.add(slot, field.mul(c, field.mul(cu, cv)));
      }
    }
  }
  unsigned best = ~0u;
  for (const auto& [e, c] : g)
    if (c != 0) best = std::min(best, e.first + e.second);
  if (best == ~0u) throw DomainError("polynomial vanishes identically in the chart");
  return best;
}

PlaneCurve::PlaneCurve(HomogeneousPoly f, bool irreducible_asserted, std::optional<bool> known_smooth)
    : f_(std::move(f)), irreducible_asserted_(irreducible_asserted), known_smooth_(known_smooth) {
  if (f_.is_zero()) throw DomainError("plane curve with zero equation");
  if (f_.degree() < 2) throw DomainError("plane curve needs degree d > 1, got " + std::to_string(f_.degree()));
}

}  // namespace hk
