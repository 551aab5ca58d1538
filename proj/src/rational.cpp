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

#include "hk/rational.hpp"

namespace hk {

std::string to_string(const Rational& r) {
  const Integer num = numerator_of(r);
  const Integer den = denominator_of(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  Integer num = numerator_of(r);
  const Integer den = denominator_of(r);
  std::string out;
  if (num < 0) {
    out.push_back('-');
    num = -num;
  }
  Integer whole = num / den;
  Integer rest = num % den;
  out += whole.str();
  if (digits == 0) return out;
  out.push_back('.');
  for (unsigned i = 0; i < digits; ++i) {
    rest *= 10;
    out += Integer(rest / den).str();
    rest %= den;
  }
  return out;
}

}  // namespace hk
