// Copyright 2025 The blv authors
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

#include "blv/rational.hpp"

#include <cctype>
#include <ostream>

#include "blv/errors.hpp"

namespace blv {

Rational::Rational(long n, long d) : v_(n, d) {
  if (d == 0) throw Error("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
  if (d == 0) throw Error("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses a decimal such as "-12.34e-5" exactly into p/10^k form.
std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 9) return std::nullopt;
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exp10 -= static_cast<long>(frac.size());
    if (s.substr(0, dot).empty() && frac.empty()) return std::nullopt;
    if (!digits.empty() && !all_digits(digits)) return std::nullopt;
    if (digits.empty()) return std::nullopt;
  } else {
    digits = std::string(s);
    if (!all_digits(digits)) return std::nullopt;
  }
  mpz_class num(digits, 10);
  mpz_class den(1);
  if (exp10 >= 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    num *= scale;
  } else {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
  }
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty()) return std::nullopt;
    std::string_view ncore = ns;
    if (ncore.front() == '+' || ncore.front() == '-') ncore.remove_prefix(1);
    if (!all_digits(ncore) || !all_digits(ds)) return std::nullopt;
    mpz_class num(std::string(ns), 10);
    mpz_class den(std::string(ds), 10);
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }
  return parse_decimal(s);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }

Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

Rational pow2tower(unsigned i, unsigned max_index) {
  if (i > max_index || i > kMaxPow2TowerIndex) {
    throw LimitError("pow2tower: index " + std::to_string(i) +
                     " exceeds maximum " +
                     std::to_string(std::min(max_index, kMaxPow2TowerIndex)));
  }
  mpz_class den;
  mpz_class one(1);
  mpz_mul_2exp(den.get_mpz_t(), one.get_mpz_t(), 1ul << i);
  return Rational(mpz_class(1), den);
}

Rational rational_pow2(long e) {
  mpz_class shifted;
  mpz_class one(1);
  mpz_mul_2exp(shifted.get_mpz_t(), one.get_mpz_t(),
               static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(shifted, mpz_class(1));
  return Rational(mpz_class(1), shifted);
}

}  // namespace blv
