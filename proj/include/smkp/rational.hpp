// Copyright 2026 The Authors.
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

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "smkp/errors.hpp"

namespace smkp {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. The whole library is templated on the value type;
// Rational is the default and the only mode in which guarantee checks are
// meaningful. double instantiations exist for callers that prefer speed over
// exactness.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(long long p, long long q = 1) {
  require(q != 0, ErrorCode::kMalformedInput, "rational with zero denominator");
  BigInt bp(p);
  BigInt bq(q);
  if (bq < 0) {  // the rational backend insists on a positive denominator
    bp = -bp;
    bq = -bq;
  }
  return Rational(bp, bq);
}

// Canonical "p/q" form, fully reduced, q > 0. Integers render as "p/1" so the
// format round-trips without a special case.
inline std::string to_fraction_string(const Rational& q) {
  return num(q).str() + "/" + den(q).str();
}

// Accepts "p/q" or a bare integer "p". Throws kMalformedInput on anything else.
inline Rational parse_fraction(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  // The big-integer backend accepts '-' but not '+', and the rational
  // backend insists on a positive denominator; both shapes are legal here.
  auto to_bigint = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  std::string_view num_part = text.substr(0, slash);
  require(is_int(num_part), ErrorCode::kMalformedInput,
          "bad rational literal: '" + std::string(text) + "'");
  BigInt p = to_bigint(num_part);
  BigInt q = 1;
  if (slash != std::string_view::npos) {
    std::string_view den_part = text.substr(slash + 1);
    require(is_int(den_part), ErrorCode::kMalformedInput,
            "bad rational literal: '" + std::string(text) + "'");
    q = to_bigint(den_part);
    require(q != 0, ErrorCode::kMalformedInput,
            "zero denominator in '" + std::string(text) + "'");
  }
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return Rational(p, q);
}

inline BigInt floor_rational(const Rational& q) {
  BigInt d = num(q) / den(q);  // truncates toward zero
  if (q < 0 && d * den(q) != num(q)) --d;
  return d;
}

inline BigInt ceil_rational(const Rational& q) {
  BigInt d = num(q) / den(q);
  if (q > 0 && d * den(q) != num(q)) ++d;
  return d;
}

inline std::size_t to_size(const BigInt& b) {
  require(b >= 0, ErrorCode::kInternalInvariant, "negative count");
  require(b <= BigInt(std::numeric_limits<std::size_t>::max()), ErrorCode::kSizeLimit,
          "count does not fit in a machine word");
  return static_cast<std::size_t>(b.convert_to<std::uint64_t>());
}

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

// ---------------------------------------------------------------------------
// Certified constants and interval arithmetic for the transcendental bounds.
// Every guarantee check compares against the side that keeps the check sound:
// a check passes only if the true inequality provably holds.

// 0.632120 < 1 - 1/e = 0.6321205588...
inline const Rational& one_minus_inv_e_lb() {
  static const Rational v = make_rational(632120, 1000000);
  return v;
}

// 271828/100000 < e < 271829/100000.
inline const Rational& e_lb() {
  static const Rational v = make_rational(271828, 100000);
  return v;
}
inline const Rational& e_ub() {
  static const Rational v = make_rational(271829, 100000);
  return v;
}

struct RationalInterval {
  Rational lo;
  Rational hi;
};

// Brackets e^x for rational x >= 0 with a Taylor partial sum plus a geometric
// tail bound. `terms` trades precision for cost; callers refine on demand.
inline RationalInterval exp_interval(const Rational& x, unsigned terms = 32) {
  require(x >= 0, ErrorCode::kInternalInvariant, "exp_interval wants x >= 0");
  // Ensure x / (N + 2) <= 1/2 so the tail is dominated by a ratio-1/2 series.
  unsigned n_terms = terms;
  const BigInt xc = ceil_rational(x);
  if (xc > 0) {
    n_terms += 2 * to_size(xc);
  }
  Rational sum = 1;
  Rational term = 1;
  for (unsigned k = 1; k <= n_terms; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  // Tail after n_terms: next term * 1 / (1 - x/(n_terms+2)).
  Rational next = term * x / (n_terms + 1);
  Rational ratio = x / (n_terms + 2);
  Rational tail = next / (Rational(1) - ratio);
  return RationalInterval{sum, sum + tail};
}

// Brackets 1 - e^{-x} for rational x >= 0.
inline RationalInterval one_minus_exp_neg_interval(const Rational& x,
                                                   unsigned terms = 32) {
  RationalInterval ex = exp_interval(x, terms);
  // e^{-x} lies in [1/ex.hi, 1/ex.lo].
  return RationalInterval{Rational(1) - Rational(1) / ex.lo,
                          Rational(1) - Rational(1) / ex.hi};
}

// ---------------------------------------------------------------------------
// Value-type adaptation. Rational is exact; double is the opt-in fast mode.

template <class V>
struct ValueTraits;

template <>
struct ValueTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <>
struct ValueTraits<double> {
  static constexpr bool kExact = false;
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double to_double(double v) { return v; }
};

}  // namespace smkp
