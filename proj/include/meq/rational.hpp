// Copyright 2026 The meq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

// Boost's byte-container detection trait is not SFINAE-safe against Eigen 3.4
// expression types (their nested const_iterator can be void), which turns a
// harmless overload probe into a hard compile error. Declaring the trait false
// for the Eigen templates that participate in scalar-promotion overload
// resolution keeps Matrix<cpp_rational> arithmetic and FullPivLU usable.
namespace boost {
namespace multiprecision {
namespace detail {

template <typename S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>>
    : public std::false_type {};
template <typename X, int R, int C, bool P>
struct is_byte_container<Eigen::Block<X, R, C, P>> : public std::false_type {};
template <typename X>
struct is_byte_container<Eigen::Transpose<X>> : public std::false_type {};
template <typename L, typename R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : public std::false_type {};
template <typename B, typename L, typename R>
struct is_byte_container<Eigen::CwiseBinaryOp<B, L, R>>
    : public std::false_type {};
template <typename U, typename X>
struct is_byte_container<Eigen::CwiseUnaryOp<U, X>> : public std::false_type {};
template <typename X, int O, typename S>
struct is_byte_container<Eigen::Ref<X, O, S>> : public std::false_type {};

}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <string>

namespace meq {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Serialized form: "3", "-1/2". Whitespace is not accepted.
inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rational(BigInt(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return Rational(BigInt(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace meq
