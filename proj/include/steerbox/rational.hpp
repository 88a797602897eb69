// Copyright 2026 The steerbox Authors
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

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace steerbox {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "num/den", "num", or a terminating decimal such as "0.375".
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text; integers are written as "num/1".
std::string format_rational(const Rational &value);

double to_double(const Rational &value);

/// Exact conversion of a double whose value is k / 2^max_exponent for some
/// integer k. Returns nullopt for anything finer (e.g. 0.707).
std::optional<Rational> dyadic_from_double(double value, int max_exponent = 20);

}  // namespace steerbox
