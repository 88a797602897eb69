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

#include "steerbox/rational.hpp"

#include <cctype>
#include <cmath>

#include "steerbox/error.hpp"

namespace steerbox {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::InvalidBox:
            return "invalid-box";
        case ErrorCode::Signaling:
            return "signaling-box";
        case ErrorCode::InvalidState:
            return "invalid-state";
        case ErrorCode::InvalidAssemblage:
            return "invalid-assemblage";
        case ErrorCode::Range:
            return "range";
        case ErrorCode::Nonlocal:
            return "nonlocal-box";
        case ErrorCode::NonRational:
            return "non-rational-box";
        case ErrorCode::Config:
            return "config";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// cpp_int reads a leading 0 as an octal prefix.
BigInt decimal_digits(std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return BigInt{std::string(s.empty() ? "0" : s)};
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw Error(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
    }
    BigInt v = decimal_digits(s);
    return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) {
            throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            int_part.remove_prefix(1);
        }
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
        }
        std::string digits = std::string(int_part) + std::string(frac_part);
        BigInt num = decimal_digits(digits);
        BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
        Rational r(num, den);
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text, text));
}

std::string format_rational(const Rational &value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational &value) { return value.convert_to<double>(); }

std::optional<Rational> dyadic_from_double(double value, int max_exponent) {
    if (!std::isfinite(value) || std::fabs(value) > 1e6) {
        return std::nullopt;
    }
    double scaled = std::ldexp(value, max_exponent);
    if (scaled != std::trunc(scaled)) {
        return std::nullopt;
    }
    auto numer = static_cast<long long>(scaled);
    return Rational(BigInt(numer), boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(max_exponent)));
}

}  // namespace steerbox
