// Copyright 2026 The Ratimpl Authors
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

#ifndef RATIMPL_RATIONAL_H_
#define RATIMPL_RATIONAL_H_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratimpl {

// Exact rational arithmetic. Every comparison the toolkit makes is an exact
// strict or weak inequality, so floating point is never used anywhere.
// cpp_rational keeps values canonical (gcd 1, positive denominator).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "p/q" or a plain integer such as "-3". Whitespace around tokens is
// accepted. Throws std::invalid_argument on malformed input or q == 0.
Rational ParseRational(const std::string& text);

// Canonical text form: "n" for integers, "p/q" otherwise.
std::string FormatRational(const Rational& value);

}  // namespace ratimpl

#endif  // RATIMPL_RATIONAL_H_
