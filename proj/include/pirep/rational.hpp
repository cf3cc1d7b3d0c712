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
#include <string>

namespace pirep {

// Exact arithmetic only: rationalizability hinges on strict inequalities and
// the scale weights outgrow 64 bits well below the n = 20 universe cap.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p" or "p/q" with arbitrary-precision integers and q > 0.
// Throws InputError with code ZeroDenominator or MalformedRational.
Rational parse_rational(const std::string& text);

// Lowest-terms rendering: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& v);

}  // namespace pirep
