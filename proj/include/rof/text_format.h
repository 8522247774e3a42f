//
// Copyright 2026 The ROF Toolkit Authors
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
//

#ifndef ROF_TEXT_FORMAT_H_
#define ROF_TEXT_FORMAT_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rof/formula.h"
#include "rof/oracle.h"

namespace rof {

// Syntax error with a 1-based source position.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Formula text:
//   expr := xN | 0 | 1 | (not expr) | (and expr+) | (or expr+)
//         | (tblA TABLE expr{A}) | (mdnfA TERMS expr{A}) | (mvA NAME expr{A})
// TABLE holds |Σ|^A symbol index digits, child 0 least significant.
// TERMS is '/'-separated child-position lists joined by ',' ("0,1/2").
// NAME is bal4 or bal5. `;` starts a line comment. The alphabet is taken
// from the mv gates, or from table lengths when there are none.
//
// Throws ParseError on syntax problems and FormulaError on structural ones
// (duplicate variables, arity or table mismatches).
Formula parse_formula(std::string_view text);

// Inverse of parse_formula; parse_formula(serialize(f)) == f.
std::string serialize(const Formula& f);

// One symbol code per character, position i is x_i. Whitespace is ignored.
Assignment parse_assignment(std::string_view text, const Alphabet& alphabet);
std::string format_assignment(const Assignment& a);

// Reads a whole file; throws std::runtime_error on failure.
std::string read_file(const std::string& path);

// `@path` reads the assignment from a file, anything else is literal.
Assignment load_assignment(const std::string& arg, const Alphabet& alphabet);

}  // namespace rof

#endif  // ROF_TEXT_FORMAT_H_
