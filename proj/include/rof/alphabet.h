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

#ifndef ROF_ALPHABET_H_
#define ROF_ALPHABET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rof {

// A symbol is the position of a letter inside its Alphabet.
using Symbol = std::uint8_t;

// A set of symbols, used for acceptance conditions ("root value is in S").
class SymbolSet {
 public:
  constexpr SymbolSet() = default;
  static constexpr SymbolSet single(Symbol s) { return SymbolSet(1u << s); }
  static constexpr SymbolSet from_mask(std::uint32_t mask) {
    return SymbolSet(mask);
  }

  constexpr bool contains(Symbol s) const { return (mask_ >> s) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint32_t mask() const { return mask_; }
  constexpr SymbolSet with(Symbol s) const { return SymbolSet(mask_ | 1u << s); }

  friend constexpr bool operator==(SymbolSet, SymbolSet) = default;

 private:
  constexpr explicit SymbolSet(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

// An ordered list of distinct symbols. Three alphabets exist:
//   Boolean      {0, 1}
//   four-valued  {0, 1, P, F}
//   five-valued  {0, F0, P, F1, 1}  (ordered 0 < F0 < P < F1 < 1)
// Every symbol has a display name and a one-character code used by the
// assignment text format. Variables only ever take the two "input" symbols
// named 0 and 1.
class Alphabet {
 public:
  enum class Kind : std::uint8_t { kBoolean, kFourValued, kFiveValued };

  static const Alphabet& boolean();
  static const Alphabet& four_valued();
  static const Alphabet& five_valued();

  Kind kind() const { return kind_; }
  std::size_t size() const { return names_.size(); }
  bool is_boolean() const { return kind_ == Kind::kBoolean; }

  const std::string& name(Symbol s) const { return names_.at(s); }
  char code(Symbol s) const { return codes_.at(s); }
  std::optional<Symbol> find_name(std::string_view name) const;
  std::optional<Symbol> find_code(char c) const;

  // The symbols named "0" and "1".
  Symbol zero() const { return zero_; }
  Symbol one() const { return one_; }
  std::span<const Symbol> input_domain() const { return inputs_; }

  // Boolean: {1}. Four-valued: {0,1,P}. Five-valued: {0,F0,P}.
  SymbolSet default_accept() const { return accept_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.kind_ == b.kind_;
  }

 private:
  Alphabet(Kind kind, std::vector<std::string> names, std::string codes,
           SymbolSet accept);

  Kind kind_;
  std::vector<std::string> names_;
  std::string codes_;
  Symbol zero_ = 0;
  Symbol one_ = 1;
  std::vector<Symbol> inputs_;
  SymbolSet accept_;
};

}  // namespace rof

#endif  // ROF_ALPHABET_H_
