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

#include "rof/alphabet.h"

#include <algorithm>
#include <cassert>

namespace rof {

Alphabet::Alphabet(Kind kind, std::vector<std::string> names, std::string codes,
                   SymbolSet accept)
    : kind_(kind),
      names_(std::move(names)),
      codes_(std::move(codes)),
      accept_(accept) {
  assert(names_.size() == codes_.size());
  zero_ = *find_name("0");
  one_ = *find_name("1");
  inputs_ = {zero_, one_};
}

const Alphabet& Alphabet::boolean() {
  static const Alphabet kAlphabet(Kind::kBoolean, {"0", "1"}, "01",
                                  SymbolSet::single(1));
  return kAlphabet;
}

const Alphabet& Alphabet::four_valued() {
  // 0, 1, P, F; accepted iff the root is not F.
  static const Alphabet kAlphabet(Kind::kFourValued, {"0", "1", "P", "F"},
                                  "01PF", SymbolSet::from_mask(0b0111));
  return kAlphabet;
}

const Alphabet& Alphabet::five_valued() {
  // 0 < F0 < P < F1 < 1; accepted iff the root is neither F1 nor 1.
  static const Alphabet kAlphabet(Kind::kFiveValued,
                                  {"0", "F0", "P", "F1", "1"}, "0LPH1",
                                  SymbolSet::from_mask(0b00111));
  return kAlphabet;
}

std::optional<Symbol> Alphabet::find_name(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Symbol>(it - names_.begin());
}

std::optional<Symbol> Alphabet::find_code(char c) const {
  auto pos = codes_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Symbol>(pos);
}

}  // namespace rof
