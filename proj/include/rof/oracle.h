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

#ifndef ROF_ORACLE_H_
#define ROF_ORACLE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rof/alphabet.h"

namespace rof {

// A value for every variable index. Immutable once built.
class Assignment {
 public:
  Assignment(const Alphabet& alphabet, std::vector<Symbol> values)
      : alphabet_(&alphabet), values_(std::move(values)) {
    for (Symbol s : values_) {
      if (s >= alphabet_->size()) {
        throw std::invalid_argument("assignment symbol outside alphabet");
      }
    }
  }

  const Alphabet& alphabet() const { return *alphabet_; }
  std::size_t size() const { return values_.size(); }
  Symbol operator[](std::size_t i) const { return values_[i]; }
  Symbol at(std::size_t i) const {
    if (i >= values_.size()) {
      throw std::out_of_range("variable x" + std::to_string(i) +
                              " outside assignment of length " +
                              std::to_string(values_.size()));
    }
    return values_[i];
  }
  std::span<const Symbol> values() const { return values_; }

  // Copy with one position replaced.
  Assignment with(std::size_t i, Symbol s) const {
    std::vector<Symbol> v = values_;
    v.at(i) = s;
    return Assignment(*alphabet_, std::move(v));
  }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return *a.alphabet_ == *b.alphabet_ && a.values_ == b.values_;
  }

 private:
  const Alphabet* alphabet_;
  std::vector<Symbol> values_;
};

// Point-query access to an assignment. Every call counts, repeats included.
// Not thread-safe; each trial owns its oracle.
class CountingOracle {
 public:
  explicit CountingOracle(const Assignment& assignment)
      : assignment_(&assignment) {}

  Symbol query(std::size_t var) {
    Symbol s = assignment_->at(var);
    ++count_;
    return s;
  }
  std::uint64_t query_count() const { return count_; }
  const Alphabet& alphabet() const { return assignment_->alphabet(); }
  std::size_t size() const { return assignment_->size(); }

 private:
  const Assignment* assignment_;
  std::uint64_t count_ = 0;
};

inline CountingOracle make_counting_oracle(const Assignment& a) {
  return CountingOracle(a);
}

}  // namespace rof

#endif  // ROF_ORACLE_H_
