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

#ifndef ROF_DISTANCE_H_
#define ROF_DISTANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rof/formula.h"
#include "rof/oracle.h"

namespace rof {

// Cost sentinel for targets no assignment reaches. Sums saturate here.
inline constexpr std::uint64_t kUnreachable = std::uint64_t{1} << 62;

constexpr std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a + b >= kUnreachable ? kUnreachable : a + b;
}

// cost / size as an exact rational. size 0 (no variables) counts as 0 or
// unreachable depending on cost.
struct Farness {
  std::uint64_t cost = 0;
  std::uint64_t size = 0;

  bool reachable() const { return cost < kUnreachable; }
  double value() const;
  // cost / size >= num / den, exactly.
  bool at_least(std::uint64_t num, std::uint64_t den) const;
  // cost / size >= eps, with eps taken as the exact binary value of the double.
  bool at_least(double eps) const;
  std::string to_string() const;  // "cost/size" or "unreachable"
};

// Minimum number of variable changes that make each vertex output each
// symbol. Variables only take the values 0 and 1.
class CostTable {
 public:
  CostTable(std::size_t vertices, std::size_t symbols)
      : symbols_(symbols), data_(vertices * symbols, kUnreachable) {}

  std::uint64_t at(VertexId v, Symbol s) const { return data_[v * symbols_ + s]; }
  std::uint64_t& at(VertexId v, Symbol s) { return data_[v * symbols_ + s]; }
  std::uint64_t best(VertexId v, SymbolSet targets) const;
  std::size_t symbols() const { return symbols_; }

 private:
  std::size_t symbols_;
  std::vector<std::uint64_t> data_;
};

CostTable cost_table(const Formula& f, const Assignment& a);

std::uint64_t exact_cost(const Formula& f, const Assignment& a, SymbolSet targets);
std::uint64_t exact_cost(const Formula& f, const Assignment& a, Symbol target);
Farness farness(const Formula& f, const Assignment& a, SymbolSet targets);
Farness farness(const Formula& f, const Assignment& a, Symbol target);

// A closest assignment whose root value is in `targets`, or nullopt.
std::optional<Assignment> nearest_assignment(const Formula& f, const Assignment& a,
                                             SymbolSet targets);

// Exhaustive search over the formula's own variables (at most
// kBruteForceLimit of them); nullopt when unreachable.
inline constexpr std::size_t kBruteForceLimit = 20;
std::optional<std::uint64_t> brute_force_distance(const Formula& f,
                                                  const Assignment& a,
                                                  SymbolSet targets);

struct CriticalReport {
  std::vector<VertexId> critical;   // important variable leaves
  std::vector<VertexId> important;  // in depth-first order
  double eps = 0;
};

// Important vertices: the assignment falsifies f and every u on the path
// from the root to v (v included) has farness at least
// L * (1 + L)^floor(depth(u) / 3) with L = local_factor * eps, and every
// Or ancestor other than v continues the path through its heaviest child.
// Requires a basic formula.
CriticalReport list_critical_vertices(const Formula& f, const Assignment& a,
                                      double eps, double local_factor = 2.0 / 3.0);

}  // namespace rof

#endif  // ROF_DISTANCE_H_
