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

#include "rof/lowerbound.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rof {
namespace {

void check_height(unsigned h) {
  if (h < 2 || h > kMaxHeight) {
    throw std::invalid_argument("height must be in [2, " +
                                std::to_string(kMaxHeight) + "]");
  }
}

std::size_t num_patterns(Dist d) { return d == Dist::kYes ? 2 : 8; }

// Value at offset `off` inside a level-k block drawn with pattern p.
std::uint8_t pattern_value(Dist d, unsigned k, std::uint8_t p, std::uint64_t off) {
  if (d == Dist::kYes) {
    const std::uint64_t half = off >> (k - 1);
    return static_cast<std::uint8_t>(p == 0 ? half : 1 - half);
  }
  const std::uint64_t quarter = off >> (k - 2);
  if (p < 4) return quarter == p ? 1 : 0;
  return quarter == static_cast<std::uint64_t>(p - 4) ? 0 : 1;
}

void fill_block(Dist d, unsigned k, std::uint8_t p, std::uint8_t* out) {
  const std::uint64_t len = std::uint64_t{1} << k;
  const std::uint64_t part = d == Dist::kYes ? len / 2 : len / 4;
  for (std::uint64_t start = 0; start < len; start += part) {
    std::fill(out + start, out + start + part, pattern_value(d, k, p, start));
  }
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s / 2;
}

}  // namespace

const char* variant_name(Variant v) {
  return v == Variant::kFourValued ? "bal4" : "bal5";
}

const char* dist_name(Dist d) { return d == Dist::kYes ? "dy" : "dn"; }

NamedGate variant_gate(Variant v) {
  return v == Variant::kFourValued ? NamedGate::kBalancing4 : NamedGate::kBalancing5;
}

const Alphabet& variant_alphabet(Variant v) {
  return named_gate_alphabet(variant_gate(v));
}

SymbolSet variant_accept(Variant v) { return variant_alphabet(v).default_accept(); }

Symbol balancing_gate(Variant v, Symbol a, Symbol b) {
  const std::size_t n = variant_alphabet(v).size();
  if (a >= n || b >= n) throw std::invalid_argument("symbol outside alphabet");
  const Symbol in[2] = {a, b};
  return named_gate_table(variant_gate(v))[table_index(in, n)];
}

Formula build_balancing_formula(Variant v, unsigned h) {
  check_height(h);
  FormulaBuilder b(variant_alphabet(v));
  const std::uint64_t n = std::uint64_t{1} << h;
  std::vector<VertexId> level;
  level.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    level.push_back(b.add(Vertex::variable(static_cast<VarIndex>(i))));
  }
  while (level.size() > 1) {
    std::vector<VertexId> up;
    up.reserve(level.size() / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
      up.push_back(b.add(Vertex::multi_valued(variant_gate(v), {level[i], level[i + 1]})));
    }
    level = std::move(up);
  }
  return std::move(b).build(n);
}

bool interval_property_check(std::span<const std::uint8_t> bits, unsigned h) {
  if (h >= 64 || bits.size() != (std::uint64_t{1} << h)) {
    throw std::invalid_argument("assignment length is not 2^h");
  }
  for (unsigned j = 1; j <= h; ++j) {
    const std::uint64_t len = std::uint64_t{1} << j;
    for (std::uint64_t start = 0; start < bits.size(); start += len) {
      std::uint64_t ones = 0;
      for (std::uint64_t i = start; i < start + len; ++i) ones += bits[i];
      if (ones != 0 && ones != len && ones != len / 2) return false;
    }
  }
  return true;
}

Assignment to_assignment(Variant v, std::span<const std::uint8_t> bits) {
  const Alphabet& alpha = variant_alphabet(v);
  std::vector<Symbol> values(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    values[i] = bits[i] ? alpha.one() : alpha.zero();
  }
  return Assignment(alpha, std::move(values));
}

std::vector<std::uint8_t> expand_blocks(Dist d, unsigned h, unsigned k,
                                        std::span<const std::uint8_t> blocks) {
  check_height(h);
  if (k < 2 || k > h) throw std::invalid_argument("level k must be in [2, h]");
  if (blocks.size() != (std::size_t{1} << (h - k))) {
    throw std::invalid_argument("wrong number of blocks");
  }
  std::vector<std::uint8_t> bits(std::size_t{1} << h);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] >= num_patterns(d)) throw std::invalid_argument("bad block pattern");
    fill_block(d, k, blocks[i], bits.data() + (i << k));
  }
  return bits;
}

LowerBoundSample sample_distribution(Dist d, unsigned h, Rng& rng) {
  check_height(h);
  LowerBoundSample s;
  s.k = 2 + static_cast<unsigned>(uniform_below(rng, h - 1));
  s.blocks.resize(std::size_t{1} << (h - s.k));
  for (auto& p : s.blocks) {
    p = static_cast<std::uint8_t>(uniform_below(rng, num_patterns(d)));
  }
  s.bits = expand_blocks(d, h, s.k, s.blocks);
  return s;
}

void sample_bits(Dist d, unsigned h, Rng& rng, std::vector<std::uint8_t>& bits) {
  check_height(h);
  const unsigned k = 2 + static_cast<unsigned>(uniform_below(rng, h - 1));
  bits.resize(std::size_t{1} << h);
  const std::size_t blocks = std::size_t{1} << (h - k);
  for (std::size_t i = 0; i < blocks; ++i) {
    const auto p = static_cast<std::uint8_t>(uniform_below(rng, num_patterns(d)));
    fill_block(d, k, p, bits.data() + (i << k));
  }
}

std::vector<unsigned> lca_level_set(std::span<const std::uint64_t> q, unsigned h) {
  for (std::uint64_t x : q) {
    if (h >= 64 || x >= (std::uint64_t{1} << h)) {
      throw std::out_of_range("query index " + std::to_string(x) + " outside 2^h");
    }
  }
  std::vector<unsigned> levels;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (q[i] == q[j]) continue;
      levels.push_back(static_cast<unsigned>(std::bit_width(q[i] ^ q[j])));
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::uint32_t outcome_code(std::span<const std::uint8_t> bits,
                           std::span<const std::uint64_t> q) {
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    code |= static_cast<std::uint32_t>(bits[q[i]] != 0) << i;
  }
  return code;
}

std::vector<double> conditional_outcomes(Dist d, std::span<const std::uint64_t> q,
                                         unsigned h, unsigned k) {
  check_height(h);
  if (k < 2 || k > h) throw std::invalid_argument("level k must be in [2, h]");
  if (q.size() > kMaxExactQueries) throw std::invalid_argument("too many queries for exact mode");
  lca_level_set(q, h);  // range check

  // Queries grouped by level-k block; blocks are independent.
  std::vector<std::uint64_t> block_ids;
  for (std::uint64_t x : q) block_ids.push_back(x >> k);
  std::sort(block_ids.begin(), block_ids.end());
  block_ids.erase(std::unique(block_ids.begin(), block_ids.end()), block_ids.end());

  std::vector<double> dist(std::size_t{1} << q.size(), 0.0);
  dist[0] = 1.0;
  const double weight = 1.0 / static_cast<double>(num_patterns(d));
  for (std::uint64_t block : block_ids) {
    std::vector<double> local(dist.size(), 0.0);
    for (std::uint8_t p = 0; p < num_patterns(d); ++p) {
      std::uint32_t code = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if ((q[i] >> k) != block) continue;
        const std::uint64_t off = q[i] & ((std::uint64_t{1} << k) - 1);
        code |= static_cast<std::uint32_t>(pattern_value(d, k, p, off)) << i;
      }
      local[code] += weight;
    }
    std::vector<double> next(dist.size(), 0.0);
    for (std::size_t a = 0; a < dist.size(); ++a) {
      if (dist[a] == 0) continue;
      for (std::size_t b = 0; b < local.size(); ++b) {
        if (local[b] != 0) next[a | b] += dist[a] * local[b];
      }
    }
    dist = std::move(next);
  }
  return dist;
}

ExactConditionalReport exact_conditional(std::span<const std::uint64_t> q, unsigned h) {
  ExactConditionalReport r;
  r.levels = lca_level_set(q, h);
  auto in_h = [&](unsigned level) {
    return std::binary_search(r.levels.begin(), r.levels.end(), level);
  };
  for (unsigned k = 2; k <= h; ++k) {
    if (in_h(k) || in_h(k - 1)) continue;
    r.admissible.push_back(k);
    if (conditional_outcomes(Dist::kYes, q, h, k) !=
        conditional_outcomes(Dist::kNo, q, h, k)) {
      r.mismatched.push_back(k);
    }
  }
  return r;
}

double exact_tv(std::span<const std::uint64_t> q, unsigned h) {
  check_height(h);
  std::vector<double> yes(std::size_t{1} << q.size(), 0.0), no = yes;
  const double w = 1.0 / static_cast<double>(h - 1);
  for (unsigned k = 2; k <= h; ++k) {
    auto y = conditional_outcomes(Dist::kYes, q, h, k);
    auto n = conditional_outcomes(Dist::kNo, q, h, k);
    for (std::size_t i = 0; i < yes.size(); ++i) {
      yes[i] += w * y[i];
      no[i] += w * n[i];
    }
  }
  return tv_distance(yes, no);
}

TvReport empirical_tv(std::span<const std::uint64_t> q, unsigned h,
                      std::uint64_t samples, std::uint64_t seed,
                      unsigned bootstrap_rounds) {
  check_height(h);
  if (q.size() > 20) throw std::invalid_argument("too many queries for a histogram");
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  lca_level_set(q, h);
  const std::size_t cells = std::size_t{1} << q.size();
  std::vector<std::uint32_t> codes[2];
  std::vector<std::uint8_t> bits;
  for (int which = 0; which < 2; ++which) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(which)));
    codes[which].reserve(samples);
    for (std::uint64_t s = 0; s < samples; ++s) {
      sample_bits(which == 0 ? Dist::kYes : Dist::kNo, h, rng, bits);
      codes[which].push_back(outcome_code(bits, q));
    }
  }
  auto histogram_tv = [&](auto&& pick) {
    std::vector<double> hist[2] = {std::vector<double>(cells, 0.0),
                                   std::vector<double>(cells, 0.0)};
    for (int which = 0; which < 2; ++which) {
      for (std::uint64_t s = 0; s < samples; ++s) hist[which][pick(which, s)] += 1;
      for (double& x : hist[which]) x /= static_cast<double>(samples);
    }
    return tv_distance(hist[0], hist[1]);
  };

  TvReport r;
  r.samples = samples;
  r.exact = q.size() <= kMaxExactQueries ? exact_tv(q, h) : NAN;
  r.tv = histogram_tv([&](int w, std::uint64_t s) { return codes[w][s]; });

  Rng boot(derive_seed(seed, 2));
  double sum = 0, sum_sq = 0;
  for (unsigned b = 0; b < bootstrap_rounds; ++b) {
    const double t = histogram_tv([&](int w, std::uint64_t) {
      return codes[w][uniform_below(boot, samples)];
    });
    sum += t;
    sum_sq += t * t;
  }
  if (bootstrap_rounds > 1) {
    const double n = bootstrap_rounds;
    const double var = (sum_sq - sum * sum / n) / (n - 1);
    r.stderr_boot = std::sqrt(std::max(0.0, var));
  }
  return r;
}

FarnessReport farness_experiment(Variant v, Dist d, unsigned h,
                                 std::uint64_t trials, std::uint64_t seed) {
  const Formula f = build_balancing_formula(v, h);
  FarnessReport r;
  r.size = f.size();
  if (d == Dist::kNo) {
    r.threshold = v == Variant::kFourValued ? r.size / 4 : (r.size + 11) / 12;
  }
  r.min_cost = kUnreachable;
  std::uint64_t meeting = 0;
  double total = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const LowerBoundSample s = sample_distribution(d, h, rng);
    const std::uint64_t cost = exact_cost(f, to_assignment(v, s.bits), variant_accept(v));
    r.costs.push_back(cost);
    r.levels.push_back(s.k);
    r.min_cost = std::min(r.min_cost, cost);
    r.max_cost = std::max(r.max_cost, cost);
    total += static_cast<double>(cost);
    const bool ok = d == Dist::kNo ? cost >= r.threshold : cost == 0;
    if (ok) ++meeting;
  }
  if (trials > 0) {
    r.mean_cost = total / static_cast<double>(trials);
    r.fraction_meeting = static_cast<double>(meeting) / static_cast<double>(trials);
  } else {
    r.min_cost = 0;
  }
  return r;
}

}  // namespace rof
