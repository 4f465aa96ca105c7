#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xover/design.hpp"

namespace xover {

// Staging area of treatment sequences (design columns), each a permutation of
// 0..t-1.
class SequencePool {
 public:
  explicit SequencePool(int treatments);

  void add(std::vector<int> sequence);
  int treatments() const noexcept { return treatments_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  const std::vector<std::vector<int>>& sequences() const noexcept { return sequences_; }

  CrossoverDesign to_design() const;

 private:
  int treatments_;
  std::vector<std::vector<int>> sequences_;
};

// Williams square for even t >= 4: column j is the base column
// (0, 1, t-1, 2, t-2, ...) shifted by j modulo t.
CrossoverDesign williams_square(int t);

// Williams pair for odd t >= 3: the cyclic square followed by its
// period-reversed copy (2t subjects).
CrossoverDesign williams_pair(int t);

// One subject on every one of the t! sequences, lexicographic order.
// Limited to 3 <= t <= 8.
CrossoverDesign extreme_design(int t);

// Horizontal concatenation. All designs must share t and p.
CrossoverDesign union_of(std::span<const CrossoverDesign> designs);

CrossoverDesign replicate(const CrossoverDesign& design, int copies);

// Entrywise relabeling, treatment h becomes perm[h].
CrossoverDesign relabel(const CrossoverDesign& design, std::span<const int> perm);

// Named reference arrays: d1plan, d2plan, d3plan, ex13sq1, ex13sq2.
CrossoverDesign fixture(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace xover
