#include "xover/constructors.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "xover/error.hpp"

namespace xover {

SequencePool::SequencePool(int treatments) : treatments_(treatments) {
  if (treatments_ < 1) throw InvalidArgument("sequence pool needs t >= 1");
}

void SequencePool::add(std::vector<int> sequence) {
  if (static_cast<int>(sequence.size()) != treatments_) {
    throw DesignError("sequence length must equal t=" + std::to_string(treatments_));
  }
  std::vector<char> seen(treatments_, 0);
  for (int x : sequence) {
    if (x < 0 || x >= treatments_ || seen[x]) {
      throw DesignError("sequence is not a permutation of 0..t-1");
    }
    seen[x] = 1;
  }
  sequences_.push_back(std::move(sequence));
}

CrossoverDesign SequencePool::to_design() const {
  if (sequences_.empty()) throw DesignError("sequence pool is empty");
  IntMatrix layout(treatments_, static_cast<Eigen::Index>(sequences_.size()));
  for (std::size_t i = 0; i < sequences_.size(); ++i) {
    for (int r = 0; r < treatments_; ++r) layout(r, i) = sequences_[i][r];
  }
  return CrossoverDesign(treatments_, std::move(layout));
}

namespace {

std::vector<int> williams_base(int t) {
  std::vector<int> base{0};
  for (int lo = 1, hi = t - 1; static_cast<int>(base.size()) < t;) {
    base.push_back(lo++);
    if (static_cast<int>(base.size()) < t) base.push_back(hi--);
  }
  return base;
}

SequencePool cyclic_square(int t) {
  const auto base = williams_base(t);
  SequencePool pool(t);
  for (int j = 0; j < t; ++j) {
    std::vector<int> col(t);
    for (int r = 0; r < t; ++r) col[r] = (base[r] + j) % t;
    pool.add(std::move(col));
  }
  return pool;
}

}  // namespace

CrossoverDesign williams_square(int t) {
  if (t < 4 || t % 2 != 0) {
    throw InvalidArgument("Williams square needs even t >= 4, got t=" +
                          std::to_string(t));
  }
  return cyclic_square(t).to_design();
}

CrossoverDesign williams_pair(int t) {
  if (t < 3 || t % 2 == 0) {
    throw InvalidArgument("Williams pair needs odd t >= 3, got t=" +
                          std::to_string(t));
  }
  SequencePool pool = cyclic_square(t);
  const auto first = pool.sequences();
  for (auto col : first) {
    std::reverse(col.begin(), col.end());
    pool.add(std::move(col));
  }
  return pool.to_design();
}

CrossoverDesign extreme_design(int t) {
  if (t < 3 || t > 8) {
    throw InvalidArgument("extreme design supports 3 <= t <= 8, got t=" +
                          std::to_string(t));
  }
  SequencePool pool(t);
  std::vector<int> seq(t);
  std::iota(seq.begin(), seq.end(), 0);
  do {
    pool.add(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return pool.to_design();
}

CrossoverDesign union_of(std::span<const CrossoverDesign> designs) {
  if (designs.empty()) throw DesignError("union of no designs");
  const int t = designs.front().treatments();
  const int p = designs.front().periods();
  int s = 0;
  bool explicit_grouping = false;
  for (const auto& d : designs) {
    if (d.treatments() != t || d.periods() != p) {
      throw DesignError("union requires equal t and p; got (t=" +
                        std::to_string(d.treatments()) + ", p=" +
                        std::to_string(d.periods()) + ") against (t=" +
                        std::to_string(t) + ", p=" + std::to_string(p) + ")");
    }
    s += d.subjects();
    explicit_grouping = explicit_grouping || d.has_explicit_grouping();
  }
  IntMatrix layout(p, s);
  Grouping grouping;
  bool groupable = true;
  int offset = 0;
  for (const auto& d : designs) {
    layout.middleCols(offset, d.subjects()) = d.layout();
    if (d.grouping().empty()) groupable = false;
    for (auto block : d.grouping()) {
      for (int& i : block) i += offset;
      grouping.push_back(std::move(block));
    }
    offset += d.subjects();
  }
  if (explicit_grouping && groupable) {
    return CrossoverDesign(t, std::move(layout), std::move(grouping));
  }
  return CrossoverDesign(t, std::move(layout));
}

CrossoverDesign replicate(const CrossoverDesign& design, int copies) {
  if (copies < 1) throw InvalidArgument("replicate needs at least one copy");
  std::vector<CrossoverDesign> parts(copies, design);
  return union_of(parts);
}

CrossoverDesign relabel(const CrossoverDesign& design, std::span<const int> perm) {
  const int t = design.treatments();
  if (static_cast<int>(perm.size()) != t) {
    throw InvalidArgument("relabeling must have exactly t entries");
  }
  std::vector<char> seen(t, 0);
  for (int x : perm) {
    if (x < 0 || x >= t || seen[x]) {
      throw InvalidArgument("relabeling is not a bijection of 0..t-1");
    }
    seen[x] = 1;
  }
  IntMatrix layout = design.layout().unaryExpr([&](int h) { return perm[h]; });
  if (design.has_explicit_grouping()) {
    return CrossoverDesign(t, std::move(layout), design.grouping());
  }
  return CrossoverDesign(t, std::move(layout));
}

namespace {

struct FixtureData {
  std::string_view name;
  int t;
  int p;
  int s;
  std::vector<int> rows;  // row-major
};

const std::array<FixtureData, 5>& fixture_table() {
  static const std::array<FixtureData, 5> table{{
      {"d1plan", 3, 3, 6,
       {1, 2, 0, 2, 0, 1,
        0, 1, 2, 0, 1, 2,
        2, 0, 1, 1, 2, 0}},
      {"d2plan", 4, 4, 4,
       {0, 1, 2, 3,
        1, 2, 3, 0,
        3, 0, 1, 2,
        2, 3, 0, 1}},
      {"d3plan", 5, 5, 10,
       {1, 2, 3, 4, 0, 3, 4, 0, 1, 2,
        0, 1, 2, 3, 4, 4, 0, 1, 2, 3,
        2, 3, 4, 0, 1, 2, 3, 4, 0, 1,
        4, 0, 1, 2, 3, 0, 1, 2, 3, 4,
        3, 4, 0, 1, 2, 1, 2, 3, 4, 0}},
      {"ex13sq1", 6, 6, 6,
       {1, 2, 3, 4, 5, 0,
        0, 1, 2, 3, 4, 5,
        2, 3, 4, 5, 0, 1,
        5, 0, 1, 2, 3, 4,
        3, 4, 5, 0, 1, 2,
        4, 5, 0, 1, 2, 3}},
      {"ex13sq2", 6, 6, 6,
       {2, 5, 1, 3, 0, 4,
        4, 2, 5, 1, 3, 0,
        5, 1, 3, 0, 4, 2,
        0, 4, 2, 5, 1, 3,
        1, 3, 0, 4, 2, 5,
        3, 0, 4, 2, 5, 1}},
  }};
  return table;
}

}  // namespace

CrossoverDesign fixture(std::string_view name) {
  for (const auto& f : fixture_table()) {
    if (f.name != name) continue;
    IntMatrix layout(f.p, f.s);
    for (int r = 0; r < f.p; ++r) {
      for (int c = 0; c < f.s; ++c) layout(r, c) = f.rows[r * f.s + c];
    }
    return CrossoverDesign(f.t, std::move(layout));
  }
  throw InvalidArgument("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : fixture_table()) out.emplace_back(f.name);
  return out;
}

}  // namespace xover
