#include "xover/design.hpp"

#include <algorithm>
#include <sstream>

#include "xover/error.hpp"
#include "xover/numerics.hpp"

namespace xover {

namespace {

Grouping contiguous_blocks(int subjects, int block) {
  Grouping g;
  if (block <= 0 || subjects % block != 0) return g;
  for (int start = 0; start < subjects; start += block) {
    std::vector<int> b(block);
    for (int i = 0; i < block; ++i) b[i] = start + i;
    g.push_back(std::move(b));
  }
  return g;
}

void check_grouping(const Grouping& grouping, int subjects, int block) {
  std::vector<char> seen(subjects, 0);
  int covered = 0;
  for (const auto& b : grouping) {
    if (static_cast<int>(b.size()) != block) {
      throw DesignError("grouping blocks must contain exactly " +
                        std::to_string(block) + " subjects");
    }
    for (int i : b) {
      if (i < 0 || i >= subjects || seen[i]) {
        throw DesignError("grouping is not a partition of the subjects");
      }
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != subjects) {
    throw DesignError("grouping does not cover every subject");
  }
}

// Each treatment appears the same number of times in every period.
std::optional<int> row_uniform_replication(const IntMatrix& layout, int t) {
  const int s = static_cast<int>(layout.cols());
  if (t <= 0 || s % t != 0) return std::nullopt;
  const int g = s / t;
  for (Eigen::Index r = 0; r < layout.rows(); ++r) {
    std::vector<int> count(t, 0);
    for (int i = 0; i < s; ++i) ++count[layout(r, i)];
    if (std::any_of(count.begin(), count.end(), [g](int c) { return c != g; })) {
      return std::nullopt;
    }
  }
  return g;
}

}  // namespace

CrossoverDesign::CrossoverDesign(int treatments, IntMatrix layout,
                                 std::optional<Grouping> grouping)
    : treatments_(treatments), layout_(std::move(layout)) {
  if (treatments_ < 1) throw DesignError("a design needs at least one treatment");
  if (layout_.rows() < 1 || layout_.cols() < 1) {
    throw DesignError("a design needs at least one period and one subject");
  }
  for (Eigen::Index r = 0; r < layout_.rows(); ++r) {
    for (Eigen::Index c = 0; c < layout_.cols(); ++c) {
      const int x = layout_(r, c);
      if (x < 0 || x >= treatments_) {
        throw DesignError("treatment label " + std::to_string(x) +
                          " at period " + std::to_string(r + 1) + ", subject " +
                          std::to_string(c + 1) + " is outside 0.." +
                          std::to_string(treatments_ - 1));
      }
    }
  }
  if (grouping) {
    check_grouping(*grouping, subjects(), treatments_);
    grouping_ = std::move(*grouping);
    explicit_grouping_ = true;
  } else {
    grouping_ = contiguous_blocks(subjects(), treatments_);
  }
  replication_ = row_uniform_replication(layout_, treatments_);
}

bool operator==(const CrossoverDesign& a, const CrossoverDesign& b) {
  return a.treatments_ == b.treatments_ && a.layout_.rows() == b.layout_.rows() &&
         a.layout_.cols() == b.layout_.cols() && a.layout_ == b.layout_ &&
         a.grouping_ == b.grouping_;
}

DropoutPattern::DropoutPattern(std::vector<int> completion)
    : completion_(std::move(completion)) {
  for (std::size_t i = 0; i < completion_.size(); ++i) {
    if (completion_[i] < 1) {
      throw DesignError("subject " + std::to_string(i + 1) +
                        " must be observed in at least one period");
    }
  }
}

DropoutPattern DropoutPattern::complete(const CrossoverDesign& design) {
  return DropoutPattern(std::vector<int>(design.subjects(), design.periods()));
}

DropoutPattern DropoutPattern::truncated(const CrossoverDesign& design, int m) {
  if (m < 0 || m >= design.periods()) {
    throw InvalidArgument("tail length m=" + std::to_string(m) +
                          " leaves no observed period");
  }
  return DropoutPattern(
      std::vector<int>(design.subjects(), design.periods() - m));
}

void DropoutPattern::check_against(const CrossoverDesign& design) const {
  if (subjects() != design.subjects()) {
    throw DesignError("dropout pattern has " + std::to_string(subjects()) +
                      " entries but the design has " +
                      std::to_string(design.subjects()) + " subjects");
  }
  for (int i = 0; i < subjects(); ++i) {
    if (completion_[i] > design.periods()) {
      throw DesignError("subject " + std::to_string(i + 1) +
                        " completes period " + std::to_string(completion_[i]) +
                        " but the design has " +
                        std::to_string(design.periods()) + " periods");
    }
  }
}

bool DropoutPattern::is_complete(const CrossoverDesign& design) const {
  return std::all_of(completion_.begin(), completion_.end(),
                     [&](int k) { return k == design.periods(); });
}

bool DropoutPattern::within_tail(int periods, int m) const {
  return std::all_of(completion_.begin(), completion_.end(), [&](int k) {
    return k >= periods - m && k <= periods;
  });
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::PeriodCount: return "period-count";
    case Violation::SubjectCount: return "subject-count";
    case Violation::NonUniformPeriod: return "non-uniform-period";
    case Violation::NonUniformSubject: return "non-uniform-subject";
    case Violation::PrecedenceCount: return "precedence-count";
    case Violation::SelfPrecedence: return "self-precedence";
  }
  return "unknown";
}

bool ValidationReport::has(Violation v) const {
  return std::any_of(issues.begin(), issues.end(),
                     [v](const ValidationIssue& i) { return i.kind == v; });
}

std::string ValidationReport::summary() const {
  if (pass) return "UBRMD: pass";
  std::ostringstream os;
  os << "UBRMD: fail";
  for (const auto& i : issues) os << "\n  " << to_string(i.kind) << ": " << i.detail;
  return os.str();
}

IntMatrix precedence_counts(const CrossoverDesign& design) {
  const int t = design.treatments();
  IntMatrix counts = IntMatrix::Zero(t, t);
  const auto& l = design.layout();
  for (Eigen::Index i = 0; i < l.cols(); ++i) {
    for (Eigen::Index r = 1; r < l.rows(); ++r) ++counts(l(r - 1, i), l(r, i));
  }
  return counts;
}

ValidationReport validate_ubrmd(const CrossoverDesign& design) {
  ValidationReport rep;
  const int t = design.treatments();
  const int p = design.periods();
  const int s = design.subjects();
  auto fail = [&](Violation v, std::string detail) {
    rep.pass = false;
    rep.issues.push_back({v, std::move(detail)});
  };

  if (p != t) {
    fail(Violation::PeriodCount, "p=" + std::to_string(p) + " but t=" +
                                     std::to_string(t));
  }
  if (s % t != 0) {
    fail(Violation::SubjectCount, "s=" + std::to_string(s) +
                                      " is not a multiple of t=" +
                                      std::to_string(t));
    return rep;
  }
  const int g = s / t;
  const auto& l = design.layout();

  for (int r = 0; r < p; ++r) {
    std::vector<int> count(t, 0);
    for (int i = 0; i < s; ++i) ++count[l(r, i)];
    for (int h = 0; h < t; ++h) {
      if (count[h] != g) {
        fail(Violation::NonUniformPeriod,
             "period " + std::to_string(r + 1) + " has treatment " +
                 std::to_string(h) + " " + std::to_string(count[h]) +
                 " times, expected " + std::to_string(g));
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    std::vector<int> count(t, 0);
    for (int r = 0; r < p; ++r) ++count[l(r, i)];
    if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) {
      fail(Violation::NonUniformSubject,
           "subject " + std::to_string(i + 1) +
               " does not receive every treatment exactly once");
    }
  }
  const IntMatrix prec = precedence_counts(design);
  for (int a = 0; a < t; ++a) {
    for (int b = 0; b < t; ++b) {
      if (a == b) {
        if (prec(a, b) != 0) {
          fail(Violation::SelfPrecedence,
               "treatment " + std::to_string(a) + " follows itself " +
                   std::to_string(prec(a, b)) + " times");
        }
      } else if (prec(a, b) != g) {
        fail(Violation::PrecedenceCount,
             "treatment " + std::to_string(b) + " follows " + std::to_string(a) +
                 " " + std::to_string(prec(a, b)) + " times, expected " +
                 std::to_string(g));
      }
    }
  }
  return rep;
}

PeriodSlice period_slice(const CrossoverDesign& design, int period) {
  if (period < 1 || period > design.periods()) {
    throw InvalidArgument("period " + std::to_string(period) +
                          " is outside 1.." + std::to_string(design.periods()));
  }
  IntMatrix m = IntMatrix::Zero(design.treatments(), design.subjects());
  for (int i = 0; i < design.subjects(); ++i) m(design.treatment(period, i), i) = 1;
  return {period, std::move(m)};
}

Coincidence coincidence(const CrossoverDesign& design, int j, int k) {
  const int p = design.periods();
  if (j < 0 || j >= p || k < 0 || k >= p) {
    throw InvalidArgument("tail indices must lie in 0.." + std::to_string(p - 1));
  }
  const PeriodSlice pj = period_slice(design, p - j);
  const PeriodSlice pk = period_slice(design, p - k);
  for (const auto* slice : {&pj, &pk}) {
    const IntVector rows = slice->matrix.rowwise().sum();
    if ((rows.array() != rows(0)).any()) {
      throw DesignError("period " + std::to_string(slice->period) +
                        " is not uniform over treatments");
    }
  }
  return {j, k, pj.matrix * pk.matrix.transpose()};
}

IncidenceSet incidences(const CrossoverDesign& design,
                        const std::optional<DropoutPattern>& pattern) {
  if (pattern) pattern->check_against(design);
  const int t = design.treatments();
  const int p = design.periods();
  const int s = design.subjects();
  IncidenceSet n{IntMatrix::Zero(t, s), IntMatrix::Zero(t, s), IntMatrix::Zero(t, p),
                 IntMatrix::Zero(t, p), IntMatrix::Zero(t, t), IntVector::Zero(t),
                 IntVector::Zero(t)};
  for (int i = 0; i < s; ++i) {
    const int last = pattern ? pattern->completion()[i] : p;
    for (int period = 1; period <= last; ++period) {
      const int d = design.treatment(period, i);
      ++n.n_ds(d, i);
      ++n.n_dp(d, period - 1);
      ++n.r_d(d);
      if (period > 1) {
        const int c = design.treatment(period - 1, i);
        ++n.n_cs(c, i);
        ++n.n_cp(c, period - 1);
        ++n.n_dc(d, c);
        ++n.r_c(c);
      }
    }
  }
  return n;
}

CrossoverDesign truncate(const CrossoverDesign& design, int m) {
  if (m < 1 || m >= design.periods() - 1) {
    throw InvalidArgument("truncation requires 1 <= m < p-1, got m=" +
                          std::to_string(m) + ", p=" +
                          std::to_string(design.periods()));
  }
  IntMatrix rows = design.layout().topRows(design.periods() - m);
  if (design.has_explicit_grouping()) {
    return CrossoverDesign(design.treatments(), std::move(rows), design.grouping());
  }
  return CrossoverDesign(design.treatments(), std::move(rows));
}

TypeWReport check_type_wm(const CrossoverDesign& design, int m) {
  const int t = design.treatments();
  const int p = design.periods();
  if (m < 1 || m > p - 1) {
    throw InvalidArgument("type-W check requires 1 <= m <= p-1, got m=" +
                          std::to_string(m));
  }
  if (design.grouping().empty()) {
    throw DesignError("type-W check needs subjects grouped into blocks of t");
  }
  TypeWReport rep;
  if (!validate_ubrmd(design).pass) {
    rep.reason = "design is not a UBRMD";
    return rep;
  }
  const auto& l = design.layout();
  for (std::size_t gi = 0; gi < design.grouping().size(); ++gi) {
    const auto& block = design.grouping()[gi];
    for (int j = 0; j <= m; ++j) {
      std::vector<int> count(t, 0);
      for (int i : block) ++count[l(p - 1 - j, i)];
      if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) {
        rep.reason = "group " + std::to_string(gi) +
                     " does not contain every treatment once in period " +
                     std::to_string(p - j);
        rep.pairs.clear();
        return rep;
      }
    }
    for (int j = 0; j <= m; ++j) {
      for (int k = 0; k <= m; ++k) {
        if (j == k) continue;
        // Treatment in period p-j maps to the treatment in period p-k.
        std::vector<int> perm(t);
        for (int i : block) perm[l(p - 1 - j, i)] = l(p - 1 - k, i);
        rep.pairs.push_back({static_cast<int>(gi), j, k,
                             cycle_type(std::span<const int>(perm))});
      }
    }
  }
  rep.pass = std::all_of(rep.pairs.begin(), rep.pairs.end(), [t](const TailCycles& c) {
    return c.cycles.size() == 1 && c.cycles[0] == t;
  });
  if (!rep.pass) {
    for (const auto& c : rep.pairs) {
      if (c.cycles.size() != 1) {
        rep.reason = "group " + std::to_string(c.group) + " tail pair (" +
                     std::to_string(c.j) + "," + std::to_string(c.k) +
                     ") splits into " + std::to_string(c.cycles.size()) +
                     " cycles";
        break;
      }
    }
  }
  return rep;
}

std::string to_string(DesignClass c) {
  switch (c) {
    case DesignClass::NotUbrmd: return "not-UBRMD";
    case DesignClass::Ubrmd: return "UBRMD";
    case DesignClass::TypeW: return "type-W";
    case DesignClass::ClassA: return "ClassA-W1";
    case DesignClass::ClassB: return "ClassB-W1";
  }
  return "unknown";
}

std::string Classification::label() const {
  if (kind == DesignClass::TypeW) return "type-W" + std::to_string(type_w_m);
  return to_string(kind);
}

namespace {

// Columns i and i + period agree for every i.
bool columns_repeat(const IntMatrix& l, int period) {
  const int s = static_cast<int>(l.cols());
  if (period <= 0 || s % period != 0) return false;
  for (int i = period; i < s; ++i) {
    if (l.col(i) != l.col(i - period)) return false;
  }
  return true;
}

// Permutation sending the last-period treatment of each column to its
// second-to-last-period treatment. Empty if the two rows are not permutations.
std::vector<int> tail_map(const IntMatrix& square, int t) {
  const int p = static_cast<int>(square.rows());
  std::vector<int> perm(t, -1);
  for (int i = 0; i < square.cols(); ++i) {
    const int from = square(p - 1, i);
    if (perm[from] != -1) return {};
    perm[from] = square(p - 2, i);
  }
  std::vector<char> hit(t, 0);
  for (int x : perm) {
    if (x < 0 || hit[x]) return {};
    hit[x] = 1;
  }
  return perm;
}

bool single_cycle(const std::vector<int>& perm) {
  if (perm.empty()) return false;
  const auto c = cycle_type(std::span<const int>(perm));
  return c.size() == 1;
}

bool is_class_a(const CrossoverDesign& d) {
  const int t = d.treatments();
  if (!columns_repeat(d.layout(), t)) return false;
  const auto perm = tail_map(d.layout().leftCols(t), t);
  return single_cycle(perm);
}

bool is_class_b(const CrossoverDesign& d) {
  const int t = d.treatments();
  if (!columns_repeat(d.layout(), 2 * t)) return false;
  const auto p1 = tail_map(d.layout().leftCols(t), t);
  const auto p2 = tail_map(d.layout().middleCols(t, t), t);
  if (!single_cycle(p1) || !single_cycle(p2)) return false;
  // Pi_2 = Pi_1^T means p2 is the inverse of p1.
  for (int h = 0; h < t; ++h) {
    if (p2[p1[h]] != h) return false;
  }
  return true;
}

}  // namespace

Classification classify(const CrossoverDesign& design) {
  Classification c;
  if (!validate_ubrmd(design).pass) return c;
  c.kind = DesignClass::Ubrmd;
  if (design.periods() < 2) return c;
  if (!design.grouping().empty()) {
    for (int m = 1; m <= design.periods() - 1; ++m) {
      if (!check_type_wm(design, m).pass) break;
      c.type_w_m = m;
    }
  }
  if (c.type_w_m > 0) c.kind = DesignClass::TypeW;
  if (is_class_a(design)) {
    c.kind = DesignClass::ClassA;
  } else if (is_class_b(design)) {
    c.kind = DesignClass::ClassB;
  }
  return c;
}

}  // namespace xover
