#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace xover {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

// Blocks of 0-based subject indices.
using Grouping = std::vector<std::vector<int>>;

// A period-by-subject layout of treatment labels 0..t-1. Periods are rows and
// subjects are columns, the way crossover designs are usually printed.
//
// Values are immutable after construction. When no grouping is supplied and
// s is a multiple of t, subjects are grouped into contiguous blocks of t in
// column order.
class CrossoverDesign {
 public:
  CrossoverDesign(int treatments, IntMatrix layout,
                  std::optional<Grouping> grouping = std::nullopt);

  int treatments() const noexcept { return treatments_; }
  int periods() const noexcept { return static_cast<int>(layout_.rows()); }
  int subjects() const noexcept { return static_cast<int>(layout_.cols()); }

  // s/t when every period holds each treatment exactly s/t times.
  std::optional<int> replication() const noexcept { return replication_; }

  const IntMatrix& layout() const noexcept { return layout_; }

  // period is 1-based, subject is 0-based.
  int treatment(int period, int subject) const {
    return layout_(period - 1, subject);
  }

  const Grouping& grouping() const noexcept { return grouping_; }
  bool has_explicit_grouping() const noexcept { return explicit_grouping_; }

  friend bool operator==(const CrossoverDesign& a, const CrossoverDesign& b);

 private:
  int treatments_;
  IntMatrix layout_;
  Grouping grouping_;
  bool explicit_grouping_ = false;
  std::optional<int> replication_;
};

// Last observed period (1-based) of every subject. Subjects never re-enter,
// so subject i is observed in periods 1..completion[i].
class DropoutPattern {
 public:
  explicit DropoutPattern(std::vector<int> completion);

  static DropoutPattern complete(const CrossoverDesign& design);
  // Every subject leaves after period p - m.
  static DropoutPattern truncated(const CrossoverDesign& design, int m);

  const std::vector<int>& completion() const noexcept { return completion_; }
  int subjects() const noexcept { return static_cast<int>(completion_.size()); }

  // Throws DesignError when the pattern does not fit the design.
  void check_against(const CrossoverDesign& design) const;
  bool is_complete(const CrossoverDesign& design) const;
  // True when every subject completes at least periods - m periods.
  bool within_tail(int periods, int m) const;

  friend bool operator==(const DropoutPattern&, const DropoutPattern&) = default;

 private:
  std::vector<int> completion_;
};

enum class Violation {
  PeriodCount,        // p != t
  SubjectCount,       // s is not a multiple of t
  NonUniformPeriod,   // some treatment not applied g times in a period
  NonUniformSubject,  // some subject does not receive every treatment once
  PrecedenceCount,    // an ordered pair of distinct treatments not seen g times
  SelfPrecedence,     // a treatment immediately follows itself
};

std::string to_string(Violation v);

struct ValidationIssue {
  Violation kind;
  std::string detail;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationIssue> issues;

  bool has(Violation v) const;
  std::string summary() const;
};

// Uniform balanced repeated measurements design check.
ValidationReport validate_ubrmd(const CrossoverDesign& design);

// (a, b) counts how often treatment b is applied in the period right after
// treatment a, over all subjects.
IntMatrix precedence_counts(const CrossoverDesign& design);

struct PeriodSlice {
  int period;        // 1-based
  IntMatrix matrix;  // t x s, (h, i) = 1 iff subject i receives h in `period`
};

PeriodSlice period_slice(const CrossoverDesign& design, int period);

// U_jk = P_{p-j} P_{p-k}^T with tail indices j, k counted back from the last
// period (0 is the last period).
struct Coincidence {
  int j;
  int k;
  IntMatrix matrix;  // t x t
};

Coincidence coincidence(const CrossoverDesign& design, int j, int k);

struct IncidenceSet {
  IntMatrix n_ds;  // t x s direct treatment by subject
  IntMatrix n_cs;  // t x s carryover by subject
  IntMatrix n_dp;  // t x p direct treatment by period
  IntMatrix n_cp;  // t x p carryover by period; column 0 is zero
  IntMatrix n_dc;  // t x t direct by carryover
  IntVector r_d;
  IntVector r_c;
};

// Counts over observed cells only. Carryovers are counted only between
// consecutive observed periods of the same subject.
IncidenceSet incidences(const CrossoverDesign& design,
                        const std::optional<DropoutPattern>& pattern = std::nullopt);

// The minimal design: the first p - m periods. Requires 1 <= m < p - 1.
CrossoverDesign truncate(const CrossoverDesign& design, int m);

struct TailCycles {
  int group;
  int j;
  int k;
  std::vector<int> cycles;  // cycle lengths, descending
};

struct TypeWReport {
  bool pass = false;
  std::string reason;  // empty on pass
  std::vector<TailCycles> pairs;
};

// Tail permutations within each group are single t-cycles for every ordered
// pair of the last m + 1 periods. Throws DesignError if the design has no
// usable grouping.
TypeWReport check_type_wm(const CrossoverDesign& design, int m);

enum class DesignClass { NotUbrmd, Ubrmd, TypeW, ClassA, ClassB };

std::string to_string(DesignClass c);

struct Classification {
  DesignClass kind = DesignClass::NotUbrmd;
  int type_w_m = 0;  // largest m with check_type_wm passing, 0 if none

  std::string label() const;
};

Classification classify(const CrossoverDesign& design);

}  // namespace xover
