#pragma once

#include <cstdint>
#include <vector>

#include "xover/design.hpp"

namespace xover {

// Completely-at-random tail dropout. Every subject completes the first
// p - m periods; a subject still present after period p - m + j - 1 leaves
// before period p - m + j with probability hazards[j-1], independently of
// other subjects.
struct DropoutModel {
  int m = 1;
  std::vector<double> hazards;

  // Throws InvalidArgument on a malformed model for a design with `periods`.
  void validate(int periods) const;
};

struct LossSummary {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
};

struct SimulationResult {
  long long replicates = 0;
  LossSummary loss;
  double p_disconnect = 0.0;
  long long ordering_violations = 0;
  double max_loss_minimal = 0.0;  // loss of the minimal design
  bool minimal_connected = false;
  std::vector<double> samples;    // per replicate, only when requested
};

struct SimulationOptions {
  long long replicates = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_samples = false;
};

// Seed of the generator for one replicate: SplitMix64 over seed and index.
// Replicates never share generator state, so results do not depend on the
// thread count.
std::uint64_t replicate_seed(std::uint64_t seed, long long replicate);

DropoutPattern sample_pattern(const CrossoverDesign& design, const DropoutModel& model,
                              std::uint64_t seed, long long replicate);

// Requires a UBRMD and replicates >= 1. Losses of disconnected implemented
// designs count as 1.
SimulationResult simulate(const CrossoverDesign& design, const DropoutModel& model,
                          const SimulationOptions& options);

struct SubsetLoss {
  std::uint32_t dropped = 0;  // bit i set when subject i misses the last period
  int size = 0;
  double loss = 0.0;
  bool connected = false;
  bool ordering_holds = false;
};

struct Enumeration {
  int subjects = 0;
  std::vector<SubsetLoss> subsets;  // indexed by `dropped`

  // Probabilities under a single final-period hazard.
  double expected_loss(double hazard) const;
  double p_disconnect(double hazard) const;
};

// Every final-period dropout subset (m = 1). Requires s <= 20.
Enumeration enumerate(const CrossoverDesign& design, int m = 1);

}  // namespace xover
