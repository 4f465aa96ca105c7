#include "xover/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "xover/error.hpp"
#include "xover/information.hpp"
#include "xover/metrics.hpp"

namespace xover {

namespace {

constexpr double kOrderingTol = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Reference {
  SymMatrix plan_cd;
  SymMatrix min_cd;
  ACriterion plan;
  ACriterion minimal;
};

Reference reference_designs(const CrossoverDesign& design, int m) {
  SymMatrix plan_cd = direct_info(joint_info_projection(design));
  SymMatrix min_cd =
      direct_info(joint_info_projection(design, DropoutPattern::truncated(design, m)));
  ACriterion plan = a_criterion(plan_cd);
  ACriterion minimal = a_criterion(min_cd);
  return {std::move(plan_cd), std::move(min_cd), std::move(plan), std::move(minimal)};
}

struct Outcome {
  double loss;
  bool connected;
  bool ordering_holds;
};

Outcome evaluate_pattern(const CrossoverDesign& design, const DropoutPattern& pattern,
                         const Reference& ref) {
  const SymMatrix cd = direct_info(joint_info_projection(design, pattern));
  const ACriterion imp = a_criterion(cd);
  const Loss l = loss(ref.plan, imp);
  const bool ordered =
      is_psd(ref.plan_cd - cd, kOrderingTol) && is_psd(cd - ref.min_cd, kOrderingTol);
  return {l.value, imp.connected, ordered};
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - lo;
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void require_ubrmd(const CrossoverDesign& design) {
  const auto rep = validate_ubrmd(design);
  if (!rep.pass) throw DesignError("simulation needs a UBRMD plan:\n" + rep.summary());
}

}  // namespace

void DropoutModel::validate(int periods) const {
  if (m < 1 || m >= periods - 1) {
    throw InvalidArgument("dropout tail needs 1 <= m < p-1, got m=" + std::to_string(m));
  }
  if (static_cast<int>(hazards.size()) != m) {
    throw InvalidArgument("expected " + std::to_string(m) + " hazards, got " +
                          std::to_string(hazards.size()));
  }
  for (double h : hazards) {
    if (!(h >= 0.0 && h <= 1.0)) {
      throw InvalidArgument("hazards must lie in [0, 1], got " + std::to_string(h));
    }
  }
}

std::uint64_t replicate_seed(std::uint64_t seed, long long replicate) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(replicate));
}

DropoutPattern sample_pattern(const CrossoverDesign& design, const DropoutModel& model,
                              std::uint64_t seed, long long replicate) {
  const int p = design.periods();
  std::mt19937_64 rng(replicate_seed(seed, replicate));
  std::vector<int> completion(design.subjects(), p);
  for (int& k : completion) {
    for (int j = 1; j <= model.m; ++j) {
      if (uniform01(rng) < model.hazards[j - 1]) {
        k = p - model.m + j - 1;
        break;
      }
    }
  }
  return DropoutPattern(std::move(completion));
}

SimulationResult simulate(const CrossoverDesign& design, const DropoutModel& model,
                          const SimulationOptions& options) {
  require_ubrmd(design);
  model.validate(design.periods());
  if (options.replicates < 1) throw InvalidArgument("need at least one replicate");
  if (options.threads < 1) throw InvalidArgument("need at least one thread");

  const Reference ref = reference_designs(design, model.m);
  const long long n = options.replicates;
  std::vector<Outcome> outcomes(static_cast<std::size_t>(n));

  auto run = [&](long long begin, long long end) {
    for (long long r = begin; r < end; ++r) {
      outcomes[r] = evaluate_pattern(design, sample_pattern(design, model, options.seed, r), ref);
    }
  };
  const int threads = static_cast<int>(std::min<long long>(options.threads, n));
  if (threads == 1) {
    run(0, n);
  } else {
    std::vector<std::jthread> pool;
    const long long chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const long long begin = w * chunk;
      const long long end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }

  SimulationResult res;
  res.replicates = n;
  res.max_loss_minimal = loss(ref.plan, ref.minimal).value;
  res.minimal_connected = ref.minimal.connected;
  std::vector<double> losses(outcomes.size());
  long long disconnected = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    losses[i] = outcomes[i].loss;
    sum += losses[i];
    if (!outcomes[i].connected) ++disconnected;
    if (!outcomes[i].ordering_holds) ++res.ordering_violations;
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : losses) ss += (x - mean) * (x - mean);
  res.loss.mean = mean;
  res.loss.sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  res.loss.se = res.loss.sd / std::sqrt(static_cast<double>(n));
  res.p_disconnect = static_cast<double>(disconnected) / n;
  if (options.keep_samples) res.samples = losses;

  std::sort(losses.begin(), losses.end());
  res.loss.min = losses.front();
  res.loss.max = losses.back();
  res.loss.q05 = quantile(losses, 0.05);
  res.loss.q25 = quantile(losses, 0.25);
  res.loss.q50 = quantile(losses, 0.50);
  res.loss.q75 = quantile(losses, 0.75);
  res.loss.q95 = quantile(losses, 0.95);
  return res;
}

double Enumeration::expected_loss(double hazard) const {
  double e = 0.0;
  const int s = subjects;
  for (const auto& sub : subsets) {
    e += std::pow(hazard, sub.size) * std::pow(1.0 - hazard, s - sub.size) * sub.loss;
  }
  return e;
}

double Enumeration::p_disconnect(double hazard) const {
  double pr = 0.0;
  const int s = subjects;
  for (const auto& sub : subsets) {
    if (!sub.connected) {
      pr += std::pow(hazard, sub.size) * std::pow(1.0 - hazard, s - sub.size);
    }
  }
  return pr;
}

Enumeration enumerate(const CrossoverDesign& design, int m) {
  if (m != 1) throw InvalidArgument("exhaustive enumeration is implemented for m = 1");
  require_ubrmd(design);
  const int s = design.subjects();
  if (s > 20) throw InvalidArgument("enumeration limited to s <= 20, got s=" + std::to_string(s));
  const int p = design.periods();
  if (p < 3) throw InvalidArgument("enumeration needs p >= 3");
  const Reference ref = reference_designs(design, 1);

  Enumeration out;
  out.subjects = s;
  const std::uint32_t count = 1u << s;
  out.subsets.resize(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::vector<int> completion(s, p);
    int size = 0;
    for (int i = 0; i < s; ++i) {
      if (mask & (1u << i)) {
        completion[i] = p - 1;
        ++size;
      }
    }
    const Outcome o = evaluate_pattern(design, DropoutPattern(std::move(completion)), ref);
    out.subsets[mask] = {mask, size, o.loss, o.connected, o.ordering_holds};
  }
  return out;
}

}  // namespace xover
