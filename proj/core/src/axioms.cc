// Copyright 2026 The Coalition Sharing Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coalition/axioms.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace coalition {
namespace {

constexpr double kContinuityDeltas[] = {1e-2, 1e-4, 1e-6, 1e-8};

double Tol(double epsilon, double a, double b = 0.0) {
  return epsilon * std::max({1.0, std::abs(a), std::abs(b)});
}

// Draws coalitions and endowments for one checker run. Half the endowment
// draws come from the probe pool (anchors, breakpoints, a regular grid),
// half are uniform on [0, E_max].
class Sampler {
 public:
  Sampler(const AgentSet& agents, const SamplingPlan& plan)
      : agents_(agents), plan_(plan), rng_(plan.seed) {
    if (!(plan.max_endowment > 0.0)) {
      throw InvalidInput("sampling plan needs max_endowment > 0");
    }
    if (plan.samples < 1) throw InvalidInput("sampling plan needs samples >= 1");
    std::set<double> pool;
    for (const auto& [c, e] : plan.anchors.entries()) pool.insert(e);
    for (double b : plan.breakpoints) {
      if (std::isfinite(b) && b >= 0.0) pool.insert(b);
    }
    const int grid = std::max(4, plan.samples / 4);
    for (int k = 0; k <= grid; ++k) {
      pool.insert(k * plan.max_endowment / grid);
    }
    pool_.assign(pool.begin(), pool.end());
    for (Coalition c : CanonicalCoalitions(agents)) {
      by_size_[static_cast<std::size_t>(c.size())].push_back(c);
    }
  }

  double Endowment() {
    if (std::bernoulli_distribution(0.5)(rng_)) {
      std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
      return pool_[pick(rng_)];
    }
    return std::uniform_real_distribution<double>(0.0, plan_.max_endowment)(rng_);
  }

  // Uniform over coalitions of size >= min_size; empty when none exist.
  Coalition CoalitionOfAtLeast(int min_size) {
    std::size_t total = 0;
    for (int s = min_size; s <= agents_.size(); ++s) total += by_size_[s].size();
    if (total == 0) return Coalition();
    std::size_t idx = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng_);
    for (int s = min_size; s <= agents_.size(); ++s) {
      if (idx < by_size_[s].size()) return by_size_[s][idx];
      idx -= by_size_[s].size();
    }
    return Coalition();
  }

  // Uniform proper subset of `c` with at least `min_size` members.
  Coalition ProperSubsetOf(Coalition c, int min_size) {
    std::vector<Coalition> options;
    for (Coalition s : CanonicalSubsets(c)) {
      if (s != c && s.size() >= min_size) options.push_back(s);
    }
    if (options.empty()) return Coalition();
    return options[std::uniform_int_distribution<std::size_t>(
        0, options.size() - 1)(rng_)];
  }

  std::vector<std::pair<Coalition, double>> Anchors(int min_size) const {
    std::vector<std::pair<Coalition, double>> out;
    const Coalition all = Coalition::All(agents_);
    for (const auto& [c, e] : plan_.anchors.entries()) {
      if (c.size() >= min_size && c.IsSubsetOf(all)) out.emplace_back(c, e);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return CanonicalLess(a.first, b.first);
    });
    return out;
  }

 private:
  const AgentSet& agents_;
  const SamplingPlan& plan_;
  std::mt19937_64 rng_;
  std::vector<double> pool_;
  std::vector<Coalition> by_size_[kMaxAgents + 1];
};

std::optional<AxiomWitness> MonotonicityAt(const SharingRule& rule, Coalition c,
                                           double lo, double hi,
                                           double epsilon) {
  const Allocation a = rule(c, lo);
  const Allocation b = rule(c, hi);
  const double tol = Tol(epsilon, hi);
  const auto members = c.Members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (a.payoffs[k] > b.payoffs[k] + tol) {
      return AxiomWitness{c, c, lo, hi, members[k], 0, a, b};
    }
  }
  return std::nullopt;
}

std::optional<AxiomWitness> ConsistencyAt(const SharingRule& rule, Coalition c,
                                          double e, double epsilon) {
  const Allocation full = rule(c, e);
  for (Coalition sub : CanonicalSubsets(c)) {
    if (sub == c) continue;
    double share = 0.0;
    for (int i : sub.Members()) share += full.PayoffOf(i);
    const Allocation again = rule(sub, share);
    const double tol = Tol(epsilon, e);
    for (int i : sub.Members()) {
      if (std::abs(again.PayoffOf(i) - full.PayoffOf(i)) > tol) {
        return AxiomWitness{c, sub, e, share, i, 0, full, again};
      }
    }
  }
  return std::nullopt;
}

std::optional<AxiomWitness> SolidarityAt(const SharingRule& rule, Coalition c,
                                         double e, Coalition c_prime,
                                         double e_prime, double epsilon) {
  const Allocation small = rule(c, e);
  const Allocation big = rule(c_prime, e_prime);
  const double tol = Tol(epsilon, e, e_prime);
  const auto members = c.Members();
  for (int i : members) {
    if (!(small.PayoffOf(i) > big.PayoffOf(i) + tol)) continue;
    for (int j : members) {
      if (small.PayoffOf(j) < big.PayoffOf(j) - tol) {
        return AxiomWitness{c, c_prime, e, e_prime, i, j, small, big};
      }
    }
  }
  return std::nullopt;
}

std::optional<AxiomWitness> ContinuityAt(const SharingRule& rule, Coalition c,
                                         double e, const SamplingPlan& plan) {
  const Allocation base = rule(c, e);
  const double delta = kContinuityDeltas[std::size(kContinuityDeltas) - 1];
  for (double sign : {-1.0, 1.0}) {
    const double probe = e + sign * delta;
    if (probe < 0.0) continue;
    const Allocation moved = rule(c, probe);
    const auto members = c.Members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (std::abs(moved.payoffs[k] - base.payoffs[k]) >
          plan.continuity_tolerance) {
        return AxiomWitness{c, c, e, probe, members[k], 0, base, moved};
      }
    }
  }
  return std::nullopt;
}

AxiomVerdict Finish(Axiom axiom, const SamplingPlan& plan, int samples,
                    std::optional<AxiomWitness> witness) {
  AxiomVerdict v;
  v.axiom = axiom;
  v.passed = !witness.has_value();
  v.witness = std::move(witness);
  v.samples = samples;
  v.seed = plan.seed;
  return v;
}

}  // namespace

std::string AxiomTag(Axiom axiom) {
  switch (axiom) {
    case Axiom::kEndowmentMonotonicity:
      return "endowment-monotonicity";
    case Axiom::kConsistency:
      return "consistency";
    case Axiom::kSolidarity:
      return "solidarity";
    case Axiom::kEndowmentContinuity:
      return "endowment-continuity";
  }
  return "unknown";
}

SamplingPlan SamplingPlan::ForScenario(const EndowmentMap& endowments,
                                       std::vector<double> breakpoints,
                                       std::uint64_t seed, int samples) {
  SamplingPlan plan;
  const double top = endowments.MaxEndowment();
  plan.max_endowment = top > 0.0 ? 4.0 * top : 100.0;
  plan.samples = samples;
  plan.seed = seed;
  plan.breakpoints = std::move(breakpoints);
  plan.anchors = endowments;
  return plan;
}

std::string AxiomWitness::Describe() const {
  return "C={" + coalition.ToString() + "} C'={" + other.ToString() +
         "} E=" + FormatNumber(endowment) +
         " E'=" + FormatNumber(other_endowment) +
         " i=" + std::to_string(agent) +
         (other_agent != 0 ? " j=" + std::to_string(other_agent) : "") +
         " F=" + FormatAllocation(first) + " F'=" + FormatAllocation(second);
}

AxiomVerdict CheckEndowmentMonotonicity(const SharingRule& rule,
                                        const AgentSet& agents,
                                        const SamplingPlan& plan) {
  Sampler sampler(agents, plan);
  int used = 0;
  for (const auto& [c, e] : sampler.Anchors(1)) {
    ++used;
    if (auto w = MonotonicityAt(rule, c, e, e + 0.5 * plan.max_endowment,
                                plan.epsilon)) {
      return Finish(Axiom::kEndowmentMonotonicity, plan, used, std::move(w));
    }
  }
  for (int k = 0; k < plan.samples; ++k) {
    ++used;
    const Coalition c = sampler.CoalitionOfAtLeast(agents.size() >= 2 ? 2 : 1);
    double lo = sampler.Endowment();
    double hi = sampler.Endowment();
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) hi = lo + 1e-6 * std::max(1.0, lo);
    if (auto w = MonotonicityAt(rule, c, lo, hi, plan.epsilon)) {
      return Finish(Axiom::kEndowmentMonotonicity, plan, used, std::move(w));
    }
  }
  return Finish(Axiom::kEndowmentMonotonicity, plan, used, std::nullopt);
}

AxiomVerdict CheckConsistency(const SharingRule& rule, const AgentSet& agents,
                              const SamplingPlan& plan) {
  Sampler sampler(agents, plan);
  int used = 0;
  if (agents.size() < 2) {
    return Finish(Axiom::kConsistency, plan, used, std::nullopt);
  }
  for (const auto& [c, e] : sampler.Anchors(2)) {
    ++used;
    if (auto w = ConsistencyAt(rule, c, e, plan.epsilon)) {
      return Finish(Axiom::kConsistency, plan, used, std::move(w));
    }
  }
  for (int k = 0; k < plan.samples; ++k) {
    ++used;
    const Coalition c = sampler.CoalitionOfAtLeast(2);
    if (auto w = ConsistencyAt(rule, c, sampler.Endowment(), plan.epsilon)) {
      return Finish(Axiom::kConsistency, plan, used, std::move(w));
    }
  }
  return Finish(Axiom::kConsistency, plan, used, std::nullopt);
}

AxiomVerdict CheckSolidarity(const SharingRule& rule, const AgentSet& agents,
                             const SamplingPlan& plan) {
  Sampler sampler(agents, plan);
  int used = 0;
  // Incumbents need two members and the larger coalition one more.
  if (agents.size() < 3) {
    return Finish(Axiom::kSolidarity, plan, used, std::nullopt);
  }
  const auto anchors = sampler.Anchors(2);
  for (const auto& [c, e] : anchors) {
    for (const auto& [c_prime, e_prime] : anchors) {
      if (!c.IsProperSubsetOf(c_prime)) continue;
      ++used;
      if (auto w = SolidarityAt(rule, c, e, c_prime, e_prime, plan.epsilon)) {
        return Finish(Axiom::kSolidarity, plan, used, std::move(w));
      }
    }
  }
  for (int k = 0; k < plan.samples; ++k) {
    ++used;
    const Coalition c_prime = sampler.CoalitionOfAtLeast(3);
    const Coalition c = sampler.ProperSubsetOf(c_prime, 2);
    const double e_prime = sampler.Endowment();
    double e;
    if (k % 2 == 0) {
      e = sampler.Endowment();
    } else {
      // Re-solving C with exactly what it gets inside C' exposes any
      // consistency failure as opposite moves of two incumbents.
      const Allocation big = rule(c_prime, e_prime);
      e = 0.0;
      for (int i : c.Members()) e += big.PayoffOf(i);
    }
    if (auto w = SolidarityAt(rule, c, e, c_prime, e_prime, plan.epsilon)) {
      return Finish(Axiom::kSolidarity, plan, used, std::move(w));
    }
  }
  return Finish(Axiom::kSolidarity, plan, used, std::nullopt);
}

AxiomVerdict CheckEndowmentContinuity(const SharingRule& rule,
                                      const AgentSet& agents,
                                      const SamplingPlan& plan) {
  Sampler sampler(agents, plan);
  int used = 0;
  const int min_size = agents.size() >= 2 ? 2 : 1;
  // Kinks first: every breakpoint on every coalition size class.
  for (double b : plan.breakpoints) {
    if (!std::isfinite(b) || b < 0.0) continue;
    ++used;
    const Coalition c = sampler.CoalitionOfAtLeast(min_size);
    if (auto w = ContinuityAt(rule, c, b, plan)) {
      return Finish(Axiom::kEndowmentContinuity, plan, used, std::move(w));
    }
  }
  for (int k = 0; k < plan.samples; ++k) {
    ++used;
    const Coalition c = sampler.CoalitionOfAtLeast(min_size);
    if (auto w = ContinuityAt(rule, c, sampler.Endowment(), plan)) {
      return Finish(Axiom::kEndowmentContinuity, plan, used, std::move(w));
    }
  }
  return Finish(Axiom::kEndowmentContinuity, plan, used, std::nullopt);
}

bool SolidarityViolated(const SharingRule& rule, Coalition c, double e,
                        Coalition c_prime, double e_prime, int i, int j,
                        double epsilon) {
  if (!c.IsProperSubsetOf(c_prime) || !c.Contains(i) || !c.Contains(j)) {
    return false;
  }
  const Allocation small = rule(c, e);
  const Allocation big = rule(c_prime, e_prime);
  const double tol = Tol(epsilon, e, e_prime);
  return small.PayoffOf(i) > big.PayoffOf(i) + tol &&
         small.PayoffOf(j) < big.PayoffOf(j) - tol;
}

bool ReplayWitness(const SharingRule& rule, Axiom axiom,
                   const AxiomWitness& w, double epsilon,
                   double continuity_tolerance) {
  switch (axiom) {
    case Axiom::kEndowmentMonotonicity: {
      if (!(w.endowment < w.other_endowment)) return false;
      const double tol = Tol(epsilon, w.other_endowment);
      return rule(w.coalition, w.endowment).PayoffOf(w.agent) >
             rule(w.coalition, w.other_endowment).PayoffOf(w.agent) + tol;
    }
    case Axiom::kConsistency: {
      if (!w.other.IsProperSubsetOf(w.coalition)) return false;
      const Allocation full = rule(w.coalition, w.endowment);
      double share = 0.0;
      for (int i : w.other.Members()) share += full.PayoffOf(i);
      const Allocation again = rule(w.other, share);
      return std::abs(again.PayoffOf(w.agent) - full.PayoffOf(w.agent)) >
             Tol(epsilon, w.endowment);
    }
    case Axiom::kSolidarity:
      return SolidarityViolated(rule, w.coalition, w.endowment, w.other,
                                w.other_endowment, w.agent, w.other_agent,
                                epsilon);
    case Axiom::kEndowmentContinuity:
      return std::abs(rule(w.coalition, w.endowment).PayoffOf(w.agent) -
                      rule(w.coalition, w.other_endowment).PayoffOf(w.agent)) >
             continuity_tolerance;
  }
  return false;
}

Lemma1Report CheckLemma1Equivalence(const SharingRule& rule,
                                    const AgentSet& agents,
                                    const SamplingPlan& plan) {
  Lemma1Report r;
  r.solidarity = CheckSolidarity(rule, agents, plan);
  r.monotonicity = CheckEndowmentMonotonicity(rule, agents, plan);
  r.consistency = CheckConsistency(rule, agents, plan);
  const bool parts = r.monotonicity.passed && r.consistency.passed;
  r.concordant = r.solidarity.passed == parts;
  if (!r.concordant) {
    r.note = r.solidarity.passed
                 ? "solidarity sampled clean but a component axiom failed: "
                   "suspected sampling gap or rule bug"
                 : "monotonicity and consistency sampled clean but solidarity "
                   "failed: suspected sampling gap or rule bug";
  }
  return r;
}

double SolveConsistentExtension(const SharingRule& rule, Coalition c,
                                Coalition c_prime, double e_prime, double tol,
                                int max_doublings) {
  if (!c_prime.IsSubsetOf(c) || c_prime.empty()) {
    throw InvalidInput("consistent extension needs a nonempty C' inside C");
  }
  if (!(e_prime >= 0.0)) throw InvalidInput("E' must be nonnegative");
  if (c_prime == c) return e_prime;
  const auto members = c_prime.Members();
  auto share = [&](double xi) {
    const Allocation a = rule(c, xi);
    double s = 0.0;
    for (int i : members) s += a.PayoffOf(i);
    return s;
  };
  double lo = 0.0;
  double hi = std::max(1.0, e_prime);
  int doublings = 0;
  while (share(hi) < e_prime) {
    if (++doublings > max_doublings) {
      throw NoSolutionInRange("share of {" + c_prime.ToString() + "} in {" +
                              c.ToString() + "} stays below " +
                              FormatNumber(e_prime) +
                              " (rule may be satiated)");
    }
    lo = hi;
    hi *= 2.0;
  }
  double best = hi;
  double best_gap = std::abs(share(hi) - e_prime);
  for (int it = 0; it < 400 && best_gap > tol && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double s = share(mid);
    if (std::abs(s - e_prime) < best_gap) {
      best = mid;
      best_gap = std::abs(s - e_prime);
    }
    if (s < e_prime) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_gap > tol) {
    throw NoSolutionInRange("no endowment gives {" + c_prime.ToString() +
                            "} a share of " + FormatNumber(e_prime) +
                            " (share jumps over it)");
  }
  return best;
}

}  // namespace coalition
