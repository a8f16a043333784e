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

#include "coalition/rules.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coalition {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// a * b with 0 * inf taken as 0, as the interval formula intends.
double SafeMul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Allocation Uniform(Coalition c, double value) {
  return Allocation{c, std::vector<double>(static_cast<std::size_t>(c.size()),
                                           value)};
}

void RequireAgent(const AgentSet& agents, int agent, const char* what) {
  if (!agents.Contains(agent)) {
    throw InvalidInput(std::string(what) + " " + std::to_string(agent) +
                       " is not an agent");
  }
}

void RequireFiniteNonnegative(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidInput(what + " must be finite and nonnegative");
  }
}

void ValidateRanking(const Ranking& ranking, const AgentSet& agents) {
  const int n = agents.size();
  if (static_cast<int>(ranking.positions.size()) != n) {
    throw InvalidInput("ranking must list a position for each of the " +
                       std::to_string(n) + " agents");
  }
  std::vector<int> sorted = ranking.positions;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < n; ++k) {
    if (sorted[k] != k + 1) {
      throw InvalidInput("ranking positions must be a permutation of 1..n");
    }
  }
}

// Principal branch of Lambert W for z >= 0 (Halley iteration).
double LambertW0(double z) {
  if (z == 0.0) return 0.0;
  double w;
  if (z < 2.0) {
    const double l = std::log1p(z);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l = std::log(z);
    w = l - std::log(l);
  }
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

// Demand of an agent with slope a at multiplier mu: solves
// a / ((1 + a x) log(1 + a x)) = mu, i.e. log(1 + a x) = W(a / mu).
double NashDemand(double slope, double mu) {
  return std::expm1(LambertW0(slope / mu)) / slope;
}

}  // namespace

Ranking Ranking::Identity(int n) {
  Ranking r;
  r.positions.resize(static_cast<std::size_t>(n));
  std::iota(r.positions.begin(), r.positions.end(), 1);
  return r;
}

int Ranking::ProjectedPosition(Coalition c, int agent) const {
  const int own = PositionOf(agent);
  int count = 0;
  for (int j : c.Members()) {
    if (PositionOf(j) <= own) ++count;
  }
  return count;
}

std::string FamilyTag(const SharingRuleSpec& spec) {
  return std::visit(
      Overloaded{
          [](const EqualDivisionSpec&) { return std::string("equal-division"); },
          [](const PrioritySatiationSpec&) {
            return std::string("priority-satiation");
          },
          [](const GrandCoalitionPrioritySpec&) {
            return std::string("grand-coalition-priority");
          },
          [](const IntervalRankingSpec&) {
            return std::string("interval-ranking");
          },
          [](const ProportionalRankingSpec&) {
            return std::string("proportional-ranking");
          },
          [](const ClaimsSpec& s) {
            switch (s.method) {
              case ClaimsMethod::kProportional:
                return std::string("claims-proportional");
              case ClaimsMethod::kConstrainedEqualAwards:
                return std::string("claims-cea");
              case ClaimsMethod::kRandomArrival:
                return std::string("claims-random-arrival");
            }
            return std::string("claims-proportional");
          },
          [](const NashProductSpec&) { return std::string("nash-product"); },
      },
      spec);
}

const std::vector<std::string>& KnownFamilyTags() {
  static const std::vector<std::string> tags = {
      "equal-division",      "priority-satiation",   "grand-coalition-priority",
      "interval-ranking",    "proportional-ranking", "claims-proportional",
      "claims-cea",          "claims-random-arrival", "nash-product"};
  return tags;
}

void ValidateRule(const SharingRuleSpec& spec, const AgentSet& agents) {
  const auto n = static_cast<std::size_t>(agents.size());
  std::visit(
      Overloaded{
          [](const EqualDivisionSpec&) {},
          [&](const PrioritySatiationSpec& s) {
            RequireFiniteNonnegative(s.satiation, "satiation level");
            RequireAgent(agents, s.priority_agent, "priority agent");
          },
          [&](const GrandCoalitionPrioritySpec& s) {
            RequireFiniteNonnegative(s.satiation, "satiation level");
            RequireAgent(agents, s.priority_agent, "priority agent");
          },
          [&](const IntervalRankingSpec& s) {
            ValidateRanking(s.ranking, agents);
            for (std::size_t m = 0; m < s.intervals.size(); ++m) {
              const Interval& iv = s.intervals[m];
              RequireFiniteNonnegative(iv.lower, "interval lower bound");
              if (std::isnan(iv.upper) || iv.upper < iv.lower) {
                throw InvalidInput("interval " + std::to_string(m + 1) +
                                   " has upper < lower");
              }
              if (m + 1 < s.intervals.size()) {
                if (std::isinf(iv.upper)) {
                  throw InvalidInput("only the last interval may be unbounded");
                }
                if (s.intervals[m + 1].lower < iv.upper) {
                  throw InvalidInput("intervals must be ascending and disjoint");
                }
              }
            }
          },
          [&](const ProportionalRankingSpec& s) {
            ValidateRanking(s.ranking, agents);
            if (s.weights.size() < n) {
              throw InvalidInput("proportional-ranking needs one weight per position");
            }
            if (!(s.weights[0] > 0.0) || !std::isfinite(s.weights[0])) {
              throw InvalidInput("the top weight must be positive");
            }
            for (std::size_t k = 0; k < s.weights.size(); ++k) {
              RequireFiniteNonnegative(s.weights[k], "weight");
              if (k > 0 && s.weights[k] > s.weights[k - 1]) {
                throw InvalidInput("weights must be nonincreasing in position");
              }
            }
          },
          [&](const ClaimsSpec& s) {
            if (s.claims.size() != n) {
              throw InvalidInput("claims rule needs one claim per agent");
            }
            for (double c : s.claims) RequireFiniteNonnegative(c, "claim");
          },
          [&](const NashProductSpec& s) {
            if (s.slopes.size() != n) {
              throw InvalidInput("nash-product needs one utility slope per agent");
            }
            for (double a : s.slopes) {
              if (!std::isfinite(a) || !(a > 0.0)) {
                throw InvalidInput("utility slopes must be positive");
              }
            }
          },
      },
      spec);
}

SharingRule MakeRule(const SharingRuleSpec& spec, const AgentSet& agents) {
  ValidateRule(spec, agents);
  return SharingRule(
      FamilyTag(spec), [spec, agents](Coalition c, double e) -> Allocation {
        if (c.empty() || !c.IsSubsetOf(Coalition::All(agents))) {
          throw InvalidInput("coalition outside the agent set");
        }
        if (!std::isfinite(e) || e < 0.0) {
          throw InvalidInput("endowment must be finite and nonnegative");
        }
        return std::visit(
            Overloaded{
                [&](const EqualDivisionSpec&) { return EqualDivision(c, e); },
                [&](const PrioritySatiationSpec& s) {
                  return PrioritySatiation(c, e, s.satiation, s.priority_agent);
                },
                [&](const GrandCoalitionPrioritySpec& s) {
                  return GrandCoalitionPriority(c, e, s.satiation,
                                                s.priority_agent, agents);
                },
                [&](const IntervalRankingSpec& s) {
                  return IntervalRule(c, e, s.ranking, s.intervals);
                },
                [&](const ProportionalRankingSpec& s) {
                  return ProportionalRanking(c, e, s.ranking, s.weights);
                },
                [&](const ClaimsSpec& s) {
                  return ClaimsRule(c, e, s.claims, s.method);
                },
                [&](const NashProductSpec& s) {
                  return NashProduct(c, e, s.slopes);
                },
            },
            spec);
      });
}

Allocation EqualDivision(Coalition c, double endowment) {
  return Uniform(c, endowment / c.size());
}

Allocation PrioritySatiation(Coalition c, double endowment, double satiation,
                             int priority_agent) {
  if (!c.Contains(priority_agent)) return EqualDivision(c, endowment);
  Allocation out = Uniform(c, 0.0);
  const int others = c.size() - 1;
  const auto p = static_cast<std::size_t>(c.IndexOf(priority_agent));
  if (others == 0) {
    // Alone, the priority agent keeps everything, satiated or not.
    out.payoffs[p] = endowment;
    return out;
  }
  const double head = std::min(endowment, satiation);
  const double share = (endowment - head) / others;
  std::fill(out.payoffs.begin(), out.payoffs.end(), share);
  out.payoffs[p] = head;
  return out;
}

Allocation GrandCoalitionPriority(Coalition c, double endowment,
                                  double satiation, int priority_agent,
                                  const AgentSet& agents) {
  if (c != Coalition::All(agents)) return EqualDivision(c, endowment);
  return PrioritySatiation(c, endowment, satiation, priority_agent);
}

Allocation IntervalRule(Coalition c, double endowment, const Ranking& ranking,
                        std::span<const Interval> intervals) {
  const double n = c.size();
  const double e = endowment;
  const Interval* active = nullptr;
  for (const Interval& iv : intervals) {
    if (n * iv.lower <= e && e <= SafeMul(n, iv.upper)) {
      active = &iv;
      break;
    }
  }
  if (active == nullptr) return EqualDivision(c, e);

  const double a = active->lower;
  const double b = active->upper;
  Allocation out = Uniform(c, 0.0);
  const auto members = c.Members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double pos = ranking.ProjectedPosition(c, members[k]);
    const double beta = pos - 1.0;
    // Bounds of the three branches for this position.
    const double floor_top = SafeMul(n - beta, a) + SafeMul(beta, b);
    const double ceil_top = SafeMul(n - pos, a) + SafeMul(pos, b);
    double x;
    if (e <= floor_top) {
      x = a;
    } else if (e <= ceil_top) {
      x = e - SafeMul(n - pos, a) - SafeMul(beta, b);
    } else if (e <= SafeMul(n, b)) {
      x = b;
    } else {
      throw InvariantBreach("interval rule: no branch applies");
    }
    out.payoffs[k] = x;
  }
  return out;
}

Allocation ProportionalRanking(Coalition c, double endowment,
                               const Ranking& ranking,
                               std::span<const double> weights) {
  Allocation out = Uniform(c, 0.0);
  const auto members = c.Members();
  double total = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int pos = ranking.ProjectedPosition(c, members[k]);
    out.payoffs[k] = weights[static_cast<std::size_t>(pos - 1)];
    total += out.payoffs[k];
  }
  for (double& x : out.payoffs) x = x * endowment / total;
  return out;
}

Allocation ClaimsRule(Coalition c, double endowment,
                      std::span<const double> claims, ClaimsMethod method) {
  const auto members = c.Members();
  const std::size_t m = members.size();
  std::vector<double> own(m);
  for (std::size_t k = 0; k < m; ++k) {
    own[k] = claims[static_cast<std::size_t>(members[k] - 1)];
  }
  const double total = std::accumulate(own.begin(), own.end(), 0.0);
  Allocation out = Uniform(c, 0.0);
  if (endowment >= total) {
    const double surplus = (endowment - total) / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) out.payoffs[k] = own[k] + surplus;
    return out;
  }
  switch (method) {
    case ClaimsMethod::kProportional:
      for (std::size_t k = 0; k < m; ++k) {
        out.payoffs[k] = own[k] * endowment / total;
      }
      break;
    case ClaimsMethod::kConstrainedEqualAwards: {
      // Water-filling: raise a common level mu, capping each agent at its
      // claim, until the endowment is spent.
      std::vector<double> sorted = own;
      std::sort(sorted.begin(), sorted.end());
      double remaining = endowment;
      double level = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double open = static_cast<double>(m - k);
        if (sorted[k] * open >= remaining) {
          level = remaining / open;
          break;
        }
        remaining -= sorted[k];
        level = sorted[k];
      }
      for (std::size_t k = 0; k < m; ++k) {
        out.payoffs[k] = std::min(own[k], level);
      }
      break;
    }
    case ClaimsMethod::kRandomArrival: {
      // Agent k's expected award over uniformly random arrival orders: with
      // the set S of earlier arrivals, it receives min(c_k, E - c(S))^+, and
      // S occurs with probability |S|! (m - |S| - 1)! / m!.
      std::vector<double> weight(m);
      for (std::size_t s = 0; s < m; ++s) {
        weight[s] = std::exp(std::lgamma(s + 1.0) + std::lgamma(m - s + 0.0) -
                             std::lgamma(m + 1.0));
      }
      const std::uint32_t subsets = 1u << m;
      std::vector<double> subset_claim(subsets, 0.0);
      for (std::uint32_t s = 1; s < subsets; ++s) {
        const int low = std::countr_zero(s);
        subset_claim[s] = subset_claim[s & (s - 1)] + own[low];
      }
      for (std::size_t k = 0; k < m; ++k) {
        const std::uint32_t self = 1u << k;
        double value = 0.0;
        for (std::uint32_t s = 0; s < subsets; ++s) {
          if (s & self) continue;
          const double left = endowment - subset_claim[s];
          if (left <= 0.0) continue;
          value += weight[static_cast<std::size_t>(std::popcount(s))] *
                   std::min(own[k], left);
        }
        out.payoffs[k] = value;
      }
      break;
    }
  }
  return out;
}

Allocation NashProduct(Coalition c, double endowment,
                       std::span<const double> slopes,
                       const NashOptions& options) {
  Allocation out = Uniform(c, 0.0);
  const auto members = c.Members();
  const std::size_t m = members.size();
  if (endowment == 0.0) return out;
  if (m == 1) {
    out.payoffs[0] = endowment;
    return out;
  }
  std::vector<double> a(m);
  for (std::size_t k = 0; k < m; ++k) {
    a[k] = slopes[static_cast<std::size_t>(members[k] - 1)];
  }
  auto demand = [&](double mu) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += NashDemand(a[k], mu);
    return sum;
  };
  // Total demand decreases in the multiplier; bracket, then bisect in log mu.
  double lo = 0.0;  // log mu with demand >= E
  double hi = 0.0;  // log mu with demand <= E
  int guard = 0;
  while (demand(std::exp(lo)) < endowment && guard++ < 2000) lo -= 1.0;
  guard = 0;
  while (demand(std::exp(hi)) > endowment && guard++ < 2000) hi += 1.0;
  for (int it = 0; it < options.max_iterations && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (demand(std::exp(mid)) >= endowment) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu = std::exp(0.5 * (lo + hi));
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    out.payoffs[k] = NashDemand(a[k], mu);
    sum += out.payoffs[k];
  }
  for (double& x : out.payoffs) x *= endowment / sum;
  const double residual = NashKktResidual(out, slopes);
  if (!(residual <= options.kkt_tolerance)) {
    throw std::runtime_error("nash-product: multiplier search did not converge, "
                             "KKT residual " + std::to_string(residual));
  }
  return out;
}

double NashKktResidual(const Allocation& allocation,
                       std::span<const double> slopes) {
  const auto members = allocation.coalition.Members();
  std::vector<double> marginal;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double x = allocation.payoffs[k];
    if (x <= 0.0) continue;
    const double a = slopes[static_cast<std::size_t>(members[k] - 1)];
    const double ax = a * x;
    marginal.push_back(a / ((1.0 + ax) * std::log1p(ax)));
  }
  if (marginal.size() < 2) return 0.0;
  const double mean =
      std::accumulate(marginal.begin(), marginal.end(), 0.0) / marginal.size();
  double worst = 0.0;
  for (double v : marginal) worst = std::max(worst, std::abs(v - mean) / mean);
  return worst;
}

std::vector<double> RuleBreakpoints(const SharingRuleSpec& spec,
                                    const AgentSet& agents) {
  std::set<double> points;
  const int n = agents.size();
  std::visit(
      Overloaded{
          [](const EqualDivisionSpec&) {},
          [&](const PrioritySatiationSpec& s) { points.insert(s.satiation); },
          [&](const GrandCoalitionPrioritySpec& s) {
            points.insert(s.satiation);
          },
          [&](const IntervalRankingSpec& s) {
            for (const Interval& iv : s.intervals) {
              for (int size = 1; size <= n; ++size) {
                for (int beta = 0; beta <= size; ++beta) {
                  const double v = SafeMul(size - beta, iv.lower) +
                                   SafeMul(beta, iv.upper);
                  if (std::isfinite(v)) points.insert(v);
                }
              }
            }
          },
          [](const ProportionalRankingSpec&) {},
          [&](const ClaimsSpec& s) {
            const std::uint32_t all = Coalition::All(agents).mask();
            for (std::uint32_t mask = 1; mask <= all && points.size() < 4096;
                 ++mask) {
              double total = 0.0;
              for (int i : Coalition(mask).Members()) {
                total += s.claims[static_cast<std::size_t>(i - 1)];
              }
              points.insert(total);
            }
          },
          [](const NashProductSpec&) {},
      },
      spec);
  return {points.begin(), points.end()};
}

}  // namespace coalition
