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

#include "coalition/structure.h"

#include <algorithm>
#include <deque>
#include <limits>

namespace coalition {
namespace {

// Strongly connected components (iterative Tarjan). Components come out in
// reverse topological order: a component is emitted only after every
// component reachable from it.
std::vector<int> StronglyConnected(const std::vector<std::vector<int>>& adj,
                                   int* count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int next_index = 0;
  int next_comp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        const int w = adj[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  *count = next_comp;
  return comp;
}

// Shortest path from `from` to `to` over `adj`, restricted to `allowed`.
// Returns the node sequence including both ends; empty when unreachable.
std::vector<int> ShortestPath(const std::vector<std::vector<int>>& adj,
                              int from, int to,
                              const std::function<bool(int)>& allowed) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int w : adj[v]) {
      if (parent[w] != -2 || !allowed(w)) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  if (parent[to] == -2) return {};
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::string AlignmentViolation::Describe() const {
  return "({" + preferred.ToString() + "},{" + other.ToString() + "}) agent " +
         std::to_string(agent) + " vs " + std::to_string(other_agent);
}

bool WeakAlignmentBrokenAt(const InducedProblem& problem, Coalition a,
                           Coalition b, int i, int j) {
  const Coalition shared = a.Intersect(b);
  if (!shared.Contains(i) || !shared.Contains(j) || i == j) return false;
  return problem.StrictlyPrefers(i, a, b) && problem.StrictlyPrefers(j, b, a);
}

bool AlignmentBrokenAt(const InducedProblem& problem, Coalition a, Coalition b,
                       int i, int j) {
  const Coalition shared = a.Intersect(b);
  if (!shared.Contains(i) || !shared.Contains(j) || i == j) return false;
  return problem.Compare(i, a, b) != problem.Compare(j, a, b);
}

namespace {

template <class Judge>
std::optional<AlignmentViolation> ScanPairs(const InducedProblem& problem,
                                            Judge judge) {
  const auto coalitions = CanonicalCoalitions(problem.agents());
  for (std::size_t p = 0; p < coalitions.size(); ++p) {
    for (std::size_t q = p + 1; q < coalitions.size(); ++q) {
      const Coalition a = coalitions[p];
      const Coalition b = coalitions[q];
      const Coalition shared = a.Intersect(b);
      if (shared.size() < 2) continue;
      const auto members = shared.Members();
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          if (auto v = judge(a, b, members[x], members[y])) return v;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AlignmentViolation> CheckWeakPairwiseAlignment(
    const InducedProblem& problem) {
  return ScanPairs(problem, [&](Coalition a, Coalition b, int i, int j)
                                -> std::optional<AlignmentViolation> {
    if (WeakAlignmentBrokenAt(problem, a, b, i, j)) {
      return AlignmentViolation{a, b, i, j};
    }
    if (WeakAlignmentBrokenAt(problem, b, a, i, j)) {
      return AlignmentViolation{b, a, i, j};
    }
    return std::nullopt;
  });
}

std::optional<AlignmentViolation> CheckPairwiseAlignment(
    const InducedProblem& problem) {
  return ScanPairs(problem, [&](Coalition a, Coalition b, int i, int j)
                                -> std::optional<AlignmentViolation> {
    const Preference pi = problem.Compare(i, a, b);
    const Preference pj = problem.Compare(j, a, b);
    if (pi == pj) return std::nullopt;
    // Report from the point of view of an agent with a strict preference.
    const bool i_strict = pi != Preference::kIndifferent;
    const int agent = i_strict ? i : j;
    const Preference p = i_strict ? pi : pj;
    const Coalition preferred = p == Preference::kPrefers ? a : b;
    const Coalition other = p == Preference::kPrefers ? b : a;
    return AlignmentViolation{preferred, other, agent, i_strict ? j : i};
  });
}

std::optional<PreferenceDigraph::Edge> RingLink(const InducedProblem& problem,
                                                Coalition from, Coalition to) {
  const Coalition shared = from.Intersect(to);
  if (shared.empty() || from == to) return std::nullopt;
  PreferenceDigraph::Edge edge{to};
  for (int j : shared.Members()) {
    const Preference p = problem.Compare(j, to, from);
    if (p == Preference::kDisprefers) return std::nullopt;
    if (p == Preference::kPrefers && !edge.strict) {
      edge.strict = true;
      edge.witness = j;
    }
  }
  return edge;
}

PreferenceDigraph::PreferenceDigraph(const InducedProblem& problem)
    : nodes_(CanonicalCoalitions(problem.agents())),
      edges_(std::size_t{1} << problem.num_agents()) {
  for (Coalition from : nodes_) {
    auto& out = edges_[from.mask()];
    for (Coalition to : nodes_) {
      if (auto e = RingLink(problem, from, to)) out.push_back(*e);
    }
  }
}

std::optional<PreferenceDigraph::Edge> PreferenceDigraph::Find(
    Coalition from, Coalition to) const {
  for (const Edge& e : EdgesFrom(from)) {
    if (e.to == to) return e;
  }
  return std::nullopt;
}

void PreferenceDigraph::WriteDot(std::ostream& out) const {
  out << "digraph preferences {\n";
  out << "  node [shape=box];\n";
  for (Coalition c : nodes_) out << "  \"" << c.ToString() << "\";\n";
  for (Coalition from : nodes_) {
    for (const Edge& e : EdgesFrom(from)) {
      out << "  \"" << from.ToString() << "\" -> \"" << e.to.ToString() << "\"";
      if (e.strict) {
        out << " [style=bold, label=\"" << e.witness << "\"]";
      } else {
        out << " [style=dashed, color=gray]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
}

std::string RingCertificate::Describe() const {
  std::string out = "(";
  for (std::size_t k = 0; k < coalitions.size(); ++k) {
    if (k > 0) out += ',';
    out += '{' + coalitions[k].ToString() + '}';
  }
  out += ") witnesses ";
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(witnesses[k]);
  }
  return out;
}

bool IsValidRing(const InducedProblem& problem, const RingCertificate& ring) {
  const std::size_t l = ring.coalitions.size();
  if (l < 3 || ring.witnesses.size() != l) return false;
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a + 1; b < l; ++b) {
      if (ring.coalitions[a] == ring.coalitions[b]) return false;
    }
  }
  for (std::size_t k = 0; k < l; ++k) {
    const Coalition from = ring.coalitions[k];
    const Coalition to = ring.coalitions[(k + 1) % l];
    const auto link = RingLink(problem, from, to);
    if (!link) return false;
    const int w = ring.witnesses[k];
    if (!from.Intersect(to).Contains(w) ||
        !problem.StrictlyPrefers(w, to, from)) {
      return false;
    }
  }
  return true;
}

std::optional<RingCertificate> DetectRing(const InducedProblem& problem) {
  const auto nodes = CanonicalCoalitions(problem.agents());
  std::vector<int> index_of(std::size_t{1} << problem.num_agents(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    index_of[nodes[k].mask()] = static_cast<int>(k);
  }
  // Strict-marked links only; a pair of opposite strict links is impossible
  // (it would need a shared agent to strictly prefer each to the other), so
  // every cycle has at least three coalitions.
  std::vector<std::vector<int>> adj(nodes.size());
  std::vector<std::vector<int>> witness(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      const auto link = RingLink(problem, nodes[u], nodes[v]);
      if (link && link->strict) {
        adj[u].push_back(static_cast<int>(v));
        witness[u].push_back(link->witness);
      }
    }
  }
  int count = 0;
  const std::vector<int> comp = StronglyConnected(adj, &count);
  std::vector<int> comp_size(count, 0);
  for (int c : comp) ++comp_size[c];
  int start = -1;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (comp_size[comp[u]] > 1) {
      start = static_cast<int>(u);
      break;
    }
  }
  if (start < 0) return std::nullopt;

  // Shortest cycle through `start`: shortest path from each successor back.
  const int scc = comp[start];
  auto in_scc = [&](int v) { return comp[v] == scc; };
  std::vector<int> best;
  for (int succ : adj[start]) {
    if (!in_scc(succ)) continue;
    auto path = ShortestPath(adj, succ, start, in_scc);
    if (path.empty()) continue;
    if (best.empty() || path.size() + 1 < best.size()) {
      best.assign(1, start);
      best.insert(best.end(), path.begin(), path.end() - 1);
    }
  }
  RingCertificate ring;
  for (std::size_t k = 0; k < best.size(); ++k) {
    const int u = best[k];
    const int v = best[(k + 1) % best.size()];
    ring.coalitions.push_back(nodes[u]);
    const auto it = std::find(adj[u].begin(), adj[u].end(), v);
    ring.witnesses.push_back(witness[u][it - adj[u].begin()]);
  }
  if (!IsValidRing(problem, ring)) {
    throw InvariantBreach("ring certificate failed re-verification");
  }
  return ring;
}

NonCircularity CheckNonCircular(const InducedProblem& problem) {
  NonCircularity out;
  out.wpa_violation = CheckWeakPairwiseAlignment(problem);
  out.ring = DetectRing(problem);
  out.non_circular = !out.wpa_violation && !out.ring;
  return out;
}

CommonRankingResult CheckCommonRanking(
    const InducedProblem& problem,
    const std::function<bool(Coalition)>& include) {
  std::vector<Coalition> nodes;
  for (Coalition c : CanonicalCoalitions(problem.agents())) {
    if (!include || include(c)) nodes.push_back(c);
  }
  // u -> v when some agent finds v at least as good as u.
  const std::size_t n = nodes.size();
  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<bool>> strict(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const Coalition shared = nodes[u].Intersect(nodes[v]);
      if (shared.empty()) continue;
      bool weak = false;
      bool is_strict = false;
      for (int j : shared.Members()) {
        const Preference p = problem.Compare(j, nodes[v], nodes[u]);
        if (p != Preference::kDisprefers) weak = true;
        if (p == Preference::kPrefers) is_strict = true;
      }
      if (weak) {
        adj[u].push_back(static_cast<int>(v));
        strict[u].push_back(is_strict);
      }
    }
  }
  int count = 0;
  const std::vector<int> comp = StronglyConnected(adj, &count);
  CommonRankingResult out;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < adj[u].size(); ++k) {
      const int v = adj[u][k];
      if (!strict[u][k] || comp[u] != comp[v]) continue;
      out.holds = false;
      const int scc = comp[u];
      auto path = ShortestPath(adj, v, static_cast<int>(u),
                               [&](int w) { return comp[w] == scc; });
      out.cycle.push_back(nodes[u]);
      for (std::size_t p = 0; p + 1 < path.size(); ++p) {
        out.cycle.push_back(nodes[path[p]]);
      }
      return out;
    }
  }
  // Tarjan emits sink components first; sinks are the best coalitions.
  for (std::size_t u = 0; u < n; ++u) out.ranking.emplace_back(nodes[u], comp[u]);
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

std::optional<Coalition> FindTopCoalition(const InducedProblem& problem,
                                          Coalition within) {
  const auto subsets = CanonicalSubsets(within);
  // Best tier each member can reach inside `within`.
  std::vector<int> best(kMaxAgents + 1, std::numeric_limits<int>::min());
  for (Coalition s : subsets) {
    for (int i : s.Members()) best[i] = std::max(best[i], problem.Tier(i, s));
  }
  for (Coalition s : subsets) {
    bool top = true;
    for (int i : s.Members()) {
      if (problem.Tier(i, s) < best[i]) {
        top = false;
        break;
      }
    }
    if (top) return s;
  }
  return std::nullopt;
}

bool HasTopCoalitionProperty(const InducedProblem& problem) {
  for (Coalition c : CanonicalCoalitions(problem.agents())) {
    if (!FindTopCoalition(problem, c)) return false;
  }
  return true;
}

StructureAnalysis AnalyzeStructure(const InducedProblem& problem) {
  StructureAnalysis out;
  out.pairwise_violation = CheckPairwiseAlignment(problem);
  out.weak_pairwise_violation = CheckWeakPairwiseAlignment(problem);
  out.common_ranking = CheckCommonRanking(problem);
  out.ring = DetectRing(problem);
  out.non_circular = !out.weak_pairwise_violation && !out.ring;
  out.top_of_all = FindTopCoalition(problem, Coalition::All(problem.agents()));
  out.top_coalition_property = HasTopCoalitionProperty(problem);
  return out;
}

}  // namespace coalition
