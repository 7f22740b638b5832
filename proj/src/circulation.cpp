#include "scs/circulation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace scs {

namespace {

size_t traversal_start(const DeBruijnGraph& g, const CycleEdge& t) {
  return t.forward ? g.source(t.edge) : g.target(t.edge);
}

size_t traversal_end(const DeBruijnGraph& g, const CycleEdge& t) {
  return t.forward ? g.target(t.edge) : g.source(t.edge);
}

/// Vertex-simple path from u to goal using only allowed edges (either
/// direction, banned edge excluded), smallest edge id first and forward
/// before backward. Full backtracking keeps the search complete.
bool simple_path(const DeBruijnGraph& g, size_t u, size_t goal, size_t banned,
                 const std::vector<uint8_t>& allowed, std::vector<uint8_t>& visited,
                 Cycle& path) {
  if (u == goal) return true;
  visited[u] = 1;
  for (unsigned a = 0; a < g.alphabet; ++a) {
    const size_t e = g.edge(u, a);
    if (e == banned || !allowed[e]) continue;
    const size_t v = g.target(e);
    if (v != goal && visited[v]) continue;
    path.push_back({e, true});
    if (simple_path(g, v, goal, banned, allowed, visited, path)) return true;
    path.pop_back();
  }
  for (unsigned j = 0; j < g.alphabet; ++j) {
    const size_t e = g.in_edge(u, j);
    if (e == banned || !allowed[e]) continue;
    const size_t v = g.source(e);
    if (v != goal && visited[v]) continue;
    path.push_back({e, false});
    if (simple_path(g, v, goal, banned, allowed, visited, path)) return true;
    path.pop_back();
  }
  visited[u] = 0;
  return false;
}

/// Vertex-simple cycle that traverses `anchor` forward and otherwise stays
/// inside the allowed edge set. Conservation guarantees one exists whenever
/// the allowed set is the fractional support of an exact circulation: a cut
/// crossed by exactly one fractional edge would leave a fractional imbalance
/// across it.
Cycle cycle_through(const DeBruijnGraph& g, size_t anchor,
                    const std::vector<uint8_t>& allowed) {
  Cycle cycle{{anchor, true}};
  const size_t s = g.target(anchor);
  const size_t goal = g.source(anchor);
  if (s == goal) return cycle;  // self-loop
  std::vector<uint8_t> visited(g.vertices, 0);
  if (!simple_path(g, s, goal, anchor, allowed, visited, cycle))
    throw std::logic_error("no cycle of fractional edges through edge " +
                           std::to_string(anchor));
  return cycle;
}

Rat up_distance(const Rat& w) { return rat_ceil(w) - w; }
Rat down_distance(const Rat& w) { return w - rat_floor(w); }

/// Largest step along the cycle that keeps every edge on its side of the
/// next integer; at least one edge lands exactly on it.
Rat minimal_step(const std::vector<Rat>& w, const Cycle& cycle) {
  Rat best{-1};
  for (const CycleEdge& t : cycle) {
    const Rat d = t.forward ? up_distance(w[t.edge]) : down_distance(w[t.edge]);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

void apply_cycle(std::vector<Rat>& w, const Cycle& cycle, const Rat& eps) {
  for (const CycleEdge& t : cycle) {
    if (t.forward)
      w[t.edge] += eps;
    else
      w[t.edge] -= eps;
  }
}

}  // namespace

Circulation make_circulation(const DeBruijnGraph& graph, std::vector<Rat> w) {
  if (w.size() != graph.edges)
    throw std::invalid_argument("weight vector size must equal the edge count");
  Circulation out;
  out.graph = graph;
  out.total = 0;
  for (size_t e = 0; e < w.size(); ++e) {
    if (w[e] < 0)
      throw std::invalid_argument("negative weight on edge " + std::to_string(e));
    out.total += w[e];
  }
  for (size_t v = 0; v < graph.vertices; ++v) {
    Rat balance{0};
    for (unsigned a = 0; a < graph.alphabet; ++a) balance += w[graph.edge(v, a)];
    for (unsigned j = 0; j < graph.alphabet; ++j) balance -= w[graph.in_edge(v, j)];
    if (balance != 0)
      throw std::invalid_argument("flow conservation fails at vertex " + std::to_string(v));
  }
  out.w = std::move(w);
  return out;
}

Circulation measure_circulation(const MeasureQ& q1, const Rat& n) {
  if (q1.k < 1) throw std::invalid_argument("measure needs k >= 1");
  if (n < 0) throw std::invalid_argument("scale must be nonnegative");
  if (!is_shift_invariant(q1))
    throw std::invalid_argument("measure must be exactly shift-invariant");
  const DeBruijnGraph graph = build_debruijn(q1.k - 1, q1.alphabet);
  if (q1.w.size() != graph.edges)
    throw std::invalid_argument("measure size does not match its alphabet and k");
  std::vector<Rat> w(graph.edges);
  for (size_t e = 0; e < w.size(); ++e) w[e] = q1.w[e] * n;
  return make_circulation(graph, std::move(w));
}

long effective_length(const DeBruijnGraph& graph, const Cycle& cycle) {
  if (cycle.empty()) throw std::invalid_argument("cycle must be nonempty");
  long length = 0;
  for (size_t i = 0; i < cycle.size(); ++i) {
    if (cycle[i].edge >= graph.edges)
      throw std::invalid_argument("cycle edge id out of range");
    const CycleEdge& next = cycle[(i + 1) % cycle.size()];
    if (traversal_end(graph, cycle[i]) != traversal_start(graph, next))
      throw std::invalid_argument("cycle traversals do not chain");
    length += cycle[i].forward ? 1 : -1;
  }
  return length;
}

Circulation epsilon_adjust(const Circulation& circ, const Cycle& cycle, const Rat& eps) {
  effective_length(circ.graph, cycle);  // validates the walk
  Circulation out = circ;
  apply_cycle(out.w, cycle, eps);
  out.total = 0;
  for (size_t e = 0; e < out.w.size(); ++e) {
    if (out.w[e] < 0)
      throw std::invalid_argument("adjustment drives edge " + std::to_string(e) +
                                  " negative");
    out.total += out.w[e];
  }
  return out;
}

namespace {

bool directed_cycle_dfs(const DeBruijnGraph& g, size_t cur, size_t start,
                        size_t remaining, std::vector<uint8_t>& used,
                        std::vector<size_t>& edges) {
  if (remaining == 0) return cur == start;
  for (unsigned a = 0; a < g.alphabet; ++a) {
    const size_t e = g.edge(cur, a);
    if (used[e]) continue;
    used[e] = 1;
    edges.push_back(e);
    if (directed_cycle_dfs(g, g.target(e), start, remaining - 1, used, edges)) return true;
    edges.pop_back();
    used[e] = 0;
  }
  return false;
}

}  // namespace

Cycle find_directed_cycle(const DeBruijnGraph& graph, size_t len) {
  if (len < 1 || len > graph.edges)
    throw std::invalid_argument("cycle length must be between 1 and the edge count");
  std::vector<uint8_t> used(graph.edges, 0);
  std::vector<size_t> edges;
  for (size_t s = 0; s < graph.vertices; ++s) {
    if (directed_cycle_dfs(graph, s, s, len, used, edges)) {
      Cycle out;
      out.reserve(edges.size());
      for (size_t e : edges) out.push_back({e, true});
      return out;
    }
  }
  throw std::invalid_argument("no directed cycle of length " + std::to_string(len));
}

Circulation integer_round_circulation(const Circulation& circ) {
  if (!rat_is_integer(circ.total))
    throw std::invalid_argument("only a circulation with integer total can be rounded");
  const DeBruijnGraph& g = circ.graph;
  std::vector<Rat> w = circ.w;

  std::vector<uint8_t> fractional(g.edges, 0);
  auto scan_fractional = [&]() {
    size_t count = 0;
    for (size_t e = 0; e < g.edges; ++e) {
      fractional[e] = rat_is_integer(w[e]) ? 0 : 1;
      count += fractional[e];
    }
    return count;
  };

  size_t live = scan_fractional();
  while (live > 0) {
    size_t e0 = 0;
    while (!fractional[e0]) ++e0;
    const Cycle c1 = cycle_through(g, e0, fractional);
    const long a1 = effective_length(g, c1);

    if (a1 == 0) {
      // A balanced cycle moves no total mass; push it until an edge lands
      // on an integer.
      apply_cycle(w, c1, minimal_step(w, c1));
    } else {
      std::vector<uint8_t> on_c1(g.edges, 0);
      for (const CycleEdge& t : c1) on_c1[t.edge] = 1;
      size_t e2 = g.edges;
      for (size_t e = 0; e < g.edges; ++e) {
        if (fractional[e] && !on_c1[e]) {
          e2 = e;
          break;
        }
      }

      if (e2 < g.edges) {
        const Cycle c2 = cycle_through(g, e2, fractional);
        const long a2 = effective_length(g, c2);
        if (a2 == 0) {
          apply_cycle(w, c2, minimal_step(w, c2));
        } else {
          // Combine the two unbalanced cycles so the total stays fixed:
          // step a2 along the first and -a1 along the second.
          std::vector<long> gamma(g.edges, 0);
          for (const CycleEdge& t : c1) gamma[t.edge] += t.forward ? a2 : -a2;
          for (const CycleEdge& t : c2) gamma[t.edge] -= t.forward ? a1 : -a1;
          Rat best{-1};
          for (size_t e = 0; e < g.edges; ++e) {
            if (gamma[e] == 0) continue;
            const Rat d = gamma[e] > 0 ? up_distance(w[e]) : down_distance(w[e]);
            const Rat cand = d / rat_of(gamma[e] > 0 ? gamma[e] : -gamma[e]);
            if (best < 0 || cand < best) best = cand;
          }
          if (best <= 0) throw std::logic_error("combined rounding step is not positive");
          for (size_t e = 0; e < g.edges; ++e)
            if (gamma[e] != 0) w[e] += best * gamma[e];
        }
      } else {
        // Residual phase: the fractional edges form this one unbalanced
        // vertex-simple cycle. Orient it so more edges run forward, where
        // conservation forces one fractional phase alpha on forward edges
        // and 1 - alpha on backward ones. Flooring forward edges and
        // ceiling backward ones clears every fraction and drops the total
        // by the integer a1 * alpha >= 1; one unit along a directed cycle
        // of that length restores it.
        Cycle cycle = c1;
        long len = a1;
        if (len < 0) {
          std::reverse(cycle.begin(), cycle.end());
          for (CycleEdge& t : cycle) t.forward = !t.forward;
          len = -len;
        }
        Rat alpha{-1};
        for (const CycleEdge& t : cycle) {
          if (t.forward) {
            alpha = down_distance(w[t.edge]);
            break;
          }
        }
        for (const CycleEdge& t : cycle) {
          const Rat f = down_distance(w[t.edge]);
          if (t.forward ? (f != alpha) : (f != 1 - alpha))
            throw std::logic_error("mixed fractional phases on the residual cycle");
        }
        for (const CycleEdge& t : cycle)
          w[t.edge] = t.forward ? rat_floor(w[t.edge]) : rat_ceil(w[t.edge]);
        const Rat drop = alpha * len;
        if (!rat_is_integer(drop) || drop < 1)
          throw std::logic_error("residual total drop is not a positive integer");
        const Cycle restore = find_directed_cycle(g, drop.get_num().get_ui());
        for (const CycleEdge& t : restore) w[t.edge] += 1;
      }
    }

    const size_t next_live = scan_fractional();
    if (next_live >= live) throw std::logic_error("rounding failed to make progress");
    live = next_live;
  }

  return make_circulation(g, std::move(w));
}

MeasureQ round_measure_to_lattice(const MeasureQ& q1, unsigned long n) {
  if (n == 0) throw std::invalid_argument("lattice denominator must be positive");
  if (!is_probability(q1))
    throw std::invalid_argument("input must be a probability measure");
  const Rat scale = rat_of(static_cast<long long>(n));
  const Circulation rounded = integer_round_circulation(measure_circulation(q1, scale));
  MeasureQ out;
  out.alphabet = q1.alphabet;
  out.k = q1.k;
  out.w.resize(rounded.w.size());
  for (size_t e = 0; e < out.w.size(); ++e) out.w[e] = rounded.w[e] / scale;
  return out;
}

Word realize_cyclic_sequence(const Circulation& circ) {
  const DeBruijnGraph& g = circ.graph;
  if (circ.total == 0) throw std::invalid_argument("cannot realize an empty circulation");
  std::vector<unsigned long> remaining(g.edges);
  size_t start = g.vertices;
  for (size_t e = 0; e < g.edges; ++e) {
    if (!rat_is_integer(circ.w[e]))
      throw std::invalid_argument("weights must be integers to realize a sequence");
    if (!circ.w[e].get_num().fits_ulong_p())
      throw std::invalid_argument("weight on edge " + std::to_string(e) +
                                  " is too large to realize");
    remaining[e] = circ.w[e].get_num().get_ui();
    if (remaining[e] > 0 && start == g.vertices)
      start = std::min(g.source(e), g.target(e));
  }

  // Balanced degrees make weak connectivity of the positive support
  // sufficient for an Eulerian circuit.
  {
    std::vector<uint8_t> seen(g.vertices, 0);
    std::vector<size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const size_t u = queue.back();
      queue.pop_back();
      for (unsigned a = 0; a < g.alphabet; ++a) {
        const size_t e = g.edge(u, a);
        if (remaining[e] > 0 && !seen[g.target(e)]) {
          seen[g.target(e)] = 1;
          queue.push_back(g.target(e));
        }
      }
      for (unsigned j = 0; j < g.alphabet; ++j) {
        const size_t e = g.in_edge(u, j);
        if (remaining[e] > 0 && !seen[g.source(e)]) {
          seen[g.source(e)] = 1;
          queue.push_back(g.source(e));
        }
      }
    }
    for (size_t e = 0; e < g.edges; ++e)
      if (remaining[e] > 0 && (!seen[g.source(e)] || !seen[g.target(e)]))
        throw std::invalid_argument("positive support is disconnected");
  }

  // Hierholzer walk, smallest symbol first; stuck edges peel off into the
  // circuit in reverse order.
  std::vector<unsigned> next_sym(g.vertices, 0);
  std::vector<size_t> path;
  std::vector<size_t> circuit;
  size_t cur = start;
  while (true) {
    unsigned& a = next_sym[cur];
    while (a < g.alphabet && remaining[g.edge(cur, a)] == 0) ++a;
    if (a < g.alphabet) {
      const size_t e = g.edge(cur, a);
      --remaining[e];
      path.push_back(e);
      cur = g.target(e);
    } else if (!path.empty()) {
      const size_t e = path.back();
      path.pop_back();
      circuit.push_back(e);
      cur = g.source(e);
    } else {
      break;
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (Rat(static_cast<unsigned long>(circuit.size())) != circ.total)
    throw std::logic_error("walk did not cover every edge");

  Word out;
  out.reserve(circuit.size());
  for (size_t e : circuit) out.push_back(static_cast<Symbol>(g.label(e)));
  return out;
}

}  // namespace scs
