// circulation.hpp -- exact-rational edge flows on the overlap-shift graph
// and their integer rounding within a per-edge unit window
#pragma once

#include <cstddef>
#include <vector>

#include "scs/debruijn.hpp"
#include "scs/measures.hpp"
#include "scs/rational.hpp"
#include "scs/words.hpp"

namespace scs {

/// Nonnegative edge weights with exact flow conservation at every vertex.
struct Circulation {
  DeBruijnGraph graph;
  std::vector<Rat> w;  // per edge id
  Rat total{0};
};

/// Builds and validates a circulation from per-edge weights (edge ids are
/// (m+1)-tuple indices). Throws std::invalid_argument on negative weights
/// or a conservation defect.
Circulation make_circulation(const DeBruijnGraph& graph, std::vector<Rat> w);

/// n * q1 as a circulation on the order-(k-1) graph; q1 must be
/// shift-invariant (exactly), which is precisely conservation.
Circulation measure_circulation(const MeasureQ& q1, const Rat& n);

/// One step of a closed walk in the underlying undirected graph: the edge
/// is traversed with (forward) or against (backward) its direction.
struct CycleEdge {
  size_t edge = 0;
  bool forward = true;
};
using Cycle = std::vector<CycleEdge>;

/// #forward - #backward. Validates that consecutive traversals chain
/// head-to-tail and that the walk closes; throws std::invalid_argument
/// otherwise. Zero means the cycle is balanced.
long effective_length(const DeBruijnGraph& graph, const Cycle& cycle);

/// Adds eps on forward edges and subtracts it on backward edges (exactly).
/// Conservation is preserved by the cycle structure; the total moves by
/// eps * effective_length. Throws std::invalid_argument when a weight would
/// turn negative, naming the violating edge.
Circulation epsilon_adjust(const Circulation& circ, const Cycle& cycle,
                           const Rat& eps);

/// Edge-simple directed cycle of exactly len edges, found by depth-first
/// search with lexicographic edge preference (deterministic). Throws
/// std::invalid_argument when len is outside [1, edges] or no cycle of that
/// length exists.
Cycle find_directed_cycle(const DeBruijnGraph& graph, size_t len);

/// Rounds a circulation with integer total n to an integer one: repeatedly
/// extracts cycles of non-integer edges and applies the minimal adjustment
/// that lands an edge on an integer (balanced cycles alone, non-balanced
/// ones in compensating pairs), then finishes the single residual cycle by
/// flooring forward edges, ceiling backward ones, and adding 1 along a
/// directed cycle that restores the total. Every output weight w' obeys
/// floor(w) <= w' <= ceil(w)+1 against its input weight w; conservation and
/// the total are preserved exactly. Throws std::invalid_argument when the
/// total is not an integer.
Circulation integer_round_circulation(const Circulation& circ);

/// integer_round_circulation(n * q1) / n: a shift-invariant measure on the
/// 1/n lattice with max-norm distance < 2/n from q1.
MeasureQ round_measure_to_lattice(const MeasureQ& q1, unsigned long n);

/// Cyclic word whose cyclic (m+1)-tuple counts equal the integer edge
/// weights: an Eulerian circuit of the weighted multigraph, starting at the
/// lowest positive-weight vertex with lexicographic edge preference. Throws
/// std::invalid_argument when weights are not integers or the positive
/// support is not connected.
Word realize_cyclic_sequence(const Circulation& circ);

}  // namespace scs
