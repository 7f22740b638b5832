// debruijn.hpp -- overlap-shift graph on length-m tuples
#pragma once

#include <cstddef>

namespace scs {

/// Graph on the A^m tuples of length m over {0..A-1}: vertex u has one
/// outgoing edge per symbol a, leading to the tuple that drops u's first
/// symbol and appends a. Edges are identified with (m+1)-tuples u*A + a,
/// so vertex and edge ids follow lexicographic tuple order.
struct DeBruijnGraph {
  unsigned order = 1;     // m
  unsigned alphabet = 2;  // A
  size_t vertices = 2;    // A^m
  size_t edges = 4;       // A^{m+1}

  size_t source(size_t e) const { return e / alphabet; }
  size_t target(size_t e) const { return e % vertices; }
  unsigned label(size_t e) const { return static_cast<unsigned>(e % alphabet); }
  size_t edge(size_t u, unsigned a) const { return u * alphabet + a; }
  /// In-edges of v are j*vertices + v for each leading symbol j.
  size_t in_edge(size_t v, unsigned j) const { return j * vertices + v; }
};

/// m >= 0; m = 0 gives the single-vertex graph whose edges are the symbols.
DeBruijnGraph build_debruijn(unsigned m, unsigned alphabet);

}  // namespace scs
