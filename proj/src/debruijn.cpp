#include "scs/debruijn.hpp"

#include <stdexcept>

#include "scs/measures.hpp"

namespace scs {

DeBruijnGraph build_debruijn(unsigned m, unsigned alphabet) {
  if (alphabet < 2) throw std::invalid_argument("graph needs alphabet >= 2");
  DeBruijnGraph g;
  g.order = m;
  g.alphabet = alphabet;
  g.vertices = pow_size(alphabet, m);
  g.edges = g.vertices * alphabet;
  return g;
}

}  // namespace scs
