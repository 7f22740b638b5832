// markov.hpp -- Markov chains on the overlap-shift graph whose edge
// stationary distribution matches a target k-tuple measure
#pragma once

#include <cstdint>
#include <vector>

#include "scs/debruijn.hpp"
#include "scs/measures.hpp"

namespace scs {

/// Chain on the order-(k-1) graph. transition is row-stochastic over
/// vertices (row-major); stationary is its left fixed vector; edge_prob
/// holds the per-edge transition probability (one entry per edge id, the
/// lossless view when parallel edges exist at order 0); edge_probs is the
/// per-vertex probability q_i of emitting symbol 0; support marks vertices
/// that carry stationary mass. Rows of vertices outside the support are
/// uniform placeholders and never reachable from the support.
struct MarkovChain {
  DeBruijnGraph graph;
  std::vector<double> transition;
  std::vector<double> stationary;
  std::vector<double> edge_prob;
  std::vector<double> edge_probs;
  std::vector<uint8_t> support;
};

/// Chain whose edge visit rates reproduce the shift-invariant k-tuple
/// measure p: stationary v_i = sum_a p(u_i a), transitions p(u_i a)/v_i.
/// Throws std::invalid_argument when p is not shift-invariant within 1e-10
/// or not a probability.
MarkovChain chain_from_measure(const MeasureD& p);

/// Left fixed vector of a row-stochastic matrix (row-major, n x n): v A = v,
/// v >= 0, sum 1, by direct linear solve. Throws std::invalid_argument when
/// the positive-entry support has more than one closed communicating class,
/// naming a stranded vertex set in the message.
std::vector<double> stationary(const std::vector<double>& transition, size_t n);

/// profile[t-1] = max_i TV((A^t)_{i,.}, stationary) for t = 1..steps.
/// Meaningful for chains that are irreducible and aperiodic on their
/// support; the uniform chain reaches exactly 0 after `order` steps.
std::vector<double> mixing_profile(const MarkovChain& chain, unsigned steps);

}  // namespace scs
