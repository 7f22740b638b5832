#include "scs/markov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace scs {

namespace {

/// Strongly connected components of the positive-entry digraph, by iterative
/// Tarjan. Returns a component id per vertex.
std::vector<int> scc_ids(const std::vector<std::vector<size_t>>& adj, int& count) {
  const size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<uint8_t> on_stack(n, 0);
  std::vector<size_t> stack;
  int next_index = 0;
  count = 0;

  struct Frame {
    size_t v;
    size_t child;
  };
  for (size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        size_t w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = count;
            if (w == f.v) break;
          }
          ++count;
        }
        size_t v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<double> stationary(const std::vector<double>& transition, size_t n) {
  if (transition.size() != n * n)
    throw std::invalid_argument("transition matrix size mismatch");
  for (size_t i = 0; i < n; ++i) {
    double row = 0;
    for (size_t j = 0; j < n; ++j) {
      if (transition[i * n + j] < -1e-15)
        throw std::invalid_argument("transition entries must be nonnegative");
      row += transition[i * n + j];
    }
    if (std::abs(row - 1.0) > 1e-9)
      throw std::invalid_argument("transition rows must sum to 1");
  }

  // The stationary vector is unique iff exactly one communicating class is
  // closed; otherwise report the vertices of a second closed class.
  std::vector<std::vector<size_t>> adj(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (transition[i * n + j] > 0) adj[i].push_back(j);
  int comp_count = 0;
  std::vector<int> comp = scc_ids(adj, comp_count);
  std::vector<uint8_t> closed(static_cast<size_t>(comp_count), 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j : adj[i])
      if (comp[i] != comp[j]) closed[comp[i]] = 0;
  std::vector<int> closed_ids;
  for (int c = 0; c < comp_count; ++c)
    if (closed[c]) closed_ids.push_back(c);
  if (closed_ids.size() != 1) {
    std::ostringstream msg;
    msg << "reducible transition support; stranded vertex set {";
    bool first = true;
    for (size_t i = 0; i < n; ++i)
      if (comp[i] == closed_ids.back()) {
        msg << (first ? "" : ",") << i;
        first = false;
      }
    msg << "}";
    throw std::invalid_argument(msg.str());
  }

  // Solve v (A - I) = 0 with sum(v) = 1 appended in place of one equation.
  Eigen::MatrixXd m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m(static_cast<long>(j), static_cast<long>(i)) =
          transition[i * n + j] - (i == j ? 1.0 : 0.0);
  for (size_t j = 0; j < n; ++j) m(static_cast<long>(n - 1), static_cast<long>(j)) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(n));
  rhs(static_cast<long>(n - 1)) = 1.0;
  Eigen::VectorXd v = m.colPivHouseholderQr().solve(rhs);

  std::vector<double> out(n);
  double total = 0;
  for (size_t i = 0; i < n; ++i) {
    out[i] = std::max(v(static_cast<long>(i)), 0.0);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

MarkovChain chain_from_measure(const MeasureD& p) {
  if (!is_probability(p))
    throw std::invalid_argument("chain needs a probability measure");
  if (!is_shift_invariant(p, 1e-10))
    throw std::invalid_argument("chain needs a shift-invariant measure");

  MarkovChain chain;
  chain.graph = build_debruijn(p.k - 1, p.alphabet);
  const size_t V = chain.graph.vertices;
  const unsigned A = p.alphabet;

  chain.transition.assign(V * V, 0.0);
  chain.stationary.assign(V, 0.0);
  chain.edge_prob.assign(chain.graph.edges, 0.0);
  chain.edge_probs.assign(V, 0.0);
  chain.support.assign(V, 0);

  for (size_t u = 0; u < V; ++u) {
    double v = 0;
    for (unsigned a = 0; a < A; ++a) v += p.w[chain.graph.edge(u, a)];
    chain.stationary[u] = v;
    chain.support[u] = v > 0 ? 1 : 0;
    for (unsigned a = 0; a < A; ++a) {
      size_t e = chain.graph.edge(u, a);
      // Vertices without mass get uniform placeholder rows; the support is
      // closed (shift invariance zeroes their in-edges), so they stay
      // unvisited and carry no stationary weight.
      chain.edge_prob[e] = v > 0 ? p.w[e] / v : 1.0 / A;
      chain.transition[u * V + chain.graph.target(e)] += chain.edge_prob[e];
    }
    chain.edge_probs[u] = chain.edge_prob[chain.graph.edge(u, 0u)];
  }
  return chain;
}

std::vector<double> mixing_profile(const MarkovChain& chain, unsigned steps) {
  const size_t V = chain.graph.vertices;
  Eigen::MatrixXd p(V, V);
  for (size_t i = 0; i < V; ++i)
    for (size_t j = 0; j < V; ++j)
      p(static_cast<long>(i), static_cast<long>(j)) = chain.transition[i * V + j];
  Eigen::Map<const Eigen::VectorXd> v(chain.stationary.data(),
                                      static_cast<long>(V));
  std::vector<double> profile;
  profile.reserve(steps);
  Eigen::MatrixXd power = p;
  for (unsigned t = 1; t <= steps; ++t) {
    double worst = 0;
    for (size_t i = 0; i < V; ++i)
      worst = std::max(
          worst, 0.5 * (power.row(static_cast<long>(i)).transpose() - v)
                           .template lpNorm<1>());
    profile.push_back(worst);
    if (t < steps) power = power * p;
  }
  return profile;
}

}  // namespace scs
