#include "scs/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scs/enumerate.hpp"
#include "scs/linprog.hpp"

namespace scs {

namespace {
constexpr double kCoordFloor = 1e-18;
constexpr uint64_t kIterationCap = 1'000'000;
}  // namespace

InfeasibleSpec::InfeasibleSpec(double v)
    : std::runtime_error("no shift-invariant measure satisfies the caps (violation " +
                         std::to_string(v) + ")"),
      violation(v) {}

bool check_redundant(const ConstraintSpec& spec) {
  spec.validate();
  for (const auto& f : spec.forbidden) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), spec.alphabet, f.word.size());
    if (f.cap < Rat(1) / Rat(den)) return false;
  }
  return true;
}

Rat feasibility_gap(const ConstraintSpec& spec) {
  spec.validate();
  if (spec.forbidden.empty()) return Rat(0);
  auto M = build_constraint_matrix(spec);
  size_t N = pow_size(spec.alphabet, M.k);
  size_t tail = N / spec.alphabet;
  size_t m = M.words.size();
  size_t ncols = N + 1 + m;  // measure coords, uniform slack t, row slacks

  LinearProgram lp;
  for (size_t j = 0; j < m; ++j) {
    std::vector<Rat> r(ncols);
    for (size_t col = M.spans[j].first; col < M.spans[j].second; ++col) r[col] = 1;
    r[N] = -1;
    r[N + 1 + j] = 1;
    lp.rows.push_back(std::move(r));
    lp.rhs.push_back(spec.forbidden[j].cap);
  }
  if (M.k > 1) {
    for (size_t j = 0; j < tail; ++j) {
      std::vector<Rat> r(ncols);
      for (unsigned a = 0; a < spec.alphabet; ++a) r[j * spec.alphabet + a] += 1;
      for (size_t b = 0; b < spec.alphabet; ++b) r[b * tail + j] -= 1;
      lp.rows.push_back(std::move(r));
      lp.rhs.push_back(Rat(0));
    }
  }
  {
    std::vector<Rat> r(ncols);
    for (size_t col = 0; col < N; ++col) r[col] = 1;
    lp.rows.push_back(std::move(r));
    lp.rhs.push_back(Rat(1));
  }
  lp.cost.assign(ncols, Rat(0));
  lp.cost[N] = 1;

  auto res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw std::logic_error("slack program must be solvable");
  return res.objective;
}

bool feasible(const ConstraintSpec& spec) { return feasibility_gap(spec) == 0; }

namespace {

// Convex program over the surviving coordinates (caps of exactly zero pin
// their whole column span to zero up front, keeping all logs finite).
struct Program {
  unsigned alphabet = 2;
  unsigned k = 1;
  size_t N = 0, tail = 0;
  std::vector<size_t> sv;                  // compact -> full tuple index
  std::vector<size_t> pref;                // compact -> prefix block index
  std::vector<std::vector<size_t>> spans;  // inequality rows, compact indices
  std::vector<double> caps;
  Eigen::MatrixXd eq;  // affine rows: shift invariance + total mass
  Eigen::VectorXd eq_rhs;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
};

Program build_program(const ConstraintSpec& spec) {
  auto M = build_constraint_matrix(spec);
  Program p;
  p.alphabet = spec.alphabet;
  p.k = M.k;
  p.N = pow_size(spec.alphabet, M.k);
  p.tail = p.N / spec.alphabet;

  std::vector<char> forced(p.N, 0);
  for (size_t j = 0; j < M.words.size(); ++j)
    if (spec.forbidden[j].cap == 0)
      for (size_t col = M.spans[j].first; col < M.spans[j].second; ++col) forced[col] = 1;

  std::vector<long> compact(p.N, -1);
  for (size_t i = 0; i < p.N; ++i)
    if (!forced[i]) {
      compact[i] = static_cast<long>(p.sv.size());
      p.sv.push_back(i);
      p.pref.push_back(i / spec.alphabet);
    }
  size_t ns = p.sv.size();

  for (size_t j = 0; j < M.words.size(); ++j) {
    if (spec.forbidden[j].cap == 0) continue;
    std::vector<size_t> row;
    for (size_t col = M.spans[j].first; col < M.spans[j].second; ++col)
      if (compact[col] >= 0) row.push_back(static_cast<size_t>(compact[col]));
    if (row.empty()) continue;  // span fully pinned: trivially satisfied
    p.spans.push_back(std::move(row));
    p.caps.push_back(rat_double(spec.forbidden[j].cap));
  }

  std::vector<Eigen::VectorXd> rows;
  if (p.k > 1) {
    for (size_t j = 0; j < p.tail; ++j) {
      Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<long>(ns));
      for (unsigned a = 0; a < spec.alphabet; ++a) {
        long c = compact[j * spec.alphabet + a];
        if (c >= 0) r[c] += 1;
      }
      for (size_t b = 0; b < spec.alphabet; ++b) {
        long c = compact[b * p.tail + j];
        if (c >= 0) r[c] -= 1;
      }
      if (r.lpNorm<Eigen::Infinity>() > 0) rows.push_back(std::move(r));
    }
  }
  rows.push_back(Eigen::VectorXd::Ones(static_cast<long>(ns)));

  p.eq.resize(static_cast<long>(rows.size()), static_cast<long>(ns));
  p.eq_rhs = Eigen::VectorXd::Zero(static_cast<long>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) p.eq.row(static_cast<long>(i)) = rows[i];
  p.eq_rhs[static_cast<long>(rows.size()) - 1] = 1.0;
  p.cod.compute(p.eq);
  return p;
}

void project_affine(const Program& p, Eigen::VectorXd& x) {
  x -= p.cod.solve(p.eq * x - p.eq_rhs);
}

// Affine projection with a clamp-and-retry loop so iterates stay strictly
// positive (the objective's logs need an interior point).
void project_feasible(const Program& p, Eigen::VectorXd& x) {
  for (int pass = 0; pass < 50; ++pass) {
    project_affine(p, x);
    if (x.minCoeff() >= kCoordFloor) return;
    x = x.cwiseMax(kCoordFloor);
    x /= x.sum();
  }
  project_affine(p, x);
  x = x.cwiseMax(kCoordFloor);
}

Eigen::VectorXd tangent(const Program& p, const Eigen::VectorXd& v) {
  return v - p.cod.solve(p.eq * v);
}

// Rate of the embedded measure plus its gradient over compact coordinates
// (uniform reference symbol distribution). Accumulated in long double: the
// backtracking line search must resolve decreases well below double ulp to
// reach the stationarity targets.
long double objective(const Program& p, const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
  std::vector<long double> prefsum(p.tail, 0.0L);
  for (long i = 0; i < x.size(); ++i) prefsum[p.pref[static_cast<size_t>(i)]] += x[i];
  long double value = 0;
  if (grad) grad->resize(x.size());
  for (long i = 0; i < x.size(); ++i) {
    long double den = prefsum[p.pref[static_cast<size_t>(i)]] / p.alphabet;
    long double lg = std::log2(static_cast<long double>(x[i]) / den);
    value += x[i] * lg;
    if (grad) (*grad)[i] = static_cast<double>(lg);
  }
  return value;
}

std::vector<double> cap_slacks(const Program& p, const Eigen::VectorXd& x) {
  std::vector<double> c(p.spans.size());
  for (size_t j = 0; j < p.spans.size(); ++j) {
    double s = -p.caps[j];
    for (size_t i : p.spans[j]) s += x[static_cast<long>(i)];
    c[j] = s;
  }
  return c;
}

// Augmented Lagrangian for the cap inequalities.
long double lagrangian(const Program& p, const Eigen::VectorXd& x, const std::vector<double>& lam,
                       double rho, Eigen::VectorXd* grad) {
  long double L = objective(p, x, grad);
  auto c = cap_slacks(p, x);
  for (size_t j = 0; j < p.spans.size(); ++j) {
    long double w = std::max(0.0, lam[j] + rho * c[j]);
    L += (w * w - static_cast<long double>(lam[j]) * lam[j]) / (2 * rho);
    if (grad && w > 0)
      for (size_t i : p.spans[j]) (*grad)[static_cast<long>(i)] += static_cast<double>(w);
  }
  return L;
}

// Multiplicative (entropy-geometry) step followed by projection back onto the
// shift-invariance affine subspace.
Eigen::VectorXd eg_step(const Program& p, const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                        double eta) {
  Eigen::VectorXd e = -eta * g;
  double shift = e.maxCoeff();
  Eigen::VectorXd y = x.array() * (e.array() - shift).exp();
  y /= y.sum();
  project_feasible(p, y);
  return y;
}

// Backtracking mirror descent on the augmented Lagrangian until the tangent
// gradient norm drops below inner_tol (or no descent step exists). The
// exponent uses the tangent-projected gradient: the raw gradient's normal
// component would be undone by the affine projection anyway, and projecting
// first keeps every accepted step a descent direction.
struct InnerResult {
  double stat = 0;
  bool stalled = false;  // no strict-decrease step exists at this precision
};

InnerResult minimize_inner(const Program& p, Eigen::VectorXd& x, const std::vector<double>& lam,
                           double rho, double inner_tol, uint64_t budget, uint64_t& used) {
  Eigen::VectorXd g;
  long double L = lagrangian(p, x, lam, rho, &g);
  double eta = 1.0;
  double stat = std::numeric_limits<double>::infinity();
  while (used < budget) {
    Eigen::VectorXd h = tangent(p, g);
    stat = h.lpNorm<Eigen::Infinity>();
    if (stat <= inner_tol) break;
    ++used;
    eta = std::min(eta * 4, 1.0);
    bool moved = false;
    while (eta >= 1e-18) {
      Eigen::VectorXd y = eg_step(p, x, h, eta);
      long double Ly = lagrangian(p, y, lam, rho, nullptr);
      double dd = (y - x).squaredNorm();
      // Strict decrease: a zero-size or rounding-level step must be rejected,
      // not accepted as progress.
      if (Ly < L && Ly <= L - static_cast<long double>(1e-4) * dd / eta) {
        x = std::move(y);
        L = lagrangian(p, x, lam, rho, &g);
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) return {stat, true};
  }
  return {stat, false};
}

}  // namespace

CapacityResult solve_capacity(const ConstraintSpec& spec, double tol, double kkt_tol) {
  spec.validate();
  double log2A = std::log2(static_cast<double>(spec.alphabet));

  CapacityResult out;
  if (check_redundant(spec)) {
    out.capacity = log2A;
    out.optimizer = uniform_measure(spec.alphabet, spec.forbidden.empty() ? 1 : spec.max_len());
    out.feasible = true;
    return out;
  }

  Rat gap = feasibility_gap(spec);
  if (gap != 0) throw InfeasibleSpec(rat_double(gap));

  Program p = build_program(spec);
  size_t ns = p.sv.size();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<long>(ns), 1.0 / ns);
  project_feasible(p, x);

  std::vector<double> lam(p.spans.size(), 0.0);
  double rho = 10.0;
  double viol_prev = std::numeric_limits<double>::infinity();
  uint64_t used = 0;
  double kkt = std::numeric_limits<double>::infinity();
  double value = 0.0;
  // Caps must hold to well under the reported KKT residual so the returned
  // optimizer is feasible, not merely first-order stationary.
  const double primal_tol = std::min(kkt_tol, 5e-10);
  int stagnant = 0;
  double best_kkt = std::numeric_limits<double>::infinity();
  double primal_last = std::numeric_limits<double>::infinity();

  for (int round = 0; round < 60; ++round) {
    double inner_tol = std::clamp(1e-2 * std::pow(0.25, round), 1e-12, 1e-2);
    auto inner = minimize_inner(p, x, lam, rho, inner_tol, kIterationCap, used);

    Eigen::VectorXd g;
    value = static_cast<double>(objective(p, x, &g));
    auto c = cap_slacks(p, x);
    double primal = 0, comp = 0;
    for (size_t j = 0; j < lam.size(); ++j) {
      double w = std::max(0.0, lam[j] + rho * c[j]);
      comp = std::max(comp, std::abs(w * c[j]));
      primal = std::max(primal, c[j]);
      if (w > 0)
        for (size_t i : p.spans[j]) g[static_cast<long>(i)] += w;
      lam[j] = w;
    }
    primal = std::max(primal, 0.0);
    double stat = tangent(p, g).lpNorm<Eigen::Infinity>();
    kkt = std::max({stat, primal, comp});
    primal_last = primal;
    if (kkt <= kkt_tol && primal <= primal_tol) break;
    // A stalled inner pass only counts as stagnation when the multiplier
    // updates have also stopped improving the residual; otherwise the next
    // pass optimizes a different Lagrangian and may move again.
    stagnant = (inner.stalled && kkt >= best_kkt) ? stagnant + 1 : 0;
    best_kkt = std::min(best_kkt, kkt);
    if (stagnant >= 3) break;  // the solve is at its numeric floor
    if (round > 0 && primal > primal_tol && primal > 0.25 * viol_prev)
      rho = std::min(rho * 2, 1e12);
    viol_prev = primal;
    if (used >= kIterationCap)
      throw std::runtime_error("capacity solve exceeded the iteration budget");
  }
  if (kkt > kkt_tol) throw std::runtime_error("capacity solve did not reach the KKT tolerance");
  if (primal_last > 2 * primal_tol)
    throw std::runtime_error("capacity solve did not reach the feasibility tolerance");

  out.capacity = std::clamp(log2A - value, 0.0, log2A);
  out.optimizer.alphabet = spec.alphabet;
  out.optimizer.k = p.k;
  out.optimizer.w.assign(p.N, 0.0);
  for (size_t i = 0; i < ns; ++i) out.optimizer.w[p.sv[i]] = x[static_cast<long>(i)];
  out.kkt_residual = kkt;
  out.feasible = true;
  out.iterations = used;
  return out;
}

GrowthTable capacity_vs_enumeration(const ConstraintSpec& spec, unsigned n_max, Mode mode) {
  GrowthTable t;
  t.capacity = solve_capacity(spec).capacity;
  for (unsigned n = std::max(1u, spec.max_len()); n <= n_max; ++n) {
    uint64_t cnt = enumerate_count(spec, n, mode);
    double rate =
        cnt ? std::log2(static_cast<double>(cnt)) / n : -std::numeric_limits<double>::infinity();
    t.rows.push_back({n, cnt, rate});
  }
  return t;
}

}  // namespace scs
