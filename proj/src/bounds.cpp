#include "scs/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "scs/enumerate.hpp"
#include "scs/words.hpp"

namespace scs {

namespace {

constexpr double kLog2E = 1.4426950408889634074;  // log2(e)
constexpr double kTwoPi = 6.2831853071795864769;

double pow2(int e) { return std::ldexp(1.0, e); }

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Adaptive Simpson quadrature with an absolute tolerance, recursing on the
/// classic |S_left + S_right - S_whole| < 15 tol acceptance test.
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Maximizes a concave function on [a, b] by golden-section search, returning
/// the best value seen including both endpoints.
template <class F>
double golden_max(const F& f, double a, double b, double xtol) {
  const double inv_phi = 0.6180339887498949025;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max({f(a), f(b), f1, f2});
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace

JansonParams janson_params(unsigned k, double n, unsigned dims) {
  if (k < 1) throw std::invalid_argument("janson_params needs k >= 1");
  if (dims < 1) throw std::invalid_argument("janson_params needs dims >= 1");
  if (!(n > 0)) throw std::invalid_argument("janson_params needs n > 0");
  JansonParams out;
  out.lambda = dims * std::pow(n, dims) * pow2(-static_cast<int>(k) - 1);
  out.delta = 2.0 - pow2(1 - static_cast<int>(k));
  if (dims > 1)
    out.delta += (dims - 1) * double(k + 1) * double(k + 1) *
                 pow2(-static_cast<int>(k));
  return out;
}

double janson_tail(double lambda, double delta, uint64_t eta) {
  if (!(lambda > 0)) throw std::invalid_argument("janson_tail needs lambda > 0");
  if (delta < 0) throw std::invalid_argument("janson_tail needs delta >= 0");
  if (static_cast<double>(eta) > lambda)
    throw std::invalid_argument("janson_tail is vacuous for eta > lambda");
  double le = static_cast<double>(eta);
  double logv = 0.5 * std::log(kTwoPi * (le + 1.0)) + le * std::log(lambda) -
                lambda - std::lgamma(le + 1.0);
  return std::exp(logv / (1.0 + delta));
}

double upper_bound_capacity(unsigned k, double p) {
  return upper_bound_capacity_ddim(k, p, 1);
}

double upper_bound_capacity_ddim(unsigned k, double p, unsigned dims) {
  if (k < 1) throw std::invalid_argument("upper bound needs k >= 1");
  if (dims < 1) throw std::invalid_argument("upper bound needs dims >= 1");
  double pmax = dims * pow2(-static_cast<int>(k) - 1);
  if (!(p > 0) || p > pmax)
    throw std::invalid_argument("upper bound needs 0 < p <= dims*2^{-(k+1)}");
  double num = dims * kLog2E * pow2(-static_cast<int>(k) - 1) +
               p * (k + 1) - p * (std::log2(double(dims)) + kLog2E - std::log2(p));
  double den = 3.0 - pow2(1 - static_cast<int>(k));
  if (dims > 1)
    den += pow2(-static_cast<int>(k)) * (dims - 1) * double(k + 1) * double(k + 1);
  return 1.0 - num / den;
}

double z_function(unsigned k, double t) {
  if (k < 1) throw std::invalid_argument("z_function needs k >= 1");
  if (t < 0) throw std::invalid_argument("z_function needs t >= 0");
  // All factors stay in [0, 1]; no large exponentials for any k, t.
  double et = std::exp(-t);
  double ekt = pow2(-static_cast<int>(k)) * std::exp(-double(k) * t);
  double s = 1.0 + ekt - ekt * et;
  double d = et - 2.0;
  return et * s * s / (d * d);
}

double refined_upper_gap(unsigned k, double p) {
  if (k < 1) throw std::invalid_argument("refined_upper_gap needs k >= 1");
  if (p < 0) throw std::invalid_argument("refined_upper_gap needs p >= 0");
  double scale = pow2(-static_cast<int>(k) - 1);
  auto z = [k](double u) { return z_function(k, u); };
  auto gap = [&](double t) {
    return kLog2E * (scale * integrate(z, 0.0, t, 1e-10) - t * p);
  };
  double best = golden_max(gap, 0.0, 20.0, 1e-9);
  return std::max(best, 0.0);
}

double b_lo(double c) {
  if (c < 0 || c > 1) throw std::invalid_argument("b_lo needs c in [0,1]");
  if (c == 0) return kLog2E;
  double s = std::sqrt(1.0 + 8.0 * c);
  return 0.5 * (3.0 - s) * kLog2E -
         2.0 * c * std::log2((1.0 + 4.0 * c + s) / (8.0 * c));
}

double b_up(double c) {
  if (c < 0 || c > 1) throw std::invalid_argument("b_up needs c in [0,1]");
  return (1.0 + c) * (1.0 - binary_entropy(1.0 / (1.0 + c)));
}

AsymptoticConstants asymptotic_constants(double c) {
  return {c, b_lo(c), b_up(c)};
}

double lower_bound_capacity(unsigned k, double p) {
  if (k < 1) throw std::invalid_argument("lower bound needs k >= 1");
  double pmax = pow2(-static_cast<int>(k) - 1);
  if (p < 0 || p > pmax)
    throw std::invalid_argument("lower bound needs 0 <= p <= 2^{-(k+1)}");
  double m = pow2(static_cast<int>(k) + 1);       // 2^{k+1}
  double denom = 1.0 + 2.0 * p * (0.5 * m - 1.0);  // 1 + 2p(2^k - 1)
  double value = 1.0 - (1.0 - p) / (m - 1.0) * std::log2((2.0 - 2.0 * p) / denom);
  if (p > 0) value -= p * std::log2(2.0 * p * (m - 1.0) / denom);
  return value;
}

double lower_bound_capacity_ddim(
    unsigned k, double p, unsigned dims,
    const std::function<double(unsigned, double)>& bound1) {
  if (dims < 1) throw std::invalid_argument("lower bound needs dims >= 1");
  if (!bound1) throw std::invalid_argument("lower bound needs a 1-dim bound");
  double slice = p / dims;
  if (slice < 0 || slice > pow2(-static_cast<int>(k) - 1))
    throw std::invalid_argument("lower bound needs p/dims <= 2^{-(k+1)}");
  return 1.0 + dims * (bound1(k, slice) - 1.0);
}

CyclicEquivalenceReport cyclic_equivalence_check(unsigned k, const Rat& p,
                                                 unsigned n_max) {
  if (k < 1) throw std::invalid_argument("cyclic check needs k >= 1");
  if (n_max >= k + 2 && !enumeration_within_budget(2, n_max + k))
    throw std::invalid_argument("cyclic check exceeds the enumeration budget");
  ConstraintSpec spec = make_spec(2, {{Word(k + 1, 1), p}});
  CyclicEquivalenceReport report;
  for (unsigned n = k + 2; n <= n_max; ++n) {
    CyclicEquivalenceRow row;
    row.n = n;
    row.linear_prev = enumerate_count(spec, n - 1, Mode::strict);
    row.cyclic = enumerate_count(spec, n, Mode::cyclic);
    row.linear_ext = enumerate_count(spec, n + k, Mode::strict);
    row.ok = row.linear_prev <= row.cyclic && row.cyclic <= row.linear_ext;
    report.ok = report.ok && row.ok;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace scs
