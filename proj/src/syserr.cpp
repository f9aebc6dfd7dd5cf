#include "ncwit/syserr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ncwit/specfun.hpp"

namespace ncwit {

namespace {

constexpr double kMinSeparation = 1e-8;
constexpr double kTailMass = 1e-12;

double poisson_pmf(int n, double mean) { return std::exp(specfun::poisson_log_pmf(n, mean)); }

// Poisson mass above n_max at the given mean, summed from n_max + 1 upwards.
double poisson_upper_tail(int n_max, double mean) {
  if (mean == 0.0) return 0.0;
  double sum = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term = poisson_pmf(n, mean);
    sum += term;
    if (n > mean && term < 1e-18 * std::max(sum, 1e-300)) break;
    if (n > mean && term == 0.0) break;
  }
  return sum;
}

// Largest b with G(b) >= p_r, searched on [0, b_max]; b_max if G(b_max) >= p_r.
double feasibility_boundary(int n_res, double p_r, double b_max) {
  if (resolved_prob_G(b_max, n_res) >= p_r) return b_max;
  double lo = 0.0;
  double hi = b_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (resolved_prob_G(mid, n_res) >= p_r ? lo : hi) = mid;
  }
  return lo;
}

struct Evaluator {
  const WitnessKernel& kernel;
  int n_res;

  double tail(double b) const { return tail_deviation(b, kernel, n_res).value; }
  double g(double b) const { return resolved_prob_G(b, n_res); }
};

// Golden-section maximisation of f on [lo, hi]; endpoints are included.
template <class F>
std::pair<double, double> maximize_on_interval(F&& f, double lo, double hi, double tol) {
  double best_x = lo;
  double best_f = f(lo);
  const double f_hi = f(hi);
  if (f_hi > best_f) {
    best_x = hi;
    best_f = f_hi;
  }
  if (hi - lo <= tol) return {best_x, best_f};

  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double f_mid = f(mid);
  if (f_mid > best_f) return {mid, f_mid};
  return {best_x, best_f};
}

}  // namespace

const char* to_string(SystematicBound::Branch branch) {
  return branch == SystematicBound::Branch::OnePoint ? "one-point" : "two-point";
}

double resolved_prob_G(double b, int n_res) {
  if (b < 0.0) throw std::invalid_argument("resolved_prob_G: b must be >= 0");
  if (n_res < 0) throw std::invalid_argument("resolved_prob_G: n_res must be >= 0");
  const double mean = b * b;
  if (mean == 0.0) return 1.0;
  // Sum from the largest index down so the small terms are added first.
  double sum = 0.0;
  for (int n = n_res; n >= 0; --n) sum += poisson_pmf(n, mean);
  return std::min(1.0, sum);
}

int required_kernel_size(double b, double mass) {
  const double mean = b * b;
  if (mean == 0.0) return 0;
  // Walk upwards from the mode until the remaining mass falls below `mass`.
  int n = static_cast<int>(std::floor(mean));
  while (poisson_upper_tail(n, mean) >= mass) n += std::max(1, static_cast<int>(std::sqrt(mean)) / 4);
  while (n > 0 && poisson_upper_tail(n - 1, mean) < mass) --n;
  return n;
}

TailDeviation tail_deviation(double b, const WitnessKernel& kernel, int n_res) {
  if (b < 0.0) throw std::invalid_argument("tail_deviation: b must be >= 0");
  if (n_res < 0) throw std::invalid_argument("tail_deviation: n_res must be >= 0");
  const double mean = b * b;
  if (mean == 0.0) return {0.0, 0.0};

  const int n_max = kernel.n_max();
  const double beyond = poisson_upper_tail(n_max, mean);
  if (beyond >= kTailMass) {
    const int needed = required_kernel_size(b, kTailMass);
    throw KernelTooShortError("tail_deviation: kernel n_max " + std::to_string(n_max) +
                                  " too short for b=" + std::to_string(b) + "; need n_max >= " +
                                  std::to_string(needed),
                              needed);
  }

  double sum = 0.0;
  double compensation = 0.0;
  double largest = 0.0;
  for (int n = n_res + 1; n <= n_max; ++n) {
    const double term = poisson_pmf(n, mean) * kernel[n];
    // Kahan-Babuska summation
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    largest = std::max(largest, std::abs(kernel[n]));
  }
  return {sum + compensation, beyond * largest};
}

double two_point_objective(double tail1, double g1, double tail2, double g2, double p_r) {
  const double denom = g1 - g2;
  return ((p_r - g2) * tail1 + (g1 - p_r) * tail2) / denom;
}

SystematicBound systematic_error(const WitnessKernel& kernel, int n_res, double p_r,
                                 const SyserrOptions& options) {
  if (!(p_r > 0.0 && p_r < 1.0)) throw std::invalid_argument("systematic_error: p_r must lie in (0, 1)");
  if (!(options.b_max > 0.0) || !(options.grid_step > 0.0) || !(options.tolerance > 0.0)) {
    throw std::invalid_argument("systematic_error: b_max, grid_step and tolerance must be positive");
  }
  const Evaluator eval{kernel, n_res};

  const int points = static_cast<int>(std::ceil(options.b_max / options.grid_step - 1e-9));
  std::vector<double> bs(static_cast<std::size_t>(points) + 1);
  std::vector<double> gs(bs.size());
  std::vector<double> ts(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) {
    bs[i] = std::min(options.b_max, static_cast<double>(i) * options.grid_step);
    gs[i] = eval.g(bs[i]);
    ts[i] = eval.tail(bs[i]);
  }
  const double b_star = feasibility_boundary(n_res, p_r, options.b_max);

  std::vector<std::size_t> feasible;
  std::vector<std::size_t> infeasible;
  for (std::size_t i = 0; i < bs.size(); ++i) (gs[i] >= p_r ? feasible : infeasible).push_back(i);

  // One-point branch
  std::size_t best1 = 0;
  for (auto i : feasible) {
    if (ts[i] > ts[best1]) best1 = i;
  }
  const double lo1 = best1 > 0 ? bs[best1 - 1] : 0.0;
  const double hi1 = std::min(b_star, best1 + 1 < bs.size() ? bs[best1 + 1] : options.b_max);
  auto [b1_one, value_one] =
      maximize_on_interval([&](double b) { return eval.tail(b); }, lo1, std::max(lo1, hi1),
                           options.tolerance * 0.1);
  if (ts[best1] > value_one) {
    b1_one = bs[best1];
    value_one = ts[best1];
  }

  // Two-point branch, grid search then compass refinement.
  double value_two = -std::numeric_limits<double>::infinity();
  double b1_two = 0.0;
  double b2_two = 0.0;
  for (auto i : feasible) {
    for (auto j : infeasible) {
      if (std::abs(bs[i] - bs[j]) < kMinSeparation) continue;
      const double v = two_point_objective(ts[i], gs[i], ts[j], gs[j], p_r);
      if (v > value_two) {
        value_two = v;
        b1_two = bs[i];
        b2_two = bs[j];
      }
    }
  }
  if (std::isfinite(value_two)) {
    double t1 = eval.tail(b1_two);
    double g1 = eval.g(b1_two);
    double t2 = eval.tail(b2_two);
    double g2 = eval.g(b2_two);
    for (double h = options.grid_step; h >= options.tolerance * 0.1; h *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (int dir = 0; dir < 4; ++dir) {
          double c1 = b1_two;
          double c2 = b2_two;
          if (dir == 0) c1 = std::min(b_star, b1_two + h);
          if (dir == 1) c1 = std::max(0.0, b1_two - h);
          if (dir == 2) c2 = std::min(options.b_max, b2_two + h);
          if (dir == 3) c2 = std::max(b_star, b2_two - h);
          if (c1 == b1_two && c2 == b2_two) continue;
          if (std::abs(c1 - c2) < kMinSeparation) continue;
          const double cg1 = c1 == b1_two ? g1 : eval.g(c1);
          const double cg2 = c2 == b2_two ? g2 : eval.g(c2);
          if (cg1 < p_r || cg2 >= p_r) continue;
          const double ct1 = c1 == b1_two ? t1 : eval.tail(c1);
          const double ct2 = c2 == b2_two ? t2 : eval.tail(c2);
          const double v = two_point_objective(ct1, cg1, ct2, cg2, p_r);
          if (v > value_two) {
            value_two = v;
            b1_two = c1;
            b2_two = c2;
            t1 = ct1;
            g1 = cg1;
            t2 = ct2;
            g2 = cg2;
            improved = true;
          }
        }
      }
    }
  }

  SystematicBound bound;
  bound.p_r = p_r;
  bound.n_res = n_res;
  bound.prefactor = options.prefactor;
  if (value_two > value_one) {
    bound.branch = SystematicBound::Branch::TwoPoint;
    bound.value = value_two;
    bound.b1 = b1_two;
    bound.b2 = b2_two;
  } else {
    bound.branch = SystematicBound::Branch::OnePoint;
    bound.value = value_one;
    bound.b1 = b1_one;
  }
  bound.value *= options.prefactor;
  bound.non_binding = bound.value <= 0.0;
  return bound;
}

double lp_oracle(const WitnessKernel& kernel, int n_res, double p_r, int grid_points, double b_max) {
  if (grid_points < 1) throw std::invalid_argument("lp_oracle: grid_points must be >= 1");
  if (!(b_max > 0.0)) throw std::invalid_argument("lp_oracle: b_max must be > 0");
  if (!(p_r >= 0.0 && p_r < 1.0)) throw std::invalid_argument("lp_oracle: p_r must lie in [0, 1)");

  const auto size = static_cast<std::size_t>(grid_points) + 1;
  const double step = b_max / grid_points;
  std::vector<double> g(size);
  std::vector<double> t(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double b = static_cast<double>(k) * step;
    g[k] = resolved_prob_G(b, n_res);
    t[k] = tail_deviation(b, kernel, n_res).value;
  }

  double best = -std::numeric_limits<double>::infinity();
  // Basis {r_k, y}: r_k = 1, y = g_k - p_r.
  for (std::size_t k = 0; k < size; ++k) {
    if (g[k] - p_r >= 0.0) best = std::max(best, t[k]);
  }
  // Basis {r_k, r_l}, y = 0: solve the 2x2 system and keep nonnegative solutions.
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t l = k + 1; l < size; ++l) {
      const double det = g[k] - g[l];
      if (det == 0.0) continue;
      const double rk = (p_r - g[l]) / det;
      const double rl = (g[k] - p_r) / det;
      if (rk < 0.0 || rl < 0.0) continue;
      best = std::max(best, rk * t[k] + rl * t[l]);
    }
  }
  return best;
}

}  // namespace ncwit
