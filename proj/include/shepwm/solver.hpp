#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shepwm/angles.hpp"
#include "shepwm/linsolve.hpp"

namespace shepwm {

/// One selective-harmonic-elimination problem instance: find p quarter-wave
/// switching angles so the fundamental hits M*V and the listed odd harmonics
/// vanish.
struct she_problem {
  std::size_t angle_count = 0;        // p
  double modulation_index = 0.0;      // M = h1 / V
  std::vector<int> eliminated;        // p-1 distinct odd ranks >= 3, in row order
  double dc_voltage = 1.0;            // V

  // The configurations used throughout: eliminate the first p-1 odd ranks
  // {3, 5, ..., 2p-1}.
  static she_problem with_default_harmonics(std::size_t p, double m, double v = 1.0) {
    she_problem problem;
    problem.angle_count = p;
    problem.modulation_index = m;
    problem.dc_voltage = v;
    for (std::size_t i = 0; i + 1 < p; ++i) problem.eliminated.push_back(3 + 2 * int(i));
    problem.validate();
    return problem;
  }

  void validate() const {
    if (angle_count < 1) throw std::invalid_argument("she_problem: p must be >= 1");
    if (!(modulation_index >= 0.0))
      throw std::invalid_argument("she_problem: M must be >= 0");
    if (eliminated.size() != angle_count - 1)
      throw std::invalid_argument("she_problem: need exactly p-1 eliminated ranks");
    for (std::size_t i = 0; i < eliminated.size(); ++i) {
      const int n = eliminated[i];
      if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("she_problem: eliminated ranks must be odd and >= 3");
      for (std::size_t j = i + 1; j < eliminated.size(); ++j)
        if (eliminated[j] == n)
          throw std::invalid_argument("she_problem: eliminated ranks must be distinct");
    }
  }

  // Row ranks of the nonlinear system: n_1 = 1, then the eliminated ranks.
  std::vector<int> harmonic_ranks() const {
    std::vector<int> ranks;
    ranks.reserve(angle_count);
    ranks.push_back(1);
    ranks.insert(ranks.end(), eliminated.begin(), eliminated.end());
    return ranks;
  }
};

struct solver_config {
  double tolerance = 1e-15;           // max-norm bound on the Newton step, radians
  std::size_t max_iterations = 100;
  std::optional<std::vector<double>> initial_guess;  // radians
};

/// Thrown when the Jacobian loses rank at an iterate; carries the iterate so
/// callers can report where the solve broke down.
struct singular_jacobian_error : std::runtime_error {
  explicit singular_jacobian_error(std::vector<double> theta)
      : std::runtime_error("singular Jacobian in Newton step"), iterate(std::move(theta)) {}
  std::vector<double> iterate;
};

/// F(theta): row i is sum_j (-1)^(j+1) cos(n_i theta_j) with n_1 = 1 followed
/// by the eliminated ranks. theta is a raw candidate; ordering is not required
/// here (intermediate Newton iterates may violate it).
inline std::vector<double> residual(std::span<const double> theta, const she_problem& problem) {
  if (theta.size() != problem.angle_count)
    throw std::invalid_argument("residual: theta dimension does not match problem");
  const std::vector<int> ranks = problem.harmonic_ranks();
  std::vector<double> rows(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    double acc = 0.0;
    double sign = 1.0;
    for (double angle : theta) {
      acc += sign * std::cos(ranks[i] * angle);
      sign = -sign;
    }
    rows[i] = acc;
  }
  return rows;
}

/// T = (M pi / 4, 0, ..., 0).
inline std::vector<double> target_vector(const she_problem& problem) {
  std::vector<double> t(problem.angle_count, 0.0);
  t[0] = problem.modulation_index * pi / 4.0;
  return t;
}

struct she_jacobian {
  std::size_t dim = 0;
  std::vector<double> entries;  // row-major, dim x dim

  double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

/// dF/dtheta: entry (i, j) = (-1)^(j+1) * (-n_i sin(n_i theta_j)), so column
/// signs run -sin, +sin, -sin, ...
inline she_jacobian jacobian(std::span<const double> theta, const she_problem& problem) {
  if (theta.size() != problem.angle_count)
    throw std::invalid_argument("jacobian: theta dimension does not match problem");
  const std::vector<int> ranks = problem.harmonic_ranks();
  const std::size_t p = problem.angle_count;
  she_jacobian jac;
  jac.dim = p;
  jac.entries.resize(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    const double n = ranks[i];
    double column_sign = -1.0;  // (-1)^(j+1) * (-1) for j = 1
    for (std::size_t j = 0; j < p; ++j) {
      jac.entries[i * p + j] = column_sign * n * std::sin(n * theta[j]);
      column_sign = -column_sign;
    }
  }
  return jac;
}

/// One Newton correction: solves J(theta) dtheta = T - F(theta) by elimination
/// with partial pivoting. Throws singular_jacobian_error when a pivot falls
/// below 1e-12.
inline std::vector<double> newton_step(std::span<const double> theta,
                                       const she_problem& problem) {
  const std::vector<double> f = residual(theta, problem);
  const std::vector<double> t = target_vector(problem);
  std::vector<double> rhs(theta.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = t[i] - f[i];
  she_jacobian jac = jacobian(theta, problem);
  auto solution = solve_linear_system(std::move(jac.entries), std::move(rhs), theta.size());
  if (!solution)
    throw singular_jacobian_error(std::vector<double>(theta.begin(), theta.end()));
  return *solution;
}

struct solve_result {
  std::vector<double> angles_rad;      // final iterate, valid only if ordering_valid
  std::size_t iterations = 0;
  double final_step_norm = std::numeric_limits<double>::infinity();
  double residual_norm = std::numeric_limits<double>::infinity();  // max |T - F| at the end
  bool converged = false;
  bool ordering_valid = false;
  std::vector<double> step_norms;      // max-norm of dtheta per iteration

  switching_angle_set validated() const {
    if (!converged || !ordering_valid)
      throw std::logic_error("solve_result: no valid converged angle set");
    return switching_angle_set(angles_rad);
  }
};

/// Even spacing theta_i = i * 90 / (p+1) degrees, except the p = 3 preset
/// (35, 55, 80) degrees which is the starting point used throughout for the
/// third-and-fifth elimination case.
inline std::vector<double> default_initial_guess(std::size_t p) {
  if (p < 1) throw std::invalid_argument("default_initial_guess: p must be >= 1");
  if (p == 3) return {deg_to_rad(35.0), deg_to_rad(55.0), deg_to_rad(80.0)};
  std::vector<double> guess(p);
  for (std::size_t i = 0; i < p; ++i) guess[i] = deg_to_rad((i + 1) * 90.0 / double(p + 1));
  return guess;
}

/// Full Newton-Raphson iteration theta <- theta + dtheta until
/// max_i |dtheta_i| < tolerance or max_iterations is reached. The convergence
/// test runs after the update is applied. No clamping or projection: the
/// range/ordering constraint is assessed only on the final iterate and
/// reported in ordering_valid.
inline solve_result newton_solve(const she_problem& problem, const solver_config& config = {}) {
  problem.validate();
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("newton_solve: tolerance must be > 0");
  if (config.max_iterations < 1)
    throw std::invalid_argument("newton_solve: max_iterations must be >= 1");

  std::vector<double> theta =
      config.initial_guess ? *config.initial_guess : default_initial_guess(problem.angle_count);
  if (theta.size() != problem.angle_count)
    throw std::invalid_argument("newton_solve: initial guess dimension does not match p");

  solve_result result;
  for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
    const std::vector<double> step = newton_step(theta, problem);
    double step_norm = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta[i] += step[i];
      step_norm = std::max(step_norm, std::fabs(step[i]));
    }
    result.iterations = iter;
    result.step_norms.push_back(step_norm);
    result.final_step_norm = step_norm;
    if (step_norm < config.tolerance) {
      result.converged = true;
      break;
    }
  }

  result.angles_rad = theta;
  result.ordering_valid = ordering_valid(theta);
  const std::vector<double> f = residual(theta, problem);
  const std::vector<double> t = target_vector(problem);
  double res_norm = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) res_norm = std::max(res_norm, std::fabs(t[i] - f[i]));
  result.residual_norm = res_norm;
  return result;
}

enum class sweep_strategy {
  paper,  // fresh default guess at every grid point
  warm,   // previous converged solution seeds the next point
};

inline const char* to_string(sweep_strategy strategy) {
  return strategy == sweep_strategy::paper ? "paper" : "warm";
}

struct sweep_point {
  double modulation_index = 0.0;
  solve_result result;
};

struct sweep_result {
  std::vector<sweep_point> grid;
};

/// Solves at every M in {0, step, 2 step, ..., M_max}. Per-point failures
/// (non-convergence, bad ordering, singular Jacobian) are recorded in the
/// grid, never fatal.
inline sweep_result sweep(std::size_t p, double m_max, double step,
                          std::vector<int> eliminated, const solver_config& config = {},
                          sweep_strategy strategy = sweep_strategy::paper) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  if (!(m_max >= 0.0)) throw std::invalid_argument("sweep: M_max must be >= 0");
  she_problem problem;
  problem.angle_count = p;
  problem.eliminated = std::move(eliminated);
  problem.modulation_index = 0.0;
  problem.validate();

  const std::size_t points =
      step > m_max ? 1 : std::size_t(std::floor(m_max / step + 1e-9)) + 1;

  sweep_result out;
  out.grid.reserve(points);
  std::optional<std::vector<double>> warm_guess;
  for (std::size_t i = 0; i < points; ++i) {
    problem.modulation_index = double(i) * step;
    solver_config point_config = config;
    if (strategy == sweep_strategy::warm && warm_guess)
      point_config.initial_guess = warm_guess;
    sweep_point point;
    point.modulation_index = problem.modulation_index;
    try {
      point.result = newton_solve(problem, point_config);
    } catch (const singular_jacobian_error&) {
      point.result = solve_result{};  // unconverged marker
    }
    if (strategy == sweep_strategy::warm && point.result.converged &&
        point.result.ordering_valid)
      warm_guess = point.result.angles_rad;
    out.grid.push_back(std::move(point));
  }
  return out;
}

}  // namespace shepwm
