#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qroute {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Downhill simplex. Stops after `max_evals` objective calls or when the
/// simplex has collapsed (value spread and vertex spread both below tol).
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::size_t max_evals,
                           double initial_step = 0.5, double tol = 1e-12);

/// Gradient descent with a central-difference gradient and backtracking step.
MinimizeResult gradient_descent(const Objective& f, std::vector<double> x0, std::size_t max_evals,
                                double fd_step = 1e-6, double learning_rate = 0.1);

/// Central differences, one pair of evaluations per coordinate.
std::vector<double> central_difference(const Objective& f, const std::vector<double>& x, double step);

}  // namespace qroute
