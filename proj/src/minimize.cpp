#include "qroute/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qroute/error.hpp"

namespace qroute {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b, double t) {
  // a + t (b - a)
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::size_t max_evals,
                           double initial_step, double tol) {
  if (x0.empty()) throw Error(ErrorCode::InvalidArgument, "nelder_mead needs at least one coordinate");
  if (max_evals == 0) throw Error(ErrorCode::InvalidArgument, "evaluation budget must be positive");
  const std::size_t dim = x0.size();
  std::size_t evals = 0;
  MinimizeResult best{x0, 0.0, 0};
  bool have_best = false;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++evals;
    if (!have_best || v < best.value) {
      best.x = x;
      best.value = v;
      have_best = true;
    }
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < dim && evals < max_evals; ++i) {
    std::vector<double> x = x0;
    x[i] += initial_step;
    simplex.push_back({x, eval(x)});
  }

  while (evals < max_evals && simplex.size() == dim + 1) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double spread = simplex.back().f - simplex.front().f;
    double size = 0.0;
    for (std::size_t v = 1; v <= dim; ++v) {
      for (std::size_t i = 0; i < dim; ++i) size = std::max(size, std::abs(simplex[v].x[i] - simplex[0].x[i]));
    }
    if (spread <= tol && size <= std::sqrt(tol)) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(dim);
    }
    Vertex& worst = simplex.back();
    const std::vector<double> reflected = affine(centroid, worst.x, -1.0);
    const double fr = eval(reflected);
    if (fr < simplex.front().f) {
      if (evals >= max_evals) break;
      const std::vector<double> expanded = affine(centroid, worst.x, -2.0);
      const double fe = eval(expanded);
      worst = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < simplex[dim - 1].f) {
      worst = {reflected, fr};
    } else {
      if (evals >= max_evals) break;
      const bool outside = fr < worst.f;
      const std::vector<double> contracted = affine(centroid, outside ? reflected : worst.x, 0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, worst.f)) {
        worst = {contracted, fc};
      } else {
        for (std::size_t v = 1; v <= dim && evals < max_evals; ++v) {
          simplex[v].x = affine(simplex[0].x, simplex[v].x, 0.5);
          simplex[v].f = eval(simplex[v].x);
        }
      }
    }
  }
  best.evaluations = evals;
  return best;
}

std::vector<double> central_difference(const Objective& f, const std::vector<double>& x, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  std::vector<double> g(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

MinimizeResult gradient_descent(const Objective& f, std::vector<double> x0, std::size_t max_evals,
                                double fd_step, double learning_rate) {
  if (x0.empty()) throw Error(ErrorCode::InvalidArgument, "gradient_descent needs at least one coordinate");
  if (max_evals == 0) throw Error(ErrorCode::InvalidArgument, "evaluation budget must be positive");
  const std::size_t dim = x0.size();
  std::size_t evals = 0;
  MinimizeResult cur{std::move(x0), 0.0, 0};
  cur.value = f(cur.x);
  ++evals;
  double lr = learning_rate;
  while (evals + 2 * dim + 1 <= max_evals) {
    const std::vector<double> g = central_difference(f, cur.x, fd_step);
    evals += 2 * dim;
    const double gnorm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
    if (gnorm < 1e-10) break;
    bool improved = false;
    while (evals < max_evals) {
      std::vector<double> trial = cur.x;
      for (std::size_t i = 0; i < dim; ++i) trial[i] -= lr * g[i];
      const double ft = f(trial);
      ++evals;
      if (ft < cur.value) {
        cur.x = std::move(trial);
        cur.value = ft;
        lr *= 1.2;
        improved = true;
        break;
      }
      lr *= 0.5;
      if (lr < 1e-14) break;
    }
    if (!improved) break;
  }
  cur.evaluations = evals;
  return cur;
}

}  // namespace qroute
