#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

namespace catbell {

template <typename Scalar, int Dim>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Dim, 1> x;
  Scalar value;
  int iterations = 0;
  bool converged = false;
};

template <typename Scalar>
struct NelderMeadOptions {
  Scalar initial_step = Scalar(0.3);
  Scalar f_tol = Scalar(1e-9);   // spread of simplex values
  Scalar x_tol = Scalar(1e-7);   // simplex diameter
  int max_iterations = 4000;
};

/// Box-constrained Nelder-Mead minimization of f; trial points are projected
/// into [lower, upper] componentwise.
template <typename Scalar, int Dim, typename F>
NelderMeadResult<Scalar, Dim> nelder_mead(F&& f, Eigen::Matrix<Scalar, Dim, 1> x0,
                                          const Eigen::Matrix<Scalar, Dim, 1>& lower,
                                          const Eigen::Matrix<Scalar, Dim, 1>& upper,
                                          const NelderMeadOptions<Scalar>& opt = {}) {
  using Vec = Eigen::Matrix<Scalar, Dim, 1>;
  const auto n = x0.size();
  auto project = [&](Vec v) -> Vec { return v.cwiseMax(lower).cwiseMin(upper); };

  std::vector<Vec> pts;
  std::vector<Scalar> vals;
  pts.push_back(project(x0));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec v = pts.front();
    v(i) += (v(i) + opt.initial_step <= upper(i)) ? opt.initial_step : -opt.initial_step;
    pts.push_back(project(v));
  }
  for (const auto& p : pts) vals.push_back(f(p));

  std::vector<std::size_t> order(pts.size());
  NelderMeadResult<Scalar, Dim> res;
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    Scalar diameter = 0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= opt.f_tol && diameter <= opt.x_tol) {
      res.converged = true;
      break;
    }

    Vec centroid = Vec::Zero(n);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
    centroid /= Scalar(n);

    const Vec xr = project(centroid + (centroid - pts[worst]));
    const Scalar fr = f(xr);
    if (fr < vals[best]) {
      const Vec xe = project(centroid + Scalar(2) * (centroid - pts[worst]));
      const Scalar fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vec xc = outside ? Vec(centroid + Scalar(0.5) * (xr - centroid))
                           : Vec(centroid + Scalar(0.5) * (pts[worst] - centroid));
    const Scalar fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == best) continue;
      pts[k] = pts[best] + Scalar(0.5) * (pts[k] - pts[best]);
      vals[k] = f(pts[k]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  return res;
}

}  // namespace catbell
