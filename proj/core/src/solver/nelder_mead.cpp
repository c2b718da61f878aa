#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "simest/solver/solver.hpp"

namespace simest {

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double initial_step,
                             int max_evaluations, double value_tol) {
  const Index n = x0.size();
  std::vector<Vector> pts;
  std::vector<double> vals;
  int evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  pts.push_back(x0);
  vals.push_back(eval(x0));
  for (Index j = 0; j < n; ++j) {
    Vector p = x0;
    p[j] += initial_step * std::max(1.0, std::abs(x0[j]));
    pts.push_back(p);
    vals.push_back(eval(p));
  }
  std::vector<std::size_t> order(pts.size());
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (vals[best] <= value_tol || std::abs(vals[worst] - vals[best]) <= 1e-15 * (1.0 + std::abs(vals[best])))
      break;
    Vector centroid = Vector::Zero(n);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
    centroid /= static_cast<double>(n);

    const Vector refl = centroid + (centroid - pts[worst]);
    const double fr = eval(refl);
    if (fr < vals[best]) {
      const Vector expd = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(expd);
      if (fe < fr) {
        pts[worst] = expd;
        vals[worst] = fe;
      } else {
        pts[worst] = refl;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = refl;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Vector contr = outside ? Vector(centroid + 0.5 * (refl - centroid))
                                   : Vector(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = eval(contr);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contr;
        vals[worst] = fc;
      } else {
        for (std::size_t k = 1; k < order.size(); ++k) {
          Vector& p = pts[order[k]];
          p = pts[best] + 0.5 * (p - pts[best]);
          vals[order[k]] = eval(p);
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[static_cast<std::size_t>(it - vals.begin())], *it, evals};
}

}  // namespace simest
