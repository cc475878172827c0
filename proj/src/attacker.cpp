#include "patrol/attacker.hpp"

#include <cmath>
#include <stdexcept>

#include "patrol/golden.hpp"

namespace patrol {

AttackerResponse best_response(double alpha, const PiecewiseLinearCdf& cdf) {
  const auto& pts = cdf.points();
  double best_t = 0.0;
  double best_u = 0.0;
  const auto consider = [&](double t) {
    const double u = alpha * t * (1.0 - cdf(t));
    if (u > best_u) {
      best_u = u;
      best_t = t;
    }
  };
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double t0 = pts[i - 1].first, f0 = pts[i - 1].second;
    const double t1 = pts[i].first, f1 = pts[i].second;
    const double slope = (f1 - f0) / (t1 - t0);
    consider(t0);
    if (slope > 0.0) {
      // Vertex of u(t) = alpha t (1 - f0 - slope (t - t0)).
      const double vertex = (1.0 - f0 + slope * t0) / (2.0 * slope);
      if (vertex > t0 && vertex < t1) consider(vertex);
    }
    consider(t1);
  }
  AttackerResponse response;
  response.t_star = best_t;
  response.utility = best_u;
  response.ratio_to_quarter = best_u * 4.0;
  return response;
}

ThreePointUtility three_point_utility(double alpha, const std::array<double, 3>& x,
                                      const std::array<double, 3>& gap_probs) {
  if (!(x[0] < x[1] && x[1] < x[2]))
    throw std::invalid_argument("three_point_utility: support must be increasing");
  if (x[1] > 2.0 * x[0] || x[2] > 2.0 * x[1])
    throw std::invalid_argument("three_point_utility: spacing precondition violated");
  double nu = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (gap_probs[j] < -1e-12) throw std::invalid_argument("negative gap probability");
    nu += gap_probs[j] / x[j];
  }
  const double absence = 1.0 / nu;
  const double q1 = gap_probs[0] * absence / x[0];

  ThreePointUtility result;
  result.t1 = absence / 2.0;
  result.u1 = 0.25 * alpha * absence;
  if (q1 >= 1.0) {
    // Single-gap degenerate case: the second candidate vanishes.
    result.t2 = result.t1;
    result.u2 = 0.0;
  } else {
    result.t2 = (absence - q1 * x[0]) / (2.0 * (1.0 - q1));
    const double num = absence - q1 * x[0];
    result.u2 = 0.25 * alpha * num * num / (absence * (1.0 - q1));
  }
  result.max_u = std::max(result.u1, result.u2);
  return result;
}

AttackerResponse iid_best_response(double p) {
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("iid_best_response: p must lie in (0, 1)");
  AttackerResponse response;
  response.t_star = -1.0 / std::log1p(-p);
  response.utility = p * response.t_star / std::exp(1.0);
  response.ratio_to_quarter = response.utility * 4.0;
  return response;
}

double iid_worstcase_ratio() {
  // The ratio 4p / (e ln(1/(1-p))) decreases in p; take the supremum over a
  // grid refining toward 0.
  double worst = 0.0;
  for (double p = 0.5; p > 1e-13; p /= 2.0) {
    worst = std::max(worst, iid_best_response(p).ratio_to_quarter);
  }
  return worst;
}

double golden_ratio_at(double alpha) {
  const SlaterApprox slater = slater_approx(alpha);
  const std::array<double, 3> x = {static_cast<double>(slater.support[0]),
                                   static_cast<double>(slater.support[1]),
                                   static_cast<double>(slater.support[2])};
  const ThreePointUtility u = three_point_utility(alpha, x, slater.probs);
  return u.u2 / u.u1;
}

GoldenWorstCase golden_ratio_worstcase() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double k2_threshold = 1.0 - 1.0 / phi;  // = (1/phi)^2
  GoldenWorstCase best;
  const auto consider = [&](double alpha) {
    if (alpha <= 0.0 || alpha > 0.5) return;
    const double ratio = std::max(1.0, golden_ratio_at(alpha));
    if (ratio > best.full_ratio) {
      best.full_ratio = ratio;
      best.full_alpha_star = alpha;
    }
    if (alpha <= k2_threshold && ratio > best.ratio) {
      best.ratio = ratio;
      best.alpha_star = alpha;
      best.k_star = slater_approx(alpha).k;
    }
  };

  for (double alpha = 1e-5; alpha <= 0.5; alpha += 1e-5) consider(alpha);
  // Stationary points alpha = c/(3b) of the per-k curves a*alpha*(c-b*alpha)^2
  // with b = phi^{k+1} F_{k+1} and c = F_{k+2} + phi F_{k+1}.
  for (int k = 1; k <= 30; ++k) {
    const double fk1 = static_cast<double>(fib(k + 1));
    const double fk2 = static_cast<double>(fib(k + 2));
    const double b = std::pow(phi, k + 1) * fk1;
    const double c = fk2 + phi * fk1;
    consider(c / (3.0 * b));
  }
  return best;
}

}  // namespace patrol
