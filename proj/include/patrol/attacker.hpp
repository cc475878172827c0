#ifndef PATROL_ATTACKER_HPP
#define PATROL_ATTACKER_HPP

#include <array>

#include "patrol/core.hpp"

namespace patrol {

// Exact maximizer of u(t) = alpha * t * (1 - F(t)) over t >= 0. On each
// linear piece of F the utility is a concave quadratic, so the candidates are
// the per-piece vertices clamped into their pieces plus the piece endpoints.
// Ties break toward the smallest t. Utilities use binary64 with a 1e-9
// comparison tolerance documented across the library.
AttackerResponse best_response(double alpha, const PiecewiseLinearCdf& cdf);

// Closed-form response bounds against a three-point gap distribution with
// x2 <= 2 x1 and x3 <= 2 x2: u1 = alpha*E/4 is always achievable by the
// attacker; max(u1, u2) bounds him from above.
struct ThreePointUtility {
  double u1 = 0.0;
  double u2 = 0.0;
  double max_u = 0.0;
  double t1 = 0.0;  // E/2
  double t2 = 0.0;  // (E - q1 x1) / (2 (1 - q1))
};

ThreePointUtility three_point_utility(double alpha, const std::array<double, 3>& x,
                                      const std::array<double, 3>& gap_probs);

// Best response against the i.i.d. schedule with per-step visit probability
// p in (0,1) (= target value): the continuous relaxation t* = -1/ln(1-p),
// which upper bounds the integer-constrained optimum.
AttackerResponse iid_best_response(double p);

// Worst-case approximation ratio of the i.i.d. schedule over p in (0, 1/2],
// approached as p -> 0 (equals 4/e in the limit).
double iid_worstcase_ratio();

// Worst approximation ratio of the golden-ratio schedule (1e-5 grid plus the
// stationary points c/(3b) of the per-k ratio curves). The headline fields
// sweep the regime where every return-time law has k >= 2, i.e. values up to
// 1 - 1/phi ~ 0.38197: there the worst case is 1.0058310 at 0.1597438. For
// values in (1 - 1/phi, 1/2] the schedule degrades further; that scan is
// reported in the full_* fields (1.0236785 at (5 - sqrt5)/6 ~ 0.4606553, the
// k = 1 stationary point).
struct GoldenWorstCase {
  double alpha_star = 0.0;
  double ratio = 0.0;
  int k_star = 0;
  double full_alpha_star = 0.0;  // maximizer over all of (0, 1/2]
  double full_ratio = 0.0;
};

GoldenWorstCase golden_ratio_worstcase();

// Ratio u2/u1 of the golden schedule at frequency alpha (may be below 1).
double golden_ratio_at(double alpha);

}  // namespace patrol

#endif
