#pragma once

#include <vector>

#include "phasecontract/half_int.hpp"
#include "phasecontract/sqrt_rational.hpp"

namespace phasecontract {

enum class SelectionRules {
  lenient,  // violated triangle / projection rules give an exact zero
  strict,   // violated triangle / projection rules throw DomainError
};

/// Exact <j1 m1; j2 m2 | J M> from the Racah closed form, Condon-Shortley
/// phase. M != m1 + m2 is always an exact zero.
SqrtRational clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                            SelectionRules rules = SelectionRules::lenient);

/// Floating-point <j1 m1; j2 m2 | J M>. The Racah sum is evaluated in the log
/// domain with compensated summation; when its estimated relative error
/// (cancellation times the size of the logarithms) exceeds 1e-13 the
/// coefficient is taken from the stable three-term recursion over J instead.
double clebsch_gordan_float(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                            SelectionRules rules = SelectionRules::lenient);

/// Same as clebsch_gordan_float but always through the log-domain Racah sum;
/// exposed for diagnostics and tests. `error_estimate` receives the estimated
/// relative error of the result.
double clebsch_gordan_racah_log(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J,
                                HalfInt M, double* error_estimate = nullptr);

/// Wigner 3j symbols (l1 l2 l3; m1 m2 m3) for every admissible l1 at fixed
/// (l2, l3, m2, m3), m1 = -m2 - m3, by the Schulten-Gordon recursion
/// (forward from the lower end, backward from the upper end, matched inside
/// the classically allowed region).
struct ThreeJSeries {
  HalfInt l1_min;
  HalfInt l1_max;
  std::vector<double> values;  // index k <-> l1 = l1_min + k

  bool empty() const { return values.empty(); }
  double at(HalfInt l1) const;  // zero outside [l1_min, l1_max]
};

ThreeJSeries three_j_series(HalfInt l2, HalfInt l3, HalfInt m2, HalfInt m3);

/// <j1 m1; j2 m2 | J, m1+m2> for all admissible J.
struct ClebschGordanSeries {
  HalfInt J_min;
  HalfInt J_max;
  std::vector<double> values;  // index k <-> J = J_min + k

  double at(HalfInt J) const;
};

ClebschGordanSeries clebsch_gordan_series(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2);

}  // namespace phasecontract
