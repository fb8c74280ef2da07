#include "phasecontract/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>

#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"

namespace phasecontract {

namespace {

// Largest estimated relative error accepted from the log-domain Racah sum
// before the float path switches to recursion.
constexpr double kMaxRacahError = 1e-13;

const BigInt& factorial(int n) {
  static std::mutex mutex;
  static std::deque<BigInt> cache{BigInt(1)};
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * BigInt(cache.size()));
  return cache[n];
}

// Integer arguments of the Racah formula, all from doubled quantum numbers.
struct RacahIndices {
  int a, b, c, d;              // j1+j2-J, j1-j2+J, -j1+j2+J, j1+j2+J+1
  int e1, e2, e3, e4, e5, e6;  // j1+m1, j1-m1, j2+m2, j2-m2, J+M, J-M
  int t1, t2;                  // J-j2+m1, J-j1-m2
  int kmin, kmax;
  int two_J;
};

// Returns false when the coefficient vanishes by a selection rule.
bool racah_indices(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                   SelectionRules rules, RacahIndices& r) {
  const bool projections_ok = is_projection_of(m1, j1) && is_projection_of(m2, j2) && is_projection_of(M, J);
  const bool triangle_ok = satisfies_triangle(j1, j2, J);
  if (rules == SelectionRules::strict) {
    if (!projections_ok)
      throw DomainError("projection out of range in <" + j1.str() + " " + m1.str() + "; " + j2.str() + " " +
                        m2.str() + " | " + J.str() + " " + M.str() + ">");
    if (!triangle_ok)
      throw DomainError("triangle rule violated for (" + j1.str() + ", " + j2.str() + ", " + J.str() + ")");
  }
  if (!projections_ok || !triangle_ok) return false;
  if (m1 + m2 != M) return false;

  const auto h = [](HalfInt x) { return x.twice() / 2; };
  r.a = h(j1 + j2 - J);
  r.b = h(j1 - j2 + J);
  r.c = h(J + j2 - j1);
  r.d = h(j1 + j2 + J) + 1;
  r.e1 = h(j1 + m1);
  r.e2 = h(j1 - m1);
  r.e3 = h(j2 + m2);
  r.e4 = h(j2 - m2);
  r.e5 = h(J + M);
  r.e6 = h(J - M);
  r.t1 = h(J - j2 + m1);
  r.t2 = h(J - j1 - m2);
  r.kmin = std::max({0, -r.t1, -r.t2});
  r.kmax = std::min({r.a, r.e2, r.e3});
  r.two_J = J.twice();
  return r.kmin <= r.kmax;
}

}  // namespace

SqrtRational clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                            SelectionRules rules) {
  RacahIndices r{};
  if (!racah_indices(j1, m1, j2, m2, J, M, rules, r)) return SqrtRational::zero();

  Rational sum = 0;
  for (int k = r.kmin; k <= r.kmax; ++k) {
    const BigInt den = factorial(k) * factorial(r.a - k) * factorial(r.e2 - k) * factorial(r.e3 - k) *
                       factorial(r.t1 + k) * factorial(r.t2 + k);
    sum += Rational(k % 2 == 0 ? 1 : -1, den);
  }
  if (sum == 0) return SqrtRational::zero();

  const Rational prefactor =
      Rational(BigInt(r.two_J + 1) * factorial(r.a) * factorial(r.b) * factorial(r.c), factorial(r.d)) *
      Rational(factorial(r.e1) * factorial(r.e2) * factorial(r.e3) * factorial(r.e4) * factorial(r.e5) *
               factorial(r.e6));
  const Rational radicand = prefactor * sum * sum;
  return SqrtRational(sum > 0 ? 1 : -1, boost::multiprecision::numerator(radicand),
                      boost::multiprecision::denominator(radicand));
}

double clebsch_gordan_racah_log(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                                double* error_estimate) {
  if (error_estimate) *error_estimate = 0.0;
  RacahIndices r{};
  if (!racah_indices(j1, m1, j2, m2, J, M, SelectionRules::lenient, r)) return 0.0;

  const double log_pre =
      0.5 * (std::log(r.two_J + 1.0) + log_factorial(r.a) + log_factorial(r.b) + log_factorial(r.c) -
             log_factorial(r.d) + log_factorial(r.e1) + log_factorial(r.e2) + log_factorial(r.e3) +
             log_factorial(r.e4) + log_factorial(r.e5) + log_factorial(r.e6));

  // Terms relative to the k = kmin one, from the exact term ratios; the large
  // common logarithm is exponentiated once, so its rounding is not amplified
  // by cancellation between terms.
  const auto log_den = [&](int k) {
    return log_factorial(k) + log_factorial(r.a - k) + log_factorial(r.e2 - k) + log_factorial(r.e3 - k) +
           log_factorial(r.t1 + k) + log_factorial(r.t2 + k);
  };
  const double log_first = log_pre - log_den(r.kmin);
  thread_local std::vector<double> rel;
  rel.clear();
  double x = 0.0, peak = 0.0, walk = 0.0;
  for (int k = r.kmin; k <= r.kmax; ++k) {
    if (k > r.kmin) {
      const int j = k - 1;
      const double step = std::log(double(r.a - j) * double(r.e2 - j) * double(r.e3 - j)) -
                          std::log(double(j + 1) * double(r.t1 + j + 1) * double(r.t2 + j + 1));
      x += step;
      walk += std::abs(step);
    }
    rel.push_back(x);
    peak = std::max(peak, x);
  }
  CompensatedSum sum;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const double t = std::exp(rel[i] - peak);
    sum += ((r.kmin + static_cast<int>(i)) % 2 == 0 ? t : -t);
    total_abs += t;
  }
  const double v = sum.value();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (v == 0.0) {
    if (error_estimate) *error_estimate = std::numeric_limits<double>::infinity();
    return 0.0;
  }
  // Rounding of the accumulated logs is amplified by the cancellation; the
  // common factor contributes about |log| * eps once.
  if (error_estimate)
    *error_estimate = (total_abs / std::abs(v)) * (2.0 + walk + rel.size()) * eps + (1.0 + std::abs(log_first + peak)) * eps;
  return (v < 0 ? -1.0 : 1.0) * std::exp(std::log(std::abs(v)) + log_first + peak);
}

double clebsch_gordan_float(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M,
                            SelectionRules rules) {
  RacahIndices r{};
  if (!racah_indices(j1, m1, j2, m2, J, M, rules, r)) return 0.0;
  double error = 0.0;
  const double direct = clebsch_gordan_racah_log(j1, m1, j2, m2, J, M, &error);
  if (error <= kMaxRacahError) return direct;
  return clebsch_gordan_series(j1, m1, j2, m2).at(J);
}

// ---------------------------------------------------------------------------
// Schulten-Gordon recursion

double ThreeJSeries::at(HalfInt l1) const {
  if (values.empty() || l1 < l1_min || l1 > l1_max) return 0.0;
  const int d = l1.twice() - l1_min.twice();
  if (d % 2 != 0) return 0.0;
  return values[d / 2];
}

ThreeJSeries three_j_series(HalfInt l2, HalfInt l3, HalfInt m2, HalfInt m3) {
  if (!is_projection_of(m2, l2) || !is_projection_of(m3, l3))
    throw DomainError("three_j_series: projection out of range");
  const HalfInt m1 = -(m2 + m3);
  const HalfInt lo = std::max(abs(l2 - l3), abs(m1));
  const HalfInt hi = l2 + l3;
  ThreeJSeries out{lo, hi, {}};
  if (lo > hi) return out;
  const int n = (hi.twice() - lo.twice()) / 2 + 1;
  out.values.assign(n, 0.0);

  const double L2 = l2.value(), L3 = l3.value(), M1 = m1.value(), M2 = m2.value(), M3 = m3.value();
  const double l1min = lo.value();
  const double diff_sq = (L2 - L3) * (L2 - L3);
  const double sum_sq = (L2 + L3 + 1.0) * (L2 + L3 + 1.0);
  const double pre2 = M1 * (L2 * (L2 + 1.0) - L3 * (L3 + 1.0));
  const double m3mm2 = M3 - M2;

  // A(l) vanishes at l = l1_min and l = l2 + l3 + 1.
  const auto A = [&](double l) {
    const double v = (l * l - diff_sq) * (sum_sq - l * l) * (l * l - M1 * M1);
    return v > 0.0 ? std::sqrt(v) : 0.0;
  };
  const auto B = [&](double l) { return (2.0 * l + 1.0) * (pre2 - l * (l + 1.0) * m3mm2); };
  // Characteristic roots of the recursion are complex in the classical region.
  const auto classical = [&](double l) {
    return B(l) * B(l) < 4.0 * l * (l + 1.0) * A(l) * A(l + 1.0);
  };

  std::vector<double>& f = out.values;
  // bw[n-1] starts at +1 and may underflow under rescaling, so the sign of
  // the top entry is carried separately
  bool top_negative = false;
  if (n == 1) {
    f[0] = 1.0;
  } else {
    // Matching index: centre of the classical region, or the point closest
    // to it when the region is empty.
    int first = -1, last = -1;
    for (int k = 1; k < n - 1; ++k) {
      if (classical(l1min + k)) {
        if (first < 0) first = k;
        last = k;
      }
    }
    int match = first >= 0 ? (first + last) / 2 : n / 2;
    match = std::clamp(match, 1, n - 2 > 0 ? n - 2 : 1);

    constexpr double kBig = 1e150;

    // Forward from l1_min.
    std::vector<double> fw(match + 2, 0.0);
    fw[0] = 1.0;
    for (int k = 0; k + 1 <= std::min(match + 1, n - 1); ++k) {
      const double l = l1min + k;
      double next;
      if (l == 0.0) {
        next = -m3mm2 * fw[0] / A(1.0);
      } else {
        const double prev = k > 0 ? fw[k - 1] : 0.0;
        next = (B(l) * fw[k] - (l + 1.0) * A(l) * prev) / (l * A(l + 1.0));
      }
      fw[k + 1] = next;
      if (std::abs(next) > kBig)
        for (int i = 0; i <= k + 1; ++i) fw[i] /= kBig;
    }

    // Backward from l1_max.
    const int lo_idx = std::max(match - 1, 0);
    std::vector<double> bw(n, 0.0);
    bw[n - 1] = 1.0;
    for (int k = n - 1; k - 1 >= lo_idx; --k) {
      const double l = l1min + k;
      const double next_up = k + 1 < n ? bw[k + 1] : 0.0;
      bw[k - 1] = (B(l) * bw[k] - l * A(l + 1.0) * next_up) / ((l + 1.0) * A(l));
      if (std::abs(bw[k - 1]) > kBig)
        for (int i = k - 1; i < n; ++i) bw[i] /= kBig;
    }

    // Least-squares scale over the overlap window.
    double num = 0.0, den = 0.0;
    for (int k = lo_idx; k <= std::min(match + 1, n - 1); ++k) {
      num += fw[k] * bw[k];
      den += bw[k] * bw[k];
    }
    const double scale = den > 0.0 ? num / den : 0.0;
    for (int k = 0; k < n; ++k) f[k] = k <= match ? fw[k] : scale * bw[k];
    top_negative = n - 1 <= match ? fw[n - 1] < 0.0 : scale < 0.0;
  }

  CompensatedSum norm;
  for (int k = 0; k < n; ++k) norm += (2.0 * (l1min + k) + 1.0) * f[k] * f[k];
  double c = 1.0 / std::sqrt(norm.value());
  // Convention: sign of the l1 = l2 + l3 entry is (-1)^(l2 - l3 - m1).
  const int phase_exp = (l2 - l3 - m1).twice() / 2;
  const bool want_negative = (phase_exp % 2) != 0;
  if (top_negative != want_negative) c = -c;
  for (double& v : f) v *= c;
  return out;
}

double ClebschGordanSeries::at(HalfInt J) const {
  if (values.empty() || J < J_min || J > J_max) return 0.0;
  const int d = J.twice() - J_min.twice();
  if (d % 2 != 0) return 0.0;
  return values[d / 2];
}

ClebschGordanSeries clebsch_gordan_series(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2) {
  // <j1 m1; j2 m2 | J M> = (-1)^(j1 - j2 + M) sqrt(2J+1) (J j1 j2; -M m1 m2)
  const auto three_j = three_j_series(j1, j2, m1, m2);
  ClebschGordanSeries out{three_j.l1_min, three_j.l1_max, three_j.values};
  const HalfInt M = m1 + m2;
  const int phase_exp = (j1 - j2 + M).twice() / 2;
  const double phase = (phase_exp % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double J = out.J_min.value() + static_cast<double>(k);
    out.values[k] *= phase * std::sqrt(2.0 * J + 1.0);
  }
  return out;
}

}  // namespace phasecontract
