#include "sfmotif/zeta.hpp"

#include <cmath>

#include "sfmotif/error.hpp"

namespace sfmotif {

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw PreconditionError("riemann_zeta: s must exceed 1");
  // Sum k < N directly, then
  //   sum_{k>=N} k^-s ~ N^{1-s}/(s-1) + N^-s/2 + sum_j B_2j/(2j)! (s)_{2j-1} N^{-s-2j+1}.
  constexpr int N = 64;
  double head = 0.0;
  for (int k = N - 1; k >= 1; --k) head += std::pow(static_cast<double>(k), -s);

  const double n = N;
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  static constexpr double kB2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double rising = s;            // s (s+1) ... (s+2j-2)
  double factorial = 2.0;       // (2j)!
  double power = std::pow(n, -s - 1.0);  // N^{-s-2j+1}
  for (int j = 1; j <= 6; ++j) {
    tail += kB2j[j - 1] / factorial * rising * power;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
    power /= n * n;
  }
  return head + tail;
}

}  // namespace sfmotif
