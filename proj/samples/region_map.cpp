// Prints an ASCII dominance map over (N, c) for fixed infection
// probabilities: '#' where defection wins, '.' where protection wins,
// '*' on the threshold curve.

#include <cstdio>
#include <vector>

#include "netdecide/tipping.hpp"

int main() {
  const double p = 0.5;
  const double q = 0.1;
  const int max_n = 30;

  std::printf("dominance map for p=%.2f q=%.2f (rows: c, columns: N=1..%d)\n\n", p, q, max_n);
  for (int row = 20; row >= 0; --row) {
    const double c = row * 0.05;
    std::printf("c=%.2f ", c);
    for (int n = 1; n <= max_n; ++n) {
      const auto point = netdecide::classify_region(n, c, p, q);
      const char mark = point.region == netdecide::Region::AreaOfDefection ? '#'
                        : point.region == netdecide::Region::AreaOfProtection ? '.'
                                                                              : '*';
      std::putchar(mark);
    }
    std::putchar('\n');
  }

  std::printf("\nthreshold cost and defection fraction by network size:\n");
  for (int n : {1, 2, 5, 10, 20, 30}) {
    std::printf("  N=%-3d c*=%.6f  defection fraction=%.6f\n", n,
                netdecide::threshold_cost(n, p, q), netdecide::defection_fraction_at_n(n, p, q));
  }

  std::vector<int> sizes;
  for (int n = 1; n <= max_n; ++n) sizes.push_back(n);
  std::printf("overall defection fraction (N uniform on 1..%d, c uniform on [0,1]): %.6f\n",
              max_n, netdecide::overall_defection_fraction(p, q, sizes, 100000));
  return 0;
}
