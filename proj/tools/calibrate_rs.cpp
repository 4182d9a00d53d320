// Prints the constants c_j for the Riemann-Siegel error model
// |z_rs(t, j) - z_oracle(t)| <= c_j t^{-(2j+3)/4}, taken as 1.5 times the
// largest scaled error over a fixed grid of t in [50, 5000].

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "zlab/hardy.hpp"

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 400;
  double worst[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < points; ++i) {
    // log-spaced, offset so that no sample lands on 2 pi n^2
    const double t = 50.0 * std::pow(100.0, (i + 0.37) / points);
    const double ref = zlab::z_oracle(t);
    for (int j = 0; j <= 4; ++j) {
      const double err = std::abs(zlab::z_rs(t, j).value - ref);
      worst[j] = std::max(worst[j], err * std::pow(t, (2.0 * j + 3.0) / 4.0));
    }
  }
  std::printf("const std::array<double, 5> kRsErrorConstants = {");
  for (int j = 0; j <= 4; ++j) std::printf("%s%.3g", j ? ", " : "", 1.5 * worst[j]);
  std::printf("};\n");
}
