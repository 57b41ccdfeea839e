// Serial reference kernels vs the OpenMP kernels.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "sphcode/kernels.hpp"
#include "sphcode/rng.hpp"
#include "sphcode/verify.hpp"

using namespace sphcode;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const int digits = argc > 1 ? std::atoi(argv[1]) : 40;
  const Potential pot = Potential::coulomb();
  std::printf("threads %d, %d digits\n", omp_get_max_threads(), digits);
  std::printf("%6s %-8s %12s %12s %8s %s\n", "n", "kernel", "serial_s", "parallel_s", "speedup", "same");
  for (std::size_t n : {16, 64, 128, 256}) {
    Rng rng(7, n);
    const PointSet p = random_point_set(n, rng, digits);
    const int reps = n <= 64 ? 10 : 2;

    BigReal es, ep;
    const double ts = seconds([&] { es = kernels::energy_serial(p, pot); }, reps);
    const double tp = seconds([&] { ep = kernels::energy_parallel(p, pot); }, reps);
    std::printf("%6zu %-8s %12.6f %12.6f %8.2f %s\n", n, "energy", ts, tp, ts / tp,
                abs(es - ep) < BigReal::pow10(5 - digits, digits) * abs(es) ? "yes" : "NO");

    std::vector<Vec3> fs, fp;
    const double fs_t = seconds([&] { fs = kernels::forces_serial(p, pot); }, reps);
    const double fp_t = seconds([&] { fp = kernels::forces_parallel(p, pot); }, reps);
    BigReal worst = BigReal::zero(digits);
    for (std::size_t i = 0; i < n; ++i) worst = max(worst, norm(fs[i] - fp[i]));
    std::printf("%6zu %-8s %12.6f %12.6f %8.2f %s\n", n, "forces", fs_t, fp_t, fs_t / fp_t,
                worst < BigReal::pow10(5 - digits, digits) * es ? "yes" : "NO");

    if (n <= 128) {
      Matrix hs(1, digits), hp(1, digits);
      const double hs_t = seconds([&] { hs = hessian_serial(p, pot); }, 1);
      const double hp_t = seconds([&] { hp = hessian(p, pot); }, 1);
      BigReal diff = BigReal::zero(digits);
      for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = 0; j < hs.size(); ++j) diff = max(diff, abs(hs(i, j) - hp(i, j)));
      }
      std::printf("%6zu %-8s %12.6f %12.6f %8.2f %s\n", n, "hessian", hs_t, hp_t, hs_t / hp_t,
                  diff < BigReal::pow10(5 - digits, digits) * es ? "yes" : "NO");
    }
  }
  return 0;
}
