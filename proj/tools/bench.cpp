// Timing comparison of the serial reference kernels against the OpenMP ones.

#include <chrono>
#include <cstdio>
#include <vector>

#include "parabend/cap.hpp"
#include "parabend/geometry.hpp"
#include "parabend/scan.hpp"
#include "parabend/spectral.hpp"

using namespace parabend;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double time_ms(Fn&& fn) {
  const double t0 = now_ms();
  fn();
  return now_ms() - t0;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", thread_count());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  geometry::ParabolicEnd end;
  end.alpha2 = 1.0 / 3.0;
  const auto field = geometry::model_metric_field(end);

  {
    Rng rng(17);
    std::vector<geometry::Vec4> pts;
    for (int i = 0; i < 2000; ++i)
      pts.emplace_back(rng.uniform(0.3, 2.5), rng.uniform(0.0, 6.28), rng.uniform(-0.6, 0.6),
                       rng.uniform(-0.6, 0.6));
    std::vector<double> a, b;
    const double ts = time_ms([&] {
      a = map_index<double>(pts.size(), Exec::kSerial, [&](std::size_t i) {
        return geometry::scalar_curvature(field, pts[i], 1e-3);
      });
    });
    const double tp = time_ms([&] {
      b = map_index<double>(pts.size(), Exec::kParallel, [&](std::size_t i) {
        return geometry::scalar_curvature(field, pts[i], 1e-3);
      });
    });
    row("curvature scan (2000 pts)", ts, tp);
    if (a != b) std::printf("  !! results differ between paths\n");
  }

  {
    const auto profile = cap::build_cap_profile(4);
    spectral::Lambda1Result a, b;
    const double ts =
        time_ms([&] { a = spectral::lambda1_cap_surface(profile, 11, 600, Exec::kSerial); });
    const double tp =
        time_ms([&] { b = spectral::lambda1_cap_surface(profile, 11, 600, Exec::kParallel); });
    row("eigenmodes (12 x n=600)", ts, tp);
    if (a.lambda1 != b.lambda1) std::printf("  !! results differ between paths\n");
  }

  {
    Rational a(0), b(0);
    const double ts = time_ms([&] {
      for (int rep = 0; rep < 20; ++rep) a = spectral::mode_gap_rational(233, 987, Exec::kSerial);
    });
    const double tp = time_ms([&] {
      for (int rep = 0; rep < 20; ++rep)
        b = spectral::mode_gap_rational(233, 987, Exec::kParallel);
    });
    row("mode gap window (q=987)", ts, tp);
    if (a != b) std::printf("  !! results differ between paths\n");
  }

  {
    double a = 0, b = 0;
    const double ts = time_ms([&] {
      a = spectral::epsilon_for_K(0.61803398874989485, 4000, Exec::kSerial).eps;
    });
    const double tp = time_ms([&] {
      b = spectral::epsilon_for_K(0.61803398874989485, 4000, Exec::kParallel).eps;
    });
    row("epsilon window (K=4000)", ts, tp);
    if (a != b) std::printf("  !! results differ between paths\n");
  }

  return 0;
}
