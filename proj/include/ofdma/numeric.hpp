#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ofdma {

struct RootOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_iter = 400;
};

// Bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const RootOptions& opt = {});

// Grows hi geometrically from hi0 until f changes sign against f(lo), then bisects.
double bisect_grow(const std::function<double(double)>& f, double lo, double hi0,
                   const RootOptions& opt = {}, int max_grow = 200);

// Maximizer of a unimodal f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12);

// Adaptive Gauss-Kronrod; throws QuadratureFailure when the error
// estimate exceeds max(abs_tol, rel_tol * |result|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

// Runs body(t) for t in [0, n) on up to `threads` workers. Each index is
// handled exactly once; callers write to slot t so reduction order is fixed.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
  if (threads <= 1 || n <= 1) {
    for (std::size_t t = 0; t < n; ++t)
      body(t);
    return;
  }
  std::vector<std::thread> pool;
  unsigned w = threads < n ? threads : static_cast<unsigned>(n);
  for (unsigned id = 0; id < w; ++id)
    pool.emplace_back([&, id] {
      for (std::size_t t = id; t < n; t += w)
        body(t);
    });
  for (auto& th : pool)
    th.join();
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

} // namespace ofdma
