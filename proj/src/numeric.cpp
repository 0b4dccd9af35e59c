#include "ofdma/numeric.hpp"
#include "ofdma/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace ofdma {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const RootOptions& opt)
{
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0)
    return lo;
  if (fhi == 0.0)
    return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw BracketFailure("bisect: no sign change on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  for (int it = 0; it < opt.max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    double fm = f(mid);
    if (fm == 0.0)
      return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::max(opt.abs_tol, opt.rel_tol * std::max(std::fabs(lo), std::fabs(hi))))
      break;
  }
  return 0.5 * (lo + hi);
}

double bisect_grow(const std::function<double(double)>& f, double lo, double hi0,
                   const RootOptions& opt, int max_grow)
{
  double flo = f(lo);
  double hi = hi0;
  for (int g = 0; g < max_grow; ++g) {
    double fhi = f(hi);
    if (!std::isfinite(fhi))
      break;
    if ((fhi < 0.0) != (flo < 0.0) || fhi == 0.0)
      return bisect(f, lo, hi, opt);
    lo = hi;
    flo = fhi;
    hi *= 2.0;
  }
  throw BracketFailure("bisect_grow: no sign change found");
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol)
{
  if (!(b > a))
    return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 20, rel_tol, &err, &l1);
  if (!std::isfinite(v) || err > std::max({abs_tol, 10.0 * rel_tol * l1, 1e-290}))
    throw QuadratureFailure("integrate: error estimate " + std::to_string(err) +
                            " above tolerance on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
  return v;
}

MeanStderr mean_stderr(const std::vector<double>& xs)
{
  MeanStderr r;
  if (xs.empty())
    return r;
  double s = 0.0;
  for (double x : xs)
    s += x;
  r.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs)
      ss += (x - r.mean) * (x - r.mean);
    r.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                          static_cast<double>(xs.size()));
  }
  return r;
}

} // namespace ofdma
