#include "ctlab/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctlab/errors.hpp"

namespace ctlab {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth) {
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &err, &l1);
  if (!std::isfinite(value))
    throw QuadratureError("adaptive quadrature produced a non-finite value", err);
  // boost reports err relative to the L1 norm of the integrand.
  if (err > 10.0 * rel_tol * std::max(l1, 1e-300) && err > 1e-14)
    throw QuadratureError("adaptive quadrature did not converge", err);
  return {value, err};
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

Point halton(std::size_t index, std::size_t dim) {
  static constexpr std::array<unsigned, 12> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dim > primes.size()) throw PreconditionError("halton: dimension above 12 not supported");
  Point p(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const unsigned base = primes[k];
    double f = 1.0, r = 0.0;
    std::size_t i = index;
    while (i > 0) {
      f /= base;
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    p[k] = r;
  }
  return p;
}

std::vector<Point> box_sample(const Box& box, std::size_t count) {
  const std::size_t d = box.dim();
  std::vector<Point> pts;
  pts.reserve((std::size_t{1} << d) + 1 + count);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = (mask >> k) & 1 ? box.hi[k] : box.lo[k];
    pts.push_back(std::move(v));
  }
  Point c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = 0.5 * (box.lo[k] + box.hi[k]);
  pts.push_back(std::move(c));
  for (std::size_t i = 1; i <= count; ++i) {
    Point h = halton(i, d);
    for (std::size_t k = 0; k < d; ++k) h[k] = box.lo[k] + h[k] * (box.hi[k] - box.lo[k]);
    pts.push_back(std::move(h));
  }
  return pts;
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw PreconditionError("uniform_grid: need at least two nodes");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = b;
  return g;
}

}  // namespace ctlab
