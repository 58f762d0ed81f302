#include "ctlab/fields/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ctlab/errors.hpp"

namespace ctlab {

VectorField::VectorField(std::string name, std::size_t dim, double horizon, FieldEvaluator eval)
    : name_(std::move(name)), dim_(dim), horizon_(horizon), eval_(std::move(eval)) {
  if (dim_ == 0) throw PreconditionError("vector field: dimension must be positive");
  if (!(horizon_ > 0.0)) throw PreconditionError("vector field: horizon must be positive");
}

std::optional<ContinuityCertificate> VectorField::osgood_certificate() const {
  if (!certificate_) return std::nullopt;
  if (classify_osgood(certificate_->rho) != OsgoodClass::osgood) return std::nullopt;
  return certificate_;
}

VectorField& VectorField::with_sup_norm(std::function<double(double)> f) {
  sup_norm_ = std::move(f);
  return *this;
}

VectorField& VectorField::with_certificate(ContinuityCertificate c) {
  certificate_ = std::move(c);
  return *this;
}

VectorField& VectorField::without_certificate() {
  certificate_.reset();
  return *this;
}

VectorField& VectorField::with_sampling_box(Box b) {
  if (b.dim() != dim_) throw PreconditionError("sampling box dimension mismatch");
  box_ = std::move(b);
  return *this;
}

VectorField& VectorField::with_stream_function(std::function<double(double, double, double)> psi) {
  if (dim_ != 2) throw PreconditionError("stream functions are defined for planar fields only");
  stream_ = std::move(psi);
  return *this;
}

VectorField VectorField::time_reversed(double t0) const {
  auto inner = eval_;
  VectorField r(name_ + "~reversed", dim_, std::max(t0, horizon_),
                [inner, t0](double tau, std::span<const double> x, std::span<double> out) {
                  inner(t0 - tau, x, out);
                  for (double& c : out) c = -c;
                });
  if (sup_norm_) {
    auto s = *sup_norm_;
    r.with_sup_norm([s, t0](double tau) { return s(t0 - tau); });
  }
  if (certificate_) {
    auto c = certificate_->C;
    r.with_certificate({[c, t0](double tau) { return c(t0 - tau); }, certificate_->rho});
  }
  if (box_) r.with_sampling_box(*box_);
  return r;
}

VectorField operator-(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw PreconditionError("field difference: dimension mismatch");
  auto a = v.eval_;
  auto b = w.eval_;
  const std::size_t d = v.dim();
  VectorField r(v.name() + "-" + w.name(), d, std::min(v.horizon(), w.horizon()),
                [a, b, d](double t, std::span<const double> x, std::span<double> out) {
                  thread_local std::vector<double> tmp;
                  tmp.resize(d);
                  a(t, x, out);
                  b(t, x, tmp);
                  for (std::size_t i = 0; i < d; ++i) out[i] -= tmp[i];
                });
  if (v.box_) r.with_sampling_box(*v.box_);
  else if (w.box_) r.with_sampling_box(*w.box_);
  return r;
}

double certificate_worst_ratio(const VectorField& v, std::size_t pairs, unsigned seed) {
  if (!v.certificate()) throw PreconditionError("certificate check: field has no certificate");
  if (!v.sampling_box()) throw PreconditionError("certificate check: field has no sampling box");
  const auto& box = *v.sampling_box();
  const auto& cert = *v.certificate();
  const std::size_t d = v.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  Point x(d), y(d), vx(d), vy(d);
  for (std::size_t k = 0; k < pairs; ++k) {
    const double t = unit(rng) * v.horizon();
    for (std::size_t i = 0; i < d; ++i) x[i] = box.lo[i] + unit(rng) * (box.hi[i] - box.lo[i]);
    if (k % 2 == 0) {
      for (std::size_t i = 0; i < d; ++i) y[i] = box.lo[i] + unit(rng) * (box.hi[i] - box.lo[i]);
    } else {
      // close pairs at log-uniform distances in [1e-9, 1)
      const double r = std::pow(10.0, -9.0 * unit(rng));
      Point dir(d);
      std::normal_distribution<double> g;
      for (auto& c : dir) c = g(rng);
      const double nd = norm(dir);
      for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + r * dir[i] / nd;
    }
    v.eval(t, x, vx);
    v.eval(t, y, vy);
    const double num = distance(vx, vy);
    const double den = cert.C(t) * cert.rho(distance(x, y));
    if (den > 0.0) {
      worst = std::max(worst, num / den);
    } else if (num > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

}  // namespace ctlab
