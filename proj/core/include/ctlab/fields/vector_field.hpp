#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "ctlab/fields/modulus.hpp"
#include "ctlab/point.hpp"

namespace ctlab {

/// |V(t,x) - V(t,y)| <= C(t) rho(|x - y|) for all x, y.
struct ContinuityCertificate {
  std::function<double(double)> C;
  Modulus rho;
};

/// Signature of a field evaluator: writes V(t,x) into out (out.size() == d).
using FieldEvaluator =
    std::function<void(double t, std::span<const double> x, std::span<double> out)>;

/// Time-dependent vector field V: [0,T] x R^d -> R^d.
///
/// The evaluator must be total and thread-safe; the object is immutable once
/// built and cheap to copy (evaluators are shared).
class VectorField {
 public:
  VectorField(std::string name, std::size_t dim, double horizon, FieldEvaluator eval);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  double horizon() const { return horizon_; }

  void eval(double t, std::span<const double> x, std::span<double> out) const { eval_(t, x, out); }
  Point operator()(double t, std::span<const double> x) const {
    Point out(dim_);
    eval_(t, x, out);
    return out;
  }

  /// Analytic t -> ||V_t||_inf over all of R^d.
  const std::optional<std::function<double(double)>>& sup_norm() const { return sup_norm_; }
  const std::optional<ContinuityCertificate>& certificate() const { return certificate_; }
  /// Certificate whose modulus classifies as Osgood, if any.
  std::optional<ContinuityCertificate> osgood_certificate() const;
  const std::optional<Box>& sampling_box() const { return box_; }
  /// Stream function Psi(t,x) of a planar divergence-free field,
  /// V = (dPsi/dy, -dPsi/dx).
  const std::optional<std::function<double(double, double, double)>>& stream_function() const {
    return stream_;
  }
  bool divergence_free() const { return stream_.has_value(); }

  VectorField& with_sup_norm(std::function<double(double)> f);
  VectorField& with_certificate(ContinuityCertificate c);
  VectorField& without_certificate();
  VectorField& with_sampling_box(Box b);
  VectorField& with_stream_function(std::function<double(double, double, double)> psi);

  /// Field -V(t0 - tau, x) on tau in [0, t0]; used for backward integration.
  VectorField time_reversed(double t0) const;
  /// Pointwise difference V - W (no certificates carried over).
  friend VectorField operator-(const VectorField& v, const VectorField& w);

 private:
  std::string name_;
  std::size_t dim_;
  double horizon_;
  FieldEvaluator eval_;
  std::optional<std::function<double(double)>> sup_norm_;
  std::optional<ContinuityCertificate> certificate_;
  std::optional<Box> box_;
  std::optional<std::function<double(double, double, double)>> stream_;
};

/// Spot check of the continuity certificate on deterministic pseudo-random
/// pairs in the sampling box (half of them at distance below 1). Returns the
/// worst ratio |V(t,x)-V(t,y)| / (C(t) rho(|x-y|)); pairs with a zero
/// denominator count only if the numerator is nonzero (ratio +inf).
double certificate_worst_ratio(const VectorField& v, std::size_t pairs, unsigned seed = 7);

}  // namespace ctlab
