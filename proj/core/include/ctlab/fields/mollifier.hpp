#pragma once

#include <cstddef>

#include "ctlab/fields/vector_field.hpp"

namespace ctlab {

/// Standard bump exp(-1/(1 - s^2)) on (-1, 1), zero elsewhere (unnormalized).
double bump_profile(double s);
/// Derivative of bump_profile.
double bump_profile_derivative(double s);
/// Integral of bump_profile over [-1, 1].
double bump_integral();

/// Tensorized, normalized bump kernel g(z) = prod_k phi(z_k) / Z on [-1,1]^d.
class MollifierKernel {
 public:
  explicit MollifierKernel(std::size_t nodes_per_axis = 33);

  std::size_t nodes_per_axis() const { return nodes_; }
  double normalization() const { return norm_; }
  /// One-dimensional normalized profile phi(s) / Z.
  double profile(double s) const { return bump_profile(s) / norm_; }
  /// g(z) for z in R^d.
  double operator()(std::span<const double> z) const;
  /// Bound on the L1 norm of grad g in dimension d, including the 1% margin
  /// for the lattice quadrature: 1.01 * d * 2 phi(0) / Z.
  double lipschitz_constant(std::size_t dim) const;

 private:
  std::size_t nodes_;
  double norm_;
};

/// W^n(t,x) = n^d * integral of V(t,y) g(n(x-y)) dy, evaluated on the fixed
/// spatial lattice of spacing 2/(n * nodes) that meets the support cube of
/// side 2/n around x, with weights normalized to sum to one. The result
/// carries the Lipschitz certificate C_W(t) = n L_g ||V_t||_inf when V has an
/// analytic sup norm.
VectorField mollify(const VectorField& v, unsigned n, const MollifierKernel& g = MollifierKernel());

}  // namespace ctlab
