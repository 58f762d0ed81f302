#pragma once

#include <cstddef>

#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

enum class CertificatePolicy {
  require,  ///< the field must carry an Osgood certificate
  assume,   ///< the caller asserts uniqueness; used to show what fails without it
};

struct EndpointReport {
  /// d(mu_T, (X_0^T)# mu_0).upper() between the first and last nodes.
  double endpoint_defect = 0.0;
  /// max over node pairs i < j of d(mu_j, (X_{t_i}^{t_j})# mu_i).upper().
  double worst_pair_defect = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  std::size_t pairs = 0;
};

/// Checks mu_t = (X_s^t)# mu_s on every pair of grid nodes. Throws
/// PreconditionError under CertificatePolicy::require when the field has no
/// Osgood certificate.
EndpointReport endpoint_transport_check(const VectorField& v, const MeasureCurve& mu, const TestFamily& family,
                                        CertificatePolicy policy = CertificatePolicy::require,
                                        const IntegrateOptions& opt = {});

}  // namespace ctlab
