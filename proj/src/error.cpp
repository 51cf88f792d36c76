#include "freegamma/error.hpp"

namespace fg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::BranchDomain: return "branch-domain";
    case ErrorKind::NotUnimodal: return "not-unimodal";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::InversionFailure: return "inversion-failure";
    case ErrorKind::NonAnalytic: return "non-analytic";
    case ErrorKind::InternalInconsistency: return "internal-inconsistency";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::ZeroCoefficient: return "zero-coefficient";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NotPositiveSemidefinite: return "not-positive-semidefinite";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::EigensolverFailure: return "eigensolver-failure";
  }
  return "unknown";
}

}  // namespace fg
