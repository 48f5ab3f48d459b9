#include "stefan/errors.hpp"

namespace stefan {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid_parameter";
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::QuadratureFailure: return "quadrature_failure";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::NoRoot: return "no_root";
    case ErrorCode::BracketFailure: return "bracket_failure";
    case ErrorCode::ShootingFailure: return "shooting_failure";
    case ErrorCode::Config: return "config_error";
    case ErrorCode::Io: return "io_error";
  }
  return "unknown";
}

}  // namespace stefan
