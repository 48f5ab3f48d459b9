#pragma once

#include <vector>

#include "stefan/profile.hpp"
#include "stefan/thermal.hpp"

namespace stefan {

/// Absolute tolerance targets for the kernel quadratures.
inline constexpr double kKernelETolerance = 1e-11;
inline constexpr double kKernelPhiTolerance = 1e-10;

/**
 * Integral kernels of the similarity problem for a profile u on [α₀, ξ]:
 *
 *   E(η) = exp(−(2/a) ∫_{α₀}^{η} s N*(u(s))/L*(u(s)) ds)
 *   Φ(η) = α₀^ν ∫_{α₀}^{η} E(v) / (v^ν L*(u(v))) dv
 *
 * sampled at every grid node of u.
 */
struct KernelTable {
  std::vector<double> eta;
  std::vector<double> E;
  std::vector<double> Phi;
};

/// Both kernels at all nodes of u in one cumulative sweep (O(n) panels).
/// The lower limit is u.start(); alpha0 only enters through α₀^ν.
KernelTable evaluate_kernels(const ProfileFunction& u, const CoefficientModel& model, double a, double nu,
                             double alpha0);

/// E(η, u); η must lie in [u.start(), u.front()].
double kernel_E(const ProfileFunction& u, const CoefficientModel& model, double a, double eta);

/// Φ(η, u); η must lie in [u.start(), u.front()].
double kernel_Phi(const ProfileFunction& u, const CoefficientModel& model, double a, double nu, double alpha0,
                  double eta);

/**
 * @brief Closed-form envelopes of E and Φ valid for every profile whose
 * values keep the model inside the given bounds, plus the Lipschitz
 * envelopes of E and Φ with respect to the supremum norm of u.
 */
class KernelBounds {
 public:
  KernelBounds(const ModelBounds& bounds, double a, double nu, double alpha0);

  double E_lo(double eta) const;
  double E_hi(double eta) const;
  double Phi_lo(double eta) const;
  double Phi_hi(double eta) const;
  /// |E(η,u) − E(η,w)| <= E_lipschitz(η)·‖u − w‖
  double E_lipschitz(double eta) const;
  /// |Φ(η,u) − Φ(η,w)| <= PhiTilde(η)·‖u − w‖
  double PhiTilde(double eta) const;

  const ModelBounds& model_bounds() const { return bounds_; }
  double alpha0() const { return alpha0_; }

 private:
  // α₀^ν/(2L) e^{kα₀²} k^{(ν−1)/2} [γ(s,kη²) − γ(s,kα₀²)]
  double phi_envelope(double L, double k, double eta) const;

  ModelBounds bounds_;
  double a_, nu_, alpha0_;
};

KernelBounds lemma_bounds(const ModelBounds& bounds, double a, double nu, double alpha0);

}  // namespace stefan
