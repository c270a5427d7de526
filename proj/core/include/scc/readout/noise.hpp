#pragma once

namespace scc::readout {

/// NV- populations after spin-to-charge conversion for spin inputs ms = 0
/// and ms = 1 (beta0, beta1), and the probabilities of assigning NV- to
/// those outcomes under a finite-fidelity charge readout (beta*_tilde).
struct SCCPopulations {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta0_tilde = 0.0;
  double beta1_tilde = 0.0;

  /// Populations read out perfectly: tilde values equal the true ones.
  static SCCPopulations ideal(double beta0, double beta1) { return {beta0, beta1, beta0, beta1}; }
  /// Only the assignment probabilities are known.
  static SCCPopulations assigned(double beta0_tilde, double beta1_tilde) {
    return {beta0_tilde, beta1_tilde, beta0_tilde, beta1_tilde};
  }

  /// Throws InvalidArgument unless all four lie in [0, 1].
  void validate() const;
};

/// Spin readout noise of SCC readout, normalized to 1 at the projection limit:
///   sqrt((b0 + b1)(2 - b0 - b1) / (b0 - b1)^2).
/// Throws NoContrast when b0 == b1.
[[nodiscard]] double scc_noise(double beta0_tilde, double beta1_tilde);
[[nodiscard]] double scc_noise(const SCCPopulations &pops);

/// Photon-counting spin readout noise for mean counts alpha0, alpha1:
///   sqrt(1 + 2(a0 + a1) / (a0 - a1)^2).
/// Throws NoContrast when a0 == a1, InvalidArgument for negative counts.
[[nodiscard]] double conventional_noise(double alpha0, double alpha1);

/// Reference readout-noise values for conventional readout.
inline constexpr double kConventionalNanobeam = 10.6;
inline constexpr double kConventionalBulk = 20.0;

} // namespace scc::readout
