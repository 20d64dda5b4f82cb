#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "signtest/scatter.hpp"

namespace signtest {

/// Spectrum of a sign scatter: descending eigenvalues lambda, normalized
/// weights alpha_i = lambda_i / sqrt(sum lambda_j^2), and tau = tr(Sigma_U^2).
struct SpectralWeights {
  Vector lambda;  // descending, >= 0
  Vector alpha;   // sum alpha_i^2 = 1 (unless built as a truncated spectrum)
  double tau = 0.0;
};

/// Eigen-decompose a symmetric PSD sign scatter. Throws if tau = 0.
SpectralWeights spectral_weights(const Matrix& sigma_u);

/// Same, from eigenvalues supplied directly (they get sorted and clipped at 0).
SpectralWeights spectral_weights_from_eigenvalues(Vector lambda);

/// Weights of a truncated infinite spectrum, supplied as alpha directly with
/// sum alpha_i^2 <= 1; the Gaussian remainder coefficient absorbs the rest.
SpectralWeights truncated_weights(Vector alpha);

/// Draws of the mixed limit
///   T_inf = (1 - sum alpha_i^2)^{1/2} Z_0 + (1/sqrt 2) sum alpha_i (Z_i^2 - 1).
/// At finite p the Z_0 coefficient is exactly zero; it only matters for
/// truncated spectra. Throws if sum alpha_i^2 > 1 + 1e-8.
std::vector<double> sample_t_infinity(const SpectralWeights& weights,
                                      std::size_t count, RngStream& stream);

/// Draws of the Gaussian quadratic form Q_p = (sum lambda_i xi_i^2 - 1) /
/// sqrt(2 tau). Requires sum lambda_i = 1 within 1e-6; otherwise the spectrum
/// is rescaled to unit sum and *rescaled is set.
std::vector<double> sample_qp(const SpectralWeights& weights,
                              std::size_t count, RngStream& stream,
                              bool* rescaled = nullptr);

/// CLT gate tr(Sigma_U^4) / tr(Sigma_U^2)^2; always <= 1, and a vanishing
/// value forces the standard normal limit.
double clt_gate(const Matrix& sigma_u);

/// kappa4 = E[(U_1^T U_2)^4] / (E[(U_1^T U_2)^2])^2.
struct Kappa4Report {
  enum class Source { SphericalClosedForm, CompoundSymmetricExact, MonteCarlo };
  double value = 0.0;
  Source source = Source::MonteCarlo;
  std::optional<double> mc_stderr;  // delta-method stderr (MonteCarlo only)
  std::optional<double> tau;        // E[(U_1^T U_2)^2] when available
};

/// Spherical scatter: kappa4 = 3p/(p+2).
double kappa4_spherical(int p);

/// Compound-symmetric scatter, exact: m_k = E(A^{2k}) with
/// A^2 = (1+gamma)T/(1+gamma T), gamma = rho p/(1-rho), T ~ Beta(1/2,(p-1)/2),
/// integrated adaptively to 1e-10 absolute, then assembled through
///   E(V^2) = m2^2 + (1-m2)^2/(p-1)
///   E(V^4) = m4^2 + 6(m2-m4)^2/(p-1) + 3(1-2m2+m4)^2/((p-1)(p+1)).
Kappa4Report kappa4_compound_symmetric(int p, double rho);

/// Monte Carlo oracle: ratio of sample fourth to squared second moment of
/// V = U_1^T U_2 over `pairs` independent sign pairs, with delta-method
/// stderr. Signs are taken about the model's own location.
Kappa4Report kappa4_mc(const DistributionModel& model,
                       const ScatterSpec& scatter, std::size_t pairs,
                       RngStream& stream);

}  // namespace signtest
