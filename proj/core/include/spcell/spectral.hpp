#pragma once

#include <array>
#include <functional>

#include "spcell/field.hpp"

namespace spcell {

/**
 * Discrete Fourier transforms and multiplier operators.
 *
 * Conventions: synthesis uses the real-space factor e^{-i k.x}, so
 *   f(x_p) = N^{-1/2} sum_m F(m) e^{-i k(m).x_p},
 *   F(m)   = N^{-1/2} sum_p f(x_p) e^{+i k(m).x_p}.
 * The symmetric 1/sqrt(N) normalization makes the transform unitary:
 * grid and spectral L2 norms agree.  Derivatives multiply by -i k_i.
 */

SpectrumField forward(const ScalarField& f);
ScalarField inverse(const SpectrumField& F);

/// Coefficientwise product with a real symbol evaluated per mode.
SpectrumField apply_multiplier(const SpectrumField& F,
                               const std::function<double(const DualMode&)>& symbol);

/// Relative tolerance used by the charge-neutrality gate: a density is
/// accepted when |integral(rho)| <= tol * max(1, integral(|rho|)).
inline constexpr double kNeutralTol = 1e-8;

/// Throws NonNeutral if the DC component of rho exceeds the gate above.
void require_neutral(const ScalarField& rho, double tol = kNeutralTol);

/**
 * phi = (-Delta)^{-1} rho: divide coefficients by |k|^2 and drop the zero
 * mode, so the output has zero mean.  Requires a neutral input.
 */
ScalarField inv_laplacian(const ScalarField& rho, double tol = kNeutralTol);

/// Lambda = (-Delta)^{-1/2}: divide by |k|, zero mode removed.
ScalarField lambda_op(const ScalarField& rho, double tol = kNeutralTol);

/// -Delta f, multiplier |k|^2.
ScalarField neg_laplacian(const ScalarField& f);

/**
 * Spectral gradient (d_1 f, d_2 f, d_3 f).  The derivative symbols are odd,
 * so the Nyquist row of the differentiated axis is zeroed to keep real
 * fields real.
 */
std::array<ScalarField, 3> grad(const ScalarField& f);

/**
 * Enforce the Hermitian symmetry C(-m) = conj(C(m)) in place by averaging
 * each coefficient with the conjugate of its wrap-around partner.  Already
 * symmetric data is unchanged; afterwards inverse() yields a real field up
 * to roundoff.
 */
void hermitian_symmetrize(SpectrumField& F);

// Spectrum-level variants used by the energy and minimizer internals.
SpectrumField inv_laplacian_spectrum(const SpectrumField& rho_hat);
double dc_integral(const SpectrumField& F); ///< integral of the field, vol * C(0) / sqrt(N)

} // namespace spcell
