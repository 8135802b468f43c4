#pragma once

#include "spcell/densities.hpp"
#include "spcell/spectral.hpp"

namespace spcell {

/**
 * A point of the constrained model: the electron field psi on the manifold
 * ||psi||^2 = Z together with the ion species (whose positions enter the
 * cached rho_plus).  All fields share one cell.
 */
struct Configuration {
    ScalarField psi;
    std::vector<IonSpecies> ions;
    PhysicalUnits units;
    ScalarField rho_plus; ///< cached sum of periodized ion densities
    double Z = 0.0;       ///< total ion charge number

    const CellPtr& cell() const { return psi.cell(); }
};

/**
 * Validates and assembles a Configuration.  Z must be positive, psi must
 * satisfy ||psi||^2 = Z to 1e-10 relative (or pass project = true to
 * rescale), and reduced-dimension cells carry at most one ion.
 */
Configuration make_configuration(ScalarField psi, std::vector<IonSpecies> ions,
                                 const PhysicalUnits& units = {}, bool project = false);

/// Same ions and cached densities, new electron field.
Configuration with_psi(const Configuration& base, ScalarField psi);

/// New fractional ion positions; reassembles rho_plus.
Configuration with_positions(const Configuration& base, const std::vector<Vec3>& fractional);

struct EnergyBreakdown {
    double kinetic = 0.0; ///< (hbar^2/2m) int |grad psi|^2
    double coulomb = 0.0; ///< (1/2) ||Lambda rho||^2
    double total() const { return kinetic + coulomb; }
};

/** Tangent vector at psi0: a field with <tau, psi0> = 0 (complex inner
 *  product).  Use make_tangent to project a raw field. */
struct TangentVector {
    ScalarField tau;
};

TangentVector make_tangent(const ScalarField& psi0, const ScalarField& raw);

/**
 * Energy per cell, evaluated spectrally.  The Coulomb part is always the
 * dimension-uniform (1/2)||Lambda rho||^2; it equals (1/2) int phi rho with
 * phi = inv_laplacian(rho).  Throws NonNeutral for charge-imbalanced rho.
 */
EnergyBreakdown energy(const Configuration& config);

/**
 * Unconstrained L2 gradient of U over (Re psi, Im psi), in the factor-2
 * convention: dU/dPsi = -2 (hbar^2/2m) Delta psi + 2 e phi psi.
 */
ScalarField grad_psi(const Configuration& config);

/// Per-ion energy gradient dU/dx_j = -<phi, grad rho_per_j(. - x_j)>, Cartesian.
std::vector<Vec3> grad_ions(const Configuration& config);

/// dU/dx_j from precomputed spectra (no transforms).
std::vector<Vec3> forces_from_spectra(const std::vector<SpectrumField>& species_hat,
                                      const SpectrumField& rho_hat);

/// H psi = -(hbar^2/2m) Delta psi + e phi psi for a given potential.
ScalarField apply_hamiltonian(const ScalarField& psi, const ScalarField& phi,
                              const PhysicalUnits& units = {});

/**
 * Stereographic chart on the sphere: psi_tau = sqrt(Z) (psi0 + eps tau) /
 * ||psi0 + eps tau||, with Z = ||psi0||^2.  Lands on the manifold exactly;
 * d/deps at 0 is tau.
 */
ScalarField chart_point(const ScalarField& psi0, const TangentVector& tau, double eps);

/**
 * Directional (Gateaux) derivative of U at psi0 along a tangent tau:
 *   D_tau U = int [ (hbar^2/2m)(grad tau . grad conj(psi0) + c.c.)
 *                   + e Lambda rho0 . Lambda(tau conj(psi0) + psi0 conj(tau)) ].
 * Throws NotTangent when |<tau, psi0>| exceeds 1e-8 relative.
 */
double directional_derivative(const Configuration& config, const TangentVector& tau);

/**
 * L2 norm of the chart remainder
 *   R(eps) = Lambda[ eps^2 |tau|^2 cos^2(a) - |psi0|^2 sin^2(a) ],
 * a = arctan(eps ||tau|| / ||psi0||).  The zero mode of the bracket cancels
 * exactly (checked to 1e-12 before applying Lambda); the norm is O(eps^2).
 */
double remainder_norm(const ScalarField& psi0, const TangentVector& tau, double eps);

} // namespace spcell
