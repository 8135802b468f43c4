#pragma once

#include <filesystem>
#include <optional>
#include <variant>

#include "spcell/field.hpp"

namespace spcell {

/** Physical constants of the model.  Defaults are the dimensionless system
 *  hbar = m = 1, e = -1. */
struct PhysicalUnits {
    double hbar = 1.0;
    double mass_e = 1.0;
    double charge_e = -1.0;

    double abs_e() const { return std::abs(charge_e); }
    void validate() const;
};

/// Isotropic Gaussian charge shape of width sigma, unit total charge.
struct GaussianProfile {
    double sigma = 0.3;
};

/**
 * Radial charge shape tabulated as (radius, density) samples, interpolated
 * by a cubic Hermite (Catmull-Rom slopes).  Values beyond the last radius
 * are 0; below the first radius the first value is held.  The table is
 * normalized so the species carries exactly its nominal charge.
 */
struct TabulatedProfile {
    std::vector<double> r;
    std::vector<double> rho;

    static TabulatedProfile load(const std::filesystem::path& path);
    static TabulatedProfile from_samples(std::vector<double> r, std::vector<double> rho);

    double value(double radius) const;          ///< interpolated density
    double total_charge() const;                ///< 4 pi int r^2 rho dr
    /// int_0^R 4 pi r^2 rho(r) sinc(kr) dr / total_charge()
    double shape_factor(double k) const;
    /// 4 pi int_0^R r^3 |rho(r)| dr, the radial first-moment integral
    double radial_first_moment(double upto_radius) const;
    double last_radius() const { return r.empty() ? 0.0 : r.back(); }
};

/// Uniform background: the species' charge spread evenly over the cell.
/// Realizes the jellium configurations; only the zero mode survives
/// periodization.
struct UniformProfile {};

using Profile = std::variant<GaussianProfile, TabulatedProfile, UniformProfile>;

/// Continuous Fourier transform of the profile at wavenumber k, normalized
/// to 1 at k = 0.  For the uniform background this is 1 at k = 0 and 0
/// elsewhere.
double profile_shape_factor(const Profile& p, double k);

struct IonSpecies {
    double Z = 1.0;      ///< charge number, > 0
    Profile profile;
    double mass = 1.0;   ///< stored for completeness, unused by the static solver
    Vec3 position = Vec3::Zero(); ///< fractional coordinates in the cell box

    void validate(const Cell& cell) const;
};

struct ChargeState {
    double Z = 0.0; ///< total ion charge number per cell
    double target_norm() const { return std::sqrt(Z); }
};

inline double total_charge_number(const std::vector<IonSpecies>& species) {
    double Z = 0.0;
    for (const auto& s : species) Z += s.Z;
    return Z;
}

/**
 * Lattice-periodized density of one species centered at its position,
 * sampled on the cell.  Computed in Fourier space via Poisson summation:
 * the coefficient at mode k is the continuous transform of the profile at
 * k times e^{i k.x_j}, divided by the cell volume.  The integral over the
 * cell is Z |e|.
 *
 * Throws UnderResolved when a Gaussian width is below twice the largest
 * grid spacing.
 */
ScalarField periodize(const IonSpecies& species, const CellPtr& cell,
                      const PhysicalUnits& units = {});

/// Spectrum of periodize() without the inverse transform (unitary coefficients).
SpectrumField periodize_spectrum(const IonSpecies& species, const CellPtr& cell,
                                 const PhysicalUnits& units = {});

/// rho_plus = sum of periodized species densities.
ScalarField assemble_rho_plus(const std::vector<IonSpecies>& species, const CellPtr& cell,
                              const PhysicalUnits& units = {});

/// rho = rho_plus + e |psi|^2, flagged real.
ScalarField assemble_rho(const ScalarField& psi, const ScalarField& rho_plus,
                         const PhysicalUnits& units = {});

/// Rescale psi so that ||psi||^2 = Z exactly.  Throws ZeroField.
ScalarField project_to_manifold(const ScalarField& psi, double Z);

/**
 * Infrared admissibility report for the truncated directions (the d < 3
 * conditions on (rho_per(0,xi) - rho_per(0,0)) / |xi| near xi = 0).
 */
struct InfraredReport {
    bool pass = false;
    bool vacuous = false;        ///< d == 3, or a uniform background
    double moment = 0.0;         ///< transverse first-moment integral of the profile
    bool moment_finite = false;
    double quotient_norm = 0.0;  ///< quotient L2 norm over the cell's own transverse modes
    std::vector<double> refinement_norms; ///< quotient norms on refined radial grids
    double refinement_ratio = 0.0;        ///< last successive ratio; stable when <= 1.1
    std::string detail;
};

/**
 * Evaluate the infrared condition for one species.  For d = 3 the
 * condition is vacuous and the report passes trivially.  For d in {1, 2}
 * the quotient is summed over the discrete transverse modes with |xi| <= 1
 * (reported as quotient_norm) and its square-integrability is assessed by
 * refining the radial evaluation grid of the quotient integral; the check
 * passes when the refined norms are stable within 10% and the first-moment
 * integral of the profile is finite under the same refinement rule.
 */
InfraredReport check_condition_infrared(const IonSpecies& species, const CellPtr& cell,
                                        const PhysicalUnits& units = {});

} // namespace spcell
