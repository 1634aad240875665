// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "trimdiff/potentials.hpp"

namespace trimdiff::grating {

/// Transmission grating of trapezoidal bars (SI units). The slit channel is
/// narrowest (slit_width) at the entrance face and widens with depth as the
/// walls recede at the wedge angle.
struct GratingGeometry {
    double period;       // d, m
    double slit_width;   // s0 at the narrow face, m
    double thickness;    // bar depth t along the beam, m
    double wedge_angle;  // beta, rad

    void validate() const;
};

/// Straight-ray shadow of one slit at incidence phi_prime.
struct SlitProjection {
    double phi_prime = 0.0;
    double s_eff = 0.0;   // projected open width, m
    double l_wall = 0.0;  // illuminated wall length on the grazed face, m
    bool closed = false;  // s_eff == 0
};

// Shadow geometry of the trapezoidal channel. With the slit [0, s0] at the
// entrance z = 0 and walls receding as -/+ z tan(beta), a ray at phi' > 0
// clears the downstream edge iff its entrance abscissa satisfies
//   x0 <= s0 - t (tan phi' - tan beta)   (when tan phi' > tan beta),
// so the open entrance width is w = s0 - t max(0, tan phi' - tan beta) and
// its projection perpendicular to the ray is s_eff = w cos phi'. The wall
// is grazed (l_wall = t / cos phi') exactly when tan phi' >= tan beta.
SlitProjection project_slit(const GratingGeometry& geom, double phi_prime);

// s_eff / (d cos phi'), the geometric-optics transmission in [0, 1].
double geometric_transmission(const GratingGeometry& geom, double phi_prime);

/// Complex transmission sampled at midpoints across the projected slit.
struct TransmissionSamples {
    std::vector<double> x;                   // m, in [0, s_eff]
    std::vector<std::complex<double>> tau;   // |tau| in {0} U (0, 1]
    SlitProjection projection;
};

struct EikonalOptions {
    int n_samples = 1024;               // transverse sample count
    int n_depth = 48;                   // quadrature order along the transit
    double opacity_phase = 2.0 * M_PI * 10.0;  // |phase| beyond which tau = 0
};

// Eikonal transmission function: tau(x) = exp(i phi_vdw(x)) on the open
// slit, with the phase accumulated along the straight transit past both
// walls, and tau = 0 where |phi_vdw| exceeds the opacity threshold.
TransmissionSamples slit_transmission_function(const GratingGeometry& geom,
                                               const potentials::SurfaceInteraction& surface,
                                               double speed, double phi_prime,
                                               const EikonalOptions& opt = {});

}  // namespace trimdiff::grating
