// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/grating.hpp"

#include <algorithm>
#include <cmath>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"
#include "trimdiff/quadrature.hpp"

namespace trimdiff::grating {

void GratingGeometry::validate() const
{
    if (!(period > 0.0) || !(slit_width > 0.0) || slit_width >= period)
        throw GeometryError("GratingGeometry: require 0 < slit_width < period");
    if (!(thickness > 0.0))
        throw GeometryError("GratingGeometry: thickness must be positive");
    if (!(wedge_angle >= 0.0) || !(wedge_angle < M_PI / 2.0))
        throw GeometryError("GratingGeometry: wedge angle must lie in [0, pi/2)");
    double base = (period - slit_width) + 2.0 * thickness * std::tan(wedge_angle);
    if (base >= period)
        throw GeometryError("GratingGeometry: bars merge at the wide face");
    // receding walls must leave material at the exit face
    if (2.0 * thickness * std::tan(wedge_angle) >= period - slit_width)
        throw GeometryError("GratingGeometry: bars vanish before the exit face");
}

SlitProjection project_slit(const GratingGeometry& geom, double phi_prime)
{
    geom.validate();
    if (!(std::abs(phi_prime) < M_PI / 2.0))
        throw GeometryError("project_slit: incidence must lie in (-pi/2, pi/2)");
    double phi = std::abs(phi_prime);  // mirror-symmetric channel
    double tan_p = std::tan(phi), tan_b = std::tan(geom.wedge_angle);
    double open_width = geom.slit_width
                        - geom.thickness * std::max(0.0, tan_p - tan_b);
    SlitProjection proj;
    proj.phi_prime = phi_prime;
    proj.s_eff = std::max(0.0, open_width) * std::cos(phi);
    proj.closed = proj.s_eff == 0.0;
    proj.l_wall = tan_p >= tan_b && !proj.closed ? geom.thickness / std::cos(phi) : 0.0;
    return proj;
}

double geometric_transmission(const GratingGeometry& geom, double phi_prime)
{
    auto proj = project_slit(geom, phi_prime);
    return proj.s_eff / (geom.period * std::cos(std::abs(phi_prime)));
}

TransmissionSamples slit_transmission_function(const GratingGeometry& geom,
                                               const potentials::SurfaceInteraction& surface,
                                               double speed, double phi_prime,
                                               const EikonalOptions& opt)
{
    if (!(speed > 0.0))
        throw GeometryError("slit_transmission_function: speed must be positive");
    if (opt.n_samples < 2 || opt.n_depth < 2)
        throw GeometryError("slit_transmission_function: sample counts too small");
    auto proj = project_slit(geom, phi_prime);
    if (proj.closed)
        throw GeometryError("slit_transmission_function: slit is closed at this incidence");

    double phi = std::abs(phi_prime);
    double cos_p = std::cos(phi), tan_p = std::tan(phi);
    double tan_b = std::tan(geom.wedge_angle), cos_b = std::cos(geom.wedge_angle);
    double t = geom.thickness, s0 = geom.slit_width;

    quadrature::GaussLegendre depth_rule(opt.n_depth);
    TransmissionSamples out;
    out.projection = proj;
    out.x.resize(opt.n_samples);
    out.tau.resize(opt.n_samples);
    double w_ent = proj.s_eff / cos_p;  // open width at the entrance face
    for (int j = 0; j < opt.n_samples; ++j) {
        out.x[j] = (j + 0.5) * proj.s_eff / opt.n_samples;
        // entrance abscissae measured from each wall; the mirrored forms keep
        // tau exactly symmetric at normal incidence
        double x0 = (j + 0.5) * w_ent / opt.n_samples;
        double u0 = (opt.n_samples - j - 0.5) * w_ent / opt.n_samples + (s0 - w_ent);
        // phase = -(1/hbar v) int (V_left + V_right) dz / cos phi'
        double integral = 0.0;
        double c = 0.5 * t, m = 0.5 * t;
        for (int k = 0; k < opt.n_depth; ++k) {
            double z = m + c * depth_rule.nodes[k];
            double l_left = (x0 + z * (tan_p + tan_b)) * cos_b;
            double l_right = (u0 + z * (tan_b - tan_p)) * cos_b;
            integral += c * depth_rule.weights[k]
                        * (surface.wall_potential(l_left) + surface.wall_potential(l_right));
        }
        double phase = -integral / (constants::hbar * speed * cos_p);
        out.tau[j] = std::abs(phase) > opt.opacity_phase
                         ? 0.0
                         : std::polar(1.0, phase);
    }
    if (phi_prime < 0.0)  // mirror image of the positive-incidence profile
        std::reverse(out.tau.begin(), out.tau.end());
    return out;
}

}  // namespace trimdiff::grating
