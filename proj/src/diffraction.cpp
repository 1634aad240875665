// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/diffraction.hpp"

#include <cmath>
#include <complex>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"

namespace trimdiff::diffraction {

void ExcitationModel::validate() const
{
    if (!(edge_amplitude >= 0.0))
        throw Error("ExcitationModel: edge amplitude must be non-negative");
    if (!(localization_length > 0.0))
        throw Error("ExcitationModel: localization length must be positive");
    if (!(grazing_gain >= 0.0))
        throw Error("ExcitationModel: grazing gain must be non-negative");
}

namespace {

// Stick pattern from a sampled aperture amplitude: for each allowed order,
// I_n = |sum_j a_j e^{-i dk_n x_j} dx|^2 / (d cos phi')^2.
DiffractionPattern pattern_from_amplitude(const kinematics::BeamKinematics& beam,
                                          const grating::GratingGeometry& geom,
                                          double phi_prime, double lambda_out,
                                          const std::vector<double>& x,
                                          const std::vector<std::complex<double>>& a,
                                          Channel channel, double delta_e)
{
    DiffractionPattern out;
    out.channel = channel;
    out.delta_e = delta_e;
    double cos_p = std::cos(phi_prime);
    double period_proj = geom.period * cos_p;
    double dx = x.size() > 1 ? x[1] - x[0] : 0.0;
    auto range = kinematics::allowed_orders(phi_prime, beam.wavelength, lambda_out,
                                            geom.period);
    for (int n = range.n_min; n <= range.n_max; ++n) {
        double dk = 2.0 * M_PI * n / period_proj;
        std::complex<double> amp = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            amp += a[j] * std::polar(1.0, -dk * x[j]);
        // exact integral of the per-cell constant: dx sinc(dk dx / 2)
        double half = 0.5 * dk * dx;
        amp *= std::abs(half) > 1e-8 ? dx * std::sin(half) / half : dx;
        PatternPeak peak;
        peak.order = n;
        peak.angle = kinematics::diffraction_angle(n, phi_prime, beam.wavelength,
                                                   lambda_out, geom.period);
        peak.intensity = std::norm(amp) / (period_proj * period_proj);
        out.peaks.push_back(peak);
    }
    return out;
}

}  // namespace

DiffractionPattern elastic_pattern(const kinematics::BeamKinematics& beam,
                                   const grating::GratingGeometry& geom,
                                   const potentials::SurfaceInteraction& surface,
                                   double phi_prime, const grating::EikonalOptions& opt)
{
    auto proj = grating::project_slit(geom, phi_prime);
    if (proj.closed)
        return {Channel::elastic, 0.0, {}, true};
    double speed = beam.speed;
    auto tau = grating::slit_transmission_function(geom, surface, speed, phi_prime, opt);
    return pattern_from_amplitude(beam, geom, phi_prime, beam.wavelength, tau.x,
                                  tau.tau, Channel::elastic, 0.0);
}

DiffractionPattern excitation_pattern(const kinematics::BeamKinematics& beam,
                                      const grating::GratingGeometry& geom,
                                      const potentials::SurfaceInteraction& surface,
                                      double phi_prime,
                                      const kinematics::InternalChannel& channel,
                                      const ExcitationModel& model,
                                      const grating::EikonalOptions& opt)
{
    model.validate();
    double lambda_out = kinematics::final_wavelength(beam, channel);  // ChannelClosed
    auto proj = grating::project_slit(geom, phi_prime);
    if (proj.closed)
        return {Channel::excitation, channel.delta_e(), {}, true};
    double speed = beam.speed;
    auto tau = grating::slit_transmission_function(geom, surface, speed, phi_prime, opt);
    double s_eff = proj.s_eff;
    double w = model.localization_length;
    double xi = 1.0 + model.grazing_gain * proj.l_wall / geom.thickness;
    std::vector<std::complex<double>> a(tau.tau.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        double edge = std::exp(-tau.x[j] / w) + std::exp(-(s_eff - tau.x[j]) / w);
        a[j] = model.edge_amplitude * xi * edge * tau.tau[j];
    }
    return pattern_from_amplitude(beam, geom, phi_prime, lambda_out, tau.x, a,
                                  Channel::excitation, channel.delta_e());
}

std::vector<TransmissionPoint> total_transmission(
    const kinematics::BeamKinematics& beam, const grating::GratingGeometry& geom,
    const potentials::SurfaceInteraction& surface, const std::vector<double>& phi_scan,
    const kinematics::InternalChannel& channel, const ExcitationModel* model,
    const grating::EikonalOptions& opt)
{
    std::vector<TransmissionPoint> out;
    out.reserve(phi_scan.size());
    for (double phi : phi_scan) {
        TransmissionPoint pt;
        pt.phi_prime = phi;
        pt.geometric = grating::geometric_transmission(geom, phi);
        DiffractionPattern pat =
            model ? excitation_pattern(beam, geom, surface, phi, channel, *model, opt)
                  : elastic_pattern(beam, geom, surface, phi, opt);
        for (const auto& peak : pat.peaks)
            pt.total += peak.intensity;
        out.push_back(pt);
    }
    return out;
}

SmearedSpectrum convolve_with_beam(
    const std::function<std::vector<DiffractionPattern>(double)>& patterns_at_speed,
    const beam::SourceModel& source, double sigma_res, const AngleGrid& grid,
    int n_speed)
{
    if (!(sigma_res >= 0.0))
        throw Error("convolve_with_beam: resolution must be non-negative");
    if (grid.n < 2 || !(grid.phi_max > grid.phi_min))
        throw Error("convolve_with_beam: bad angle grid");
    auto dist = beam::speed_distribution(source);
    std::vector<double> v_nodes, v_weights;
    dist.quadrature(n_speed, v_nodes, v_weights);

    SmearedSpectrum spec;
    spec.phi.resize(grid.n);
    spec.intensity.assign(grid.n, 0.0);
    double dphi = (grid.phi_max - grid.phi_min) / grid.n;
    for (int k = 0; k < grid.n; ++k)
        spec.phi[k] = grid.phi_min + (k + 0.5) * dphi;

    auto deposit = [&](double angle, double flux) {
        if (flux == 0.0)
            return;
        if (sigma_res == 0.0) {
            int k = static_cast<int>(std::floor((angle - grid.phi_min) / dphi));
            if (k >= 0 && k < grid.n)
                spec.intensity[k] += flux / dphi;
            return;
        }
        // bin-integrated Gaussian keeps the deposited flux exact
        double inv = 1.0 / (sigma_res * std::sqrt(2.0));
        int k_lo = static_cast<int>(
            std::floor((angle - 8.0 * sigma_res - grid.phi_min) / dphi));
        int k_hi = static_cast<int>(
            std::ceil((angle + 8.0 * sigma_res - grid.phi_min) / dphi));
        k_lo = std::max(k_lo, 0);
        k_hi = std::min(k_hi, grid.n - 1);
        for (int k = k_lo; k <= k_hi; ++k) {
            double lo = grid.phi_min + k * dphi;
            double mass = 0.5
                          * (std::erf((lo + dphi - angle) * inv)
                             - std::erf((lo - angle) * inv));
            spec.intensity[k] += flux * mass / dphi;
        }
    };

    for (std::size_t iv = 0; iv < v_nodes.size(); ++iv) {
        double fw = v_weights[iv] * dist(v_nodes[iv]);
        if (fw == 0.0)
            continue;
        for (const auto& pat : patterns_at_speed(v_nodes[iv]))
            for (const auto& peak : pat.peaks)
                deposit(peak.angle, fw * peak.intensity);
    }
    return spec;
}

}  // namespace trimdiff::diffraction
