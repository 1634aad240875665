// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "trimdiff/beam.hpp"
#include "trimdiff/grating.hpp"
#include "trimdiff/kinematics.hpp"

namespace trimdiff::diffraction {

enum class Channel { elastic, excitation };

struct PatternPeak {
    int order = 0;
    double angle = 0.0;      // rad, from the grating equation
    double intensity = 0.0;  // incident flux = 1
};

/// Stick pattern of one channel at one incidence. closed_slit marks the
/// geometric closure state (empty peak list, not an error).
struct DiffractionPattern {
    Channel channel = Channel::elastic;
    double delta_e = 0.0;  // J, 0 for elastic
    std::vector<PatternPeak> peaks;
    bool closed_slit = false;
};

/// Phenomenological edge-localized excitation amplitude:
///   a(x) = edge_amplitude * xi(l_wall) * [e^{-x/w} + e^{-(s_eff-x)/w}] tau(x)
/// with the wall-grazing enhancement xi = 1 + grazing_gain * l_wall / t.
struct ExcitationModel {
    double edge_amplitude = 0.05;        // eta
    double localization_length = 2e-9;   // w, m
    double grazing_gain = 0.15;          // c_g

    void validate() const;
};

// Elastic Fraunhofer pattern: I_n = |int tau(x) e^{-i dk_n x} dx|^2 /
// (d cos phi')^2 at the exact grating-equation angles of allowed orders,
// dk_n = 2 pi n / (d cos phi').
DiffractionPattern elastic_pattern(const kinematics::BeamKinematics& beam,
                                   const grating::GratingGeometry& geom,
                                   const potentials::SurfaceInteraction& surface,
                                   double phi_prime,
                                   const grating::EikonalOptions& opt = {});

// Excitation-channel pattern with the edge-localized amplitude, emitted at
// the inelastic angles of the channel's final wavelength.
DiffractionPattern excitation_pattern(const kinematics::BeamKinematics& beam,
                                      const grating::GratingGeometry& geom,
                                      const potentials::SurfaceInteraction& surface,
                                      double phi_prime,
                                      const kinematics::InternalChannel& channel,
                                      const ExcitationModel& model,
                                      const grating::EikonalOptions& opt = {});

struct TransmissionPoint {
    double phi_prime = 0.0;
    double total = 0.0;      // sum of I_n over allowed orders
    double geometric = 0.0;  // geometric-optics baseline
};

// Per-angle summed transmission of one channel (elastic when model is
// null); closed incidences contribute zero.
std::vector<TransmissionPoint> total_transmission(
    const kinematics::BeamKinematics& beam, const grating::GratingGeometry& geom,
    const potentials::SurfaceInteraction& surface, const std::vector<double>& phi_scan,
    const kinematics::InternalChannel& channel, const ExcitationModel* model,
    const grating::EikonalOptions& opt = {});

struct SmearedSpectrum {
    std::vector<double> phi;        // uniform grid, rad
    std::vector<double> intensity;  // per-rad density
};

struct AngleGrid {
    double phi_min;
    double phi_max;
    int n;  // bins
};

// Beam-averaged angular spectrum: patterns sampled over the source speed
// distribution, each stick deposited as a bin-integrated Gaussian of width
// sigma_res (nearest-bin sticks when sigma_res = 0). Total flux inside the
// grid is conserved.
SmearedSpectrum convolve_with_beam(
    const std::function<std::vector<DiffractionPattern>(double)>& patterns_at_speed,
    const beam::SourceModel& source, double sigma_res, const AngleGrid& grid,
    int n_speed = 64);

}  // namespace trimdiff::diffraction
