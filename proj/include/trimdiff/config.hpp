// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "trimdiff/beam.hpp"
#include "trimdiff/constants.hpp"
#include "trimdiff/diffraction.hpp"
#include "trimdiff/grating.hpp"
#include "trimdiff/potentials.hpp"

namespace trimdiff::config {

/// Grids, meshes, and tolerances shared by the solvers and scans.
struct Numerics {
    // two-body radial grid
    double r_max = 160e-9;  // m
    int n_radial = 100000;
    // form-factor tabulation grid (solver units: 1/nm)
    double p_max = 20.0;
    int n_p = 2000;
    // three-body spectator mesh (solver units: 1/nm) and energy window (mK)
    double q_bar = 0.1;
    double q_max = 120.0;
    int n_q = 160;
    int n_theta = 40;
    double window_floor_mk = -2000.0;
    double window_ceiling_mk = -1e-3;
    int n_scan = 60;
    // eikonal transmission sampling
    int n_samples = 1024;
    int n_depth = 48;
    double opacity_phase = 2.0 * M_PI * 10.0;
    // beam averaging
    double sigma_res = 0.0;  // rad
    int n_speed = 64;
};

/// Full run configuration. Every block is optional in the file; defaults
/// reproduce the 6 K / 100 nm setup (slit width and bar thickness are
/// artifact defaults, not published values).
struct RunConfig {
    beam::SourceModel source{6.0, constants::mass_he4, 3, 50.0};
    grating::GratingGeometry geometry{100e-9, 60e-9, 120e-9, 9.0 * M_PI / 180.0};
    potentials::SurfaceInteraction surface{0.0, 1e-10};
    std::optional<potentials::PairPotential> potential;
    diffraction::ExcitationModel excitation{};
    Numerics numerics{};
    std::string output_dir = ".";

    // Strict parse: unknown sections or keys are rejected by name.
    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::string& path);
};

}  // namespace trimdiff::config
