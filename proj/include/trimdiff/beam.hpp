// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "trimdiff/kinematics.hpp"

namespace trimdiff::beam {

/// Supersonic-nozzle source: full enthalpy conversion of a monatomic
/// carrier gas, v = sqrt(5 k_B T0 / m_c), clusters of k atoms ride at the
/// carrier speed.
struct SourceModel {
    double nozzle_temperature;  // K
    double carrier_mass;        // kg
    int cluster_size = 1;       // atoms per cluster
    double speed_ratio = 50.0;  // v_mean / width

    void validate() const;
};

kinematics::BeamKinematics beam_kinematics(const SourceModel& src);

double mean_speed(const SourceModel& src);

/// Gaussian speed distribution truncated at v > 0 and renormalized.
struct SpeedDistribution {
    double v_mean;   // m/s
    double v_width;  // m/s
    double norm;     // renormalization of the truncated Gaussian

    double operator()(double v) const;

    // quadrature nodes/weights covering the distribution (Gauss-Legendre on
    // [max(0, v_mean - 8 width), v_mean + 8 width])
    void quadrature(int n, std::vector<double>& nodes, std::vector<double>& weights) const;
};

SpeedDistribution speed_distribution(const SourceModel& src);

}  // namespace trimdiff::beam
