// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/beam.hpp"

#include <cmath>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"
#include "trimdiff/quadrature.hpp"

namespace trimdiff::beam {

void SourceModel::validate() const
{
    if (nozzle_temperature <= 0.0)
        throw Error("SourceModel: nozzle temperature must be positive");
    if (carrier_mass <= 0.0)
        throw Error("SourceModel: carrier mass must be positive");
    if (cluster_size < 1)
        throw Error("SourceModel: cluster size must be >= 1");
    if (speed_ratio <= 1.0)
        throw Error("SourceModel: speed ratio must exceed 1");
}

double mean_speed(const SourceModel& src)
{
    return std::sqrt(5.0 * constants::k_boltzmann * src.nozzle_temperature / src.carrier_mass);
}

kinematics::BeamKinematics beam_kinematics(const SourceModel& src)
{
    src.validate();
    double mass = src.cluster_size * src.carrier_mass;
    return kinematics::BeamKinematics::from_mass_speed(mass, mean_speed(src));
}

double SpeedDistribution::operator()(double v) const
{
    if (v <= 0.0)
        return 0.0;
    double z = (v - v_mean) / v_width;
    return norm * std::exp(-0.5 * z * z);
}

void SpeedDistribution::quadrature(int n, std::vector<double>& nodes,
                                   std::vector<double>& weights) const
{
    double lo = std::max(0.0, v_mean - 8.0 * v_width);
    double hi = v_mean + 8.0 * v_width;
    auto g = trimdiff::quadrature::GaussLegendre(n).mapped(lo, hi);
    nodes = std::move(g.nodes);
    weights = std::move(g.weights);
}

SpeedDistribution speed_distribution(const SourceModel& src)
{
    src.validate();
    SpeedDistribution f;
    f.v_mean = mean_speed(src);
    f.v_width = f.v_mean / src.speed_ratio;
    // renormalize the positive-v truncation: integral of the unit Gaussian
    // over (0, inf) is (1 + erf(v_mean / (sqrt(2) width))) / 2
    double gauss = f.v_width * std::sqrt(2.0 * M_PI);
    double frac = 0.5 * (1.0 + std::erf(f.v_mean / (std::sqrt(2.0) * f.v_width)));
    f.norm = 1.0 / (gauss * frac);
    return f;
}

}  // namespace trimdiff::beam
