// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/kinematics.hpp"

#include <cmath>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"

namespace trimdiff::kinematics {

BeamKinematics BeamKinematics::from_mass_speed(double mass_kg, double speed_mps)
{
    if (mass_kg <= 0.0)
        throw Error("BeamKinematics: mass must be positive");
    if (speed_mps <= 0.0)
        throw Error("BeamKinematics: speed must be positive");
    BeamKinematics b;
    b.mass = mass_kg;
    b.speed = speed_mps;
    b.momentum = mass_kg * speed_mps;
    b.wavelength = 2.0 * M_PI * constants::hbar / b.momentum;
    b.kinetic_energy = b.momentum * b.momentum / (2.0 * mass_kg);
    return b;
}

InternalChannel InternalChannel::elastic(double e_state)
{
    return {ChannelLabel::elastic, e_state, e_state};
}

InternalChannel InternalChannel::excitation(double e_initial, double e_final)
{
    if (e_final <= e_initial)
        throw Error("InternalChannel: excitation requires e_final > e_initial");
    return {ChannelLabel::excitation, e_initial, e_final};
}

const char* to_string(ChannelLabel label)
{
    return label == ChannelLabel::elastic ? "elastic" : "excitation";
}

double final_wavelength(const BeamKinematics& beam, const InternalChannel& channel)
{
    double de = channel.delta_e();
    if (de >= beam.kinetic_energy)
        throw ChannelClosed("final_wavelength: delta_e >= kinetic energy, channel closed");
    if (de == 0.0)
        return beam.wavelength;
    return beam.wavelength / std::sqrt(1.0 - de / beam.kinetic_energy);
}

double diffraction_angle(int n, double phi_incidence, double lambda_in, double lambda_out,
                         double period)
{
    if (period <= 0.0 || lambda_in <= 0.0 || lambda_out <= 0.0)
        throw Error("diffraction_angle: period and wavelengths must be positive");
    if (std::abs(phi_incidence) >= M_PI / 2.0)
        throw Error("diffraction_angle: |phi'| must be below pi/2");
    double s = (lambda_out / lambda_in) * std::sin(phi_incidence)
               + static_cast<double>(n) * lambda_out / period;
    if (std::abs(s) > 1.0)
        throw EvanescentOrder("diffraction_angle: order " + std::to_string(n)
                              + " is evanescent");
    return std::asin(s);
}

double snell_angle(double phi_incidence, double lambda_in, double lambda_out)
{
    double s = (lambda_out / lambda_in) * std::sin(phi_incidence);
    if (std::abs(s) > 1.0)
        throw TotalReflection("snell_angle: refracted sine exceeds unity");
    return std::asin(s);
}

double energy_from_zeroth_order(double phi_incidence, double phi_zeroth, double kinetic_energy)
{
    if (phi_incidence == 0.0)
        throw DegenerateIncidence(
            "energy_from_zeroth_order: zeroth orders coincide at normal incidence");
    if (std::abs(phi_incidence) >= M_PI / 2.0 || std::abs(phi_zeroth) >= M_PI / 2.0
        || phi_zeroth == 0.0)
        throw Error("energy_from_zeroth_order: angles must lie in (0, pi/2) in magnitude");
    if ((phi_incidence > 0.0) != (phi_zeroth > 0.0))
        throw Error("energy_from_zeroth_order: angles must share a sign");
    double si = std::sin(phi_incidence);
    double s0 = std::sin(phi_zeroth);
    return kinetic_energy * (1.0 - si * si / (s0 * s0));
}

double order_momentum(double parallel_momentum_in, int n, double period)
{
    if (period <= 0.0)
        throw Error("order_momentum: period must be positive");
    return parallel_momentum_in
           + static_cast<double>(n) * 2.0 * M_PI * constants::hbar / period;
}

OrderRange allowed_orders(double phi_incidence, double lambda_in, double lambda_out,
                          double period)
{
    // |r sin(phi') + n lambda/d| <= 1 with r = lambda/lambda'
    double r = (lambda_out / lambda_in) * std::sin(phi_incidence);
    double step = lambda_out / period;
    int n_min = static_cast<int>(std::ceil((-1.0 - r) / step));
    int n_max = static_cast<int>(std::floor((1.0 - r) / step));
    // guard rounding at the evanescent boundary
    while (std::abs(r + n_min * step) > 1.0)
        ++n_min;
    while (std::abs(r + n_max * step) > 1.0)
        --n_max;
    while (std::abs(r + (n_min - 1) * step) <= 1.0)
        --n_min;
    while (std::abs(r + (n_max + 1) * step) <= 1.0)
        ++n_max;
    return {n_min, n_max};
}

}  // namespace trimdiff::kinematics
