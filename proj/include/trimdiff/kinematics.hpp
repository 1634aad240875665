// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace trimdiff::kinematics {

/// Center-of-mass kinematics of the incident molecular beam.
struct BeamKinematics {
    double mass;            // kg
    double speed;           // m/s
    double momentum;        // kg m/s
    double wavelength;      // m, de Broglie
    double kinetic_energy;  // J

    // Builds the derived quantities from mass and speed; throws on M<=0 or v<=0.
    static BeamKinematics from_mass_speed(double mass_kg, double speed_mps);
};

enum class ChannelLabel { elastic, excitation };

/// Internal-state channel of the scattering process.
struct InternalChannel {
    ChannelLabel label;
    double e_initial;  // J
    double e_final;    // J

    double delta_e() const { return e_final - e_initial; }

    static InternalChannel elastic(double e_state);
    static InternalChannel excitation(double e_initial, double e_final);
};

const char* to_string(ChannelLabel label);

/// One propagating diffraction order.
struct DiffractionOrder {
    int n;
    double angle;              // rad, in (-pi/2, pi/2)
    double parallel_momentum;  // kg m/s
};

// Outgoing de Broglie wavelength after an internal transition of delta_e:
// lambda = lambda' / sqrt(1 - delta_e/E_kin). Throws ChannelClosed when
// delta_e >= E_kin.
double final_wavelength(const BeamKinematics& beam, const InternalChannel& channel);

// sin(phi_n) = (lambda/lambda') sin(phi') + n lambda/d, solved for phi_n.
// Throws EvanescentOrder when the sine leaves [-1, 1].
double diffraction_angle(int n, double phi_incidence, double lambda_in, double lambda_out,
                         double period);

// Refraction of the zeroth order: sin(phi0)/sin(phi') = lambda/lambda'.
// Throws TotalReflection when the refracted sine exceeds unity.
double snell_angle(double phi_incidence, double lambda_in, double lambda_out);

// Inversion of the zeroth-order refraction for the transition energy:
// delta_e = E_kin (1 - sin^2 phi' / sin^2 phi0). Throws DegenerateIncidence
// at phi' = 0 where the zeroth orders coincide.
double energy_from_zeroth_order(double phi_incidence, double phi_zeroth, double kinetic_energy);

// Lattice momentum transfer: P2 = P2' + n 2 pi hbar / d.
double order_momentum(double parallel_momentum_in, int n, double period);

/// Contiguous range [n_min, n_max] of propagating orders.
struct OrderRange {
    int n_min;
    int n_max;

    bool contains(int n) const { return n >= n_min && n <= n_max; }
    int count() const { return n_max - n_min + 1; }
};

// All n for which diffraction_angle propagates, always a contiguous range.
OrderRange allowed_orders(double phi_incidence, double lambda_in, double lambda_out,
                          double period);

}  // namespace trimdiff::kinematics
