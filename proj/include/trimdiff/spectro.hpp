// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "trimdiff/kinematics.hpp"

namespace trimdiff::spectro {

/// One measured diffraction-peak position.
struct PeakObservation {
    double phi_prime;        // incidence, rad
    double phi;              // measured peak angle, rad
    double sigma_phi;        // 1-sigma uncertainty, rad
    bool has_order_hint = false;
    int order_hint = 0;
};

enum class PeakLabel { unassigned, elastic, excitation };

const char* to_string(PeakLabel label);

struct LabeledObservation {
    PeakObservation obs;
    PeakLabel label = PeakLabel::unassigned;
    int order = 0;
};

// Matches each peak to the nearest predicted (order, channel) angle with the
// transition energy at 0 (elastic) or delta_e_guess (excitation). Ties break
// toward the elastic channel; residuals beyond 5 sigma stay unassigned.
// Throws AllUnassigned when no peak matches.
std::vector<LabeledObservation> assign_channels(
    const std::vector<PeakObservation>& observations,
    const kinematics::BeamKinematics& beam, double period, double delta_e_guess);

struct FitResult {
    double delta_e = 0.0;    // J
    double std_error = 0.0;  // J, from the scalar curvature
    double chi_square = 0.0;
    int dof = 0;             // assigned observations minus one
    std::vector<double> residuals;          // rad, one per assigned observation
    std::vector<LabeledObservation> used;   // the assigned observations fitted
};

// Weighted least squares for the single transition energy: minimizes
// sum_i [(phi_i - phi_pred(delta_e; n_i, phi'_i)) / sigma_i]^2 over the
// assigned observations by Gauss-Newton, seeded from the closed-form
// zeroth-order inversion. Throws NonIdentifiable when no excitation peak
// constrains delta_e (only phi' = 0 zeroth-order data), NoConvergence when
// the iteration stalls.
FitResult fit_transition_energy(const std::vector<LabeledObservation>& labeled,
                                const kinematics::BeamKinematics& beam, double period);

// Chi-square objective and its analytic d(chi^2)/d(delta_e), exposed for
// derivative verification.
double objective(const std::vector<LabeledObservation>& labeled,
                 const kinematics::BeamKinematics& beam, double period, double delta_e);
double objective_gradient(const std::vector<LabeledObservation>& labeled,
                          const kinematics::BeamKinematics& beam, double period,
                          double delta_e);

}  // namespace trimdiff::spectro
