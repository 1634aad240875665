// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/spectro.hpp"

#include <cmath>
#include <limits>

#include "trimdiff/errors.hpp"

namespace trimdiff::spectro {

const char* to_string(PeakLabel label)
{
    switch (label) {
    case PeakLabel::unassigned: return "unassigned";
    case PeakLabel::elastic: return "elastic";
    case PeakLabel::excitation: return "excitation";
    }
    return "?";
}

namespace {

// Predicted angle and its derivative with respect to delta_e at fixed order.
// sin(phi_n) = lambda(delta_e) c with c = sin(phi')/lambda' + n/d and
// lambda = lambda' / sqrt(1 - delta_e/E).
struct Prediction {
    double angle;
    double d_angle;  // rad per J
};

Prediction predict(const kinematics::BeamKinematics& beam, double period, int n,
                   double phi_prime, double delta_e)
{
    double e = beam.kinetic_energy;
    if (delta_e >= e)
        throw ChannelClosed("predicted channel closed");
    double lambda_out = beam.wavelength / std::sqrt(1.0 - delta_e / e);
    double c = std::sin(phi_prime) / beam.wavelength + n / period;
    double s = lambda_out * c;
    if (std::abs(s) > 1.0)
        throw EvanescentOrder("predicted order evanescent");
    double d_lambda = 0.5 * lambda_out / (e - delta_e);
    return {std::asin(s), c * d_lambda / std::sqrt(1.0 - s * s)};
}

bool constrains_energy(const LabeledObservation& l)
{
    return l.label == PeakLabel::excitation && (l.order != 0 || l.obs.phi_prime != 0.0);
}

// Single-peak closed-form inversion: lambda from the grating equation, then
// delta_e = E (1 - (lambda'/lambda)^2). Returns NaN when degenerate.
double invert_single_peak(const kinematics::BeamKinematics& beam, double period,
                          const LabeledObservation& l)
{
    double c = std::sin(l.obs.phi_prime) / beam.wavelength + l.order / period;
    if (c == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    double lambda_out = std::sin(l.obs.phi) / c;
    if (!(lambda_out > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    double r = beam.wavelength / lambda_out;
    return beam.kinetic_energy * (1.0 - r * r);
}

}  // namespace

std::vector<LabeledObservation> assign_channels(
    const std::vector<PeakObservation>& observations,
    const kinematics::BeamKinematics& beam, double period, double delta_e_guess)
{
    if (observations.empty())
        throw Error("assign_channels: no observations");
    std::vector<LabeledObservation> out;
    out.reserve(observations.size());
    int assigned = 0;
    for (const auto& obs : observations) {
        if (!(obs.sigma_phi > 0.0))
            throw Error("assign_channels: peak uncertainty must be positive");
        LabeledObservation best;
        best.obs = obs;
        double best_res = std::numeric_limits<double>::infinity();
        for (PeakLabel label : {PeakLabel::elastic, PeakLabel::excitation}) {
            double de = label == PeakLabel::elastic ? 0.0 : delta_e_guess;
            if (!(de < beam.kinetic_energy))
                continue;  // closed channel predicts nothing
            double lambda_out = beam.wavelength / std::sqrt(1.0 - de / beam.kinetic_energy);
            auto range = kinematics::allowed_orders(obs.phi_prime, beam.wavelength,
                                                    lambda_out, period);
            int n_lo = obs.has_order_hint ? obs.order_hint : range.n_min;
            int n_hi = obs.has_order_hint ? obs.order_hint : range.n_max;
            for (int n = n_lo; n <= n_hi; ++n) {
                if (!range.contains(n))
                    continue;
                double angle = kinematics::diffraction_angle(n, obs.phi_prime,
                                                             beam.wavelength,
                                                             lambda_out, period);
                double res = std::abs(obs.phi - angle);
                // strictly better, or an exact tie resolved toward elastic
                if (res < best_res) {
                    best_res = res;
                    best.label = label;
                    best.order = n;
                }
            }
        }
        if (best_res > 5.0 * obs.sigma_phi)
            best.label = PeakLabel::unassigned;
        if (best.label != PeakLabel::unassigned)
            ++assigned;
        out.push_back(best);
    }
    if (assigned == 0)
        throw AllUnassigned("assign_channels: no peak within 5 sigma of a prediction");
    return out;
}

double objective(const std::vector<LabeledObservation>& labeled,
                 const kinematics::BeamKinematics& beam, double period, double delta_e)
{
    double chi2 = 0.0;
    for (const auto& l : labeled) {
        if (l.label == PeakLabel::unassigned)
            continue;
        double de = l.label == PeakLabel::excitation ? delta_e : 0.0;
        auto p = predict(beam, period, l.order, l.obs.phi_prime, de);
        double r = (l.obs.phi - p.angle) / l.obs.sigma_phi;
        chi2 += r * r;
    }
    return chi2;
}

double objective_gradient(const std::vector<LabeledObservation>& labeled,
                          const kinematics::BeamKinematics& beam, double period,
                          double delta_e)
{
    double g = 0.0;
    for (const auto& l : labeled) {
        if (l.label != PeakLabel::excitation)
            continue;
        auto p = predict(beam, period, l.order, l.obs.phi_prime, delta_e);
        double w = 1.0 / (l.obs.sigma_phi * l.obs.sigma_phi);
        g += -2.0 * w * (l.obs.phi - p.angle) * p.d_angle;
    }
    return g;
}

FitResult fit_transition_energy(const std::vector<LabeledObservation>& labeled,
                                const kinematics::BeamKinematics& beam, double period)
{
    std::vector<LabeledObservation> used;
    for (const auto& l : labeled)
        if (l.label != PeakLabel::unassigned)
            used.push_back(l);
    if (used.empty())
        throw NonIdentifiable("fit: no assigned observations");

    // identifiability: at least one excitation peak with sensitivity to the
    // transition energy (the phi' = 0 zeroth order is exactly degenerate)
    const LabeledObservation* seed = nullptr;
    for (const auto& l : used) {
        if (!constrains_energy(l))
            continue;
        if (!seed || l.obs.sigma_phi < seed->obs.sigma_phi)
            seed = &l;
    }
    if (!seed)
        throw NonIdentifiable("fit: transition energy unconstrained by the data");

    double e = beam.kinetic_energy;
    double delta_e = invert_single_peak(beam, period, *seed);
    if (!std::isfinite(delta_e) || delta_e >= 0.999 * e)
        delta_e = 0.0;

    double curvature = 0.0;
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        double num = 0.0;
        curvature = 0.0;
        for (const auto& l : used) {
            if (l.label != PeakLabel::excitation)
                continue;
            auto p = predict(beam, period, l.order, l.obs.phi_prime, delta_e);
            double w = 1.0 / (l.obs.sigma_phi * l.obs.sigma_phi);
            num += w * (l.obs.phi - p.angle) * p.d_angle;
            curvature += w * p.d_angle * p.d_angle;
        }
        if (!(curvature > 0.0))
            throw NonIdentifiable("fit: vanishing sensitivity to the transition energy");
        double step = num / curvature;
        // keep the channel open; damp steps that would close it
        double trial = delta_e + step;
        int halvings = 0;
        while (trial >= 0.999999 * e && halvings++ < 60) {
            step *= 0.5;
            trial = delta_e + step;
        }
        delta_e = trial;
        // dimensionless gradient: radians of weighted residual per relative
        // energy shift
        double grad_scaled = std::abs(num) * e;
        double curv_scaled = curvature * e * e;
        converged = grad_scaled < 1e-12 * std::max(1.0, curv_scaled)
                    || std::abs(step) < 1e-16 * std::max(std::abs(delta_e), 1e-6 * e);
    }
    if (!converged)
        throw NoConvergence("fit: Gauss-Newton did not converge");

    FitResult out;
    out.delta_e = delta_e;
    out.std_error = 1.0 / std::sqrt(curvature);
    out.chi_square = objective(used, beam, period, delta_e);
    out.dof = static_cast<int>(used.size()) - 1;
    for (const auto& l : used) {
        double de = l.label == PeakLabel::excitation ? delta_e : 0.0;
        auto p = predict(beam, period, l.order, l.obs.phi_prime, de);
        out.residuals.push_back(l.obs.phi - p.angle);
    }
    out.used = std::move(used);
    return out;
}

}  // namespace trimdiff::spectro
