// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "trimdiff/twobody.hpp"

namespace trimdiff::threebody {

// Momentum-space Faddeev bound-state solver for three identical bosons with
// a rank-one separable pairwise force. Internally hbar = 1, lengths in nm,
// energies in mK; only masses and reported energies cross the boundary in SI.

/// Gauss-Legendre spectator-momentum mesh mapped to [0, q_max] by the
/// rational map q = q_bar (1+x) / (1 - x + 2 q_bar / q_max), which puts
/// half the nodes below q_bar.
struct MomentumMesh {
    std::vector<double> q;  // nodes, 1/nm, strictly increasing
    std::vector<double> w;  // mapped weights, > 0
    int n_theta = 40;       // angular quadrature order
    double q_bar = 0.0;     // map parameters, kept for refinement checks
    double q_max = 0.0;

    void validate() const;
    static MomentumMesh rational(double q_bar, double q_max, int n_q, int n_theta = 40);
};

/// Separable two-body interaction lambda |g><g| with the strength fixed by
/// the pole condition tau(e_bind) = infinity.
struct SeparableInteraction {
    twobody::FormFactor g;
    double hm = 0.0;                // hbar^2/m = hbar^2/2mu, mK nm^2
    double inverse_strength = 0.0;  // 1/lambda_s, internal units
};

// Calibrates 1/lambda_s = Sigma(e_bind) for the form factor's two-body
// energy. Throws StrengthNotCalibrated when the pole condition cannot be
// satisfied to 1e-8 relative (non-negative e_bind or unconverged Sigma).
SeparableInteraction calibrate_interaction(const twobody::FormFactor& g, double mass_kg);

// Same interaction with the strength multiplied by s (1/lambda divided).
SeparableInteraction scale_strength(const SeparableInteraction& v, double s);

// Dispersion integral Sigma(e) = 4 pi int g^2(p) p^2 / (e - hm p^2) dp, e <= 0.
double sigma_integral(const SeparableInteraction& v, double e_mk);

// Two-body propagator tau(e) = 1 / (1/lambda_s - Sigma(e)), e < 0.
double two_body_tau(const SeparableInteraction& v, double e_mk);

// Dimer energy of the (possibly rescaled) interaction: the pole of tau on
// (-inf, 0). Returns NaN when the strength binds no two-body state.
double dimer_energy(const SeparableInteraction& v);

// Zero-energy scattering length a = (2 pi)^2 mu g(0)^2 tau(0), in nm.
double separable_scattering_length(const SeparableInteraction& v);

// Angular integral Z(p,q;E) = 2 pi int_{-1}^{1} dx g(|q+p/2|) g(|p+q/2|)
//   / (E - hm (p^2 + q^2 + p q x)), Gauss-Legendre of order mesh.n_theta.
double angular_z(const SeparableInteraction& v, double p, double q, double e_mk,
                 int n_theta);

/// Homogeneous Faddeev equation at fixed energy, psi = K(E) psi, stored in
/// the similarity-transformed real-symmetric form
///   S_ij = -2 q_i q_j sqrt(w_i w_j |tau_i tau_j|) Z_ij,
/// which shares the spectrum of K_ij = 2 w_j q_j^2 tau_i Z_ij.
struct FaddeevKernel {
    double energy_mk = 0.0;
    MomentumMesh mesh;
    Eigen::MatrixXd sym;
    std::vector<double> tau;  // tau(E - 3/4 hm q_i^2)
};

// Builds the kernel at E (mK, < 0 and below the dimer pole). Rows are
// built concurrently when OpenMP is enabled.
FaddeevKernel build_kernel(const SeparableInteraction& v, double e_mk,
                           const MomentumMesh& mesh);
// Serial reference implementation; bitwise-identical entries by construction.
FaddeevKernel build_kernel_serial(const SeparableInteraction& v, double e_mk,
                                  const MomentumMesh& mesh);

struct Eigenpair {
    double value = 0.0;
    Eigen::VectorXd vector;
};

// Largest eigenvalue by shifted power iteration, residual |S v - l v| <
// 1e-10 max(1,|l|). Throws NoConvergence past max_iterations.
Eigenpair leading_eigenvalue(const FaddeevKernel& kernel, int max_iterations = 50000);

// Full spectrum of the symmetrized kernel, descending (dense oracle).
std::vector<double> dense_eigenvalues(const FaddeevKernel& kernel);

/// Trimer state: lambda(E) = 1 root with its Faddeev component psi(q),
/// normalized sum w_i psi_i^2 q_i^2 = 1.
struct TrimerState {
    double energy = 0.0;     // J
    double energy_mk = 0.0;  // mK
    int nodes = 0;           // sign changes of psi(q)
    std::vector<double> psi;
};

struct LambdaSample {
    double e_mk = 0.0;
    double lambda_max = 0.0;
};

struct TrimerSpectrum {
    std::vector<TrimerState> states;  // ordered by energy, deepest first
    std::vector<LambdaSample> curve;
};

struct FindOptions {
    int n_scan = 60;                     // log-spaced energy samples
    double relative_tolerance = 1e-8;    // on the located energies
    bool verify_mesh = false;            // re-solve at 2 N_q, throw MeshNotConverged
    double mesh_drift_tolerance = 1e-6;  // relative lambda_max drift allowed
};

// All trimer energies in the window (mK, both < 0). The scan is clamped
// below the dimer energy when the two-body subsystem is bound. Throws
// WindowEmpty when the window contains no state.
TrimerSpectrum find_trimer_states(const SeparableInteraction& v,
                                  std::pair<double, double> window_mk,
                                  const MomentumMesh& mesh, const FindOptions& opt = {});

/// One point of a strength scan: two-body and three-body observables at
/// strength scale s (dimer_mk is NaN when the dimer is unbound).
struct EfimovPoint {
    double strength = 0.0;
    double dimer_mk = 0.0;
    double a_nm = 0.0;
    std::vector<double> trimers_mk;
};

std::vector<EfimovPoint> efimov_diagnostics(const SeparableInteraction& base,
                                            const std::vector<double>& strengths,
                                            const MomentumMesh& mesh,
                                            double window_floor_mk,
                                            const FindOptions& opt = {});

// Efimov channel exponent s0: root of 8 sinh(pi s/6) = sqrt(3) s cosh(pi s/2).
double efimov_s0();
// Universal binding-energy ratio of successive states, exp(2 pi / s0).
double efimov_ratio();

}  // namespace trimdiff::threebody
