// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "trimdiff/potentials.hpp"

namespace trimdiff::twobody {

// The solvers work in hbar = 1 units: lengths in nm, energies in mK (k_B = 1).
// Only the PairPotential parameters and masses cross the boundary in SI.

/// Uniform radial grid r_i = i h, i = 0..n, h = r_max / n.
struct RadialGrid {
    double r_max;  // nm
    int n;         // intervals; n+1 samples

    double spacing() const { return r_max / n; }
    void validate() const;

    // r_max = 16 / kappa of the shallowest state sought (|e| in mK)
    static RadialGrid adaptive(double shallowest_energy_mk, double hbar2_over_2mu, int n);
};

/// Converged s-wave bound state; u is the reduced radial wave function on
/// the grid, normalized to unit integral of u^2 dr (r in nm).
struct BoundState2B {
    double energy;            // J, < 0
    double energy_mk;         // mK, < 0
    int nodes;                // interior node count = state index
    RadialGrid grid;
    std::vector<double> u;    // n+1 samples, u[0] = 0
};

struct SolverOptions {
    double relative_tolerance = 1e-12;
    bool verify_grid = true;   // re-solve at 2x resolution, throw GridTooCoarse on drift
    double grid_drift_tolerance = 1e-6;
};

// All s-wave bound states with energy in [e_window.first, e_window.second]
// (J, both < 0), ordered by energy. Throws NoBoundState when the potential
// supports no state at all (subcritical well); an empty list means states
// exist but none fall inside the window.
std::vector<BoundState2B> solve_bound_states(const potentials::PairPotential& potential,
                                             double reduced_mass, const RadialGrid& grid,
                                             std::pair<double, double> e_window,
                                             const SolverOptions& opt = {});

// Zero-energy scattering length from the asymptotic u(r) ~ r - a, fitted on
// the outer 10% of the grid. Returns a in m.
double scattering_length(const potentials::PairPotential& potential, double reduced_mass,
                         const RadialGrid& grid, const SolverOptions& opt = {});

/// Rank-one separable (UPA) form factor g(p) = (p^2/2mu + |E_b|) phi(p),
/// phi the spherical Fourier-Bessel transform of u(r)/r. Either tabulated on
/// a uniform p grid with local cubic interpolation, or analytic Yamaguchi.
struct FormFactor {
    enum class Kind { tabulated, yamaguchi };

    Kind kind = Kind::tabulated;
    std::vector<double> p;      // 1/nm, uniform, tabulated only
    std::vector<double> g;      // values at p
    double e_bind_mk = 0.0;     // two-body energy the UPA reproduces (mK, < 0)
    double hbar2_over_2mu = 0.0;  // mK nm^2
    double yamaguchi_b = 0.0;   // 1/nm, analytic kind only

    double operator()(double momentum) const;  // 0 beyond the tabulated range

    static FormFactor yamaguchi_analytic(double b_inv_nm, double e_bind_mk,
                                         double hbar2_over_2mu);
};

/// Uniform momentum grid for tabulated form factors.
struct MomentumGrid {
    double p_max;  // 1/nm
    int n;         // intervals; n+1 samples
};

// Builds the UPA form factor from a converged bound state. Throws
// QuadratureNotConverged when halving the radial resolution moves any
// tabulated value by more than 1e-6 relative (scale-referenced).
FormFactor upa_form_factor(const BoundState2B& state, double reduced_mass,
                           const MomentumGrid& p_grid);

}  // namespace trimdiff::twobody
