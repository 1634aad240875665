// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

namespace trimdiff::keyvalue {
class Section;
}

namespace trimdiff::potentials {

enum class PotentialForm { square_well, yamaguchi, repulsion_dispersion };

const char* to_string(PotentialForm f);
PotentialForm potential_form_from_string(const std::string& s);

/// Parameterized two-body interaction. All parameters in SI.
///
/// square_well:          V(r) = -V0 for r < R, 0 otherwise
/// yamaguchi:            rank-one separable, momentum form factor
///                       g(p) ~ 1/(p^2 + b^2); no local V(r)
/// repulsion_dispersion: V(r) = A exp(-a r)
///                              - sum_{n=3..5} f_2n(r/r_d) C_2n / r^2n
///                       with the incomplete-gamma damping switch
///                       f_k(x) = 1 - exp(-x) sum_{j<=k} x^j/j!
struct PairPotential {
    PotentialForm form = PotentialForm::square_well;

    // square_well
    double well_depth = 0.0;  // V0, J (> 0 means attractive)
    double well_range = 0.0;  // R, m

    // yamaguchi
    double yamaguchi_strength = 0.0;       // sign-carrying scale
    double yamaguchi_inverse_range = 0.0;  // b, 1/m

    // repulsion_dispersion
    double repulsion_amplitude = 0.0;  // A, J
    double repulsion_rate = 0.0;       // a, 1/m
    double c6 = 0.0;                   // J m^6
    double c8 = 0.0;                   // J m^8
    double c10 = 0.0;                  // J m^10
    double damping_onset = 0.0;        // r_d, m

    void validate() const;
};

// Local potential value V(r) in J. Defined for square_well and
// repulsion_dispersion; throws for yamaguchi (nonlocal, momentum-space only).
double evaluate(const PairPotential& p, double r);

// Tang-Toennies damping switch f_k(x), vanishing as x^{k+1} at x -> 0.
double damping_switch(int k, double x);

// Key-value config text: `form = <name>` plus `<param> = <value>` lines,
// `#` comments, SI units. Unknown or missing keys are errors.
PairPotential load_potential(const std::string& text);
PairPotential read_potential_section(const keyvalue::Section& sec);
PairPotential load_potential_file(const std::string& path);
std::string save_potential(const PairPotential& p);

/// Molecule-wall attraction -C3/l^3, clamped below l_min.
struct SurfaceInteraction {
    double c3 = 0.0;        // J m^3
    double l_min = 1e-10;   // m

    void validate() const;

    // V(l), clamped to V(l_min) for l < l_min
    double wall_potential(double l) const;
};

}  // namespace trimdiff::potentials
