// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/potentials.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "trimdiff/errors.hpp"
#include "trimdiff/keyvalue.hpp"

namespace trimdiff::potentials {

const char* to_string(PotentialForm f)
{
    switch (f) {
        case PotentialForm::square_well: return "square_well";
        case PotentialForm::yamaguchi: return "yamaguchi";
        case PotentialForm::repulsion_dispersion: return "repulsion_dispersion";
    }
    return "?";
}

PotentialForm potential_form_from_string(const std::string& s)
{
    if (s == "square_well")
        return PotentialForm::square_well;
    if (s == "yamaguchi")
        return PotentialForm::yamaguchi;
    if (s == "repulsion_dispersion")
        return PotentialForm::repulsion_dispersion;
    throw ParseError("unknown potential form '" + s + "'");
}

void PairPotential::validate() const
{
    switch (form) {
        case PotentialForm::square_well:
            if (well_range <= 0.0)
                throw Error("square_well: range R must be positive");
            break;
        case PotentialForm::yamaguchi:
            if (yamaguchi_inverse_range <= 0.0)
                throw Error("yamaguchi: inverse range b must be positive");
            break;
        case PotentialForm::repulsion_dispersion:
            if (repulsion_rate <= 0.0)
                throw Error("repulsion_dispersion: rate a must be positive");
            if (damping_onset <= 0.0)
                throw Error("repulsion_dispersion: damping onset r_d must be positive");
            break;
    }
}

double damping_switch(int k, double x)
{
    if (x <= 0.0)
        return 0.0;
    // 1 - exp(-x) sum_{j<=k} x^j/j!; for large x the sum underflows the
    // exponential and the switch is 1 to machine precision
    if (x > 2.0 * k + 100.0)
        return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j <= k; ++j) {
        term *= x / j;
        sum += term;
    }
    double f = 1.0 - std::exp(-x) * sum;
    // guard cancellation at tiny x: leading order x^{k+1}/(k+1)!
    if (f < 1e-13) {
        double lead = term * x / (k + 1);
        f = lead * std::exp(-x);
    }
    return f;
}

double evaluate(const PairPotential& p, double r)
{
    if (r <= 0.0)
        throw Error("evaluate: r must be positive");
    switch (p.form) {
        case PotentialForm::square_well:
            return r < p.well_range ? -p.well_depth : 0.0;
        case PotentialForm::yamaguchi:
            throw Error("evaluate: yamaguchi potential is nonlocal (momentum space only)");
        case PotentialForm::repulsion_dispersion: {
            double x = r / p.damping_onset;
            double r2 = r * r;
            double r6 = r2 * r2 * r2;
            double v = p.repulsion_amplitude * std::exp(-p.repulsion_rate * r);
            v -= damping_switch(6, x) * p.c6 / r6;
            v -= damping_switch(8, x) * p.c8 / (r6 * r2);
            v -= damping_switch(10, x) * p.c10 / (r6 * r2 * r2);
            return v;
        }
    }
    throw Error("evaluate: unreachable");
}

PairPotential load_potential(const std::string& text)
{
    auto doc = keyvalue::Document::parse(text);
    auto& sec = doc.section(doc.has_section("potential") ? "potential" : "");
    return read_potential_section(sec);
}

PairPotential read_potential_section(const keyvalue::Section& sec)
{
    PairPotential p;
    p.form = potential_form_from_string(sec.get_string("form"));
    switch (p.form) {
        case PotentialForm::square_well:
            p.well_depth = sec.get_double("V0");
            p.well_range = sec.get_double("R");
            break;
        case PotentialForm::yamaguchi:
            p.yamaguchi_strength = sec.get_double("lambda");
            p.yamaguchi_inverse_range = sec.get_double("b");
            break;
        case PotentialForm::repulsion_dispersion:
            p.repulsion_amplitude = sec.get_double("A");
            p.repulsion_rate = sec.get_double("a");
            p.c6 = sec.get_double("C6");
            p.c8 = sec.get_double("C8");
            p.c10 = sec.get_double("C10");
            p.damping_onset = sec.get_double("r_d");
            break;
    }
    sec.reject_unknown("potential block");
    p.validate();
    return p;
}

PairPotential load_potential_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open potential file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_potential(ss.str());
}

std::string save_potential(const PairPotential& p)
{
    using keyvalue::format_double;
    std::ostringstream out;
    out << "form = " << to_string(p.form) << "\n";
    switch (p.form) {
        case PotentialForm::square_well:
            out << "V0 = " << format_double(p.well_depth) << "\n";
            out << "R = " << format_double(p.well_range) << "\n";
            break;
        case PotentialForm::yamaguchi:
            out << "lambda = " << format_double(p.yamaguchi_strength) << "\n";
            out << "b = " << format_double(p.yamaguchi_inverse_range) << "\n";
            break;
        case PotentialForm::repulsion_dispersion:
            out << "A = " << format_double(p.repulsion_amplitude) << "\n";
            out << "a = " << format_double(p.repulsion_rate) << "\n";
            out << "C6 = " << format_double(p.c6) << "\n";
            out << "C8 = " << format_double(p.c8) << "\n";
            out << "C10 = " << format_double(p.c10) << "\n";
            out << "r_d = " << format_double(p.damping_onset) << "\n";
            break;
    }
    return out.str();
}

void SurfaceInteraction::validate() const
{
    if (c3 < 0.0)
        throw Error("SurfaceInteraction: C3 must be >= 0");
    if (l_min <= 0.0)
        throw Error("SurfaceInteraction: l_min must be positive");
}

double SurfaceInteraction::wall_potential(double l) const
{
    double lc = l < l_min ? l_min : l;
    return -c3 / (lc * lc * lc);
}

}  // namespace trimdiff::potentials
