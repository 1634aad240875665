// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance harness. Each numbered criterion prints exactly one
// PASS/FAIL line (with its runtime); the exit code is the failure count.
// The sample-potential spectrum is solved once up front and shared by the
// criteria that need the transition energy and the paper energy targets.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trimdiff/beam.hpp"
#include "trimdiff/config.hpp"
#include "trimdiff/constants.hpp"
#include "trimdiff/diffraction.hpp"
#include "trimdiff/errors.hpp"
#include "trimdiff/grating.hpp"
#include "trimdiff/kinematics.hpp"
#include "trimdiff/spectro.hpp"
#include "trimdiff/threebody.hpp"
#include "trimdiff/twobody.hpp"

using namespace trimdiff;
namespace cc = trimdiff::constants;

namespace {

constexpr double deg = M_PI / 180.0;
const double mu_he = 0.5 * cc::mass_he4;
const double hh2mu = units::hbar2_over_2mu_mk_nm2(mu_he);

using clock_type = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

beam::SourceModel trimer_source() { return {6.0, cc::mass_he4, 3, 50.0}; }

grating::GratingGeometry wedged_geometry() { return {100e-9, 60e-9, 120e-9, 9.0 * deg}; }

// ---------------------------------------------------------------------------
// shared sample-potential spectrum (criteria 2 and 6)
// ---------------------------------------------------------------------------

struct SampleSpectrum {
    double dimer_mk = 0.0;
    std::vector<double> trimers_mk;  // deepest first
    double solve_seconds = 0.0;
};

SampleSpectrum solve_sample_spectrum()
{
    auto t0 = clock_type::now();
    auto cfg = config::RunConfig::from_file(std::string(TRIMDIFF_SOURCE_DIR)
                                            + "/data/he_he_sample.cfg");
    twobody::RadialGrid grid{160.0, 100000};
    auto window = std::make_pair(units::mk_to_joule(-1e7), units::mk_to_joule(-1e-4));
    auto states = twobody::solve_bound_states(*cfg.potential, mu_he, grid, window);

    auto g = twobody::upa_form_factor(states.back(), mu_he, {20.0, 2000});
    auto v = threebody::calibrate_interaction(g, cc::mass_he4);
    auto mesh = threebody::MomentumMesh::rational(0.1, 120.0, 160, 40);
    auto spectrum = threebody::find_trimer_states(v, {-2000.0, -1e-3}, mesh);

    SampleSpectrum out;
    out.dimer_mk = states.back().energy_mk;
    for (const auto& s : spectrum.states)
        out.trimers_mk.push_back(s.energy_mk);
    out.solve_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------------------
// criterion 1: kinematics round trips and Eq. (2)/(3) consistency
// ---------------------------------------------------------------------------

Check criterion_1()
{
    Check c;
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double period = 100e-9;
    for (int rep = 0; rep < 10000; ++rep) {
        beam::SourceModel src{1.0 + 19.0 * u(rng), cc::mass_he4, 1 + rep % 4, 50.0};
        auto bk = beam::beam_kinematics(src);
        double phi_p = (u(rng) < 0.5 ? -1.0 : 1.0) * (1e-3 + 1.2 * u(rng));
        // keep the refracted zeroth order propagating: delta_e < E cos^2 phi'
        double cos_p = std::cos(phi_p);
        double de = (0.01 + 0.88 * u(rng)) * cos_p * cos_p * bk.kinetic_energy;
        auto channel = kinematics::InternalChannel::excitation(-de, 0.0);
        double lambda_out = kinematics::final_wavelength(bk, channel);

        double phi0 = kinematics::snell_angle(phi_p, bk.wavelength, lambda_out);
        double back = kinematics::energy_from_zeroth_order(phi_p, phi0, bk.kinetic_energy);
        c.require(std::abs(back - de) <= 1e-10 * de, "round trip drifts past 1e-10");

        auto range = kinematics::allowed_orders(phi_p, bk.wavelength, lambda_out, period);
        int n = range.n_min
                + static_cast<int>(u(rng) * (range.count() - 1) + 0.5);
        double angle =
            kinematics::diffraction_angle(n, phi_p, bk.wavelength, lambda_out, period);
        double p_out = 2.0 * M_PI * cc::hbar / lambda_out;
        double lhs = p_out * std::sin(angle);
        double rhs = kinematics::order_momentum(bk.momentum * std::sin(phi_p), n, period);
        c.require(std::abs(lhs - rhs) <= 1e-10 * p_out,
                  "momentum-transfer identity drifts past 1e-10");
    }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 2: micro-radian elastic/excitation separations
// ---------------------------------------------------------------------------

Check criterion_2(const SampleSpectrum& sample)
{
    Check c;
    c.require(sample.trimers_mk.size() >= 2, "spectrum has fewer than two trimer states");
    if (!c.ok)
        return c;
    double de = units::mk_to_joule(sample.trimers_mk[1] - sample.trimers_mk[0]);
    auto bk = beam::beam_kinematics(trimer_source());
    auto channel = kinematics::InternalChannel::excitation(-de, 0.0);
    double lambda_out = kinematics::final_wavelength(bk, channel);
    const double period = 100e-9;

    for (int n : {0, 1, 2}) {
        double elastic =
            kinematics::diffraction_angle(n, 0.0, bk.wavelength, bk.wavelength, period);
        double excited =
            kinematics::diffraction_angle(n, 0.0, bk.wavelength, lambda_out, period);
        c.require(std::abs(excited - elastic) < 1e-5,
                  "normal-incidence separation exceeds 1e-5 rad at n = "
                      + std::to_string(n));
    }
    double elastic20 = 20.0 * deg;
    double excited20 =
        kinematics::diffraction_angle(0, 20.0 * deg, bk.wavelength, lambda_out, period);
    c.require(std::abs(excited20 - elastic20) > 1e-4,
              "20 degree zeroth-order separation below 1e-4 rad");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 3: square-well oracle and observed Numerov order
// ---------------------------------------------------------------------------

// independent oracle: root of k cot(kR) = -kappa for the square well
double square_well_energy_oracle(double depth_mk, double range_nm)
{
    auto f = [&](double e_mk) {
        double k = std::sqrt((depth_mk - std::abs(e_mk)) / hh2mu);
        double kappa = std::sqrt(std::abs(e_mk) / hh2mu);
        return k / std::tan(k * range_nm) + kappa;
    };
    double lo = -depth_mk * (1.0 - 1e-12);
    std::vector<double> roots;
    double prev_e = lo, prev_f = f(lo);
    int steps = 400000;
    for (int i = 1; i <= steps; ++i) {
        double e = lo + (0.0 - lo) * i / (steps + 1.0);
        double fe = f(e);
        double k0 = std::sqrt((depth_mk - std::abs(prev_e)) / hh2mu) * range_nm;
        double k1 = std::sqrt((depth_mk - std::abs(e)) / hh2mu) * range_nm;
        bool pole = std::floor(k0 / M_PI) != std::floor(k1 / M_PI);
        if (!pole && prev_f * fe < 0.0) {
            double a = prev_e, b = e;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                if (f(a) * f(mid) <= 0.0)
                    b = mid;
                else
                    a = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_e = e;
        prev_f = fe;
    }
    return roots.front();
}

Check criterion_3()
{
    Check c;
    // analytic square well: 4x the critical depth, R on the radial grid
    double range = 0.3;
    double depth = M_PI * M_PI * hh2mu / (range * range);  // 4x critical
    potentials::PairPotential well;
    well.form = potentials::PotentialForm::square_well;
    well.well_depth = units::mk_to_joule(depth);
    well.well_range = range * units::nm;
    auto states = twobody::solve_bound_states(
        well, mu_he, {9.6, 32000},
        {units::mk_to_joule(-depth), units::mk_to_joule(-1e-6)});
    c.require(states.size() == 1, "well should hold exactly one state");
    if (!c.ok)
        return c;
    double oracle = square_well_energy_oracle(depth, range);
    c.require(std::abs(states[0].energy_mk - oracle) <= 1e-8 * std::abs(oracle),
              "energy differs from the transcendental root past 1e-8");

    // observed convergence order on a smooth potential (the discontinuous
    // well contaminates the observed exponent with an odd-order edge term),
    // via the Cauchy triplet log2 ratio under grid doubling
    auto cfg = config::RunConfig::from_file(std::string(TRIMDIFF_SOURCE_DIR)
                                            + "/data/he_he_sample.cfg");
    twobody::SolverOptions opt;
    opt.verify_grid = false;
    auto dimer_at = [&](int n) {
        auto st = twobody::solve_bound_states(
            *cfg.potential, mu_he, {160.0, n},
            {units::mk_to_joule(-1e7), units::mk_to_joule(-1e-4)}, opt);
        return st.front().energy_mk;
    };
    double e1 = dimer_at(25000), e2 = dimer_at(50000), e3 = dimer_at(100000);
    double order = std::log2(std::abs((e1 - e2) / (e2 - e3)));
    c.require(order >= 4.0, "observed convergence order " + std::to_string(order)
                                + " below 4");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 4: Yamaguchi self-convergence and dense-vs-power agreement
// ---------------------------------------------------------------------------

threebody::SeparableInteraction yamaguchi_interaction()
{
    auto g = twobody::FormFactor::yamaguchi_analytic(1.0, -1.3, hh2mu);
    return threebody::calibrate_interaction(g, cc::mass_he4);
}

Check criterion_4()
{
    Check c;
    auto v = yamaguchi_interaction();
    std::array<double, 3> e0{};
    int i = 0;
    for (int n_q : {40, 80, 160}) {
        auto mesh = threebody::MomentumMesh::rational(0.1, 120.0, n_q, 40);
        auto spectrum = threebody::find_trimer_states(v, {-2000.0, -1e-3}, mesh);
        e0[i++] = spectrum.states.front().energy_mk;
    }
    c.require(std::abs(e0[0] - e0[1]) <= 5e-5 * std::abs(e0[2])
                  && std::abs(e0[1] - e0[2]) <= 5e-5 * std::abs(e0[2]),
              "ground state not self-converged to 4 significant figures");

    auto mesh = threebody::MomentumMesh::rational(0.1, 120.0, 160, 40);
    auto kernel = threebody::build_kernel(v, e0[2], mesh);
    double lead = threebody::leading_eigenvalue(kernel).value;
    double dense = threebody::dense_eigenvalues(kernel).front();
    c.require(std::abs(lead - dense) <= 1e-9 * std::max(1.0, std::abs(dense)),
              "power iteration and dense eigensolve disagree past 1e-9");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 5: Efimov universal ratio and disappearance
// ---------------------------------------------------------------------------

Check criterion_5()
{
    Check c;
    auto v = yamaguchi_interaction();
    double b = 1.0, kappa = std::sqrt(1.3 / hh2mu);
    double s_crit = b * b / ((kappa + b) * (kappa + b));  // dimer unbinding point

    auto mesh = threebody::MomentumMesh::rational(0.02, 200.0, 260, 40);
    auto uni = threebody::find_trimer_states(threebody::scale_strength(v, s_crit),
                                             {-5000.0, -1e-7}, mesh);
    c.require(uni.states.size() >= 3, "fewer than three states at unitarity");
    if (!c.ok)
        return c;
    double shallowest = uni.states.back().energy_mk;
    double second = uni.states[uni.states.size() - 2].energy_mk;
    double ratio = second / shallowest;
    double universal = threebody::efimov_ratio();
    c.require(std::abs(ratio - universal) <= 0.10 * universal,
              "binding-energy ratio " + std::to_string(ratio)
                  + " outside 10% of the universal value");

    // strengthening past unitarity pushes the shallowest state into the
    // atom-dimer continuum: the bound-state count drops
    auto pts = threebody::efimov_diagnostics(v, {s_crit, 1.0}, mesh, -5000.0);
    c.require(pts[0].trimers_mk.size() > pts[1].trimers_mk.size(),
              "no state disappeared under strengthening");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 6: paper energy targets with the shipped sample potential
// ---------------------------------------------------------------------------

Check criterion_6(const SampleSpectrum& sample)
{
    Check c;
    c.require(std::abs(sample.dimer_mk - (-1.3)) <= 0.3 * 1.3,
              "dimer energy outside 30% of -1.3 mK");
    c.require(sample.trimers_mk.size() == 2, "expected exactly two trimer states");
    if (sample.trimers_mk.size() == 2) {
        c.require(std::abs(sample.trimers_mk[0] - (-100.0)) <= 0.3 * 100.0,
                  "ground trimer outside 30% of -0.1 K");
        c.require(std::abs(sample.trimers_mk[1] - (-2.1)) <= 0.3 * 2.1,
                  "excited trimer outside 30% of -2.1 mK");
    }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 7: classical-optics reduction
// ---------------------------------------------------------------------------

Check criterion_7()
{
    Check c;
    auto bk = beam::beam_kinematics(trimer_source());
    grating::GratingGeometry geom{100e-9, 60e-9, 120e-9, 0.0};
    potentials::SurfaceInteraction off{0.0, 1e-10};
    auto pattern = diffraction::elastic_pattern(bk, geom, off, 0.0);

    double open = geom.slit_width / geom.period;
    for (const auto& peak : pattern.peaks) {
        if (std::abs(peak.order) > 10)
            continue;
        double arg = M_PI * peak.order * open;
        double envelope = open * (peak.order == 0 ? 1.0 : std::sin(arg) / arg);
        envelope *= envelope;
        c.require(std::abs(peak.intensity - envelope) <= 1e-6 * open * open,
                  "order " + std::to_string(peak.order)
                      + " deviates from the sinc^2 envelope past 1e-6");
    }

    // lambda = lambda' reduces the two-wavelength grating equation to the
    // classical one bit-for-bit
    for (double phi_p : {0.0, 0.3, -0.45})
        for (int n : {-3, -1, 0, 1, 2}) {
            double full = kinematics::diffraction_angle(n, phi_p, bk.wavelength,
                                                        bk.wavelength, geom.period);
            double classical =
                std::asin(std::sin(phi_p) + n * bk.wavelength / geom.period);
            c.require(full == classical, "classical reduction is not bit-identical");
        }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 8: polygon ray-casting oracle, closure, wedge kink
// ---------------------------------------------------------------------------

struct Vec2 {
    double x, z;
};

bool segment_hits_quad(const Vec2& a, const Vec2& b, const std::array<Vec2, 4>& q)
{
    auto separated = [](const std::vector<Vec2>& pts_a, const std::vector<Vec2>& pts_b,
                        double nx, double nz) {
        double a_lo = 1e300, a_hi = -1e300, b_lo = 1e300, b_hi = -1e300;
        for (const auto& p : pts_a) {
            double s = nx * p.x + nz * p.z;
            a_lo = std::min(a_lo, s);
            a_hi = std::max(a_hi, s);
        }
        for (const auto& p : pts_b) {
            double s = nx * p.x + nz * p.z;
            b_lo = std::min(b_lo, s);
            b_hi = std::max(b_hi, s);
        }
        return a_hi < b_lo || b_hi < a_lo;
    };
    std::vector<Vec2> seg = {a, b};
    std::vector<Vec2> quad(q.begin(), q.end());
    for (int i = 0; i < 4; ++i) {
        const Vec2& p0 = q[i];
        const Vec2& p1 = q[(i + 1) % 4];
        if (separated(seg, quad, -(p1.z - p0.z), p1.x - p0.x))
            return false;
    }
    if (separated(seg, quad, -(b.z - a.z), b.x - a.x))
        return false;
    return true;
}

double oracle_s_eff(const grating::GratingGeometry& g, double phi_prime)
{
    double tan_p = std::tan(phi_prime), tan_b = std::tan(g.wedge_angle);
    double d = g.period, s0 = g.slit_width, t = g.thickness;
    int n_bars = static_cast<int>(std::ceil((d + std::abs(t * tan_p) + t * tan_b) / d)) + 2;

    std::vector<std::array<Vec2, 4>> bars;
    for (int k = -n_bars; k <= n_bars; ++k) {
        double off = k * d;
        bars.push_back({Vec2{s0 + off, 0.0}, Vec2{d + off, 0.0},
                        Vec2{d + off - t * tan_b, t}, Vec2{s0 + off + t * tan_b, t}});
    }
    std::vector<double> cuts;
    for (const auto& bar : bars)
        for (const auto& v : bar)
            cuts.push_back(v.x - v.z * tan_p);
    cuts.push_back(-0.5 * d);
    cuts.push_back(1.5 * d);
    std::sort(cuts.begin(), cuts.end());

    auto transmitted = [&](double x0) {
        Vec2 a{x0, 0.0}, b{x0 + t * tan_p, t};
        for (const auto& bar : bars)
            if (segment_hits_quad(a, b, bar))
                return false;
        return true;
    };
    double measure = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = std::max(cuts[i], 0.0), hi = std::min(cuts[i + 1], d);
        if (hi <= lo)
            continue;
        if (transmitted(0.5 * (lo + hi)))
            measure += hi - lo;
    }
    return measure * std::cos(phi_prime);
}

Check criterion_8()
{
    Check c;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        grating::GratingGeometry g;
        g.period = (50.0 + 150.0 * u(rng)) * 1e-9;
        g.slit_width = (0.2 + 0.6 * u(rng)) * g.period;
        g.wedge_angle = 25.0 * deg * u(rng);
        double t_max = g.wedge_angle > 0.0
                           ? 0.499 * std::min(g.period - g.slit_width, g.slit_width)
                                 / std::tan(g.wedge_angle)
                           : 3.0 * g.period;
        g.thickness = (0.05 + 0.93 * u(rng)) * std::min(t_max, 3.0 * g.period);
        g.validate();

        double phi_c = std::atan(g.slit_width / g.thickness + std::tan(g.wedge_angle));
        double phi = (2.0 * u(rng) - 1.0) * std::min(1.2 * phi_c, 80.0 * deg);
        auto proj = grating::project_slit(g, phi);
        c.require(std::abs(proj.s_eff - oracle_s_eff(g, std::abs(phi)))
                      <= 1e-10 * g.period,
                  "projected slit disagrees with the polygon oracle past 1e-10 d");
    }

    // closure angle and the kink at the wedge angle (slope jump t / cos beta)
    auto g = wedged_geometry();
    double phi_c = std::atan(g.slit_width / g.thickness + std::tan(g.wedge_angle));
    c.require(grating::project_slit(g, phi_c + 1e-6).closed,
              "slit still open past the closure angle");
    c.require(!grating::project_slit(g, phi_c - 1e-6).closed,
              "slit closed below the closure angle");

    double eps = 1e-4;
    auto s_eff = [&](double phi) { return grating::project_slit(g, phi).s_eff; };
    double slope_lo = (s_eff(g.wedge_angle - eps) - s_eff(g.wedge_angle - 2.0 * eps)) / eps;
    double slope_hi = (s_eff(g.wedge_angle + 2.0 * eps) - s_eff(g.wedge_angle + eps)) / eps;
    double jump = std::abs(slope_hi - slope_lo);
    double expected = g.thickness / std::cos(g.wedge_angle);
    c.require(std::abs(jump - expected) <= 0.05 * expected,
              "wedge-angle kink missing from the projected slit width");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 9: excitation-channel property suite
// ---------------------------------------------------------------------------

Check criterion_9()
{
    Check c;
    auto bk = beam::beam_kinematics(trimer_source());
    auto geom = wedged_geometry();
    potentials::SurfaceInteraction off{0.0, 1e-10};
    double de = 0.098 * cc::k_boltzmann;
    auto up = kinematics::InternalChannel::excitation(-de, 0.0);
    diffraction::ExcitationModel model;

    // side peaks exist with nonzero intensity
    auto exc = diffraction::excitation_pattern(bk, geom, off, 0.0, up, model);
    bool side = false;
    for (const auto& peak : exc.peaks)
        if (peak.order != 0 && peak.intensity > 0.0)
            side = true;
    c.require(side, "no excitation side peaks at normal incidence");

    // elastic/excitation zeroth-order separation grows monotonically with phi'
    double lambda_out = kinematics::final_wavelength(bk, up);
    double prev_sep = -1.0;
    for (double phi_deg : {5.0, 10.0, 15.0, 20.0, 25.0}) {
        double phi_p = phi_deg * deg;
        double sep = std::abs(kinematics::diffraction_angle(0, phi_p, bk.wavelength,
                                                            lambda_out, geom.period)
                              - phi_p);
        c.require(sep > prev_sep, "separation not monotone in phi'");
        prev_sep = sep;
    }

    // slowly varying excitation transmission over [0, beta + 10 deg]
    std::vector<double> scan;
    for (int i = 0; i <= 38; ++i)
        scan.push_back(i * 0.5 * deg);  // up to 19 deg = beta + 10
    auto exc_curve = diffraction::total_transmission(bk, geom, off, scan, up, &model);
    double lo = 1e300, hi = -1e300;
    for (const auto& pt : exc_curve) {
        lo = std::min(lo, pt.total);
        hi = std::max(hi, pt.total);
    }
    c.require(lo > 0.0 && (hi - lo) < 0.5 * lo,
              "excitation transmission varies by more than 50%");

    // the elastic curve tracks geometric optics over the open range
    auto elastic = kinematics::InternalChannel::elastic(0.0);
    double phi_c = std::atan(geom.slit_width / geom.thickness
                             + std::tan(geom.wedge_angle));
    std::vector<double> open_scan;
    for (int i = 0; i <= 30; ++i)
        open_scan.push_back(0.9 * phi_c * i / 30.0);
    auto el_curve =
        diffraction::total_transmission(bk, geom, off, open_scan, elastic, nullptr);
    for (const auto& pt : el_curve)
        c.require(std::abs(pt.total - pt.geometric) <= 0.05 * pt.geometric,
                  "elastic transmission departs from geometric optics past 5%");

    // the wall-grazing gain peaks exactly where the illuminated wall length does
    std::size_t argmax_wall = 0, argmax_xi = 0;
    double best_wall = -1.0, best_xi = -1.0;
    for (std::size_t i = 0; i < open_scan.size(); ++i) {
        auto proj = grating::project_slit(geom, open_scan[i]);
        double xi = 1.0 + model.grazing_gain * proj.l_wall / geom.thickness;
        if (proj.l_wall > best_wall) {
            best_wall = proj.l_wall;
            argmax_wall = i;
        }
        if (xi > best_xi) {
            best_xi = xi;
            argmax_xi = i;
        }
    }
    c.require(argmax_xi == argmax_wall && best_xi > 1.0,
              "excitation gain does not peak at the maximal wall-grazing angle");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 10: inverse-fit Monte Carlo coverage
// ---------------------------------------------------------------------------

Check criterion_10()
{
    Check c;
    auto bk = beam::beam_kinematics(trimer_source());
    const double period = 100e-9;
    double de = 0.098 * cc::k_boltzmann;
    double sigma = 1e-5;
    auto forward = [&](int n, double phi_p) {
        double lambda_out = bk.wavelength / std::sqrt(1.0 - de / bk.kinetic_energy);
        return kinematics::diffraction_angle(n, phi_p, bk.wavelength, lambda_out, period);
    };

    std::mt19937 rng(1009);
    std::normal_distribution<double> gauss(0.0, sigma);
    int covered = 0;
    const int reps = 1000;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<spectro::PeakObservation> obs;
        for (double phi_p : {10.0 * deg, 20.0 * deg, 30.0 * deg})
            for (int n : {-1, 0, 1, 2})
                obs.push_back({phi_p, forward(n, phi_p) + gauss(rng), sigma});
        auto labeled = spectro::assign_channels(obs, bk, period, de);
        auto fit = spectro::fit_transition_energy(labeled, bk, period);
        if (std::abs(fit.delta_e - de) <= 3.0 * fit.std_error)
            ++covered;
    }
    c.require(covered >= 990, "coverage " + std::to_string(covered) + "/1000 below 990");

    std::vector<spectro::PeakObservation> clean;
    for (double phi_p : {10.0 * deg, 20.0 * deg, 30.0 * deg})
        for (int n : {-1, 0, 1, 2})
            clean.push_back({phi_p, forward(n, phi_p), sigma});
    auto labeled = spectro::assign_channels(clean, bk, period, de);
    auto fit = spectro::fit_transition_energy(labeled, bk, period);
    c.require(std::abs(fit.delta_e - de) <= 1e-10 * de,
              "noiseless fit misses the true energy past 1e-10");
    return c;
}

// ---------------------------------------------------------------------------
// criterion 11: byte-identical repeated pattern runs
// ---------------------------------------------------------------------------

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Check criterion_11()
{
    Check c;
    char tmpl[] = "/tmp/trimdiff_accept_XXXXXX";
    char* dir = mkdtemp(tmpl);
    c.require(dir != nullptr, "cannot create a scratch directory");
    if (!c.ok)
        return c;
    std::string base = dir;
    for (const char* name : {"a.csv", "b.csv"}) {
        std::string cmd = std::string(TRIMDIFF_CLI_PATH) + " --output " + base + "/"
                          + name + " pattern --phi-prime 20 > /dev/null 2>&1";
        c.require(std::system(cmd.c_str()) == 0, "pattern run failed");
    }
    std::string a = slurp(base + "/a.csv"), b = slurp(base + "/b.csv");
    c.require(!a.empty() && a == b, "repeated pattern runs are not byte-identical");
    return c;
}

}  // namespace

int main()
{
    std::printf("solving the shipped sample-potential spectrum (shared setup)...\n");
    SampleSpectrum sample = solve_sample_spectrum();

    struct Entry {
        int number;
        const char* description;
        double budget_seconds;
        Check result;
        double seconds;
    };
    std::vector<Entry> entries = {
        {1, "kinematics round trips and momentum-transfer identity", 1.0, {}, 0.0},
        {2, "micro-radian elastic/excitation separations", 1.0, {}, 0.0},
        {3, "square-well oracle and observed Numerov order", 10.0, {}, 0.0},
        {4, "Yamaguchi mesh convergence and eigensolver agreement", 60.0, {}, 0.0},
        {5, "Efimov universal ratio and disappearance", 600.0, {}, 0.0},
        {6, "sample-potential energy targets", 600.0, {}, 0.0},
        {7, "classical-optics reduction", 1.0, {}, 0.0},
        {8, "geometric transmission vs polygon oracle", 10.0, {}, 0.0},
        {9, "excitation-channel property suite", 120.0, {}, 0.0},
        {10, "inverse-fit Monte Carlo coverage", 120.0, {}, 0.0},
        {11, "deterministic pattern output", 1.0, {}, 0.0},
    };

    for (auto& e : entries) {
        auto t0 = clock_type::now();
        switch (e.number) {
        case 1: e.result = criterion_1(); break;
        case 2: e.result = criterion_2(sample); break;
        case 3: e.result = criterion_3(); break;
        case 4: e.result = criterion_4(); break;
        case 5: e.result = criterion_5(); break;
        case 6: e.result = criterion_6(sample); break;
        case 7: e.result = criterion_7(); break;
        case 8: e.result = criterion_8(); break;
        case 9: e.result = criterion_9(); break;
        case 10: e.result = criterion_10(); break;
        case 11: e.result = criterion_11(); break;
        }
        e.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
        if (e.number == 6)
            e.seconds += sample.solve_seconds;  // the shared solve belongs here
        if (e.seconds > e.budget_seconds)
            e.result.require(false, "runtime " + std::to_string(e.seconds)
                                        + " s over the " + std::to_string(e.budget_seconds)
                                        + " s budget");
    }

    int failures = 0;
    for (const auto& e : entries) {
        if (e.result.ok) {
            std::printf("PASS criterion %2d: %s (%.2f s)\n", e.number, e.description,
                        e.seconds);
        } else {
            std::printf("FAIL criterion %2d: %s (%.2f s) -- %s\n", e.number,
                        e.description, e.seconds, e.result.detail.c_str());
            ++failures;
        }
    }
    return failures;
}
