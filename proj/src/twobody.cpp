// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/twobody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"

namespace trimdiff::twobody {

namespace {

constexpr double rescale_limit = 1e250;

// potential sampled on the grid in mK, r in nm; v_out and v_in carry the
// one-sided limits at a discontinuity node (square-well edge) so each sweep
// stays within a smooth region
struct GridPotential {
    std::vector<double> v;      // mean-value convention, used for node counting
    std::vector<double> v_out;  // interior limit at the edge
    std::vector<double> v_in;   // exterior limit at the edge
};

GridPotential potential_on_grid(const potentials::PairPotential& pot, const RadialGrid& grid)
{
    GridPotential g;
    g.v.resize(grid.n + 1);
    double h = grid.spacing();
    g.v[0] = 0.0;  // multiplies u(0) = 0 only
    for (int i = 1; i <= grid.n; ++i)
        g.v[i] = units::joule_to_mk(potentials::evaluate(pot, i * h * units::nm));
    g.v_out = g.v;
    g.v_in = g.v;
    if (pot.form == potentials::PotentialForm::square_well) {
        double edge = pot.well_range / units::nm;
        int i_edge = static_cast<int>(std::lround(edge / h));
        if (i_edge >= 1 && i_edge <= grid.n && std::abs(i_edge * h - edge) < 0.25 * h) {
            g.v[i_edge] = units::joule_to_mk(-0.5 * pot.well_depth);
            g.v_out[i_edge] = units::joule_to_mk(-pot.well_depth);
            g.v_in[i_edge] = 0.0;
        }
    }
    return g;
}

struct Sweep {
    std::vector<double> u;
    int nodes = 0;
};

// outward Numerov sweep over [0, i_stop]; f_i = (V_i - E)/hh2mu
Sweep numerov_outward(const std::vector<double>& v, double e, double hh2mu, double h,
                      int i_stop)
{
    Sweep s;
    s.u.assign(i_stop + 1, 0.0);
    double fac = h * h / 12.0;
    auto f = [&](int i) { return (v[i] - e) / hh2mu; };
    s.u[0] = 0.0;
    s.u[1] = 1e-30;
    for (int i = 1; i < i_stop; ++i) {
        double num = 2.0 * s.u[i] * (1.0 + 5.0 * fac * f(i)) - s.u[i - 1] * (1.0 - fac * f(i - 1));
        s.u[i + 1] = num / (1.0 - fac * f(i + 1));
        if (s.u[i + 1] * s.u[i] < 0.0)
            ++s.nodes;
        if (std::abs(s.u[i + 1]) > rescale_limit) {
            double inv = 1.0 / std::abs(s.u[i + 1]);
            for (int j = 0; j <= i + 1; ++j)
                s.u[j] *= inv;
        }
    }
    return s;
}

// inward Numerov sweep over [i_start, n], decaying tail start
std::vector<double> numerov_inward(const std::vector<double>& v, double e, double hh2mu,
                                   double h, int i_start)
{
    int n = static_cast<int>(v.size()) - 1;
    std::vector<double> u(v.size(), 0.0);
    double fac = h * h / 12.0;
    auto f = [&](int i) { return (v[i] - e) / hh2mu; };
    double kappa = std::sqrt(std::max(f(n), 1e-30));
    u[n] = 1e-30;
    u[n - 1] = u[n] * std::exp(kappa * h);
    for (int i = n - 1; i > i_start; --i) {
        double num = 2.0 * u[i] * (1.0 + 5.0 * fac * f(i)) - u[i + 1] * (1.0 - fac * f(i + 1));
        u[i - 1] = num / (1.0 - fac * f(i - 1));
        if (std::abs(u[i - 1]) > rescale_limit) {
            double inv = 1.0 / std::abs(u[i - 1]);
            for (int j = i - 1; j <= n; ++j)
                u[j] *= inv;
        }
    }
    return u;
}

// number of nodes of the regular solution = number of eigenvalues below e
int node_count(const std::vector<double>& v, double e, double hh2mu, double h)
{
    int n = static_cast<int>(v.size()) - 1;
    return numerov_outward(v, e, hh2mu, h, n).nodes;
}

int matching_index(const std::vector<double>& v, double e)
{
    // outermost classical turning point: last i with V_i <= e
    int n = static_cast<int>(v.size()) - 1;
    int m = -1;
    for (int i = 1; i <= n; ++i)
        if (v[i] <= e)
            m = i;
    if (m < 4)
        m = 4;
    if (m > n - 4)
        m = n - 4;
    return m;
}

// one-sided O(h^4) derivatives at the matching node, never crossing it
double deriv_backward(const std::vector<double>& u, int i, double h)
{
    return (25.0 * u[i] - 48.0 * u[i - 1] + 36.0 * u[i - 2] - 16.0 * u[i - 3]
            + 3.0 * u[i - 4])
           / (12.0 * h);
}

double deriv_forward(const std::vector<double>& u, int i, double h)
{
    return (-25.0 * u[i] + 48.0 * u[i + 1] - 36.0 * u[i + 2] + 16.0 * u[i + 3]
            - 3.0 * u[i + 4])
           / (12.0 * h);
}

// Matching data at energy e. The two sweeps may see different one-sided
// limits of the potential at the matching node (square-well edge); each side
// stays within its own smooth region.
struct Matched {
    Sweep out;
    std::vector<double> in;
    int m;
};

Matched integrate_sides(const std::vector<double>& v_out, const std::vector<double>& v_in,
                        double e, double hh2mu, double h, int m)
{
    Matched r;
    r.m = m;
    r.out = numerov_outward(v_out, e, hh2mu, h, m);
    r.in = numerov_inward(v_in, e, hh2mu, h, m);
    return r;
}

// log-derivative mismatch at the matching point
double mismatch(const std::vector<double>& v_out, const std::vector<double>& v_in, double e,
                double hh2mu, double h, int m)
{
    Matched r = integrate_sides(v_out, v_in, e, hh2mu, h, m);
    double uo = r.out.u[m];
    double ui = r.in[m];
    if (uo == 0.0 || ui == 0.0)
        return std::numeric_limits<double>::infinity();
    return deriv_backward(r.out.u, m, h) / uo - deriv_forward(r.in, m, h) / ui;
}

// assembled eigenfunction at energy e, normalized to unit integral of u^2 dr
std::vector<double> assemble(const std::vector<double>& v_out, const std::vector<double>& v_in,
                             double e, double hh2mu, double h)
{
    int n = static_cast<int>(v_out.size()) - 1;
    int m = matching_index(v_out, e);
    Matched r = integrate_sides(v_out, v_in, e, hh2mu, h, m);
    double scale = r.out.u[m] / r.in[m];
    std::vector<double> u(n + 1);
    for (int i = 0; i <= m; ++i)
        u[i] = r.out.u[i];
    for (int i = m + 1; i <= n; ++i)
        u[i] = r.in[i] * scale;
    // trapezoid normalization
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += 0.5 * (u[i] * u[i] + u[i + 1] * u[i + 1]) * h;
    double inv = 1.0 / std::sqrt(s);
    if (u[m] < 0.0)
        inv = -inv;  // fix overall sign: positive at the matching point
    for (auto& x : u)
        x *= inv;
    return u;
}

int count_interior_nodes(const std::vector<double>& u)
{
    int n = static_cast<int>(u.size()) - 1;
    int c = 0;
    for (int i = 1; i < n - 1; ++i)
        if (u[i] != 0.0 && u[i + 1] * u[i] < 0.0)
            ++c;
    return c;
}

// eigenvalue of state k (0-based) in mK; the window [lo, hi] must satisfy
// node_count(lo) <= k < node_count(hi)
double solve_state(const std::vector<double>& v, const std::vector<double>& v_out,
                   const std::vector<double>& v_in, int k, double lo, double hi, double hh2mu,
                   double h, double rel_tol)
{
    // bisection on the integer node count isolates the eigenvalue
    double a = lo, b = hi;
    while ((b - a) > 1e-5 * std::abs(0.5 * (a + b)) && (b - a) > 1e-14 * (hi - lo)) {
        double mid = 0.5 * (a + b);
        if (node_count(v, mid, hh2mu, h) <= k)
            a = mid;
        else
            b = mid;
    }
    // bisection on the matching mismatch within the isolated bracket,
    // followed by secant polish
    int m = matching_index(v_out, 0.5 * (a + b));
    auto d = [&](double e) { return mismatch(v_out, v_in, e, hh2mu, h, m); };
    double da = d(a), db = d(b);
    // the discrete matched eigenvalue can sit outside the node-count bracket
    // by the discretization error; widen until the mismatch changes sign
    for (int it = 0; it < 60 && std::isfinite(da) && std::isfinite(db) && da * db > 0.0;
         ++it) {
        double w = b - a;
        a = std::max(lo, a - w);
        b = std::min(hi, b + w);
        da = d(a);
        db = d(b);
    }
    if (!std::isfinite(da) || !std::isfinite(db) || da * db > 0.0)
        return 0.5 * (a + b);  // pathological bracket: keep the node-count answer
    while ((b - a) > 0.25 * rel_tol * std::abs(a + b)) {
        double mid = 0.5 * (a + b);
        double dm = d(mid);
        if (!std::isfinite(dm))
            break;
        if (da * dm <= 0.0) {
            b = mid;
            db = dm;
        } else {
            a = mid;
            da = dm;
        }
    }
    double e0 = a, e1 = b, d0 = da, d1 = db;
    for (int it = 0; it < 8 && std::isfinite(d0) && std::isfinite(d1) && d0 != d1; ++it) {
        double e2 = e1 - d1 * (e1 - e0) / (d1 - d0);
        if (!(e2 >= a - (b - a) && e2 <= b + (b - a)))
            break;
        e0 = e1;
        d0 = d1;
        e1 = e2;
        d1 = d(e1);
        if (std::abs(e1 - e0) < 1e-16 * std::abs(e1))
            break;
    }
    return e1;
}

std::vector<double> energies_in_window(const potentials::PairPotential& pot,
                                       double reduced_mass, const RadialGrid& grid,
                                       std::pair<double, double> window_mk, double rel_tol)
{
    double hh2mu = units::hbar2_over_2mu_mk_nm2(reduced_mass);
    double h = grid.spacing();
    GridPotential gp = potential_on_grid(pot, grid);
    double v_min = *std::min_element(gp.v.begin() + 1, gp.v.end());
    if (v_min >= 0.0)
        throw NoBoundState("potential has no attractive region");

    double near_zero = -1e-12 * std::abs(v_min);
    int n_total = node_count(gp.v, near_zero, hh2mu, h);
    if (n_total == 0)
        throw NoBoundState("potential is subcritical: no bound state below threshold");

    double lo = std::max(window_mk.first, v_min * (1.0 + 1e-12));
    double hi = std::min(window_mk.second, near_zero);
    if (hi <= lo)
        return {};
    int k_lo = node_count(gp.v, lo, hh2mu, h);  // states below the window
    int k_hi = node_count(gp.v, hi, hh2mu, h);
    std::vector<double> result;
    for (int k = k_lo; k < k_hi; ++k)
        result.push_back(solve_state(gp.v, gp.v_out, gp.v_in, k, lo, hi, hh2mu, h, rel_tol));
    return result;
}

}  // namespace

void RadialGrid::validate() const
{
    if (r_max <= 0.0)
        throw Error("RadialGrid: r_max must be positive");
    if (n < 1000)
        throw Error("RadialGrid: need at least 1000 points");
}

RadialGrid RadialGrid::adaptive(double shallowest_energy_mk, double hbar2_over_2mu, int n)
{
    double kappa = std::sqrt(std::abs(shallowest_energy_mk) / hbar2_over_2mu);
    // 16/kappa keeps the truncated tail below 1e-6 of the peak
    return {16.0 / kappa, n};
}

std::vector<BoundState2B> solve_bound_states(const potentials::PairPotential& potential,
                                             double reduced_mass, const RadialGrid& grid,
                                             std::pair<double, double> e_window,
                                             const SolverOptions& opt)
{
    potential.validate();
    grid.validate();
    if (e_window.second > 0.0 || e_window.first >= e_window.second)
        throw Error("solve_bound_states: energy window must lie below zero");
    std::pair<double, double> window_mk = {units::joule_to_mk(e_window.first),
                                           units::joule_to_mk(e_window.second)};
    std::vector<double> energies =
        energies_in_window(potential, reduced_mass, grid, window_mk, opt.relative_tolerance);

    if (opt.verify_grid && !energies.empty()) {
        RadialGrid fine{grid.r_max, 2 * grid.n};
        std::vector<double> refined = energies_in_window(potential, reduced_mass, fine,
                                                         window_mk, opt.relative_tolerance);
        if (refined.size() != energies.size())
            throw GridTooCoarse("solve_bound_states: state count changes under refinement");
        for (std::size_t i = 0; i < energies.size(); ++i) {
            if (std::abs(refined[i] - energies[i]) > opt.grid_drift_tolerance
                                                         * std::abs(energies[i]))
                throw GridTooCoarse("solve_bound_states: energy drifts under 2x refinement");
        }
    }

    double hh2mu = units::hbar2_over_2mu_mk_nm2(reduced_mass);
    double h = grid.spacing();
    GridPotential gp = potential_on_grid(potential, grid);
    std::vector<BoundState2B> states;
    for (double e_mk : energies) {
        BoundState2B st;
        st.energy_mk = e_mk;
        st.energy = units::mk_to_joule(e_mk);
        st.grid = grid;
        st.u = assemble(gp.v_out, gp.v_in, e_mk, hh2mu, h);
        st.nodes = count_interior_nodes(st.u);
        states.push_back(std::move(st));
    }
    return states;
}

double scattering_length(const potentials::PairPotential& potential, double reduced_mass,
                         const RadialGrid& grid, const SolverOptions& opt)
{
    potential.validate();
    grid.validate();
    double hh2mu = units::hbar2_over_2mu_mk_nm2(reduced_mass);

    auto extract = [&](const RadialGrid& g) {
        double h = g.spacing();
        GridPotential gp = potential_on_grid(potential, g);
        Sweep s = numerov_outward(gp.v, 0.0, hh2mu, h, g.n);
        // least-squares line u = alpha + beta r on the outer 10%; a = -alpha/beta
        int i0 = static_cast<int>(0.9 * g.n);
        double sr = 0, su = 0, srr = 0, sru = 0;
        int cnt = 0;
        for (int i = i0; i <= g.n; ++i) {
            double r = i * h;
            sr += r;
            su += s.u[i];
            srr += r * r;
            sru += r * s.u[i];
            ++cnt;
        }
        double beta = (cnt * sru - sr * su) / (cnt * srr - sr * sr);
        double alpha = (su - beta * sr) / cnt;
        return -alpha / beta;
    };

    double a = extract(grid);
    if (opt.verify_grid) {
        double a2 = extract(RadialGrid{grid.r_max, 2 * grid.n});
        double scale = std::max(std::abs(a), grid.r_max);
        if (std::abs(a2 - a) > 1e-4 * scale)
            throw GridTooCoarse("scattering_length: drift under 2x refinement");
    }
    return a * units::nm;
}

double FormFactor::operator()(double momentum) const
{
    if (kind == Kind::yamaguchi)
        return 1.0 / (momentum * momentum + yamaguchi_b * yamaguchi_b);
    double pm = std::abs(momentum);
    if (p.size() < 4 || pm > p.back())
        return 0.0;
    double dp = p[1] - p[0];
    int i = static_cast<int>(pm / dp);
    int n = static_cast<int>(p.size());
    // 4-point local Lagrange, centered
    int j = std::clamp(i - 1, 0, n - 4);
    double x = pm;
    double result = 0.0;
    for (int k = 0; k < 4; ++k) {
        double lk = 1.0;
        for (int l = 0; l < 4; ++l)
            if (l != k)
                lk *= (x - p[j + l]) / (p[j + k] - p[j + l]);
        result += lk * g[j + k];
    }
    return result;
}

FormFactor FormFactor::yamaguchi_analytic(double b_inv_nm, double e_bind_mk,
                                          double hbar2_over_2mu)
{
    FormFactor f;
    f.kind = Kind::yamaguchi;
    f.yamaguchi_b = b_inv_nm;
    f.e_bind_mk = e_bind_mk;
    f.hbar2_over_2mu = hbar2_over_2mu;
    return f;
}

namespace {

double sinc(double x)
{
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// phi(p) = int u(r) sinc(p r) r dr by composite Simpson with stride
double bessel_transform(const std::vector<double>& u, double h, double p, int stride)
{
    int n = static_cast<int>(u.size()) - 1;
    double hs = h * stride;
    double sum = 0.0;
    int i = 0;
    auto f = [&](int idx) {
        double r = idx * h;
        return u[idx] * sinc(p * r) * r;
    };
    for (; i + 2 * stride <= n; i += 2 * stride)
        sum += (f(i) + 4.0 * f(i + stride) + f(i + 2 * stride)) * hs / 3.0;
    for (; i + stride <= n; i += stride)
        sum += 0.5 * (f(i) + f(i + stride)) * hs;
    return sum;
}

}  // namespace

FormFactor upa_form_factor(const BoundState2B& state, double reduced_mass,
                           const MomentumGrid& p_grid)
{
    if (p_grid.n < 8 || p_grid.p_max <= 0.0)
        throw Error("upa_form_factor: bad momentum grid");
    FormFactor f;
    f.kind = FormFactor::Kind::tabulated;
    f.e_bind_mk = state.energy_mk;
    f.hbar2_over_2mu = units::hbar2_over_2mu_mk_nm2(reduced_mass);
    double h = state.grid.spacing();
    f.p.resize(p_grid.n + 1);
    f.g.resize(p_grid.n + 1);
    double g_scale = 0.0;
    std::vector<double> g_coarse(p_grid.n + 1);
    for (int i = 0; i <= p_grid.n; ++i) {
        double p = i * p_grid.p_max / p_grid.n;
        f.p[i] = p;
        double phi = bessel_transform(state.u, h, p, 1);
        f.g[i] = (f.hbar2_over_2mu * p * p + std::abs(state.energy_mk)) * phi;
        g_coarse[i] = (f.hbar2_over_2mu * p * p + std::abs(state.energy_mk))
                      * bessel_transform(state.u, h, p, 2);
        g_scale = std::max(g_scale, std::abs(f.g[i]));
    }
    for (int i = 0; i <= p_grid.n; ++i) {
        if (std::abs(f.g[i] - g_coarse[i]) > 1e-6 * g_scale)
            throw QuadratureNotConverged(
                "upa_form_factor: radial quadrature not converged at p = "
                + std::to_string(f.p[i]));
    }
    return f;
}

}  // namespace trimdiff::twobody
