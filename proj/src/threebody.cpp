// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/threebody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimdiff/constants.hpp"
#include "trimdiff/errors.hpp"
#include "trimdiff/quadrature.hpp"

namespace trimdiff::threebody {

namespace {

const double nan_d = std::numeric_limits<double>::quiet_NaN();

// Cached Gauss-Legendre rules for the angular and radial quadratures.
const quadrature::GaussLegendre& cached_rule(int n)
{
    thread_local std::vector<quadrature::GaussLegendre> cache;
    for (const auto& r : cache)
        if (static_cast<int>(r.nodes.size()) == n)
            return r;
    cache.emplace_back(n);
    return cache.back();
}

// Sigma integrand at momentum p.
double sigma_term(const twobody::FormFactor& g, double hm, double e, double p)
{
    double gp = g(p);
    return gp * gp * p * p / (e - hm * p * p);
}

// Composite Gauss-Legendre over a panel list. Panels are split at the
// integrand crossover p ~ sqrt(|e|/hm) so small |e| stays resolved.
double sigma_panels(const SeparableInteraction& v, double e,
                    const std::vector<std::pair<double, double>>& panels, int n_per)
{
    const auto& rule = cached_rule(n_per);
    double scale = std::sqrt(std::abs(e) / v.hm);
    double total = 0.0;
    auto add = [&](double a, double b) {
        double c = 0.5 * (b - a), m = 0.5 * (b + a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            total += c * rule.weights[i] * sigma_term(v.g, v.hm, e, m + c * rule.nodes[i]);
    };
    // graded knots around the crossover, then a geometric ladder while the
    // integrand still varies as 1/p^2
    std::vector<double> knots;
    if (scale > 0.0) {
        for (double f : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0})
            knots.push_back(f * scale);
        for (double p0 = 64.0 * scale; p0 < 1e6; p0 *= 4.0)
            knots.push_back(p0);
    }
    for (auto [a, b] : panels) {
        double lo = a;
        for (double k : knots) {
            if (k <= lo)
                continue;
            if (k >= b)
                break;
            add(lo, k);
            lo = k;
        }
        add(lo, b);
    }
    return total;
}

// Sigma(e)/(4 pi) at quadrature level n; n doubling refines the rule.
double sigma_quadrature(const SeparableInteraction& v, double e, int n)
{
    double scale = std::sqrt(std::abs(e) / v.hm);
    double total;
    if (v.g.kind == twobody::FormFactor::Kind::yamaguchi) {
        double p_cut = 10.0 * std::max({v.g.yamaguchi_b, scale, 1e-3});
        double p_mid = std::min(p_cut, std::max({v.g.yamaguchi_b, scale, 1e-6}));
        total = sigma_panels(v, e, {{0.0, p_mid}, {p_mid, p_cut}}, n);
        // exact u = 1/p transform of the infinite tail
        const auto& rule = cached_rule(n);
        double c = 0.5 / p_cut, m = 0.5 / p_cut;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double u = m + c * rule.nodes[i];
            double gp = v.g(1.0 / u);
            total += c * rule.weights[i] * gp * gp / (e * u * u - v.hm) / (u * u);
        }
    } else {
        // tabulated g is piecewise polynomial: integrate cell-aligned
        int n_per = std::max(6, n / 64);
        std::vector<std::pair<double, double>> panels;
        panels.reserve(v.g.p.size());
        for (std::size_t i = 0; i + 1 < v.g.p.size(); ++i)
            panels.push_back({v.g.p[i], v.g.p[i + 1]});
        total = sigma_panels(v, e, panels, n_per);
    }
    return 4.0 * M_PI * total;
}

}  // namespace

void MomentumMesh::validate() const
{
    if (q.size() < 40 || q.size() != w.size())
        throw Error("MomentumMesh: need at least 40 nodes with matching weights");
    if (n_theta < 8)
        throw Error("MomentumMesh: angular order must be at least 8");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (w[i] <= 0.0)
            throw Error("MomentumMesh: weights must be positive");
        if (i > 0 && q[i] <= q[i - 1])
            throw Error("MomentumMesh: nodes must be strictly increasing");
    }
}

MomentumMesh MomentumMesh::rational(double q_bar, double q_max, int n_q, int n_theta)
{
    if (!(q_bar > 0.0) || !(q_max > q_bar))
        throw Error("MomentumMesh: require 0 < q_bar < q_max");
    MomentumMesh mesh;
    mesh.n_theta = n_theta;
    mesh.q_bar = q_bar;
    mesh.q_max = q_max;
    const auto& rule = cached_rule(n_q);
    double r = 2.0 * q_bar / q_max;
    mesh.q.resize(n_q);
    mesh.w.resize(n_q);
    for (int i = 0; i < n_q; ++i) {
        double x = rule.nodes[i];
        double den = 1.0 - x + r;
        mesh.q[i] = q_bar * (1.0 + x) / den;
        // dq/dx = q_bar (2 + r) / den^2
        mesh.w[i] = rule.weights[i] * q_bar * (2.0 + r) / (den * den);
    }
    mesh.validate();
    return mesh;
}

SeparableInteraction calibrate_interaction(const twobody::FormFactor& g, double mass_kg)
{
    if (!(mass_kg > 0.0))
        throw Error("calibrate_interaction: mass must be positive");
    if (!(g.e_bind_mk < 0.0))
        throw StrengthNotCalibrated(
            "calibrate_interaction: form factor carries no negative two-body energy");
    SeparableInteraction v;
    v.g = g;
    v.hm = constants::hbar * constants::hbar
           / (mass_kg * constants::k_boltzmann * 1e-3) * 1e18;
    double s1 = sigma_quadrature(v, g.e_bind_mk, 512);
    double s2 = sigma_quadrature(v, g.e_bind_mk, 1024);
    if (!(std::abs(s2 - s1) <= 1e-8 * std::abs(s2)))
        throw StrengthNotCalibrated(
            "calibrate_interaction: pole condition not satisfied to 1e-8");
    v.inverse_strength = s2;
    return v;
}

SeparableInteraction scale_strength(const SeparableInteraction& v, double s)
{
    if (!(s > 0.0))
        throw Error("scale_strength: scale must be positive");
    SeparableInteraction out = v;
    out.inverse_strength = v.inverse_strength / s;
    return out;
}

double sigma_integral(const SeparableInteraction& v, double e_mk)
{
    if (e_mk > 0.0)
        throw Error("sigma_integral: energy must be non-positive");
    double s1 = sigma_quadrature(v, e_mk, 512);
    double s2 = sigma_quadrature(v, e_mk, 1024);
    if (!(std::abs(s2 - s1) <= 1e-9 * std::abs(s2)))
        throw QuadratureNotConverged("sigma_integral: doubling the rule still drifts");
    return s2;
}

double two_body_tau(const SeparableInteraction& v, double e_mk)
{
    if (!(e_mk < 0.0))
        throw Error("two_body_tau: energy must be negative");
    return 1.0 / (v.inverse_strength - sigma_integral(v, e_mk));
}

double dimer_energy(const SeparableInteraction& v)
{
    // Sigma is strictly decreasing in e on (-inf, 0]; pole where Sigma = 1/lambda
    double s0 = sigma_integral(v, 0.0);
    if (v.inverse_strength <= s0)
        return nan_d;  // strength too weak to bind
    double hi = 0.0;  // Sigma(hi) - 1/lambda < 0
    double lo = -1.0;
    while (sigma_integral(v, lo) - v.inverse_strength < 0.0) {
        lo *= 4.0;
        if (lo < -1e12)
            throw NoConvergence("dimer_energy: pole not bracketed");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sigma_integral(v, mid) - v.inverse_strength >= 0.0)
            lo = mid;
        else
            hi = mid;
        if (std::abs(hi - lo) <= 1e-12 * std::abs(lo))
            break;
    }
    return 0.5 * (lo + hi);
}

double separable_scattering_length(const SeparableInteraction& v)
{
    double g0 = v.g(0.0);
    double mu = 1.0 / (2.0 * v.hm);  // hbar^2/2mu = hm
    double tau0 = 1.0 / (v.inverse_strength - sigma_integral(v, 0.0));
    return 4.0 * M_PI * M_PI * mu * g0 * g0 * tau0;
}

double angular_z(const SeparableInteraction& v, double p, double q, double e_mk,
                 int n_theta)
{
    const auto& rule = cached_rule(n_theta);
    double total = 0.0;
    for (int k = 0; k < n_theta; ++k) {
        double x = rule.nodes[k];
        double g1 = v.g(std::sqrt(q * q + 0.25 * p * p + p * q * x));
        double g2 = v.g(std::sqrt(p * p + 0.25 * q * q + p * q * x));
        total += rule.weights[k] * g1 * g2
                 / (e_mk - v.hm * (p * p + q * q + p * q * x));
    }
    return 2.0 * M_PI * total;
}

namespace {

FaddeevKernel build_kernel_impl(const SeparableInteraction& v, double e_mk,
                                const MomentumMesh& mesh, bool parallel)
{
    mesh.validate();
    if (!(e_mk < 0.0))
        throw Error("build_kernel: energy must be negative");
    // below the two-body pole iff Sigma(E) > 1/lambda (Sigma decreasing in e)
    if (sigma_integral(v, e_mk) <= v.inverse_strength)
        throw Error("build_kernel: energy must lie below the two-body pole");
    int n = static_cast<int>(mesh.q.size());
    FaddeevKernel kern;
    kern.energy_mk = e_mk;
    kern.mesh = mesh;
    kern.tau.resize(n);
    kern.sym.resize(n, n);

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i)
        kern.tau[i] = two_body_tau(v, e_mk - 0.75 * v.hm * mesh.q[i] * mesh.q[i]);

    bool finite = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : finite) if (parallel)
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double z = angular_z(v, mesh.q[i], mesh.q[j], e_mk, mesh.n_theta);
            double s = -2.0 * mesh.q[i] * mesh.q[j]
                       * std::sqrt(mesh.w[i] * mesh.w[j]
                                   * std::abs(kern.tau[i] * kern.tau[j]))
                       * z;
            finite = finite && std::isfinite(s);
            kern.sym(i, j) = s;
            kern.sym(j, i) = s;
        }
    }
    if (!finite)
        throw Error("build_kernel: non-finite kernel entry");
    return kern;
}

}  // namespace

FaddeevKernel build_kernel(const SeparableInteraction& v, double e_mk,
                           const MomentumMesh& mesh)
{
    return build_kernel_impl(v, e_mk, mesh, true);
}

FaddeevKernel build_kernel_serial(const SeparableInteraction& v, double e_mk,
                                  const MomentumMesh& mesh)
{
    return build_kernel_impl(v, e_mk, mesh, false);
}

Eigenpair leading_eigenvalue(const FaddeevKernel& kernel, int max_iterations)
{
    const auto& s = kernel.sym;
    int n = static_cast<int>(s.rows());
    // shift by the infinity norm so the algebraically largest eigenvalue of
    // the symmetric matrix dominates in magnitude
    double shift = s.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd y = s * x + shift * x;
        double norm = y.norm();
        if (norm == 0.0)
            throw NoConvergence("leading_eigenvalue: iterate vanished");
        y /= norm;
        lambda = y.dot(s * y);
        double residual = (s * y - lambda * y).norm();
        x = y;
        if (residual < 1e-10 * std::max(1.0, std::abs(lambda)))
            return {lambda, x};
    }
    throw NoConvergence("leading_eigenvalue: power iteration stalled");
}

std::vector<double> dense_eigenvalues(const FaddeevKernel& kernel)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel.sym,
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> vals(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(vals.rbegin(), vals.rend());
    return vals;
}

namespace {

// Faddeev component from the symmetrized eigenvector, normalized to
// sum w_i psi_i^2 q_i^2 = 1, with a positive mean sign.
std::vector<double> component_from(const Eigen::VectorXd& phi, const FaddeevKernel& k)
{
    int n = static_cast<int>(phi.size());
    std::vector<double> psi(n);
    double norm = 0.0, mean = 0.0;
    for (int i = 0; i < n; ++i) {
        psi[i] = phi[i] * std::sqrt(std::abs(k.tau[i]) / k.mesh.w[i]) / k.mesh.q[i];
        norm += k.mesh.w[i] * psi[i] * psi[i] * k.mesh.q[i] * k.mesh.q[i];
        mean += k.mesh.w[i] * psi[i] * k.mesh.q[i] * k.mesh.q[i];
    }
    double s = (mean < 0.0 ? -1.0 : 1.0) / std::sqrt(norm);
    for (auto& x : psi)
        x *= s;
    return psi;
}

// Radial-excitation nodes of psi. Realistic form factors cross zero at
// high momentum and imprint that sign on the far tail of psi, so sign
// changes are only counted below the form factor's first zero.
int count_nodes(const std::vector<double>& psi, const MomentumMesh& mesh,
                const twobody::FormFactor& g)
{
    double peak = 0.0;
    for (double x : psi)
        peak = std::max(peak, std::abs(x));
    int nodes = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (g(mesh.q[i]) <= 0.0)
            break;
        double x = psi[i];
        if (std::abs(x) < 1e-9 * peak)
            continue;
        if (prev != 0.0 && x * prev < 0.0)
            ++nodes;
        prev = x;
    }
    return nodes;
}

}  // namespace

TrimerSpectrum find_trimer_states(const SeparableInteraction& v,
                                  std::pair<double, double> window_mk,
                                  const MomentumMesh& mesh, const FindOptions& opt)
{
    auto [lo, hi] = window_mk;
    if (!(lo < hi) || !(hi < 0.0))
        throw Error("find_trimer_states: window must satisfy lo < hi < 0");
    double e_b = dimer_energy(v);
    // lambda_max grows without bound toward the atom-dimer threshold, so stop
    // the scan 2% below it; states in that last sliver are not resolved
    if (std::isfinite(e_b))
        hi = std::min(hi, 1.02 * e_b);
    if (!(lo < hi))
        throw WindowEmpty("find_trimer_states: window lies above the dimer energy");

    TrimerSpectrum spec;
    // log-spaced scan from deep to shallow
    int ns = std::max(opt.n_scan, 8);
    std::vector<double> samples(ns);
    double la = std::log(-lo), lb = std::log(-hi);
    for (int i = 0; i < ns; ++i)
        samples[i] = -std::exp(la + (lb - la) * i / (ns - 1.0));

    // eigenvalue branches at each sample, sorted descending
    std::vector<std::vector<double>> branch(ns);
    for (int i = 0; i < ns; ++i) {
        auto kern = build_kernel(v, samples[i], mesh);
        branch[i] = dense_eigenvalues(kern);
        spec.curve.push_back({samples[i], branch[i][0]});
    }
    int n_states = 0;
    for (double lam : branch[ns - 1])
        if (lam >= 1.0)
            ++n_states;
    if (n_states == 0)
        throw WindowEmpty("find_trimer_states: no state in the window");
    if (branch[0][n_states - 1] >= 1.0)
        throw Error("find_trimer_states: window floor is not below the deepest state");

    auto branch_value = [&](double e, int k) {
        return dense_eigenvalues(build_kernel(v, e, mesh))[k] - 1.0;
    };
    for (int k = 0; k < n_states; ++k) {
        // bracket the crossing of branch k from the scan
        double a = samples[0], b = samples[ns - 1];
        for (int i = ns - 1; i > 0; --i)
            if (branch[i][k] >= 1.0 && branch[i - 1][k] < 1.0) {
                a = samples[i - 1];
                b = samples[i];
                break;
            }
        double fa = branch_value(a, k), fb = branch_value(b, k);
        if (!(fa < 0.0) || !(fb >= 0.0))
            throw NoConvergence("find_trimer_states: lost the eigenvalue bracket");
        // bisection, then secant polish
        while (std::abs(b - a) > 64.0 * opt.relative_tolerance * std::abs(a)) {
            double mid = 0.5 * (a + b);
            double fm = branch_value(mid, k);
            if (fm < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
        }
        double e0 = a, f0 = fa, e1 = b, f1 = fb;
        for (int it = 0; it < 12 && std::abs(e1 - e0) > opt.relative_tolerance * std::abs(e1);
             ++it) {
            double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
            if (!(e2 > samples[0]) || !(e2 < samples[ns - 1]))
                e2 = 0.5 * (e0 + e1);
            e0 = e1;
            f0 = f1;
            e1 = e2;
            f1 = branch_value(e1, k);
        }
        auto kern = build_kernel(v, e1, mesh);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kern.sym);
        int n = static_cast<int>(kern.sym.rows());
        TrimerState st;
        st.energy_mk = e1;
        st.energy = units::mk_to_joule(e1);
        st.psi = component_from(es.eigenvectors().col(n - 1 - k), kern);
        st.nodes = count_nodes(st.psi, kern.mesh, v.g);
        spec.states.push_back(std::move(st));
    }
    std::sort(spec.states.begin(), spec.states.end(),
              [](const TrimerState& x, const TrimerState& y) {
                  return x.energy_mk < y.energy_mk;
              });

    if (opt.verify_mesh) {
        if (!(mesh.q_bar > 0.0))
            throw Error("find_trimer_states: mesh lacks map parameters for verification");
        auto fine = MomentumMesh::rational(mesh.q_bar, mesh.q_max,
                                           2 * static_cast<int>(mesh.q.size()),
                                           mesh.n_theta);
        for (const auto& st : spec.states) {
            double l1 = leading_eigenvalue(build_kernel(v, st.energy_mk, mesh)).value;
            double l2 = leading_eigenvalue(build_kernel(v, st.energy_mk, fine)).value;
            if (std::abs(l2 - l1) > opt.mesh_drift_tolerance * std::abs(l2))
                throw MeshNotConverged(
                    "find_trimer_states: doubling the mesh moves lambda_max");
        }
    }
    return spec;
}

std::vector<EfimovPoint> efimov_diagnostics(const SeparableInteraction& base,
                                            const std::vector<double>& strengths,
                                            const MomentumMesh& mesh,
                                            double window_floor_mk,
                                            const FindOptions& opt)
{
    if (strengths.empty())
        throw Error("efimov_diagnostics: empty strength scan");
    std::vector<EfimovPoint> out;
    out.reserve(strengths.size());
    for (double s : strengths) {
        auto v = scale_strength(base, s);
        EfimovPoint pt;
        pt.strength = s;
        pt.dimer_mk = dimer_energy(v);
        pt.a_nm = separable_scattering_length(v);
        double hi = std::isfinite(pt.dimer_mk) ? pt.dimer_mk * (1.0 + 1e-7)
                                               : -1e-9 * std::abs(window_floor_mk);
        try {
            auto spec = find_trimer_states(v, {window_floor_mk, hi}, mesh, opt);
            for (const auto& st : spec.states)
                pt.trimers_mk.push_back(st.energy_mk);
        } catch (const WindowEmpty&) {
        }
        out.push_back(std::move(pt));
    }
    return out;
}

double efimov_s0()
{
    auto f = [](double s) {
        return 8.0 * std::sinh(M_PI * s / 6.0)
               - std::sqrt(3.0) * s * std::cosh(M_PI * s / 2.0);
    };
    double a = 0.5, b = 1.5;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (f(a) * f(mid) <= 0.0)
            b = mid;
        else
            a = mid;
    }
    return 0.5 * (a + b);
}

double efimov_ratio()
{
    return std::exp(2.0 * M_PI / efimov_s0());
}

}  // namespace trimdiff::threebody
