// SPDX-License-Identifier: Apache-2.0
//
// trimdiff: state-selective inelastic grating diffraction of weakly bound
// He clusters. Subcommands cover forward kinematics, diffraction patterns,
// transmission scans, the two- and three-body bound-state solvers, the
// inverse transition-energy fit, and Efimov strength scans. All file output
// is deterministic CSV (17 significant digits, fixed ordering).
//
// Exit codes: 0 ok, 2 usage/config, 3 kinematic error, 4 geometry error,
// 5 solver non-convergence.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "trimdiff/config.hpp"
#include "trimdiff/csv.hpp"
#include "trimdiff/diffraction.hpp"
#include "trimdiff/errors.hpp"
#include "trimdiff/kinematics.hpp"
#include "trimdiff/spectro.hpp"
#include "trimdiff/threebody.hpp"
#include "trimdiff/twobody.hpp"

namespace {

using namespace trimdiff;

constexpr double deg = M_PI / 180.0;

struct Shared {
    std::string config_path;
    int threads = 0;
    std::string output;  // overrides output_dir-derived file names
};

config::RunConfig load_config(const Shared& shared)
{
    auto cfg = shared.config_path.empty() ? config::RunConfig{}
                                          : config::RunConfig::from_file(shared.config_path);
#ifdef _OPENMP
    if (shared.threads > 0)
        omp_set_num_threads(shared.threads);
#endif
    return cfg;
}

std::string out_path(const Shared& shared, const config::RunConfig& cfg,
                     const std::string& name)
{
    if (!shared.output.empty())
        return shared.output;
    return cfg.output_dir + "/" + name;
}

grating::EikonalOptions eikonal_options(const config::RunConfig& cfg)
{
    return {cfg.numerics.n_samples, cfg.numerics.n_depth, cfg.numerics.opacity_phase};
}

// ---------------------------------------------------------------------------
// few-body pipeline shared by solve2b / solve3b / efimov
// ---------------------------------------------------------------------------

std::vector<twobody::BoundState2B> solve_two_body(const config::RunConfig& cfg)
{
    if (!cfg.potential)
        throw MissingParameter("config has no [potential] block");
    double mu = 0.5 * cfg.source.carrier_mass;
    twobody::RadialGrid grid{cfg.numerics.r_max / units::nm, cfg.numerics.n_radial};
    auto window = std::make_pair(units::mk_to_joule(-1e7), units::mk_to_joule(-1e-4));
    return twobody::solve_bound_states(*cfg.potential, mu, grid, window);
}

threebody::SeparableInteraction upa_interaction(const config::RunConfig& cfg,
                                                const twobody::BoundState2B& state)
{
    double mu = 0.5 * cfg.source.carrier_mass;
    twobody::MomentumGrid p_grid{cfg.numerics.p_max, cfg.numerics.n_p};
    auto g = twobody::upa_form_factor(state, mu, p_grid);
    return threebody::calibrate_interaction(g, cfg.source.carrier_mass);
}

threebody::MomentumMesh faddeev_mesh(const config::RunConfig& cfg)
{
    return threebody::MomentumMesh::rational(cfg.numerics.q_bar, cfg.numerics.q_max,
                                             cfg.numerics.n_q, cfg.numerics.n_theta);
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_kinematics(const Shared& shared, double phi_prime_deg, double delta_e_k,
                   bool has_order, int order)
{
    auto cfg = load_config(shared);
    auto bk = beam::beam_kinematics(cfg.source);
    double phi_p = phi_prime_deg * deg;
    double de = units::kelvin_to_joule(delta_e_k);
    auto excitation = kinematics::InternalChannel::excitation(-de, 0.0);

    std::printf("# beam: v = %.6g m/s, lambda = %.6g m, E_kin = %.6g J\n", bk.speed,
                bk.wavelength, bk.kinetic_energy);
    std::printf("%-6s %-12s %s\n", "n", "channel", "phi_deg");
    for (auto label : {kinematics::ChannelLabel::elastic,
                       kinematics::ChannelLabel::excitation}) {
        double lambda_out = label == kinematics::ChannelLabel::elastic
                                ? bk.wavelength
                                : kinematics::final_wavelength(bk, excitation);
        if (has_order) {
            // an explicitly requested evanescent order is a kinematic error
            double angle = kinematics::diffraction_angle(order, phi_p, bk.wavelength,
                                                         lambda_out, cfg.geometry.period);
            std::printf("%-6d %-12s %.10f\n", order, kinematics::to_string(label),
                        angle / deg);
            continue;
        }
        auto range = kinematics::allowed_orders(phi_p, bk.wavelength, lambda_out,
                                                cfg.geometry.period);
        for (int n = range.n_min; n <= range.n_max; ++n) {
            double angle = kinematics::diffraction_angle(n, phi_p, bk.wavelength,
                                                         lambda_out, cfg.geometry.period);
            std::printf("%-6d %-12s %.10f\n", n, kinematics::to_string(label),
                        angle / deg);
        }
    }
    return 0;
}

int cmd_pattern(const Shared& shared, double phi_prime_deg, double delta_e_k)
{
    auto cfg = load_config(shared);
    auto bk = beam::beam_kinematics(cfg.source);
    double phi_p = phi_prime_deg * deg;
    auto opt = eikonal_options(cfg);

    auto elastic = diffraction::elastic_pattern(bk, cfg.geometry, cfg.surface, phi_p, opt);
    if (elastic.closed_slit) {
        std::fprintf(stderr, "pattern: slit closed at phi' = %g deg\n", phi_prime_deg);
        return 4;
    }
    csv::Table table;
    table.header = {"channel", "n", "phi_deg", "intensity"};
    for (const auto& peak : elastic.peaks)
        table.add_row({0.0, static_cast<double>(peak.order), peak.angle / deg,
                       peak.intensity});
    if (delta_e_k > 0.0) {
        auto channel =
            kinematics::InternalChannel::excitation(-units::kelvin_to_joule(delta_e_k), 0.0);
        auto exc = diffraction::excitation_pattern(bk, cfg.geometry, cfg.surface, phi_p,
                                                   channel, cfg.excitation, opt);
        for (const auto& peak : exc.peaks)
            table.add_row({1.0, static_cast<double>(peak.order), peak.angle / deg,
                           peak.intensity});
    }
    auto path = out_path(shared, cfg, "pattern.csv");
    csv::write_file(path, table);
    std::printf("wrote %s (%zu peaks)\n", path.c_str(), table.rows.size());
    return 0;
}

int cmd_scan(const Shared& shared, double phi_min_deg, double phi_max_deg, int n_angles,
             const std::string& channel_name, double delta_e_k)
{
    auto cfg = load_config(shared);
    auto bk = beam::beam_kinematics(cfg.source);
    auto opt = eikonal_options(cfg);
    if (n_angles < 2)
        throw ParseError("scan: need at least two angles");
    std::vector<double> scan;
    for (int i = 0; i < n_angles; ++i)
        scan.push_back((phi_min_deg + (phi_max_deg - phi_min_deg) * i / (n_angles - 1))
                       * deg);

    bool want_elastic = channel_name == "elastic" || channel_name == "both";
    bool want_excitation = channel_name == "excitation" || channel_name == "both";
    if (!want_elastic && !want_excitation)
        throw ParseError("scan: channel must be elastic, excitation, or both");

    auto elastic_channel = kinematics::InternalChannel::elastic(0.0);
    auto exc_channel =
        kinematics::InternalChannel::excitation(-units::kelvin_to_joule(delta_e_k), 0.0);

    std::vector<diffraction::TransmissionPoint> el, ex;
    if (want_elastic)
        el = diffraction::total_transmission(bk, cfg.geometry, cfg.surface, scan,
                                             elastic_channel, nullptr, opt);
    if (want_excitation)
        ex = diffraction::total_transmission(bk, cfg.geometry, cfg.surface, scan,
                                             exc_channel, &cfg.excitation, opt);

    csv::Table table;
    table.header = {"phi_prime_deg"};
    if (want_elastic)
        table.header.push_back("elastic");
    if (want_excitation)
        table.header.push_back("excitation");
    table.header.push_back("geometric");
    for (std::size_t i = 0; i < scan.size(); ++i) {
        std::vector<double> row = {scan[i] / deg};
        if (want_elastic)
            row.push_back(el[i].total);
        if (want_excitation)
            row.push_back(ex[i].total);
        row.push_back(grating::geometric_transmission(cfg.geometry, scan[i]));
        table.rows.push_back(row);
    }
    auto path = out_path(shared, cfg, "scan.csv");
    csv::write_file(path, table);
    std::printf("wrote %s (%zu angles)\n", path.c_str(), table.rows.size());
    return 0;
}

int cmd_solve2b(const Shared& shared)
{
    auto cfg = load_config(shared);
    auto states = solve_two_body(cfg);
    csv::Table table;
    table.header = {"state", "energy_mk", "energy_j", "nodes"};
    for (std::size_t i = 0; i < states.size(); ++i) {
        table.add_row({static_cast<double>(i), states[i].energy_mk, states[i].energy,
                       static_cast<double>(states[i].nodes)});
        std::printf("state %zu: E = %.8g mK (%d nodes)\n", i, states[i].energy_mk,
                    states[i].nodes);
    }
    csv::write_file(out_path(shared, cfg, "twobody_states.csv"), table);
    if (!states.empty()) {
        const auto& s = states.back();  // shallowest
        csv::Table wf;
        wf.header = {"r_nm", "u"};
        for (std::size_t i = 0; i < s.u.size(); ++i)
            wf.add_row({i * s.grid.spacing(), s.u[i]});
        csv::write_file(cfg.output_dir + "/twobody_u.csv", wf);
    }
    return 0;
}

int cmd_solve3b(const Shared& shared)
{
    auto cfg = load_config(shared);
    auto states = solve_two_body(cfg);
    if (states.empty())
        throw NoBoundState("solve3b: no two-body bound state to build the UPA from");
    auto v = upa_interaction(cfg, states.back());
    auto mesh = faddeev_mesh(cfg);
    auto spectrum = threebody::find_trimer_states(
        v, {cfg.numerics.window_floor_mk, cfg.numerics.window_ceiling_mk}, mesh,
        {cfg.numerics.n_scan});

    csv::Table table;
    table.header = {"state", "energy_mk", "energy_j", "nodes"};
    for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
        const auto& s = spectrum.states[i];
        table.add_row({static_cast<double>(i), s.energy_mk, s.energy,
                       static_cast<double>(s.nodes)});
        std::printf("trimer %zu: E = %.8g mK (%d nodes)\n", i, s.energy_mk, s.nodes);
    }
    csv::write_file(out_path(shared, cfg, "trimer_states.csv"), table);

    csv::Table wf;
    wf.header = {"q_inv_nm"};
    for (std::size_t i = 0; i < spectrum.states.size(); ++i)
        wf.header.push_back("psi_" + std::to_string(i));
    for (std::size_t k = 0; k < mesh.q.size(); ++k) {
        std::vector<double> row = {mesh.q[k]};
        for (const auto& s : spectrum.states)
            row.push_back(s.psi[k]);
        wf.rows.push_back(row);
    }
    csv::write_file(cfg.output_dir + "/trimer_psi.csv", wf);
    return 0;
}

int cmd_fit(const Shared& shared, const std::string& peaks_path, double guess_k)
{
    auto cfg = load_config(shared);
    auto bk = beam::beam_kinematics(cfg.source);
    auto table = csv::read_file(peaks_path);
    int c_pp = csv::column(table, "phi_prime_deg");
    int c_phi = csv::column(table, "phi_deg");
    int c_sig = csv::column(table, "sigma_phi_rad");
    int c_hint = csv::column(table, "order_hint");
    if (c_pp < 0 || c_phi < 0 || c_sig < 0)
        throw ParseError("fit: peaks CSV needs phi_prime_deg, phi_deg, sigma_phi_rad");

    std::vector<spectro::PeakObservation> obs;
    for (const auto& row : table.rows) {
        spectro::PeakObservation o{row[c_pp] * deg, row[c_phi] * deg, row[c_sig]};
        if (c_hint >= 0) {
            o.has_order_hint = true;
            o.order_hint = static_cast<int>(std::lround(row[c_hint]));
        }
        obs.push_back(o);
    }
    auto labeled = spectro::assign_channels(obs, bk, cfg.geometry.period,
                                            units::kelvin_to_joule(guess_k));
    auto fit = spectro::fit_transition_energy(labeled, bk, cfg.geometry.period);

    std::printf("delta_e = %.10g K (+- %.3g K), chi2 = %.6g, dof = %d\n",
                fit.delta_e / constants::k_boltzmann,
                fit.std_error / constants::k_boltzmann, fit.chi_square, fit.dof);
    csv::Table result;
    result.header = {"delta_e_j", "std_error_j", "chi_square", "dof"};
    result.add_row({fit.delta_e, fit.std_error, fit.chi_square,
                    static_cast<double>(fit.dof)});
    csv::write_file(out_path(shared, cfg, "fit_result.csv"), result);

    csv::Table res;
    res.header = {"phi_prime_deg", "phi_deg", "channel", "order", "residual_rad"};
    for (std::size_t i = 0; i < fit.used.size(); ++i) {
        const auto& l = fit.used[i];
        res.add_row({l.obs.phi_prime / deg, l.obs.phi / deg,
                     l.label == spectro::PeakLabel::excitation ? 1.0 : 0.0,
                     static_cast<double>(l.order), fit.residuals[i]});
    }
    csv::write_file(cfg.output_dir + "/fit_residuals.csv", res);
    return 0;
}

int cmd_efimov(const Shared& shared, double s_min, double s_max, int n_strengths)
{
    auto cfg = load_config(shared);
    auto states = solve_two_body(cfg);
    if (states.empty())
        throw NoBoundState("efimov: no two-body bound state to build the UPA from");
    auto v = upa_interaction(cfg, states.back());
    auto mesh = faddeev_mesh(cfg);
    if (n_strengths < 1 || !(s_min > 0.0) || !(s_max >= s_min))
        throw ParseError("efimov: bad strength range");
    std::vector<double> strengths;
    for (int i = 0; i < n_strengths; ++i)
        strengths.push_back(n_strengths == 1
                                ? s_min
                                : s_min + (s_max - s_min) * i / (n_strengths - 1));
    auto points = threebody::efimov_diagnostics(v, strengths, mesh,
                                                cfg.numerics.window_floor_mk,
                                                {cfg.numerics.n_scan});
    csv::Table table;
    table.header = {"strength", "dimer_mk", "a_nm", "n_trimers", "e0_mk", "e1_mk"};
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& pt : points) {
        std::size_t n = pt.trimers_mk.size();
        table.add_row({pt.strength, pt.dimer_mk, pt.a_nm, static_cast<double>(n),
                       n > 0 ? pt.trimers_mk[0] : nan, n > 1 ? pt.trimers_mk[1] : nan});
        std::printf("s = %.6g: dimer = %.6g mK, a = %.6g nm, %zu trimer(s)\n",
                    pt.strength, pt.dimer_mk, pt.a_nm, n);
    }
    csv::write_file(out_path(shared, cfg, "efimov_scan.csv"), table);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"state-selective inelastic grating diffraction toolkit"};
    app.require_subcommand(1);

    Shared shared;
    app.add_option("--config", shared.config_path, "run configuration file");
    app.add_option("--threads", shared.threads, "bound worker thread count");
    app.add_option("--output", shared.output, "override the primary output file path");

    double phi_prime_deg = 0.0, delta_e_k = 0.098;
    int order = 0;
    auto* kin = app.add_subcommand("kinematics", "diffraction-angle table (Eq. 3)");
    kin->add_option("--phi-prime", phi_prime_deg, "incidence angle, deg");
    kin->add_option("--delta-e", delta_e_k, "transition energy, k_B K");
    auto* order_opt = kin->add_option("--order", order, "single diffraction order");

    auto* pat = app.add_subcommand("pattern", "stick diffraction pattern CSV");
    pat->add_option("--phi-prime", phi_prime_deg, "incidence angle, deg");
    pat->add_option("--delta-e", delta_e_k,
                    "excitation energy, k_B K (0 disables the channel)");

    double phi_min_deg = 0.0, phi_max_deg = 60.0;
    int n_angles = 61;
    std::string channel_name = "elastic";
    auto* scan = app.add_subcommand("scan", "total-transmission scan CSV");
    scan->add_option("--phi-min", phi_min_deg, "scan start, deg");
    scan->add_option("--phi-max", phi_max_deg, "scan end, deg");
    scan->add_option("--n-angles", n_angles, "scan points");
    scan->add_option("--channel", channel_name, "elastic | excitation | both");
    scan->add_option("--delta-e", delta_e_k, "excitation energy, k_B K");

    auto* s2b = app.add_subcommand("solve2b", "two-body bound states (Numerov)");
    auto* s3b = app.add_subcommand("solve3b", "trimer states (Faddeev/UPA)");

    std::string peaks_path;
    double guess_k = 0.098;
    auto* fit = app.add_subcommand("fit", "transition energy from peak angles");
    fit->add_option("peaks", peaks_path, "peak CSV (phi_prime_deg, phi_deg, "
                                         "sigma_phi_rad[, order_hint])")
        ->required();
    fit->add_option("--delta-e-guess", guess_k, "assignment guess, k_B K");

    double s_min = 0.9, s_max = 1.1;
    int n_strengths = 5;
    auto* efi = app.add_subcommand("efimov", "strength-scan diagnostics");
    efi->add_option("--strength-min", s_min, "lower strength scale");
    efi->add_option("--strength-max", s_max, "upper strength scale");
    efi->add_option("--n-strengths", n_strengths, "scan points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (kin->parsed())
            return cmd_kinematics(shared, phi_prime_deg, delta_e_k,
                                  order_opt->count() > 0, order);
        if (pat->parsed())
            return cmd_pattern(shared, phi_prime_deg, delta_e_k);
        if (scan->parsed())
            return cmd_scan(shared, phi_min_deg, phi_max_deg, n_angles, channel_name,
                            delta_e_k);
        if (s2b->parsed())
            return cmd_solve2b(shared);
        if (s3b->parsed())
            return cmd_solve3b(shared);
        if (fit->parsed())
            return cmd_fit(shared, peaks_path, guess_k);
        if (efi->parsed())
            return cmd_efimov(shared, s_min, s_max, n_strengths);
    } catch (const ChannelClosed& e) {
        std::fprintf(stderr, "kinematic error: %s\n", e.what());
        return 3;
    } catch (const EvanescentOrder& e) {
        std::fprintf(stderr, "kinematic error: %s\n", e.what());
        return 3;
    } catch (const TotalReflection& e) {
        std::fprintf(stderr, "kinematic error: %s\n", e.what());
        return 3;
    } catch (const DegenerateIncidence& e) {
        std::fprintf(stderr, "kinematic error: %s\n", e.what());
        return 3;
    } catch (const GeometryError& e) {
        std::fprintf(stderr, "geometry error: %s\n", e.what());
        return 4;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const MissingParameter& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 5;
    }
    return 2;
}
