// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "trimdiff/errors.hpp"
#include "trimdiff/keyvalue.hpp"

namespace trimdiff::config {

RunConfig RunConfig::from_text(const std::string& text)
{
    auto doc = keyvalue::Document::parse(text);
    static const std::set<std::string> known = {"",          "source",     "geometry",
                                               "surface",    "potential",  "excitation",
                                               "numerics",   "output"};
    for (const auto& name : doc.section_names()) {
        if (!known.count(name))
            throw ParseError("unknown section [" + name + "]");
        if (name.empty() && !doc.section("").empty())
            throw ParseError("keys before the first section header");
    }

    RunConfig cfg;
    if (doc.has_section("source")) {
        auto& s = doc.section("source");
        cfg.source.nozzle_temperature =
            s.get_double_or("temperature_k", cfg.source.nozzle_temperature);
        cfg.source.carrier_mass = s.get_double_or("carrier_mass_kg", cfg.source.carrier_mass);
        cfg.source.cluster_size = s.get_int_or("cluster_size", cfg.source.cluster_size);
        cfg.source.speed_ratio = s.get_double_or("speed_ratio", cfg.source.speed_ratio);
        s.reject_unknown("[source]");
        cfg.source.validate();
    }
    if (doc.has_section("geometry")) {
        auto& s = doc.section("geometry");
        cfg.geometry.period = s.get_double_or("period_m", cfg.geometry.period);
        cfg.geometry.slit_width = s.get_double_or("slit_width_m", cfg.geometry.slit_width);
        cfg.geometry.thickness = s.get_double_or("thickness_m", cfg.geometry.thickness);
        cfg.geometry.wedge_angle =
            s.get_double_or("wedge_angle_deg", cfg.geometry.wedge_angle * 180.0 / M_PI)
            * M_PI / 180.0;
        s.reject_unknown("[geometry]");
        cfg.geometry.validate();
    }
    if (doc.has_section("surface")) {
        auto& s = doc.section("surface");
        cfg.surface.c3 = s.get_double_or("c3_jm3", cfg.surface.c3);
        cfg.surface.l_min = s.get_double_or("l_min_m", cfg.surface.l_min);
        s.reject_unknown("[surface]");
        cfg.surface.validate();
    }
    if (doc.has_section("potential")) {
        cfg.potential = potentials::read_potential_section(doc.section("potential"));
    }
    if (doc.has_section("excitation")) {
        auto& s = doc.section("excitation");
        cfg.excitation.edge_amplitude =
            s.get_double_or("edge_amplitude", cfg.excitation.edge_amplitude);
        cfg.excitation.localization_length =
            s.get_double_or("localization_length_m", cfg.excitation.localization_length);
        cfg.excitation.grazing_gain =
            s.get_double_or("grazing_gain", cfg.excitation.grazing_gain);
        s.reject_unknown("[excitation]");
        cfg.excitation.validate();
    }
    if (doc.has_section("numerics")) {
        auto& s = doc.section("numerics");
        Numerics& n = cfg.numerics;
        n.r_max = s.get_double_or("r_max_m", n.r_max);
        n.n_radial = s.get_int_or("n_radial", n.n_radial);
        n.p_max = s.get_double_or("p_max_inv_nm", n.p_max);
        n.n_p = s.get_int_or("n_p", n.n_p);
        n.q_bar = s.get_double_or("q_bar_inv_nm", n.q_bar);
        n.q_max = s.get_double_or("q_max_inv_nm", n.q_max);
        n.n_q = s.get_int_or("n_q", n.n_q);
        n.n_theta = s.get_int_or("n_theta", n.n_theta);
        n.window_floor_mk = s.get_double_or("window_floor_mk", n.window_floor_mk);
        n.window_ceiling_mk = s.get_double_or("window_ceiling_mk", n.window_ceiling_mk);
        n.n_scan = s.get_int_or("n_scan", n.n_scan);
        n.n_samples = s.get_int_or("n_samples", n.n_samples);
        n.n_depth = s.get_int_or("n_depth", n.n_depth);
        n.opacity_phase = s.get_double_or("opacity_phase", n.opacity_phase);
        n.sigma_res = s.get_double_or("sigma_res_rad", n.sigma_res);
        n.n_speed = s.get_int_or("n_speed", n.n_speed);
        s.reject_unknown("[numerics]");
        if (n.r_max <= 0 || n.n_radial < 100 || n.p_max <= 0 || n.n_p < 16
            || n.n_q < 8 || n.n_theta < 2
            || n.n_scan < 2 || n.n_samples < 2 || n.n_depth < 2 || n.n_speed < 1
            || n.sigma_res < 0)
            throw ParseError("[numerics]: parameter out of range");
    }
    if (doc.has_section("output")) {
        auto& s = doc.section("output");
        cfg.output_dir = s.get_string_or("directory", cfg.output_dir);
        s.reject_unknown("[output]");
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

}  // namespace trimdiff::config
