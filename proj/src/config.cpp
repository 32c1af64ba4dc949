// SPDX-License-Identifier: Apache-2.0

#include "bdris/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace bdris {

namespace {

using nlohmann::json;

// Collects violations while pulling typed fields out of one section, so
// a bad config reports every problem in a single pass.
class SectionReader {
  public:
    SectionReader(const json& section, std::string prefix, std::vector<std::string>& errors)
        : section_(section), prefix_(std::move(prefix)), errors_(errors) {}

    void number(const char* key, double& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_number()) {
            fail(key, "expected a number");
            return;
        }
        target = v->get<double>();
    }

    void integer(const char* key, int& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_number_integer()) {
            fail(key, "expected an integer");
            return;
        }
        target = v->get<int>();
    }

    void integer(const char* key, long long& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_number_integer()) {
            fail(key, "expected an integer");
            return;
        }
        target = v->get<long long>();
    }

    void integer(const char* key, std::uint64_t& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_number_integer() || (v->is_number_integer() && v->get<long long>() < 0)) {
            fail(key, "expected a non-negative integer");
            return;
        }
        target = v->get<std::uint64_t>();
    }

    void text(const char* key, std::string& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_string()) {
            fail(key, "expected a string");
            return;
        }
        target = v->get<std::string>();
    }

    void number_list(const char* key, std::vector<double>& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_array() || !std::all_of(v->begin(), v->end(),
                                           [](const json& e) { return e.is_number(); })) {
            fail(key, "expected an array of numbers");
            return;
        }
        target = v->get<std::vector<double>>();
    }

    void integer_list(const char* key, std::vector<int>& target) {
        const json* v = fetch(key);
        if (!v) return;
        if (!v->is_array() || !std::all_of(v->begin(), v->end(), [](const json& e) {
                return e.is_number_integer();
            })) {
            fail(key, "expected an array of integers");
            return;
        }
        target = v->get<std::vector<int>>();
    }

    // Flags keys that matched nothing; catches typos that would
    // otherwise silently fall back to defaults.
    void finish() {
        for (const auto& [key, value] : section_.items()) {
            (void)value;
            if (!seen_.count(key)) fail(key.c_str(), "unknown field");
        }
    }

  private:
    const json* fetch(const char* key) {
        seen_.insert(key);
        const auto it = section_.find(key);
        return (it == section_.end()) ? nullptr : &*it;
    }

    void fail(const char* key, const std::string& why) {
        errors_.push_back(fmt::format("{}.{}: {}", prefix_, key, why));
    }

    const json& section_;
    std::string prefix_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

const json kEmptySection = json::object();

const json& section_or_empty(const json& root, const char* name,
                             std::vector<std::string>& errors) {
    const auto it = root.find(name);
    if (it == root.end()) return kEmptySection;
    if (!it->is_object()) {
        errors.push_back(fmt::format("{}: expected an object", name));
        return kEmptySection;
    }
    return *it;
}

void check_positive(double value, const char* field, std::vector<std::string>& errors) {
    if (!(value > 0.0)) {
        errors.push_back(fmt::format("{}: must be positive (got {})", field, value));
    }
}

} // namespace

double GeometryConfig::wavelength() const { return kSpeedOfLight / carrier_hz; }

ArrayGeometry GeometryConfig::build() const {
    const double lambda = wavelength();
    return build_geometry(m_x, m_y, pitch_x_wavelengths * lambda, pitch_y_wavelengths * lambda,
                          separation_wavelengths * lambda, lambda,
                          cell_area_wavelengths_sq * lambda * lambda);
}

ChannelParams ChannelConfig::params() const {
    ChannelParams p;
    p.los = {los_intercept_db, los_exponent, los_shadow_std_db};
    p.nlos = {nlos_intercept_db, nlos_exponent, nlos_shadow_std_db};
    p.num_clusters = clusters;
    p.num_paths = paths_per_cluster;
    p.angle_spread_deg = angle_spread_deg;
    p.distance_m = distance_m;
    return p;
}

Scenario ChannelConfig::scenario_enum() const {
    return (scenario == "blocked") ? Scenario::LosBlocked : Scenario::LosPresent;
}

CsiMode PrecoderConfig::mode() const { return static_cast<CsiMode>(csi_case); }

GroupingStrategy RisSectionConfig::strategy() const {
    if (grouping == "rows") return GroupingStrategy::Rows;
    if (grouping == "mirror") return GroupingStrategy::MirrorSymmetric;
    return GroupingStrategy::Linear;
}

double EvalSectionConfig::noise_power_dbm() const {
    return bdris::noise_power_dbm(noise_psd_dbm_hz, bandwidth_hz);
}

double EvalSectionConfig::noise_power_mw() const { return db2lin(noise_power_dbm()); }

LinkSetup SimConfig::make_link_setup() const {
    LinkSetup setup;
    setup.geo = geometry.build();
    setup.g = bs_ris_channel(setup.geo);
    setup.channel = channel.params();
    setup.scenario = channel.scenario_enum();
    setup.csi = precoder.mode();
    if (setup.csi == CsiMode::CodebookFeedback) {
        setup.codebook = build_codebook(setup.geo, precoder.codebook_azimuth_steps,
                                        precoder.codebook_elevation_steps);
    }
    setup.grouping = make_grouping(setup.geo, ris.group_count, ris.strategy());
    return setup;
}

SimConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(fmt::format("not valid JSON: {}", e.what()));
    }
    if (!root.is_object()) throw std::runtime_error("top level must be a JSON object");

    std::vector<std::string> errors;
    static const std::set<std::string> known_sections = {"geometry", "channel", "precoder", "ris",
                                                         "eval"};
    for (const auto& [key, value] : root.items()) {
        (void)value;
        if (!known_sections.count(key)) {
            errors.push_back(fmt::format("{}: unknown section", key));
        }
    }

    SimConfig cfg;
    {
        SectionReader r(section_or_empty(root, "geometry", errors), "geometry", errors);
        r.integer("m_x", cfg.geometry.m_x);
        r.integer("m_y", cfg.geometry.m_y);
        r.number("carrier_hz", cfg.geometry.carrier_hz);
        r.number("pitch_x_wavelengths", cfg.geometry.pitch_x_wavelengths);
        r.number("pitch_y_wavelengths", cfg.geometry.pitch_y_wavelengths);
        r.number("separation_wavelengths", cfg.geometry.separation_wavelengths);
        r.number("cell_area_wavelengths_sq", cfg.geometry.cell_area_wavelengths_sq);
        r.finish();
    }
    {
        SectionReader r(section_or_empty(root, "channel", errors), "channel", errors);
        r.number("distance_m", cfg.channel.distance_m);
        r.integer("clusters", cfg.channel.clusters);
        r.integer("paths_per_cluster", cfg.channel.paths_per_cluster);
        r.number("angle_spread_deg", cfg.channel.angle_spread_deg);
        r.number("los_intercept_db", cfg.channel.los_intercept_db);
        r.number("los_exponent", cfg.channel.los_exponent);
        r.number("los_shadow_std_db", cfg.channel.los_shadow_std_db);
        r.number("nlos_intercept_db", cfg.channel.nlos_intercept_db);
        r.number("nlos_exponent", cfg.channel.nlos_exponent);
        r.number("nlos_shadow_std_db", cfg.channel.nlos_shadow_std_db);
        r.text("scenario", cfg.channel.scenario);
        r.finish();
    }
    {
        SectionReader r(section_or_empty(root, "precoder", errors), "precoder", errors);
        r.integer("csi_case", cfg.precoder.csi_case);
        r.integer("codebook_azimuth_steps", cfg.precoder.codebook_azimuth_steps);
        r.integer("codebook_elevation_steps", cfg.precoder.codebook_elevation_steps);
        r.finish();
    }
    {
        SectionReader r(section_or_empty(root, "ris", errors), "ris", errors);
        r.text("grouping", cfg.ris.grouping);
        r.integer("group_count", cfg.ris.group_count);
        r.finish();
    }
    {
        SectionReader r(section_or_empty(root, "eval", errors), "eval", errors);
        r.number("power_dbm", cfg.eval.power_dbm);
        r.number_list("power_grid_dbm", cfg.eval.power_grid_dbm);
        r.number("noise_psd_dbm_hz", cfg.eval.noise_psd_dbm_hz);
        r.number("bandwidth_hz", cfg.eval.bandwidth_hz);
        r.integer("constellation_order", cfg.eval.constellation_order);
        r.integer("trials", cfg.eval.trials);
        r.integer("aber_max_bits", cfg.eval.aber_max_bits);
        r.integer("aber_min_errors", cfg.eval.aber_min_errors);
        r.integer("seed", cfg.eval.seed);
        r.text("sweep_axis", cfg.eval.sweep_axis);
        r.integer_list("sweep_sizes", cfg.eval.sweep_sizes);
        r.number_list("sweep_separations_wavelengths", cfg.eval.sweep_separations_wavelengths);
        r.integer_list("sweep_group_counts", cfg.eval.sweep_group_counts);
        r.integer_list("gain_cluster_counts", cfg.eval.gain_cluster_counts);
        r.finish();
    }

    // Cross-field validation, aggregated with the shape errors above.
    if (cfg.geometry.m_x < 1) errors.push_back("geometry.m_x: must be at least 1");
    if (cfg.geometry.m_y < 1) errors.push_back("geometry.m_y: must be at least 1");
    check_positive(cfg.geometry.carrier_hz, "geometry.carrier_hz", errors);
    check_positive(cfg.geometry.pitch_x_wavelengths, "geometry.pitch_x_wavelengths", errors);
    check_positive(cfg.geometry.pitch_y_wavelengths, "geometry.pitch_y_wavelengths", errors);
    check_positive(cfg.geometry.separation_wavelengths, "geometry.separation_wavelengths", errors);
    check_positive(cfg.geometry.cell_area_wavelengths_sq, "geometry.cell_area_wavelengths_sq",
                   errors);

    check_positive(cfg.channel.distance_m, "channel.distance_m", errors);
    if (cfg.channel.clusters < 1) errors.push_back("channel.clusters: must be at least 1");
    if (cfg.channel.paths_per_cluster < 1) {
        errors.push_back("channel.paths_per_cluster: must be at least 1");
    }
    check_positive(cfg.channel.angle_spread_deg, "channel.angle_spread_deg", errors);
    if (cfg.channel.los_exponent < 1.0 || cfg.channel.nlos_exponent < 1.0) {
        errors.push_back("channel.*_exponent: path loss exponents must be at least 1");
    }
    if (cfg.channel.los_shadow_std_db < 0.0 || cfg.channel.nlos_shadow_std_db < 0.0) {
        errors.push_back("channel.*_shadow_std_db: shadowing deviations must be non-negative");
    }
    if (cfg.channel.scenario != "los" && cfg.channel.scenario != "blocked") {
        errors.push_back(
            fmt::format("channel.scenario: must be \"los\" or \"blocked\" (got \"{}\")",
                        cfg.channel.scenario));
    }

    if (cfg.precoder.csi_case < 1 || cfg.precoder.csi_case > 3) {
        errors.push_back(fmt::format("precoder.csi_case: must be 1, 2 or 3 (got {})",
                                     cfg.precoder.csi_case));
    }
    if (cfg.precoder.codebook_azimuth_steps < 1 || cfg.precoder.codebook_elevation_steps < 1) {
        errors.push_back("precoder.codebook_*_steps: must be at least 1");
    }

    if (cfg.ris.grouping != "linear" && cfg.ris.grouping != "rows" && cfg.ris.grouping != "mirror") {
        errors.push_back(fmt::format(
            "ris.grouping: must be \"linear\", \"rows\" or \"mirror\" (got \"{}\")",
            cfg.ris.grouping));
    } else if (cfg.geometry.m_x >= 1 && cfg.geometry.m_y >= 1) {
        try {
            cfg.make_link_setup();
        } catch (const std::invalid_argument& e) {
            errors.push_back(fmt::format("ris.group_count: {}", e.what()));
        }
    }

    check_positive(cfg.eval.bandwidth_hz, "eval.bandwidth_hz", errors);
    if (cfg.eval.power_grid_dbm.empty()) errors.push_back("eval.power_grid_dbm: must be non-empty");
    if (cfg.eval.constellation_order < 2 ||
        (cfg.eval.constellation_order & (cfg.eval.constellation_order - 1)) != 0) {
        errors.push_back(fmt::format(
            "eval.constellation_order: must be a power of two, at least 2 (got {})",
            cfg.eval.constellation_order));
    }
    if (cfg.eval.trials < 1) errors.push_back("eval.trials: must be at least 1");
    if (cfg.eval.aber_max_bits < 1) errors.push_back("eval.aber_max_bits: must be at least 1");
    if (cfg.eval.aber_min_errors < 1) errors.push_back("eval.aber_min_errors: must be at least 1");
    if (cfg.eval.sweep_axis != "power" && cfg.eval.sweep_axis != "array_size" &&
        cfg.eval.sweep_axis != "separation" && cfg.eval.sweep_axis != "group_count") {
        errors.push_back(fmt::format(
            "eval.sweep_axis: must be one of power, array_size, separation, group_count (got "
            "\"{}\")",
            cfg.eval.sweep_axis));
    }
    if (cfg.eval.sweep_sizes.empty() || cfg.eval.sweep_separations_wavelengths.empty() ||
        cfg.eval.sweep_group_counts.empty() || cfg.eval.gain_cluster_counts.empty()) {
        errors.push_back("eval.sweep_* and eval.gain_cluster_counts: grids must be non-empty");
    }
    for (int s : cfg.eval.sweep_sizes) {
        if (s < 1) errors.push_back("eval.sweep_sizes: entries must be at least 1");
    }
    for (double s : cfg.eval.sweep_separations_wavelengths) {
        if (!(s > 0.0)) errors.push_back("eval.sweep_separations_wavelengths: entries must be positive");
    }
    for (int c : cfg.eval.gain_cluster_counts) {
        if (c < 1) errors.push_back("eval.gain_cluster_counts: entries must be at least 1");
    }

    if (!errors.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            if (i) joined += "; ";
            joined += errors[i];
        }
        throw std::runtime_error(joined);
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    if (path.empty()) return SimConfig{};
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open config file '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_json(const SimConfig& c) {
    json root;
    root["geometry"] = {{"m_x", c.geometry.m_x},
                        {"m_y", c.geometry.m_y},
                        {"carrier_hz", c.geometry.carrier_hz},
                        {"pitch_x_wavelengths", c.geometry.pitch_x_wavelengths},
                        {"pitch_y_wavelengths", c.geometry.pitch_y_wavelengths},
                        {"separation_wavelengths", c.geometry.separation_wavelengths},
                        {"cell_area_wavelengths_sq", c.geometry.cell_area_wavelengths_sq}};
    root["channel"] = {{"distance_m", c.channel.distance_m},
                       {"clusters", c.channel.clusters},
                       {"paths_per_cluster", c.channel.paths_per_cluster},
                       {"angle_spread_deg", c.channel.angle_spread_deg},
                       {"los_intercept_db", c.channel.los_intercept_db},
                       {"los_exponent", c.channel.los_exponent},
                       {"los_shadow_std_db", c.channel.los_shadow_std_db},
                       {"nlos_intercept_db", c.channel.nlos_intercept_db},
                       {"nlos_exponent", c.channel.nlos_exponent},
                       {"nlos_shadow_std_db", c.channel.nlos_shadow_std_db},
                       {"scenario", c.channel.scenario}};
    root["precoder"] = {{"csi_case", c.precoder.csi_case},
                        {"codebook_azimuth_steps", c.precoder.codebook_azimuth_steps},
                        {"codebook_elevation_steps", c.precoder.codebook_elevation_steps}};
    root["ris"] = {{"grouping", c.ris.grouping}, {"group_count", c.ris.group_count}};
    root["eval"] = {{"power_dbm", c.eval.power_dbm},
                    {"power_grid_dbm", c.eval.power_grid_dbm},
                    {"noise_psd_dbm_hz", c.eval.noise_psd_dbm_hz},
                    {"bandwidth_hz", c.eval.bandwidth_hz},
                    {"constellation_order", c.eval.constellation_order},
                    {"trials", c.eval.trials},
                    {"aber_max_bits", c.eval.aber_max_bits},
                    {"aber_min_errors", c.eval.aber_min_errors},
                    {"seed", c.eval.seed},
                    {"sweep_axis", c.eval.sweep_axis},
                    {"sweep_sizes", c.eval.sweep_sizes},
                    {"sweep_separations_wavelengths", c.eval.sweep_separations_wavelengths},
                    {"sweep_group_counts", c.eval.sweep_group_counts},
                    {"gain_cluster_counts", c.eval.gain_cluster_counts}};
    return root.dump(2);
}

} // namespace bdris
