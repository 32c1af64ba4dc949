// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the core surface-configuration operations:
// geometry construction, the two channel legs, amplitude-variation
// metrics, grouping and scattering-matrix synthesis, beam-pattern
// summaries, and circuit complexity accounting.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "bdris/channel.hpp"
#include "bdris/geometry.hpp"
#include "bdris/metrics.hpp"
#include "bdris/precoder.hpp"
#include "bdris/ris_config.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

namespace py = pybind11;
using namespace bdris;

namespace {

GroupingStrategy strategy_from(const std::string& name) {
    if (name == "linear") return GroupingStrategy::Linear;
    if (name == "rows") return GroupingStrategy::Rows;
    if (name == "mirror") return GroupingStrategy::MirrorSymmetric;
    throw std::invalid_argument("grouping must be \"linear\", \"rows\" or \"mirror\"");
}

Architecture architecture_from(const std::string& name) {
    if (name == "active") return Architecture::Active;
    if (name == "dris") return Architecture::Dris;
    if (name == "bd") return Architecture::BdFull;
    if (name == "bd_group") return Architecture::BdGroup;
    throw std::invalid_argument("architecture must be \"active\", \"dris\", \"bd\" or \"bd_group\"");
}

Scenario scenario_from(const std::string& name) {
    if (name == "los") return Scenario::LosPresent;
    if (name == "blocked") return Scenario::LosBlocked;
    throw std::invalid_argument("scenario must be \"los\" or \"blocked\"");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Passive-beamforming simulator core: geometry, channels, "
              "scattering-matrix synthesis, and pattern/complexity metrics.";
    m.attr("__version__") = "0.1.0";

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def_readonly("m_x_count", &ArrayGeometry::m_x_count)
        .def_readonly("m_y_count", &ArrayGeometry::m_y_count)
        .def_readonly("dx", &ArrayGeometry::dx)
        .def_readonly("dy", &ArrayGeometry::dy)
        .def_readonly("separation", &ArrayGeometry::separation)
        .def_readonly("wavelength", &ArrayGeometry::wavelength)
        .def_readonly("cell_area", &ArrayGeometry::cell_area)
        .def_readonly("pos_x", &ArrayGeometry::pos_x)
        .def_readonly("pos_y", &ArrayGeometry::pos_y)
        .def_readonly("offset", &ArrayGeometry::offset)
        .def_readonly("dist", &ArrayGeometry::dist)
        .def("size", &ArrayGeometry::size)
        .def("__repr__", [](const ArrayGeometry& g) {
            return "ArrayGeometry(" + std::to_string(g.m_x_count) + "x" +
                   std::to_string(g.m_y_count) + ")";
        });

    py::class_<Grouping>(m, "Grouping")
        .def_readonly("group_count", &Grouping::group_count)
        .def_readonly("groups", &Grouping::groups)
        .def("__len__", [](const Grouping& g) { return g.groups.size(); });

    py::class_<CavReport>(m, "CavReport")
        .def_readonly("mean", &CavReport::mean)
        .def_readonly("std_dev", &CavReport::std_dev)
        .def_readonly("cav", &CavReport::cav);

    m.def("build_geometry", &build_geometry, py::arg("m_x_count"), py::arg("m_y_count"),
          py::arg("dx"), py::arg("dy"), py::arg("separation"), py::arg("wavelength"),
          py::arg("cell_area"),
          "Planar cell grid facing its feed antenna at the given separation.");

    m.def(
        "steering_vector",
        [](const ArrayGeometry& geo, double azimuth, double elevation) {
            return steering_vector(geo, Direction{azimuth, elevation});
        },
        py::arg("geo"), py::arg("azimuth"), py::arg("elevation"),
        "Unit-norm array response toward the given direction (radians).");

    m.def("bs_ris_channel", &bs_ris_channel, py::arg("geo"),
          "Deterministic near-field feed channel of every cell.");

    m.def(
        "sample_user_channel",
        [](const ArrayGeometry& geo, std::uint64_t seed, std::uint64_t trial,
           const std::string& scenario, double distance_m, int clusters, int paths_per_cluster,
           double angle_spread_deg) {
            ChannelParams params;
            params.distance_m = distance_m;
            params.num_clusters = clusters;
            params.num_paths = paths_per_cluster;
            params.angle_spread_deg = angle_spread_deg;
            Rng rng(seed, trial);
            return sample_ris_ue_channel(geo, params, scenario_from(scenario), rng).h;
        },
        py::arg("geo"), py::arg("seed"), py::arg("trial"), py::arg("scenario") = "los",
        py::arg("distance_m") = 20.0, py::arg("clusters") = 8, py::arg("paths_per_cluster") = 10,
        py::arg("angle_spread_deg") = 7.5,
        "One clustered user-link realization from the stream (seed, trial).");

    m.def("cav", &cav, py::arg("amplitudes"),
          "Coefficient of amplitude variation (population spread over mean).");
    m.def("gain_floor_db", &gain_floor_db, py::arg("cav"),
          "Guaranteed gain of joint amplitude-and-phase alignment over phase-only tuning.");
    m.def("gain_ceiling_db", &gain_ceiling_db, py::arg("cav"),
          "Asymptotic gain under entrywise-Gaussian scattering.");

    m.def("make_grouping", [](const ArrayGeometry& geo, int group_count,
                              const std::string& strategy) {
              return make_grouping(geo, group_count, strategy_from(strategy));
          },
          py::arg("geo"), py::arg("group_count"), py::arg("strategy") = "linear",
          "Disjoint equal-size cell groups: \"linear\", \"rows\" or \"mirror\".");

    m.def(
        "configure_bdris",
        [](const VecC& g, const VecC& b, const Grouping& grouping) {
            return configure_bdris(g, b, grouping).dense();
        },
        py::arg("g"), py::arg("b"), py::arg("grouping"),
        "Dense block-unitary scattering matrix aligning each group of the "
        "feed channel g onto the target direction b.");

    m.def(
        "configure_dris",
        [](const VecC& g, const VecC& b) { return configure_dris(g, b).dense(); },
        py::arg("g"), py::arg("b"),
        "Dense diagonal phase-alignment scattering matrix.");

    m.def("active_array_weights", &active_array_weights, py::arg("v1"),
          "Phase-only transmit weights of the active-array benchmark.");

    m.def(
        "beam_pattern_summary",
        [](const VecC& zeta, const ArrayGeometry& geo) {
            const BeamPattern bp = beam_pattern(zeta, geo);
            py::dict out;
            out["ppd_dbi"] = bp.ppd_dbi;
            out["hppd_dbi"] = bp.hppd_dbi;
            out["hpbw_deg"] = bp.hpbw_deg;
            out["peak_azimuth_deg"] = rad2deg(bp.peak_azimuth);
            out["peak_elevation_deg"] = rad2deg(bp.peak_elevation);
            return out;
        },
        py::arg("zeta"), py::arg("geo"),
        "Directivity figures of the far-field pattern of an effective "
        "transmit vector: peak, half-beamwidth offset level, and width.");

    m.def(
        "circuit_complexity",
        [](const std::string& architecture, int m_cells, int group_count) {
            const ComplexityReport rep =
                circuit_complexity(architecture_from(architecture), m_cells, group_count);
            py::dict out;
            out["circuit_count"] = rep.circuit_count;
            out["algo_flop_model"] = rep.algo_flop_model;
            return out;
        },
        py::arg("architecture"), py::arg("m_cells"), py::arg("group_count") = 1,
        "Tunable-element count and configuration-cost scaling model.");
}
