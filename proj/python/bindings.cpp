// SPDX-License-Identifier: Apache-2.0
//
// mcht - massive MIMO channel hardening synthesis and analysis toolkit
// Copyright (C) 2026 mcht contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Python extension. Mirrors the C++ surface a notebook needs: array
// builders, channel generators, the tensor container, file io, hardening
// curves and the closed-form theory helpers. Heavy generators release the
// GIL; tensors cross the boundary as numpy copies, never views.

#include <cmath>
#include <complex>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcht/analysis.hpp"
#include "mcht/arrays.hpp"
#include "mcht/errors.hpp"
#include "mcht/gscm.hpp"
#include "mcht/hardening.hpp"
#include "mcht/synth.hpp"
#include "mcht/tensor_io.hpp"
#include "mcht/theory.hpp"
#include "mcht/util.hpp"

namespace py = pybind11;
using namespace mcht;

namespace
{

    Count count_from_double(double v)
    {
        if (std::isinf(v) && v > 0)
            return Count::inf();
        if (!(v >= 1.0) || v != std::floor(v))
            throw usage_error("counts must be positive integers or inf");
        return Count(static_cast<std::size_t>(v));
    }

    const ArrayGeometry *geo_ptr(const std::optional<ArrayGeometry> &geo)
    {
        return geo ? &*geo : nullptr;
    }

    py::array_t<std::complex<double>> tensor_array(const ChannelTensor &t)
    {
        py::array_t<std::complex<double>> out(
            {t.users(), t.snapshots(), t.freqs(), t.antennas()});
        std::memcpy(out.mutable_data(), t.samples().data(), t.size() * sizeof(cplx));
        return out;
    }

    py::array_t<bool> tensor_validity(const ChannelTensor &t)
    {
        py::array_t<bool> out({t.users(), t.snapshots()});
        bool *dst = out.mutable_data();
        for (std::size_t k = 0; k < t.users(); ++k)
            for (std::size_t n = 0; n < t.snapshots(); ++n)
                *dst++ = t.snapshot_is_valid(k, n);
        return out;
    }

    ChannelTensor tensor_from_array(py::array_t<std::complex<double>, py::array::c_style |
                                                                          py::array::forcecast>
                                        samples,
                                    double carrier_freq_hz, const std::string &scenario_label,
                                    const std::string &array_id,
                                    std::optional<py::array_t<bool, py::array::c_style |
                                                                        py::array::forcecast>>
                                        validity)
    {
        if (samples.ndim() != 4)
            throw usage_error("samples must have shape (users, snapshots, freqs, antennas)");
        const auto users = static_cast<std::size_t>(samples.shape(0));
        const auto snapshots = static_cast<std::size_t>(samples.shape(1));
        const auto freqs = static_cast<std::size_t>(samples.shape(2));
        const auto antennas = static_cast<std::size_t>(samples.shape(3));

        std::vector<cplx> data(static_cast<std::size_t>(samples.size()));
        std::memcpy(data.data(), samples.data(), data.size() * sizeof(cplx));

        std::vector<std::uint8_t> mask;
        if (validity)
        {
            if (validity->ndim() != 2 ||
                static_cast<std::size_t>(validity->shape(0)) != users ||
                static_cast<std::size_t>(validity->shape(1)) != snapshots)
                throw usage_error("validity must have shape (users, snapshots)");
            mask.resize(users * snapshots);
            const bool *src = validity->data();
            for (std::size_t i = 0; i < mask.size(); ++i)
                mask[i] = src[i] ? 1 : 0;
        }

        ChannelMeta meta;
        meta.carrier_freq_hz = carrier_freq_hz;
        meta.scenario_label = scenario_label;
        meta.array_id = array_id;
        return ChannelTensor(users, snapshots, freqs, antennas, std::move(data), meta,
                             std::move(mask));
    }

    HardeningCurve curve_by_name(const ChannelTensor &t, std::size_t user,
                                 const std::string &order,
                                 const std::optional<ArrayGeometry> &geo)
    {
        return hardening_curve(t, user, order_kind_from_name(order), geo_ptr(geo));
    }

}

PYBIND11_MODULE(_mcht, m)
{
    m.doc() = "massive MIMO channel hardening synthesis and analysis";
    m.attr("__version__") = mcht_version;

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<data_error>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<invariant_error>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def_readonly("array_id", &ArrayGeometry::array_id)
        .def_readonly("carrier_freq_hz", &ArrayGeometry::carrier_freq_hz)
        .def("__len__", &ArrayGeometry::size)
        .def("to_json", [](const ArrayGeometry &g) { return geometry_json(g); })
        .def("__repr__",
             [](const ArrayGeometry &g)
             {
                 return "<ArrayGeometry " + g.array_id + ", " + std::to_string(g.size()) +
                        " ports>";
             });

    m.def("build_cylindrical", &build_cylindrical);
    m.def("build_planar", &build_planar);
    m.def("build_linear", &build_linear, py::arg("count"), py::arg("carrier_freq_hz") = 2.6e9);

    py::class_<ChannelTensor>(m, "ChannelTensor")
        .def_property_readonly("users", &ChannelTensor::users)
        .def_property_readonly("snapshots", &ChannelTensor::snapshots)
        .def_property_readonly("freqs", &ChannelTensor::freqs)
        .def_property_readonly("antennas", &ChannelTensor::antennas)
        .def_property_readonly("carrier_freq_hz",
                               [](const ChannelTensor &t) { return t.meta().carrier_freq_hz; })
        .def_property_readonly("scenario_label",
                               [](const ChannelTensor &t) { return t.meta().scenario_label; })
        .def_property_readonly("array_id",
                               [](const ChannelTensor &t) { return t.meta().array_id; })
        .def("array", &tensor_array,
             "Samples as a complex (users, snapshots, freqs, antennas) array")
        .def("validity", &tensor_validity, "Per-(user, snapshot) validity as a bool array")
        .def_static("from_array", &tensor_from_array, py::arg("samples"),
                    py::arg("carrier_freq_hz") = 0.0, py::arg("scenario_label") = "",
                    py::arg("array_id") = "", py::arg("validity") = std::nullopt)
        .def("__repr__",
             [](const ChannelTensor &t)
             {
                 return "<ChannelTensor " + std::to_string(t.users()) + "x" +
                        std::to_string(t.snapshots()) + "x" + std::to_string(t.freqs()) + "x" +
                        std::to_string(t.antennas()) +
                        (t.meta().scenario_label.empty() ? std::string()
                                                         : " " + t.meta().scenario_label) +
                        ">";
             });

    m.def("gen_iid_gaussian", &gen_iid_gaussian, py::arg("users"), py::arg("snapshots"),
          py::arg("freqs"), py::arg("antennas"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("gen_keyhole", &gen_keyhole, py::arg("snapshots"), py::arg("freqs"),
          py::arg("antennas"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
    m.def("gen_finite_scatterer", &gen_finite_scatterer, py::arg("paths"), py::arg("geometry"),
          py::arg("snapshots"), py::arg("freqs"), py::arg("seed"),
          py::arg("bandwidth_hz") = 40e6, py::arg("tau_max_s") = 500e-9,
          py::call_guard<py::gil_scoped_release>());

    m.def("default_indoor_config_json",
          [] { return gscm_config_json(default_indoor_config()); });
    m.def(
        "gen_gscm",
        [](const ArrayGeometry &geometry, const std::optional<std::string> &config_json,
           const std::string &user_pattern, std::optional<std::uint64_t> seed)
        {
            GscmConfig config = config_json ? gscm_config_from_json_text(*config_json)
                                            : default_indoor_config();
            if (seed)
                config.seed = *seed;
            UserAntenna user;
            if (user_pattern == "directive")
                user.kind = UserPatternKind::directive;
            else if (user_pattern != "omni")
                throw usage_error("user_pattern must be 'omni' or 'directive'");
            py::gil_scoped_release release;
            return gen_gscm(config, geometry, user);
        },
        py::arg("geometry"), py::arg("config_json") = std::nullopt,
        py::arg("user_pattern") = "omni", py::arg("seed") = std::nullopt);

    m.def("read_tensor", &read_tensor, py::arg("path"),
          py::call_guard<py::gil_scoped_release>());
    m.def("write_tensor", &write_tensor, py::arg("tensor"), py::arg("path"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<HardeningCurve>(m, "HardeningCurve")
        .def_property_readonly("std_db",
                               [](const HardeningCurve &c)
                               { return py::array_t<double>(py::ssize_t(c.std_db.size()),
                                                            c.std_db.data()); })
        .def_readonly("hardening_db", &HardeningCurve::hardening_db)
        .def_property_readonly("order",
                               [](const HardeningCurve &c) { return order_kind_name(c.order); })
        .def("__len__", &HardeningCurve::max_size)
        .def("__repr__",
             [](const HardeningCurve &c)
             {
                 return "<HardeningCurve " + std::to_string(c.max_size()) + " sizes, " +
                        std::to_string(c.hardening_db) + " dB>";
             });

    m.def("hardening_curve", &curve_by_name, py::arg("tensor"), py::arg("user") = 0,
          py::arg("order") = "strongest_first", py::arg("geometry") = std::nullopt);

    m.def(
        "order_antennas",
        [](const ChannelTensor &t, std::size_t user, const std::string &order,
           const std::optional<ArrayGeometry> &geo)
        { return order_antennas(t, user, order_kind_from_name(order), geo_ptr(geo)).indices; },
        py::arg("tensor"), py::arg("user") = 0, py::arg("order") = "strongest_first",
        py::arg("geometry") = std::nullopt);

    m.def(
        "gain_cdf",
        [](const ChannelTensor &t, std::size_t user, const std::string &order,
           const std::optional<ArrayGeometry> &geo)
        {
            const SubsetSelection sel =
                order_antennas(t, user, order_kind_from_name(order), geo_ptr(geo));
            const EmpiricalCdf cdf = empirical_cdf(subset_gain(normalize(t, user, sel)));
            return py::make_tuple(
                py::array_t<double>(py::ssize_t(cdf.x_db.size()), cdf.x_db.data()),
                py::array_t<double>(py::ssize_t(cdf.prob.size()), cdf.prob.data()));
        },
        py::arg("tensor"), py::arg("user") = 0, py::arg("order") = "original",
        py::arg("geometry") = std::nullopt,
        "Empirical CDF of the normalized subset gain, as (x_db, prob) arrays");

    m.def("exponential_reference_cdf_db", &exponential_reference_cdf_db, py::arg("x_db"));

    m.def(
        "gain_map",
        [](const ChannelTensor &t, std::size_t user)
        {
            const GainMap map = gain_map(t, user);
            return py::make_tuple(
                py::array_t<double>(py::ssize_t(map.gain_db.size()), map.gain_db.data()),
                map.median_antenna);
        },
        py::arg("tensor"), py::arg("user") = 0,
        "Per-antenna average gain in dB and the index of the lower-median antenna");

    m.def(
        "pol_ratio_stats",
        [](const ChannelTensor &t, std::size_t user, const ArrayGeometry &geo)
        {
            const PolRatioStats s = pol_ratio_stats(t, user, geo);
            return py::make_tuple(s.mean_db, s.std_db, s.samples);
        },
        py::arg("tensor"), py::arg("user"), py::arg("geometry"),
        "V-over-H gain ratio statistics as (mean_db, std_db, samples)");

    m.def(
        "cv_squared_closed",
        [](double m_count, double p_count)
        { return cv_squared_closed(count_from_double(m_count), count_from_double(p_count)); },
        py::arg("antennas"), py::arg("paths"),
        "Closed-form squared coefficient of variation; pass math.inf for a limit");

    m.def(
        "std_surface",
        [](const std::vector<double> &m_grid, const std::vector<double> &p_grid)
        {
            std::vector<Count> m_counts, p_counts;
            for (double v : m_grid)
                m_counts.push_back(count_from_double(v));
            for (double v : p_grid)
                p_counts.push_back(count_from_double(v));
            const StdSurface s = std_surface(m_counts, p_counts);
            py::array_t<double> out({m_counts.size(), p_counts.size()});
            for (std::size_t i = 0; i < m_counts.size(); ++i)
                for (std::size_t j = 0; j < p_counts.size(); ++j)
                    out.mutable_at(i, j) = s.at(i, j);
            return out;
        },
        py::arg("m_grid"), py::arg("p_grid"),
        "Gain-std surface in dB over antenna and path count grids");
}
