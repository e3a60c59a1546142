#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "odo/errors.hpp"
#include "odo/hierarchy.hpp"
#include "odo/job.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Centralizers of ordinary differential operators";
    auto base = py::register_exception<odo::Error>(m, "Error");
    py::register_exception<odo::ParseError>(m, "ParseError", base.ptr());
    py::register_exception<odo::ContractError>(m, "ContractError", base.ptr());
    py::register_exception<odo::ResourceError>(m, "ResourceError", base.ptr());

    m.def(
        "run_json",
        [](const std::string& config_json) {
            odo::JobConfig config = odo::merge_config({}, config_json);
            odo::JobOutcome out;
            {
                py::gil_scoped_release release;
                out = odo::run_job(config);
            }
            return py::make_tuple(out.exit_code, out.report);
        },
        py::arg("config_json"), "Runs one job; returns (exit_code, report_json).");

    m.def(
        "almost_commuting",
        [](int n, int mm) {
            odo::HierarchyEntry e = odo::almost_commuting(n, mm);
            std::map<int, std::string> p;
            for (const auto& [order, coef] : e.p.terms()) p[order] = coef.pretty();
            std::vector<std::string> h;
            for (const auto& x : e.h) h.push_back(x.pretty());
            return py::make_tuple(p, h);
        },
        py::arg("n"), py::arg("m"), "(P_m coefficients by order, GD vector) for the formal operator of order n.");

    m.def(
        "serialize_entry", [](int n, int mm) { return odo::serialize(odo::almost_commuting(n, mm)); }, py::arg("n"),
        py::arg("m"));
}
