#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmsplit/decompose.hpp"
#include "mmsplit/model.hpp"
#include "mmsplit/recommend.hpp"
#include "mmsplit/report.hpp"
#include "mmsplit/version.hpp"

namespace py = pybind11;
using namespace mmsplit;

PYBIND11_MODULE(_core, m) {
    m.doc() = "monolith to microservices decomposition analyzer";
    m.attr("__version__") = version;

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<ValidationFailure>(m, "ValidationFailure");

    py::class_<MonolithModel>(m, "Model")
        .def_property_readonly(
            "name", [](const MonolithModel& model) { return model.name; })
        .def("__repr__", [](const MonolithModel& model) {
            return "<mmsplit.Model '" + model.name + "' with " +
                   std::to_string(model.contexts.size()) + " contexts>";
        });

    py::class_<MergeEvidence>(m, "MergeEvidence")
        .def_readonly("rule", &MergeEvidence::rule)
        .def_readonly("context_id", &MergeEvidence::context_id)
        .def_readonly("left_system", &MergeEvidence::left_system)
        .def_readonly("right_system", &MergeEvidence::right_system)
        .def_property_readonly("witness", [](const MergeEvidence& ev) -> py::object {
            if (ev.rule == "shared_process")
                return py::str(std::get<std::string>(ev.witness));
            const auto& share = std::get<TableShare>(ev.witness);
            return py::make_tuple(share.process_a, share.process_b,
                                  share.table);
        });

    py::class_<ServiceCandidate>(m, "ServiceCandidate")
        .def_readonly("name", &ServiceCandidate::name)
        .def_readonly("context_id", &ServiceCandidate::context_id)
        .def_readonly("members", &ServiceCandidate::members)
        .def_readonly("processes", &ServiceCandidate::processes)
        .def_readonly("tables", &ServiceCandidate::tables)
        .def_readonly("trace", &ServiceCandidate::trace);

    py::class_<ContextDecomposition>(m, "ContextDecomposition")
        .def_readonly("context_id", &ContextDecomposition::context_id)
        .def_readonly("services", &ContextDecomposition::services);

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("code", &Diagnostic::code)
        .def_readonly("message", &Diagnostic::message);

    py::class_<DecompositionResult>(m, "DecompositionResult")
        .def_readonly("model_name", &DecompositionResult::model_name)
        .def_readonly("contexts", &DecompositionResult::contexts)
        .def_readonly("diagnostics", &DecompositionResult::diagnostics);

    m.def("load_model", &load_model, py::arg("path"));
    m.def(
        "parse_model",
        [](const std::string& text) { return parse_model(text); },
        py::arg("text"));
    m.def("serialize_model", &serialize_model, py::arg("model"));
    m.def(
        "canonicalize",
        [](const MonolithModel& model) { return canonicalize(model); },
        py::arg("model"));
    m.def(
        "validate_model",
        [](const MonolithModel& model) {
            std::vector<std::tuple<std::string, std::string, std::string>> out;
            for (const auto& v : validate_model(model).violations)
                out.emplace_back(v.rule, v.location, v.message);
            return out;
        },
        py::arg("model"));
    m.def("derive_table_usage", &derive_table_usage, py::arg("model"));
    m.def(
        "decompose",
        [](const MonolithModel& model, bool shared_process,
           bool shared_table) {
            return decompose(model, MergeRule{shared_process, shared_table});
        },
        py::arg("model"), py::arg("shared_process") = true,
        py::arg("shared_table") = true);
    m.def(
        "recommendations_json",
        [](const MonolithModel& model, const DecompositionResult& result) {
            return emit_recommendations_json(recommend_all(model, result));
        },
        py::arg("model"), py::arg("result"));
    m.def(
        "summary_json",
        [](const MonolithModel& model, bool include_evidence) {
            DecompositionResult result = decompose(model);
            RenderOptions opts;
            opts.format = OutputFormat::structured;
            opts.include_evidence = include_evidence;
            return emit_summary(model, result,
                                recommend_all(model, result), opts);
        },
        py::arg("model"), py::arg("include_evidence") = true);
    m.def(
        "dfd_dot",
        [](const MonolithModel& model, bool cluster_by_context) {
            RenderOptions opts;
            opts.format = OutputFormat::dot;
            opts.cluster_by_context = cluster_by_context;
            return emit_dfd_dot(model, opts);
        },
        py::arg("model"), py::arg("cluster_by_context") = true);
    m.def(
        "architecture_dot",
        [](const MonolithModel& model, bool cluster_by_context) {
            DecompositionResult result = decompose(model);
            RenderOptions opts;
            opts.format = OutputFormat::dot;
            opts.cluster_by_context = cluster_by_context;
            return emit_architecture_dot(
                result, recommend_all(model, result), opts);
        },
        py::arg("model"), py::arg("cluster_by_context") = true);
    m.def(
        "merge_trace",
        [](const MonolithModel& model) {
            return emit_merge_trace(decompose(model));
        },
        py::arg("model"));
}
