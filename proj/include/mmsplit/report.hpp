#pragma once

#include <string>
#include <vector>

#include "mmsplit/decompose.hpp"
#include "mmsplit/model.hpp"
#include "mmsplit/recommend.hpp"

// Rendering: DOT diagrams, fixed-width text tables and a JSON summary.
// All emitters are deterministic; the same inputs give byte-identical
// output.

namespace mmsplit {

enum class OutputFormat { dot, text, structured };

struct RenderOptions {
    OutputFormat format = OutputFormat::text;
    bool include_evidence = true;
    bool cluster_by_context = true;
};

// Data-flow diagram. Processes are ellipses, datastores cylinders,
// external entities boxes; contexts become clusters when requested.
std::string emit_dfd_dot(const MonolithModel& model,
                         const RenderOptions& opts = {});

// Target architecture: services, gateway, aggregators, ACLs and legacy
// systems, with one edge style per protocol (solid rest_http, dashed
// binary_rpc, dotted event_bus).
std::string emit_architecture_dot(
    const DecompositionResult& result,
    const std::vector<Recommendation>& recommendations,
    const RenderOptions& opts = {});

// Per context: the systems-by-processes and processes-by-tables tables
// followed by one MERGE line per evidence item.
std::string emit_merge_trace(const DecompositionResult& result);

// JSON document with contexts, services, recommendations and
// diagnostics. Trace entries are included only when
// opts.include_evidence is set.
std::string emit_summary(const MonolithModel& model,
                         const DecompositionResult& result,
                         const std::vector<Recommendation>& recommendations,
                         const RenderOptions& opts = {});

std::string emit_services_text(const DecompositionResult& result);
std::string emit_recommendations_text(
    const std::vector<Recommendation>& recommendations);
std::string emit_recommendations_json(
    const std::vector<Recommendation>& recommendations);

}  // namespace mmsplit
