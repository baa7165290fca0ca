#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmsplit/model.hpp"

// Partitioning of each bounded context into service candidates. Systems
// are merged when they share a business process, or when processes from
// both touch the same table; merging runs to fixpoint, which is just the
// connected components of the affinity graph.

namespace mmsplit {

struct MergeRule {
    bool shared_process = true;
    bool shared_table = true;
};

// A table reached by two distinct processes with no common owning system.
// process_a < process_b.
struct TableShare {
    std::string process_a;
    std::string process_b;
    std::string table;

    bool operator==(const TableShare&) const = default;
    auto operator<=>(const TableShare&) const = default;
};

// Why two systems ended up in the same component. For shared_process the
// witness is the process id; for shared_table it is the (p,q,t) triple.
struct MergeEvidence {
    std::string rule;  // "shared_process" | "shared_table"
    std::string context_id;
    std::string left_system;   // left_system < right_system
    std::string right_system;
    std::variant<std::string, TableShare> witness;

    bool operator==(const MergeEvidence&) const = default;
    auto operator<=>(const MergeEvidence&) const = default;
};

struct AffinityEdge {
    std::string left_system;  // left_system < right_system
    std::string right_system;
    std::vector<MergeEvidence> evidence;
};

struct AffinityGraph {
    std::string context_id;
    std::vector<std::string> systems;  // sorted
    std::vector<AffinityEdge> edges;   // sorted by (left, right)
};

struct ServiceCandidate {
    std::string name;
    std::string context_id;
    std::vector<std::string> members;    // system ids, sorted
    std::vector<std::string> processes;  // sorted, unique
    std::vector<std::string> tables;     // sorted, unique
    std::vector<MergeEvidence> trace;
};

struct ContextDecomposition {
    std::string context_id;
    std::string display_name;
    std::vector<ServiceCandidate> services;
    // Snapshots used by the reporting layer.
    std::map<std::string, std::string> system_display_names;
    std::map<std::string, std::vector<std::string>> system_processes;
    std::map<std::string, std::vector<std::string>> process_tables;
};

struct Diagnostic {
    std::string code;  // "table_id_collision"
    std::string message;

    bool operator==(const Diagnostic&) const = default;
    auto operator<=>(const Diagnostic&) const = default;
};

struct DecompositionResult {
    std::string model_name;
    std::vector<ContextDecomposition> contexts;
    std::vector<Diagnostic> diagnostics;
};

// Thrown by decompose() when the model does not validate.
class ValidationFailure : public std::runtime_error {
public:
    explicit ValidationFailure(ValidationReport report)
        : std::runtime_error("model failed validation"),
          report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Processes listed by more than one system, each mapped to the sorted
// ids of the systems listing it.
std::map<std::string, std::vector<std::string>> shared_processes(
    const BoundedContext& ctx);

// Table shares between processes that have no owning system in common.
std::vector<TableShare> cross_system_shared_tables(const BoundedContext& ctx);

AffinityGraph affinity_graph(const BoundedContext& ctx, const MergeRule& rule);

// Connected components of the graph. Components are sorted by smallest
// member; members within a component are sorted.
std::vector<std::vector<std::string>> merge_components(
    const AffinityGraph& graph);

// Reference fixpoint: start from singleton groups and repeatedly merge
// any two groups joined by an edge until nothing changes. Slower than
// merge_components but independent of it; must agree on every input.
std::vector<std::vector<std::string>> naive_fixpoint_partition(
    const AffinityGraph& graph);

ContextDecomposition decompose_context(const BoundedContext& ctx,
                                       const MonolithModel& model,
                                       const MergeRule& rule);

DecompositionResult decompose(const MonolithModel& model,
                              const MergeRule& rule = {});

}  // namespace mmsplit
