#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Declarative model of a monolith: bounded contexts holding systems,
// business processes and datastore tables, plus the data-flow diagram
// connecting them and the use cases exercised against them.

namespace mmsplit {

enum class SystemKind { entity, aggregate, domain_service };

std::string_view to_string(SystemKind kind);
SystemKind system_kind_from_string(std::string_view text);

struct BusinessProcess {
    std::string id;
    std::string display_name;
    // Tables this process is declared to read or write, kept sorted and
    // unique so equality means set equality.
    std::vector<std::string> declared_tables;

    bool operator==(const BusinessProcess&) const = default;
};

struct DatastoreTable {
    std::string id;
    std::string display_name;

    bool operator==(const DatastoreTable&) const = default;
};

struct ExternalEntity {
    std::string id;
    std::string display_name;

    bool operator==(const ExternalEntity&) const = default;
};

struct System {
    std::string id;
    std::string display_name;
    SystemKind kind = SystemKind::entity;
    std::vector<BusinessProcess> processes;

    bool operator==(const System&) const = default;
};

struct BoundedContext {
    std::string id;
    std::string display_name;
    std::vector<System> systems;
    std::vector<DatastoreTable> tables;

    bool operator==(const BoundedContext&) const = default;
};

enum class NodeKind { process, datastore, external };

struct NodeRef {
    NodeKind kind = NodeKind::process;
    std::string context_id;  // empty for external entities
    std::string id;

    bool operator==(const NodeRef&) const = default;
    auto operator<=>(const NodeRef&) const = default;
};

// Renders "process:ctx/id", "datastore:ctx/id" or "external:id".
std::string to_string(const NodeRef& ref);
NodeRef node_ref_from_string(std::string_view text);

struct DataFlow {
    NodeRef source;
    NodeRef target;
    std::string label;

    bool operator==(const DataFlow&) const = default;
    auto operator<=>(const DataFlow&) const = default;
};

struct EventFlow {
    std::string from_context;
    std::string to_context;
    std::string event;

    bool operator==(const EventFlow&) const = default;
    auto operator<=>(const EventFlow&) const = default;
};

struct UseCase {
    std::string id;
    std::string description;
    std::vector<std::string> touches;  // context ids, declaration order, unique
    bool needs_legacy = false;
    std::vector<EventFlow> event_flows;

    bool operator==(const UseCase&) const = default;
};

struct MonolithModel {
    std::string name;
    std::vector<BoundedContext> contexts;
    std::vector<ExternalEntity> external_entities;
    std::vector<UseCase> use_cases;
    std::vector<DataFlow> flows;
    // Key: sorted set of system ids to merge; value: service name override.
    std::map<std::vector<std::string>, std::string> rename_map;
    std::vector<std::string> legacy_systems;  // sorted, unique

    bool operator==(const MonolithModel&) const = default;
};

// Raised for malformed input. code is one of "syntax_error",
// "duplicate_id", "unresolved_reference". line/column are 1-based when
// known, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string code, const std::string& message,
               std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(message),
          code_(std::move(code)), line_(line), column_(column) {}

    const std::string& code() const { return code_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string code_;
    std::size_t line_;
    std::size_t column_;
};

struct Violation {
    std::string rule;      // "R1".."R7"
    std::string location;  // e.g. "loan/LRM" or "flow 12"
    std::string message;

    bool operator==(const Violation&) const = default;
    auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

MonolithModel parse_model(std::string_view text);
MonolithModel load_model(const std::string& path);
std::string serialize_model(const MonolithModel& model);

ValidationReport validate_model(const MonolithModel& model);

// Tables each process touches according to the flow graph, keyed by
// (context id, process id). Values are sorted and unique.
using TableUsage =
    std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

TableUsage derive_table_usage(const MonolithModel& model);

// Sorts every collection into its canonical order (ids ascending, flows
// by source/target/label). Idempotent.
MonolithModel canonicalize(const MonolithModel& model);

}  // namespace mmsplit
