#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mmsplit/decompose.hpp"
#include "mmsplit/model.hpp"

// Post-decomposition advice: aggregators for use cases that span
// contexts, API gateway routes, anti-corruption layers in front of
// legacy systems, and a protocol for every communication edge.

namespace mmsplit {

enum class Protocol { rest_http, binary_rpc, event_bus };
enum class Direction { client_to_service, service_to_service, event };

std::string_view to_string(Protocol p);
std::string_view to_string(Direction d);

struct AggregatorDetail {
    std::vector<std::string> targets;  // service names, context-id order
    bool caution = true;
    std::string note;
};

struct GatewayRouteDetail {
    std::string route;    // "/<context>/<kebab-case-service>"
    std::string service;
};

struct AclDetail {
    std::string service;
    std::string legacy_system;
};

struct ProtocolDetail {
    std::string from;  // "gateway", "aggregator:<ucid>", or service name
    std::string to;
    Protocol protocol = Protocol::rest_http;
    Direction direction = Direction::client_to_service;
    std::string event;  // set for event_bus edges
    std::string note;
};

struct Recommendation {
    std::string kind;  // "aggregator" | "gateway_route" | "acl" | "protocol"
    std::string subject;
    std::variant<AggregatorDetail, GatewayRouteDetail, AclDetail,
                 ProtocolDetail>
        detail;
};

// Use cases touching more than one context get an aggregator over the
// primary service of each touched context.
std::vector<Recommendation> recommend_aggregators(
    const MonolithModel& model, const DecompositionResult& result);

// One route per service. Throws std::runtime_error if two services in a
// context collide after kebab-casing.
std::vector<Recommendation> recommend_gateway(
    const DecompositionResult& result);

std::vector<Recommendation> recommend_acl(const MonolithModel& model,
                                          const DecompositionResult& result);

std::vector<Recommendation> assign_protocols(
    const MonolithModel& model, const DecompositionResult& result);

// All of the above, in order: aggregators, gateway routes, ACLs,
// protocols.
std::vector<Recommendation> recommend_all(const MonolithModel& model,
                                          const DecompositionResult& result);

// The service a context is reached through: the candidate containing a
// domain_service system (lexicographically first name on ties), or the
// first candidate when the context has none.
std::string primary_service(const ContextDecomposition& ctx,
                            const BoundedContext& source);

std::string kebab_case(std::string_view text);

}  // namespace mmsplit
