#include "mmsplit/recommend.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <tuple>

namespace mmsplit {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::rest_http: return "rest_http";
        case Protocol::binary_rpc: return "binary_rpc";
        case Protocol::event_bus: return "event_bus";
    }
    return "rest_http";
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::client_to_service: return "client_to_service";
        case Direction::service_to_service: return "service_to_service";
        case Direction::event: return "event";
    }
    return "client_to_service";
}

std::string kebab_case(std::string_view text) {
    std::string out;
    bool pending = false;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (pending && !out.empty()) out += '-';
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            pending = false;
        } else {
            pending = true;
        }
    }
    return out;
}

std::string primary_service(const ContextDecomposition& ctx,
                            const BoundedContext& source) {
    std::set<std::string> service_systems;
    for (const auto& s : source.systems)
        if (s.kind == SystemKind::domain_service) service_systems.insert(s.id);

    std::string best;
    for (const auto& cand : ctx.services) {
        bool hit = std::any_of(cand.members.begin(), cand.members.end(),
                               [&](const std::string& m) {
                                   return service_systems.count(m) > 0;
                               });
        if (hit && (best.empty() || cand.name < best)) best = cand.name;
    }
    if (!best.empty()) return best;
    if (ctx.services.empty())
        throw std::runtime_error("context '" + ctx.context_id +
                                 "' has no service candidates");
    return ctx.services.front().name;
}

namespace {

const BoundedContext& context_by_id(const MonolithModel& m,
                                    const std::string& id) {
    for (const auto& ctx : m.contexts)
        if (ctx.id == id) return ctx;
    throw std::runtime_error("unknown context '" + id + "'");
}

const ContextDecomposition& decomposition_by_id(
    const DecompositionResult& result, const std::string& id) {
    for (const auto& ctx : result.contexts)
        if (ctx.context_id == id) return ctx;
    throw std::runtime_error("no decomposition for context '" + id + "'");
}

std::string primary_of(const MonolithModel& m,
                       const DecompositionResult& result,
                       const std::string& context_id) {
    return primary_service(decomposition_by_id(result, context_id),
                           context_by_id(m, context_id));
}

constexpr const char* aggregator_note =
    "fans out one request to multiple services; adds call overhead";
constexpr const char* gateway_aggregator_note =
    "assumes the gateway also fronts this aggregator endpoint";
constexpr const char* binary_rpc_note =
    "binary rpc is commonly cited as up to 8x faster than JSON over HTTP "
    "with 60-80% smaller payloads";

}  // namespace

std::vector<Recommendation> recommend_aggregators(
    const MonolithModel& model, const DecompositionResult& result) {
    MonolithModel m = canonicalize(model);
    std::vector<Recommendation> recs;
    for (const auto& uc : m.use_cases) {
        if (uc.touches.size() < 2) continue;
        AggregatorDetail detail;
        detail.caution = true;
        detail.note = aggregator_note;
        for (const auto& ctx_id : uc.touches)  // sorted by canonicalize
            detail.targets.push_back(primary_of(m, result, ctx_id));
        recs.push_back({"aggregator", uc.id, std::move(detail)});
    }
    return recs;
}

std::vector<Recommendation> recommend_gateway(
    const DecompositionResult& result) {
    std::vector<Recommendation> recs;
    for (const auto& ctx : result.contexts) {
        std::set<std::string> seen;
        for (const auto& cand : ctx.services) {
            std::string route =
                "/" + ctx.context_id + "/" + kebab_case(cand.name);
            if (!seen.insert(route).second)
                throw std::runtime_error("ambiguous route '" + route +
                                         "' in context '" + ctx.context_id +
                                         "'");
            recs.push_back({"gateway_route", cand.name,
                            GatewayRouteDetail{route, cand.name}});
        }
    }
    return recs;
}

std::vector<Recommendation> recommend_acl(const MonolithModel& model,
                                          const DecompositionResult& result) {
    MonolithModel m = canonicalize(model);
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& uc : m.use_cases) {
        if (!uc.needs_legacy) continue;
        for (const auto& ctx_id : uc.touches) {
            std::string service = primary_of(m, result, ctx_id);
            for (const auto& legacy : m.legacy_systems)
                pairs.insert({service, legacy});
        }
    }
    std::vector<Recommendation> recs;
    for (const auto& [service, legacy] : pairs)
        recs.push_back({"acl", service, AclDetail{service, legacy}});
    return recs;
}

std::vector<Recommendation> assign_protocols(
    const MonolithModel& model, const DecompositionResult& result) {
    MonolithModel m = canonicalize(model);
    std::vector<Recommendation> recs;

    for (const auto& rec : recommend_gateway(result)) {
        const auto& route = std::get<GatewayRouteDetail>(rec.detail);
        ProtocolDetail d;
        d.from = "gateway";
        d.to = route.service;
        d.protocol = Protocol::rest_http;
        d.direction = Direction::client_to_service;
        recs.push_back({"protocol", d.from + " -> " + d.to, std::move(d)});
    }

    for (const auto& rec : recommend_aggregators(m, result)) {
        const auto& agg = std::get<AggregatorDetail>(rec.detail);
        std::string endpoint = "aggregator:" + rec.subject;
        ProtocolDetail front;
        front.from = "gateway";
        front.to = endpoint;
        front.protocol = Protocol::rest_http;
        front.direction = Direction::client_to_service;
        front.note = gateway_aggregator_note;
        recs.push_back(
            {"protocol", front.from + " -> " + front.to, std::move(front)});
        for (const auto& target : agg.targets) {
            ProtocolDetail d;
            d.from = endpoint;
            d.to = target;
            d.protocol = Protocol::binary_rpc;
            d.direction = Direction::service_to_service;
            d.note = binary_rpc_note;
            recs.push_back({"protocol", d.from + " -> " + d.to, std::move(d)});
        }
    }

    std::set<std::tuple<std::string, std::string, std::string>> events;
    for (const auto& uc : m.use_cases)
        for (const auto& ef : uc.event_flows)
            events.insert({ef.from_context, ef.to_context, ef.event});
    for (const auto& [from_ctx, to_ctx, event] : events) {
        ProtocolDetail d;
        d.from = primary_of(m, result, from_ctx);
        d.to = primary_of(m, result, to_ctx);
        d.protocol = Protocol::event_bus;
        d.direction = Direction::event;
        d.event = event;
        recs.push_back({"protocol", d.from + " -> " + d.to, std::move(d)});
    }
    return recs;
}

std::vector<Recommendation> recommend_all(const MonolithModel& model,
                                          const DecompositionResult& result) {
    MonolithModel m = canonicalize(model);
    std::vector<Recommendation> recs = recommend_aggregators(m, result);
    auto append = [&recs](std::vector<Recommendation> more) {
        for (auto& r : more) recs.push_back(std::move(r));
    };
    append(recommend_gateway(result));
    append(recommend_acl(m, result));
    append(assign_protocols(m, result));
    return recs;
}

}  // namespace mmsplit
