#include "mmsplit/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mmsplit {

using json = nlohmann::ordered_json;

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string cluster_name(std::string_view id) {
    std::string out = "cluster_";
    for (char c : id)
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void rstrip(std::string& s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
}

std::string evidence_line(const MergeEvidence& ev) {
    std::string line = "MERGE " + ev.left_system + "+" + ev.right_system +
                       " via " + ev.rule + ": ";
    if (ev.rule == "shared_process") {
        line += std::get<std::string>(ev.witness);
    } else {
        const auto& share = std::get<TableShare>(ev.witness);
        line += "(" + share.process_a + "," + share.process_b + "," +
                share.table + ")";
    }
    return line;
}

}  // namespace

std::string emit_dfd_dot(const MonolithModel& model,
                         const RenderOptions& opts) {
    MonolithModel m = canonicalize(model);
    std::ostringstream out;
    out << "digraph dfd {\n";
    out << "  rankdir=LR;\n";

    auto emit_node = [&](const std::string& indent, const std::string& id,
                         const std::string& label, const char* shape) {
        out << indent << dot_quote(id) << " [label=" << dot_quote(label)
            << ", shape=" << shape << "];\n";
    };

    for (const auto& ctx : m.contexts) {
        std::string indent = "  ";
        if (opts.cluster_by_context) {
            out << "  subgraph " << cluster_name(ctx.id) << " {\n";
            out << "    label=" << dot_quote(ctx.id) << ";\n";
            indent = "    ";
        }
        std::map<std::string, std::string> procs;
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                procs.emplace(p.id, p.display_name);
        for (const auto& [pid, label] : procs)
            emit_node(indent, "proc:" + ctx.id + "/" + pid, label, "ellipse");
        for (const auto& t : ctx.tables)
            emit_node(indent, "store:" + ctx.id + "/" + t.id, t.display_name,
                      "cylinder");
        if (opts.cluster_by_context) out << "  }\n";
    }
    for (const auto& e : m.external_entities)
        emit_node("  ", "ext:" + e.id, e.display_name, "box");

    auto node_id = [](const NodeRef& ref) {
        switch (ref.kind) {
            case NodeKind::process:
                return "proc:" + ref.context_id + "/" + ref.id;
            case NodeKind::datastore:
                return "store:" + ref.context_id + "/" + ref.id;
            case NodeKind::external: return "ext:" + ref.id;
        }
        return ref.id;
    };
    for (const auto& f : m.flows) {
        out << "  " << dot_quote(node_id(f.source)) << " -> "
            << dot_quote(node_id(f.target));
        if (!f.label.empty()) out << " [label=" << dot_quote(f.label) << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_architecture_dot(
    const DecompositionResult& result,
    const std::vector<Recommendation>& recommendations,
    const RenderOptions& opts) {
    std::ostringstream out;
    out << "digraph architecture {\n";
    out << "  rankdir=LR;\n";

    // Service name -> node id.
    std::map<std::string, std::string> service_node;
    for (const auto& ctx : result.contexts)
        for (const auto& cand : ctx.services)
            service_node[cand.name] = ctx.context_id + "/" + cand.name;

    bool has_gateway = false;
    std::map<std::string, std::string> gateway_routes;  // service -> route
    std::set<std::string> aggregators;
    std::vector<const AclDetail*> acls;
    std::vector<const ProtocolDetail*> protocols;
    for (const auto& rec : recommendations) {
        if (rec.kind == "gateway_route") {
            has_gateway = true;
            const auto& d = std::get<GatewayRouteDetail>(rec.detail);
            gateway_routes[d.service] = d.route;
        } else if (rec.kind == "aggregator") {
            aggregators.insert("aggregator:" + rec.subject);
        } else if (rec.kind == "acl") {
            acls.push_back(&std::get<AclDetail>(rec.detail));
        } else if (rec.kind == "protocol") {
            const auto& d = std::get<ProtocolDetail>(rec.detail);
            protocols.push_back(&d);
            if (d.from == "gateway") has_gateway = true;
            if (d.from.rfind("aggregator:", 0) == 0) aggregators.insert(d.from);
        }
    }

    if (has_gateway)
        out << "  \"gateway\" [label=\"API Gateway\", shape=hexagon];\n";

    for (const auto& ctx : result.contexts) {
        std::string indent = "  ";
        if (opts.cluster_by_context) {
            out << "  subgraph " << cluster_name(ctx.context_id) << " {\n";
            out << "    label=" << dot_quote(ctx.context_id) << ";\n";
            indent = "    ";
        }
        for (const auto& cand : ctx.services)
            out << indent << dot_quote(service_node.at(cand.name))
                << " [label=" << dot_quote(cand.name)
                << ", shape=box, style=rounded];\n";
        if (opts.cluster_by_context) out << "  }\n";
    }

    for (const auto& agg : aggregators)
        out << "  " << dot_quote(agg) << " [label=" << dot_quote(agg)
            << ", shape=component];\n";

    std::set<std::string> legacy_nodes;
    for (const auto* acl : acls) legacy_nodes.insert(acl->legacy_system);
    for (const auto& legacy : legacy_nodes)
        out << "  " << dot_quote("legacy:" + legacy)
            << " [label=" << dot_quote(legacy) << ", shape=box3d];\n";
    for (const auto* acl : acls) {
        std::string node = "acl:" + acl->service + ":" + acl->legacy_system;
        out << "  " << dot_quote(node) << " [label=\"ACL\", shape=note];\n";
    }

    auto endpoint_node = [&](const std::string& name) {
        if (name == "gateway") return std::string("gateway");
        if (name.rfind("aggregator:", 0) == 0) return name;
        auto it = service_node.find(name);
        return it != service_node.end() ? it->second : name;
    };

    for (const auto* d : protocols) {
        out << "  " << dot_quote(endpoint_node(d->from)) << " -> "
            << dot_quote(endpoint_node(d->to));
        std::vector<std::string> attrs;
        if (d->protocol == Protocol::binary_rpc)
            attrs.push_back("style=dashed");
        else if (d->protocol == Protocol::event_bus)
            attrs.push_back("style=dotted");
        if (d->protocol == Protocol::event_bus && !d->event.empty())
            attrs.push_back("label=" + dot_quote(d->event));
        else if (d->direction == Direction::client_to_service) {
            auto it = gateway_routes.find(d->to);
            if (it != gateway_routes.end())
                attrs.push_back("label=" + dot_quote(it->second));
        }
        if (!attrs.empty()) out << " [" << join(attrs, ", ") << "]";
        out << ";\n";
    }

    for (const auto* acl : acls) {
        std::string node = "acl:" + acl->service + ":" + acl->legacy_system;
        out << "  " << dot_quote(endpoint_node(acl->service)) << " -> "
            << dot_quote(node) << ";\n";
        out << "  " << dot_quote(node) << " -> "
            << dot_quote("legacy:" + acl->legacy_system) << ";\n";
    }

    out << "}\n";
    return out.str();
}

std::string emit_merge_trace(const DecompositionResult& result) {
    std::ostringstream out;
    bool first = true;
    for (const auto& ctx : result.contexts) {
        if (!first) out << "\n";
        first = false;
        out << "== context " << ctx.context_id << " ==\n\n";

        std::vector<std::string> systems;
        for (const auto& [sid, procs] : ctx.system_processes)
            systems.push_back(sid);

        std::vector<std::string> processes;
        for (const auto& [pid, tables] : ctx.process_tables)
            processes.push_back(pid);

        // systems x processes matrix.
        out << "systems x processes\n\n";
        std::vector<std::string> headers{"process"};
        for (const auto& sid : systems)
            headers.push_back(ctx.system_display_names.at(sid));
        std::vector<std::size_t> widths;
        for (const auto& h : headers) widths.push_back(h.size());
        for (const auto& pid : processes)
            widths[0] = std::max(widths[0], pid.size());

        auto emit_row = [&](const std::vector<std::string>& cells) {
            std::string line = "  ";
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string cell = cells[i];
                cell.resize(widths[i], ' ');
                line += cell;
                if (i + 1 < cells.size()) line += "  ";
            }
            rstrip(line);
            out << line << "\n";
        };

        emit_row(headers);
        for (const auto& pid : processes) {
            std::vector<std::string> row{pid};
            for (const auto& sid : systems) {
                const auto& procs = ctx.system_processes.at(sid);
                bool member = std::binary_search(procs.begin(), procs.end(), pid);
                row.push_back(member ? "X" : ".");
            }
            emit_row(row);
        }

        out << "\nprocesses x tables\n\n";
        std::size_t pid_width = std::string("process").size();
        for (const auto& pid : processes)
            pid_width = std::max(pid_width, pid.size());
        {
            std::string header = "  process";
            header.resize(2 + pid_width + 2, ' ');
            header += "tables";
            out << header << "\n";
        }
        for (const auto& pid : processes) {
            std::string line = "  " + pid;
            line.resize(2 + pid_width + 2, ' ');
            line += join(ctx.process_tables.at(pid), ", ");
            rstrip(line);
            out << line << "\n";
        }

        out << "\nmerges\n\n";
        bool any = false;
        for (const auto& cand : ctx.services)
            for (const auto& ev : cand.trace) {
                out << "  " << evidence_line(ev) << "\n";
                any = true;
            }
        if (!any) out << "  (no merges)\n";
    }
    return out.str();
}

namespace {

json evidence_json(const MergeEvidence& ev) {
    json j = json::object();
    j["rule"] = ev.rule;
    j["systems"] = json::array({ev.left_system, ev.right_system});
    if (ev.rule == "shared_process") {
        j["process"] = std::get<std::string>(ev.witness);
    } else {
        const auto& share = std::get<TableShare>(ev.witness);
        j["processes"] = json::array({share.process_a, share.process_b});
        j["table"] = share.table;
    }
    return j;
}

json recommendation_json(const Recommendation& rec) {
    json j = json::object();
    j["kind"] = rec.kind;
    if (rec.kind == "aggregator") {
        const auto& d = std::get<AggregatorDetail>(rec.detail);
        j["use_case"] = rec.subject;
        j["targets"] = d.targets;
        j["caution"] = d.caution;
        if (!d.note.empty()) j["note"] = d.note;
    } else if (rec.kind == "gateway_route") {
        const auto& d = std::get<GatewayRouteDetail>(rec.detail);
        j["service"] = d.service;
        j["route"] = d.route;
    } else if (rec.kind == "acl") {
        const auto& d = std::get<AclDetail>(rec.detail);
        j["service"] = d.service;
        j["legacy_system"] = d.legacy_system;
    } else if (rec.kind == "protocol") {
        const auto& d = std::get<ProtocolDetail>(rec.detail);
        j["from"] = d.from;
        j["to"] = d.to;
        j["protocol"] = std::string(to_string(d.protocol));
        j["direction"] = std::string(to_string(d.direction));
        if (!d.event.empty()) j["event"] = d.event;
        if (!d.note.empty()) j["note"] = d.note;
    }
    return j;
}

}  // namespace

std::string emit_summary(const MonolithModel& model,
                         const DecompositionResult& result,
                         const std::vector<Recommendation>& recommendations,
                         const RenderOptions& opts) {
    json doc = json::object();
    doc["name"] = model.name;
    doc["contexts"] = json::array();
    for (const auto& ctx : result.contexts) {
        json jc = json::object();
        jc["id"] = ctx.context_id;
        jc["services"] = json::array();
        for (const auto& cand : ctx.services) {
            json js = json::object();
            js["name"] = cand.name;
            js["members"] = cand.members;
            js["processes"] = cand.processes;
            js["tables"] = cand.tables;
            if (opts.include_evidence) {
                js["trace"] = json::array();
                for (const auto& ev : cand.trace)
                    js["trace"].push_back(evidence_json(ev));
            }
            jc["services"].push_back(std::move(js));
        }
        doc["contexts"].push_back(std::move(jc));
    }
    doc["recommendations"] = json::array();
    for (const auto& rec : recommendations)
        doc["recommendations"].push_back(recommendation_json(rec));
    doc["diagnostics"] = json::array();
    for (const auto& d : result.diagnostics)
        doc["diagnostics"].push_back(
            json{{"code", d.code}, {"message", d.message}});
    return doc.dump(2) + "\n";
}

std::string emit_recommendations_json(
    const std::vector<Recommendation>& recommendations) {
    json doc = json::object();
    doc["recommendations"] = json::array();
    for (const auto& rec : recommendations)
        doc["recommendations"].push_back(recommendation_json(rec));
    return doc.dump(2) + "\n";
}

std::string emit_services_text(const DecompositionResult& result) {
    std::ostringstream out;
    for (const auto& ctx : result.contexts) {
        out << "context " << ctx.context_id << "\n";
        for (const auto& cand : ctx.services)
            out << "  " << cand.name << "  <- " << join(cand.members, ", ")
                << "\n";
    }
    return out.str();
}

std::string emit_recommendations_text(
    const std::vector<Recommendation>& recommendations) {
    std::ostringstream out;
    for (const auto& rec : recommendations) {
        if (rec.kind == "aggregator") {
            const auto& d = std::get<AggregatorDetail>(rec.detail);
            out << "aggregator " << rec.subject << ": calls "
                << join(d.targets, ", ");
            if (d.caution) out << "  [caution: " << d.note << "]";
            out << "\n";
        } else if (rec.kind == "gateway_route") {
            const auto& d = std::get<GatewayRouteDetail>(rec.detail);
            out << "route " << d.route << " -> " << d.service << "\n";
        } else if (rec.kind == "acl") {
            const auto& d = std::get<AclDetail>(rec.detail);
            out << "acl between " << d.service << " and " << d.legacy_system
                << "\n";
        } else if (rec.kind == "protocol") {
            const auto& d = std::get<ProtocolDetail>(rec.detail);
            out << "protocol " << d.from << " -> " << d.to << " via "
                << to_string(d.protocol) << " (" << to_string(d.direction)
                << ")";
            if (!d.event.empty()) out << " event=" << d.event;
            if (!d.note.empty()) out << "  note: " << d.note;
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace mmsplit
