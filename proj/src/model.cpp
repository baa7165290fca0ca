#include "mmsplit/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mmsplit {

using json = nlohmann::ordered_json;

std::string_view to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::entity: return "entity";
        case SystemKind::aggregate: return "aggregate";
        case SystemKind::domain_service: return "domain_service";
    }
    return "entity";
}

SystemKind system_kind_from_string(std::string_view text) {
    if (text == "entity") return SystemKind::entity;
    if (text == "aggregate") return SystemKind::aggregate;
    if (text == "domain_service") return SystemKind::domain_service;
    throw ParseError("syntax_error",
                     "unknown system kind '" + std::string(text) + "'");
}

std::string to_string(const NodeRef& ref) {
    switch (ref.kind) {
        case NodeKind::process: return "process:" + ref.context_id + "/" + ref.id;
        case NodeKind::datastore:
            return "datastore:" + ref.context_id + "/" + ref.id;
        case NodeKind::external: return "external:" + ref.id;
    }
    return ref.id;
}

NodeRef node_ref_from_string(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("syntax_error",
                         "bad node reference '" + std::string(text) +
                             "': expected kind:target");
    std::string_view kind = text.substr(0, colon);
    std::string_view rest = text.substr(colon + 1);
    NodeRef ref;
    if (kind == "external") {
        ref.kind = NodeKind::external;
        ref.id = std::string(rest);
        if (ref.id.empty())
            throw ParseError("syntax_error", "bad node reference '" +
                                                 std::string(text) +
                                                 "': empty id");
        return ref;
    }
    if (kind == "process")
        ref.kind = NodeKind::process;
    else if (kind == "datastore")
        ref.kind = NodeKind::datastore;
    else
        throw ParseError("syntax_error",
                         "bad node reference '" + std::string(text) +
                             "': unknown kind '" + std::string(kind) + "'");
    auto slash = rest.find('/');
    if (slash == std::string_view::npos || slash == 0 ||
        slash + 1 == rest.size())
        throw ParseError("syntax_error",
                         "bad node reference '" + std::string(text) +
                             "': expected " + std::string(kind) +
                             ":context/id");
    ref.context_id = std::string(rest.substr(0, slash));
    ref.id = std::string(rest.substr(slash + 1));
    return ref;
}

namespace {

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) continue;
        if (c == '_' || c == '.' || c == '-') continue;
        return false;
    }
    return true;
}

std::pair<std::size_t, std::size_t> line_col_at(std::string_view text,
                                                std::size_t byte) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("syntax_error", where + ": " + what);
}

const json& require(const json& obj, const char* key,
                    const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing required key '" + std::string(key) + "'");
    return *it;
}

std::string get_string(const json& value, const std::string& where) {
    if (!value.is_string()) fail(where, "expected a string");
    return value.get<std::string>();
}

std::string get_identifier(const json& value, const std::string& where) {
    std::string s = get_string(value, where);
    if (!valid_identifier(s))
        fail(where, "'" + s + "' is not a valid identifier");
    return s;
}

const json& get_array(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where, "expected an array");
    return value;
}

const json& get_object(const json& value, const std::string& where) {
    if (!value.is_object()) fail(where, "expected an object");
    return value;
}

// Accepts "id" or {"id": ..., "display_name": ...}; display_name
// defaults to the id.
std::pair<std::string, std::string> parse_named(const json& value,
                                                const std::string& where) {
    if (value.is_string()) {
        std::string id = get_identifier(value, where);
        return {id, id};
    }
    const json& obj = get_object(value, where);
    std::string id = get_identifier(require(obj, "id", where), where + ".id");
    std::string name = id;
    if (auto it = obj.find("display_name"); it != obj.end())
        name = get_string(*it, where + ".display_name");
    return {id, name};
}

void sort_unique(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

BusinessProcess parse_process(const json& value, const std::string& where) {
    const json& obj = get_object(value, where);
    BusinessProcess p;
    p.id = get_identifier(require(obj, "id", where), where + ".id");
    p.display_name = p.id;
    if (auto it = obj.find("display_name"); it != obj.end())
        p.display_name = get_string(*it, where + ".display_name");
    if (auto it = obj.find("tables"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".tables");
        for (const json& t : arr)
            p.declared_tables.push_back(
                get_identifier(t, where + ".tables[]"));
        sort_unique(p.declared_tables);
    }
    return p;
}

System parse_system(const json& value, const std::string& where) {
    const json& obj = get_object(value, where);
    System s;
    s.id = get_identifier(require(obj, "id", where), where + ".id");
    s.display_name = s.id;
    if (auto it = obj.find("display_name"); it != obj.end())
        s.display_name = get_string(*it, where + ".display_name");
    if (auto it = obj.find("kind"); it != obj.end())
        s.kind = system_kind_from_string(get_string(*it, where + ".kind"));
    std::set<std::string> seen;
    if (auto it = obj.find("processes"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".processes");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            BusinessProcess p = parse_process(
                arr[i], where + ".processes[" + std::to_string(i) + "]");
            if (!seen.insert(p.id).second)
                throw ParseError("duplicate_id",
                                 where + ": process '" + p.id +
                                     "' listed twice in system '" + s.id + "'");
            s.processes.push_back(std::move(p));
        }
    }
    return s;
}

BoundedContext parse_context(const json& value, const std::string& where) {
    const json& obj = get_object(value, where);
    BoundedContext ctx;
    ctx.id = get_identifier(require(obj, "id", where), where + ".id");
    ctx.display_name = ctx.id;
    if (auto it = obj.find("display_name"); it != obj.end())
        ctx.display_name = get_string(*it, where + ".display_name");
    if (auto it = obj.find("tables"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".tables");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            auto [id, name] = parse_named(
                arr[i], where + ".tables[" + std::to_string(i) + "]");
            if (!seen.insert(id).second)
                throw ParseError("duplicate_id",
                                 where + ": duplicate table id '" + id + "'");
            ctx.tables.push_back({id, name});
        }
    }
    if (auto it = obj.find("systems"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".systems");
        for (std::size_t i = 0; i < arr.size(); ++i)
            ctx.systems.push_back(parse_system(
                arr[i], where + ".systems[" + std::to_string(i) + "]"));
    }
    return ctx;
}

UseCase parse_use_case(const json& value, const std::string& where) {
    const json& obj = get_object(value, where);
    UseCase uc;
    uc.id = get_identifier(require(obj, "id", where), where + ".id");
    uc.description = uc.id;
    if (auto it = obj.find("description"); it != obj.end())
        uc.description = get_string(*it, where + ".description");
    if (auto it = obj.find("touches"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".touches");
        for (const json& t : arr) {
            std::string id = get_identifier(t, where + ".touches[]");
            if (std::find(uc.touches.begin(), uc.touches.end(), id) ==
                uc.touches.end())
                uc.touches.push_back(id);
        }
    }
    if (auto it = obj.find("needs_legacy"); it != obj.end()) {
        if (!it->is_boolean()) fail(where + ".needs_legacy", "expected a boolean");
        uc.needs_legacy = it->get<bool>();
    }
    if (auto it = obj.find("event_flows"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".event_flows");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string ew = where + ".event_flows[" + std::to_string(i) + "]";
            const json& e = get_object(arr[i], ew);
            EventFlow ef;
            ef.from_context = get_identifier(require(e, "from", ew), ew + ".from");
            ef.to_context = get_identifier(require(e, "to", ew), ew + ".to");
            ef.event = get_identifier(require(e, "event", ew), ew + ".event");
            uc.event_flows.push_back(std::move(ef));
        }
    }
    return uc;
}

// Index of everything referable, built before resolving references.
struct ModelIndex {
    std::set<std::string> contexts;
    std::map<std::string, std::string> system_context;  // system id -> ctx
    std::set<std::pair<std::string, std::string>> processes;  // (ctx, pid)
    std::set<std::pair<std::string, std::string>> tables;     // (ctx, tid)
    std::set<std::string> externals;
};

ModelIndex build_index(const MonolithModel& m) {
    ModelIndex ix;
    for (const auto& ctx : m.contexts) {
        if (!ix.contexts.insert(ctx.id).second)
            throw ParseError("duplicate_id",
                             "duplicate context id '" + ctx.id + "'");
        for (const auto& t : ctx.tables) ix.tables.insert({ctx.id, t.id});
        for (const auto& s : ctx.systems) {
            auto [it, fresh] = ix.system_context.insert({s.id, ctx.id});
            if (!fresh)
                throw ParseError("duplicate_id",
                                 "duplicate system id '" + s.id + "'");
            for (const auto& p : s.processes)
                ix.processes.insert({ctx.id, p.id});
        }
    }
    for (const auto& e : m.external_entities)
        if (!ix.externals.insert(e.id).second)
            throw ParseError("duplicate_id",
                             "duplicate external entity id '" + e.id + "'");
    return ix;
}

void resolve_node(const NodeRef& ref, const ModelIndex& ix,
                  const std::string& where) {
    switch (ref.kind) {
        case NodeKind::external:
            if (!ix.externals.count(ref.id))
                throw ParseError("unresolved_reference",
                                 where + ": unknown external entity '" +
                                     ref.id + "'");
            return;
        case NodeKind::process:
            if (!ix.contexts.count(ref.context_id))
                throw ParseError("unresolved_reference",
                                 where + ": unknown context '" +
                                     ref.context_id + "'");
            if (!ix.processes.count({ref.context_id, ref.id}))
                throw ParseError("unresolved_reference",
                                 where + ": unknown process '" +
                                     ref.context_id + "/" + ref.id + "'");
            return;
        case NodeKind::datastore:
            if (!ix.contexts.count(ref.context_id))
                throw ParseError("unresolved_reference",
                                 where + ": unknown context '" +
                                     ref.context_id + "'");
            if (!ix.tables.count({ref.context_id, ref.id}))
                throw ParseError("unresolved_reference",
                                 where + ": unknown table '" +
                                     ref.context_id + "/" + ref.id + "'");
            return;
    }
}

void resolve_references(const MonolithModel& m, const ModelIndex& ix) {
    for (const auto& ctx : m.contexts)
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                for (const auto& t : p.declared_tables)
                    if (!ix.tables.count({ctx.id, t}))
                        throw ParseError(
                            "unresolved_reference",
                            "process '" + ctx.id + "/" + p.id +
                                "' declares unknown table '" + t + "'");
    for (std::size_t i = 0; i < m.flows.size(); ++i) {
        std::string where = "flows[" + std::to_string(i) + "]";
        resolve_node(m.flows[i].source, ix, where + ".source");
        resolve_node(m.flows[i].target, ix, where + ".target");
    }
    for (const auto& uc : m.use_cases) {
        for (const auto& t : uc.touches)
            if (!ix.contexts.count(t))
                throw ParseError("unresolved_reference",
                                 "use case '" + uc.id +
                                     "' touches unknown context '" + t + "'");
        for (const auto& ef : uc.event_flows) {
            if (!ix.contexts.count(ef.from_context))
                throw ParseError("unresolved_reference",
                                 "use case '" + uc.id +
                                     "' event flow from unknown context '" +
                                     ef.from_context + "'");
            if (!ix.contexts.count(ef.to_context))
                throw ParseError("unresolved_reference",
                                 "use case '" + uc.id +
                                     "' event flow to unknown context '" +
                                     ef.to_context + "'");
        }
    }
    for (const auto& [members, name] : m.rename_map)
        for (const auto& id : members)
            if (!ix.system_context.count(id))
                throw ParseError("unresolved_reference",
                                 "rename entry '" + join(members, ",") +
                                     "' names unknown system '" + id + "'");
}

}  // namespace

MonolithModel parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col_at(text, e.byte);
        std::string msg = e.what();
        // Drop the "[json.exception...]" prefix, keep the description.
        if (auto pos = msg.find("] "); pos != std::string::npos)
            msg = msg.substr(pos + 2);
        throw ParseError("syntax_error", msg, line, col);
    }
    if (!doc.is_object())
        throw ParseError("syntax_error", "model: expected a JSON object");

    MonolithModel m;
    m.name = get_string(require(doc, "name", "model"), "model.name");

    const json& ctxs = get_array(require(doc, "contexts", "model"),
                                 "model.contexts");
    for (std::size_t i = 0; i < ctxs.size(); ++i)
        m.contexts.push_back(
            parse_context(ctxs[i], "contexts[" + std::to_string(i) + "]"));

    if (auto it = doc.find("external_entities"); it != doc.end()) {
        const json& arr = get_array(*it, "model.external_entities");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            auto [id, name] = parse_named(
                arr[i], "external_entities[" + std::to_string(i) + "]");
            m.external_entities.push_back({id, name});
        }
    }

    if (auto it = doc.find("flows"); it != doc.end()) {
        const json& arr = get_array(*it, "model.flows");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = "flows[" + std::to_string(i) + "]";
            const json& f = get_object(arr[i], where);
            DataFlow flow;
            flow.source = node_ref_from_string(
                get_string(require(f, "source", where), where + ".source"));
            flow.target = node_ref_from_string(
                get_string(require(f, "target", where), where + ".target"));
            if (auto lt = f.find("label"); lt != f.end())
                flow.label = get_string(*lt, where + ".label");
            m.flows.push_back(std::move(flow));
        }
    }

    if (auto it = doc.find("use_cases"); it != doc.end()) {
        const json& arr = get_array(*it, "model.use_cases");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            UseCase uc = parse_use_case(
                arr[i], "use_cases[" + std::to_string(i) + "]");
            if (!seen.insert(uc.id).second)
                throw ParseError("duplicate_id",
                                 "duplicate use case id '" + uc.id + "'");
            m.use_cases.push_back(std::move(uc));
        }
    }

    if (auto it = doc.find("rename_map"); it != doc.end()) {
        const json& obj = get_object(*it, "model.rename_map");
        for (const auto& [key, value] : obj.items()) {
            std::vector<std::string> members;
            std::string cur;
            for (char c : key + std::string(",")) {
                if (c == ',') {
                    if (!valid_identifier(cur))
                        fail("rename_map", "bad member id in key '" + key + "'");
                    members.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            sort_unique(members);
            std::string name =
                get_string(value, "rename_map['" + key + "']");
            auto [pos, fresh] = m.rename_map.insert({members, name});
            if (!fresh)
                throw ParseError("duplicate_id",
                                 "rename_map has two entries for system set '" +
                                     join(members, ",") + "'");
        }
    }

    if (auto it = doc.find("legacy_systems"); it != doc.end()) {
        const json& arr = get_array(*it, "model.legacy_systems");
        for (const json& v : arr)
            m.legacy_systems.push_back(
                get_identifier(v, "legacy_systems[]"));
        sort_unique(m.legacy_systems);
    }

    ModelIndex ix = build_index(m);
    resolve_references(m, ix);
    return m;
}

MonolithModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("syntax_error", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

namespace {

json named_json(const std::string& id, const std::string& display_name) {
    if (display_name == id) return json(id);
    return json{{"id", id}, {"display_name", display_name}};
}

}  // namespace

std::string serialize_model(const MonolithModel& m) {
    json doc = json::object();
    doc["name"] = m.name;
    doc["contexts"] = json::array();
    for (const auto& ctx : m.contexts) {
        json jc = json::object();
        jc["id"] = ctx.id;
        if (ctx.display_name != ctx.id) jc["display_name"] = ctx.display_name;
        if (!ctx.tables.empty()) {
            jc["tables"] = json::array();
            for (const auto& t : ctx.tables)
                jc["tables"].push_back(named_json(t.id, t.display_name));
        }
        jc["systems"] = json::array();
        for (const auto& s : ctx.systems) {
            json js = json::object();
            js["id"] = s.id;
            if (s.display_name != s.id) js["display_name"] = s.display_name;
            js["kind"] = std::string(to_string(s.kind));
            js["processes"] = json::array();
            for (const auto& p : s.processes) {
                json jp = json::object();
                jp["id"] = p.id;
                if (p.display_name != p.id)
                    jp["display_name"] = p.display_name;
                if (!p.declared_tables.empty())
                    jp["tables"] = p.declared_tables;
                js["processes"].push_back(std::move(jp));
            }
            jc["systems"].push_back(std::move(js));
        }
        doc["contexts"].push_back(std::move(jc));
    }
    if (!m.external_entities.empty()) {
        doc["external_entities"] = json::array();
        for (const auto& e : m.external_entities)
            doc["external_entities"].push_back(
                named_json(e.id, e.display_name));
    }
    if (!m.flows.empty()) {
        doc["flows"] = json::array();
        for (const auto& f : m.flows) {
            json jf = json::object();
            jf["source"] = to_string(f.source);
            jf["target"] = to_string(f.target);
            if (!f.label.empty()) jf["label"] = f.label;
            doc["flows"].push_back(std::move(jf));
        }
    }
    if (!m.use_cases.empty()) {
        doc["use_cases"] = json::array();
        for (const auto& uc : m.use_cases) {
            json ju = json::object();
            ju["id"] = uc.id;
            if (uc.description != uc.id) ju["description"] = uc.description;
            if (!uc.touches.empty()) ju["touches"] = uc.touches;
            if (uc.needs_legacy) ju["needs_legacy"] = true;
            if (!uc.event_flows.empty()) {
                ju["event_flows"] = json::array();
                for (const auto& ef : uc.event_flows)
                    ju["event_flows"].push_back(json{{"from", ef.from_context},
                                                     {"to", ef.to_context},
                                                     {"event", ef.event}});
            }
            doc["use_cases"].push_back(std::move(ju));
        }
    }
    if (!m.rename_map.empty()) {
        doc["rename_map"] = json::object();
        for (const auto& [members, name] : m.rename_map)
            doc["rename_map"][join(members, ",")] = name;
    }
    if (!m.legacy_systems.empty()) doc["legacy_systems"] = m.legacy_systems;
    return doc.dump(2) + "\n";
}

TableUsage derive_table_usage(const MonolithModel& m) {
    TableUsage usage;
    // Seed every process so callers can distinguish "no usage" from
    // "no such process".
    for (const auto& ctx : m.contexts)
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                usage.try_emplace({ctx.id, p.id});
    auto add = [&](const NodeRef& proc, const NodeRef& store) {
        if (proc.context_id != store.context_id) return;  // R7 territory
        usage[{proc.context_id, proc.id}].push_back(store.id);
    };
    for (const auto& f : m.flows) {
        if (f.source.kind == NodeKind::process &&
            f.target.kind == NodeKind::datastore)
            add(f.source, f.target);
        else if (f.source.kind == NodeKind::datastore &&
                 f.target.kind == NodeKind::process)
            add(f.target, f.source);
    }
    for (auto& [key, tables] : usage) sort_unique(tables);
    return usage;
}

ValidationReport validate_model(const MonolithModel& m) {
    ValidationReport report;
    auto add = [&](std::string rule, std::string location,
                   std::string message) {
        report.violations.push_back(
            {std::move(rule), std::move(location), std::move(message)});
    };

    // R1: every process needs at least one incoming and one outgoing flow.
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> degree;
    for (const auto& ctx : m.contexts)
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                degree.try_emplace({ctx.id, p.id}, std::pair{0, 0});
    for (const auto& f : m.flows) {
        if (f.target.kind == NodeKind::process)
            degree[{f.target.context_id, f.target.id}].first++;
        if (f.source.kind == NodeKind::process)
            degree[{f.source.context_id, f.source.id}].second++;
    }
    for (const auto& [key, inout] : degree) {
        std::string loc = key.first + "/" + key.second;
        if (inout.first == 0)
            add("R1", loc, "process has no incoming flow");
        if (inout.second == 0)
            add("R1", loc, "process has no outgoing flow");
    }

    // R2: when a process both declares tables and the flows imply table
    // usage, the two sets must match.
    TableUsage derived = derive_table_usage(m);
    for (const auto& ctx : m.contexts) {
        // A process listed by several systems is still one process; check
        // it once per (context, process) against the union of nothing --
        // each listing's declaration is checked separately so a divergent
        // copy is caught by R5 and the matching copy still passes R2.
        std::set<std::string> checked;
        for (const auto& s : ctx.systems) {
            for (const auto& p : s.processes) {
                if (p.declared_tables.empty()) continue;
                auto it = derived.find({ctx.id, p.id});
                if (it == derived.end() || it->second.empty()) continue;
                if (!checked.insert(p.id).second) continue;
                if (it->second != p.declared_tables) {
                    add("R2", ctx.id + "/" + p.id,
                        "declared tables {" + join(p.declared_tables, ",") +
                            "} differ from flow-derived {" +
                            join(it->second, ",") + "}");
                }
            }
        }
    }

    // R3: flows may not connect two datastores or two external entities.
    for (const auto& f : m.flows) {
        std::string loc = to_string(f.source) + " -> " + to_string(f.target);
        if (f.source.kind == NodeKind::datastore &&
            f.target.kind == NodeKind::datastore)
            add("R3", loc, "flow connects two datastores");
        if (f.source.kind == NodeKind::external &&
            f.target.kind == NodeKind::external)
            add("R3", loc, "flow connects two external entities");
    }

    // R4: a rename entry must group systems of a single context.
    std::map<std::string, std::string> system_ctx;
    for (const auto& ctx : m.contexts)
        for (const auto& s : ctx.systems) system_ctx[s.id] = ctx.id;
    for (const auto& [members, name] : m.rename_map) {
        std::set<std::string> ctxs;
        for (const auto& id : members) {
            auto it = system_ctx.find(id);
            if (it != system_ctx.end()) ctxs.insert(it->second);
        }
        if (ctxs.size() > 1)
            add("R4", join(members, ","),
                "rename entry spans contexts " +
                    join({ctxs.begin(), ctxs.end()}, ","));
    }

    // R5: systems sharing a process must declare the same tables for it.
    for (const auto& ctx : m.contexts) {
        std::map<std::string, std::set<std::vector<std::string>>> decls;
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                decls[p.id].insert(p.declared_tables);
        for (const auto& [pid, sets] : decls)
            if (sets.size() > 1)
                add("R5", ctx.id + "/" + pid,
                    "systems sharing this process declare different table "
                    "sets");
    }

    // R6: a context must contain at least one system.
    for (const auto& ctx : m.contexts)
        if (ctx.systems.empty())
            add("R6", ctx.id, "context has no systems");

    // R7: a process may only touch datastores of its own context.
    for (const auto& f : m.flows) {
        const NodeRef* proc = nullptr;
        const NodeRef* store = nullptr;
        if (f.source.kind == NodeKind::process &&
            f.target.kind == NodeKind::datastore) {
            proc = &f.source;
            store = &f.target;
        } else if (f.source.kind == NodeKind::datastore &&
                   f.target.kind == NodeKind::process) {
            store = &f.source;
            proc = &f.target;
        }
        if (proc && store && proc->context_id != store->context_id)
            add("R7", to_string(f.source) + " -> " + to_string(f.target),
                "flow crosses context boundary between process and "
                "datastore");
    }

    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(
        std::unique(report.violations.begin(), report.violations.end()),
        report.violations.end());
    return report;
}

MonolithModel canonicalize(const MonolithModel& model) {
    MonolithModel m = model;
    auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
    for (auto& ctx : m.contexts) {
        for (auto& s : ctx.systems) {
            for (auto& p : s.processes) sort_unique(p.declared_tables);
            std::sort(s.processes.begin(), s.processes.end(), by_id);
        }
        std::sort(ctx.systems.begin(), ctx.systems.end(), by_id);
        std::sort(ctx.tables.begin(), ctx.tables.end(), by_id);
    }
    std::sort(m.contexts.begin(), m.contexts.end(), by_id);
    std::sort(m.external_entities.begin(), m.external_entities.end(), by_id);
    for (auto& uc : m.use_cases) {
        sort_unique(uc.touches);
        std::sort(uc.event_flows.begin(), uc.event_flows.end());
        uc.event_flows.erase(
            std::unique(uc.event_flows.begin(), uc.event_flows.end()),
            uc.event_flows.end());
    }
    std::sort(m.use_cases.begin(), m.use_cases.end(), by_id);
    std::sort(m.flows.begin(), m.flows.end());
    m.flows.erase(std::unique(m.flows.begin(), m.flows.end()), m.flows.end());
    sort_unique(m.legacy_systems);
    return m;
}

}  // namespace mmsplit
