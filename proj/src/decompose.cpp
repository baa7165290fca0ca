#include "mmsplit/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mmsplit {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

void sort_unique(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// System ids listing each process, sorted. Includes singletons.
std::map<std::string, std::vector<std::string>> process_owners(
    const BoundedContext& ctx) {
    std::map<std::string, std::vector<std::string>> owners;
    for (const auto& s : ctx.systems)
        for (const auto& p : s.processes) owners[p.id].push_back(s.id);
    for (auto& [pid, systems] : owners) sort_unique(systems);
    return owners;
}

// Union of declared tables over every listing of each process.
std::map<std::string, std::vector<std::string>> process_tables(
    const BoundedContext& ctx) {
    std::map<std::string, std::vector<std::string>> tables;
    for (const auto& s : ctx.systems)
        for (const auto& p : s.processes) {
            auto& acc = tables[p.id];
            acc.insert(acc.end(), p.declared_tables.begin(),
                       p.declared_tables.end());
        }
    for (auto& [pid, ts] : tables) sort_unique(ts);
    return tables;
}

}  // namespace

std::map<std::string, std::vector<std::string>> shared_processes(
    const BoundedContext& ctx) {
    auto owners = process_owners(ctx);
    std::erase_if(owners,
                  [](const auto& entry) { return entry.second.size() < 2; });
    return owners;
}

std::vector<TableShare> cross_system_shared_tables(const BoundedContext& ctx) {
    auto owners = process_owners(ctx);
    auto tables = process_tables(ctx);
    std::vector<std::string> pids;
    for (const auto& [pid, ts] : tables) pids.push_back(pid);

    std::vector<TableShare> shares;
    for (std::size_t i = 0; i < pids.size(); ++i) {
        for (std::size_t j = i + 1; j < pids.size(); ++j) {
            const auto& oa = owners[pids[i]];
            const auto& ob = owners[pids[j]];
            bool disjoint = true;
            for (const auto& s : oa)
                if (std::binary_search(ob.begin(), ob.end(), s)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            std::vector<std::string> common;
            std::set_intersection(tables[pids[i]].begin(),
                                  tables[pids[i]].end(),
                                  tables[pids[j]].begin(),
                                  tables[pids[j]].end(),
                                  std::back_inserter(common));
            for (const auto& t : common)
                shares.push_back({pids[i], pids[j], t});
        }
    }
    std::sort(shares.begin(), shares.end());
    return shares;
}

AffinityGraph affinity_graph(const BoundedContext& ctx,
                             const MergeRule& rule) {
    AffinityGraph g;
    g.context_id = ctx.id;
    for (const auto& s : ctx.systems) g.systems.push_back(s.id);
    sort_unique(g.systems);

    std::map<std::pair<std::string, std::string>, std::vector<MergeEvidence>>
        edges;
    auto owners = process_owners(ctx);

    if (rule.shared_process) {
        for (const auto& [pid, systems] : shared_processes(ctx)) {
            for (std::size_t i = 0; i < systems.size(); ++i)
                for (std::size_t j = i + 1; j < systems.size(); ++j)
                    edges[{systems[i], systems[j]}].push_back(
                        {"shared_process", ctx.id, systems[i], systems[j],
                         pid});
        }
    }
    if (rule.shared_table) {
        for (const auto& share : cross_system_shared_tables(ctx)) {
            for (const auto& sa : owners[share.process_a]) {
                for (const auto& sb : owners[share.process_b]) {
                    auto [lo, hi] = std::minmax(sa, sb);
                    edges[{lo, hi}].push_back(
                        {"shared_table", ctx.id, lo, hi, share});
                }
            }
        }
    }

    for (auto& [key, evidence] : edges) {
        std::sort(evidence.begin(), evidence.end());
        evidence.erase(std::unique(evidence.begin(), evidence.end()),
                       evidence.end());
        g.edges.push_back({key.first, key.second, std::move(evidence)});
    }
    return g;
}

std::vector<std::vector<std::string>> merge_components(
    const AffinityGraph& graph) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < graph.systems.size(); ++i)
        index[graph.systems[i]] = i;

    UnionFind uf(graph.systems.size());
    for (const auto& e : graph.edges)
        uf.merge(index.at(e.left_system), index.at(e.right_system));

    std::map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < graph.systems.size(); ++i)
        groups[uf.find(i)].push_back(graph.systems[i]);

    std::vector<std::vector<std::string>> components;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

std::vector<std::vector<std::string>> naive_fixpoint_partition(
    const AffinityGraph& graph) {
    std::vector<std::set<std::string>> groups;
    for (const auto& s : graph.systems) groups.push_back({s});

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : graph.edges) {
            std::size_t gi = groups.size(), gj = groups.size();
            for (std::size_t k = 0; k < groups.size(); ++k) {
                if (groups[k].count(e.left_system)) gi = k;
                if (groups[k].count(e.right_system)) gj = k;
            }
            if (gi == gj) continue;
            groups[gi].insert(groups[gj].begin(), groups[gj].end());
            groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(gj));
            changed = true;
            break;
        }
    }

    std::vector<std::vector<std::string>> components;
    for (const auto& g : groups)
        components.emplace_back(g.begin(), g.end());
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

ContextDecomposition decompose_context(const BoundedContext& ctx,
                                       const MonolithModel& model,
                                       const MergeRule& rule) {
    ContextDecomposition out;
    out.context_id = ctx.id;
    out.display_name = ctx.display_name;

    auto ptables = process_tables(ctx);
    for (const auto& s : ctx.systems) {
        out.system_display_names[s.id] = s.display_name;
        auto& procs = out.system_processes[s.id];
        for (const auto& p : s.processes) procs.push_back(p.id);
        sort_unique(procs);
    }
    out.process_tables = ptables;

    AffinityGraph graph = affinity_graph(ctx, rule);

    std::map<std::pair<std::string, std::string>, const AffinityEdge*>
        edge_index;
    for (const auto& e : graph.edges)
        edge_index[{e.left_system, e.right_system}] = &e;

    for (auto& members : merge_components(graph)) {
        ServiceCandidate cand;
        cand.context_id = ctx.id;
        cand.members = members;

        auto rename = model.rename_map.find(members);
        if (rename != model.rename_map.end()) {
            cand.name = rename->second;
        } else {
            cand.name =
                out.system_display_names.at(members.front()) + " Service";
        }

        for (const auto& sid : members) {
            const auto& procs = out.system_processes.at(sid);
            cand.processes.insert(cand.processes.end(), procs.begin(),
                                  procs.end());
        }
        sort_unique(cand.processes);
        for (const auto& pid : cand.processes) {
            const auto& ts = ptables.at(pid);
            cand.tables.insert(cand.tables.end(), ts.begin(), ts.end());
        }
        sort_unique(cand.tables);

        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (auto it = edge_index.find({members[i], members[j]});
                    it != edge_index.end())
                    cand.trace.insert(cand.trace.end(),
                                      it->second->evidence.begin(),
                                      it->second->evidence.end());
        std::sort(cand.trace.begin(), cand.trace.end());

        out.services.push_back(std::move(cand));
    }
    return out;
}

DecompositionResult decompose(const MonolithModel& model,
                              const MergeRule& rule) {
    ValidationReport report = validate_model(model);
    if (!report.ok()) throw ValidationFailure(std::move(report));

    MonolithModel m = canonicalize(model);
    DecompositionResult result;
    result.model_name = m.name;
    for (const auto& ctx : m.contexts)
        result.contexts.push_back(decompose_context(ctx, m, rule));

    std::map<std::string, std::set<std::string>> table_contexts;
    for (const auto& ctx : m.contexts)
        for (const auto& t : ctx.tables) table_contexts[t.id].insert(ctx.id);
    for (const auto& [tid, ctxs] : table_contexts) {
        if (ctxs.size() < 2) continue;
        std::string list;
        for (const auto& c : ctxs) {
            if (!list.empty()) list += ", ";
            list += c;
        }
        result.diagnostics.push_back(
            {"table_id_collision",
             "table '" + tid + "' is defined in contexts " + list});
    }
    return result;
}

}  // namespace mmsplit
