#include <doctest.h>

#include <algorithm>
#include <random>

#include "mmsplit/decompose.hpp"
#include "support/model_gen.hpp"

using namespace mmsplit;

namespace {

MonolithModel fixture() {
    return load_model(std::string(MMSPLIT_MODELS_DIR) + "/fintech.model");
}

const BoundedContext& context_of(const MonolithModel& m, const char* id) {
    for (const auto& ctx : m.contexts)
        if (ctx.id == id) return ctx;
    throw std::runtime_error("missing context in fixture");
}

std::vector<std::pair<std::string, std::vector<std::string>>> service_shapes(
    const ContextDecomposition& ctx) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& cand : ctx.services) out.push_back({cand.name, cand.members});
    return out;
}

}  // namespace

TEST_CASE("shared processes per fixture context") {
    MonolithModel m = fixture();
    auto co = shared_processes(context_of(m, "customer-onboard"));
    REQUIRE(co.size() == 2);
    CHECK(co.at("AIS") ==
          std::vector<std::string>{"agent", "agent_surveillance"});
    CHECK(co.at("AAPR") ==
          std::vector<std::string>{"agent", "agent_surveillance"});

    auto loan = shared_processes(context_of(m, "loan"));
    REQUIRE(loan.size() == 1);
    CHECK(loan.at("CARC") ==
          std::vector<std::string>{"credit_assessment", "risk_assessment"});

    CHECK(shared_processes(context_of(m, "transactions")).empty());
}

TEST_CASE("cross-system table shares per fixture context") {
    MonolithModel m = fixture();
    auto shares = cross_system_shared_tables(context_of(m, "loan"));
    REQUIRE(shares.size() == 2);
    CHECK(shares[0] == TableShare{"LC", "LPP", "TLC"});
    CHECK(shares[1] == TableShare{"LIP", "LV", "TLI"});

    CHECK(cross_system_shared_tables(context_of(m, "customer-onboard"))
              .empty());
    // TTL is shared by TRQ and TRU but both live in the same system
    CHECK(cross_system_shared_tables(context_of(m, "transactions")).empty());
}

TEST_CASE("affinity graph for the loan context") {
    MonolithModel m = fixture();
    AffinityGraph g = affinity_graph(context_of(m, "loan"), MergeRule{});
    CHECK(g.systems.size() == 6);
    REQUIRE(g.edges.size() == 2);

    CHECK(g.edges[0].left_system == "credit_assessment");
    CHECK(g.edges[0].right_system == "risk_assessment");
    REQUIRE(g.edges[0].evidence.size() == 1);
    CHECK(g.edges[0].evidence[0].rule == "shared_process");
    CHECK(std::get<std::string>(g.edges[0].evidence[0].witness) == "CARC");

    CHECK(g.edges[1].left_system == "loan_plans");
    CHECK(g.edges[1].right_system == "loans");
    REQUIRE(g.edges[1].evidence.size() == 2);
    CHECK(std::get<TableShare>(g.edges[1].evidence[0].witness) ==
          TableShare{"LC", "LPP", "TLC"});
    CHECK(std::get<TableShare>(g.edges[1].evidence[1].witness) ==
          TableShare{"LIP", "LV", "TLI"});
}

TEST_CASE("merge components on hand-built graphs") {
    AffinityGraph g;
    g.context_id = "x";
    g.systems = {"a", "b", "c", "d"};
    CHECK(merge_components(g) ==
          std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}, {"d"}});

    g.edges.push_back({"a", "b", {}});
    g.edges.push_back({"b", "c", {}});
    CHECK(merge_components(g) ==
          std::vector<std::vector<std::string>>{{"a", "b", "c"}, {"d"}});

    g.edges.push_back({"c", "d", {}});
    CHECK(merge_components(g) ==
          std::vector<std::vector<std::string>>{{"a", "b", "c", "d"}});
}

TEST_CASE("three component routes agree on random contexts") {
    for (int i = 0; i < 60; ++i) {
        std::mt19937 rng(1000 + static_cast<unsigned>(i));
        BoundedContext ctx = testgen::random_context(rng, "c");
        AffinityGraph g = affinity_graph(ctx, MergeRule{});
        auto fast = merge_components(g);
        CHECK(fast == naive_fixpoint_partition(g));
        CHECK(fast == testgen::dfs_components(g));
    }
}

TEST_CASE("fixture decomposition is the golden one") {
    DecompositionResult result = decompose(fixture());
    REQUIRE(result.contexts.size() == 3);

    using Shape = std::vector<std::pair<std::string, std::vector<std::string>>>;
    CHECK(service_shapes(result.contexts[0]) ==
          Shape{{"Support Service", {"agent", "agent_surveillance"}},
                {"Customer Management Service", {"customer"}},
                {"Customer Onboard Service", {"onboard"}}});
    CHECK(service_shapes(result.contexts[1]) ==
          Shape{{"Credit Assessment Service",
                 {"credit_assessment", "risk_assessment"}},
                {"Loan Disbursement Service", {"loan_disbursement"}},
                {"Loan Management Service", {"loan_plans", "loans"}},
                {"Loan Repayment Service", {"loan_repayment"}}});
    CHECK(service_shapes(result.contexts[2]) ==
          Shape{{"Bill Payment Service", {"bill_payment"}},
                {"Cash Withdraw and Deposit Service",
                 {"cash_withdraw_deposit"}},
                {"Funds Transfer Service", {"funds_transfer"}},
                {"Transaction Management Service",
                 {"transaction_management"}}});
}

TEST_CASE("candidate processes and tables are unions over members") {
    DecompositionResult result = decompose(fixture());
    const auto& loan_mgmt = result.contexts[1].services[2];
    REQUIRE(loan_mgmt.name == "Loan Management Service");
    CHECK(loan_mgmt.processes ==
          std::vector<std::string>{"LC", "LIP", "LPP", "LV"});
    CHECK(loan_mgmt.tables ==
          std::vector<std::string>{"TLC", "TLI", "TLP", "TVG"});
}

TEST_CASE("decompose rejects invalid models") {
    MonolithModel m =
        load_model(std::string(MMSPLIT_MODELS_DIR) + "/broken.model");
    CHECK_THROWS_AS(decompose(m), ValidationFailure);
    try {
        decompose(m);
    } catch (const ValidationFailure& e) {
        REQUIRE(e.report().violations.size() == 1);
        CHECK(e.report().violations[0].rule == "R1");
    }
}

TEST_CASE("fixture has exactly the TCA collision diagnostic") {
    DecompositionResult result = decompose(fixture());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "table_id_collision");
    CHECK(result.diagnostics[0].message.find("'TCA'") != std::string::npos);
    CHECK(result.diagnostics[0].message.find("customer-onboard") !=
          std::string::npos);
    CHECK(result.diagnostics[0].message.find("loan") != std::string::npos);
}

TEST_CASE("merge rules can be toggled") {
    MonolithModel m = fixture();
    const auto& loan = context_of(m, "loan");

    MergeRule process_only{true, false};
    auto parts = merge_components(affinity_graph(loan, process_only));
    // the table-driven pair stays apart
    CHECK(std::find(parts.begin(), parts.end(),
                    std::vector<std::string>{"loan_plans", "loans"}) ==
          parts.end());
    CHECK(std::find(parts.begin(), parts.end(),
                    std::vector<std::string>{"credit_assessment",
                                             "risk_assessment"}) !=
          parts.end());

    MergeRule table_only{false, true};
    parts = merge_components(affinity_graph(loan, table_only));
    // CARC lives in both systems, so no cross-system share links them
    CHECK(std::find(parts.begin(), parts.end(),
                    std::vector<std::string>{"credit_assessment",
                                             "risk_assessment"}) ==
          parts.end());
    CHECK(std::find(parts.begin(), parts.end(),
                    std::vector<std::string>{"loan_plans", "loans"}) !=
          parts.end());
}

TEST_CASE("default names come from the smallest member") {
    MonolithModel m;
    m.name = "naming";
    BoundedContext ctx;
    ctx.id = "c";
    ctx.display_name = "c";
    ctx.tables.push_back({"t", "t"});
    System za{"zz_core", "Zulu Core", SystemKind::entity, {}};
    System ab{"aa_core", "Alpha Core", SystemKind::entity, {}};
    // one shared process links them
    BusinessProcess shared{"p", "p", {"t"}};
    za.processes.push_back(shared);
    ab.processes.push_back(shared);
    ctx.systems.push_back(std::move(za));
    ctx.systems.push_back(std::move(ab));
    m.contexts.push_back(std::move(ctx));

    ContextDecomposition out = decompose_context(m.contexts[0], m, MergeRule{});
    REQUIRE(out.services.size() == 1);
    CHECK(out.services[0].members ==
          std::vector<std::string>{"aa_core", "zz_core"});
    CHECK(out.services[0].name == "Alpha Core Service");
}

TEST_CASE("rename map wins over the default name") {
    MonolithModel m = fixture();
    DecompositionResult result = decompose(m);
    CHECK(result.contexts[0].services[0].name == "Support Service");

    // break the key so the fallback kicks in
    m.rename_map.erase({"agent", "agent_surveillance"});
    result = decompose(m);
    CHECK(result.contexts[0].services[0].name == "Agent Service");
}

TEST_CASE("order invariance of decomposition on the fixture") {
    MonolithModel base = fixture();
    DecompositionResult expected = decompose(base);
    for (int i = 0; i < 20; ++i) {
        std::mt19937 rng(7000 + static_cast<unsigned>(i));
        DecompositionResult got =
            decompose(testgen::shuffle_model(base, rng));
        REQUIRE(got.contexts.size() == expected.contexts.size());
        for (std::size_t c = 0; c < got.contexts.size(); ++c) {
            CHECK(service_shapes(got.contexts[c]) ==
                  service_shapes(expected.contexts[c]));
            for (std::size_t s = 0; s < got.contexts[c].services.size(); ++s)
                CHECK(got.contexts[c].services[s].trace ==
                      expected.contexts[c].services[s].trace);
        }
    }
}
