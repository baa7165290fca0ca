#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mmsplit/model.hpp"

using namespace mmsplit;

namespace {

std::string fixture_path() {
    return std::string(MMSPLIT_MODELS_DIR) + "/fintech.model";
}

MonolithModel load_fixture() { return load_model(fixture_path()); }

// Smallest model that passes every rule.
MonolithModel tiny_valid() {
    MonolithModel m;
    m.name = "tiny";
    BoundedContext ctx;
    ctx.id = "c";
    ctx.display_name = "c";
    ctx.tables.push_back({"t", "t"});
    System s;
    s.id = "s";
    s.display_name = "s";
    s.kind = SystemKind::entity;
    s.processes.push_back({"p", "p", {"t"}});
    ctx.systems.push_back(std::move(s));
    m.contexts.push_back(std::move(ctx));
    m.external_entities.push_back({"e", "e"});
    m.flows.push_back({{NodeKind::external, "", "e"},
                       {NodeKind::process, "c", "p"},
                       "in"});
    m.flows.push_back({{NodeKind::process, "c", "p"},
                       {NodeKind::datastore, "c", "t"},
                       "out"});
    return m;
}

std::vector<std::string> rules_of(const ValidationReport& report) {
    std::vector<std::string> rules;
    for (const auto& v : report.violations) rules.push_back(v.rule);
    return rules;
}

}  // namespace

TEST_CASE("fixture parses with expected shape") {
    MonolithModel m = load_fixture();
    CHECK(m.name == "fintech");
    REQUIRE(m.contexts.size() == 3);
    std::size_t systems = 0, tables = 0;
    for (const auto& ctx : m.contexts) {
        systems += ctx.systems.size();
        tables += ctx.tables.size();
    }
    CHECK(systems == 14);
    CHECK(tables == 34);
    CHECK(m.flows.size() == 59);
    CHECK(m.use_cases.size() == 10);
    CHECK(m.rename_map.size() == 4);
    CHECK(m.external_entities.size() == 2);
    CHECK(m.legacy_systems == std::vector<std::string>{"legacy_core"});
}

TEST_CASE("fixture is valid") {
    ValidationReport report = validate_model(load_fixture());
    CHECK(report.ok());
}

TEST_CASE("node refs round trip") {
    for (const char* text :
         {"process:loan/LRM", "datastore:loan/TLC", "external:customer_app"}) {
        NodeRef ref = node_ref_from_string(text);
        CHECK(to_string(ref) == text);
    }
    CHECK_THROWS_AS(node_ref_from_string("loan/LRM"), ParseError);
    CHECK_THROWS_AS(node_ref_from_string("table:loan/TLC"), ParseError);
    CHECK_THROWS_AS(node_ref_from_string("process:LRM"), ParseError);
    CHECK_THROWS_AS(node_ref_from_string("external:"), ParseError);
}

TEST_CASE("malformed json reports line and column") {
    try {
        parse_model("{\n  \"name\": }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "syntax_error");
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("schema violations are syntax errors") {
    CHECK_THROWS_AS(parse_model("[]"), ParseError);
    CHECK_THROWS_AS(parse_model("{\"contexts\": []}"), ParseError);  // no name
    CHECK_THROWS_AS(parse_model("{\"name\": \"x\"}"), ParseError);   // no contexts
    // bad kind
    const char* bad_kind = R"({"name":"x","contexts":[
        {"id":"c","systems":[{"id":"s","kind":"module","processes":[]}]}]})";
    try {
        parse_model(bad_kind);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "syntax_error");
    }
    // bad identifier
    const char* bad_id = R"({"name":"x","contexts":[{"id":"c c"}]})";
    try {
        parse_model(bad_id);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "syntax_error");
    }
}

TEST_CASE("duplicate ids are rejected") {
    const char* dup_ctx = R"({"name":"x","contexts":[{"id":"c"},{"id":"c"}]})";
    try {
        parse_model(dup_ctx);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "duplicate_id");
    }
    const char* dup_sys = R"({"name":"x","contexts":[
        {"id":"a","systems":[{"id":"s"}]},
        {"id":"b","systems":[{"id":"s"}]}]})";
    try {
        parse_model(dup_sys);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "duplicate_id");
    }
    const char* dup_table = R"({"name":"x","contexts":[
        {"id":"c","tables":["t","t"]}]})";
    try {
        parse_model(dup_table);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "duplicate_id");
    }
}

TEST_CASE("unresolved references are rejected") {
    // flow to a process that does not exist
    const char* bad_flow = R"({"name":"x","contexts":[{"id":"c"}],
        "external_entities":["e"],
        "flows":[{"source":"external:e","target":"process:c/p"}]})";
    try {
        parse_model(bad_flow);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "unresolved_reference");
    }
    // declared table not in the context
    const char* bad_table = R"({"name":"x","contexts":[
        {"id":"c","systems":[{"id":"s","processes":[{"id":"p","tables":["nope"]}]}]}]})";
    try {
        parse_model(bad_table);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "unresolved_reference");
    }
    // rename entry for an unknown system
    const char* bad_rename = R"({"name":"x","contexts":[{"id":"c"}],
        "rename_map":{"ghost":"Ghost Service"}})";
    try {
        parse_model(bad_rename);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "unresolved_reference");
    }
    // use case touching an unknown context
    const char* bad_touch = R"({"name":"x","contexts":[{"id":"c"}],
        "use_cases":[{"id":"u","touches":["ghost"]}]})";
    try {
        parse_model(bad_touch);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "unresolved_reference");
    }
}

TEST_CASE("R1 flags processes without inflow or outflow") {
    MonolithModel m = tiny_valid();
    m.flows.pop_back();  // drop p -> t
    ValidationReport report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == "R1");
    CHECK(report.violations[0].location == "c/p");
    CHECK(report.violations[0].message == "process has no outgoing flow");

    m = tiny_valid();
    m.flows.erase(m.flows.begin());  // drop e -> p
    report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].message == "process has no incoming flow");
}

TEST_CASE("R2 flags declared tables that disagree with the flows") {
    MonolithModel m = tiny_valid();
    m.contexts[0].tables.push_back({"u", "u"});
    m.contexts[0].systems[0].processes[0].declared_tables = {"u"};
    // flows still say p writes t
    ValidationReport report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == "R2");
    CHECK(report.violations[0].location == "c/p");

    // one side empty stays quiet
    m = tiny_valid();
    m.contexts[0].systems[0].processes[0].declared_tables.clear();
    CHECK(validate_model(m).ok());
}

TEST_CASE("R3 flags store-to-store and external-to-external flows") {
    MonolithModel m = tiny_valid();
    m.contexts[0].tables.push_back({"u", "u"});
    m.flows.push_back({{NodeKind::datastore, "c", "t"},
                       {NodeKind::datastore, "c", "u"},
                       ""});
    m.external_entities.push_back({"e2", "e2"});
    m.flows.push_back({{NodeKind::external, "", "e"},
                       {NodeKind::external, "", "e2"},
                       ""});
    auto rules = rules_of(validate_model(m));
    CHECK(std::count(rules.begin(), rules.end(), "R3") == 2);
}

TEST_CASE("R4 flags rename entries that span contexts") {
    MonolithModel m = tiny_valid();
    BoundedContext other;
    other.id = "d";
    other.display_name = "d";
    System s2;
    s2.id = "s2";
    s2.display_name = "s2";
    other.systems.push_back(std::move(s2));
    m.contexts.push_back(std::move(other));
    m.rename_map[{"s", "s2"}] = "Spanning Service";
    auto rules = rules_of(validate_model(m));
    CHECK(std::count(rules.begin(), rules.end(), "R4") == 1);
}

TEST_CASE("R5 flags shared processes with divergent declarations") {
    MonolithModel m = tiny_valid();
    m.contexts[0].tables.push_back({"u", "u"});
    System s2;
    s2.id = "s2";
    s2.display_name = "s2";
    s2.kind = SystemKind::aggregate;
    s2.processes.push_back({"p", "p", {"u"}});  // first listing says {t}
    m.contexts[0].systems.push_back(std::move(s2));
    auto report = validate_model(m);
    auto rules = rules_of(report);
    CHECK(std::count(rules.begin(), rules.end(), "R5") == 1);
}

TEST_CASE("R6 flags empty contexts") {
    MonolithModel m = tiny_valid();
    BoundedContext empty;
    empty.id = "void";
    empty.display_name = "void";
    m.contexts.push_back(std::move(empty));
    auto rules = rules_of(validate_model(m));
    CHECK(std::count(rules.begin(), rules.end(), "R6") == 1);
}

TEST_CASE("R7 flags process-datastore flows across contexts") {
    MonolithModel m = tiny_valid();
    BoundedContext other;
    other.id = "d";
    other.display_name = "d";
    other.tables.push_back({"dt", "dt"});
    System s2;
    s2.id = "s2";
    s2.display_name = "s2";
    s2.processes.push_back({"q", "q", {}});
    other.systems.push_back(std::move(s2));
    m.contexts.push_back(std::move(other));
    m.flows.push_back({{NodeKind::external, "", "e"},
                       {NodeKind::process, "d", "q"},
                       ""});
    m.flows.push_back({{NodeKind::process, "d", "q"},
                       {NodeKind::datastore, "c", "t"},
                       ""});
    auto rules = rules_of(validate_model(m));
    CHECK(std::count(rules.begin(), rules.end(), "R7") == 1);
}

TEST_CASE("violations come out sorted") {
    MonolithModel m = tiny_valid();
    m.flows.clear();  // p loses both directions
    BoundedContext empty;
    empty.id = "a_void";
    empty.display_name = "a_void";
    m.contexts.push_back(std::move(empty));
    auto report = validate_model(m);
    auto sorted = report.violations;
    std::sort(sorted.begin(), sorted.end());
    CHECK(report.violations == sorted);
    CHECK(report.violations.size() == 3);  // R1 x2, R6
}

TEST_CASE("derived table usage matches the fixture declarations") {
    MonolithModel m = load_fixture();
    TableUsage usage = derive_table_usage(m);
    CHECK(usage.at({"customer-onboard", "CRP"}) ==
          std::vector<std::string>{"TCA", "TCI"});
    CHECK(usage.at({"loan", "LRM"}) ==
          std::vector<std::string>{"TLLM", "TLRY"});
    CHECK(usage.at({"transactions", "TRU"}) ==
          std::vector<std::string>{"TTH", "TTL"});
    // the fixture declares exactly what the flows imply
    for (const auto& ctx : m.contexts)
        for (const auto& s : ctx.systems)
            for (const auto& p : s.processes)
                CHECK(usage.at({ctx.id, p.id}) == p.declared_tables);
}

TEST_CASE("canonicalize sorts and is idempotent") {
    MonolithModel m = load_fixture();
    MonolithModel c1 = canonicalize(m);
    MonolithModel c2 = canonicalize(c1);
    CHECK(c1 == c2);
    for (std::size_t i = 1; i < c1.contexts.size(); ++i)
        CHECK(c1.contexts[i - 1].id < c1.contexts[i].id);
    for (const auto& ctx : c1.contexts) {
        for (std::size_t i = 1; i < ctx.systems.size(); ++i)
            CHECK(ctx.systems[i - 1].id < ctx.systems[i].id);
        for (std::size_t i = 1; i < ctx.tables.size(); ++i)
            CHECK(ctx.tables[i - 1].id < ctx.tables[i].id);
    }
    CHECK(std::is_sorted(c1.flows.begin(), c1.flows.end()));
}

TEST_CASE("serialize then parse is the identity on canonical models") {
    MonolithModel c = canonicalize(load_fixture());
    MonolithModel reparsed = parse_model(serialize_model(c));
    CHECK(reparsed == c);
    // and serialization itself is stable
    CHECK(serialize_model(reparsed) == serialize_model(c));
}

TEST_CASE("shorthand and longhand table entries both parse") {
    const char* text = R"({"name":"x","contexts":[
        {"id":"c","tables":["t1",{"id":"t2","display_name":"Table Two"}],
         "systems":[{"id":"s"}]}]})";
    MonolithModel m = parse_model(text);
    REQUIRE(m.contexts[0].tables.size() == 2);
    CHECK(m.contexts[0].tables[0].display_name == "t1");
    CHECK(m.contexts[0].tables[1].display_name == "Table Two");
}

TEST_CASE("broken fixture has exactly one R1 violation") {
    MonolithModel m =
        load_model(std::string(MMSPLIT_MODELS_DIR) + "/broken.model");
    auto report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == "R1");
    CHECK(report.violations[0].location == "c/p");
    CHECK(report.violations[0].message == "process has no outgoing flow");
}
