#include "mmsplit/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmsplit/decompose.hpp"
#include "mmsplit/model.hpp"
#include "mmsplit/recommend.hpp"
#include "mmsplit/report.hpp"
#include "mmsplit/version.hpp"

namespace mmsplit::cli {

namespace {

std::string violation_lines(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations)
        out += v.rule + " " + v.location + ": " + v.message + "\n";
    return out;
}

std::string violations_json(const std::vector<Violation>& violations) {
    nlohmann::ordered_json doc;
    doc["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations)
        doc["violations"].push_back({{"rule", v.rule},
                                     {"location", v.location},
                                     {"message", v.message}});
    return doc.dump(2) + "\n";
}

// Writes the artifact to --output or the given stream.
bool write_artifact(const CliConfig& cfg, const std::string& artifact,
                    std::ostream& out, std::ostream& err) {
    if (cfg.output_path.empty()) {
        out << artifact;
        return true;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write '" << cfg.output_path << "'\n";
        return false;
    }
    file << artifact;
    return true;
}

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    MonolithModel model;
    try {
        model = load_model(cfg.model_path);
    } catch (const ParseError& e) {
        err << "error [" << e.code() << "]";
        if (e.line() > 0) err << " at line " << e.line() << ", column " << e.column();
        err << ": " << e.what() << "\n";
        return 2;
    }

    RenderOptions opts{cfg.format, cfg.include_evidence,
                       cfg.cluster_by_context};
    ValidationReport report = validate_model(model);

    if (!report.ok()) {
        if (cfg.command == "validate") {
            std::string artifact;
            if (cfg.format == OutputFormat::structured)
                artifact = violations_json(report.violations);
            else if (cfg.format == OutputFormat::text)
                artifact = violation_lines(report.violations);
            else  // no diagram for an invalid model
                err << violation_lines(report.violations);
            if (!artifact.empty() && !write_artifact(cfg, artifact, out, err))
                return 2;
            return 1;
        }
        err << violation_lines(report.violations);
        return 1;
    }

    DecompositionResult result = decompose(model);

    std::string artifact;
    if (cfg.command == "validate") {
        if (cfg.format == OutputFormat::structured)
            artifact = violations_json(report.violations);
        else if (cfg.format == OutputFormat::text)
            artifact = "no violations\n";
        else
            artifact = emit_dfd_dot(model, opts);
    } else if (cfg.command == "decompose") {
        if (cfg.format == OutputFormat::structured)
            artifact = emit_summary(model, result, {}, opts);
        else if (cfg.format == OutputFormat::dot)
            artifact = emit_architecture_dot(result, {}, opts);
        else
            artifact = emit_merge_trace(result) + "\n== services ==\n\n" +
                       emit_services_text(result);
    } else if (cfg.command == "recommend") {
        auto recs = recommend_all(model, result);
        if (cfg.format == OutputFormat::structured)
            artifact = emit_recommendations_json(recs);
        else if (cfg.format == OutputFormat::dot)
            artifact = emit_architecture_dot(result, recs, opts);
        else
            artifact = emit_recommendations_text(recs);
    } else {  // report
        auto recs = recommend_all(model, result);
        if (cfg.format == OutputFormat::structured)
            artifact = emit_summary(model, result, recs, opts);
        else if (cfg.format == OutputFormat::dot)
            artifact = emit_dfd_dot(model, opts) +
                       emit_architecture_dot(result, recs, opts);
        else
            artifact = emit_merge_trace(result) + "\n== services ==\n\n" +
                       emit_services_text(result) +
                       "\n== recommendations ==\n\n" +
                       emit_recommendations_text(recs);
    }

    if (!write_artifact(cfg, artifact, out, err)) return 2;

    for (const auto& d : result.diagnostics)
        err << "diagnostic [" << d.code << "]: " << d.message << "\n";
    if (cfg.strict && !result.diagnostics.empty()) return 1;
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"monolith to microservices decomposition analyzer"};
    app.name("mmsplit");
    app.set_version_flag("--version", std::string("mmsplit ") + version);
    app.require_subcommand(1);

    CliConfig cfg;
    std::map<std::string, OutputFormat> formats{
        {"dot", OutputFormat::dot},
        {"text", OutputFormat::text},
        {"structured", OutputFormat::structured}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("model", cfg.model_path, "path to the model file")
            ->required();
        sub->add_option("-f,--format", cfg.format,
                        "output format: dot, text or structured")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("-o,--output", cfg.output_path,
                        "write the artifact to this file instead of stdout");
        sub->add_flag("--include-evidence,!--no-include-evidence",
                      cfg.include_evidence,
                      "include merge traces in structured output");
        sub->add_flag("--cluster-by-context,!--no-cluster-by-context",
                      cfg.cluster_by_context,
                      "group diagram nodes by bounded context");
        sub->add_flag("--strict", cfg.strict,
                      "treat diagnostics as errors");
    };

    add_common(app.add_subcommand("validate", "check the model against the "
                                              "modeling rules"));
    add_common(app.add_subcommand("decompose",
                                  "partition each context into services"));
    add_common(app.add_subcommand(
        "recommend", "suggest aggregators, routes, ACLs and protocols"));
    add_common(app.add_subcommand("report", "full analysis"));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        return execute(cfg, out, err);
    } catch (const ParseError& e) {
        err << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const ValidationFailure& e) {
        err << violation_lines(e.report().violations);
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace mmsplit::cli
