#include "vids/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "json_util.hpp"
#include "vids/exporter.hpp"
#include "vids/quality.hpp"
#include "vids/scaffold.hpp"
#include "vids/scorer.hpp"
#include "vids/splits.hpp"
#include "vids/validator.hpp"

namespace fs = std::filesystem;

namespace vids {

namespace {

constexpr const char* kFooter =
    "Exit codes: 0 = pass, 1 = validation failed, 2 = usage error, 3 = operational error (I/O, invalid input, "
    "validation required).";

struct Options {
    std::string path;
    std::string out;
    std::string profile = "auto";
    bool as_json = false;
    int subjects = 0;
    std::uint64_t seed = 42;
    std::optional<int> readers;
    std::string modality = "ct";
    std::vector<double> ratios{0.70, 0.15, 0.15};
    std::string layout;
    std::string task = "VIDS";
    std::string rule;
};

// Help for the subcommand being parsed, if any.
std::string help_for(const CLI::App& app) {
    const auto subs = app.get_subcommands();
    return subs.empty() ? app.help() : subs.front()->help();
}

void emit(std::ostream& out, const json& j) { out << detail::dump_json(j); }

int cmd_validate(const Options& o, std::ostream& out) {
    std::optional<Profile> override;
    if (o.profile != "auto") override = parse_profile(o.profile);
    const auto report = validate(o.path, override);
    out << render_report(report, o.as_json ? ReportFormat::Json : ReportFormat::Human);
    return report.status() == ReportStatus::Pass ? kExitPass : kExitFail;
}

int cmd_scaffold(const Options& o, std::ostream& out) {
    FixtureConfig cfg;
    cfg.n_subjects = o.subjects;
    cfg.seed = o.seed;
    cfg.modality = o.modality;
    cfg.profile = o.profile == "full" ? Profile::Full : Profile::Poc;
    json j = {{"Path", o.path}, {"Profile", to_string(cfg.profile)}, {"Subjects", cfg.n_subjects}, {"Seed", cfg.seed}};
    if (cfg.profile == Profile::Poc && !o.readers) {
        scaffold_dataset(o.path, cfg);
        j["Kind"] = "skeleton";
    } else {
        cfg.readers_per_subject = o.readers.value_or(cfg.readers_per_subject);
        const auto stats = generate_fixture(o.path, cfg);
        j["Kind"] = "fixture";
        j["Readers"] = cfg.readers_per_subject;
        j["Segmentations"] = stats.segmentations;
        j["ReaderMasks"] = stats.reader_masks;
        j["Pairs"] = stats.pairs;
        j["MeanDice"] = stats.mean_dice ? json(*stats.mean_dice) : json(nullptr);
    }
    if (o.as_json) emit(out, j);
    else out << "wrote " << j["Kind"].get<std::string>() << " (" << cfg.n_subjects << " subjects, profile "
             << to_string(cfg.profile) << ") to " << o.path << "\n";
    return kExitPass;
}

int cmd_quality(const Options& o, std::ostream& out) {
    const auto a = recompute_quality(o.path);
    const auto& d = a.summary.dataset;
    if (o.as_json) {
        emit(out, json(a.summary));
        return kExitPass;
    }
    out << "wrote quality/quality_summary.json and quality/annotation_agreement.json (" << d.pair_count << " pairs";
    if (d.mean_dice) out << ", mean Dice " << *d.mean_dice;
    out << ")\n";
    return kExitPass;
}

int cmd_splits(const Options& o, std::ostream& out) {
    if (o.ratios.size() != 3) throw CLI::ValidationError("--ratios", "expected three comma-separated values");
    const auto index = scan_dataset(o.path);
    std::vector<std::string> ids;
    for (const auto& s : index.subjects) ids.push_back(s.id);
    const auto spec = generate_splits(ids, {o.ratios[0], o.ratios[1], o.ratios[2]}, o.seed);
    write_splits(o.path, spec);
    if (o.as_json) emit(out, json(spec));
    else out << "wrote ml/splits.json (train " << spec.train.size() << ", val " << spec.val.size() << ", test "
             << spec.test.size() << ")\n";
    return kExitPass;
}

int cmd_score(const Options& o, std::ostream& out) {
    const auto result = score(load_scorecard(o.path));
    if (o.as_json) emit(out, score_to_json(result));
    else out << render_score(result);
    return kExitPass;
}

int cmd_export(const Options& o, std::ostream& out) {
    const auto m = o.layout == "flat" ? export_flat(o.path, o.out) : export_training_layout(o.path, o.out, o.task);
    if (o.as_json) emit(out, json(m));
    else out << "exported " << m.entries.size() << " cases (" << to_string(m.layout) << ") to " << o.out << "\n";
    return kExitPass;
}

int cmd_mutate(const Options& o, std::ostream& out) {
    const auto what = mutate_fixture(o.path, RuleId::parse(o.rule), o.out);
    if (o.as_json) emit(out, json{{"Rule", o.rule}, {"Mutation", what}, {"Path", o.out}});
    else out << o.rule << ": " << what << "\n";
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"vids: validate, generate, score and export VIDS datasets", "vids"};
    app.footer(kFooter);
    app.require_subcommand(1);
    Options o;

    auto* validate_cmd = app.add_subcommand("validate", "Validate a dataset and print the report");
    validate_cmd->add_option("path", o.path, "Dataset root")->required();
    validate_cmd->add_option("--profile", o.profile, "auto reads the .vids marker")
        ->check(CLI::IsMember({"auto", "poc", "full"}));
    validate_cmd->add_flag("--json", o.as_json, "Machine-readable report");

    auto* scaffold_cmd = app.add_subcommand("scaffold", "Generate a skeleton or a synthetic fixture");
    scaffold_cmd->add_option("path", o.path, "Destination (must be empty)")->required();
    scaffold_cmd->add_option("--subjects", o.subjects, "Number of subjects")->required()->check(CLI::PositiveNumber);
    scaffold_cmd->add_option("--profile", o.profile, "poc or full")->check(CLI::IsMember({"poc", "full"}));
    scaffold_cmd->add_option("--seed", o.seed, "Generator seed");
    scaffold_cmd->add_option("--readers", o.readers, "Readers per subject")->check(CLI::Range(0, 99));
    scaffold_cmd->add_option("--modality", o.modality, "Modality directory name");
    scaffold_cmd->add_flag("--json", o.as_json);

    auto* quality_cmd = app.add_subcommand("quality", "Recompute agreement from reader masks under derivatives/");
    quality_cmd->add_option("path", o.path, "Dataset root")->required();
    quality_cmd->add_flag("--json", o.as_json);

    auto* splits_cmd = app.add_subcommand("splits", "Write ml/splits.json");
    splits_cmd->add_option("path", o.path, "Dataset root")->required();
    splits_cmd->add_option("--seed", o.seed, "Shuffle seed")->required();
    splits_cmd->add_option("--ratios", o.ratios, "train,val,test")->delimiter(',')->expected(3);
    splits_cmd->add_flag("--json", o.as_json);

    auto* score_cmd = app.add_subcommand("score", "Score a 22-dimension compliance scorecard");
    score_cmd->add_option("scorecard", o.path, "Scorecard JSON")->required();
    score_cmd->add_flag("--json", o.as_json);

    auto* export_cmd = app.add_subcommand("export", "Export to a flat or training-framework layout");
    export_cmd->add_option("path", o.path, "Dataset root")->required();
    export_cmd->add_option("out", o.out, "Destination (must be empty)")->required();
    export_cmd->add_option("--layout", o.layout, "flat or training")->required()->check(CLI::IsMember({"flat", "training"}));
    export_cmd->add_option("--task", o.task, "Task name for the training layout");
    export_cmd->add_flag("--json", o.as_json);

    auto* mutate_cmd = app.add_subcommand("mutate", "Copy a dataset and break exactly one rule");
    mutate_cmd->add_option("src", o.path, "Source dataset")->required();
    mutate_cmd->add_option("dst", o.out, "Destination (must be empty)")->required();
    mutate_cmd->add_option("--rule", o.rule, "Rule ID, e.g. S003")->required();
    mutate_cmd->add_flag("--json", o.as_json);

    for (auto* sub : app.get_subcommands({})) sub->footer(kFooter);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << help_for(app);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "vids: " << e.what() << "\n" << help_for(app);
        return kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o, out);
        if (scaffold_cmd->parsed()) return cmd_scaffold(o, out);
        if (quality_cmd->parsed()) return cmd_quality(o, out);
        if (splits_cmd->parsed()) return cmd_splits(o, out);
        if (score_cmd->parsed()) return cmd_score(o, out);
        if (export_cmd->parsed()) return cmd_export(o, out);
        if (mutate_cmd->parsed()) return cmd_mutate(o, out);
    } catch (const CLI::ValidationError& e) {
        err << "vids: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "vids: error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace vids
