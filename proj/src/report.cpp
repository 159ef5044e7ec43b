#include <algorithm>
#include <sstream>

#include "json_util.hpp"
#include "vids/validator.hpp"

namespace vids {

namespace {

constexpr std::size_t kMaxEvidenceLines = 10;

std::string group_label(const std::vector<const RuleResult*>& group) {
    std::string label = group.front()->id.str();
    if (group.size() > 1) label += "-" + group.back()->id.str();
    label += ":";
    label.resize(std::max<std::size_t>(label.size(), 10), ' ');
    return label;
}

std::string plural(int n, std::string_view one, std::string_view many) {
    return std::to_string(n) + " " + std::string(n == 1 ? one : many);
}

std::string pass_summary(RuleCategory c, const ValidationReport& r) {
    const auto& s = r.stats;
    switch (c) {
        case RuleCategory::Structure: return plural(s.subjects, "subject", "subjects") + ", all with sessions";
        case RuleCategory::Imaging:
            return plural(s.images, "imaging file", "imaging files") + ", " +
                   plural(s.image_sidecars, "sidecar", "sidecars");
        case RuleCategory::Annotation:
            return plural(s.segmentations, "segmentation file", "segmentation files") + ", provenance complete";
        case RuleCategory::Quality: return "quality summary + agreement";
        case RuleCategory::ML: return "splits.json";
        case RuleCategory::Metadata: return "CHANGES.md present";
    }
    return "";
}

std::string render_human(const ValidationReport& r) {
    std::ostringstream out;
    out << "VIDS " << kVidsVersion << " validation: " << r.dataset << " (profile: " << to_string(r.profile) << ")\n";
    for (const auto& note : r.notes) out << "  note: " << note << "\n";

    std::vector<const RuleResult*> group;
    auto flush = [&] {
        if (group.empty()) return;
        const auto first = group.front()->outcome;
        const bool uniform = std::all_of(group.begin(), group.end(), [&](auto* g) { return g->outcome == first; });
        out << "  " << group_label(group) << " ";
        if (uniform && first == RuleOutcome::Pass) {
            out << "PASS (" << pass_summary(group.front()->id.category(), r) << ")\n";
        } else if (uniform && first == RuleOutcome::Skip) {
            out << "SKIP (Full profile only)\n";
        } else {
            auto worst = RuleOutcome::Pass;
            for (auto* g : group) {
                if (g->outcome == RuleOutcome::Fail) worst = RuleOutcome::Fail;
                else if (g->outcome == RuleOutcome::Warn && worst != RuleOutcome::Fail) worst = RuleOutcome::Warn;
            }
            out << to_string(worst) << "\n";
            for (auto* g : group) {
                out << "    " << g->id.str() << " " << to_string(g->outcome) << "  " << g->message << "\n";
                const auto shown = std::min(g->evidence.size(), kMaxEvidenceLines);
                for (std::size_t i = 0; i < shown; ++i) out << "      - " << g->evidence[i] << "\n";
                if (g->evidence.size() > shown) out << "      ... and " << g->evidence.size() - shown << " more\n";
            }
        }
        group.clear();
    };
    for (const auto& res : r.results) {
        if (!group.empty() && group.front()->id.category() != res.id.category()) flush();
        group.push_back(&res);
    }
    flush();

    const auto c = r.counts();
    const auto total = r.results.size();
    if (r.status() == ReportStatus::Pass) {
        out << "  VALIDATION PASSED (" << c.pass << "/" << total << " rules";
        if (c.warn) out << "; " << plural(c.warn, "warning", "warnings");
        if (c.skip) out << "; " << c.skip << " skipped";
        out << ")\n";
    } else {
        out << "  VALIDATION FAILED (" << c.fail << " of " << total << " rules failed)\n";
    }
    return out.str();
}

}  // namespace

std::string render_report(const ValidationReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return detail::dump_json(json(report));
    return render_human(report);
}

}  // namespace vids
