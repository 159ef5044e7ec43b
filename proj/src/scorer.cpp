#include "vids/scorer.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace vids {

namespace {

using C = ScoreCategory;

constexpr DimensionInfo kDimensions[] = {
    {"dataset-marker", C::Structure, "Dataset marker"},
    {"dataset-description", C::Structure, "Dataset description"},
    {"participant-registry", C::Structure, "Participant registry"},
    {"readme", C::Structure, "Human readable README"},
    {"subject-hierarchy", C::Structure, "Subject hierarchy"},
    {"session-hierarchy", C::Structure, "Session hierarchy"},
    {"standardized-format", C::Imaging, "Standardized format (NIfTI)"},
    {"image-metadata-sidecar", C::Imaging, "Per image metadata sidecar"},
    {"consistent-file-naming", C::Imaging, "Consistent file naming"},
    {"annotation-directory", C::Annotation, "Structured annotation directory"},
    {"segmentation-masks", C::Annotation, "Segmentation masks"},
    {"annotation-metadata-sidecar", C::Annotation, "Per annotation metadata sidecar"},
    {"label-map", C::Annotation, "Machine readable label map"},
    {"annotator-identity", C::Provenance, "Annotator identity"},
    {"annotator-credentials", C::Provenance, "Annotator credentials"},
    {"annotation-tool", C::Provenance, "Annotation tool"},
    {"annotation-date", C::Provenance, "Annotation date"},
    {"qc-review", C::Provenance, "QC review documented"},
    {"inter-annotator-agreement", C::Quality, "Inter annotator agreement"},
    {"quality-summary", C::Quality, "Quality summary"},
    {"documented-splits", C::MLReadiness, "Documented splits"},
    {"split-rationale", C::MLReadiness, "Split rationale"},
};

int half_points(DimensionStatus s) {
    switch (s) {
        case DimensionStatus::Satisfied: return 2;
        case DimensionStatus::Partial: return 1;
        case DimensionStatus::Absent: return 0;
    }
    return 0;
}

const DimensionInfo* find_dimension(std::string_view slug) {
    for (const auto& d : kDimensions)
        if (d.slug == slug) return &d;
    return nullptr;
}

std::string fmt_points(HalfPoints h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", h.points());
    return buf;
}

}  // namespace

std::span<const DimensionInfo> dimension_catalog() { return kDimensions; }

int category_size(ScoreCategory c) {
    return static_cast<int>(std::count_if(std::begin(kDimensions), std::end(kDimensions),
                                          [c](const DimensionInfo& d) { return d.category == c; }));
}

long round_half_up(long num, long den) { return (2 * num + den) / (2 * den); }

void check_scorecard(const Scorecard& card) {
    if (card.entries.size() != static_cast<std::size_t>(kTotalDimensions))
        throw ScoreError(ScoreError::Kind::WrongDimensionCount,
                         "scorecard has " + std::to_string(card.entries.size()) + " dimensions, expected " +
                             std::to_string(kTotalDimensions));
    std::set<std::string> seen;
    std::map<ScoreCategory, int> counts;
    for (const auto& e : card.entries) {
        const auto* d = find_dimension(e.dimension);
        if (!d) throw ScoreError(ScoreError::Kind::UnknownDimension, "unknown dimension '" + e.dimension + "'");
        if (d->category != e.category)
            throw ScoreError(ScoreError::Kind::UnknownCategory, "dimension '" + e.dimension + "' belongs to " +
                                                                    std::string(to_string(d->category)) + ", not " +
                                                                    std::string(to_string(e.category)));
        if (!seen.insert(e.dimension).second)
            throw ScoreError(ScoreError::Kind::DuplicateDimension, "dimension '" + e.dimension + "' listed twice");
        ++counts[e.category];
    }
    for (auto c : kScoreCategories)
        if (counts[c] != category_size(c))
            throw ScoreError(ScoreError::Kind::WrongDimensionCount,
                             std::string(to_string(c)) + " has " + std::to_string(counts[c]) + " dimensions, expected " +
                                 std::to_string(category_size(c)));
}

ScoreResult score(const Scorecard& card) {
    check_scorecard(card);
    ScoreResult r;
    r.dataset = card.dataset;
    for (auto c : kScoreCategories) r.per_category[c] = {};
    for (const auto& e : card.entries) {
        const int h = half_points(e.status);
        r.per_category[e.category].value += h;
        r.total.value += h;
    }
    // 100 * (H / 2) / 22
    r.percent = static_cast<int>(round_half_up(100L * r.total.value, 2L * kTotalDimensions));
    return r;
}

std::map<ScoreCategory, int> category_averages(std::span<const Scorecard> cards) {
    if (cards.empty()) throw ScoreError(ScoreError::Kind::EmptyInput, "category averages need at least one scorecard");
    std::map<ScoreCategory, long> sums;
    for (const auto& card : cards)
        for (const auto& [c, h] : score(card).per_category) sums[c] += h.value;
    std::map<ScoreCategory, int> out;
    const long n = static_cast<long>(cards.size());
    for (auto c : kScoreCategories)
        out[c] = static_cast<int>(round_half_up(100L * sums[c], 2L * n * category_size(c)));
    return out;
}

Scorecard load_scorecard(const std::filesystem::path& path) {
    const auto text = detail::read_file(path);
    std::string error;
    auto doc = detail::try_parse(text, error);
    if (!doc) throw SchemaError(path.string() + ": " + error);
    try {
        auto card = doc->get<Scorecard>();
        if (card.dataset.empty()) card.dataset = path.stem().string();
        return card;
    } catch (const SchemaError& e) {
        if (std::string_view(e.what()).find("category") != std::string_view::npos)
            throw ScoreError(ScoreError::Kind::UnknownCategory, path.string() + ": " + e.what());
        throw SchemaError(path.string() + ": " + e.what());
    }
}

Scorecard uniform_scorecard(DimensionStatus status, std::string dataset) {
    Scorecard card;
    card.dataset = std::move(dataset);
    for (const auto& d : kDimensions) card.entries.push_back({std::string(d.slug), d.category, status});
    return card;
}

json score_to_json(const ScoreResult& r) {
    json cats = json::object();
    for (const auto& [c, h] : r.per_category)
        cats[std::string(to_string(c))] = {{"Score", h.points()}, {"Max", category_size(c)}};
    return {{"Dataset", r.dataset},
            {"Categories", std::move(cats)},
            {"Total", r.total.points()},
            {"Max", kTotalDimensions},
            {"Percent", r.percent}};
}

std::string render_score(const ScoreResult& r) {
    std::ostringstream out;
    out << (r.dataset.empty() ? "scorecard" : r.dataset) << "\n";
    for (const auto& [c, h] : r.per_category) {
        std::string label = std::string(to_string(c)) + " (" + std::to_string(category_size(c)) + ")";
        label.resize(std::max<std::size_t>(label.size(), 18), ' ');
        out << "  " << label << " " << fmt_points(h) << "\n";
    }
    out << "  Total (" << kTotalDimensions << ")         " << fmt_points(r.total) << "\n";
    out << "  Percentage         " << r.percent << "%\n";
    return out.str();
}

}  // namespace vids
