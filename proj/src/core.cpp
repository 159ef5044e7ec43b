#include "vids/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "json_util.hpp"

namespace vids {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

constexpr int max_rule_number(RuleCategory c) {
    switch (c) {
        case RuleCategory::Structure: return 6;
        case RuleCategory::Imaging: return 4;
        case RuleCategory::Annotation: return 5;
        case RuleCategory::Quality: return 3;
        case RuleCategory::ML: return 2;
        case RuleCategory::Metadata: return 1;
    }
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Profile p) { return p == Profile::Full ? "full" : "poc"; }

Profile parse_profile(std::string_view text) {
    const auto t = lower(text);
    if (t == "poc") return Profile::Poc;
    if (t == "full") return Profile::Full;
    throw SchemaError("unknown profile '" + std::string(text) + "' (expected poc or full)");
}

char category_letter(RuleCategory c) {
    static constexpr char letters[] = {'S', 'I', 'A', 'Q', 'M', 'D'};
    return letters[static_cast<int>(c)];
}

std::string_view category_label(RuleCategory c) {
    switch (c) {
        case RuleCategory::Structure: return "Structure";
        case RuleCategory::Imaging: return "Imaging";
        case RuleCategory::Annotation: return "Annotation";
        case RuleCategory::Quality: return "Quality";
        case RuleCategory::ML: return "ML";
        case RuleCategory::Metadata: return "Metadata";
    }
    return "";
}

RuleId::RuleId(RuleCategory category, int number) : category_(category), number_(number) {
    if (number < 1 || number > max_rule_number(category))
        throw Error("rule " + std::string(1, category_letter(category)) + std::to_string(number) +
                    " is not in the VIDS catalog");
}

RuleId RuleId::parse(std::string_view text) {
    if (text.size() != 4) throw Error("malformed rule id '" + std::string(text) + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    static constexpr std::string_view letters = "SIAQMD";
    const auto pos = letters.find(letter);
    int number = 0;
    const auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
    if (pos == std::string_view::npos || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw Error("malformed rule id '" + std::string(text) + "'");
    return RuleId(static_cast<RuleCategory>(pos), number);
}

std::string RuleId::str() const {
    std::string out(1, category_letter(category_));
    const auto n = std::to_string(number_);
    out.append(3 - n.size(), '0');
    out += n;
    return out;
}

std::span<const RuleCatalogEntry> rule_catalog() {
    using C = RuleCategory;
    static const std::vector<RuleCatalogEntry> catalog = {
        {RuleId(C::Structure, 1), ".vids marker exists", false, false},
        {RuleId(C::Structure, 2), "dataset_description.json valid (6 fields)", false, false},
        {RuleId(C::Structure, 3), "participants.json or .tsv exists", false, false},
        {RuleId(C::Structure, 4), "README.md exists", false, false},
        {RuleId(C::Structure, 5), "Subject directories (sub-*) exist", false, false},
        {RuleId(C::Structure, 6), "Session directories (ses-*) exist", false, false},
        {RuleId(C::Imaging, 1), "NIfTI files present per subject", false, false},
        {RuleId(C::Imaging, 2), "Imaging sidecar JSONs present", false, false},
        {RuleId(C::Imaging, 3), "Imaging sidecar JSONs are valid", false, false},
        {RuleId(C::Imaging, 4), "VIDS naming convention", false, true},
        {RuleId(C::Annotation, 1), "derivatives/annotations/ exists", false, false},
        {RuleId(C::Annotation, 2), "Segmentation files exist", false, false},
        {RuleId(C::Annotation, 3), "Annotation sidecar JSONs exist", false, false},
        {RuleId(C::Annotation, 4), "Annotation JSONs valid + VIDSVersion", false, false},
        {RuleId(C::Annotation, 5), "Provenance fields populated", false, false},
        {RuleId(C::Quality, 1), "quality/ directory exists", true, false},
        {RuleId(C::Quality, 2), "quality_summary.json present", true, false},
        {RuleId(C::Quality, 3), "annotation_agreement.json present", true, false},
        {RuleId(C::ML, 1), "ml/ directory exists", true, false},
        {RuleId(C::ML, 2), "ml/splits.json present", true, false},
        {RuleId(C::Metadata, 1), "CHANGES.md exists", false, true},
    };
    return catalog;
}

const RuleCatalogEntry& catalog_entry(const RuleId& id) {
    for (const auto& e : rule_catalog())
        if (e.id == id) return e;
    throw Error("rule " + id.str() + " missing from catalog");
}

std::string_view to_string(RuleOutcome o) {
    switch (o) {
        case RuleOutcome::Pass: return "PASS";
        case RuleOutcome::Fail: return "FAIL";
        case RuleOutcome::Warn: return "WARN";
        case RuleOutcome::Skip: return "SKIP";
    }
    return "";
}

RuleOutcome parse_outcome(std::string_view text) {
    for (auto o : {RuleOutcome::Pass, RuleOutcome::Fail, RuleOutcome::Warn, RuleOutcome::Skip})
        if (to_string(o) == text) return o;
    throw SchemaError("unknown rule outcome '" + std::string(text) + "'");
}

std::string_view to_string(ReportStatus s) { return s == ReportStatus::Pass ? "PASS" : "FAIL"; }

OutcomeCounts ValidationReport::counts() const {
    OutcomeCounts c;
    for (const auto& r : results) {
        switch (r.outcome) {
            case RuleOutcome::Pass: ++c.pass; break;
            case RuleOutcome::Fail: ++c.fail; break;
            case RuleOutcome::Warn: ++c.warn; break;
            case RuleOutcome::Skip: ++c.skip; break;
        }
    }
    return c;
}

ReportStatus ValidationReport::status() const {
    return counts().fail == 0 ? ReportStatus::Pass : ReportStatus::Fail;
}

const RuleResult& ValidationReport::result(const RuleId& id) const {
    for (const auto& r : results)
        if (r.id == id) return r;
    throw Error("report has no result for " + id.str());
}

// ---------------------------------------------------------------------------

std::vector<std::string> missing_description_fields(const json& doc) {
    std::vector<std::string> missing;
    if (!doc.is_object()) return {kRequiredDescriptionFields.begin(), kRequiredDescriptionFields.end()};
    for (auto key : kRequiredDescriptionFields) {
        const auto it = doc.find(std::string(key));
        bool ok = false;
        if (it != doc.end()) {
            if (key == "Authors" || key == "Modalities") {
                ok = it->is_array() && !it->empty() &&
                     std::all_of(it->begin(), it->end(), [](const json& v) {
                         return v.is_string() && !v.get_ref<const std::string&>().empty();
                     });
            } else {
                ok = it->is_string() && !it->get_ref<const std::string&>().empty();
            }
        }
        if (!ok) missing.emplace_back(key);
    }
    return missing;
}

std::string_view to_string(Suffix s) { return s == Suffix::Img ? "img" : "seg"; }

bool provenance_minimum_ok(const Provenance& p) {
    auto filled = [](const std::optional<std::string>& v) { return v && !v->empty(); };
    const bool identity = filled(p.annotator.id) || filled(p.annotator.name);
    const bool when_or_how = filled(p.annotation_process.date) || filled(p.annotation_process.tool);
    return identity && when_or_how;
}

LabelMap::LabelMap(std::map<std::uint32_t, std::string> entries) : entries_(std::move(entries)) {
    if (!entries_.contains(0)) throw SchemaError("LabelMap must map \"0\" to the background label");
}

std::string_view to_string(QualityTier t) {
    switch (t) {
        case QualityTier::Excellent: return "excellent";
        case QualityTier::Good: return "good";
        case QualityTier::Acceptable: return "acceptable";
        case QualityTier::Poor: return "poor";
        case QualityTier::Unrated: return "unrated";
    }
    return "";
}

QualityTier parse_tier(std::string_view text) {
    for (auto t : {QualityTier::Excellent, QualityTier::Good, QualityTier::Acceptable,
                   QualityTier::Poor, QualityTier::Unrated})
        if (to_string(t) == text) return t;
    throw SchemaError("unknown quality tier '" + std::string(text) + "'");
}

std::string_view to_string(ScoreCategory c) {
    switch (c) {
        case ScoreCategory::Structure: return "Structure";
        case ScoreCategory::Imaging: return "Imaging";
        case ScoreCategory::Annotation: return "Annotation";
        case ScoreCategory::Provenance: return "Provenance";
        case ScoreCategory::Quality: return "Quality";
        case ScoreCategory::MLReadiness: return "MLReadiness";
    }
    return "";
}

ScoreCategory parse_score_category(std::string_view text) {
    for (auto c : kScoreCategories)
        if (to_string(c) == text) return c;
    throw SchemaError("unknown compliance category '" + std::string(text) + "'");
}

std::string_view to_string(DimensionStatus s) {
    switch (s) {
        case DimensionStatus::Satisfied: return "satisfied";
        case DimensionStatus::Partial: return "partial";
        case DimensionStatus::Absent: return "absent";
    }
    return "";
}

DimensionStatus parse_dimension_status(std::string_view text) {
    const auto t = lower(text);
    for (auto s : {DimensionStatus::Satisfied, DimensionStatus::Partial, DimensionStatus::Absent})
        if (to_string(s) == t) return s;
    throw SchemaError("unknown dimension status '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// JSON

using detail::opt_number;
using detail::opt_string;
using detail::req_string;
using detail::string_list;

void to_json(json& j, const VidsMarker& m) {
    j = json{{"VIDSVersion", m.vids_version}, {"Profile", to_string(m.profile)}};
}

void from_json(const json& j, VidsMarker& m) {
    detail::require_object(j, ".vids");
    m.vids_version = req_string(j, "VIDSVersion", ".vids");
    m.profile = parse_profile(req_string(j, "Profile", ".vids"));
}

void to_json(json& j, const DatasetDescription& d) {
    j = d.extra;
    j["Name"] = d.name;
    j["VIDSVersion"] = d.vids_version;
    j["DatasetType"] = d.dataset_type;
    j["License"] = d.license;
    j["Authors"] = d.authors;
    j["Modalities"] = d.modalities;
    if (d.compliance) {
        json c = d.compliance->extra;
        if (d.compliance->irb_approval) c["IRBApproval"] = *d.compliance->irb_approval;
        if (d.compliance->deidentification_method)
            c["DeidentificationMethod"] = *d.compliance->deidentification_method;
        j["Compliance"] = std::move(c);
    }
    if (d.custom_modalities) j["CustomModalities"] = *d.custom_modalities;
}

void from_json(const json& j, DatasetDescription& d) {
    constexpr std::string_view ctx = "dataset_description.json";
    detail::require_object(j, ctx);
    d = {};
    d.name = req_string(j, "Name", ctx);
    d.vids_version = req_string(j, "VIDSVersion", ctx);
    d.dataset_type = req_string(j, "DatasetType", ctx);
    d.license = req_string(j, "License", ctx);
    d.authors = string_list(j, "Authors", ctx);
    d.modalities = string_list(j, "Modalities", ctx);
    if (const auto* c = detail::find(j, "Compliance")) {
        detail::require_object(*c, "Compliance");
        d.compliance = ComplianceInfo{opt_string(*c, "IRBApproval", "Compliance"),
                                      opt_string(*c, "DeidentificationMethod", "Compliance"),
                                      detail::without(*c, {"IRBApproval", "DeidentificationMethod"})};
    }
    if (const auto* c = detail::find(j, "CustomModalities")) d.custom_modalities = *c;
    d.extra = detail::without(j, {"Name", "VIDSVersion", "DatasetType", "License", "Authors",
                                  "Modalities", "Compliance", "CustomModalities"});
}

namespace {

std::string_view to_string(AnnotationMethod m) {
    switch (m) {
        case AnnotationMethod::Manual: return "manual";
        case AnnotationMethod::SemiAutomated: return "semi-automated";
        case AnnotationMethod::Automated: return "automated";
    }
    return "";
}

AnnotationMethod parse_method(std::string_view text) {
    const auto t = lower(text);
    for (auto m : {AnnotationMethod::Manual, AnnotationMethod::SemiAutomated, AnnotationMethod::Automated})
        if (to_string(m) == t) return m;
    throw SchemaError("unknown annotation method '" + std::string(text) + "'");
}

std::string_view to_string(ReviewOutcome o) {
    switch (o) {
        case ReviewOutcome::Approved: return "approved";
        case ReviewOutcome::Revisions: return "revisions";
        case ReviewOutcome::Rejected: return "rejected";
    }
    return "";
}

ReviewOutcome parse_review(std::string_view text) {
    const auto t = lower(text);
    for (auto o : {ReviewOutcome::Approved, ReviewOutcome::Revisions, ReviewOutcome::Rejected})
        if (to_string(o) == t) return o;
    throw SchemaError("unknown review outcome '" + std::string(text) + "'");
}

void put(json& j, const char* key, const std::optional<std::string>& v) {
    if (v) j[key] = *v;
}

}  // namespace

void to_json(json& j, const Provenance& p) {
    j = p.extra;
    json annotator = json::object();
    put(annotator, "ID", p.annotator.id);
    put(annotator, "Name", p.annotator.name);
    put(annotator, "Credentials", p.annotator.credentials);
    put(annotator, "Specialty", p.annotator.specialty);
    put(annotator, "Institution", p.annotator.institution);
    j["Annotator"] = std::move(annotator);

    const auto& ap = p.annotation_process;
    json process = json::object();
    put(process, "Tool", ap.tool);
    put(process, "Version", ap.version);
    put(process, "Date", ap.date);
    if (ap.time_spent_minutes) process["TimeSpent_minutes"] = *ap.time_spent_minutes;
    if (ap.method) process["Method"] = to_string(*ap.method);
    j["AnnotationProcess"] = std::move(process);

    if (const auto& qc = p.quality_control) {
        json q = {{"ReviewedBy", qc->reviewed_by}, {"ReviewOutcome", to_string(qc->review_outcome)}};
        put(q, "ReviewDate", qc->review_date);
        if (qc->confidence) q["Confidence"] = *qc->confidence;
        j["QualityControl"] = std::move(q);
    }
}

void from_json(const json& j, Provenance& p) {
    detail::require_object(j, "Provenance");
    p = {};
    if (const auto* a = detail::find(j, "Annotator")) {
        detail::require_object(*a, "Annotator");
        p.annotator.id = opt_string(*a, "ID", "Annotator");
        p.annotator.name = opt_string(*a, "Name", "Annotator");
        p.annotator.credentials = opt_string(*a, "Credentials", "Annotator");
        p.annotator.specialty = opt_string(*a, "Specialty", "Annotator");
        p.annotator.institution = opt_string(*a, "Institution", "Annotator");
    }
    if (const auto* a = detail::find(j, "AnnotationProcess")) {
        constexpr std::string_view ctx = "AnnotationProcess";
        detail::require_object(*a, ctx);
        auto& ap = p.annotation_process;
        ap.tool = opt_string(*a, "Tool", ctx);
        ap.version = opt_string(*a, "Version", ctx);
        ap.date = opt_string(*a, "Date", ctx);
        ap.time_spent_minutes = opt_number(*a, "TimeSpent_minutes", ctx);
        if (ap.time_spent_minutes && *ap.time_spent_minutes < 0)
            throw SchemaError("AnnotationProcess.TimeSpent_minutes must be non-negative");
        if (auto m = opt_string(*a, "Method", ctx)) ap.method = parse_method(*m);
    }
    if (const auto* q = detail::find(j, "QualityControl")) {
        constexpr std::string_view ctx = "QualityControl";
        detail::require_object(*q, ctx);
        QualityControl qc;
        qc.reviewed_by = req_string(*q, "ReviewedBy", ctx);
        qc.review_date = opt_string(*q, "ReviewDate", ctx);
        qc.review_outcome = parse_review(req_string(*q, "ReviewOutcome", ctx));
        qc.confidence = opt_number(*q, "Confidence", ctx);
        if (qc.confidence && (*qc.confidence < 0.0 || *qc.confidence > 1.0))
            throw SchemaError("QualityControl.Confidence must lie in [0, 1]");
        p.quality_control = std::move(qc);
    }
    p.extra = detail::without(j, {"Annotator", "AnnotationProcess", "QualityControl"});
}

void to_json(json& j, const LabelMap& m) {
    j = json::object();
    for (const auto& [k, v] : m.entries()) j[std::to_string(k)] = v;
}

void from_json(const json& j, LabelMap& m) {
    detail::require_object(j, "LabelMap");
    std::map<std::uint32_t, std::string> entries;
    for (const auto& [key, value] : j.items()) {
        std::uint32_t label = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), label);
        if (key.empty() || ec != std::errc{} || ptr != key.data() + key.size())
            throw SchemaError("LabelMap key '" + key + "' is not a non-negative integer");
        if (!value.is_string()) throw SchemaError("LabelMap value for '" + key + "' must be a string");
        if (!entries.emplace(label, value.get<std::string>()).second)
            throw SchemaError("LabelMap key '" + key + "' duplicates label " + std::to_string(label));
    }
    m = LabelMap(std::move(entries));
}

void to_json(json& j, const AnnotationSidecar& s) {
    j = s.extra;
    j["VIDSVersion"] = s.vids_version;
    j["AnnotationType"] = s.annotation_type;
    j["SourceImage"] = s.source_image;
    j["LabelMap"] = s.label_map;
    j["Provenance"] = s.provenance;
    if (s.annotations) j["Annotations"] = *s.annotations;
}

void from_json(const json& j, AnnotationSidecar& s) {
    constexpr std::string_view ctx = "annotation sidecar";
    detail::require_object(j, ctx);
    s = {};
    s.vids_version = req_string(j, "VIDSVersion", ctx);
    s.annotation_type = req_string(j, "AnnotationType", ctx);
    s.source_image = req_string(j, "SourceImage", ctx);
    s.label_map = detail::required(j, "LabelMap", ctx).get<LabelMap>();
    s.provenance = detail::required(j, "Provenance", ctx).get<Provenance>();
    if (const auto* a = detail::find(j, "Annotations")) {
        if (!a->is_array()) throw SchemaError("Annotations must be an array");
        for (const auto& rec : *a) {
            if (!rec.is_object()) throw SchemaError("Annotations[] entries must be objects");
            if (rec.contains("Characteristics") && !rec["Characteristics"].is_object())
                throw SchemaError("Annotations[].Characteristics must be an object");
        }
        s.annotations = *a;
    }
    s.extra = detail::without(j, {"VIDSVersion", "AnnotationType", "SourceImage", "LabelMap",
                                  "Provenance", "Annotations"});
}

void to_json(json& j, const SplitsSpec& s) {
    j = json{{"Seed", s.seed},
             {"Ratios", s.ratios},
             {"Method", s.method},
             {"Rationale", s.rationale},
             {"Train", s.train},
             {"Val", s.val},
             {"Test", s.test}};
}

void from_json(const json& j, SplitsSpec& s) {
    constexpr std::string_view ctx = "splits.json";
    detail::require_object(j, ctx);
    s = {};
    s.train = string_list(j, "Train", ctx, true);
    s.val = string_list(j, "Val", ctx, true);
    s.test = string_list(j, "Test", ctx, true);
    if (const auto* seed = detail::find(j, "Seed")) {
        if (!seed->is_number_unsigned()) throw SchemaError("splits.json Seed must be an unsigned integer");
        s.seed = seed->get<std::uint64_t>();
    }
    if (const auto* r = detail::find(j, "Ratios")) {
        if (!r->is_array() || r->size() != 3 ||
            !std::all_of(r->begin(), r->end(), [](const json& v) { return v.is_number(); }))
            throw SchemaError("splits.json Ratios must be an array of three numbers");
        for (std::size_t i = 0; i < 3; ++i) s.ratios[i] = (*r)[i].get<double>();
    }
    s.method = opt_string(j, "Method", ctx).value_or("");
    s.rationale = opt_string(j, "Rationale", ctx).value_or("");
}

void to_json(json& j, const QualitySummary& q) {
    json subjects = json::array();
    for (const auto& s : q.subjects) {
        json rec = {{"Subject", s.subject},
                    {"NoduleCount", s.nodule_count},
                    {"PairCount", s.pair_count},
                    {"Tier", to_string(s.tier)}};
        rec["MeanPairwiseDice"] = s.mean_pairwise_dice ? json(*s.mean_pairwise_dice) : json(nullptr);
        subjects.push_back(std::move(rec));
    }
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    const auto& d = q.dataset;
    j = json{{"VIDSVersion", kVidsVersion},
             {"Aggregation", "per-subject mean = flat mean over all reader-pair Dice records of the "
                             "subject's units; dataset MeanDice = flat mean over all pair records"},
             {"TierThresholds", {{"excellent", 0.90}, {"good", 0.85}, {"acceptable", 0.75}}},
             {"Subjects", std::move(subjects)},
             {"Dataset",
              {{"PairCount", d.pair_count},
               {"MeanDice", opt(d.mean_dice)},
               {"MeanOfSubjectMeans", opt(d.mean_of_subject_means)},
               {"MinDice", opt(d.min_dice)},
               {"MaxDice", opt(d.max_dice)},
               {"TierCounts", d.tier_counts}}}};
}

void from_json(const json& j, QualitySummary& q) {
    constexpr std::string_view ctx = "quality_summary.json";
    detail::require_object(j, ctx);
    q = {};
    for (const auto& rec : detail::required(j, "Subjects", ctx)) {
        SubjectQuality s;
        s.subject = req_string(rec, "Subject", ctx);
        s.nodule_count = rec.at("NoduleCount").get<int>();
        s.pair_count = rec.value("PairCount", 0);
        s.mean_pairwise_dice = opt_number(rec, "MeanPairwiseDice", ctx);
        s.tier = parse_tier(req_string(rec, "Tier", ctx));
        q.subjects.push_back(std::move(s));
    }
    const auto& d = detail::required(j, "Dataset", ctx);
    q.dataset.pair_count = d.value("PairCount", 0);
    q.dataset.mean_dice = opt_number(d, "MeanDice", ctx);
    q.dataset.mean_of_subject_means = opt_number(d, "MeanOfSubjectMeans", ctx);
    q.dataset.min_dice = opt_number(d, "MinDice", ctx);
    q.dataset.max_dice = opt_number(d, "MaxDice", ctx);
    if (const auto* t = detail::find(d, "TierCounts")) q.dataset.tier_counts = t->get<std::map<std::string, int>>();
}

void to_json(json& j, const Scorecard& c) {
    json dims = json::array();
    for (const auto& e : c.entries)
        dims.push_back({{"Dimension", e.dimension},
                        {"Category", to_string(e.category)},
                        {"Status", to_string(e.status)}});
    j = json{{"Dataset", c.dataset}, {"Dimensions", std::move(dims)}};
}

void from_json(const json& j, Scorecard& c) {
    c = {};
    const json* dims = &j;
    if (j.is_object()) {
        c.dataset = opt_string(j, "Dataset", "scorecard").value_or("");
        dims = &detail::required(j, "Dimensions", "scorecard");
    }
    if (!dims->is_array()) throw SchemaError("scorecard must be a list of {Dimension, Category, Status}");
    for (const auto& rec : *dims) {
        detail::require_object(rec, "scorecard entry");
        c.entries.push_back({req_string(rec, "Dimension", "scorecard entry"),
                             parse_score_category(req_string(rec, "Category", "scorecard entry")),
                             parse_dimension_status(req_string(rec, "Status", "scorecard entry"))});
    }
}

void to_json(json& j, const ValidationReport& r) {
    json results = json::array();
    for (const auto& res : r.results) {
        results.push_back({{"Rule", res.id.str()},
                           {"Category", res.category_label},
                           {"Check", catalog_entry(res.id).check},
                           {"Status", to_string(res.outcome)},
                           {"Message", res.message},
                           {"Evidence", res.evidence}});
    }
    const auto c = r.counts();
    j = json{{"VIDSVersion", kVidsVersion},
             {"Dataset", r.dataset},
             {"Profile", to_string(r.profile)},
             {"Results", std::move(results)},
             {"Notes", r.notes},
             {"Stats",
              {{"Subjects", r.stats.subjects},
               {"Sessions", r.stats.sessions},
               {"Images", r.stats.images},
               {"ImageSidecars", r.stats.image_sidecars},
               {"Segmentations", r.stats.segmentations},
               {"AnnotationSidecars", r.stats.annotation_sidecars}}},
             {"Summary",
              {{"Status", to_string(r.status())},
               {"Total", r.results.size()},
               {"Pass", c.pass},
               {"Fail", c.fail},
               {"Warn", c.warn},
               {"Skip", c.skip}}}};
}

void from_json(const json& j, ValidationReport& r) {
    constexpr std::string_view ctx = "validation report";
    detail::require_object(j, ctx);
    r = {};
    r.dataset = req_string(j, "Dataset", ctx);
    r.profile = parse_profile(req_string(j, "Profile", ctx));
    for (const auto& rec : detail::required(j, "Results", ctx)) {
        r.results.push_back({RuleId::parse(req_string(rec, "Rule", ctx)),
                             req_string(rec, "Category", ctx),
                             parse_outcome(req_string(rec, "Status", ctx)),
                             req_string(rec, "Message", ctx),
                             string_list(rec, "Evidence", ctx, true)});
    }
    if (const auto* n = detail::find(j, "Notes")) r.notes = n->get<std::vector<std::string>>();
    if (const auto* s = detail::find(j, "Stats")) {
        r.stats.subjects = s->value("Subjects", 0);
        r.stats.sessions = s->value("Sessions", 0);
        r.stats.images = s->value("Images", 0);
        r.stats.image_sidecars = s->value("ImageSidecars", 0);
        r.stats.segmentations = s->value("Segmentations", 0);
        r.stats.annotation_sidecars = s->value("AnnotationSidecars", 0);
    }
}

}  // namespace vids
