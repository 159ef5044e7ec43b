#include "vids/validator.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json_util.hpp"
#include "vids/naming.hpp"
#include "vids/splits.hpp"

namespace fs = std::filesystem;

namespace vids {

namespace {

constexpr std::string_view kNiftiExt = ".nii.gz";
constexpr std::string_view kSegTail = "_seg.nii.gz";

bool ends_with(std::string_view s, std::string_view tail) { return s.ends_with(tail); }

std::string join_rel(const std::string& parent, const std::string& name) {
    return parent.empty() ? name : parent + "/" + name;
}

std::string strip_sub_prefix(std::string_view id) {
    return std::string(id.starts_with("sub-") ? id.substr(4) : id);
}

// Directory walker that refuses to follow links leaving the dataset root.
class Walker {
public:
    explicit Walker(const fs::path& root) : root_(fs::weakly_canonical(root)) {}

    struct Entry {
        std::string name;
        fs::path path;
        bool is_dir;
        bool is_file;
    };

    std::vector<Entry> list(const fs::path& dir, const std::string& rel, std::vector<std::string>& notes) const {
        std::vector<Entry> out;
        std::error_code ec;
        fs::directory_iterator it(dir, ec), end;
        if (ec) {
            notes.push_back("cannot list " + (rel.empty() ? std::string(".") : rel) + ": " + ec.message());
            return out;
        }
        for (; it != end; it.increment(ec)) {
            if (ec) break;
            const auto& de = *it;
            auto name = de.path().filename().string();
            if (name.empty() || name[0] == '.') continue;
            if (de.is_symlink(ec) && !inside(de.path())) {
                notes.push_back("skipped symbolic link leaving the dataset: " + join_rel(rel, name));
                continue;
            }
            out.push_back({std::move(name), de.path(), de.is_directory(ec), de.is_regular_file(ec)});
        }
        std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });
        return out;
    }

    bool inside(const fs::path& p) const {
        std::error_code ec;
        const auto target = fs::weakly_canonical(p, ec);
        if (ec) return false;
        auto [r, t] = std::mismatch(root_.begin(), root_.end(), target.begin(), target.end());
        return r == root_.end();
    }

    bool is_dir(const fs::path& p) const {
        std::error_code ec;
        return fs::is_directory(p, ec) && inside(p);
    }

    bool is_file(const fs::path& p) const {
        std::error_code ec;
        return fs::is_regular_file(p, ec) && inside(p);
    }

private:
    fs::path root_;
};

JsonDocument load_json(const Walker& walker, const fs::path& root, const std::string& rel) {
    JsonDocument doc;
    doc.path = rel;
    const auto p = root / rel;
    if (!walker.is_file(p)) return doc;
    doc.present = true;
    try {
        doc.value = detail::try_parse(detail::read_file(p), doc.error);
    } catch (const Error& e) {
        doc.error = e.what();
    }
    return doc;
}

void check_name(const std::string& rel, std::string_view file, const std::string* subject, const std::string* session,
                const std::string* modality, std::vector<NamingIssue>& issues,
                std::optional<EntityName>* parsed = nullptr) {
    auto r = try_parse_entity_name(file);
    if (auto* err = std::get_if<NameError>(&r)) {
        issues.push_back({rel, "position " + std::to_string(err->position) + ": " + err->reason});
        return;
    }
    const auto& e = std::get<EntityName>(r);
    if (e.extension != "nii.gz" && e.extension != "json")
        issues.push_back({rel, "unexpected extension '." + e.extension + "'"});
    if (subject && !matches_directories(e, *subject, *session, *modality))
        issues.push_back({rel, "entities do not match enclosing sub-" + *subject + "/ses-" + *session + "/" +
                                   *modality + " directories"});
    if (parsed) *parsed = e;
}

ParticipantsInfo scan_participants(const Walker& walker, const fs::path& root) {
    ParticipantsInfo info;
    const auto json_doc = load_json(walker, root, "participants.json");
    if (json_doc.present) {
        info.format = ParticipantsFormat::Json;
        info.path = json_doc.path;
        if (!json_doc.parsed()) {
            info.error = json_doc.error;
        } else if (!json_doc.value->is_object() && !json_doc.value->is_array()) {
            info.error = "participants.json must be an object or an array";
        } else {
            info.valid = true;
            const auto& v = *json_doc.value;
            const json* rows = v.is_array() ? &v : detail::find(v, "Participants");
            if (rows && rows->is_array()) {
                for (const auto& row : *rows)
                    if (const auto* id = detail::find(row, "participant_id"); id && id->is_string())
                        info.subject_ids.push_back(strip_sub_prefix(id->get<std::string>()));
            } else if (v.is_object()) {
                for (const auto& [key, _] : v.items())
                    if (key.starts_with("sub-")) info.subject_ids.push_back(strip_sub_prefix(key));
            }
            return info;
        }
    }

    const auto tsv = root / "participants.tsv";
    if (!walker.is_file(tsv)) return info;
    if (info.format == ParticipantsFormat::None) {
        info.format = ParticipantsFormat::Tsv;
        info.path = "participants.tsv";
    }
    std::istringstream in(detail::read_file(tsv));
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cols;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, '\t')) cols.push_back(cell);
        if (!l.empty() && l.back() == '\t') cols.emplace_back();
        return cols;
    };
    if (!std::getline(in, line) || line.empty()) {
        if (info.error.empty()) info.error = "participants.tsv has no header row";
        return info;
    }
    if (line.back() == '\r') line.pop_back();
    const auto header = split(line);
    const auto id_it = std::find(header.begin(), header.end(), "participant_id");
    const std::size_t id_col = id_it == header.end() ? 0 : static_cast<std::size_t>(id_it - header.begin());
    std::vector<std::string> ids;
    for (int row = 2; std::getline(in, line); ++row) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cols = split(line);
        if (cols.size() != header.size()) {
            info.error = "participants.tsv row " + std::to_string(row) + " has " + std::to_string(cols.size()) +
                         " columns, header has " + std::to_string(header.size());
            return info;
        }
        ids.push_back(strip_sub_prefix(cols[id_col]));
    }
    info.format = ParticipantsFormat::Tsv;
    info.path = "participants.tsv";
    info.valid = true;
    info.error.clear();
    info.subject_ids = std::move(ids);
    return info;
}

void scan_annotations(const Walker& walker, const fs::path& dir, const std::string& rel,
                      std::vector<std::string> mirror, DatasetIndex& index) {
    for (const auto& e : walker.list(dir, rel, index.notes)) {
        const auto child = join_rel(rel, e.name);
        if (e.is_dir) {
            auto next = mirror;
            next.push_back(e.name);
            scan_annotations(walker, e.path, child, std::move(next), index);
            continue;
        }
        if (!e.is_file) continue;
        const bool is_seg = ends_with(e.name, kSegTail);
        const bool is_json = ends_with(e.name, ".json");
        if (!is_seg && !is_json) continue;

        // Expect derivatives/annotations/sub-X/ses-Y/<modality>/<file>.
        std::string subject, session;
        bool mirrored = mirror.size() == 3;
        if (mirrored) {
            auto s = try_parse_dir_component(mirror[0], DirKind::Subject);
            auto t = try_parse_dir_component(mirror[1], DirKind::Session);
            mirrored = std::holds_alternative<std::string>(s) && std::holds_alternative<std::string>(t);
            if (mirrored) {
                subject = std::get<std::string>(s);
                session = std::get<std::string>(t);
            }
        }
        if (mirrored)
            check_name(child, e.name, &subject, &session, &mirror[2], index.naming_issues);
        else {
            check_name(child, e.name, nullptr, nullptr, nullptr, index.naming_issues);
            index.naming_issues.push_back({child, "not inside a sub-<ID>/ses-<ID>/<modality>/ annotation mirror"});
        }

        if (is_seg) {
            SegmentationEntry seg;
            seg.path = child;
            seg.sidecar = load_json(walker, index.root, join_rel(rel, sidecar_name(e.name)));
            index.segmentations.push_back(std::move(seg));
        } else {
            index.annotation_sidecars.push_back(load_json(walker, index.root, child));
        }
    }
}

}  // namespace

DatasetStats DatasetIndex::stats() const {
    DatasetStats s;
    s.subjects = static_cast<int>(subjects.size());
    for (const auto& sub : subjects) {
        s.sessions += static_cast<int>(sub.sessions.size());
        for (const auto& ses : sub.sessions)
            for (const auto& mod : ses.modalities)
                for (const auto& img : mod.images) {
                    ++s.images;
                    if (img.sidecar.present) ++s.image_sidecars;
                }
    }
    s.segmentations = static_cast<int>(segmentations.size());
    s.annotation_sidecars = static_cast<int>(annotation_sidecars.size());
    return s;
}

DatasetIndex scan_dataset(const fs::path& root) {
    std::error_code ec;
    if (!fs::exists(root, ec)) throw DatasetError(DatasetError::Kind::RootNotFound, "dataset root not found: " + root.string());
    if (!fs::is_directory(root, ec))
        throw DatasetError(DatasetError::Kind::RootNotDirectory, "dataset root is not a directory: " + root.string());

    DatasetIndex index;
    index.root = root;
    const Walker walker(root);

    index.marker = load_json(walker, root, ".vids");
    if (index.marker.parsed()) {
        try {
            index.marker_value = index.marker.value->get<VidsMarker>();
        } catch (const std::exception& e) {
            index.marker_error = e.what();
        }
    }
    index.description = load_json(walker, root, "dataset_description.json");
    index.participants = scan_participants(walker, root);

    if (walker.is_file(root / "README.md")) {
        const auto text = detail::read_file(root / "README.md");
        index.has_readme = text.find_first_not_of(" \t\r\n") != std::string::npos;
    }
    index.has_changes = walker.is_file(root / "CHANGES.md");

    for (const auto& top : walker.list(root, "", index.notes)) {
        if (!top.is_dir || !top.name.starts_with("sub-")) continue;
        auto subject_id = try_parse_dir_component(top.name, DirKind::Subject);
        if (auto* err = std::get_if<NameError>(&subject_id)) {
            index.naming_issues.push_back({top.name, "invalid subject directory: " + err->reason});
            continue;
        }
        SubjectEntry subject{std::get<std::string>(subject_id), {}};
        for (const auto& ses : walker.list(top.path, top.name, index.notes)) {
            if (!ses.is_dir || !ses.name.starts_with("ses-")) continue;
            const auto ses_rel = join_rel(top.name, ses.name);
            auto session_id = try_parse_dir_component(ses.name, DirKind::Session);
            if (auto* err = std::get_if<NameError>(&session_id)) {
                index.naming_issues.push_back({ses_rel, "invalid session directory: " + err->reason});
                continue;
            }
            SessionEntry session{std::get<std::string>(session_id), {}};
            for (const auto& mod : walker.list(ses.path, ses_rel, index.notes)) {
                if (!mod.is_dir) continue;
                const auto mod_rel = join_rel(ses_rel, mod.name);
                if (!is_valid_id(mod.name))
                    index.naming_issues.push_back({mod_rel, "modality directory must be alphanumeric"});
                ModalityEntry modality{mod.name, {}};
                for (const auto& f : walker.list(mod.path, mod_rel, index.notes)) {
                    if (!f.is_file) continue;
                    const auto file_rel = join_rel(mod_rel, f.name);
                    std::optional<EntityName> parsed;
                    check_name(file_rel, f.name, &subject.id, &session.id, &mod.name, index.naming_issues, &parsed);
                    if (!ends_with(f.name, kNiftiExt) || ends_with(f.name, kSegTail)) continue;
                    ImageEntry img;
                    img.path = file_rel;
                    img.name = parsed;
                    img.sidecar = load_json(walker, root, join_rel(mod_rel, sidecar_name(f.name)));
                    index.image_paths.insert(file_rel);
                    modality.images.push_back(std::move(img));
                }
                session.modalities.push_back(std::move(modality));
            }
            subject.sessions.push_back(std::move(session));
        }
        index.subjects.push_back(std::move(subject));
    }

    const auto annotations = root / "derivatives" / "annotations";
    index.has_annotations_dir = walker.is_dir(annotations);
    if (index.has_annotations_dir)
        scan_annotations(walker, annotations, "derivatives/annotations", {}, index);

    index.has_quality_dir = walker.is_dir(root / "quality");
    index.quality_summary = load_json(walker, root, "quality/quality_summary.json");
    index.annotation_agreement = load_json(walker, root, "quality/annotation_agreement.json");
    index.has_ml_dir = walker.is_dir(root / "ml");
    index.splits = load_json(walker, root, "ml/splits.json");
    return index;
}

// ---------------------------------------------------------------------------

namespace {

using C = RuleCategory;

RuleResult make(RuleId id, RuleOutcome outcome, std::string message, std::vector<std::string> evidence = {}) {
    return {id, std::string(category_label(id.category())), outcome, std::move(message), std::move(evidence)};
}

RuleResult pass_or_fail(RuleId id, const std::vector<std::string>& offenders, std::string ok_msg,
                        const std::string& fail_what) {
    if (offenders.empty()) return make(id, RuleOutcome::Pass, std::move(ok_msg));
    return make(id, RuleOutcome::Fail, std::to_string(offenders.size()) + " " + fail_what, offenders);
}

std::string describe_doc_problem(const JsonDocument& doc) {
    if (!doc.present) return doc.path + ": missing";
    if (!doc.parsed()) return doc.path + ": not valid JSON (" + doc.error + ")";
    return doc.path;
}

RuleResult rule_json_present(RuleId id, const JsonDocument& doc, std::string_view ok_msg) {
    if (!doc.present) return make(id, RuleOutcome::Fail, doc.path + " is missing", {doc.path});
    if (!doc.parsed()) return make(id, RuleOutcome::Fail, doc.path + " is not valid JSON: " + doc.error, {doc.path});
    if (!doc.value->is_object()) return make(id, RuleOutcome::Fail, doc.path + " must be a JSON object", {doc.path});
    return make(id, RuleOutcome::Pass, std::string(ok_msg));
}

std::vector<RuleResult> structure_rules(const DatasetIndex& ix) {
    std::vector<RuleResult> out;

    if (!ix.marker.present)
        out.push_back(make(RuleId(C::Structure, 1), RuleOutcome::Fail, ".vids marker is missing", {".vids"}));
    else if (!ix.marker.parsed())
        out.push_back(make(RuleId(C::Structure, 1), RuleOutcome::Fail, ".vids is not valid JSON: " + ix.marker.error,
                           {".vids"}));
    else if (!ix.marker_value)
        out.push_back(make(RuleId(C::Structure, 1), RuleOutcome::Fail, ".vids is invalid: " + ix.marker_error, {".vids"}));
    else if (ix.marker_value->vids_version != kVidsVersion)
        out.push_back(make(RuleId(C::Structure, 1), RuleOutcome::Fail,
                           "unsupported VIDSVersion '" + ix.marker_value->vids_version + "'", {".vids"}));
    else
        out.push_back(make(RuleId(C::Structure, 1), RuleOutcome::Pass,
                           ".vids marker present (profile " + std::string(to_string(ix.marker_value->profile)) + ")"));

    {
        const RuleId id(C::Structure, 2);
        const auto& d = ix.description;
        if (!d.present || !d.parsed()) {
            out.push_back(make(id, RuleOutcome::Fail, describe_doc_problem(d), {d.path}));
        } else if (auto missing = missing_description_fields(*d.value); !missing.empty()) {
            std::string msg = "missing or empty required fields:";
            for (const auto& m : missing) msg += " " + m;
            out.push_back(make(id, RuleOutcome::Fail, msg, {d.path}));
        } else {
            out.push_back(make(id, RuleOutcome::Pass, "dataset_description.json has all 6 required fields"));
        }
    }

    {
        const RuleId id(C::Structure, 3);
        const auto& p = ix.participants;
        if (p.format == ParticipantsFormat::None)
            out.push_back(make(id, RuleOutcome::Fail, "neither participants.json nor participants.tsv exists",
                               {"participants.json"}));
        else if (!p.valid)
            out.push_back(make(id, RuleOutcome::Fail, p.path + " does not parse: " + p.error, {p.path}));
        else
            out.push_back(make(id, RuleOutcome::Pass, p.path + " present"));
    }

    out.push_back(ix.has_readme ? make(RuleId(C::Structure, 4), RuleOutcome::Pass, "README.md present")
                                : make(RuleId(C::Structure, 4), RuleOutcome::Fail, "README.md is missing or empty",
                                       {"README.md"}));

    if (ix.subjects.empty())
        out.push_back(make(RuleId(C::Structure, 5), RuleOutcome::Fail, "no valid sub-<ID> directories found",
                           {"sub-*"}));
    else
        out.push_back(make(RuleId(C::Structure, 5), RuleOutcome::Pass,
                           std::to_string(ix.subjects.size()) + " subject directories"));

    std::vector<std::string> no_session;
    for (const auto& s : ix.subjects)
        if (s.sessions.empty()) no_session.push_back("sub-" + s.id);
    out.push_back(pass_or_fail(RuleId(C::Structure, 6), no_session, "all subjects have sessions",
                               "subject(s) without a valid ses-<ID> directory"));
    return out;
}

std::vector<RuleResult> imaging_rules(const DatasetIndex& ix) {
    std::vector<RuleResult> out;
    std::vector<std::string> no_image, no_sidecar, bad_sidecar;
    int images = 0;
    for (const auto& s : ix.subjects) {
        if (s.sessions.empty()) continue;  // reported by S006
        int count = 0;
        for (const auto& ses : s.sessions)
            for (const auto& mod : ses.modalities)
                for (const auto& img : mod.images) {
                    ++count;
                    if (!img.sidecar.present)
                        no_sidecar.push_back(img.sidecar.path);
                    else if (!img.sidecar.parsed())
                        bad_sidecar.push_back(img.sidecar.path + ": " + img.sidecar.error);
                    else if (!img.sidecar.value->is_object())
                        bad_sidecar.push_back(img.sidecar.path + ": not a JSON object");
                }
        if (count == 0) no_image.push_back("sub-" + s.id);
        images += count;
    }
    out.push_back(pass_or_fail(RuleId(C::Imaging, 1), no_image, std::to_string(images) + " NIfTI images",
                               "subject(s) without a .nii.gz image"));
    out.push_back(pass_or_fail(RuleId(C::Imaging, 2), no_sidecar, "every image has a JSON sidecar",
                               "image(s) missing a same-stem .json sidecar"));
    out.push_back(pass_or_fail(RuleId(C::Imaging, 3), bad_sidecar, "all imaging sidecars are JSON objects",
                               "imaging sidecar(s) are not valid JSON objects"));

    std::vector<std::string> issues;
    for (const auto& n : ix.naming_issues) issues.push_back(n.path + ": " + n.reason);
    for (const auto& doc : ix.annotation_sidecars) {
        if (!doc.parsed()) continue;
        const auto* src = detail::find(*doc.value, "SourceImage");
        if (!src || !src->is_string()) continue;
        const auto dir = doc.path.substr(0, doc.path.rfind('/'));
        constexpr std::string_view prefix = "derivatives/annotations/";
        if (!dir.starts_with(prefix)) continue;
        const auto expected = dir.substr(prefix.size()) + "/" + src->get<std::string>();
        if (!ix.image_paths.contains(expected))
            issues.push_back(doc.path + ": SourceImage does not resolve to " + expected);
    }
    if (issues.empty())
        out.push_back(make(RuleId(C::Imaging, 4), RuleOutcome::Pass, "all names follow the VIDS convention"));
    else {
        auto message = std::to_string(issues.size()) + " naming issue(s)";
        out.push_back(make(RuleId(C::Imaging, 4), RuleOutcome::Warn, std::move(message), std::move(issues)));
    }
    return out;
}

std::vector<RuleResult> annotation_rules(const DatasetIndex& ix) {
    std::vector<RuleResult> out;
    constexpr std::string_view tree = "derivatives/annotations/";
    out.push_back(ix.has_annotations_dir
                      ? make(RuleId(C::Annotation, 1), RuleOutcome::Pass, "derivatives/annotations/ present")
                      : make(RuleId(C::Annotation, 1), RuleOutcome::Fail, "derivatives/annotations/ is missing",
                             {std::string(tree)}));
    out.push_back(ix.segmentations.empty()
                      ? make(RuleId(C::Annotation, 2), RuleOutcome::Fail,
                             "no *_seg.nii.gz files under derivatives/annotations/", {std::string(tree)})
                      : make(RuleId(C::Annotation, 2), RuleOutcome::Pass,
                             std::to_string(ix.segmentations.size()) + " segmentation files"));

    std::vector<std::string> no_sidecar;
    for (const auto& seg : ix.segmentations)
        if (!seg.sidecar.present) no_sidecar.push_back(seg.sidecar.path);
    out.push_back(pass_or_fail(RuleId(C::Annotation, 3), no_sidecar, "every segmentation has a JSON sidecar",
                               "segmentation(s) missing a same-stem .json sidecar"));

    std::vector<std::string> invalid, thin;
    for (const auto& doc : ix.annotation_sidecars) {
        if (!doc.parsed()) {
            invalid.push_back(doc.path + ": not valid JSON");
            thin.push_back(doc.path + ": unreadable, provenance cannot be checked");
            continue;
        }
        const auto& v = *doc.value;
        if (!v.is_object()) {
            invalid.push_back(doc.path + ": not a JSON object");
            thin.push_back(doc.path + ": not a JSON object");
            continue;
        }
        const auto* version = detail::find(v, "VIDSVersion");
        if (!version || !version->is_string() || version->get_ref<const std::string&>().empty())
            invalid.push_back(doc.path + ": missing VIDSVersion");

        const auto* prov = detail::find(v, "Provenance");
        if (!prov) {
            thin.push_back(doc.path + ": no Provenance object");
            continue;
        }
        try {
            if (!provenance_minimum_ok(prov->get<Provenance>()))
                thin.push_back(doc.path + ": needs Annotator ID or Name and AnnotationProcess Date or Tool");
        } catch (const std::exception& e) {
            thin.push_back(doc.path + ": " + e.what());
        }
    }
    out.push_back(pass_or_fail(RuleId(C::Annotation, 4), invalid, "annotation sidecars valid with VIDSVersion",
                               "annotation sidecar(s) invalid"));
    out.push_back(pass_or_fail(RuleId(C::Annotation, 5), thin, "provenance complete",
                               "annotation sidecar(s) below the provenance minimum"));
    return out;
}

RuleResult splits_rule(const DatasetIndex& ix) {
    const RuleId id(C::ML, 2);
    const auto& doc = ix.splits;
    if (!doc.present || !doc.parsed()) return make(id, RuleOutcome::Fail, describe_doc_problem(doc), {doc.path});
    SplitsSpec spec;
    try {
        spec = doc.value->get<SplitsSpec>();
    } catch (const std::exception& e) {
        return make(id, RuleOutcome::Fail, std::string("ml/splits.json is invalid: ") + e.what(), {doc.path});
    }
    for (auto* list : {&spec.train, &spec.val, &spec.test})
        for (auto& s : *list) s = strip_sub_prefix(s);

    std::set<std::string> known(ix.participants.subject_ids.begin(), ix.participants.subject_ids.end());
    for (const auto& s : ix.subjects) known.insert(s.id);
    const std::vector<std::string> population(known.begin(), known.end());

    std::vector<std::string> evidence;
    for (const auto& v : check_leakage(spec, population)) {
        if (v.kind == LeakageKind::UnassignedSubject) continue;
        evidence.push_back(std::string(to_string(v.kind)) + ": " + v.subject + " (" + v.detail + ")");
    }
    if (!evidence.empty())
        return make(id, RuleOutcome::Fail, "splits.json leaks or references unknown subjects", std::move(evidence));
    return make(id, RuleOutcome::Pass,
                "splits.json: " + std::to_string(spec.train.size()) + "/" + std::to_string(spec.val.size()) + "/" +
                    std::to_string(spec.test.size()) + " train/val/test");
}

}  // namespace

ValidationReport evaluate(const DatasetIndex& ix, Profile profile) {
    ValidationReport report;
    report.dataset = ix.root.generic_string();
    report.profile = profile;
    report.stats = ix.stats();
    report.notes = ix.notes;

    auto append = [&](std::vector<RuleResult> rs) {
        for (auto& r : rs) report.results.push_back(std::move(r));
    };
    append(structure_rules(ix));
    append(imaging_rules(ix));
    append(annotation_rules(ix));

    if (profile == Profile::Full) {
        report.results.push_back(ix.has_quality_dir
                                     ? make(RuleId(C::Quality, 1), RuleOutcome::Pass, "quality/ present")
                                     : make(RuleId(C::Quality, 1), RuleOutcome::Fail, "quality/ is missing", {"quality/"}));
        report.results.push_back(rule_json_present(RuleId(C::Quality, 2), ix.quality_summary, "quality summary present"));
        report.results.push_back(
            rule_json_present(RuleId(C::Quality, 3), ix.annotation_agreement, "annotation agreement present"));
        report.results.push_back(ix.has_ml_dir ? make(RuleId(C::ML, 1), RuleOutcome::Pass, "ml/ present")
                                               : make(RuleId(C::ML, 1), RuleOutcome::Fail, "ml/ is missing", {"ml/"}));
        report.results.push_back(splits_rule(ix));
    } else {
        for (const auto& e : rule_catalog())
            if (e.full_only) report.results.push_back(make(e.id, RuleOutcome::Skip, "Full profile only"));
    }

    report.results.push_back(ix.has_changes
                                 ? make(RuleId(C::Metadata, 1), RuleOutcome::Pass, "CHANGES.md present")
                                 : make(RuleId(C::Metadata, 1), RuleOutcome::Warn, "CHANGES.md is missing",
                                        {"CHANGES.md"}));
    return report;
}

ValidationReport validate(const fs::path& root, std::optional<Profile> profile_override) {
    const auto index = scan_dataset(root);
    Profile profile = Profile::Poc;
    bool defaulted = false;
    if (profile_override)
        profile = *profile_override;
    else if (index.marker_value)
        profile = index.marker_value->profile;
    else
        defaulted = true;

    auto report = evaluate(index, profile);
    if (defaulted) {
        const std::string note = "WARN: no readable .vids profile marker; validating under the POC profile";
        auto& s001 = report.results.front();
        s001.message += "; " + note;
        report.notes.push_back(note);
    }
    return report;
}

}  // namespace vids
