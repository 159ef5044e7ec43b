#include "vids/exporter.hpp"

#include <cstdio>
#include <map>

#include "json_util.hpp"
#include "vids/naming.hpp"
#include "vids/validator.hpp"

namespace fs = std::filesystem;

namespace vids {

namespace {

constexpr std::string_view kProvenanceDir = "vids-provenance";

struct Case {
    std::string subject;
    std::string session;
    std::string modality;
    const ImageEntry* image = nullptr;
    const SegmentationEntry* seg = nullptr;
    std::vector<const JsonDocument*> sidecars;
};

std::string number(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d", n);
    return buf;
}

void require_empty(const fs::path& out) {
    std::error_code ec;
    if (fs::exists(out, ec) && (!fs::is_directory(out, ec) || !fs::is_empty(out, ec)))
        throw DatasetError(DatasetError::Kind::DestinationNotEmpty, "destination is not empty: " + out.string());
}

void require_valid(const DatasetIndex& index, Profile profile) {
    const auto report = evaluate(index, profile);
    if (report.status() == ReportStatus::Pass) return;
    std::string failed;
    for (const auto& r : report.results)
        if (r.outcome == RuleOutcome::Fail) failed += (failed.empty() ? "" : ", ") + r.id.str();
    throw DatasetError(DatasetError::Kind::ValidationRequired, "dataset does not pass " +
                                                                   std::string(to_string(profile)) +
                                                                   " validation (failed: " + failed + ")");
}

// One case per (subject, session): the first modality that has an image, and its first image.
std::vector<Case> collect_cases(const DatasetIndex& index) {
    std::map<std::string, const SegmentationEntry*> segs;
    for (const auto& s : index.segmentations) segs[s.path] = &s;

    std::vector<Case> cases;
    for (const auto& subject : index.subjects) {
        for (const auto& session : subject.sessions) {
            for (const auto& mod : session.modalities) {
                if (mod.images.empty()) continue;
                Case c{subject.id, session.id, mod.modality, &mod.images.front(), nullptr, {}};
                const std::string mirror = "derivatives/annotations/sub-" + subject.id + "/ses-" + session.id + "/" +
                                           mod.modality + "/";
                if (c.image->name) {
                    auto seg_name = *c.image->name;
                    seg_name.suffix = Suffix::Seg;
                    if (auto it = segs.find(mirror + render_entity_name(seg_name)); it != segs.end())
                        c.seg = it->second;
                }
                for (const auto& doc : index.annotation_sidecars)
                    if (doc.path.starts_with(mirror) && doc.path.find('/', mirror.size()) == std::string::npos)
                        c.sidecars.push_back(&doc);
                cases.push_back(std::move(c));
                break;
            }
        }
    }
    return cases;
}

void place_copy(const fs::path& from, const fs::path& to) {
    fs::create_directories(to.parent_path());
    fs::copy_file(from, to, fs::copy_options::overwrite_existing);
}

void copy_provenance(const fs::path& root, const fs::path& out, const Case& c, ExportEntry& e) {
    for (const auto* doc : c.sidecars) {
        const auto rel = std::string(kProvenanceDir) + "/" + e.case_id + "/" + fs::path(doc->path).filename().string();
        place_copy(root / doc->path, out / rel);
        e.provenance.push_back(rel);
    }
}

std::string dataset_name(const DatasetIndex& index) {
    if (index.description.parsed()) {
        const auto& d = *index.description.value;
        if (d.is_object() && d.contains("Name") && d["Name"].is_string()) return d["Name"].get<std::string>();
    }
    return index.root.filename().string();
}

}  // namespace

std::string_view to_string(ExportLayout l) { return l == ExportLayout::Flat ? "flat" : "training"; }

void to_json(json& j, const ExportManifest& m) {
    json cases = json::array();
    for (const auto& e : m.entries) {
        json c = {{"CaseId", e.case_id},
                  {"Subject", e.subject},
                  {"Session", e.session},
                  {"Modality", e.modality},
                  {"Image", e.image_source},
                  {"ExportedImage", e.image_target},
                  {"Label", e.label_source ? json(*e.label_source) : json(nullptr)},
                  {"ExportedLabel", e.label_target ? json(*e.label_target) : json(nullptr)},
                  {"Provenance", e.provenance}};
        if (e.split) c["Split"] = *e.split;
        cases.push_back(std::move(c));
    }
    j = {{"VIDSVersion", kVidsVersion}, {"Layout", to_string(m.layout)}, {"Dataset", m.dataset}};
    if (!m.task.empty()) j["Task"] = m.task;
    j["Cases"] = std::move(cases);
}

void from_json(const json& j, ExportManifest& m) {
    m = {};
    const auto layout = detail::req_string(j, "Layout", "mapping");
    if (layout == "flat") m.layout = ExportLayout::Flat;
    else if (layout == "training") m.layout = ExportLayout::Training;
    else throw SchemaError("mapping: unknown Layout '" + layout + "'");
    m.dataset = detail::opt_string(j, "Dataset", "mapping").value_or("");
    m.task = detail::opt_string(j, "Task", "mapping").value_or("");
    for (const auto& c : detail::required(j, "Cases", "mapping")) {
        ExportEntry e;
        e.case_id = detail::req_string(c, "CaseId", "mapping case");
        e.subject = detail::req_string(c, "Subject", "mapping case");
        e.session = detail::req_string(c, "Session", "mapping case");
        e.modality = detail::req_string(c, "Modality", "mapping case");
        e.split = detail::opt_string(c, "Split", "mapping case");
        e.image_source = detail::req_string(c, "Image", "mapping case");
        e.image_target = detail::req_string(c, "ExportedImage", "mapping case");
        e.label_source = detail::opt_string(c, "Label", "mapping case");
        e.label_target = detail::opt_string(c, "ExportedLabel", "mapping case");
        e.provenance = detail::string_list(c, "Provenance", "mapping case", true);
        m.entries.push_back(std::move(e));
    }
}

ExportManifest export_flat(const fs::path& dataset_root, const fs::path& out_root) {
    const auto index = scan_dataset(dataset_root);
    require_valid(index, Profile::Poc);
    require_empty(out_root);

    ExportManifest m;
    m.layout = ExportLayout::Flat;
    m.dataset = dataset_name(index);
    int n = 0;
    for (const auto& c : collect_cases(index)) {
        ExportEntry e;
        e.case_id = "case_" + number(++n);
        e.subject = c.subject;
        e.session = c.session;
        e.modality = c.modality;
        e.image_source = c.image->path;
        e.image_target = "images/" + e.case_id + ".nii.gz";
        place_copy(dataset_root / e.image_source, out_root / e.image_target);
        if (c.seg) {
            e.label_source = c.seg->path;
            e.label_target = "labels/" + e.case_id + ".nii.gz";
            place_copy(dataset_root / *e.label_source, out_root / *e.label_target);
        }
        copy_provenance(dataset_root, out_root, c, e);
        m.entries.push_back(std::move(e));
    }
    detail::write_json(out_root / "mapping.json", m);
    return m;
}

ExportManifest export_training_layout(const fs::path& dataset_root, const fs::path& out_root, const std::string& task) {
    if (task.empty() ||
        task.find_first_not_of("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-") != std::string::npos)
        throw DatasetError(DatasetError::Kind::InvalidConfig, "task name must match [A-Za-z0-9_-]+");

    const auto index = scan_dataset(dataset_root);
    if (!index.splits.present)
        throw DatasetError(DatasetError::Kind::MissingSplits, "ml/splits.json is required for the training layout");
    require_valid(index, Profile::Full);
    require_empty(out_root);

    const auto splits = index.splits.value->get<SplitsSpec>();
    std::map<std::string, std::string> split_of;
    for (const auto& s : splits.train) split_of[s] = "train";
    for (const auto& s : splits.val) split_of[s] = "val";
    for (const auto& s : splits.test) split_of[s] = "test";
    auto bare = [](std::string s) { return s.starts_with("sub-") ? s.substr(4) : s; };
    std::map<std::string, std::string> split_by_id;
    for (const auto& [s, where] : split_of) split_by_id[bare(s)] = where;

    ExportManifest m;
    m.layout = ExportLayout::Training;
    m.dataset = dataset_name(index);
    m.task = task;
    json training = json::array();
    json test = json::array();
    json labels = json::object();
    std::string modality;
    int n = 0;
    for (const auto& c : collect_cases(index)) {
        ExportEntry e;
        const auto num = number(++n);
        e.case_id = task + "_" + num;
        e.subject = c.subject;
        e.session = c.session;
        e.modality = c.modality;
        e.split = split_by_id.at(c.subject);
        e.image_source = c.image->path;
        if (modality.empty()) modality = c.modality;
        const bool is_test = *e.split == "test";
        e.image_target = std::string(is_test ? "imagesTs/" : "imagesTr/") + e.case_id + "_0000.nii.gz";
        place_copy(dataset_root / e.image_source, out_root / e.image_target);
        if (c.seg) e.label_source = c.seg->path;
        if (c.seg && !is_test) {
            e.label_target = "labelsTr/" + e.case_id + ".nii.gz";
            place_copy(dataset_root / *e.label_source, out_root / *e.label_target);
        }
        if (c.seg && labels.empty() && c.seg->sidecar.parsed()) {
            const auto& sc = *c.seg->sidecar.value;
            if (sc.is_object() && sc.contains("LabelMap")) labels = sc["LabelMap"];
        }
        if (is_test)
            test.push_back("./" + e.image_target);
        else if (e.label_target)
            training.push_back({{"image", "./" + e.image_target}, {"label", "./" + *e.label_target}});
        else
            training.push_back({{"image", "./" + e.image_target}, {"label", nullptr}});
        copy_provenance(dataset_root, out_root, c, e);
        m.entries.push_back(std::move(e));
    }
    fs::create_directories(out_root / "imagesTr");
    fs::create_directories(out_root / "labelsTr");
    fs::create_directories(out_root / "imagesTs");

    json descriptor = {{"name", task},
                       {"description", "Exported from VIDS dataset '" + m.dataset + "'"},
                       {"reference", m.dataset},
                       {"tensorImageSize", "3D"},
                       {"modality", {{"0", modality}}},
                       {"labels", labels},
                       {"numTraining", training.size()},
                       {"numTest", test.size()},
                       {"file_ending", ".nii.gz"},
                       {"training", std::move(training)},
                       {"test", std::move(test)}};
    detail::write_json(out_root / "dataset.json", descriptor);
    detail::write_json(out_root / "mapping.json", m);
    return m;
}

}  // namespace vids
