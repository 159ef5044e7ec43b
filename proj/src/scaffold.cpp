#include "vids/scaffold.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "json_util.hpp"
#include "vids/naming.hpp"
#include "vids/quality.hpp"
#include "vids/splits.hpp"
#include "vids/validator.hpp"

namespace fs = std::filesystem;

namespace vids {

namespace {

constexpr std::string_view kTool = "vids-kit-synth";
constexpr std::string_view kToolVersion = "1.0";
constexpr std::string_view kSession = "baseline";
constexpr Spacing kSpacing{0.75, 0.75, 1.25};

struct Sphere {
    double cx, cy, cz, r;
};

// Deterministic date derived from the seed: 2026-01-01 plus (seed mod 365) days.
std::string fixture_date(std::uint64_t seed) {
    using namespace std::chrono;
    const sys_days day = sys_days{year{2026} / January / 1} + days{static_cast<int>(seed % 365)};
    const year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

LabelVolume sphere_mask(const Dims& dims, const Sphere& s) {
    LabelVolume v(dims, kSpacing);
    for (int z = 0; z < dims[2]; ++z)
        for (int y = 0; y < dims[1]; ++y)
            for (int x = 0; x < dims[0]; ++x) {
                const double dx = x - s.cx, dy = y - s.cy, dz = z - s.cz;
                v(x, y, z) = dx * dx + dy * dy + dz * dz <= s.r * s.r ? 1 : 0;
            }
    return v;
}

struct SubjectPlan {
    std::string id;
    EntityName image;
    Sphere lesion;
    std::uint64_t seed;
    bool annotated;
};

SubjectPlan plan_subject(const FixtureConfig& cfg, int index, SplitMix64& rng) {
    SubjectPlan p;
    p.id = fixture_subject_id(index);
    p.image = {p.id, std::string(kSession), cfg.modality, Suffix::Img, "nii.gz"};
    p.seed = rng.next();
    SplitMix64 local(p.seed);
    const auto& d = cfg.dims;
    const double min_dim = std::min({d[0], d[1], d[2]});
    p.lesion = {d[0] / 2.0 + (local.uniform() - 0.5) * d[0] / 8.0, d[1] / 2.0 + (local.uniform() - 0.5) * d[1] / 8.0,
                d[2] / 2.0 + (local.uniform() - 0.5) * d[2] / 8.0,
                std::max(1.5, min_dim * (0.18 + 0.10 * local.uniform()))};
    p.annotated = index < cfg.n_subjects - cfg.unannotated_subjects;
    return p;
}

// Noise background with a brighter lesion sphere.
LabelVolume synth_image(const FixtureConfig& cfg, const SubjectPlan& plan) {
    SplitMix64 rng(plan.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    auto img = sphere_mask(cfg.dims, plan.lesion);
    for (auto& v : img.voxels) {
        const auto noise = static_cast<std::uint8_t>(rng.next() % 40);
        v = v ? static_cast<std::uint8_t>(160 + noise) : noise;
    }
    return img;
}

fs::path image_dir(const fs::path& root, const SubjectPlan& p) {
    return root / ("sub-" + p.id) / ("ses-" + std::string(kSession)) / p.image.modality;
}

fs::path annotation_dir(const fs::path& root, const SubjectPlan& p) {
    return root / "derivatives" / "annotations" / ("sub-" + p.id) / ("ses-" + std::string(kSession)) /
           p.image.modality;
}

EntityName seg_name(const SubjectPlan& p) {
    auto e = p.image;
    e.suffix = Suffix::Seg;
    return e;
}

void require_empty_destination(const fs::path& root) {
    std::error_code ec;
    if (fs::exists(root, ec) && (!fs::is_directory(root, ec) || !fs::is_empty(root, ec)))
        throw DatasetError(DatasetError::Kind::DestinationNotEmpty, "destination is not empty: " + root.string());
}

std::vector<SubjectPlan> write_base(const fs::path& root, const FixtureConfig& cfg) {
    cfg.check();
    require_empty_destination(root);
    fs::create_directories(root);

    const auto date = fixture_date(cfg.seed);
    detail::write_json(root / ".vids", VidsMarker{std::string(kVidsVersion), Profile::Poc});

    DatasetDescription desc;
    desc.name = "VIDS synthetic fixture (seed " + std::to_string(cfg.seed) + ")";
    desc.dataset_type = "synthetic";
    desc.license = "CC-BY-4.0";
    desc.authors = {"vids-kit"};
    desc.modalities = {cfg.modality};
    desc.compliance =
        ComplianceInfo{"not applicable (synthetic data)", "not applicable (no patient data)", json::object()};
    detail::write_json(root / "dataset_description.json", desc);

    SplitMix64 rng(cfg.seed);
    std::vector<SubjectPlan> plans;
    json participants = json::array();
    for (int i = 0; i < cfg.n_subjects; ++i) {
        plans.push_back(plan_subject(cfg, i, rng));
        SplitMix64 demo(plans.back().seed ^ 0x5EED5EED5EED5EEDULL);
        participants.push_back({{"participant_id", "sub-" + plans.back().id},
                                {"sex", demo.next() % 2 ? "F" : "M"},
                                {"age", 40 + static_cast<int>(demo.next() % 40)}});
    }
    detail::write_json(root / "participants.json", json{{"Participants", std::move(participants)}});

    detail::write_file(root / "README.md",
                       "# VIDS synthetic fixture\n\n"
                       "Synthetic CT-like volumes with spherical lesions, generated by vids-kit for testing.\n"
                       "Subjects: " + std::to_string(cfg.n_subjects) + ", seed: " + std::to_string(cfg.seed) +
                           ".\nContains no patient data.\n");
    detail::write_file(root / "CHANGES.md", "# Changes\n\n## 1.0.0 (" + date + ")\n\n- Initial synthetic release.\n");

    for (const auto& p : plans) {
        const auto dir = image_dir(root, p);
        const auto name = render_entity_name(p.image);
        write_volume(synth_image(cfg, p), dir / name);
        detail::write_json(dir / sidecar_name(name), json{{"Modality", "CT"},
                                                          {"Manufacturer", "vids-kit synthetic"},
                                                          {"SliceThickness_mm", kSpacing[2]},
                                                          {"PixelSpacing_mm", {kSpacing[0], kSpacing[1]}},
                                                          {"AcquisitionDate", date}});
    }
    return plans;
}

json label_map() { return json{{"0", "background"}, {"1", "nodule"}}; }

}  // namespace

void FixtureConfig::check() const {
    if (n_subjects < 1) throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture needs at least one subject");
    if (unannotated_subjects < 0 || unannotated_subjects > n_subjects)
        throw DatasetError(DatasetError::Kind::InvalidConfig, "unannotated_subjects out of range");
    for (int d : dims)
        if (d < 4) throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture dims must each be at least 4");
    if (readers_per_subject < 0 || readers_per_subject > 99)
        throw DatasetError(DatasetError::Kind::InvalidConfig, "readers_per_subject out of range");
    if (!is_valid_id(modality) || modality != std::string(strip_extension(modality)))
        throw DatasetError(DatasetError::Kind::InvalidConfig, "modality must be alphanumeric");
    for (char c : modality)
        if (std::isupper(static_cast<unsigned char>(c)))
            throw DatasetError(DatasetError::Kind::InvalidConfig, "modality must be lowercase");
    if (!(reader_jitter >= 0.0)) throw DatasetError(DatasetError::Kind::InvalidConfig, "reader_jitter must be >= 0");
}

std::string fixture_subject_id(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", index + 1);
    return buf;
}

void scaffold_dataset(const fs::path& root, const FixtureConfig& config) {
    const auto plans = write_base(root, config);
    const auto date = fixture_date(config.seed);
    for (const auto& p : plans) {
        if (!p.annotated) continue;
        const auto dir = annotation_dir(root, p);
        const auto name = render_entity_name(seg_name(p));
        write_volume(sphere_mask(config.dims, p.lesion), dir / name);
        json sidecar = {{"VIDSVersion", kVidsVersion},
                        {"AnnotationType", "segmentation"},
                        {"SourceImage", render_entity_name(p.image)},
                        {"LabelMap", label_map()},
                        {"Provenance",
                         {{"Annotator", {{"ID", kTool}, {"Name", "vids-kit generator ground truth"}}},
                          {"AnnotationProcess",
                           {{"Tool", kTool}, {"Version", kToolVersion}, {"Date", date}, {"Method", "automated"}}}}}};
        detail::write_json(dir / sidecar_name(name), sidecar);
    }
}

FixtureStats generate_fixture(const fs::path& root, const FixtureConfig& config) {
    const auto plans = write_base(root, config);
    const auto date = fixture_date(config.seed);
    const int readers = config.readers_per_subject;

    FixtureStats stats;
    stats.subjects = config.n_subjects;
    stats.images = config.n_subjects;
    std::vector<SubjectAgreement> agreement;
    for (const auto& p : plans) {
        SubjectAgreement sa{p.id, {}};
        if (!p.annotated || readers < 2) {
            agreement.push_back(std::move(sa));
            continue;
        }
        SplitMix64 rng(p.seed ^ 0x0123456789ABCDEFULL);
        ReaderMaskSet set;
        set.unit_id = "ses-" + std::string(kSession) + "/" + p.image.modality + "/unit-01";
        UnitAgreement unit;
        unit.unit_id = set.unit_id;
        std::vector<std::string> reader_ids;
        for (int r = 1; r <= readers; ++r) {
            const double j = config.reader_jitter;
            Sphere s = p.lesion;
            s.cx += (rng.uniform() - 0.5) * 2.0 * j;
            s.cy += (rng.uniform() - 0.5) * 2.0 * j;
            s.cz += (rng.uniform() - 0.5) * 2.0 * j;
            s.r = std::max(1.0, s.r * (1.0 + (rng.uniform() - 0.5) * 0.3 * j));
            set.masks.push_back(sphere_mask(config.dims, s));

            char id[32];
            std::snprintf(id, sizeof id, "reader_%02d", r);
            reader_ids.emplace_back(id);
            const auto path = reader_mask_path(root, p.image, 1, r);
            write_volume(set.masks.back(), path);
            unit.readers.push_back(path.filename().string().substr(0, path.filename().string().find('.')));
            detail::write_json(fs::path(path).replace_extension("").replace_extension(".json"),
                               json{{"VIDSVersion", kVidsVersion},
                                    {"AnnotationType", "segmentation"},
                                    {"SourceImage", render_entity_name(p.image)},
                                    {"LabelMap", label_map()},
                                    {"Provenance",
                                     {{"Annotator", {{"ID", id}, {"Credentials", "synthetic reader"}}},
                                      {"AnnotationProcess",
                                       {{"Tool", kTool}, {"Version", kToolVersion}, {"Date", date},
                                        {"Method", "automated"}}}}}});
            ++stats.reader_masks;
        }
        unit.pairs = pairwise_dice(set);
        double mean = 0.0;
        for (const auto& pr : unit.pairs) mean += pr.dice;
        mean /= static_cast<double>(unit.pairs.size());

        const auto consensus = consensus_mask(set);
        const auto dir = annotation_dir(root, p);
        const auto name = render_entity_name(seg_name(p));
        write_volume(consensus, dir / name);

        std::string panel = "Synthetic reader panel (";
        for (std::size_t k = 0; k < reader_ids.size(); ++k) panel += (k ? ", " : "") + reader_ids[k];
        panel += ")";
        json sidecar = {
            {"VIDSVersion", kVidsVersion},
            {"AnnotationType", "segmentation"},
            {"SourceImage", render_entity_name(p.image)},
            {"LabelMap", label_map()},
            {"Provenance",
             {{"Annotator", {{"ID", "consensus"}, {"Name", panel}, {"Credentials", "synthetic readers"}}},
              {"AnnotationProcess",
               {{"Tool", kTool}, {"Version", kToolVersion}, {"Date", date}, {"Method", "automated"}}},
              {"QualityControl",
               {{"ReviewedBy", "vids-kit-qc"}, {"ReviewDate", date}, {"ReviewOutcome", "approved"},
                {"Confidence", mean}}}}},
            {"Consensus", {{"Method", "majority-vote"}, {"Threshold", 0.5}, {"Readers", reader_ids}}},
            {"Annotations",
             {{{"Label", 1},
               {"Name", "nodule"},
               {"Characteristics", {{"VolumeVoxels", consensus.count_nonzero()}, {"ReaderCount", readers}}}}}}};
        detail::write_json(dir / sidecar_name(name), sidecar);
        ++stats.segmentations;
        ++stats.annotated_subjects;

        sa.units.push_back(std::move(unit));
        agreement.push_back(std::move(sa));
    }

    const auto artifacts = build_quality_artifacts(agreement);
    stats.pairs = artifacts.summary.dataset.pair_count;
    stats.mean_dice = artifacts.summary.dataset.mean_dice;
    stats.min_dice = artifacts.summary.dataset.min_dice;
    stats.max_dice = artifacts.summary.dataset.max_dice;

    if (config.profile == Profile::Full) {
        write_quality_artifacts(root, artifacts);
        std::vector<std::string> ids;
        for (const auto& p : plans) ids.push_back(p.id);
        write_splits(root, generate_splits(ids, {0.70, 0.15, 0.15}, config.seed));
        detail::write_json(root / ".vids", VidsMarker{std::string(kVidsVersion), Profile::Full});
    }
    return stats;
}

// ---------------------------------------------------------------------------

namespace {

json load(const fs::path& p) { return json::parse(detail::read_file(p)); }

const SubjectEntry& first_subject(const DatasetIndex& ix) {
    if (ix.subjects.empty()) throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture has no subjects");
    return ix.subjects.front();
}

const ImageEntry& first_image(const DatasetIndex& ix) {
    for (const auto& s : ix.subjects)
        for (const auto& ses : s.sessions)
            for (const auto& m : ses.modalities)
                if (!m.images.empty()) return m.images.front();
    throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture has no images");
}

const JsonDocument& first_annotation_sidecar(const DatasetIndex& ix) {
    if (ix.annotation_sidecars.empty())
        throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture has no annotation sidecars");
    return ix.annotation_sidecars.front();
}

std::string rename_image_pair(const fs::path& root, const ImageEntry& img, std::string_view new_stem) {
    const fs::path p = root / img.path;
    const auto dir = p.parent_path();
    fs::rename(p, dir / (std::string(new_stem) + ".nii.gz"));
    if (img.sidecar.present) fs::rename(root / img.sidecar.path, dir / (std::string(new_stem) + ".json"));
    return img.path;
}

}  // namespace

std::string mutate_fixture(const fs::path& src, const RuleId& rule, const fs::path& dst) {
    require_empty_destination(dst);
    fs::create_directories(dst);
    fs::copy(src, dst, fs::copy_options::recursive | fs::copy_options::copy_symlinks);
    const auto ix = scan_dataset(dst);

    const std::string id = rule.str();
    if (id == "S001") {
        fs::remove(dst / ".vids");
        return "deleted .vids";
    }
    if (id == "S002") {
        auto doc = load(dst / "dataset_description.json");
        doc["License"] = "";
        detail::write_json(dst / "dataset_description.json", doc);
        return "blanked License in dataset_description.json";
    }
    if (id == "S003") {
        fs::remove(dst / "participants.json");
        fs::remove(dst / "participants.tsv");
        return "deleted participants.json";
    }
    if (id == "S004") {
        fs::remove(dst / "README.md");
        return "deleted README.md";
    }
    if (id == "S005") {
        for (const auto& s : ix.subjects) fs::rename(dst / ("sub-" + s.id), dst / ("sub_" + s.id));
        return "renamed every sub-<ID> directory to sub_<ID>";
    }
    if (id == "S006") {
        const auto& s = first_subject(ix);
        const auto dir = dst / ("sub-" + s.id);
        const auto& ses = s.sessions.front();
        fs::rename(dir / ("ses-" + ses.id), dir / ses.id);
        return "renamed sub-" + s.id + "/ses-" + ses.id + " to sub-" + s.id + "/" + ses.id;
    }
    if (id == "I001") {
        const auto& s = first_subject(ix);
        for (const auto& ses : s.sessions)
            for (const auto& m : ses.modalities)
                for (const auto& img : m.images) {
                    fs::remove(dst / img.path);
                    fs::remove(dst / img.sidecar.path);
                }
        return "deleted every image (and sidecar) of sub-" + s.id;
    }
    if (id == "I002") {
        const auto& img = first_image(ix);
        fs::remove(dst / img.sidecar.path);
        return "deleted imaging sidecar " + img.sidecar.path;
    }
    if (id == "I003") {
        const auto& img = first_image(ix);
        detail::write_file(dst / img.sidecar.path, "{ \"Modality\": \"CT\", \n");
        return "truncated imaging sidecar " + img.sidecar.path + " to invalid JSON";
    }
    if (id == "I004") {
        const auto& img = first_image(ix);
        auto stem = std::string(strip_extension(fs::path(img.path).filename().string()));
        stem = stem.substr(0, stem.rfind('_')) + "_scan";
        rename_image_pair(dst, img, stem);
        return "renamed " + img.path + " (and sidecar) to the non-conforming stem " + stem;
    }
    if (id == "A001") {
        fs::remove_all(dst / "derivatives" / "annotations");
        return "deleted derivatives/annotations/";
    }
    if (id == "A002") {
        for (const auto& seg : ix.segmentations) fs::remove(dst / seg.path);
        return "deleted every *_seg.nii.gz under derivatives/annotations/";
    }
    if (id == "A003") {
        if (ix.segmentations.empty()) throw DatasetError(DatasetError::Kind::InvalidConfig, "fixture has no segmentations");
        const auto& seg = ix.segmentations.front();
        fs::remove(dst / seg.sidecar.path);
        return "deleted annotation sidecar " + seg.sidecar.path;
    }
    if (id == "A004") {
        const auto& doc = first_annotation_sidecar(ix);
        auto j = load(dst / doc.path);
        j.erase("VIDSVersion");
        detail::write_json(dst / doc.path, j);
        return "removed VIDSVersion from " + doc.path;
    }
    if (id == "A005") {
        const auto& doc = first_annotation_sidecar(ix);
        auto j = load(dst / doc.path);
        auto& annotator = j["Provenance"]["Annotator"];
        annotator.erase("ID");
        annotator.erase("Name");
        detail::write_json(dst / doc.path, j);
        return "removed Annotator ID and Name from " + doc.path;
    }
    if (id == "Q001") {
        fs::remove_all(dst / "quality");
        return "deleted quality/";
    }
    if (id == "Q002") {
        fs::remove(dst / "quality" / "quality_summary.json");
        return "deleted quality/quality_summary.json";
    }
    if (id == "Q003") {
        fs::remove(dst / "quality" / "annotation_agreement.json");
        return "deleted quality/annotation_agreement.json";
    }
    if (id == "M001") {
        fs::remove_all(dst / "ml");
        return "deleted ml/";
    }
    if (id == "M002") {
        auto j = load(dst / "ml" / "splits.json");
        auto& train = j.at("Train");
        if (train.empty()) throw DatasetError(DatasetError::Kind::InvalidConfig, "splits.json has no train subjects");
        const auto subject = train.front().get<std::string>();
        j.at("Test").push_back(subject);
        detail::write_json(dst / "ml" / "splits.json", j);
        return "added train subject " + subject + " to the test split as well";
    }
    if (id == "D001") {
        fs::remove(dst / "CHANGES.md");
        return "deleted CHANGES.md";
    }
    throw DatasetError(DatasetError::Kind::UnknownRule, "no mutation defined for rule " + id);
}

}  // namespace vids
