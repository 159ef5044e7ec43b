// Runs every acceptance check and prints one [PASS]/[FAIL] line per check.
// Exit status is non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "vids/exporter.hpp"
#include "vids/quality.hpp"
#include "vids/scaffold.hpp"
#include "vids/scorer.hpp"
#include "vids/splits.hpp"
#include "vids/validator.hpp"

using namespace vids;
using vids::testing::slurp;
using vids::testing::TempDir;
using vids::testing::tree_contents;

namespace fs = std::filesystem;

namespace {

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

std::set<std::string> with_outcome(const ValidationReport& r, RuleOutcome o) {
    std::set<std::string> out;
    for (const auto& res : r.results)
        if (res.outcome == o) out.insert(res.id.str());
    return out;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out.empty() ? "none" : out;
}

FixtureConfig full_config(int n) {
    FixtureConfig cfg;
    cfg.n_subjects = n;
    cfg.readers_per_subject = 4;
    cfg.profile = Profile::Full;
    return cfg;
}

// ---------------------------------------------------------------------------

void rule_catalog_completeness(Check& c) {
    const std::vector<std::string> golden = {"S001", "S002", "S003", "S004", "S005", "S006", "I001",
                                             "I002", "I003", "I004", "A001", "A002", "A003", "A004",
                                             "A005", "Q001", "Q002", "Q003", "M001", "M002", "D001"};
    TempDir tmp;
    generate_fixture(tmp / "full", full_config(10));
    FixtureConfig poc;
    poc.n_subjects = 3;
    scaffold_dataset(tmp / "poc", poc);
    fs::create_directories(tmp / "empty");
    mutate_fixture(tmp / "full", RuleId::parse("S005"), tmp / "broken");

    for (const char* name : {"full", "poc", "empty", "broken"}) {
        for (auto profile : {std::optional<Profile>{}, std::optional<Profile>{Profile::Poc},
                             std::optional<Profile>{Profile::Full}}) {
            const auto t0 = Clock::now();
            const auto r = validate(tmp / name, profile);
            const double dt = seconds_since(t0);
            std::vector<std::string> ids;
            for (const auto& res : r.results) ids.push_back(res.id.str());
            c.expect(ids == golden, std::string(name) + ": rule ids differ from the canonical 21-rule list");
            c.expect(dt < 1.0, std::string(name) + ": validate took " + fmt_seconds(dt));
        }
    }
}

void mutation_suite(Check& c) {
    TempDir tmp;
    generate_fixture(tmp / "full", full_config(10));
    const auto t0 = Clock::now();
    for (const auto& entry : rule_catalog()) {
        const auto id = entry.id.str();
        const auto dst = tmp / ("mut-" + id);
        mutate_fixture(tmp / "full", entry.id, dst);
        const auto r = validate(dst, Profile::Full);
        const auto fails = with_outcome(r, RuleOutcome::Fail);
        const auto warns = with_outcome(r, RuleOutcome::Warn);
        if (entry.advisory) {
            c.expect(warns == std::set<std::string>{id} && fails.empty() && r.status() == ReportStatus::Pass,
                     id + ": expected only " + id + " WARN and status PASS; got WARN={" + join(warns) + "} FAIL={" +
                         join(fails) + "}");
        } else {
            c.expect(fails == std::set<std::string>{id} && r.status() == ReportStatus::Fail,
                     id + ": expected exactly " + id + " FAIL; got FAIL={" + join(fails) + "}");
        }
    }
    const double dt = seconds_since(t0);
    c.expect(dt < 10.0, "21 scenarios took " + fmt_seconds(dt));
}

void full_fixture_pass(Check& c) {
    TempDir tmp;
    const auto t0 = Clock::now();
    generate_fixture(tmp / "ds", full_config(10));
    const auto r = validate(tmp / "ds", Profile::Full);
    const double dt = seconds_since(t0);
    c.expect(r.counts() == OutcomeCounts{21, 0, 0, 0}, "10-subject fixture is not 21/21 PASS");
    const auto text = render_report(r, ReportFormat::Human);
    const std::string tail = "VALIDATION PASSED (21/21 rules)\n";
    c.expect(text.size() >= tail.size() && text.compare(text.size() - tail.size(), tail.size(), tail) == 0,
             "transcript does not end with 'VALIDATION PASSED (21/21 rules)'");
    c.expect(dt < 5.0, "10-subject generate + validate took " + fmt_seconds(dt));

    generate_fixture(tmp / "ds100", full_config(100));
    c.expect(validate(tmp / "ds100").counts().pass == 21, "100-subject fixture is not 21/21 PASS");
}

void profile_semantics(Check& c) {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 5;
    scaffold_dataset(tmp / "poc", cfg);
    c.expect(!fs::exists(tmp / "poc/quality") && !fs::exists(tmp / "poc/ml"), "skeleton has quality/ or ml/");
    const auto r = validate(tmp / "poc", Profile::Poc);
    const auto skips = with_outcome(r, RuleOutcome::Skip);
    c.expect(skips == std::set<std::string>{"M001", "M002", "Q001", "Q002", "Q003"},
             "SKIP set is {" + join(skips) + "}");
    c.expect(r.status() == ReportStatus::Pass, "POC status is not PASS");

    generate_fixture(tmp / "full", full_config(4));
    const auto lowered = validate(tmp / "full", Profile::Poc);
    c.expect(lowered.status() == ReportStatus::Pass && with_outcome(lowered, RuleOutcome::Skip).size() == 5,
             "Full-compliant dataset is not POC-compliant with 5 SKIPs");
}

// Coordinate-wise counting, written independently of the library.
double oracle_dice(const LabelVolume& a, const LabelVolume& b) {
    long na = 0, nb = 0, both = 0;
    for (int z = 0; z < a.dims[2]; ++z)
        for (int y = 0; y < a.dims[1]; ++y)
            for (int x = 0; x < a.dims[0]; ++x) {
                const bool pa = a(x, y, z) != 0, pb = b(x, y, z) != 0;
                na += pa;
                nb += pb;
                both += pa && pb;
            }
    return na + nb == 0 ? 1.0 : 2.0 * both / static_cast<double>(na + nb);
}

void dice_oracle(Check& c) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto a = vids::testing::random_mask(rng, {8, 8, 8}, density(rng));
        const auto b = vids::testing::random_mask(rng, {8, 8, 8}, density(rng));
        const auto d = dice(a, b);
        c.expect(std::abs(d - oracle_dice(a, b)) <= 1e-12, "case " + std::to_string(i) + ": oracle mismatch");
        c.expect(d == dice(b, a), "case " + std::to_string(i) + ": not symmetric");
        c.expect(dice(a, a) == 1.0 && dice(b, b) == 1.0, "case " + std::to_string(i) + ": self-dice != 1");
    }
}

ReaderMaskSet single_voxel_votes(int readers, int marked) {
    ReaderMaskSet s{"u", {}};
    for (int r = 0; r < readers; ++r) {
        LabelVolume m({1, 1, 1});
        m.voxels[0] = r < marked ? 1 : 0;
        s.masks.push_back(m);
    }
    return s;
}

void consensus_boundary(Check& c) {
    c.expect(consensus_mask(single_voxel_votes(4, 2)).voxels[0] == 1, "4 readers, 2 marks: voxel excluded");
    c.expect(consensus_mask(single_voxel_votes(3, 1)).voxels[0] == 0, "3 readers, 1 mark: voxel included");
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int readers = 2 + static_cast<int>(rng() % 6);
        ReaderMaskSet s{"u", {}};
        for (int r = 0; r < readers; ++r) s.masks.push_back(vids::testing::random_mask(rng, {6, 6, 6}, 0.5));
        for (int k = 1; k < readers; ++k) {
            const auto lo = consensus_mask(s, {k, readers});
            const auto hi = consensus_mask(s, {k + 1, readers});
            bool nested = true;
            for (std::size_t v = 0; v < lo.voxels.size(); ++v) nested = nested && hi.voxels[v] <= lo.voxels[v];
            c.expect(nested, "trial " + std::to_string(trial) + ": raising the threshold added voxels");
        }
    }
}

void tier_mapping(Check& c) {
    const std::pair<double, QualityTier> cases[] = {
        {0.7765, QualityTier::Acceptable}, {0.90, QualityTier::Excellent}, {0.85, QualityTier::Good},
        {0.3639, QualityTier::Poor},       {0.75, QualityTier::Acceptable},
    };
    for (const auto& [v, tier] : cases) {
        std::ostringstream what;
        what << v << " -> " << to_string(quality_tier(v)) << ", expected " << to_string(tier);
        c.expect(quality_tier(v) == tier, what.str());
    }
}

void table_reproduction(Check& c) {
    const std::string dir = VIDS_SCORECARD_DIR;
    const std::pair<const char*, std::pair<int, int>> rows[] = {
        {"lidc-idri", {12, 27}}, {"brats", {17, 39}}, {"chexpert", {9, 20}}, {"msd", {13, 30}}, {"vids-native", {44, 100}}};
    std::vector<Scorecard> four;
    for (const auto& [name, expected] : rows) {
        const auto card = load_scorecard(dir + "/" + name + ".json");
        const auto r = score(card);
        c.expect(r.total.value == expected.first, std::string(name) + ": total " + std::to_string(r.total.points()));
        c.expect(r.percent == expected.second, std::string(name) + ": percent " + std::to_string(r.percent));
        if (std::string(name) != "vids-native") four.push_back(card);
    }
    const auto avg = category_averages(four);
    const std::pair<ScoreCategory, int> bars[] = {{ScoreCategory::Structure, 27}, {ScoreCategory::Imaging, 50},
                                                  {ScoreCategory::Annotation, 41}, {ScoreCategory::Provenance, 8},
                                                  {ScoreCategory::Quality, 25},   {ScoreCategory::MLReadiness, 38}};
    for (const auto& [cat, pct] : bars)
        c.expect(avg.at(cat) == pct, std::string(to_string(cat)) + ": " + std::to_string(avg.at(cat)) + "%");
}

void splits_check(Check& c) {
    std::vector<std::string> ids;
    for (int i = 0; i < 100; ++i) ids.push_back(fixture_subject_id(i));
    const auto spec = generate_splits(ids, {0.70, 0.15, 0.15}, 42);
    c.expect(spec.train.size() == 70 && spec.val.size() == 15 && spec.test.size() == 15, "sizes are not 70/15/15");
    std::vector<std::string> all;
    for (const auto* l : {&spec.train, &spec.val, &spec.test}) all.insert(all.end(), l->begin(), l->end());
    std::sort(all.begin(), all.end());
    c.expect(all == ids, "lists are not a partition of the subjects");
    c.expect(check_leakage(spec, ids).empty(), "leakage check reports violations");

    TempDir tmp;
    for (const char* d : {"a", "b"}) {
        fs::create_directories(tmp / d);
        write_splits(tmp / d, generate_splits(ids, {0.70, 0.15, 0.15}, 42));
    }
    c.expect(slurp(tmp / "a/ml/splits.json") == slurp(tmp / "b/ml/splits.json"), "repeated runs differ");
}

void volume_round_trip(Check& c) {
    TempDir tmp;
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> side(1, 32), byte(0, 255);
    for (int i = 0; i < 20; ++i) {
        const Dims dims = i == 0 ? Dims{32, 32, 32} : Dims{side(rng), side(rng), side(rng)};
        LabelVolume v(dims, {0.8, 0.8, 1.5});
        for (auto& x : v.voxels) x = static_cast<std::uint8_t>(byte(rng));
        write_volume(v, tmp / "v.nii.gz");
        const auto back = read_volume(tmp / "v.nii.gz");
        c.expect(back.dims == v.dims && back.voxels == v.voxels, "volume " + std::to_string(i) + " differs");
    }
    const auto ext = read_volume_file(std::string(VIDS_TEST_DATA_DIR) + "/nibabel_4x4x4_uint8.nii.gz");
    bool match = ext.volume.dims == Dims{4, 4, 4};
    for (int z = 0; match && z < 4; ++z)
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) match = match && ext.volume(x, y, z) == x + 4 * y + 16 * z;
    c.expect(match, "external uint8 fixture contents differ");
    c.expect(std::abs(ext.volume.spacing[2] - 1.25) < 1e-6, "external fixture spacing differs");
}

void export_traceability(Check& c) {
    TempDir tmp;
    generate_fixture(tmp / "ds", full_config(10));
    const auto before = tree_contents(tmp / "ds");
    const auto splits = json::parse(slurp(tmp / "ds/ml/splits.json")).get<SplitsSpec>();
    const auto m = export_training_layout(tmp / "ds", tmp / "out", "VIDS");

    auto count = [&](const char* d) {
        std::size_t n = 0;
        for (const auto& e : fs::directory_iterator(tmp / "out" / d)) n += e.is_regular_file();
        return n;
    };
    const auto tr = splits.train.size() + splits.val.size();
    c.expect(count("imagesTr") == tr, "imagesTr count differs from train+val");
    c.expect(count("labelsTr") == tr, "labelsTr count differs from train+val");
    c.expect(count("imagesTs") == splits.test.size(), "imagesTs count differs from test");

    const auto manifest = json::parse(slurp(tmp / "out/mapping.json")).get<ExportManifest>();
    std::set<std::string> cases, subjects;
    std::multiset<std::string> exported_prov, source_prov;
    for (const auto& e : manifest.entries) {
        cases.insert(e.case_id);
        subjects.insert(e.subject);
        c.expect(fs::exists(tmp / "out" / e.image_target), e.case_id + ": exported image missing");
        c.expect(slurp(tmp / "ds" / e.image_source) == slurp(tmp / "out" / e.image_target),
                 e.case_id + ": image bytes differ");
        for (const auto& p : e.provenance) exported_prov.insert(slurp(tmp / "out" / p));
    }
    c.expect(cases.size() == manifest.entries.size() && subjects.size() == manifest.entries.size() &&
                 subjects.size() == 10,
             "case <-> subject mapping is not a bijection over 10 subjects");
    for (const auto& e : fs::recursive_directory_iterator(tmp / "ds/derivatives/annotations"))
        if (e.is_regular_file() && e.path().extension() == ".json") source_prov.insert(slurp(e.path()));
    c.expect(!source_prov.empty() && exported_prov == source_prov,
             "provenance sidecars are not byte-identical copies of the source");
    c.expect(tree_contents(tmp / "ds") == before, "export modified the source tree");
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Check&)>> checks[] = {
        {"1  rule-catalog completeness", rule_catalog_completeness},
        {"2  mutation suite (single-fault isolation)", mutation_suite},
        {"3  full-fixture pass", full_fixture_pass},
        {"4  profile semantics", profile_semantics},
        {"5  dice oracle equivalence", dice_oracle},
        {"6  consensus threshold boundary", consensus_boundary},
        {"7  tier mapping", tier_mapping},
        {"8  scorecard totals and category averages", table_reproduction},
        {"9  subject splits", splits_check},
        {"10 volume round-trip", volume_round_trip},
        {"11 export traceability", export_traceability},
    };
    int failed = 0;
    for (const auto& [name, fn] : checks) {
        Check c;
        const auto t0 = Clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        std::cout << (c.ok() ? "[PASS] " : "[FAIL] ") << name << " (" << fmt_seconds(dt) << ")\n";
        for (const auto& f : c.failures()) std::cout << "         - " << f << "\n";
        failed += !c.ok();
    }
    std::cout << (std::size(checks) - failed) << "/" << std::size(checks) << " acceptance checks passed\n";
    return failed == 0 ? 0 : 1;
}
