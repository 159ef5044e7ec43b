#include "vids/quality.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "json_util.hpp"
#include "vids/validator.hpp"

namespace fs = std::filesystem;

namespace vids {

namespace {

void require_same_grid(const LabelVolume& a, const LabelVolume& b) {
    if (a.dims != b.dims)
        throw QualityError(QualityError::Kind::DimsMismatch, "masks have different dimensions");
    if (a.voxels.size() != b.voxels.size())
        throw QualityError(QualityError::Kind::DimsMismatch, "masks have different voxel counts");
}

std::string two_digits(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", n);
    return buf;
}

}  // namespace

double dice(const LabelVolume& a, const LabelVolume& b) {
    require_same_grid(a, b);
    std::size_t na = 0, nb = 0, both = 0;
    for (std::size_t i = 0; i < a.voxels.size(); ++i) {
        const bool in_a = a.voxels[i] != 0;
        const bool in_b = b.voxels[i] != 0;
        na += in_a;
        nb += in_b;
        both += in_a && in_b;
    }
    if (na + nb == 0) return 1.0;
    return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

void ReaderMaskSet::check() const {
    if (masks.size() < 2)
        throw QualityError(QualityError::Kind::InvalidMaskSet, "unit " + unit_id + " needs at least two reader masks");
    for (const auto& m : masks) {
        require_same_grid(masks.front(), m);
        if (!m.is_binary())
            throw QualityError(QualityError::Kind::InvalidMaskSet, "unit " + unit_id + " has a non-binary mask");
    }
}

std::vector<PairDice> pairwise_dice(const ReaderMaskSet& set) {
    set.check();
    std::vector<PairDice> out;
    const int r = static_cast<int>(set.masks.size());
    out.reserve(static_cast<std::size_t>(r * (r - 1) / 2));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) out.push_back({i, j, dice(set.masks[i], set.masks[j])});
    return out;
}

LabelVolume consensus_mask(const ReaderMaskSet& set, Fraction threshold) {
    if (threshold.den <= 0 || threshold.num <= 0 || threshold.num > threshold.den)
        throw QualityError(QualityError::Kind::InvalidThreshold, "consensus threshold must lie in (0, 1]");
    set.check();
    const auto readers = static_cast<long>(set.masks.size());
    LabelVolume out(set.masks.front().dims, set.masks.front().spacing);
    for (std::size_t v = 0; v < out.voxels.size(); ++v) {
        long votes = 0;
        for (const auto& m : set.masks) votes += m.voxels[v] != 0;
        // votes / readers >= num / den, without division
        out.voxels[v] = votes * threshold.den >= static_cast<long>(threshold.num) * readers ? 1 : 0;
    }
    return out;
}

QualityTier quality_tier(double mean_dice) {
    if (mean_dice >= 0.90) return QualityTier::Excellent;
    if (mean_dice >= 0.85) return QualityTier::Good;
    if (mean_dice >= 0.75) return QualityTier::Acceptable;
    return QualityTier::Poor;
}

// ---------------------------------------------------------------------------

QualityArtifacts build_quality_artifacts(std::span<const SubjectAgreement> subjects) {
    QualityArtifacts out;
    auto& summary = out.summary;
    auto& ds = summary.dataset;
    for (auto t : {QualityTier::Excellent, QualityTier::Good, QualityTier::Acceptable, QualityTier::Poor,
                   QualityTier::Unrated})
        ds.tier_counts[std::string(to_string(t))] = 0;

    json records = json::array();
    json rollups = json::array();
    double all_sum = 0.0;
    double means_sum = 0.0;
    int rated = 0;

    for (const auto& subject : subjects) {
        SubjectQuality sq;
        sq.subject = subject.subject;
        sq.nodule_count = static_cast<int>(subject.units.size());
        double sum = 0.0, lo = 1.0, hi = 0.0;
        for (const auto& unit : subject.units) {
            for (const auto& p : unit.pairs) {
                auto reader = [&](int k) {
                    return k < static_cast<int>(unit.readers.size()) ? unit.readers[k] : std::to_string(k);
                };
                records.push_back({{"Subject", subject.subject},
                                   {"Unit", unit.unit_id},
                                   {"ReaderPair", {reader(p.i), reader(p.j)}},
                                   {"Dice", p.dice}});
                sum += p.dice;
                lo = std::min(lo, p.dice);
                hi = std::max(hi, p.dice);
                ++sq.pair_count;
                ds.min_dice = std::min(ds.min_dice.value_or(p.dice), p.dice);
                ds.max_dice = std::max(ds.max_dice.value_or(p.dice), p.dice);
            }
        }
        json rollup = {{"Subject", subject.subject}, {"Units", sq.nodule_count}, {"Pairs", sq.pair_count}};
        if (sq.pair_count > 0) {
            sq.mean_pairwise_dice = sum / sq.pair_count;
            sq.tier = quality_tier(*sq.mean_pairwise_dice);
            rollup["MeanDice"] = *sq.mean_pairwise_dice;
            rollup["MinDice"] = lo;
            rollup["MaxDice"] = hi;
            all_sum += sum;
            ds.pair_count += sq.pair_count;
            means_sum += *sq.mean_pairwise_dice;
            ++rated;
        } else {
            rollup["MeanDice"] = nullptr;
        }
        ++ds.tier_counts[std::string(to_string(sq.tier))];
        rollups.push_back(std::move(rollup));
        summary.subjects.push_back(std::move(sq));
    }
    if (ds.pair_count > 0) {
        ds.mean_dice = all_sum / ds.pair_count;
        ds.mean_of_subject_means = means_sum / rated;
    }

    out.agreement = {{"VIDSVersion", kVidsVersion},
                     {"Metric", "dice"},
                     {"Records", std::move(records)},
                     {"Subjects", std::move(rollups)}};
    return out;
}

void write_quality_artifacts(const fs::path& dataset_root, const QualityArtifacts& artifacts) {
    detail::write_json(dataset_root / "quality" / "quality_summary.json", artifacts.summary);
    detail::write_json(dataset_root / "quality" / "annotation_agreement.json", artifacts.agreement);
}

fs::path reader_mask_path(const fs::path& dataset_root, const EntityName& image, int unit, int reader) {
    return dataset_root / "derivatives" / "readers" / ("sub-" + image.subject) / ("ses-" + image.session) /
           image.modality / ("unit-" + two_digits(unit)) / ("reader-" + two_digits(reader) + ".nii.gz");
}

QualityArtifacts recompute_quality(const fs::path& dataset_root) {
    const auto index = scan_dataset(dataset_root);

    auto sorted_dirs = [](const fs::path& dir, std::string_view prefix) {
        std::vector<fs::path> out;
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) return out;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_directory() && e.path().filename().string().starts_with(prefix)) out.push_back(e.path());
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<SubjectAgreement> subjects;
    for (const auto& s : index.subjects) {
        SubjectAgreement sa{s.id, {}};
        const auto base = dataset_root / "derivatives" / "readers" / ("sub-" + s.id);
        for (const auto& ses : sorted_dirs(base, "ses-")) {
            for (const auto& mod : sorted_dirs(ses, "")) {
                for (const auto& unit : sorted_dirs(mod, "unit-")) {
                    std::vector<fs::path> files;
                    for (const auto& e : fs::directory_iterator(unit)) {
                        const auto name = e.path().filename().string();
                        if (e.is_regular_file() && name.starts_with("reader-") && name.ends_with(".nii.gz"))
                            files.push_back(e.path());
                    }
                    std::sort(files.begin(), files.end());
                    if (files.size() < 2) continue;
                    ReaderMaskSet set;
                    UnitAgreement ua;
                    ua.unit_id = ses.filename().string() + "/" + mod.filename().string() + "/" +
                                 unit.filename().string();
                    set.unit_id = ua.unit_id;
                    for (const auto& f : files) {
                        set.masks.push_back(read_volume(f));
                        ua.readers.push_back(f.filename().string().substr(0, f.filename().string().find('.')));
                    }
                    ua.pairs = pairwise_dice(set);
                    sa.units.push_back(std::move(ua));
                }
            }
        }
        subjects.push_back(std::move(sa));
    }
    auto artifacts = build_quality_artifacts(subjects);
    write_quality_artifacts(dataset_root, artifacts);
    return artifacts;
}

}  // namespace vids
