#include "vids/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json_util.hpp"

namespace vids {

namespace {

// Quotas like 10 * 0.15 are not exact in binary; treat values this close as equal.
constexpr double kEps = 1e-9;

void check_ratios(const std::array<double, 3>& ratios) {
    double sum = 0.0;
    for (double r : ratios) {
        if (!(r > 0.0) || !std::isfinite(r)) throw SplitsError(SplitsError::Kind::BadRatios, "split ratios must be positive");
        sum += r;
    }
    if (std::fabs(sum - 1.0) > kEps) throw SplitsError(SplitsError::Kind::BadRatios, "split ratios must sum to 1");
}

}  // namespace

std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios) {
    check_ratios(ratios);
    std::array<std::size_t, 3> seats{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double quota = static_cast<double>(n) * ratios[i];
        const double whole = std::floor(quota + kEps);
        seats[i] = static_cast<std::size_t>(whole);
        remainder[i] = std::max(0.0, quota - whole);
        assigned += seats[i];
    }
    std::array<bool, 3> taken{};
    while (assigned < n) {
        std::size_t best = 3;
        for (std::size_t i = 0; i < 3; ++i) {
            if (taken[i]) continue;
            if (best == 3 || remainder[i] > remainder[best] + kEps) best = i;
        }
        ++seats[best];
        taken[best] = true;
        ++assigned;
    }
    return seats;
}

SplitsSpec generate_splits(std::span<const std::string> subject_ids, const std::array<double, 3>& ratios,
                           std::uint64_t seed) {
    check_ratios(ratios);
    if (subject_ids.empty()) throw SplitsError(SplitsError::Kind::EmptyPopulation, "no subjects to split");

    std::vector<std::string> ids(subject_ids.begin(), subject_ids.end());
    std::sort(ids.begin(), ids.end());
    if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end())
        throw SplitsError(SplitsError::Kind::DuplicateSubjects, "duplicate subject ID '" + *dup + "'");

    SplitMix64 rng(seed);
    for (std::size_t i = ids.size() - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(ids[i], ids[j]);
    }

    const auto seats = apportion(ids.size(), ratios);
    SplitsSpec spec;
    spec.seed = seed;
    spec.ratios = ratios;
    spec.method = std::string(kSplitMethod);
    spec.rationale =
        "Subject-level split: each subject belongs to exactly one of train/val/test, so no subject's data "
        "appears in more than one split. IDs are sorted, shuffled with Fisher-Yates driven by splitmix64(seed), "
        "and sliced by largest-remainder apportionment of the ratios.";
    auto it = ids.begin();
    spec.train.assign(it, it + static_cast<std::ptrdiff_t>(seats[0]));
    it += static_cast<std::ptrdiff_t>(seats[0]);
    spec.val.assign(it, it + static_cast<std::ptrdiff_t>(seats[1]));
    it += static_cast<std::ptrdiff_t>(seats[1]);
    spec.test.assign(it, ids.end());
    return spec;
}

std::string_view to_string(LeakageKind k) {
    switch (k) {
        case LeakageKind::DuplicateAssignment: return "duplicate-assignment";
        case LeakageKind::UnknownSubject: return "unknown-subject";
        case LeakageKind::UnassignedSubject: return "unassigned-subject";
    }
    return "";
}

std::vector<LeakageViolation> check_leakage(const SplitsSpec& spec, std::span<const std::string> population) {
    std::map<std::string, std::vector<std::string>> placements;
    const std::pair<const std::vector<std::string>*, const char*> lists[] = {
        {&spec.train, "train"}, {&spec.val, "val"}, {&spec.test, "test"}};
    for (const auto& [list, name] : lists)
        for (const auto& s : *list) placements[s].push_back(name);

    const std::set<std::string> known(population.begin(), population.end());
    std::vector<LeakageViolation> out;
    for (const auto& [subject, where] : placements) {
        if (where.size() > 1) {
            std::string detail = "assigned to";
            for (const auto& w : where) detail += " " + w;
            out.push_back({LeakageKind::DuplicateAssignment, subject, detail});
        }
    }
    for (const auto& [subject, where] : placements)
        if (!known.contains(subject)) out.push_back({LeakageKind::UnknownSubject, subject, "not in the subject population"});
    for (const auto& subject : known)
        if (!placements.contains(subject))
            out.push_back({LeakageKind::UnassignedSubject, subject, "not assigned to any split"});
    return out;
}

void write_splits(const std::filesystem::path& dataset_root, const SplitsSpec& spec) {
    detail::write_json(dataset_root / "ml" / "splits.json", spec);
}

}  // namespace vids
