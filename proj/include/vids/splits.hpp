#pragma once

// Deterministic subject-level train/val/test splits.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vids/core.hpp"

namespace vids {

/// splitmix64: state += golden gamma, then the two xor-shift-multiply rounds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

class SplitsError : public Error {
public:
    enum class Kind { BadRatios, DuplicateSubjects, EmptyPopulation };
    SplitsError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline constexpr std::string_view kSplitMethod = "fisher-yates/splitmix64/largest-remainder";

/// Largest-remainder seat counts for n items; remainder ties go train, val, test.
std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios);

SplitsSpec generate_splits(std::span<const std::string> subject_ids, const std::array<double, 3>& ratios,
                           std::uint64_t seed);

enum class LeakageKind { DuplicateAssignment, UnknownSubject, UnassignedSubject };

std::string_view to_string(LeakageKind k);

struct LeakageViolation {
    LeakageKind kind;
    std::string subject;
    std::string detail;
};

/// Empty iff the lists are pairwise disjoint, reference only `population`,
/// and cover every population subject.
std::vector<LeakageViolation> check_leakage(const SplitsSpec& spec, std::span<const std::string> population);

void write_splits(const std::filesystem::path& dataset_root, const SplitsSpec& spec);

}  // namespace vids
