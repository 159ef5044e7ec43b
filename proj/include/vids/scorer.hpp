#pragma once

// 22-dimension compliance scoring from a hand-judged scorecard.
// Arithmetic is done in integer half-points so percentages round exactly.

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "vids/core.hpp"

namespace vids {

class ScoreError : public Error {
public:
    enum class Kind { WrongDimensionCount, UnknownCategory, UnknownDimension, DuplicateDimension, EmptyInput };
    ScoreError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline constexpr int kTotalDimensions = 22;

struct DimensionInfo {
    std::string_view slug;
    ScoreCategory category;
    std::string_view description;
};

/// The 22 dimensions in canonical order.
std::span<const DimensionInfo> dimension_catalog();

/// Number of dimensions in a category (6, 3, 4, 5, 2, 2).
int category_size(ScoreCategory c);

/// Fixed-point score: half-points, so 0.5 is 1 and 1.0 is 2.
struct HalfPoints {
    int value = 0;

    double points() const { return value / 2.0; }
    friend auto operator<=>(const HalfPoints&, const HalfPoints&) = default;
};

struct ScoreResult {
    std::string dataset;
    std::map<ScoreCategory, HalfPoints> per_category;
    HalfPoints total;
    int percent = 0;
};

/// Throws ScoreError unless the card has 22 distinct known dimensions with
/// the right per-category cardinality.
void check_scorecard(const Scorecard& card);

/// satisfied = 1, partial = 0.5, absent = 0; percent = round-half-up(100 * total / 22).
ScoreResult score(const Scorecard& card);

/// Per category: mean sum over cards / category maximum * 100, rounded half-up.
std::map<ScoreCategory, int> category_averages(std::span<const Scorecard> cards);

/// round-half-up(num / den) for non-negative num and positive den.
long round_half_up(long num, long den);

/// Parses a scorecard file; unknown categories surface as ScoreError(UnknownCategory).
Scorecard load_scorecard(const std::filesystem::path& path);

/// Card with every dimension at `status`.
Scorecard uniform_scorecard(DimensionStatus status, std::string dataset = "");

json score_to_json(const ScoreResult& r);
std::string render_score(const ScoreResult& r);

}  // namespace vids
