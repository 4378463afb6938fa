#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kwayneg/canonical.hpp"
#include "kwayneg/convex_roof.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/tangle.hpp"

namespace kwayneg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RoofSummary {
    int focus = 0;
    std::string measure;
    RoofBudget budget;
    RoofResult result;
};

struct ReportDocument {
    std::string command;
    std::string tool_version = kToolVersion;
    std::string input_digest;
    std::vector<std::uint64_t> seeds;
    std::vector<NegativityReport> negativity;
    std::vector<TangleReport> tangles;
    std::optional<CanonicalizationResult> canonical;
    std::optional<double> delta;
    std::optional<RoofSummary> roof;
};

/// Fixed-width table with a header row, emitted as CSV.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;  ///< optional leading text column, one per row
};

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double v);
std::string format_real(double v);

nlohmann::ordered_json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::ordered_json& j);

std::string emit_json(const ReportDocument& doc);
std::string emit_csv(const Table& table);

std::string sha256_hex(std::string_view bytes);

}  // namespace kwayneg::cli
