#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kwayneg/cli/report.hpp"
#include "kwayneg/cli/state_file.hpp"

namespace kwayneg::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2, kExitInvariant = 3 };

struct AnalyzeOptions {
    std::string path;
    int focus = 0;
    bool canonical = false;
};

struct RoofOptions {
    std::string path;
    int focus = 0;
    std::string measure = "global";
    RoofBudget budget;
};

struct AuditOptions {
    int count = 0;
    std::uint64_t seed = 0;
    int qubits = 3;
};

/// Parses "A", "B", ... into a subsystem index.
int parse_focus(const std::string& label);

/// Parses "start:end:steps".
struct QGrid {
    double start;
    double end;
    int steps;
};
QGrid parse_q_grid(const std::string& text);

ReportDocument analyze(const AnalyzeOptions& options);
ReportDocument canonicalize(const std::string& path);
ReportDocument roof(const RoofOptions& options);
Table sweep(int sign, const QGrid& grid);
Table audit(const AuditOptions& options);

struct CommandOutput {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs one command line (without the program name).
CommandOutput run(const std::vector<std::string>& args);

}  // namespace kwayneg::cli
