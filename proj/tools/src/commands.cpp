#include "kwayneg/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"
#include "kwayneg/ghzw.hpp"
#include "kwayneg/random.hpp"

namespace kwayneg::cli {

namespace {

void check_focus(const SubsystemLayout& layout, int focus) {
    if (focus < 0 || focus >= layout.count()) {
        throw IndexError(fmt::format("focus {} outside a {}-subsystem state", static_cast<char>('A' + focus),
                                     layout.count()));
    }
}

bool is_three_qubit(const SubsystemLayout& layout) { return layout == SubsystemLayout::qubits(3); }

RoofMeasure parse_measure(const std::string& text) {
    if (text == "global") {
        return RoofMeasure::global();
    }
    if (text.size() >= 2 && text[0] == 'k' &&
        std::all_of(text.begin() + 1, text.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
        return RoofMeasure::kway(std::stoi(text.substr(1)));
    }
    throw ArgumentError(fmt::format("unknown measure '{}', expected global, k2, k3, ...", text));
}

struct Accumulator {
    int tested = 0;
    int violations = 0;
    double max_excess = 0.0;
    bool seen = false;

    void add(double excess, double slack) {
        ++tested;
        if (excess > slack) {
            ++violations;
        }
        max_excess = seen ? std::max(max_excess, excess) : excess;
        seen = true;
    }
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NumericalError*>(&e) != nullptr) {
        return kExitNumerical;
    }
    if (dynamic_cast<const InvariantViolation*>(&e) != nullptr) {
        return kExitInvariant;
    }
    if (dynamic_cast<const Error*>(&e) != nullptr) {
        return kExitInput;
    }
    return kExitNumerical;
}

}  // namespace

int parse_focus(const std::string& label) {
    if (label.size() != 1 || std::isalpha(static_cast<unsigned char>(label[0])) == 0) {
        throw ArgumentError(fmt::format("focus must be a subsystem letter A, B, C, ..., got '{}'", label));
    }
    return std::toupper(static_cast<unsigned char>(label[0])) - 'A';
}

QGrid parse_q_grid(const std::string& text) {
    QGrid grid{};
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> grid.start >> c1 >> grid.end >> c2 >> grid.steps) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw ArgumentError(fmt::format("q grid must look like start:end:steps, got '{}'", text));
    }
    return grid;
}

ReportDocument analyze(const AnalyzeOptions& options) {
    std::string raw;
    const StateFile file = load_state_file(options.path, &raw);
    check_focus(file.layout, options.focus);

    ReportDocument doc;
    doc.command = "analyze";
    doc.input_digest = "sha256:" + sha256_hex(raw);
    doc.negativity.push_back(negativity_report(file.density(), options.focus));
    if (file.is_pure() && file.layout.all_qubits() && file.layout.count() >= 2) {
        doc.tangles.push_back(tangle_report(file.pure(), options.focus));
    }
    if (file.is_pure() && is_three_qubit(file.layout)) {
        doc.delta = coherence_delta(file.pure());
    }
    if (options.canonical) {
        if (!file.is_pure() || !is_three_qubit(file.layout)) {
            throw ArgumentError("--canonical needs a three-qubit pure state");
        }
        doc.canonical = canonicalize3(file.pure());
    }
    return doc;
}

ReportDocument canonicalize(const std::string& path) {
    std::string raw;
    const StateFile file = load_state_file(path, &raw);
    if (!file.is_pure() || !is_three_qubit(file.layout)) {
        throw ArgumentError("canonicalize needs a three-qubit pure state");
    }
    ReportDocument doc;
    doc.command = "canonicalize";
    doc.input_digest = "sha256:" + sha256_hex(raw);
    doc.canonical = canonicalize3(file.pure());
    doc.delta = coherence_delta(file.pure());
    return doc;
}

ReportDocument roof(const RoofOptions& options) {
    std::string raw;
    const StateFile file = load_state_file(options.path, &raw);
    check_focus(file.layout, options.focus);
    const RoofMeasure measure = parse_measure(options.measure);

    ReportDocument doc;
    doc.command = "roof";
    doc.input_digest = "sha256:" + sha256_hex(raw);
    doc.seeds = {options.budget.seed};
    doc.roof = RoofSummary{options.focus, options.measure, options.budget,
                           roof_negativity(file.density(), options.focus, measure, options.budget)};
    return doc;
}

Table sweep(int sign, const QGrid& grid) {
    Table table;
    table.header = {"q", "n_global", "e2", "e3", "tau3_formula", "e3_times_ng", "delta"};
    for (const SweepRow& r : sweep_family(sign, grid.start, grid.end, grid.steps)) {
        table.rows.push_back({r.q, r.n_global, r.e2, r.e3, r.tau3_formula, r.e3_times_ng, r.delta});
    }
    return table;
}

Table audit(const AuditOptions& options) {
    if (options.count <= 0) {
        throw ArgumentError(fmt::format("--random must be positive, got {}", options.count));
    }
    if (options.qubits != 3 && options.qubits != 4) {
        throw ArgumentError(fmt::format("--qubits must be 3 or 4, got {}", options.qubits));
    }
    const SubsystemLayout layout = SubsystemLayout::qubits(options.qubits);
    const double slack = kTol.inequality_slack;
    std::map<int, Accumulator> conditional;
    std::map<int, Accumulator> unconditional;
    Accumulator ckw;
    Accumulator sum_rule;
    for (int i = 0; i < options.count; ++i) {
        RandomStream rng(options.seed, static_cast<std::uint64_t>(i));
        const PureState psi = haar_random_pure(layout, rng);
        const NegativityReport rep = negativity_report(outer(psi), 0);
        for (const auto& [k, e] : rep.e_partial) {
            unconditional[k].add(e - rep.n_global, slack);
            if (k >= 3 && rep.e0_vanishes()) {
                conditional[k].add(e - rep.n_global, slack);
            }
        }
        const TangleReport tangles = tangle_report(psi, 0);
        double pairs = 0.0;
        for (const auto& [partner, tau] : tangles.tau_pairs) {
            pairs += tau;
        }
        ckw.add(pairs - tangles.tau_focus, slack);
        sum_rule.add(rep.sum_residual, kTol.sum_rule);
    }

    Table table;
    table.header = {"check", "tested", "violations", "max_excess"};
    auto push = [&](const std::string& label, const Accumulator& acc) {
        table.labels.push_back(label);
        table.rows.push_back({static_cast<double>(acc.tested), static_cast<double>(acc.violations), acc.max_excess});
    };
    push("ng_ge_e2", unconditional[2]);
    for (int k = 3; k <= options.qubits; ++k) {
        push(fmt::format("ng_ge_e{}", k), conditional[k]);
        push(fmt::format("ng_ge_e{}_all", k), unconditional[k]);
    }
    push("ckw", ckw);
    push("sum_rule", sum_rule);
    return table;
}

CommandOutput run(const std::vector<std::string>& args) {
    CLI::App app{"K-way negativities, tangles and canonical forms of multi-qubit states", "kwayneg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    AnalyzeOptions analyze_opts;
    std::string analyze_focus = "A";
    auto* analyze_cmd = app.add_subcommand("analyze", "Negativity and tangle report for a state file");
    analyze_cmd->add_option("file", analyze_opts.path, "State file")->required();
    analyze_cmd->add_option("--focus", analyze_focus, "Focus subsystem")->default_val("A");
    analyze_cmd->add_flag("--canonical", analyze_opts.canonical, "Include canonical forms");

    std::string canonical_path;
    auto* canonical_cmd = app.add_subcommand("canonicalize", "Canonical forms of a three-qubit pure state");
    canonical_cmd->add_option("file", canonical_path, "State file")->required();

    std::string family;
    std::string sign_text;
    std::string grid_text;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the GHZ+W family");
    sweep_cmd->add_option("--family", family, "Family name")->required()->check(CLI::IsMember({"ghzw"}));
    sweep_cmd->add_option("--sign", sign_text, "plus or minus")->required()->check(CLI::IsMember({"plus", "minus"}));
    sweep_cmd->add_option("--q", grid_text, "start:end:steps")->required();

    RoofOptions roof_opts;
    std::string roof_focus = "A";
    auto* roof_cmd = app.add_subcommand("roof", "Convex-roof negativity of a mixed state");
    roof_cmd->add_option("file", roof_opts.path, "State file")->required();
    roof_cmd->add_option("--focus", roof_focus, "Focus subsystem")->default_val("A");
    roof_cmd->add_option("--measure", roof_opts.measure, "global, k2, k3, ...")->default_val("global");
    roof_cmd->add_option("--restarts", roof_opts.budget.restarts, "Random restarts")->default_val(32);
    roof_cmd->add_option("--iterations", roof_opts.budget.iterations, "Rotations per restart")->default_val(2000);
    roof_cmd->add_option("--seed", roof_opts.budget.seed, "Seed")->default_val(0);

    AuditOptions audit_opts;
    auto* audit_cmd = app.add_subcommand("audit", "Inequality audit over Haar-random pure states");
    audit_cmd->add_option("--random", audit_opts.count, "Number of states")->required();
    audit_cmd->add_option("--seed", audit_opts.seed, "Seed")->default_val(0);
    audit_cmd->add_option("--qubits", audit_opts.qubits, "3 or 4")->default_val(3);

    CommandOutput output;
    std::ostringstream out;
    std::ostringstream err;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        output.exit_code = code == 0 ? kExitOk : kExitInput;
        output.out = out.str();
        output.err = err.str();
        return output;
    }

    try {
        if (analyze_cmd->parsed()) {
            analyze_opts.focus = parse_focus(analyze_focus);
            const ReportDocument doc = analyze(analyze_opts);
            output.out = emit_json(doc);
            for (const auto& rep : doc.negativity) {
                if (!rep.sum_rule_holds()) {
                    output.exit_code = kExitInvariant;
                    output.err += fmt::format("sum rule residual {:.3g} exceeds {:.3g} for focus {}\n",
                                              rep.sum_residual, kTol.sum_rule, static_cast<char>('A' + rep.focus));
                }
            }
        } else if (canonical_cmd->parsed()) {
            output.out = emit_json(canonicalize(canonical_path));
        } else if (sweep_cmd->parsed()) {
            output.out = emit_csv(sweep(sign_text == "plus" ? 1 : -1, parse_q_grid(grid_text)));
        } else if (roof_cmd->parsed()) {
            roof_opts.focus = parse_focus(roof_focus);
            output.out = emit_json(roof(roof_opts));
        } else if (audit_cmd->parsed()) {
            output.out = emit_csv(audit(audit_opts));
        }
    } catch (const std::exception& e) {
        output.exit_code = exit_code_for(e);
        output.err += fmt::format("error: {}\n", e.what());
    }
    return output;
}

}  // namespace kwayneg::cli
