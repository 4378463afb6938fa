#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "kwayneg/convex_roof.hpp"
#include "kwayneg/tensor.hpp"

namespace kwayneg::cli {

/// Contents of a state file: dims plus exactly one of `amplitudes`,
/// `matrix` or `ensemble`, complex entries written as {"re": x, "im": y}.
struct StateFile {
    SubsystemLayout layout;
    std::variant<PureState, DensityOperator, Ensemble> state;

    bool is_pure() const { return std::holds_alternative<PureState>(state); }
    const PureState& pure() const;
    /// The density operator of any variant; ensembles are mixed here.
    DensityOperator density() const;
};

/// Throws ParseError for malformed text or schema, ValidationError when the
/// parsed object breaks its own invariants.
StateFile parse_state_file(std::string_view text);

StateFile load_state_file(const std::string& path, std::string* raw = nullptr);

std::string emit_state_file(const PureState& psi);
std::string emit_state_file(const DensityOperator& rho);

}  // namespace kwayneg::cli
