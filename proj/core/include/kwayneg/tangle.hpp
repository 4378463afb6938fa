#pragma once

#include <map>
#include <optional>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

struct TangleReport {
    int focus = 0;
    double tau_focus = 0.0;           ///< 4 det rho_focus
    std::map<int, double> tau_pairs;  ///< partner -> Wootters tangle of the reduced pair
    std::optional<double> tau3;       ///< tau_focus - sum of tau_pairs, three qubits only
};

/// 4 det of the reduced state of qubit `focus`.
double one_tangle(const PureState& psi, int focus);

/// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y) for a two-qubit state.
CMatrix spin_flip(const DensityOperator& rho);

/// Squared concurrence [max(l1 - l2 - l3 - l4, 0)]^2 with l_i the descending
/// square roots of the spectrum of rho * spin_flip(rho), taken as singular
/// values of Phi^T (sigma_y x sigma_y) Phi for the weighted eigenvectors Phi.
double wootters_tangle(const DensityOperator& rho);

/// One-tangle and pairwise tangles of a pure multi-qubit state. Pair tangles
/// use the decomposition of the reduced pair into the unnormalized states
/// <rest|psi>, which avoids an eigendecomposition.
TangleReport tangle_report(const PureState& psi, int focus);

/// tangle_report for a three-qubit state; throws ArgumentError otherwise.
TangleReport three_tangle(const PureState& psi, int focus = 0);

}  // namespace kwayneg
