#pragma once

#include <map>
#include <vector>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

struct NegativeEigenpair {
    double value;
    CVector vector;
};

/// Global, K-way and partial K-way negativities of one focus subsystem.
///
/// The partial negativities E_K are projections of the K-way transposes onto
/// the negative subspace of the global transpose, so that
///     N_G = sum_K E_K - E_0
/// whenever the global transpose decomposes into K-way parts. That
/// decomposition is exact when the coherences differing only in the focus
/// subsystem are real; `sum_residual` reports how far a given input is from it.
struct NegativityReport {
    int focus = 0;
    int subsystems = 0;
    double n_global = 0.0;
    std::map<int, double> n_kway;     ///< K -> N_K
    std::map<int, double> e_partial;  ///< K -> E_K
    double e0 = 0.0;
    std::map<int, double> pair_split;  ///< partner -> E_2 restricted to (focus, partner); three subsystems only
    std::vector<NegativeEigenpair> negative_eigenpairs;
    double sum_residual = 0.0;         ///< |N_G - (sum_K E_K - E_0)|
    double pair_split_residual = 0.0;  ///< |E_2 + E_0 - sum of pair_split|; 0 when no split exists
    std::vector<int> inequality_violations;  ///< K with N_G + slack < E_K while |E_0| <= slack

    bool e0_vanishes() const;
    bool sum_rule_holds() const;
};

/// (||M||_1 - 1) / (d_p - 1) for a Hermitian, unit-trace partial transpose.
double negativity_from_pt(const CMatrix& pt, int focus_dim);

/// Eigenpairs with eigenvalue below -kTol.eigen, ascending.
std::vector<NegativeEigenpair> negative_subspace(const CMatrix& m);

/// Orthogonal projector onto the span of `pairs`.
CMatrix negative_projector(const std::vector<NegativeEigenpair>& pairs, Eigen::Index dim);

/// Re tr(P M).
double projected_trace(const CMatrix& projector, const CMatrix& m);

double global_negativity(const DensityOperator& rho, int focus);
double kway_negativity(const DensityOperator& rho, int order, int focus);

/// E_K = -(2 / (d_p - 1)) tr(P_- rho_K^{T_p}), with P_- the negative-subspace
/// projector of the global transpose.
double partial_kway_negativity(const DensityOperator& rho, int order, int focus);

/// E_0 = -(2 (N - 2) / (d_p - 1)) tr(P_- rho).
double e0_negativity(const DensityOperator& rho, int focus);

/// -(2 / (d_p - 1)) tr(P_- rho_2^{T_{p-partner}}). Three subsystems only.
double pair_partial_negativity(const DensityOperator& rho, int focus, int partner);

NegativityReport negativity_report(const DensityOperator& rho, int focus);

}  // namespace kwayneg
