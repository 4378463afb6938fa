#pragma once

#include <cstdint>
#include <vector>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

struct EnsembleMember {
    double probability;
    PureState state;
};

/// Pure-state decomposition of a density operator.
struct Ensemble {
    std::vector<EnsembleMember> members;

    /// sum_i p_i |psi_i><psi_i|
    CMatrix mixture() const;
    /// Frobenius distance between the mixture and `rho`.
    double reconstruction_error(const DensityOperator& rho) const;
};

/// Spectral decomposition; eigenvalues at or below kTol.drop_weight are dropped.
Ensemble eigen_ensemble(const DensityOperator& rho);

/// Members |phi_j> = sum_k W_jk sqrt(lambda_k) |e_k> over the retained
/// eigenpairs of rho, with probabilities ||phi_j||^2. W is m x rank with
/// orthonormal columns; anything else throws ValidationError.
Ensemble isometry_ensemble(const DensityOperator& rho, const CMatrix& w, int m);

struct RoofMeasure {
    enum class Kind { Global, KWay };
    Kind kind = Kind::Global;
    int order = 0;  ///< K for Kind::KWay

    static RoofMeasure global() { return {Kind::Global, 0}; }
    static RoofMeasure kway(int order) { return {Kind::KWay, order}; }
};

struct RoofBudget {
    int restarts = 32;
    int m_max = 8;
    int iterations = 2000;
    std::uint64_t seed = 0;
};

/// Best decomposition found. `value` is an upper bound on the convex roof.
struct RoofResult {
    double value = 0.0;
    Ensemble certificate;
    int restarts_used = 0;
    bool converged = false;
    bool upper_bound = true;
};

/// The measure on a single pure state: N_G^p for Global, E_K^p for KWay.
double pure_measure(const PureState& psi, int focus, const RoofMeasure& measure);

/// Probability-weighted average of the measure over an ensemble.
double ensemble_average(const Ensemble& ensemble, int focus, const RoofMeasure& measure);

/// Minimizes the ensemble average over decompositions of rho with m = min(2 rank, m_max)
/// members. Restart r draws from stream r of the seed; restart 0 starts at the
/// eigen-ensemble. Each restart applies random two-member rotations with a
/// geometrically shrinking angle and keeps the ones that lower the average.
/// A rank-1 rho returns the direct value. Throws ArgumentError for an empty budget.
RoofResult roof_negativity(const DensityOperator& rho, int focus, const RoofMeasure& measure,
                           const RoofBudget& budget = {});

/// Global negativity of the two-qubit reduced state of (focus, partner),
/// taken with respect to `focus`.
double reduced_pair_negativity(const PureState& psi, int focus, int partner);

}  // namespace kwayneg
