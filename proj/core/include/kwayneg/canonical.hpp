#pragma once

#include <vector>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

/// a|000> + b e^{i phi}|100> + c|110> + d|101> + f|111>, qubits ordered A, B, C.
///
/// Real amplitudes are nonnegative. phi lies in [0, 2 pi): local phase
/// changes leave arg(b) + arg(f) - arg(c) - arg(d) fixed, so it cannot be
/// folded further.
struct CanonicalForm3Q {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double f = 0.0;
    double phi = 0.0;

    double g() const;
    /// Throws ValidationError on negative amplitudes, phi outside [0, 2 pi) or
    /// a squared norm off by more than kTol.norm.
    void validate() const;
};

PureState build_canonical_state(const CanonicalForm3Q& form);

/// Analytic negativities and tangles of a canonical state, focus A.
/// When a g = 0 the state is a product across A|BC and every negativity is 0.
struct CanonicalClosedForms {
    double n_global;  ///< 2 a g
    double e3;        ///< 4 a^2 f^2 / (2 a g)
    double e2;        ///< 4 a^2 (c^2 + d^2) / (2 a g)
    double e2_ab;     ///< 4 a^2 c^2 / N_G
    double e2_ac;     ///< 4 a^2 d^2 / N_G
    double tau_focus; ///< 4 a^2 g^2
    double tau_ab;    ///< 4 a^2 c^2
    double tau_ac;    ///< 4 a^2 d^2
    double tau3;      ///< 4 a^2 f^2
};

CanonicalClosedForms canonical_closed_forms(const CanonicalForm3Q& form);

/// First row (alpha, -beta) of the unitary applied to qubit A, so that the
/// new |0>_A slice is alpha T0 - beta T1 with T_i the 2x2 amplitude slice of
/// qubit A in state i. alpha is real and nonnegative.
struct SliceMixing {
    Complex alpha;
    Complex beta;
};

struct CanonicalBranch {
    CanonicalForm3Q form;
    std::vector<LocalUnitary> unitaries;  ///< acting on A, B, C in that order
    SliceMixing mixing;
    double residual = 0.0;  ///< max |amplitude| off the canonical support after the unitaries
};

struct CanonicalizationResult {
    std::vector<CanonicalBranch> branches;  ///< larger a first, ties broken by larger f
    double residual = 0.0;                  ///< worst branch residual
};

/// Local-unitary reduction of a three-qubit pure state to canonical form.
///
/// The qubit-A mixing is chosen so the new |0>_A slice is singular; that is a
/// quadratic condition on the mixing ratio and each distinct root gives one
/// branch. Singular-value rotations on B and C then diagonalize that slice
/// and local phases make a, c, d, f real. Throws NumericalError if a branch
/// misses the canonical support by more than 1e-8.
CanonicalizationResult canonicalize3(const PureState& psi);

/// One branch of canonicalize3 for a prescribed qubit-A mixing. Throws
/// NumericalError when the mixed slice is not singular.
CanonicalBranch canonicalize_with_mixing(const PureState& psi, SliceMixing mixing);

/// Applies a branch's unitaries to `psi`.
PureState apply_branch(const PureState& psi, const CanonicalBranch& branch);

/// E_3^A N_G^A - tau_3 evaluated on the state as given.
double coherence_delta(const PureState& psi);

/// a|000> + sqrt(1 - a^2)|111>
PureState ghz_like_state(double a);

/// [[cos(alpha/2), sin(alpha/2)], [-sin(alpha/2), cos(alpha/2)]] on `target`.
LocalUnitary rotation_unitary(int target, double alpha);

struct RotationProfile {
    double e3;
    double e2;
};

/// Closed-form E_3^A and E_2^A of the GHZ-like state after rotating qubit C by
/// alpha. Throws ArgumentError unless 0 < a < 1.
RotationProfile ghz_rotation_profile(double a, double alpha);

}  // namespace kwayneg
