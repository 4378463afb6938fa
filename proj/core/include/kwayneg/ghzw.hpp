#pragma once

#include <vector>

#include "kwayneg/canonical.hpp"

namespace kwayneg {

/// sqrt(q) GHZ + sign sqrt(1 - q) W.
struct GhzwParams {
    double q = 0.0;
    int sign = 1;  ///< +1 or -1

    void validate() const;
    /// Amplitude of |000> and |111>: sqrt(q / 2).
    double a() const;
    /// Signed amplitude of each W component: sign sqrt((1 - q) / 3).
    double b() const;
    /// -a / b; its cube equals 4 where the qubit-A mixing has a double root.
    double x() const;
};

PureState build_ghzw(const GhzwParams& params);

/// |q^2 + sign (8 sqrt(6) / 9) sqrt(q (1 - q)^3)|
double tau3_closed_form(const GhzwParams& params);

/// Signed version of tau3_closed_form, whose zero in (0, 1) is the minus-branch root.
double tau3_closed_form_signed(const GhzwParams& params);

/// q in (0, 1) where the minus branch has zero three tangle.
double ghzw_minus_zero();

/// Real values of alpha / beta solving the qubit-A condition,
/// x^2 (1 +- sqrt(1 - 4 / x^3)) / 2, in the convention where the new |0>_A
/// slice is alpha T0 + beta T1. Empty when the roots are complex.
std::vector<double> ghzw_mixing_ratios(const GhzwParams& params);

/// Canonical forms of the family member. Endpoints q = 0 and q = 1 return the
/// exact W and GHZ forms. Within 1e-9 of x^3 = 4 the double-root mixing is
/// imposed and a single branch comes back. Where the mixing ratios are real
/// every branch is checked against them; a mismatch throws InvariantViolation.
CanonicalizationResult ghzw_canonical_params(const GhzwParams& params);

/// 2 a000 a111^2 / sqrt(1 - a000^2 - a111^2). Throws DomainError when the
/// radicand is not positive.
double e3_from_amplitudes(double a000, double a111);

struct SweepRow {
    double q;
    double n_global;
    double e2;
    double e3;
    double tau3_formula;
    double e3_times_ng;
    double delta;
};

/// steps evenly spaced q values from q_start to q_end inclusive. e2, e3 and
/// n_global come from the first canonical branch, delta from the state as built.
std::vector<SweepRow> sweep_family(int sign, double q_start, double q_end, int steps);

SweepRow sweep_row(const GhzwParams& params);

}  // namespace kwayneg
