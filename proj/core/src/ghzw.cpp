#include "kwayneg/ghzw.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "kwayneg/error.hpp"
#include "kwayneg/negativity.hpp"

namespace kwayneg {

namespace {

const double kTangleCoefficient = 8.0 * std::sqrt(6.0) / 9.0;
constexpr double kDegenerateWindow = 1e-9;
constexpr double kRatioTolerance = 1e-7;

CanonicalBranch endpoint_branch(const GhzwParams& params) {
    CanonicalBranch branch;
    const CMatrix id = CMatrix::Identity(2, 2);
    if (params.q == 1.0) {
        branch.form = {.a = std::sqrt(0.5), .f = std::sqrt(0.5)};
        branch.mixing = {Complex(1.0), Complex(0.0)};
        branch.unitaries = {LocalUnitary(0, id), LocalUnitary(1, id), LocalUnitary(2, id)};
    } else {
        const double third = std::sqrt(1.0 / 3.0);
        const double s = params.sign;
        branch.form = {.a = third, .c = third, .d = third};
        branch.mixing = {Complex(0.0), Complex(-s)};
        CMatrix ua(2, 2);
        ua << 0.0, s, -s, 0.0;
        const CMatrix flip = Eigen::Vector2cd(1.0, -1.0).asDiagonal();
        branch.unitaries = {LocalUnitary(0, ua), LocalUnitary(1, flip), LocalUnitary(2, flip)};
    }
    const PureState y = apply_branch(build_ghzw(params), branch);
    branch.residual = (y.amplitudes() - build_canonical_state(branch.form).amplitudes()).cwiseAbs().maxCoeff();
    return branch;
}

void check_ratios(const GhzwParams& params, const CanonicalizationResult& result) {
    const std::vector<double> ratios = ghzw_mixing_ratios(params);
    if (ratios.empty()) {
        return;
    }
    for (const CanonicalBranch& branch : result.branches) {
        const Complex alpha = branch.mixing.alpha;
        const Complex beta = -branch.mixing.beta;
        double best = std::numeric_limits<double>::infinity();
        for (double r : ratios) {
            best = std::min(best, std::abs(alpha - r * beta) / std::sqrt(1.0 + r * r));
        }
        if (best > kRatioTolerance) {
            throw InvariantViolation(
                fmt::format("canonical mixing at q={:.12g} misses the closed-form roots by {:.3g}", params.q, best));
        }
    }
}

}  // namespace

void GhzwParams::validate() const {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ArgumentError(fmt::format("q={:.12g} outside [0, 1]", q));
    }
    if (sign != 1 && sign != -1) {
        throw ArgumentError(fmt::format("sign must be +1 or -1, got {}", sign));
    }
}

double GhzwParams::a() const { return std::sqrt(q / 2.0); }

double GhzwParams::b() const { return sign * std::sqrt((1.0 - q) / 3.0); }

double GhzwParams::x() const { return -a() / b(); }

PureState build_ghzw(const GhzwParams& params) {
    params.validate();
    const double a = params.a();
    const double b = params.b();
    CVector v = CVector::Zero(8);
    v[0] = a;
    v[7] = a;
    v[1] = b;
    v[2] = b;
    v[4] = b;
    return PureState(SubsystemLayout::qubits(3), std::move(v));
}

double tau3_closed_form_signed(const GhzwParams& params) {
    params.validate();
    const double q = params.q;
    return q * q + params.sign * kTangleCoefficient * std::sqrt(q * std::pow(1.0 - q, 3));
}

double tau3_closed_form(const GhzwParams& params) { return std::abs(tau3_closed_form_signed(params)); }

double ghzw_minus_zero() {
    // The minus branch is negative at q = 0.3 and positive at q = 0.9.
    auto f = [](double q) { return tau3_closed_form_signed({q, -1}); };
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.3, 0.9, boost::math::tools::eps_tolerance<double>(),
                                                            iterations);
    return 0.5 * (lo + hi);
}

std::vector<double> ghzw_mixing_ratios(const GhzwParams& params) {
    params.validate();
    if (params.q <= 0.0 || params.q >= 1.0) {
        return {};
    }
    const double x = params.x();
    const double x3 = x * x * x;
    if (std::abs(x3 - 4.0) < kDegenerateWindow) {
        return {x * x / 2.0};
    }
    const double radicand = 1.0 - 4.0 / x3;
    if (radicand < 0.0) {
        return {};
    }
    const double root = std::sqrt(radicand);
    return {x * x * (1.0 + root) / 2.0, x * x * (1.0 - root) / 2.0};
}

CanonicalizationResult ghzw_canonical_params(const GhzwParams& params) {
    params.validate();
    CanonicalizationResult result;
    if (params.q == 0.0 || params.q == 1.0) {
        result.branches.push_back(endpoint_branch(params));
        result.residual = result.branches.front().residual;
        return result;
    }
    const PureState psi = build_ghzw(params);
    const double x = params.x();
    if (std::abs(x * x * x - 4.0) < kDegenerateWindow) {
        const double r = x * x / 2.0;
        const double norm = std::sqrt(1.0 + r * r);
        CanonicalBranch branch = canonicalize_with_mixing(psi, {Complex(r / norm), Complex(-1.0 / norm)});
        result.residual = branch.residual;
        result.branches.push_back(std::move(branch));
    } else {
        result = canonicalize3(psi);
    }
    check_ratios(params, result);
    return result;
}

double e3_from_amplitudes(double a000, double a111) {
    const double radicand = 1.0 - a000 * a000 - a111 * a111;
    if (!(radicand > 0.0)) {
        throw DomainError(fmt::format("1 - a000^2 - a111^2 = {:.12g} is not positive", radicand));
    }
    return 2.0 * a000 * a111 * a111 / std::sqrt(radicand);
}

SweepRow sweep_row(const GhzwParams& params) {
    const CanonicalizationResult canonical = ghzw_canonical_params(params);
    const PureState state = build_canonical_state(canonical.branches.front().form);
    const NegativityReport report = negativity_report(outer(state), 0);
    SweepRow row{};
    row.q = params.q;
    row.n_global = report.n_global;
    row.e2 = report.e_partial.at(2);
    row.e3 = report.e_partial.at(3);
    row.tau3_formula = tau3_closed_form(params);
    row.e3_times_ng = row.e3 * row.n_global;
    row.delta = coherence_delta(build_ghzw(params));
    return row;
}

std::vector<SweepRow> sweep_family(int sign, double q_start, double q_end, int steps) {
    if (!(q_start >= 0.0 && q_start < q_end && q_end <= 1.0)) {
        throw ArgumentError(fmt::format("q range [{:.12g}, {:.12g}] must satisfy 0 <= start < end <= 1", q_start, q_end));
    }
    if (steps < 2) {
        throw ArgumentError(fmt::format("steps={} must be at least 2", steps));
    }
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double q = i == steps - 1 ? q_end : q_start + (q_end - q_start) * i / (steps - 1);
        rows.push_back(sweep_row({q, sign}));
    }
    return rows;
}

}  // namespace kwayneg
