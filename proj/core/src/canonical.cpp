#include "kwayneg/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/tangle.hpp"

namespace kwayneg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBranchTolerance = 1e-8;

using Slice = Eigen::Matrix2cd;

// Support of the canonical form: |000>, |100>, |101>, |110>, |111>.
constexpr std::array<int, 3> kOffSupport = {1, 2, 3};

std::array<Slice, 2> slices(const PureState& psi) {
    std::array<Slice, 2> t;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                t[static_cast<std::size_t>(i)](j, k) = psi[static_cast<std::size_t>(4 * i + 2 * j + k)];
            }
        }
    }
    return t;
}

double wrap_phase(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    return w >= kTwoPi ? 0.0 : w;
}

CMatrix diag_phase(double angle) {
    CMatrix m = CMatrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, angle);
    return m;
}

double phase_of(Complex z) { return std::abs(z) > 0.0 ? std::arg(z) : 0.0; }

SliceMixing normalize_mixing(Complex alpha, Complex beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    if (std::abs(alpha) > 0.0) {
        return {Complex(std::abs(alpha)), beta * std::conj(alpha) / std::abs(alpha)};
    }
    return {Complex(0.0), Complex(std::abs(beta))};
}

// Roots of A x^2 + B x + C with |A| >= |C|, computed without cancellation.
// Returns one root when the discriminant vanishes.
std::vector<Complex> stable_roots(Complex a, Complex b, Complex c, double scale) {
    if (std::abs(a) <= 1e-14 * scale) {
        // Then C vanishes as well: roots x = 0 and x = infinity (handled by caller).
        return {Complex(0.0)};
    }
    const Complex disc = b * b - 4.0 * a * c;
    if (std::abs(disc) < 1e-12 * scale * scale) {
        return {-b / (2.0 * a)};
    }
    Complex root = std::sqrt(disc);
    if ((std::conj(b) * root).real() < 0.0) {
        root = -root;
    }
    const Complex q = -0.5 * (b + root);
    return {q / a, c / q};
}

Complex polish(Complex x, Complex a, Complex b, Complex c, double scale) {
    const Complex value = (a * x + b) * x + c;
    const Complex slope = 2.0 * a * x + b;
    if (std::abs(slope) > 1e-8 * scale) {
        return x - value / slope;
    }
    return x;
}

// Mixings (alpha, beta) making alpha T0 - beta T1 singular.
std::vector<SliceMixing> singular_mixings(const Slice& t0, const Slice& t1) {
    const Complex c0 = t0.determinant();
    const Complex c2 = t1.determinant();
    const Complex c1 = t0(0, 0) * t1(1, 1) + t0(1, 1) * t1(0, 0) - t0(0, 1) * t1(1, 0) - t0(1, 0) * t1(0, 1);
    const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
    if (scale < 1e-14) {
        // Every mixing is singular.
        return {{Complex(1.0), Complex(0.0)}};
    }

    std::vector<SliceMixing> out;
    // det(T0 + t T1) = c0 + c1 t + c2 t^2 with t = -beta / alpha.
    if (std::abs(c2) >= std::abs(c0)) {
        const bool degenerate = std::abs(c2) <= 1e-14 * scale;
        for (Complex t : stable_roots(c2, c1, c0, scale)) {
            t = polish(t, c2, c1, c0, scale);
            out.push_back(normalize_mixing(Complex(1.0), -t));
        }
        if (degenerate) {
            out.push_back(normalize_mixing(Complex(0.0), Complex(1.0)));
        }
    } else {
        // In s = 1/t: c0 s^2 + c1 s + c2, alpha = -s beta.
        const bool degenerate = std::abs(c0) <= 1e-14 * scale;
        for (Complex s : stable_roots(c0, c1, c2, scale)) {
            s = polish(s, c0, c1, c2, scale);
            out.push_back(normalize_mixing(-s, Complex(1.0)));
        }
        if (degenerate) {
            out.push_back(normalize_mixing(Complex(1.0), Complex(0.0)));
        }
    }
    return out;
}

bool same_form(const CanonicalForm3Q& x, const CanonicalForm3Q& y) {
    const double dphi = std::abs(x.phi - y.phi);
    const double circular = std::min(dphi, kTwoPi - dphi);
    const double weight = std::min(x.b, y.b);
    return std::abs(x.a - y.a) < 1e-10 && std::abs(x.b - y.b) < 1e-10 && std::abs(x.c - y.c) < 1e-10 &&
           std::abs(x.d - y.d) < 1e-10 && std::abs(x.f - y.f) < 1e-10 && weight * circular < 1e-10;
}

}  // namespace

double CanonicalForm3Q::g() const { return std::sqrt(c * c + d * d + f * f); }

void CanonicalForm3Q::validate() const {
    for (double v : {a, b, c, d, f}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError(fmt::format("canonical amplitudes must be finite and nonnegative, got {:.12g}", v));
        }
    }
    if (!(phi >= 0.0 && phi < kTwoPi)) {
        throw ValidationError(fmt::format("canonical phase phi={:.12g} outside [0, 2 pi)", phi));
    }
    const double norm2 = a * a + b * b + c * c + d * d + f * f;
    if (!(std::abs(norm2 - 1.0) <= kTol.norm)) {
        throw ValidationError(fmt::format("canonical form is not normalized: norm^2={:.12g}", norm2));
    }
}

PureState build_canonical_state(const CanonicalForm3Q& form) {
    form.validate();
    CVector v = CVector::Zero(8);
    v[0] = form.a;
    v[4] = std::polar(form.b, form.phi);
    v[6] = form.c;
    v[5] = form.d;
    v[7] = form.f;
    return PureState(SubsystemLayout::qubits(3), std::move(v));
}

CanonicalClosedForms canonical_closed_forms(const CanonicalForm3Q& form) {
    form.validate();
    const double a2 = form.a * form.a;
    const double g = form.g();
    CanonicalClosedForms out{};
    out.n_global = 2.0 * form.a * g;
    out.tau_focus = 4.0 * a2 * g * g;
    out.tau_ab = 4.0 * a2 * form.c * form.c;
    out.tau_ac = 4.0 * a2 * form.d * form.d;
    out.tau3 = 4.0 * a2 * form.f * form.f;
    if (out.n_global > 0.0) {
        out.e3 = out.tau3 / out.n_global;
        out.e2 = (out.tau_ab + out.tau_ac) / out.n_global;
        out.e2_ab = out.tau_ab / out.n_global;
        out.e2_ac = out.tau_ac / out.n_global;
    }
    return out;
}

PureState apply_branch(const PureState& psi, const CanonicalBranch& branch) {
    PureState out = psi;
    for (const LocalUnitary& u : branch.unitaries) {
        out = apply_local_unitary(out, u);
    }
    return out;
}

CanonicalBranch canonicalize_with_mixing(const PureState& psi, SliceMixing mixing) {
    if (!(psi.layout() == SubsystemLayout::qubits(3))) {
        throw ArgumentError("canonical form needs a three-qubit state");
    }
    mixing = normalize_mixing(mixing.alpha, mixing.beta);
    const Complex alpha = mixing.alpha;
    const Complex beta = mixing.beta;
    const auto [t0, t1] = slices(psi);

    CMatrix ua(2, 2);
    ua << alpha, -beta, std::conj(beta), std::conj(alpha);
    const Slice mixed0 = alpha * t0 - beta * t1;
    const Slice mixed1 = std::conj(beta) * t0 + std::conj(alpha) * t1;

    Eigen::JacobiSVD<Slice> svd(mixed0, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix ub = svd.matrixU().adjoint();
    const CMatrix uc = svd.matrixV().transpose();

    // Amplitudes after the A, B, C rotations but before phase fixing.
    const Slice s1 = svd.matrixU().adjoint() * mixed1 * svd.matrixV();
    const double arg101 = phase_of(s1(0, 1));
    const double arg110 = phase_of(s1(1, 0));
    const double arg111 = phase_of(s1(1, 1));
    const double phase_c = arg110 - arg111;
    const double phase_b = arg101 - arg111;
    const double phase_a = -arg110 - phase_b;

    CanonicalBranch branch;
    branch.mixing = mixing;
    branch.unitaries.emplace_back(0, diag_phase(phase_a) * ua);
    branch.unitaries.emplace_back(1, diag_phase(phase_b) * ub);
    branch.unitaries.emplace_back(2, diag_phase(phase_c) * uc);

    const PureState y = apply_branch(psi, branch);
    CanonicalForm3Q& form = branch.form;
    form.a = std::abs(y[0]);
    form.b = std::abs(y[4]);
    form.c = std::abs(y[6]);
    form.d = std::abs(y[5]);
    form.f = std::abs(y[7]);
    form.phi = form.b > 1e-14 ? wrap_phase(std::arg(y[4])) : 0.0;

    CVector expected = CVector::Zero(8);
    expected[0] = form.a;
    expected[4] = std::polar(form.b, form.phi);
    expected[5] = form.d;
    expected[6] = form.c;
    expected[7] = form.f;
    double residual = (y.amplitudes() - expected).cwiseAbs().maxCoeff();
    for (int k : kOffSupport) {
        residual = std::max(residual, std::abs(y[static_cast<std::size_t>(k)]));
    }
    branch.residual = residual;
    if (!(residual <= kBranchTolerance)) {
        throw NumericalError(fmt::format("canonical reduction left residual {:.3g}", residual));
    }
    return branch;
}

CanonicalizationResult canonicalize3(const PureState& psi) {
    if (!(psi.layout() == SubsystemLayout::qubits(3))) {
        throw ArgumentError("canonical form needs a three-qubit state");
    }
    const auto [t0, t1] = slices(psi);
    CanonicalizationResult result;
    for (const SliceMixing& mixing : singular_mixings(t0, t1)) {
        CanonicalBranch branch = canonicalize_with_mixing(psi, mixing);
        const bool duplicate = std::any_of(result.branches.begin(), result.branches.end(),
                                           [&](const CanonicalBranch& b) { return same_form(b.form, branch.form); });
        if (!duplicate) {
            result.branches.push_back(std::move(branch));
        }
    }
    std::stable_sort(result.branches.begin(), result.branches.end(),
                     [](const CanonicalBranch& x, const CanonicalBranch& y) {
                         if (std::abs(x.form.a - y.form.a) > 1e-12) {
                             return x.form.a > y.form.a;
                         }
                         if (std::abs(x.form.f - y.form.f) > 1e-12) {
                             return x.form.f > y.form.f;
                         }
                         return x.form.phi < y.form.phi;
                     });
    for (const auto& b : result.branches) {
        result.residual = std::max(result.residual, b.residual);
    }
    return result;
}

double coherence_delta(const PureState& psi) {
    const DensityOperator rho = outer(psi);
    const double e3 = partial_kway_negativity(rho, 3, 0);
    const double ng = global_negativity(rho, 0);
    return e3 * ng - *three_tangle(psi, 0).tau3;
}

PureState ghz_like_state(double a) {
    if (!(a > 0.0 && a < 1.0)) {
        throw ArgumentError(fmt::format("GHZ-like amplitude a={:.12g} outside (0, 1)", a));
    }
    CVector v = CVector::Zero(8);
    v[0] = a;
    v[7] = std::sqrt(1.0 - a * a);
    return PureState(SubsystemLayout::qubits(3), std::move(v));
}

LocalUnitary rotation_unitary(int target, double alpha) {
    CMatrix u(2, 2);
    const double c = std::cos(alpha / 2.0);
    const double s = std::sin(alpha / 2.0);
    u << c, s, -s, c;
    return LocalUnitary(target, std::move(u));
}

RotationProfile ghz_rotation_profile(double a, double alpha) {
    if (!(a > 0.0 && a < 1.0)) {
        throw ArgumentError(fmt::format("GHZ-like amplitude a={:.12g} outside (0, 1)", a));
    }
    const double k = a * std::sqrt(1.0 - a * a) / 2.0;
    const double c2 = std::cos(2.0 * alpha);
    return {k * (3.0 + c2), k * (1.0 - c2)};
}

}  // namespace kwayneg
