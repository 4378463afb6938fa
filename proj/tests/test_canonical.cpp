#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kwayneg/canonical.hpp"
#include "kwayneg/error.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/random.hpp"
#include "kwayneg/tangle.hpp"
#include "oracles.hpp"

using namespace kwayneg;

namespace {

CanonicalForm3Q random_form(RandomStream& rng, double phi) {
    std::array<double, 5> x{};
    double norm = 0.0;
    for (double& v : x) {
        v = std::abs(rng.normal());
        norm += v * v;
    }
    norm = std::sqrt(norm);
    return {x[0] / norm, x[1] / norm, x[2] / norm, x[3] / norm, x[4] / norm, phi};
}

struct Numeric {
    NegativityReport neg;
    TangleReport tangles;
};

Numeric numeric(const CanonicalForm3Q& form) {
    const PureState psi = build_canonical_state(form);
    return {negativity_report(outer(psi), 0), tangle_report(psi, 0)};
}

}  // namespace

TEST(Canonical, BuildPlacesAmplitudes) {
    const CanonicalForm3Q f{0.5, 0.5, 0.5, 0.3, std::sqrt(1.0 - 0.75 - 0.09), std::numbers::pi / 2};
    const PureState psi = build_canonical_state(f);
    EXPECT_DOUBLE_EQ(psi[0].real(), 0.5);
    EXPECT_NEAR(psi[4].imag(), 0.5, 1e-16);
    EXPECT_DOUBLE_EQ(psi[6].real(), 0.5);
    EXPECT_DOUBLE_EQ(psi[5].real(), 0.3);
    EXPECT_EQ(psi[1], Complex(0.0));
    EXPECT_EQ(psi[2], Complex(0.0));
    EXPECT_EQ(psi[3], Complex(0.0));
}

TEST(Canonical, FormValidation) {
    EXPECT_THROW(CanonicalForm3Q({-0.1, 0.0, 0.0, 0.0, 0.0, 0.0}).validate(), ValidationError);
    EXPECT_THROW(CanonicalForm3Q({1.0, 0.0, 0.0, 0.0, 0.0, 2.0 * std::numbers::pi}).validate(), ValidationError);
    EXPECT_THROW(CanonicalForm3Q({0.9, 0.0, 0.0, 0.0, 0.0, 0.0}).validate(), ValidationError);
    EXPECT_NO_THROW(CanonicalForm3Q({1.0, 0.0, 0.0, 0.0, 0.0, 6.0}).validate());
}

// With phi in {0, pi} the canonical state is real and every closed form holds.
TEST(Canonical, ClosedFormsMatchPipelineForRealPhase) {
    RandomStream rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const CanonicalForm3Q f = random_form(rng, trial % 2 == 0 ? 0.0 : std::numbers::pi);
        const CanonicalClosedForms cf = canonical_closed_forms(f);
        const Numeric n = numeric(f);
        EXPECT_NEAR(n.neg.n_global, cf.n_global, 1e-9);
        EXPECT_NEAR(n.neg.e_partial.at(3), cf.e3, 1e-9);
        EXPECT_NEAR(n.neg.e_partial.at(2), cf.e2, 1e-9);
        EXPECT_NEAR(n.neg.pair_split.at(1), cf.e2_ab, 1e-9);
        EXPECT_NEAR(n.neg.pair_split.at(2), cf.e2_ac, 1e-9);
        EXPECT_NEAR(n.tangles.tau_focus, cf.tau_focus, 1e-9);
        EXPECT_NEAR(n.tangles.tau_pairs.at(1), cf.tau_ab, 1e-9);
        EXPECT_NEAR(n.tangles.tau_pairs.at(2), cf.tau_ac, 1e-9);
        EXPECT_NEAR(*n.tangles.tau3, cf.tau3, 1e-9);
    }
}

// N_G and the tangles do not see phi; E_3 does once |100> carries an imaginary part.
TEST(Canonical, ComplexPhaseMovesOnlyThePartialNegativities) {
    RandomStream rng(67);
    double worst_e3 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const CanonicalForm3Q f = random_form(rng, 0.3 + 0.05 * trial);
        const CanonicalClosedForms cf = canonical_closed_forms(f);
        const Numeric n = numeric(f);
        EXPECT_NEAR(n.neg.n_global, cf.n_global, 1e-9);
        EXPECT_NEAR(*n.tangles.tau3, cf.tau3, 1e-9);
        EXPECT_NEAR(n.tangles.tau_pairs.at(1), cf.tau_ab, 1e-9);
        worst_e3 = std::max(worst_e3, std::abs(n.neg.e_partial.at(3) - cf.e3));
    }
    EXPECT_GT(worst_e3, 1e-3);
}

TEST(Canonical, ProductAcrossFocusHasZeroNegativities) {
    const CanonicalClosedForms cf = canonical_closed_forms({1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(cf.n_global, 0.0);
    EXPECT_EQ(cf.e3, 0.0);
    EXPECT_EQ(cf.e2, 0.0);
}

TEST(Canonical, ReducesRandomStatesWithSmallResidual) {
    RandomStream rng(71);
    const auto layout = SubsystemLayout::qubits(3);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = haar_random_pure(layout, rng);
        const CanonicalizationResult result = canonicalize3(psi);
        ASSERT_FALSE(result.branches.empty());
        EXPECT_LE(result.branches.size(), 2u);
        EXPECT_LT(result.residual, 1e-10);
        const double ng = global_negativity(outer(psi), 0);
        const double tau3 = *three_tangle(psi).tau3;
        for (const CanonicalBranch& b : result.branches) {
            EXPECT_NO_THROW(b.form.validate());
            const PureState y = apply_branch(psi, b);
            EXPECT_NEAR(fidelity(y, build_canonical_state(b.form)), 1.0, 1e-12);
            EXPECT_GE(b.mixing.alpha.real(), 0.0);
            EXPECT_EQ(b.mixing.alpha.imag(), 0.0);
            const CanonicalClosedForms cf = canonical_closed_forms(b.form);
            EXPECT_NEAR(cf.n_global, ng, 1e-9);
            EXPECT_NEAR(cf.tau3, tau3, 1e-9);
        }
        for (std::size_t i = 1; i < result.branches.size(); ++i) {
            EXPECT_GE(result.branches[i - 1].form.a + 1e-12, result.branches[i].form.a);
        }
    }
}

TEST(Canonical, CanonicalStatesAreFixedPoints) {
    RandomStream rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        const CanonicalForm3Q f = random_form(rng, 2.0 * std::numbers::pi * rng.uniform());
        const CanonicalizationResult result = canonicalize3(build_canonical_state(f));
        bool found = false;
        for (const auto& b : result.branches) {
            const double dphi = std::abs(b.form.phi - f.phi);
            found = found || (std::abs(b.form.a - f.a) < 1e-8 && std::abs(b.form.b - f.b) < 1e-8 &&
                              std::abs(b.form.c - f.c) < 1e-8 && std::abs(b.form.d - f.d) < 1e-8 &&
                              std::abs(b.form.f - f.f) < 1e-8 &&
                              std::min(dphi, 2.0 * std::numbers::pi - dphi) < 1e-6);
        }
        EXPECT_TRUE(found) << "trial " << trial;
    }
}

TEST(Canonical, LocalUnitariesDoNotChangeTheForms) {
    RandomStream rng(79);
    const auto layout = SubsystemLayout::qubits(3);
    for (int trial = 0; trial < 30; ++trial) {
        const PureState psi = haar_random_pure(layout, rng);
        PureState moved = psi;
        for (int q = 0; q < 3; ++q) {
            moved = apply_local_unitary(moved, LocalUnitary(q, haar_unitary(2, rng)));
        }
        const auto a = canonicalize3(psi);
        const auto b = canonicalize3(moved);
        ASSERT_EQ(a.branches.size(), b.branches.size());
        for (std::size_t i = 0; i < a.branches.size(); ++i) {
            EXPECT_NEAR(a.branches[i].form.a, b.branches[i].form.a, 1e-8);
            EXPECT_NEAR(a.branches[i].form.f, b.branches[i].form.f, 1e-8);
            EXPECT_NEAR(a.branches[i].form.b, b.branches[i].form.b, 1e-8);
        }
    }
}

TEST(Canonical, DegenerateInputs) {
    const auto layout = SubsystemLayout::qubits(3);
    for (std::size_t k = 0; k < 8; ++k) {
        const CanonicalizationResult r = canonicalize3(PureState::basis(layout, k));
        ASSERT_EQ(r.branches.size(), 1u) << k;
        EXPECT_NEAR(canonical_closed_forms(r.branches[0].form).n_global, 0.0, 1e-12);
    }
    // Both singular mixings of a GHZ-like state swap the roles of |000> and |111>.
    const CanonicalizationResult ghz = canonicalize3(ghz_like_state(std::sqrt(0.5)));
    ASSERT_EQ(ghz.branches.size(), 1u);
    EXPECT_NEAR(ghz.branches[0].form.a, std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(ghz.branches[0].form.f, std::sqrt(0.5), 1e-12);
    const CanonicalizationResult lopsided = canonicalize3(ghz_like_state(0.6));
    ASSERT_EQ(lopsided.branches.size(), 2u);
    EXPECT_NEAR(lopsided.branches[0].form.a, 0.8, 1e-12);
    EXPECT_NEAR(lopsided.branches[0].form.f, 0.6, 1e-12);
    EXPECT_NEAR(lopsided.branches[1].form.a, 0.6, 1e-12);
    EXPECT_NEAR(lopsided.branches[1].form.f, 0.8, 1e-12);
}

TEST(Canonical, MixingThatLeavesARegularSliceIsRejected) {
    CVector v = CVector::Zero(8);
    v[0] = v[3] = v[4] = v[7] = 0.5;
    const PureState psi(SubsystemLayout::qubits(3), v);
    EXPECT_THROW(canonicalize_with_mixing(psi, {Complex(1.0), Complex(0.0)}), NumericalError);
    RandomStream rng(1);
    EXPECT_THROW(canonicalize3(haar_random_pure(SubsystemLayout::qubits(4), rng)), ArgumentError);
}

TEST(Canonical, CoherenceDeltaVanishesOnRealCanonicalStates) {
    RandomStream rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const CanonicalForm3Q f = random_form(rng, trial % 2 == 0 ? 0.0 : std::numbers::pi);
        EXPECT_NEAR(coherence_delta(build_canonical_state(f)), 0.0, 1e-9);
    }
}

TEST(Canonical, RotationProfileMatchesPipeline) {
    for (double a : {0.3, std::sqrt(0.5), 0.9}) {
        for (int i = 0; i <= 10; ++i) {
            const double alpha = std::numbers::pi * i / 10.0;
            const PureState psi = apply_local_unitary(ghz_like_state(a), rotation_unitary(2, alpha));
            const NegativityReport r = negativity_report(outer(psi), 0);
            const RotationProfile p = ghz_rotation_profile(a, alpha);
            EXPECT_NEAR(r.e_partial.at(3), p.e3, 1e-10);
            EXPECT_NEAR(r.e_partial.at(2), p.e2, 1e-10);
        }
    }
    EXPECT_THROW(ghz_rotation_profile(1.0, 0.0), ArgumentError);
    EXPECT_THROW(ghz_like_state(0.0), ArgumentError);
}
