#include <gtest/gtest.h>

#include <cmath>

#include "kwayneg/error.hpp"
#include "kwayneg/ghzw.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/tangle.hpp"

using namespace kwayneg;

namespace {

const double kQStar = 2.0 * std::pow(4.0, 2.0 / 3.0) / (3.0 + 2.0 * std::pow(4.0, 2.0 / 3.0));

}  // namespace

TEST(Ghzw, Endpoints) {
    const PureState ghz = build_ghzw({1.0, 1});
    EXPECT_NEAR(ghz[0].real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(ghz[7].real(), std::sqrt(0.5), 1e-15);
    const PureState w = build_ghzw({0.0, -1});
    for (int k : {1, 2, 4}) {
        EXPECT_NEAR(w[static_cast<std::size_t>(k)].real(), -std::sqrt(1.0 / 3.0), 1e-15);
    }
    EXPECT_NEAR(build_ghzw({0.3, 1}).amplitudes().norm(), 1.0, 1e-15);
}

TEST(Ghzw, ParameterValidation) {
    EXPECT_THROW(build_ghzw({1.2, 1}), ArgumentError);
    EXPECT_THROW(build_ghzw({-0.1, 1}), ArgumentError);
    EXPECT_THROW(build_ghzw({0.5, 0}), ArgumentError);
}

TEST(Ghzw, ClosedFormTangle) {
    EXPECT_NEAR(tau3_closed_form({1.0, 1}), 1.0, 1e-15);
    EXPECT_NEAR(tau3_closed_form({1.0, -1}), 1.0, 1e-15);
    EXPECT_NEAR(tau3_closed_form({0.0, 1}), 0.0, 1e-15);
    EXPECT_NEAR(tau3_closed_form({0.5, 1}), 0.25 + 8.0 * std::sqrt(6.0) / 9.0 * 0.25, 1e-15);
    EXPECT_NEAR(tau3_closed_form({0.5, 1}), 0.794331, 1e-6);
    EXPECT_LT(tau3_closed_form({0.62685, -1}), 1e-4);
}

TEST(Ghzw, ClosedFormAgreesWithTanglePipeline) {
    for (int sign : {1, -1}) {
        for (int i = 0; i <= 20; ++i) {
            const GhzwParams p{i / 20.0, sign};
            EXPECT_NEAR(*three_tangle(build_ghzw(p)).tau3, tau3_closed_form(p), 1e-9) << "q=" << p.q;
        }
    }
}

TEST(Ghzw, MinusZeroIsTheDoubleRootPoint) {
    const double q = ghzw_minus_zero();
    EXPECT_NEAR(q, kQStar, 1e-12);
    EXPECT_NEAR(q, 0.62685, 1e-5);
    const GhzwParams p{q, -1};
    EXPECT_NEAR(std::pow(p.x(), 3), 4.0, 1e-9);
    EXPECT_NEAR(3.0 * q / (2.0 * (1.0 - q)), std::pow(4.0, 2.0 / 3.0), 1e-9);
}

TEST(Ghzw, DoubleRootMixing) {
    const CanonicalizationResult r = ghzw_canonical_params({ghzw_minus_zero(), -1});
    ASSERT_EQ(r.branches.size(), 1u);
    const SliceMixing m = r.branches[0].mixing;
    EXPECT_NEAR(m.alpha.real(), 0.78327, 5e-5);
    EXPECT_NEAR(-m.beta.real(), 0.62169, 5e-5);
    EXPECT_NEAR(m.alpha.real() / -m.beta.real(), std::cbrt(2.0), 1e-9);
    const auto& f = r.branches[0].form;
    EXPECT_LT(f.f, 1e-7);
    const NegativityReport rep = negativity_report(outer(build_canonical_state(f)), 0);
    EXPECT_NEAR(rep.n_global, 0.9103, 5e-4);
    EXPECT_NEAR(rep.e_partial.at(2), rep.n_global, 1e-9);
    EXPECT_LT(std::abs(rep.e_partial.at(3)), 1e-3);
}

TEST(Ghzw, MixingRatios) {
    EXPECT_TRUE(ghzw_mixing_ratios({0.4, -1}).empty());
    EXPECT_EQ(ghzw_mixing_ratios({0.8, -1}).size(), 2u);
    EXPECT_EQ(ghzw_mixing_ratios({0.4, 1}).size(), 2u);
    EXPECT_EQ(ghzw_mixing_ratios({kQStar, -1}).size(), 1u);
    for (double q : {0.2, 0.5, 0.7, 0.9}) {
        for (int sign : {1, -1}) {
            const GhzwParams p{q, sign};
            const double x = p.x();
            for (double r : ghzw_mixing_ratios(p)) {
                // r^2 + x^2 r + x = 0 in this convention
                EXPECT_NEAR(r * r - x * x * r + x, 0.0, 1e-9 * (1.0 + x * x * x * x));
            }
        }
    }
}

TEST(Ghzw, CanonicalFormsReproduceTheClosedFormWhereRootsAreReal) {
    for (int sign : {1, -1}) {
        for (int i = 1; i < 100; ++i) {
            const GhzwParams p{i / 100.0, sign};
            if (sign < 0 && p.q < kQStar) {
                continue;
            }
            const SweepRow row = sweep_row(p);
            EXPECT_NEAR(row.e3_times_ng, row.tau3_formula, 1e-6) << "sign " << sign << " q=" << p.q;
        }
    }
}

TEST(Ghzw, GlobalNegativityIsInvariantUnderCanonicalization) {
    for (int sign : {1, -1}) {
        for (int i = 0; i <= 50; ++i) {
            const GhzwParams p{i / 50.0, sign};
            const double raw = global_negativity(outer(build_ghzw(p)), 0);
            for (const auto& b : ghzw_canonical_params(p).branches) {
                EXPECT_NEAR(global_negativity(outer(build_canonical_state(b.form)), 0), raw, 1e-8);
            }
        }
    }
}

TEST(Ghzw, EndpointRows) {
    const SweepRow ghz = sweep_row({1.0, -1});
    EXPECT_NEAR(ghz.n_global, 1.0, 1e-9);
    EXPECT_NEAR(ghz.e3, 1.0, 1e-9);
    EXPECT_NEAR(ghz.tau3_formula, 1.0, 1e-9);
    const SweepRow w = sweep_row({0.0, -1});
    EXPECT_NEAR(w.n_global, 2.0 * std::sqrt(2.0) / 3.0, 1e-10);
    EXPECT_NEAR(w.e2, w.n_global, 1e-10);
    EXPECT_NEAR(w.e3, 0.0, 1e-12);
    for (int sign : {1, -1}) {
        for (double q : {0.0, 1.0}) {
            EXPECT_LT(ghzw_canonical_params({q, sign}).residual, 1e-15);
        }
    }
}

TEST(Ghzw, RawStatesCarryThreeWayNegativity) {
    for (int sign : {1, -1}) {
        for (int i = 1; i < 100; ++i) {
            const DensityOperator rho = outer(build_ghzw({i / 100.0, sign}));
            EXPECT_GT(partial_kway_negativity(rho, 3, 0), 0.0) << "q=" << i / 100.0;
        }
    }
}

TEST(Ghzw, SweepGrid) {
    const std::vector<SweepRow> rows = sweep_family(-1, 0.0, 1.0, 101);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows.front().q, 0.0);
    EXPECT_EQ(rows.back().q, 1.0);
    // tau_3 also vanishes at the W endpoint; the interior zero lies past q = 0.3.
    std::size_t best = 30;
    for (std::size_t i = 30; i < rows.size(); ++i) {
        if (rows[i].tau3_formula < rows[best].tau3_formula) {
            best = i;
        }
    }
    EXPECT_NEAR(rows[best].q, 0.63, 1e-12);
    EXPECT_THROW(sweep_family(1, 0.5, 0.5, 3), ArgumentError);
    EXPECT_THROW(sweep_family(1, 0.0, 1.0, 1), ArgumentError);
    EXPECT_THROW(sweep_family(1, 0.0, 1.5, 3), ArgumentError);
}

TEST(Ghzw, ThreeWayNegativityFromAmplitudes) {
    EXPECT_EQ(e3_from_amplitudes(0.0, 0.5), 0.0);
    EXPECT_EQ(e3_from_amplitudes(0.5, 0.0), 0.0);
    EXPECT_THROW(e3_from_amplitudes(std::sqrt(0.5), std::sqrt(0.5)), DomainError);
    // The expression agrees with the canonical E_3 = 2 a f^2 / g only when b = f.
    const CanonicalForm3Q equal{0.6, 0.4, 0.4, 0.4, 0.4, 0.0};
    EXPECT_NEAR(e3_from_amplitudes(equal.a, equal.f), canonical_closed_forms(equal).e3, 1e-14);
    const CanonicalForm3Q unequal{0.6, 0.0, 0.48, 0.0, 0.64, 0.0};
    EXPECT_NEAR(e3_from_amplitudes(unequal.a, unequal.f), 1.024, 1e-12);
    EXPECT_NEAR(canonical_closed_forms(unequal).e3, 0.6144, 1e-12);
}
