// Prox toolbox: closed forms vs the grid oracle
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include <cmath>

#include <gtest/gtest.h>

#include "blockopt/errors.hpp"
#include "blockopt/prox.hpp"
#include "blockopt/rng.hpp"
#include "blockopt/subdiff.hpp"

using namespace blockopt;

namespace {

std::function<ExtReal(double)> scaled_1d(const Atom& a, double t) {
    return [a, t](double u) {
        ExtReal v = a.value_1d(u);
        if (!v.finite) return ExtReal::infinite();
        return ExtReal::of(t * v.v);
    };
}

}  // namespace

TEST(Prox, ZeroAtomIsIdentity) {
    ProxResult r = prox(Atom::zero(), 1.0, Vec{5.0, -2.0});
    EXPECT_DOUBLE_EQ(r.point[0], 5.0);
    EXPECT_DOUBLE_EQ(r.point[1], -2.0);
}

TEST(Prox, L1SoftThresholdFrozenValue) {
    // grid-search oracle over u in [-10, 10], step 1e-5, minimizing
    // |u| + (u-3)^2/2 gives u = 2; frozen here and recomputed below
    ProxResult r = prox(Atom::l1(1.0), 1.0, Vec{3.0});
    EXPECT_NEAR(r.point[0], 2.0, 1e-12);
    double grid = prox_oracle_1d(scaled_1d(Atom::l1(1.0), 1.0), 3.0, -10.0, 10.0, 1e-5);
    EXPECT_NEAR(grid, 2.0, 1e-5);
}

TEST(Prox, NonnegProjection) {
    ProxResult r = prox(Atom::ind_nonneg(), 1.0, Vec{-1.0, 2.0});
    EXPECT_DOUBLE_EQ(r.point[0], 0.0);
    EXPECT_DOUBLE_EQ(r.point[1], 2.0);
}

TEST(Prox, SqL2ScalingConvention) {
    // sq_l2(lambda) is u -> lambda*||u||^2, so the scaled prox is x/(1+2*t*lambda)
    ProxResult r = prox(Atom::sq_l2(1.5), 2.0, Vec{6.0});
    EXPECT_NEAR(r.point[0], 6.0 / 7.0, 1e-14);
}

TEST(Prox, BoxClamps) {
    Atom box = Atom::ind_box(Vec{-1.0, 0.0}, Vec{1.0, 2.0});
    ProxResult r = prox(box, 0.7, Vec{-3.0, 1.5});
    EXPECT_DOUBLE_EQ(r.point[0], -1.0);
    EXPECT_DOUBLE_EQ(r.point[1], 1.5);
}

TEST(Prox, RejectsNonPositiveT) {
    EXPECT_THROW(prox(Atom::l1(1.0), 0.0, Vec{1.0}), InputError);
    EXPECT_THROW(prox(Atom::l1(1.0), -2.0, Vec{1.0}), InputError);
}

TEST(Atom, BoxRejectsInvertedBounds) {
    EXPECT_THROW(Atom::ind_box(Vec{1.0}, Vec{0.0}), InputError);
    EXPECT_THROW(Atom::l1(-0.1), InputError);
}

TEST(Prox, ObjectiveFieldMatchesRecomputation) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = rng.uniform_vec(5, -3.0, 3.0);
        double t = rng.uniform(0.1, 2.0);
        ProxResult r = prox(Atom::l1(0.7), t, x);
        double recomputed = t * Atom::l1(0.7).value(r.point).v + 0.5 * (r.point - x).sqnorm();
        EXPECT_NEAR(r.objective, recomputed, 1e-12 * (1.0 + std::fabs(recomputed)));
    }
}

TEST(ProxOracle1d, IdentityAndFrozenCases) {
    auto zero = [](double) { return ExtReal::of(0.0); };
    EXPECT_NEAR(prox_oracle_1d(zero, 1.5, -10.0, 10.0, 1e-5), 1.5, 1e-5);

    auto absf = [](double u) { return ExtReal::of(std::fabs(u)); };
    EXPECT_NEAR(prox_oracle_1d(absf, 3.0, -10.0, 10.0, 1e-5), 2.0, 1e-5);

    auto sq = [](double u) { return ExtReal::of(u * u); };
    // analytic: argmin u^2 + (u-3)^2/2 = x/3 = 1
    EXPECT_NEAR(prox_oracle_1d(sq, 3.0, -10.0, 10.0, 1e-5), 1.0, 1e-5);
}

TEST(ProxOracle1d, PreconditionErrors) {
    auto zero = [](double) { return ExtReal::of(0.0); };
    EXPECT_THROW(prox_oracle_1d(zero, 0.0, 1.0, -1.0, 1e-5), InputError);   // lo >= hi
    EXPECT_THROW(prox_oracle_1d(zero, 0.0, -1.0, 1.0, 0.5), InputError);    // step too coarse
    auto inf = [](double) { return ExtReal::infinite(); };
    EXPECT_THROW(prox_oracle_1d(inf, 0.0, -1.0, 1.0, 1e-3), InputError);    // empty domain
}

TEST(ProxOracle1d, TiesBreakTowardSmallestU) {
    // f(u) = -|u| has two grid minimizers at the window ends; expect the left one
    auto f = [](double u) { return ExtReal::of(-std::fabs(u)); };
    double u = prox_oracle_1d(f, 0.0, -1.0, 1.0, 0.1);
    EXPECT_DOUBLE_EQ(u, -1.0);
}

TEST(ProxOracle1d, AgreesWithClosedFormsOnRandomInstances) {
    Rng rng(22);
    std::vector<Atom> atoms = {Atom::zero(), Atom::l1(0.8), Atom::sq_l2(0.6),
                               Atom::ind_nonneg(), Atom::ind_box(Vec{-0.5}, Vec{1.25})};
    for (const Atom& a : atoms) {
        for (int trial = 0; trial < 20; ++trial) {
            double t = rng.uniform(0.1, 3.0);
            double x = rng.uniform(-3.0, 3.0);
            double closed = prox(a, t, Vec{x}).point[0];
            double grid = prox_oracle_1d(scaled_1d(a, t), x, 1e-4);
            EXPECT_NEAR(closed, grid, 2e-4) << a.describe() << " t=" << t << " x=" << x;
        }
    }
}

TEST(Prox, FirmNonexpansivenessOnRandomPairs) {
    Rng rng(23);
    std::vector<Atom> atoms = {Atom::l1(1.2), Atom::sq_l2(0.4), Atom::ind_nonneg(),
                               Atom::ind_box(Vec{-1.0, -1.0, -1.0}, Vec{1.0, 0.5, 2.0})};
    for (const Atom& a : atoms) {
        for (int trial = 0; trial < 50; ++trial) {
            double t = rng.uniform(0.05, 4.0);
            Vec x1 = rng.uniform_vec(3, -4.0, 4.0);
            Vec x2 = rng.uniform_vec(3, -4.0, 4.0);
            double lhs = (prox(a, t, x1).point - prox(a, t, x2).point).norm();
            EXPECT_LE(lhs, (x1 - x2).norm() + 1e-10) << a.describe();
        }
    }
}

TEST(Prox, OutputSatisfiesSubdifferentialInclusion) {
    // (x - u)/t must land in the atom's subdifferential at u
    Rng rng(24);
    std::vector<Atom> atoms = {Atom::zero(), Atom::l1(0.9), Atom::sq_l2(1.1),
                               Atom::ind_nonneg(), Atom::ind_box(Vec{0.0, 0.0}, Vec{1.0, 1.0})};
    for (const Atom& a : atoms) {
        std::size_t dim = a.tag() == AtomTag::ind_box ? 2 : 4;
        for (int trial = 0; trial < 30; ++trial) {
            double t = rng.uniform(0.1, 2.0);
            Vec x = rng.uniform_vec(dim, -2.0, 2.0);
            Vec u = prox(a, t, x).point;
            Vec g = (x - u) * (1.0 / t);
            StructuredFn f{a, std::nullopt};
            EXPECT_TRUE(membership(f, u, g, 1e-8)) << a.describe();
        }
    }
}

TEST(ProxOptimality, SampledMinimalityCheck) {
    Rng rng(25);
    // the prox output always passes
    Vec x{1.5, -2.0, 0.3};
    Vec u = prox(Atom::l1(1.0), 1.0, x).point;
    Rng r1(1);
    EXPECT_TRUE(prox_objective_optimality(Atom::l1(1.0), 1.0, x, u, 200, r1));

    // u = x is not the minimizer when x is outside the atom's minimizer set
    Rng r2(2);
    EXPECT_FALSE(prox_objective_optimality(Atom::l1(1.0), 1.0, x, x, 200, r2));

    // zero atom: u = x is exactly the minimizer
    Rng r3(3);
    EXPECT_TRUE(prox_objective_optimality(Atom::zero(), 1.0, x, x, 200, r3));

    // indicator projection output passes; an infeasible u never does
    Vec xn{-0.4, 1.2, 0.1};
    Vec un = prox(Atom::ind_nonneg(), 1.0, xn).point;
    Rng r4(4);
    EXPECT_TRUE(prox_objective_optimality(Atom::ind_nonneg(), 1.0, xn, un, 200, r4));
    Rng r5(5);
    EXPECT_FALSE(prox_objective_optimality(Atom::ind_nonneg(), 1.0, xn, xn, 200, r5));
    (void)rng;
}

TEST(Atom, IndicatorValuesUseInfiniteMarker) {
    ExtReal v = Atom::ind_nonneg().value(Vec{-0.1, 2.0});
    EXPECT_FALSE(v.finite);
    ExtReal w = Atom::ind_nonneg().value(Vec{0.0, 2.0});
    EXPECT_TRUE(w.finite);
    EXPECT_DOUBLE_EQ(w.v, 0.0);
}
