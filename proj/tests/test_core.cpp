// Core types: vectors, block pairs, operators, rng, dense factorizations
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "blockopt/dense.hpp"
#include "blockopt/errors.hpp"
#include "blockopt/linop.hpp"
#include "blockopt/problems.hpp"
#include "blockopt/rng.hpp"
#include "blockopt/vec.hpp"

using namespace blockopt;

namespace {

Eigen::MatrixXd to_eigen(const LinOp& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    return m;
}

}  // namespace

TEST(Vec, RejectsNonFinite) {
    EXPECT_THROW(Vec({1.0, std::nan("")}), InputError);
    EXPECT_THROW(Vec({std::numeric_limits<double>::infinity()}), InputError);
}

TEST(Vec, RejectsDimensionMismatchBeforeComputing) {
    Vec a{1.0, 2.0};
    Vec b{1.0, 2.0, 3.0};
    EXPECT_THROW(a.dot(b), InputError);
    EXPECT_THROW(a + b, InputError);
    EXPECT_THROW(a - b, InputError);
}

TEST(BlockNorm, ZeroAndPythagorean) {
    EXPECT_DOUBLE_EQ(block_norm({Vec{0.0, 0.0}, Vec{0.0}}), 0.0);
    EXPECT_DOUBLE_EQ(block_norm({Vec{3.0}, Vec{4.0}}), 5.0);
}

TEST(BlockNorm, MatchesElementwiseRecomputation) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = rng.uniform_vec(11, -5.0, 5.0);
        Vec y = rng.uniform_vec(7, -5.0, 5.0);
        double expected = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) expected += x[i] * x[i];
        for (std::size_t i = 0; i < y.size(); ++i) expected += y[i] * y[i];
        expected = std::sqrt(expected);
        double got = block_norm({x, y});
        EXPECT_NEAR(got, expected, 1e-15 * (1.0 + expected));
    }
}

TEST(BlockNorm, TriangleInequalityAndHomogeneity) {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        BlockPair a{rng.uniform_vec(6, -2.0, 2.0), rng.uniform_vec(9, -2.0, 2.0)};
        BlockPair b{rng.uniform_vec(6, -2.0, 2.0), rng.uniform_vec(9, -2.0, 2.0)};
        double lhs = block_norm(a + b);
        double rhs = block_norm(a) + block_norm(b);
        EXPECT_LE(lhs, rhs * (1.0 + 1e-12));
        double s = rng.uniform(-3.0, 3.0);
        EXPECT_NEAR(block_norm(a * s), std::fabs(s) * block_norm(a),
                    1e-12 * (1.0 + block_norm(a)));
    }
}

TEST(Rng, IdenticalSeedsProduceIdenticalStreams) {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    LinOp m1 = LinOp::random(5, 7, a);
    Rng c(42);
    for (int i = 0; i < 1000; ++i) c.next_u64();
    LinOp m2 = LinOp::random(5, 7, c);
    EXPECT_EQ(m1.coefficients(), m2.coefficients());  // bitwise
}

TEST(Rng, SplitStreamsAreIndependentOfParentConsumption) {
    Rng a(9), b(9);
    a.next_u64();
    a.next_u64();
    EXPECT_EQ(a.split(3).next_u64(), b.split(3).next_u64());
    EXPECT_NE(b.split(3).next_u64(), b.split(4).next_u64());
}

TEST(LinOp, AdjointConsistencyOnRandomPairs) {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        LinOp a = LinOp::random(13, 9, rng);
        for (int k = 0; k < 100; ++k) {
            Vec v = rng.uniform_vec(9, -1.0, 1.0);
            Vec w = rng.uniform_vec(13, -1.0, 1.0);
            double lhs = a.apply(v).dot(w);
            double rhs = v.dot(a.apply_adjoint(w));
            EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::fabs(lhs)));
        }
    }
}

TEST(OpNormEstimate, IdentityAndDiagonal) {
    Rng rng(12);
    EXPECT_NEAR(op_norm_estimate(LinOp::identity(3), 10, rng), 1.0, 1e-10);
    LinOp d = LinOp::diagonal(Vec{1.0, 2.0, 5.0});
    Rng rng2(12);
    EXPECT_NEAR(op_norm_estimate(d, 100, rng2), 5.0, 1e-8);
}

TEST(OpNormEstimate, ZeroMatrixGivesZero) {
    Rng rng(13);
    EXPECT_DOUBLE_EQ(op_norm_estimate(LinOp(4, 6), 50, rng), 0.0);
}

TEST(OpNormEstimate, MatchesSvdOracleAndStaysBelowFrobenius) {
    Rng rng(14);
    LinOp a = LinOp::random(10, 10, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    double sigma_true = svd.singularValues()(0);
    Rng rng2(15);
    double est = op_norm_estimate(a, 500, rng2);
    EXPECT_NEAR(est, sigma_true, 1e-6 * sigma_true);
    EXPECT_LE(est, a.frobenius_norm() * (1.0 + 1e-12));
}

TEST(OpNormEstimate, NondecreasingInIterationBudget) {
    Rng rng(16);
    LinOp a = LinOp::random(12, 8, rng);
    double prev = 0.0;
    for (std::size_t iters : {1u, 2u, 5u, 20u, 100u}) {
        Rng r(99);  // same start vector each time
        double est = op_norm_estimate(a, iters, r);
        EXPECT_GE(est, prev - 1e-13);
        prev = est;
    }
}

TEST(Dense, CholeskySolvesSpdSystems) {
    Rng rng(17);
    LinOp a = LinOp::random(8, 8, rng);
    LinOp spd = a.gram();  // A^T A, PD with probability 1
    for (std::size_t i = 0; i < 8; ++i) spd(i, i) += 0.5;
    auto chol = Cholesky::factorize(spd);
    ASSERT_TRUE(chol.has_value());
    Vec b = rng.uniform_vec(8, -1.0, 1.0);
    Vec x = chol->solve(b);

    Eigen::VectorXd xe = to_eigen(spd).ldlt().solve(
        Eigen::Map<const Eigen::VectorXd>(b.data(), 8));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(x[i], xe(i), 1e-10);
}

TEST(Dense, CholeskyRejectsIndefinite) {
    LinOp m(2, 2, {1.0, 2.0, 2.0, 1.0});  // eigenvalues 3, -1
    EXPECT_FALSE(Cholesky::factorize(m).has_value());
}

TEST(Dense, JacobiEigenMatchesEigenOracle) {
    Rng rng(18);
    LinOp a = LinOp::random(9, 6, rng);
    LinOp s = a.gram();
    SymEigen mine = sym_eigen(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(s));
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(mine.values[i], es.eigenvalues()(i), 1e-10 * (1.0 + es.eigenvalues()(5)));
    }
    // eigenvector residual ||S v - lambda v||
    for (std::size_t j = 0; j < 6; ++j) {
        Vec v(6);
        for (std::size_t i = 0; i < 6; ++i) v[i] = mine.vectors(i, j);
        Vec res = s.apply(v) - v * mine.values[j];
        EXPECT_LE(res.norm(), 1e-9 * (1.0 + std::fabs(mine.values[j])));
    }
}

TEST(Dense, SingularValueBoundsMatchSvd) {
    Rng rng(19);
    LinOp a = LinOp::random(12, 7, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    EXPECT_NEAR(largest_singular_value(a), svd.singularValues()(0), 1e-9);
    EXPECT_NEAR(smallest_singular_value(a), svd.singularValues()(6), 1e-9);
}

TEST(Dense, PinvSolveGivesMinNormSolution) {
    // singular but consistent system
    LinOp s(3, 3, {2.0, 0.0, 2.0, 0.0, 1.0, 1.0, 2.0, 1.0, 3.0});  // rank 2
    Vec b{2.0, 1.0, 3.0};
    Vec y = pinv_solve_spsd(s, b);
    EXPECT_LE((s.apply(y) - b).norm(), 1e-10);
    Eigen::MatrixXd se = to_eigen(s);
    Eigen::VectorXd ye =
        se.completeOrthogonalDecomposition().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), 3));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(y[i], ye(i), 1e-9);
}

TEST(RandomInstance, DeterministicPerSeed) {
    Rng a(42), b(42);
    auto i1 = random_instance("lasso", 6, 4, 8, a);
    auto i2 = random_instance("lasso", 6, 4, 8, b);
    const auto& l1 = std::get<LassoInstance>(i1);
    const auto& l2 = std::get<LassoInstance>(i2);
    EXPECT_EQ(l1.a.coefficients(), l2.a.coefficients());
    EXPECT_EQ(l1.c.entries(), l2.c.entries());
    EXPECT_GT(l1.lambda, 0.0);
}

TEST(RandomInstance, FeasibleAdmmPointSatisfiesConstraint) {
    Rng rng(43);
    auto inst = random_instance("feasible-admm", 5, 6, 4, rng);
    const auto& f = std::get<FeasibleAdmmInstance>(inst);
    Vec res = f.a1.apply(f.x1_feasible) + f.a2.apply(f.x2_feasible) - f.b;
    EXPECT_LE(res.norm(), 1e-12);
}

TEST(RandomInstance, UnsupportedKindIsDescriptiveError) {
    Rng rng(44);
    try {
        random_instance("nope", 2, 2, 2, rng);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("lasso"), std::string::npos);
    }
}
