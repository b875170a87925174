#include <gtest/gtest.h>

#include "jordanlab/numerics.hpp"

using namespace jordanlab;

namespace {

double exact_norm(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

TEST(SolveLinear, IdentityReturnsRightHandSide) {
    Vec b(3);
    b << 1.0, 2.0, 3.0;
    auto x = solve_linear(Mat::Identity(3, 3), b);
    ASSERT_TRUE(x);
    EXPECT_LE(max_abs(*x - b), 1e-12);
}

TEST(SolveLinear, ZeroSystemGivesLeastNormSolution) {
    auto x = solve_linear(Mat::Zero(2, 2), Vec::Zero(2));
    ASSERT_TRUE(x);
    EXPECT_EQ(max_abs(*x), 0.0);
}

TEST(SolveLinear, InconsistentSystemHasNoSolution) {
    Vec b = Vec::Zero(2);
    b(0) = 1.0;
    EXPECT_FALSE(solve_linear(Mat::Zero(2, 2), b));
}

TEST(SolveLinear, UnderdeterminedPicksLeastNorm) {
    Mat a(1, 2);
    a << 1.0, 1.0;
    Vec b(1);
    b << 2.0;
    auto x = solve_linear(a, b);
    ASSERT_TRUE(x);
    EXPECT_NEAR(std::abs((*x)(0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((*x)(1) - 1.0), 0.0, 1e-12);
}

TEST(SolveLinear, RandomSolvableSystemsMeetBound) {
    Rng rng(7);
    const Tolerance tol;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rows = static_cast<Eigen::Index>(2 + rng.index(8));
        const auto cols = static_cast<Eigen::Index>(2 + rng.index(8));
        const Mat a = rng.matrix(rows, cols);
        const Vec b = a * rng.vector(cols);
        auto x = solve_linear(a, b, tol);
        ASSERT_TRUE(x) << "trial " << trial;
        EXPECT_LE(max_abs(a * *x - b), tol.abs_eps * (1.0 + max_abs(b)));
    }
}

TEST(KernelBasis, InjectiveHasEmptyKernel) { EXPECT_TRUE(kernel_basis(Mat::Identity(4, 4)).empty()); }

TEST(KernelBasis, ZeroRowHasFullKernel) {
    auto k = kernel_basis(Mat::Zero(1, 3));
    ASSERT_EQ(k.size(), 3u);
    const Mat q = columns_to_matrix(k, 3);
    EXPECT_LE(max_abs(q.adjoint() * q - Mat::Identity(3, 3)), 1e-12);
}

TEST(KernelBasis, RankOneMatrix) {
    Mat a(2, 2);
    a << 1.0, 1.0, 0.0, 0.0;
    auto k = kernel_basis(a);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_NEAR(std::abs(k[0](0) + k[0](1)), 0.0, 1e-12);
    EXPECT_NEAR(k[0].norm(), 1.0, 1e-12);
}

TEST(KernelBasis, RandomRankDeficientMatrices) {
    Rng rng(11);
    const Tolerance tol;
    for (int trial = 0; trial < 50; ++trial) {
        const Mat a = rng.matrix(6, 3) * rng.matrix(3, 8);
        auto k = kernel_basis(a, tol);
        ASSERT_EQ(k.size(), 5u);
        const Mat q = columns_to_matrix(k, 8);
        EXPECT_LE(max_abs(q.adjoint() * q - Mat::Identity(5, 5)), tol.abs_eps);
        EXPECT_LE(max_abs(a * q), 10 * tol.abs_eps * exact_norm(a));
    }
}

TEST(NormEstimate, Examples) {
    EXPECT_NEAR(operator_norm_estimate(Mat::Identity(5, 5), 20, 1), 1.0, 1e-9);
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    EXPECT_NEAR(operator_norm_estimate(d, 20, 1), 3.0, 1e-9);
    Mat nilpotent = Mat::Zero(2, 2);
    nilpotent(0, 1) = 1.0;
    EXPECT_GE(operator_norm_estimate(nilpotent, 20, 1), 1.0 - 1e-9);
}

TEST(NormEstimate, NeverExceedsExactNorm) {
    Rng rng(3);
    for (Eigen::Index n : {2, 5, 9, 13, 27, 54}) {
        const Mat a = rng.matrix(n, n);
        EXPECT_LE(operator_norm_estimate(a, 50, 4), exact_norm(a) + 1e-9) << "n = " << n;
    }
}

TEST(NormEstimate, MonotoneInTrials) {
    Rng rng(5);
    const Mat a = rng.matrix(12, 12);
    double previous = 0.0;
    for (int trials : {0, 1, 4, 16, 64, 256}) {
        const double value = operator_norm_estimate(a, trials, 9);
        EXPECT_GE(value, previous);
        previous = value;
    }
}

TEST(NormEstimate, DeterministicGivenSeed) {
    Rng rng(2);
    const Mat a = rng.matrix(10, 10);
    EXPECT_EQ(operator_norm_estimate(a, 32, 17), operator_norm_estimate(a, 32, 17));
}

TEST(ApproxZero, Threshold) {
    const Tolerance tol;
    EXPECT_TRUE(approx_zero(Vec::Zero(3), tol));
    Vec tiny = Vec::Zero(3);
    tiny(0) = 1e-12;
    EXPECT_TRUE(approx_zero(tiny, tol));
    Vec big = Vec::Zero(2);
    big(0) = 1e-6;
    EXPECT_FALSE(approx_zero(big, tol));
}

TEST(Seeds, DerivedSeedsAreStableAndDistinct) {
    EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
    EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
    EXPECT_EQ(hash_label("axioms"), hash_label("axioms"));
    EXPECT_NE(hash_label("axioms"), hash_label("kits"));
}

TEST(ToleranceTest, RejectsNonPositiveEpsilon) {
    EXPECT_ANY_THROW(Tolerance(0.0));
    EXPECT_ANY_THROW(Tolerance(1e-9, -1));
}
