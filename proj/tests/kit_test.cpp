#include <gtest/gtest.h>

#include "jordanlab/errors.hpp"
#include "jordanlab/kit.hpp"

using namespace jordanlab;

namespace {

Vec matrix_unit(std::size_t n, std::size_t r, std::size_t c) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n * n));
    v(static_cast<Eigen::Index>(r * n + c)) = 1.0;
    return v;
}

double record_residual(const std::vector<CheckRecord>& records, const std::string& name) {
    for (const auto& r : records) {
        if (r.check_name == name) {
            return r.residual;
        }
    }
    return -1.0;
}

}  // namespace

TEST(KitCase2, MatrixThree) {
    const auto z = matrix_jordan(3);
    const auto frame = matrix_case2_frame(3);
    const auto kit = build_kit_case2(z.algebra, frame);
    ASSERT_TRUE(kit.has_e2());
    EXPECT_LE(max_abs(kit.u - (matrix_unit(3, 0, 1) + matrix_unit(3, 1, 0))), 1e-15);
    EXPECT_LE(max_abs(product(z.algebra, kit.u, kit.u) - (matrix_unit(3, 0, 0) + matrix_unit(3, 1, 1))), 1e-15);
    EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-12);
    EXPECT_LE(max_abs(kit.e0 * z.algebra.unit() - z.algebra.unit()), 1e-12);
    const Mat up3 = u_operator(z.algebra, frame.p3);
    EXPECT_LE(max_abs(up3 * kit.u), 1e-15);
    EXPECT_LE(max_abs(up3 * product(z.algebra, kit.u, kit.u)), 1e-15);
}

TEST(KitCase2, LeftoverProjections) {
    for (std::size_t n : {4u, 5u, 7u}) {
        const auto z = matrix_jordan(n);
        const auto kit = build_kit_case2(z.algebra, matrix_case2_frame(n));
        EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-12) << n;
    }
}

TEST(KitCase2, Albert) {
    const auto z = albert_algebra();
    const auto kit = build_kit_case2(z.algebra, albert_case2_frame());
    EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-10);
    for (const auto& r : verify_kit(z.algebra, kit)) {
        EXPECT_TRUE(r.pass) << r.check_name << " " << r.residual;
    }
}

TEST(KitCase1, MatrixFour) {
    const auto z = matrix_jordan(4);
    const auto kit = build_kit_case1(z.algebra, matrix_case1_frame(4));
    ASSERT_TRUE(kit.has_e2());
    EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-12);
    EXPECT_LE(max_abs(*kit.e2 * product(z.algebra, kit.u, kit.u) - z.algebra.unit()), 1e-12);
    EXPECT_LE(max_abs(kit.e1 * z.algebra.unit()), 1e-12);
    EXPECT_LE(max_abs(kit.e1 * kit.u - z.algebra.unit()), 1e-12);
}

TEST(KitSpin, SpinFour) {
    const auto z = spin_factor(4);
    const auto& alg = z.algebra;
    const SpinFrame frame{0.5 * (alg.unit() + alg.basis(1)), 0.5 * (alg.unit() - alg.basis(1)), alg.basis(2)};
    const auto kit = build_kit_spin(alg, frame);
    EXPECT_FALSE(kit.has_e2());
    EXPECT_LE(max_abs(kit.u - alg.basis(2)), 0.0);
    EXPECT_LE(kronecker_residual(alg, kit), 1e-12);
    EXPECT_LE(max_abs(kit.e0 * alg.unit() - alg.unit()), 1e-12);
    EXPECT_LE(max_abs(kit.e1 * alg.basis(2) - alg.unit()), 1e-12);
}

TEST(KitSpin, RejectsBrokenFrame) {
    const auto z = spin_factor(4);
    const auto& alg = z.algebra;
    const SpinFrame frame{0.5 * (alg.unit() + alg.basis(1)), 0.5 * (alg.unit() - alg.basis(1)), alg.basis(1)};
    try {
        (void)build_kit_spin(alg, frame);
        FAIL() << "expected FrameInvalid";
    } catch (const JordanError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FrameInvalid);
    }
}

TEST(KitGlue, MatrixSum) {
    const auto z = make_algebra("sum:matrix:3+matrix:4");
    const auto kit = build_kit(z);
    ASSERT_TRUE(kit.has_e2());
    EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-12);
    const auto part0 = build_kit(z.summands[0]);
    const auto part1 = build_kit(z.summands[1]);
    EXPECT_LE(max_abs(coordinate_projection(z, 0) * kit.u - part0.u), 0.0);
    EXPECT_LE(max_abs(coordinate_projection(z, 1) * kit.u - part1.u), 0.0);
    EXPECT_LE(kronecker_residual(z.algebra, kit),
              std::max(kronecker_residual(z.summands[0].algebra, part0),
                       kronecker_residual(z.summands[1].algebra, part1)) +
                  1e-9);
}

TEST(KitGlue, SpinPartDropsE2) {
    const auto z = make_algebra("sum:matrix:3+spin:4");
    const auto kit = build_kit(z);
    EXPECT_FALSE(kit.has_e2());
    EXPECT_LE(kronecker_residual(z.algebra, kit), 1e-12);
}

TEST(Kit, OneDimensionalSummandRejected) {
    for (const char* name : {"scalar", "sum:scalar+matrix:2"}) {
        try {
            (void)build_kit(make_algebra(name));
            FAIL() << name;
        } catch (const JordanError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::FrameInvalid);
        }
    }
}

TEST(Kit, VerifyEveryZooKit) {
    for (const char* name : {"matrix:2", "matrix:3", "matrix:4", "matrix:6", "spin:3", "spin:4", "spin:6",
                             "sum:matrix:3+matrix:4", "sum:matrix:2+spin:5"}) {
        const auto z = make_algebra(name);
        for (int variant : {0, 1}) {
            const auto kit = build_kit(z, variant);
            for (const auto& r : verify_kit(z.algebra, kit, {}, 3)) {
                EXPECT_TRUE(r.pass) << name << " v" << variant << " " << r.check_name << " " << r.residual;
            }
            EXPECT_LE(record_residual(verify_kit(z.algebra, kit), "kit.norm.E0"), kKitNormBound);
        }
    }
}

TEST(Kit, PerturbationIsVisible) {
    const auto z = matrix_jordan(3);
    auto kit = build_kit(z);
    kit.e1 *= 1.01;
    const auto records = verify_kit(z.algebra, kit);
    EXPECT_NEAR(record_residual(records, "kit.kronecker"), 0.01, 1e-9);
}
