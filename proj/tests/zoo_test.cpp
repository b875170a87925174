#include <gtest/gtest.h>

#include "jordanlab/errors.hpp"
#include "jordanlab/zoo.hpp"

using namespace jordanlab;

namespace {

Complex inner(const Vec& a, const Vec& b) {
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        sum += a(i) * std::conj(b(i));
    }
    return sum;
}

// ā = conj(a0)·1 − Σ conj(ak) fk, written out coordinatewise. The Jordan star
// 2⟨1|a⟩1 − ā then reduces to plain coordinate conjugation.
Vec spin_bar_reference(const Vec& a) {
    Vec out = -a.conjugate();
    out(0) = std::conj(a(0));
    return out;
}

}  // namespace

TEST(MatrixJordan, Shape) {
    const auto z = matrix_jordan(3);
    EXPECT_EQ(z.dim(), 9u);
    EXPECT_EQ(center_basis(z.algebra).size(), 1u);
    Vec unit = Vec::Zero(9);
    unit(0) = unit(4) = unit(8) = 1.0;
    EXPECT_LE(max_abs(z.algebra.unit() - unit), 0.0);
    EXPECT_THROW(matrix_jordan(1), JordanError);
}

TEST(MatrixJordan, FrameExchangesMatchSandwich) {
    const auto z = matrix_jordan(3);
    EXPECT_LE(frame_residual(z.algebra, z.frame), 1e-12);
    Mat s = Mat::Zero(3, 3);
    s(0, 1) = s(1, 0) = s(2, 2) = 1.0;
    const Vec sv = matrix_to_coords(s);
    EXPECT_TRUE(is_symmetry(z.algebra, sv));
    Mat e11 = Mat::Zero(3, 3);
    e11(0, 0) = 1.0;
    const Mat expected = s * e11 * s;
    EXPECT_LE(max_abs(u_operator(z.algebra, sv) * matrix_to_coords(e11) - matrix_to_coords(expected)), 1e-15);
    EXPECT_NEAR(std::abs(expected(1, 1) - 1.0), 0.0, 0.0);
}

TEST(SpinFactor, ProductRules) {
    const auto z = spin_factor(4);
    const auto& alg = z.algebra;
    EXPECT_LE(max_abs(product(alg, alg.basis(1), alg.basis(2))), 0.0);
    EXPECT_LE(max_abs(product(alg, alg.unit(), alg.basis(1)) - alg.basis(1)), 0.0);
    EXPECT_LE(max_abs(product(alg, alg.basis(1), alg.basis(1)) - alg.unit()), 0.0);
    EXPECT_THROW(spin_factor(2), JordanError);
}

TEST(SpinFactor, SquareLawAndStar) {
    const auto z = spin_factor(6);
    const auto& alg = z.algebra;
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        const Vec a = rng.vector(6);
        const Vec a_bar = spin_bar_reference(a);
        EXPECT_LE(max_abs(spin_bar(a) - a_bar), 0.0);
        EXPECT_LE(max_abs(star(alg, a) - (2.0 * inner(alg.unit(), a) * alg.unit() - a_bar)), 1e-14);
        EXPECT_LE(max_abs(star(alg, a) - a.conjugate()), 1e-14);
        const Vec expected = 2.0 * inner(a, alg.unit()) * a - inner(a, a_bar) * alg.unit();
        EXPECT_LE(max_abs(product(alg, a, a) - expected), 1e-12);
    }
}

TEST(SpinFactor, Quadratic) {
    const auto z = spin_factor(5);
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const Vec a = rng.vector(5);
        Mat span(5, 2);
        span << z.algebra.unit(), a;
        EXPECT_LE(span_residual(orthonormal_span(span), product(z.algebra, a, a)), 1e-9);
    }
}

TEST(SpinFactor, Norm) {
    const auto z = spin_factor(4);
    EXPECT_NEAR(spin_norm(z, z.algebra.unit()), 1.0, 1e-15);
    EXPECT_NEAR(spin_norm(z, z.algebra.basis(1)), 1.0, 1e-15);
    // ‖a‖₂² = 2 and ⟨a|ā⟩ = −1 + i·conj(i) = 0, so ‖a‖² = 2 + √4.
    const Vec a = z.algebra.basis(1) + Complex(0.0, 1.0) * z.algebra.basis(2);
    EXPECT_NEAR(spin_norm(z, a), 2.0, 1e-14);
    // 1 + f1 is twice a projection.
    EXPECT_NEAR(spin_norm(z, z.algebra.unit() + z.algebra.basis(1)), 2.0, 1e-14);
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const Vec x = rng.vector(4);
        const double two = x.squaredNorm();
        const double expected = std::sqrt(two + std::sqrt(two * two - std::norm(inner(x, spin_bar_reference(x)))));
        EXPECT_NEAR(spin_norm(z, x), expected, 1e-12 * expected);
    }
    EXPECT_THROW((void)spin_norm(matrix_jordan(2), Vec::Zero(4)), JordanError);
}

TEST(Albert, ShapeAndAxioms) {
    const auto z = albert_algebra();
    EXPECT_EQ(z.dim(), 27u);
    EXPECT_EQ(center_basis(z.algebra).size(), 1u);
    EXPECT_LE(frame_residual(z.algebra, z.frame), 1e-12);
    for (const auto& r : check_axioms(z.algebra, 200, 5, Tolerance(1e-10))) {
        EXPECT_TRUE(r.pass) << r.check_name << " " << r.residual;
    }
    for (const auto& s : symmetry_catalog(z)) {
        EXPECT_TRUE(is_symmetry(z.algebra, s));
        const Mat us = u_operator(z.algebra, s);
        EXPECT_LE(homomorphism_residual(z.algebra, z.algebra, us), 1e-12);
    }
}

TEST(DirectSum, CentersAndProjections) {
    const auto z = direct_sum({matrix_jordan(2), matrix_jordan(3)});
    EXPECT_EQ(z.dim(), 13u);
    EXPECT_EQ(center_basis(z.algebra).size(), 2u);
    EXPECT_LE(max_abs(z.algebra.unit() - (central_projection(z, 0) + central_projection(z, 1))), 0.0);
    for (std::size_t k = 0; k < 2; ++k) {
        const Mat pi = coordinate_projection(z, k);
        EXPECT_TRUE(is_jordan_homomorphism(z.algebra, z.summands[k].algebra, pi));
        EXPECT_TRUE(is_star_map(z.algebra, z.summands[k].algebra, pi));
        EXPECT_LE(max_abs(pi * summand_embedding(z, k) - Mat::Identity(pi.rows(), pi.rows())), 0.0);
    }
}

TEST(FunctionAlgebra, AlbertPower) {
    const auto base = albert_algebra();
    const auto f = function_algebra(base, 2);
    EXPECT_EQ(f.dim(), 54u);
    EXPECT_EQ(center_basis(f.algebra).size(), 2u);
    const Mat c = constant_embedding(f);
    EXPECT_TRUE(is_jordan_homomorphism(base.algebra, f.algebra, c));
    EXPECT_TRUE(is_star_map(base.algebra, f.algebra, c));
}

TEST(FunctionAlgebra, SinglePointKeepsStructure) {
    const auto base = matrix_jordan(3);
    const auto f = function_algebra(base, 1);
    ASSERT_EQ(f.dim(), base.dim());
    const auto& lhs = f.algebra.structure();
    const auto& rhs = base.algebra.structure();
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        EXPECT_EQ(lhs[i].i, rhs[i].i);
        EXPECT_EQ(lhs[i].j, rhs[i].j);
        EXPECT_EQ(lhs[i].k, rhs[i].k);
        EXPECT_EQ(lhs[i].value, rhs[i].value);
    }
}

TEST(Registry, Names) {
    EXPECT_EQ(make_algebra("matrix:4").dim(), 16u);
    EXPECT_EQ(make_algebra("spin:6").dim(), 6u);
    EXPECT_EQ(make_algebra("sum:matrix:3+matrix:4").dim(), 25u);
    EXPECT_EQ(make_algebra("func:albert:2").dim(), 54u);
    EXPECT_EQ(make_algebra("sum:scalar+matrix:2").dim(), 5u);
    for (const char* bad : {"matrix:1", "spin:2", "nope", "func:albert:0", "sum:"}) {
        try {
            (void)make_algebra(bad);
            FAIL() << bad;
        } catch (const JordanError& e) {
            EXPECT_TRUE(e.kind() == ErrorKind::UnknownAlgebra || e.kind() == ErrorKind::InvalidArgument) << bad;
        }
    }
    EXPECT_FALSE(registry_patterns().empty());
}

TEST(Frames, EveryZooAlgebraVerifies) {
    for (const char* name : {"matrix:2", "matrix:5", "spin:4", "albert", "sum:matrix:3+spin:4"}) {
        const auto z = make_algebra(name);
        EXPECT_LE(frame_residual(z.algebra, z.frame), 1e-12) << name;
    }
}
