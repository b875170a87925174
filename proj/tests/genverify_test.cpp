#include <gtest/gtest.h>

#include "jordanlab/errors.hpp"
#include "jordanlab/genverify.hpp"
#include "jordanlab/json_io.hpp"

using namespace jordanlab;

TEST(Generators, Deterministic) {
    const auto z = make_algebra("sum:matrix:3+matrix:4");
    EXPECT_EQ(random_element(z.algebra, 5), random_element(z.algebra, 5));
    EXPECT_NE(random_element(z.algebra, 5), random_element(z.algebra, 6));
    EXPECT_EQ(random_central(z, 5), random_central(z, 5));
    EXPECT_EQ(make_associating_map(z, 3).map, make_associating_map(z, 3).map);
    EXPECT_EQ(make_standard_preserver(z, 3).phi, make_standard_preserver(z, 3).phi);
}

TEST(Generators, CentralElements) {
    const auto m3 = matrix_jordan(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Vec c = random_central(m3, seed);
        EXPECT_LE(max_abs(c - c(0) * m3.algebra.unit()), 1e-15);
        const Vec inv = random_central_invertible(m3, seed);
        EXPECT_GT(max_abs(inv), 0.0);
        EXPECT_TRUE(jordan_inverse(m3.algebra, inv));
        const Vec sa = random_central(m3, seed, 1.0, true);
        EXPECT_LE(max_abs(star(m3.algebra, sa) - sa), 1e-15);
    }
}

TEST(Generators, InnerAutomorphisms) {
    for (const char* name : {"matrix:3", "spin:5", "albert", "sum:matrix:2+matrix:3"}) {
        const auto z = make_algebra(name);
        const Mat id = Mat::Identity(z.algebra.size(), z.algebra.size());
        EXPECT_EQ(random_inner_automorphism(z, 0, 1), id);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Mat j = random_inner_automorphism(z, 3, seed);
            EXPECT_LE(homomorphism_residual(z.algebra, z.algebra, j), 1e-10) << name;
            EXPECT_LE(star_map_residual(z.algebra, z.algebra, j), 1e-10) << name;
        }
        Rng rng(2);
        const Vec s = random_symmetry(z, rng);
        EXPECT_TRUE(is_symmetry(z.algebra, s)) << name;
        const Mat us = u_operator(z.algebra, s);
        EXPECT_LE(max_abs(us * us - id), 1e-10) << name;
    }
}

TEST(Generators, MatrixSymmetriesAreSandwiches) {
    const auto z = matrix_jordan(4);
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const Vec s = random_symmetry(z, rng);
        const Mat sm = coords_to_matrix(s, 4);
        EXPECT_LE(max_abs(Mat(sm * sm - Mat::Identity(4, 4))), 1e-10);
        const Mat b = rng.matrix(4, 4);
        EXPECT_LE(max_abs(u_operator(z.algebra, s) * matrix_to_coords(b) - matrix_to_coords(sm * b * sm)), 1e-10);
    }
}

TEST(Generators, EmptyCatalog) {
    try {
        (void)random_inner_automorphism(scalar_algebra(), 2, 1);
        FAIL() << "expected CatalogEmpty";
    } catch (const JordanError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CatalogEmpty);
    }
}

TEST(Generators, PositiveSamplesPassTheirChecks) {
    for (const char* name : {"matrix:3", "spin:4", "albert"}) {
        const auto z = make_algebra(name);
        EXPECT_TRUE(is_associating_linear(z.algebra, make_associating_map(z, 1).map)) << name;
        EXPECT_TRUE(trace_is_associating(z.algebra, make_associating_trace(z, 1).trace)) << name;
    }
    const auto m3 = matrix_jordan(3);
    const auto p = make_standard_preserver(m3, 2);
    const auto stats = opcomm_preservation_sampled(m3.algebra, m3.algebra, p.phi, 40, 3);
    EXPECT_EQ(stats.passed, stats.total);
}

TEST(Generators, AdversarialSamplesFailTheTarget) {
    const auto m2 = matrix_jordan(2);
    const auto non_assoc = make_adversarial(AdversarialKind::NonAssociating, m2, 1);
    EXPECT_FALSE(is_associating_linear(m2.algebra, non_assoc.map));
    EXPECT_GT(non_assoc.witness, 1e-6);

    const auto m3 = matrix_jordan(3);
    const auto broken = make_adversarial(AdversarialKind::BrokenJ, m3, 2);
    ASSERT_TRUE(broken.reference);
    EXPECT_GT(max_abs(broken.map - broken.reference->phi), 1e-6);

    for (const char* text : {"non_associating", "non_central_mu", "non_associating_trace", "spin_generic_bijection",
                             "broken_J"}) {
        EXPECT_EQ(to_string(adversarial_kind_from_string(text)), text);
    }
    EXPECT_THROW((void)adversarial_kind_from_string("nope"), JordanError);
}

TEST(Suites, RegistryAndErrors) {
    EXPECT_EQ(suite_names().size(), 13u);
    try {
        (void)run_suite("nope", {});
        FAIL() << "expected UnknownSuite";
    } catch (const JordanError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
    }
    GenConfig bad;
    bad.samples = 0;
    EXPECT_THROW(bad.validate(), JordanError);
    bad.samples = 1;
    bad.magnitude = -1.0;
    EXPECT_THROW(bad.validate(), JordanError);
}

TEST(Suites, ByteIdenticalReports) {
    GenConfig config;
    config.master_seed = 42;
    config.samples = 10;
    for (const char* name : {"axioms", "spin_commutant", "decompose_linear_roundtrip"}) {
        const auto first = canonical_dump(to_json(run_suite(name, config)));
        const auto second = canonical_dump(to_json(run_suite(name, config)));
        EXPECT_EQ(first, second) << name;
    }
}

TEST(Suites, CheapSuitesPass) {
    GenConfig config;
    config.samples = 20;
    for (const char* name : {"axioms", "topping", "spin_commutant", "capelli_agreement", "preserver_symmetric"}) {
        const auto report = run_suite(name, config);
        EXPECT_TRUE(report.passed()) << name;
        EXPECT_FALSE(report.records.empty()) << name;
    }
}
