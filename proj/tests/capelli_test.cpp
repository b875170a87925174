#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>
#include <omp.h>

#include "jordanlab/capelli.hpp"
#include "jordanlab/errors.hpp"
#include "jordanlab/kit.hpp"

using namespace jordanlab;

namespace {

Mat unit_matrix(Eigen::Index n, Eigen::Index r, Eigen::Index c) {
    Mat m = Mat::Zero(n, n);
    m(r, c) = 1.0;
    return m;
}

// Direct permutation sum with the sign from an inversion count.
Mat reference_capelli(const std::vector<Mat>& a, const std::vector<Mat>& x) {
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    Mat total = Mat::Zero(a[0].rows(), a[0].cols());
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            for (std::size_t j = i + 1; j < perm.size(); ++j) {
                inversions += perm[i] > perm[j] ? 1 : 0;
            }
        }
        Mat term = a[perm[0]];
        for (std::size_t k = 1; k < perm.size(); ++k) {
            term = term * x[k - 1] * a[perm[k]];
        }
        total += (inversions % 2 == 0 ? 1.0 : -1.0) * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::vector<Mat> random_tuple(Rng& rng, std::size_t count, Eigen::Index n) {
    std::vector<Mat> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(rng.matrix(n, n));
    }
    return out;
}

Mat from_coords(const Vec& v, std::size_t n) { return coords_to_matrix(v, n); }

}  // namespace

TEST(Capelli, DegreeTwo) {
    Rng rng(1);
    const auto a = random_tuple(rng, 2, 3);
    const auto x = random_tuple(rng, 1, 3);
    EXPECT_LE(max_abs(capelli_eval(a, x) - (a[0] * x[0] * a[1] - a[1] * x[0] * a[0])), 1e-12);
    EXPECT_LE(max_abs(capelli_eval({a[0], a[0]}, x)), 1e-12);
    EXPECT_LE(max_abs(capelli_eval({unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)}, {unit_matrix(2, 0, 1)}) -
                      unit_matrix(2, 0, 1)),
              0.0);
}

TEST(Capelli, MatchesPermutationSum) {
    Rng rng(2);
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto a = random_tuple(rng, n, 3);
        const auto x = random_tuple(rng, n - 1, 3);
        const Mat expected = reference_capelli(a, x);
        EXPECT_LE(max_abs(capelli_eval(a, x, Exec::Serial) - expected), 1e-9 * (1.0 + max_abs(expected)));
        EXPECT_LE(max_abs(capelli_eval(a, x, Exec::Parallel) - expected), 1e-9 * (1.0 + max_abs(expected)));
    }
}

TEST(Capelli, SerialAndParallelAgree) {
    Rng rng(3);
    omp_set_num_threads(4);
    const auto a = random_tuple(rng, 7, 3);
    const auto x = random_tuple(rng, 6, 3);
    const Mat serial = capelli_eval(a, x, Exec::Serial);
    EXPECT_LE(max_abs(capelli_eval(a, x, Exec::Parallel) - serial), 1e-9 * (1.0 + max_abs(serial)));
}

TEST(Capelli, AlternatingAndMultilinear) {
    Rng rng(4);
    auto a = random_tuple(rng, 3, 3);
    const auto x = random_tuple(rng, 2, 3);
    const Mat base = capelli_eval(a, x);
    auto swapped = a;
    std::swap(swapped[0], swapped[2]);
    EXPECT_LE(max_abs(capelli_eval(swapped, x) + base), 1e-11);

    const Mat extra = rng.matrix(3, 3);
    const Complex scale(0.5, -2.0);
    auto combined = a;
    combined[1] = scale * a[1] + extra;
    auto other = a;
    other[1] = extra;
    EXPECT_LE(max_abs(capelli_eval(combined, x) - (scale * base + capelli_eval(other, x))), 1e-10);

    auto x2 = x;
    x2[0] = scale * x[0];
    EXPECT_LE(max_abs(capelli_eval(a, x2) - scale * base), 1e-10);
}

TEST(Capelli, SizeGuard) {
    std::vector<Mat> a(10, Mat::Identity(2, 2));
    std::vector<Mat> x(9, Mat::Identity(2, 2));
    try {
        (void)capelli_eval(a, x);
        FAIL() << "expected SizeGuard";
    } catch (const JordanError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SizeGuard);
    }
}

TEST(Independence, Examples) {
    const std::vector<Mat> pair = {Mat::Identity(2, 2), unit_matrix(2, 0, 1)};
    EXPECT_TRUE(independence_capelli(pair, 8, 1));
    EXPECT_TRUE(independence_gram(pair));
    Rng rng(5);
    const Mat a = rng.matrix(3, 3);
    EXPECT_FALSE(independence_capelli({a, 2.0 * a}, 8, 1));
    EXPECT_FALSE(independence_gram({a, 2.0 * a}));
    EXPECT_TRUE(independence_gram({}));
}

TEST(Independence, AgreesWithGramOracle) {
    Rng rng(6);
    int disagreements = 0;
    for (int t = 0; t < 200; ++t) {
        const Eigen::Index n = t % 2 == 0 ? 3 : 4;
        const std::size_t count = 2 + rng.index(3);
        auto tuple = random_tuple(rng, count, n);
        if (t % 5 == 0) {
            tuple.back() = Complex(0.3, 0.1) * tuple[0] - 2.0 * tuple[1];
        }
        disagreements += independence_capelli(tuple, 8, derive_seed(6, t)) == independence_gram(tuple) ? 0 : 1;
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(Independence, KitCommutatorTriple) {
    for (const char* name : {"matrix:3", "matrix:4"}) {
        const auto z = make_algebra(name);
        const auto kit = build_kit(z);
        const Mat u = from_coords(kit.u, z.order);
        ASSERT_TRUE(kit.v) << name;
        const Mat v = from_coords(*kit.v, z.order);
        const auto comm = [](const Mat& p, const Mat& q) -> Mat { return p * q - q * p; };
        const std::vector<Mat> triple = {comm(u * u, v), comm(u, v * v), comm(u, v)};
        EXPECT_TRUE(independence_gram(triple)) << name;
        EXPECT_TRUE(independence_capelli(triple, 8, 1)) << name;
    }
}
