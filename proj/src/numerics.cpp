#include "jordanlab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "jordanlab/errors.hpp"

namespace jordanlab {

Tolerance::Tolerance(double eps, int trials) : abs_eps(eps), norm_trials(trials) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw JordanError(ErrorKind::InvalidArgument, "tolerance must be positive and finite");
    }
    if (trials < 0) {
        throw JordanError(ErrorKind::InvalidArgument, "norm_trials must be non-negative");
    }
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b, const Tolerance& tol) {
    if (a.rows() != b.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "solve_linear: row count does not match rhs");
    }
    Vec x;
    if (a.cols() == 0) {
        x = Vec::Zero(0);
    } else {
        Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
        cod.setThreshold(tol.abs_eps);
        x = cod.solve(b);
    }
    const double bound = tol.abs_eps * (1.0 + max_abs(b));
    const double residual = a.cols() == 0 ? max_abs(b) : max_abs(Vec(a * x - b));
    if (!(residual <= bound)) {
        return std::nullopt;
    }
    return x;
}

namespace {

Mat kernel_below(const Mat& a, double threshold, bool relative) {
    const Eigen::Index n = a.cols();
    if (n == 0) {
        return Mat(0, 0);
    }
    if (a.rows() == 0) {
        return Mat::Identity(n, n);
    }
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double cut = relative ? threshold * sigma_max : threshold;
    Eigen::Index rank = 0;
    if (sigma_max > 0.0) {
        while (rank < sigma.size() && sigma(rank) > cut) {
            ++rank;
        }
    }
    return svd.matrixV().rightCols(n - rank);
}

}  // namespace

Mat kernel_matrix(const Mat& a, const Tolerance& tol) { return kernel_below(a, tol.abs_eps, true); }

Mat kernel_matrix_absolute(const Mat& a, double threshold) { return kernel_below(a, threshold, false); }

std::vector<Vec> kernel_basis(const Mat& a, const Tolerance& tol) {
    const Mat k = kernel_matrix(a, tol);
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(k.cols()));
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
        out.emplace_back(k.col(c));
    }
    return out;
}

namespace {

// Rayleigh-style ratio ‖Av‖/‖v‖ after `iterations` steps of power iteration on A^H A.
double power_ratio(const Mat& a, Vec v, int iterations, double best_so_far) {
    double ratio = 0.0;
    double previous = -1.0;
    for (int it = 0; it < iterations; ++it) {
        const double vn = v.norm();
        if (vn == 0.0) {
            break;
        }
        v /= vn;
        Vec av = a * v;
        ratio = std::max(ratio, av.norm());
        if (std::abs(ratio - previous) <= 1e-15 * std::max(1.0, ratio) && ratio >= best_so_far) {
            break;
        }
        previous = ratio;
        v = a.adjoint() * av;
    }
    return ratio;
}

}  // namespace

double operator_norm_estimate(const Mat& a, int trials, std::uint64_t seed) {
    if (a.rows() != a.cols()) {
        throw JordanError(ErrorKind::DimensionMismatch, "operator_norm_estimate: matrix must be square");
    }
    const Eigen::Index n = a.cols();
    if (n == 0) {
        return 0.0;
    }
    Vec start = Vec::Ones(n);
    double estimate = power_ratio(a, start, 1000, 0.0);
    // A fixed start can be orthogonal to the top singular vector; seeded restarts cover that.
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        estimate = std::max(estimate, power_ratio(a, rng.vector(n), 6, estimate));
    }
    return estimate;
}

double span_residual(const Mat& orthonormal_basis, const Vec& v) {
    if (orthonormal_basis.cols() == 0) {
        return max_abs(v);
    }
    return max_abs(Vec(v - orthonormal_basis * (orthonormal_basis.adjoint() * v)));
}

Mat orthonormal_span(const Mat& m, const Tolerance& tol) {
    if (m.cols() == 0 || m.rows() == 0) {
        return Mat(m.rows(), 0);
    }
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    Eigen::Index rank = 0;
    if (sigma(0) > 0.0) {
        while (rank < sigma.size() && sigma(rank) > tol.abs_eps * sigma(0)) {
            ++rank;
        }
    }
    return svd.matrixU().leftCols(rank);
}

Mat columns_to_matrix(const std::vector<Vec>& columns, Eigen::Index rows) {
    Mat out(rows, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out.col(static_cast<Eigen::Index>(c)) = columns[c];
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

std::uint64_t hash_label(std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t Rng::index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

Vec Rng::vector(Eigen::Index n, double magnitude) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = magnitude * complex_normal();
    }
    return v;
}

Mat Rng::matrix(Eigen::Index rows, Eigen::Index cols, double magnitude) {
    Mat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = magnitude * complex_normal();
        }
    }
    return m;
}

Mat Rng::unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Mat> qr(matrix(n, n));
    return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace jordanlab
