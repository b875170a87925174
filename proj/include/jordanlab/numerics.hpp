#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace jordanlab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Single tolerance knob threaded through every check.
struct Tolerance {
    double abs_eps = 1e-9;
    int norm_trials = 2000;

    Tolerance() = default;
    Tolerance(double eps, int trials = 2000);
};

/// Max-modulus entry; 0 for empty input.
template <typename Derived>
[[nodiscard]] double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
[[nodiscard]] bool approx_zero(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol) {
    return max_abs(m) <= tol.abs_eps;
}

/// Least-norm solution of A x = b, or nullopt when the residual bound
/// ‖Ax − b‖∞ ≤ abs_eps·(1 + ‖b‖∞) cannot be met.
[[nodiscard]] std::optional<Vec> solve_linear(const Mat& a, const Vec& b, const Tolerance& tol = {});

/// Orthonormal basis (as columns) of the numerical null space.
[[nodiscard]] Mat kernel_matrix(const Mat& a, const Tolerance& tol = {});
[[nodiscard]] std::vector<Vec> kernel_basis(const Mat& a, const Tolerance& tol = {});
/// Null space for singular values at or below a fixed threshold.
[[nodiscard]] Mat kernel_matrix_absolute(const Mat& a, double threshold);

/// Lower estimate of the spectral norm: one converged power iteration
/// followed by `trials` short seeded restarts.
[[nodiscard]] double operator_norm_estimate(const Mat& a, int trials, std::uint64_t seed);

/// ‖v − QQ^H v‖∞ for Q with orthonormal columns.
[[nodiscard]] double span_residual(const Mat& orthonormal_basis, const Vec& v);

/// Orthonormal basis for the column span of m.
[[nodiscard]] Mat orthonormal_span(const Mat& m, const Tolerance& tol = {});

[[nodiscard]] Mat columns_to_matrix(const std::vector<Vec>& columns, Eigen::Index rows);

// Seeding and sampling.

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;
[[nodiscard]] std::uint64_t hash_label(std::string_view label) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi);
    std::size_t index(std::size_t n);
    Complex complex_normal() { return {normal(), normal()}; }
    Vec vector(Eigen::Index n, double magnitude = 1.0);
    Mat matrix(Eigen::Index rows, Eigen::Index cols, double magnitude = 1.0);
    /// Unitary matrix from the QR factor of a complex gaussian matrix.
    Mat unitary(Eigen::Index n);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace jordanlab
