#include "jordanlab/capelli.hpp"

#include <omp.h>

#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

void validate(const std::vector<Mat>& a, const std::vector<Mat>& x) {
    if (a.empty()) {
        throw JordanError(ErrorKind::InvalidArgument, "capelli_eval needs at least one matrix");
    }
    if (a.size() > kCapelliMaxArity) {
        throw JordanError(ErrorKind::SizeGuard, "capelli_eval is limited to n <= 9");
    }
    if (x.size() + 1 != a.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "capelli_eval needs n - 1 plug-ins");
    }
    const auto m = a.front().rows();
    for (const auto* group : {&a, &x}) {
        for (const auto& mat : *group) {
            if (mat.rows() != m || mat.cols() != m) {
                throw JordanError(ErrorKind::DimensionMismatch, "capelli_eval needs equal square matrices");
            }
        }
    }
}

// Depth-first walk over permutations sharing prefix products. `used` is a bitmask,
// `sign` the parity of the prefix.
void accumulate(const std::vector<Mat>& a, const std::vector<Mat>& x, std::size_t depth, unsigned used,
                double sign, const Mat& prefix, Mat& total) {
    const std::size_t n = a.size();
    for (std::size_t e = 0; e < n; ++e) {
        if ((used >> e) & 1U) {
            continue;
        }
        // Parity contribution: number of still-unused indices smaller than e.
        int smaller = 0;
        for (std::size_t f = 0; f < e; ++f) {
            smaller += ((used >> f) & 1U) ? 0 : 1;
        }
        const double s = (smaller % 2 == 0) ? sign : -sign;
        if (depth + 1 == n) {
            total.noalias() += s * (prefix * a[e]);
        } else {
            const Mat next = prefix * a[e] * x[depth];
            accumulate(a, x, depth + 1, used | (1U << e), s, next, total);
        }
    }
}

}  // namespace

Mat capelli_eval(const std::vector<Mat>& a, const std::vector<Mat>& x, Exec exec) {
    validate(a, x);
    const std::size_t n = a.size();
    const auto m = a.front().rows();
    if (n == 1) {
        return a.front();
    }
    // One partial sum per leading index, reduced in a fixed order for reproducibility.
    std::vector<Mat> partial(n, Mat::Zero(m, m));
    const auto first_choice = [&](std::size_t e) {
        const double sign = (e % 2 == 0) ? 1.0 : -1.0;
        accumulate(a, x, 1, 1U << e, sign, Mat(a[e] * x[0]), partial[e]);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t e = 0; e < static_cast<std::ptrdiff_t>(n); ++e) {
            first_choice(static_cast<std::size_t>(e));
        }
    } else {
        for (std::size_t e = 0; e < n; ++e) {
            first_choice(e);
        }
    }
    Mat total = Mat::Zero(m, m);
    for (const auto& p : partial) {
        total += p;
    }
    return total;
}

bool independence_capelli(const std::vector<Mat>& a, int trials, std::uint64_t seed, const Tolerance& tol) {
    if (a.empty()) {
        return true;
    }
    if (a.size() > kCapelliMaxArity) {
        throw JordanError(ErrorKind::SizeGuard, "independence_capelli is limited to n <= 9");
    }
    const auto m = a.front().rows();
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<Mat> x;
        for (std::size_t k = 0; k + 1 < a.size(); ++k) {
            x.push_back(rng.matrix(m, m));
        }
        if (max_abs(capelli_eval(a, x)) > tol.abs_eps) {
            return true;
        }
    }
    return false;
}

bool independence_gram(const std::vector<Mat>& a, const Tolerance& tol) {
    if (a.empty()) {
        return true;
    }
    const auto count = static_cast<Eigen::Index>(a.size());
    Mat stacked(a.front().size(), count);
    for (Eigen::Index k = 0; k < count; ++k) {
        const Mat& m = a[static_cast<std::size_t>(k)];
        if (m.size() != stacked.rows()) {
            throw JordanError(ErrorKind::DimensionMismatch, "independence_gram needs equal shapes");
        }
        stacked.col(k) = m.reshaped();
    }
    const Mat gram = stacked.adjoint() * stacked;
    Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
    const auto& values = eig.eigenvalues();
    const double top = values.maxCoeff();
    if (!(top > 0.0)) {
        return false;
    }
    // Gram eigenvalues are squared singular values; threshold them directly.
    return values.minCoeff() > tol.abs_eps * top;
}

}  // namespace jordanlab
