// Basis-triple residual loops. Each has a serial reference path and an OpenMP
// path over the outermost basis index; both reduce with max, so results agree exactly.
#include <algorithm>

#include <omp.h>

#include "jordanlab/decompose.hpp"
#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

struct Scratch {
    Vec out;
    Vec tmp;
    Vec acc;
    explicit Scratch(Eigen::Index n) : out(Vec::Zero(n)), tmp(Vec::Zero(n)), acc(Vec::Zero(n)) {}
};

template <typename Body>
double max_over_outer(std::size_t count, Eigen::Index n, Exec exec, Body body) {
    double worst = 0.0;
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            Scratch scratch(n);
#pragma omp for schedule(dynamic) reduction(max : worst)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
                worst = std::max(worst, body(static_cast<std::size_t>(i), scratch));
            }
        }
    } else {
        Scratch scratch(n);
        for (std::size_t i = 0; i < count; ++i) {
            worst = std::max(worst, body(i, scratch));
        }
    }
    return worst;
}

// acc += scale · [p, b_a, b_z]
void add_associator(const JordanAlgebra& alg, const Vec& p, std::size_t a, std::size_t z, Complex scale,
                    Scratch& s) {
    basis_associator_into(alg, p, a, z, s.out, s.tmp);
    s.acc += scale * s.out;
}

}  // namespace

double associating_linear_residual(const JordanAlgebra& alg, const Mat& t, Exec exec) {
    if (t.rows() != alg.size() || t.cols() != alg.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "linear map does not act on " + alg.name());
    }
    const std::size_t n = alg.dim();
    const std::vector<Vec> columns = [&] {
        std::vector<Vec> c;
        for (std::size_t i = 0; i < n; ++i) {
            c.emplace_back(t.col(static_cast<Eigen::Index>(i)));
        }
        return c;
    }();
    return max_over_outer(n, alg.size(), exec, [&](std::size_t i, Scratch& s) {
        double worst = 0.0;
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                s.acc.setZero();
                add_associator(alg, columns[i], k, j, 1.0, s);
                add_associator(alg, columns[j], k, i, 1.0, s);
                worst = std::max(worst, max_abs(s.acc));
            }
        }
        return worst;
    });
}

double trace_associating_residual(const JordanAlgebra& alg, const BilinearMap& b, Exec exec) {
    if (b.dim() != alg.dim()) {
        throw JordanError(ErrorKind::DimensionMismatch, "bilinear map does not act on " + alg.name());
    }
    const std::size_t n = alg.dim();
    return max_over_outer(n, alg.size(), exec, [&](std::size_t x, Scratch& s) {
        double worst = 0.0;
        for (std::size_t y = x; y < n; ++y) {
            for (std::size_t z = y; z < n; ++z) {
                for (std::size_t a = 0; a < n; ++a) {
                    s.acc.setZero();
                    add_associator(alg, b.at(x, y), a, z, 1.0, s);
                    add_associator(alg, b.at(x, z), a, y, 1.0, s);
                    add_associator(alg, b.at(y, z), a, x, 1.0, s);
                    worst = std::max(worst, max_abs(s.acc));
                }
            }
        }
        return worst;
    });
}

double bresar_polarized_residual(const JordanAlgebra& alg, const BilinearMap& b, Exec exec) {
    if (b.dim() != alg.dim()) {
        throw JordanError(ErrorKind::DimensionMismatch, "bilinear map does not act on " + alg.name());
    }
    const std::size_t n = alg.dim();
    return max_over_outer(n, alg.size(), exec, [&](std::size_t x, Scratch& s) {
        double worst = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t a = 0; a < n; ++a) {
                s.acc.setZero();
                add_associator(alg, b.at(x, y), a, y, 2.0, s);
                add_associator(alg, b.at(y, y), a, x, 1.0, s);
                worst = std::max(worst, max_abs(s.acc));
            }
        }
        return worst;
    });
}

}  // namespace jordanlab
