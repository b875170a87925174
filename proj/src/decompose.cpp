#include "jordanlab/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

double center_distance(const Mat& center, const Mat& columns) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        worst = std::max(worst, span_residual(center, columns.col(c)));
    }
    return worst;
}

struct QuadraticPart {
    Vec lambda;
    Mat mu;
};

// λ and μ of a standard-form trace read off with the kit. Without E2 the spin
// formulas apply and λ is zero.
QuadraticPart extract_quadratic(const JordanAlgebra& alg, const BilinearMap& b, const ElementaryKit& kit) {
    const Vec& w = kit.u;
    const Vec bww = b.eval(w, w);
    const Mat bw = b.partial(w);
    const Vec e1_bww = kit.e1 * bww;
    QuadraticPart out;
    out.mu = 2.0 * kit.e1 * bw - mult_operator(alg, e1_bww) * kit.e1;
    if (kit.has_e2()) {
        out.lambda = *kit.e2 * bww;
        out.mu -= 2.0 * mult_operator(alg, out.lambda) * kit.e1 * mult_operator(alg, w);
    } else {
        out.lambda = Vec::Zero(alg.size());
    }
    return out;
}

// ν(x,x) = E0(B(x,x)) − λ∘E0(x²) − μ(x)∘E0(x), given B(x,x), x², μ(x).
Vec nu_diagonal(const JordanAlgebra& alg, const ElementaryKit& kit, const Vec& lambda, const Vec& bxx,
                const Vec& x, const Vec& x_squared, const Vec& mu_x) {
    return kit.e0 * bxx - product(alg, lambda, kit.e0 * x_squared) - product(alg, mu_x, kit.e0 * x);
}

Vec basis_product_vector(const JordanAlgebra& alg, std::size_t i, std::size_t j) {
    Vec v = Vec::Zero(alg.size());
    for (const auto& [k, c] : alg.basis_product(i, j)) {
        v(static_cast<Eigen::Index>(k)) += c;
    }
    return v;
}

Mat checked_inverse(const Mat& phi, const Tolerance& tol) {
    if (phi.rows() != phi.cols()) {
        throw JordanError(ErrorKind::NotBijective, "map is not square");
    }
    Eigen::FullPivLU<Mat> lu(phi);
    lu.setThreshold(tol.abs_eps);
    if (!lu.isInvertible()) {
        throw JordanError(ErrorKind::NotBijective, "map is singular");
    }
    return lu.inverse();
}

bool matrix_invertible(const Mat& m, const Tolerance& tol) {
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(tol.abs_eps);
    return lu.isInvertible();
}

}  // namespace

// ---- BilinearMap ----

BilinearMap::BilinearMap(std::size_t dim)
    : dim_(dim), values_(dim * dim, Vec::Zero(static_cast<Eigen::Index>(dim))) {}

Vec BilinearMap::eval(const Vec& x, const Vec& y) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        const Complex xi = x(static_cast<Eigen::Index>(i));
        if (xi == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            const Complex c = xi * y(static_cast<Eigen::Index>(j));
            if (c != Complex{}) {
                out += c * values_[i * dim_ + j];
            }
        }
    }
    return out;
}

Mat BilinearMap::partial(const Vec& x) const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Mat out = Mat::Zero(n, n);
    for (std::size_t i = 0; i < dim_; ++i) {
        const Complex xi = x(static_cast<Eigen::Index>(i));
        if (xi == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            out.col(static_cast<Eigen::Index>(j)) += xi * values_[i * dim_ + j];
        }
    }
    return out;
}

double BilinearMap::symmetry_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            worst = std::max(worst, max_abs(Vec(at(i, j) - at(j, i))));
        }
    }
    return worst;
}

bool is_associating_linear(const JordanAlgebra& alg, const Mat& t, const Tolerance& tol) {
    return associating_linear_residual(alg, t) <= tol.abs_eps;
}

bool trace_is_associating(const JordanAlgebra& alg, const BilinearMap& b, const Tolerance& tol) {
    return trace_associating_residual(alg, b) <= tol.abs_eps;
}

double bresar_associative_residual(const ZooAlgebra& matrix_algebra, const BilinearMap& b, const Mat& x,
                                   const Mat& y) {
    if (matrix_algebra.family != Family::Matrix) {
        throw JordanError(ErrorKind::InvalidArgument, "associative identity needs a matrix algebra");
    }
    const std::size_t n = matrix_algebra.order;
    const Mat x2 = x * x;
    const Vec vx = matrix_to_coords(x);
    const Vec vx2 = matrix_to_coords(x2);
    auto bm = [&](const Vec& a, const Vec& c) { return coords_to_matrix(b.eval(a, c), n); };
    const Mat b00 = bm(vx, vx);
    const Mat b01 = bm(vx, vx2);
    const Mat b10 = bm(vx2, vx);
    const Mat b11 = bm(vx2, vx2);
    const Mat one = Mat::Identity(x.rows(), x.cols());
    const Mat r = one * y * (2.0 * b10 * x - b11 - b00 * x2) + x * y * (2.0 * b10 - 2.0 * b00 * x) - x2 * y * b00 +
                  (b11 + x2 * b00 - 2.0 * x * b01) * y * one + (2.0 * x * b00 - 2.0 * b01) * y * x +
                  b00 * y * x2;
    return max_abs(r);
}

// ---- standard forms ----

LinMapStandardForm decompose_linear(const JordanAlgebra& alg, const Mat& t, const ElementaryKit& kit,
                                    const Tolerance& tol) {
    require_dim(alg, kit.u, "decompose_linear kit");
    const double assoc = associating_linear_residual(alg, t);
    if (!(assoc <= tol.abs_eps)) {
        throw JordanError(ErrorKind::NotAssociating, "map is not associating on " + alg.name(), assoc);
    }
    LinMapStandardForm form;
    form.lambda = kit.e1 * (t * kit.u);
    form.mu = kit.e0 * t - mult_operator(alg, form.lambda) * kit.e0;

    const Mat center = center_matrix(alg, tol);
    const double reconstruction = max_abs(Mat(t - mult_operator(alg, form.lambda) - form.mu));
    const double central = std::max(span_residual(center, form.lambda), center_distance(center, form.mu));
    form.residual = std::max(reconstruction, central);
    if (!(form.residual <= tol.abs_eps)) {
        throw JordanError(ErrorKind::ResidualExceeded,
                          "standard form does not reproduce the map (type I1 summand or corrupted input)",
                          form.residual);
    }
    return form;
}

TraceStandardForm decompose_trace(const JordanAlgebra& alg, const BilinearMap& b, const ElementaryKit& kit,
                                  const Tolerance& tol, std::uint64_t seed) {
    require_dim(alg, kit.u, "decompose_trace kit");
    if (b.dim() != alg.dim()) {
        throw JordanError(ErrorKind::DimensionMismatch, "bilinear map does not act on " + alg.name());
    }
    if (b.symmetry_residual() > tol.abs_eps) {
        throw JordanError(ErrorKind::InvalidArgument, "bilinear map is not symmetric", b.symmetry_residual());
    }
    const double assoc = trace_associating_residual(alg, b);
    if (!(assoc <= tol.abs_eps)) {
        throw JordanError(ErrorKind::NotAssociating, "trace is not associating on " + alg.name(), assoc);
    }

    const QuadraticPart quad = extract_quadratic(alg, b, kit);
    const std::size_t n = alg.dim();
    std::vector<Vec> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec bi = alg.basis(i);
        diag[i] = nu_diagonal(alg, kit, quad.lambda, b.at(i, i), bi, basis_product_vector(alg, i, i),
                              quad.mu.col(static_cast<Eigen::Index>(i)));
    }
    BilinearMap nu(n);
    for (std::size_t i = 0; i < n; ++i) {
        nu.at(i, i) = diag[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec x = alg.basis(i) + alg.basis(j);
            const Vec bxx = b.at(i, i) + b.at(i, j) + b.at(j, i) + b.at(j, j);
            const Vec x2 = basis_product_vector(alg, i, i) + 2.0 * basis_product_vector(alg, i, j) +
                           basis_product_vector(alg, j, j);
            const Vec mux = quad.mu.col(static_cast<Eigen::Index>(i)) + quad.mu.col(static_cast<Eigen::Index>(j));
            const Vec value = 0.5 * (nu_diagonal(alg, kit, quad.lambda, bxx, x, x2, mux) - diag[i] - diag[j]);
            nu.at(i, j) = value;
            nu.at(j, i) = value;
        }
    }

    TraceStandardForm form{quad.lambda, quad.mu, std::move(nu), 0.0};
    const BilinearMap rebuilt = trace_from_parameters(alg, form.lambda, form.mu, form.nu);
    double reconstruction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            reconstruction = std::max(reconstruction, max_abs(Vec(rebuilt.at(i, j) - b.at(i, j))));
        }
    }
    Rng rng(seed);
    for (int s = 0; s < 4; ++s) {
        const Vec x = rng.vector(alg.size());
        const Vec standard = product(alg, form.lambda, product(alg, x, x)) + product(alg, form.mu * x, x) +
                             form.nu.eval(x, x);
        reconstruction = std::max(reconstruction, max_abs(Vec(b.eval(x, x) - standard)));
    }
    const Mat center = center_matrix(alg, tol);
    double central = std::max(span_residual(center, form.lambda), center_distance(center, form.mu));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            central = std::max(central, span_residual(center, form.nu.at(i, j)));
        }
    }
    form.residual = std::max(reconstruction, central);
    if (!(form.residual <= tol.abs_eps)) {
        throw JordanError(ErrorKind::ResidualExceeded, "standard form does not reproduce the trace", form.residual);
    }
    return form;
}

BilinearMap trace_from_parameters(const JordanAlgebra& alg, const Vec& lambda, const Mat& mu, const BilinearMap& nu) {
    const std::size_t n = alg.dim();
    BilinearMap b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec mu_i = mu.col(static_cast<Eigen::Index>(i));
        for (std::size_t j = i; j < n; ++j) {
            const Vec mu_j = mu.col(static_cast<Eigen::Index>(j));
            Vec value = product(alg, lambda, basis_product_vector(alg, i, j));
            value += 0.5 * (apply_sparse(alg.basis_operator(j), mu_i) + apply_sparse(alg.basis_operator(i), mu_j));
            value += nu.at(i, j);
            b.at(i, j) = value;
            b.at(j, i) = value;
        }
    }
    return b;
}

BilinearMap induced_trace(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& phi, const Mat& phi_inverse) {
    const std::size_t n = to.dim();
    std::vector<Vec> pre(n);
    for (std::size_t i = 0; i < n; ++i) {
        pre[i] = phi_inverse.col(static_cast<Eigen::Index>(i));
    }
    BilinearMap b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Vec value = phi * product(from, pre[i], pre[j]);
            b.at(i, j) = value;
            b.at(j, i) = value;
        }
    }
    return b;
}

PreserverDecomposition decompose_preserver(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& phi,
                                           const ElementaryKit& kit, const Tolerance& tol, PreserverOptions options) {
    require_dim(to, kit.u, "decompose_preserver kit");
    if (phi.rows() != to.size() || phi.cols() != from.size()) {
        throw JordanError(ErrorKind::NotBijective, "map shape does not match the algebras");
    }
    const Mat inverse = checked_inverse(phi, tol);
    if (!kit.has_e2() && !options.allow_kit_without_e2) {
        throw JordanError(ErrorKind::KitMissing, "preserver decomposition needs a kit with E2");
    }
    const BilinearMap b = induced_trace(from, to, phi, inverse);

    PreserverDecomposition d;
    if (kit.has_e2()) {
        const QuadraticPart quad = extract_quadratic(to, b, kit);
        d.lambda = quad.lambda;
        d.mu1 = quad.mu;
    } else {
        // Subtract the candidate quadratic part λ = 1 and read μ₁ with the spin formulas.
        const BilinearMap shifted = BilinearMap::from_function(to.dim(), [&](std::size_t i, std::size_t j) {
            return Vec(b.at(i, j) - basis_product_vector(to, i, j));
        });
        d.lambda = to.unit();
        d.mu1 = extract_quadratic(to, shifted, kit).mu;
    }

    const auto z0 = jordan_inverse(to, d.lambda, tol);
    if (!z0) {
        throw JordanError(ErrorKind::LambdaNotInvertible, "quadratic coefficient of the induced trace is singular",
                          max_abs(d.lambda));
    }
    d.z0 = *z0;
    d.j = mult_operator(to, d.lambda) * phi + 0.5 * d.mu1 * phi;
    d.beta = phi - mult_operator(to, d.z0) * d.j;

    const double multiplicative = homomorphism_residual(from, to, d.j);
    if (!(multiplicative <= tol.abs_eps)) {
        throw JordanError(ErrorKind::JNotMultiplicative, "recovered J is not a Jordan homomorphism", multiplicative);
    }
    if (!matrix_invertible(d.j, tol)) {
        throw JordanError(ErrorKind::JNotMultiplicative, "recovered J is not bijective");
    }
    const double central = center_distance(center_matrix(to, tol), d.beta);
    const double reconstruction = max_abs(Mat(phi - mult_operator(to, d.z0) * d.j - d.beta));
    d.residual = std::max({multiplicative, central, reconstruction});
    if (!(std::max(central, reconstruction) <= tol.abs_eps)) {
        throw JordanError(ErrorKind::ResidualExceeded, "β is not center-valued", d.residual);
    }
    return d;
}

// ---- ♯-symmetry ----

Mat sharp(const Mat& phi, const JordanAlgebra& from, const JordanAlgebra& to) {
    if (phi.rows() != to.size() || phi.cols() != from.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "map shape does not match the algebras");
    }
    return to.star_matrix() * phi.conjugate() * from.star_matrix().conjugate();
}

bool is_symmetric_map(const Mat& phi, const JordanAlgebra& from, const JordanAlgebra& to, const Tolerance& tol) {
    return max_abs(Mat(sharp(phi, from, to) - phi)) <= tol.abs_eps;
}

std::vector<CheckRecord> symmetric_preserver_check(const PreserverDecomposition& d, const JordanAlgebra& from,
                                                   const JordanAlgebra& to, const Tolerance& tol) {
    const std::string& name = to.name();
    return {
        make_record("symmetric.z0_self_adjoint", name, 0, max_abs(Vec(star(to, d.z0) - d.z0)), tol.abs_eps),
        make_record("symmetric.J_star_map", name, 0, star_map_residual(from, to, d.j), tol.abs_eps),
        make_record("symmetric.beta_sharp", name, 0, max_abs(Mat(sharp(d.beta, from, to) - d.beta)), tol.abs_eps),
    };
}

// ---- sampling and center checks ----

PreservationStats opcomm_preservation_sampled(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& phi,
                                              int samples, std::uint64_t seed, const Tolerance& tol,
                                              const std::vector<Vec>& central_projections) {
    const Mat inverse = checked_inverse(phi, tol);
    PreservationStats stats;
    const Mat z_from = center_matrix(from, tol);
    const Mat z_to = center_matrix(to, tol);
    const int kinds = central_projections.empty() ? 2 : 3;

    auto commuting_pair = [&](const JordanAlgebra& alg, const Mat& center, Rng& rng, int kind) {
        const Vec x = rng.vector(alg.size());
        if (kind == 0) {
            Vec y = rng.complex_normal() * alg.unit();
            Vec power = alg.unit();
            for (int d = 1; d <= 3; ++d) {
                power = product(alg, power, x);
                y += rng.complex_normal() * power;
            }
            return std::pair{x, y};
        }
        if (kind == 1) {
            return std::pair{x, Vec(center * rng.vector(center.cols()))};
        }
        const Vec& p = central_projections[rng.index(central_projections.size())];
        const Vec q = alg.unit() - p;
        return std::pair{product(alg, p, x), product(alg, q, rng.vector(alg.size()))};
    };
    auto normalized = [](const Vec& v) {
        const double m = max_abs(v);
        return m > 0.0 ? Vec(v / m) : v;
    };
    auto record = [&](const JordanAlgebra& alg, const Vec& a, const Vec& b) {
        const double r = commutator_residual(alg, normalized(a), normalized(b));
        ++stats.total;
        stats.passed += r <= tol.abs_eps ? 1 : 0;
        stats.worst_residual = std::max(stats.worst_residual, r);
    };

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const int kind = s % kinds;
        const auto [x, y] = commuting_pair(from, z_from, rng, kind);
        record(to, phi * x, phi * y);
        // The backward direction draws its pairs in the codomain; central projections are domain-side only.
        const auto [u, v] = commuting_pair(to, z_to, rng, kind % 2);
        record(from, inverse * u, inverse * v);
    }
    return stats;
}

bool central_annihilator_check(const JordanAlgebra& alg, const Tolerance& tol) {
    const Mat z = center_matrix(alg, tol);
    if (z.cols() == 0) {
        return true;
    }
    const auto n = alg.size();
    const Mat off_center = Mat::Identity(n, n) - z * z.adjoint();
    Mat system(n * n, z.cols());
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        Mat image(n, z.cols());
        for (Eigen::Index c = 0; c < z.cols(); ++c) {
            image.col(c) = apply_sparse(alg.basis_operator(i), z.col(c));
        }
        system.middleRows(static_cast<Eigen::Index>(i) * n, n) = off_center * image;
    }
    // Unit-norm center vectors: a surviving column has a singular value of order one.
    return kernel_matrix_absolute(system, tol.abs_eps * std::max(1.0, std::sqrt(static_cast<double>(alg.dim()))))
               .cols() == 0;
}

double cross_block_residual(const JordanAlgebra& alg, const Mat& t, const Vec& p, const Tolerance& tol) {
    const Vec q = alg.unit() - p;
    const Mat block = mult_operator(alg, p) * t * mult_operator(alg, q);
    return center_distance(center_matrix(alg, tol), block);
}

MixedProductResiduals mixed_product_residuals(const JordanAlgebra& alg, const BilinearMap& b,
                                              const ElementaryKit& kit, const Vec& p, int samples,
                                              std::uint64_t seed, const Tolerance& tol) {
    const Vec q = alg.unit() - p;
    const Vec pu = product(alg, p, kit.u);
    const Mat center = center_matrix(alg, tol);
    MixedProductResiduals out;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Vec x = rng.vector(alg.size());
        const Vec px = product(alg, p, x);
        const Vec qx = product(alg, q, x);
        const Vec mu = product(alg, p, kit.e1 * b.eval(pu, qx));
        const Vec nu = product(alg, p, kit.e0 * b.eval(px, qx)) - product(alg, mu, kit.e0 * px);
        const Vec lhs = product(alg, p, b.eval(px, qx));
        out.identity = std::max(out.identity, max_abs(Vec(lhs - product(alg, mu, x) - nu)));
        out.central = std::max({out.central, span_residual(center, mu), span_residual(center, nu)});
    }
    return out;
}

double central_isomorphism_residual(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& phi, const Mat& j,
                                    const Tolerance& tol) {
    const Mat z_from = center_matrix(from, tol);
    const Mat z_to = center_matrix(to, tol);
    double worst = 0.0;
    for (Eigen::Index c = 0; c < z_from.cols(); ++c) {
        const Vec z = z_from.col(c);
        const Vec alpha_z = j * z;
        for (std::size_t a = 0; a < from.dim(); ++a) {
            const Vec ba = from.basis(a);
            const Vec diff = phi * product(from, z, ba) - product(to, alpha_z, phi * ba);
            worst = std::max(worst, span_residual(z_to, diff));
        }
    }
    return worst;
}

}  // namespace jordanlab
