#include "jordanlab/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

constexpr double kConstructionEps = 1e-9;

}  // namespace

JordanAlgebra::JordanAlgebra(std::string name, std::size_t dim, std::vector<StructureEntry> entries, Vec unit,
                             Mat star)
    : name_(std::move(name)), dim_(dim), unit_(std::move(unit)), star_(std::move(star)) {
    if (dim_ == 0) {
        throw JordanError(ErrorKind::InvalidArgument, "empty algebras are not allowed");
    }
    if (unit_.size() != size() || star_.rows() != size() || star_.cols() != size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "unit or star has the wrong shape for " + name_);
    }

    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Complex> merged;
    for (const auto& e : entries) {
        if (e.i >= dim_ || e.j >= dim_ || e.k >= dim_) {
            throw JordanError(ErrorKind::InvalidArgument, "structure index out of range in " + name_);
        }
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
            throw JordanError(ErrorKind::InvalidArgument, "non-finite structure constant in " + name_);
        }
        merged[{e.i, e.j, e.k}] += e.value;
    }
    auto sorted = std::make_shared<std::vector<StructureEntry>>();
    for (const auto& [key, value] : merged) {
        if (value == Complex{}) {
            continue;
        }
        const auto [i, j, k] = key;
        const auto mirror = merged.find({j, i, k});
        const Complex other = mirror == merged.end() ? Complex{} : mirror->second;
        if (std::abs(value - other) > 1e-12 * std::max(1.0, std::abs(value))) {
            throw JordanError(ErrorKind::InvalidArgument, "structure constants are not symmetric in " + name_);
        }
        sorted->push_back({i, j, k, value});
    }

    auto ops = std::make_shared<std::vector<SparseOp>>(dim_);
    auto products = std::make_shared<std::vector<std::vector<std::pair<std::size_t, Complex>>>>(dim_ * dim_);
    for (const auto& e : *sorted) {
        (*ops)[e.i].push_back({e.k, e.j, e.value});
        (*products)[e.i * dim_ + e.j].emplace_back(e.k, e.value);
    }
    entries_ = std::move(sorted);
    basis_ops_ = std::move(ops);
    basis_products_ = std::move(products);

    for (std::size_t i = 0; i < dim_; ++i) {
        Vec diff = product(*this, unit_, basis(i)) - basis(i);
        if (max_abs(diff) > kConstructionEps) {
            throw JordanError(ErrorKind::InvalidArgument, "unit does not act as identity in " + name_,
                              max_abs(diff));
        }
    }
}

Vec JordanAlgebra::basis(std::size_t i) const {
    Vec v = Vec::Zero(size());
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

const std::vector<std::pair<std::size_t, Complex>>& JordanAlgebra::basis_product(std::size_t i,
                                                                                 std::size_t j) const {
    return (*basis_products_)[i * dim_ + j];
}

void require_dim(const JordanAlgebra& a, const Vec& x, const char* what) {
    if (x.size() != a.size()) {
        throw JordanError(ErrorKind::DimensionMismatch,
                          std::string(what) + ": element does not belong to " + a.name());
    }
}

Vec product(const JordanAlgebra& a, const Vec& x, const Vec& y) {
    require_dim(a, x, "product");
    require_dim(a, y, "product");
    Vec out = Vec::Zero(a.size());
    for (const auto& e : a.structure()) {
        const Complex xi = x(static_cast<Eigen::Index>(e.i));
        if (xi == Complex{}) {
            continue;
        }
        out(static_cast<Eigen::Index>(e.k)) += e.value * xi * y(static_cast<Eigen::Index>(e.j));
    }
    return out;
}

Vec associator(const JordanAlgebra& alg, const Vec& x, const Vec& a, const Vec& y) {
    return product(alg, product(alg, x, a), y) - product(alg, product(alg, y, a), x);
}

Vec apply_sparse(const SparseOp& op, const Vec& x) {
    Vec out = Vec::Zero(x.size());
    apply_sparse_add(op, x, 1.0, out);
    return out;
}

void apply_sparse_add(const SparseOp& op, const Vec& x, Complex scale, Vec& out) {
    for (const auto& t : op) {
        out(static_cast<Eigen::Index>(t.row)) += scale * t.value * x(static_cast<Eigen::Index>(t.col));
    }
}

void basis_associator_into(const JordanAlgebra& alg, const Vec& p, std::size_t k, std::size_t j, Vec& out,
                           Vec& scratch) {
    scratch.setZero();
    apply_sparse_add(alg.basis_operator(k), p, 1.0, scratch);
    out.setZero();
    apply_sparse_add(alg.basis_operator(j), scratch, 1.0, out);
    for (const auto& [r, c] : alg.basis_product(j, k)) {
        apply_sparse_add(alg.basis_operator(r), p, -c, out);
    }
}

Vec power(const JordanAlgebra& a, const Vec& x, int exponent) {
    if (exponent < 0) {
        throw JordanError(ErrorKind::InvalidArgument, "negative power");
    }
    Vec out = a.unit();
    for (int e = 0; e < exponent; ++e) {
        out = product(a, out, x);
    }
    return out;
}

Vec star(const JordanAlgebra& a, const Vec& x) {
    require_dim(a, x, "star");
    return a.star_matrix() * x.conjugate();
}

Mat mult_operator(const JordanAlgebra& alg, const Vec& a) {
    require_dim(alg, a, "mult_operator");
    Mat m = Mat::Zero(alg.size(), alg.size());
    for (const auto& e : alg.structure()) {
        const Complex ai = a(static_cast<Eigen::Index>(e.i));
        if (ai != Complex{}) {
            m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.j)) += ai * e.value;
        }
    }
    return m;
}

Mat u_operator(const JordanAlgebra& alg, const Vec& a, const Vec& c) {
    const Mat ma = mult_operator(alg, a);
    const Mat mc = mult_operator(alg, c);
    return mc * ma + ma * mc - mult_operator(alg, product(alg, a, c));
}

Mat u_operator(const JordanAlgebra& alg, const Vec& a) {
    const Mat ma = mult_operator(alg, a);
    return 2.0 * ma * ma - mult_operator(alg, product(alg, a, a));
}

double commutator_residual(const JordanAlgebra& alg, const Vec& a, const Vec& b) {
    const Mat ma = mult_operator(alg, a);
    const Mat mb = mult_operator(alg, b);
    return max_abs(Mat(ma * mb - mb * ma));
}

bool operator_commute(const JordanAlgebra& alg, const Vec& a, const Vec& b, const Tolerance& tol) {
    return commutator_residual(alg, a, b) <= tol.abs_eps;
}

namespace {

// Rows a·n .. a·n+n−1 hold the map y ↦ [x, b_a, y] = M_{x∘b_a} y − M_x M_{b_a} y.
Mat commutant_system(const JordanAlgebra& alg, const Vec& x) {
    const Eigen::Index n = alg.size();
    const Mat mx = mult_operator(alg, x);
    Mat system(n * n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        Mat block = mult_operator(alg, apply_sparse(alg.basis_operator(ua), x));
        for (const auto& t : alg.basis_operator(ua)) {
            block.col(static_cast<Eigen::Index>(t.col)) -= t.value * mx.col(static_cast<Eigen::Index>(t.row));
        }
        system.middleRows(a * n, n) = block;
    }
    return system;
}

}  // namespace

std::vector<Vec> commutant(const JordanAlgebra& alg, const Vec& x, const Tolerance& tol) {
    require_dim(alg, x, "commutant");
    return kernel_basis(commutant_system(alg, x), tol);
}

std::optional<Mat> JordanAlgebra::cached_center(double abs_eps) const {
    std::lock_guard guard(center_cache_->lock);
    for (const auto& [eps, center] : center_cache_->entries) {
        if (eps == abs_eps) {
            return center;
        }
    }
    return std::nullopt;
}

void JordanAlgebra::store_center(double abs_eps, const Mat& center) const {
    std::lock_guard guard(center_cache_->lock);
    center_cache_->entries.emplace_back(abs_eps, center);
}

Mat center_matrix(const JordanAlgebra& alg, const Tolerance& tol) {
    if (auto cached = alg.cached_center(tol.abs_eps)) {
        return *std::move(cached);
    }
    const Eigen::Index n = alg.size();
    // Intersect the commutants of the basis vectors one at a time inside the running subspace.
    Mat w = Mat::Identity(n, n);
    for (std::size_t i = 0; i < alg.dim() && w.cols() > 0; ++i) {
        const Mat system = commutant_system(alg, alg.basis(i));
        // The cut is set by the unreduced system: once w is inside the commutant
        // the reduced product is pure roundoff and must not count as rank.
        const double cut = tol.abs_eps * std::max(1.0, system.norm());
        w = w * kernel_matrix_absolute(system * w, cut);
    }
    alg.store_center(tol.abs_eps, w);
    return w;
}

std::vector<Vec> center_basis(const JordanAlgebra& alg, const Tolerance& tol) {
    const Mat z = center_matrix(alg, tol);
    std::vector<Vec> out;
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        out.emplace_back(z.col(c));
    }
    return out;
}

std::optional<Vec> jordan_inverse(const JordanAlgebra& alg, const Vec& a, const Tolerance& tol) {
    require_dim(alg, a, "jordan_inverse");
    const Eigen::Index n = alg.size();
    Mat system(2 * n, n);
    system.topRows(n) = mult_operator(alg, a);
    system.bottomRows(n) = mult_operator(alg, product(alg, a, a));
    Vec rhs(2 * n);
    rhs.head(n) = alg.unit();
    rhs.tail(n) = a;
    return solve_linear(system, rhs, tol);
}

bool is_projection(const JordanAlgebra& alg, const Vec& p, const Tolerance& tol) {
    return approx_zero(Vec(star(alg, p) - p), tol) && approx_zero(Vec(product(alg, p, p) - p), tol);
}

bool is_symmetry(const JordanAlgebra& alg, const Vec& s, const Tolerance& tol) {
    return approx_zero(Vec(star(alg, s) - s), tol) && approx_zero(Vec(product(alg, s, s) - alg.unit()), tol);
}

double homomorphism_residual(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j) {
    if (j.rows() != to.size() || j.cols() != from.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "homomorphism matrix has the wrong shape");
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < from.dim(); ++a) {
        const Vec ja = j.col(static_cast<Eigen::Index>(a));
        for (std::size_t b = a; b < from.dim(); ++b) {
            Vec image = Vec::Zero(to.size());
            for (const auto& [k, c] : from.basis_product(a, b)) {
                image += c * j.col(static_cast<Eigen::Index>(k));
            }
            image -= product(to, ja, j.col(static_cast<Eigen::Index>(b)));
            worst = std::max(worst, max_abs(image));
        }
    }
    return worst;
}

double star_map_residual(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j) {
    if (j.rows() != to.size() || j.cols() != from.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "map matrix has the wrong shape");
    }
    // On a basis vector b: J(b*) = J S_from b and J(b)* = S_to conj(J b); both sides are conjugate-linear.
    return max_abs(Mat(j * from.star_matrix() - to.star_matrix() * j.conjugate()));
}

bool is_jordan_homomorphism(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j, const Tolerance& tol) {
    return homomorphism_residual(from, to, j) <= tol.abs_eps;
}

bool is_star_map(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j, const Tolerance& tol) {
    return star_map_residual(from, to, j) <= tol.abs_eps;
}

std::vector<CheckRecord> check_axioms(const JordanAlgebra& alg, int samples, std::uint64_t seed,
                                      const Tolerance& tol) {
    double commutativity = 0.0;
    for (const auto& e : alg.structure()) {
        Complex mirror{};
        for (const auto& [k, c] : alg.basis_product(e.j, e.i)) {
            if (k == e.k) {
                mirror = c;
            }
        }
        commutativity = std::max(commutativity, std::abs(e.value - mirror));
    }
    double jordan_identity = 0.0;
    double unit = 0.0;
    double involution = max_abs(Vec(star(alg, alg.unit()) - alg.unit()));
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Vec a = rng.vector(alg.size());
        const Vec b = rng.vector(alg.size());
        commutativity = std::max(commutativity, max_abs(Vec(product(alg, a, b) - product(alg, b, a))));
        const Vec a2 = product(alg, a, a);
        const Vec lhs = product(alg, product(alg, a2, b), a);
        const Vec rhs = product(alg, product(alg, a, b), a2);
        jordan_identity = std::max(jordan_identity, max_abs(Vec(lhs - rhs)));
        unit = std::max(unit, max_abs(Vec(product(alg, alg.unit(), a) - a)));
        involution = std::max(involution, max_abs(Vec(star(alg, star(alg, a)) - a)));
        involution = std::max(
            involution, max_abs(Vec(star(alg, product(alg, a, b)) - product(alg, star(alg, a), star(alg, b)))));
    }
    const std::string& name = alg.name();
    return {
        make_record("axiom.commutativity", name, seed, commutativity, tol.abs_eps),
        make_record("axiom.jordan_identity", name, seed, jordan_identity, tol.abs_eps),
        make_record("axiom.unit", name, seed, unit, tol.abs_eps),
        make_record("axiom.involution", name, seed, involution, tol.abs_eps),
    };
}

}  // namespace jordanlab
