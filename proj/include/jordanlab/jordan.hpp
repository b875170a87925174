#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "jordanlab/numerics.hpp"
#include "jordanlab/report.hpp"

namespace jordanlab {

/// c[i][j][k]: b_i ∘ b_j = Σ_k c[i][j][k] b_k.
struct StructureEntry {
    std::size_t i;
    std::size_t j;
    std::size_t k;
    Complex value;
};

/// Column-sparse representation of a basis multiplication operator.
struct SparseTerm {
    std::size_t row;
    std::size_t col;
    Complex value;
};
using SparseOp = std::vector<SparseTerm>;

/// Finite-dimensional complex Jordan algebra with involution x* = S·conj(x),
/// given extensionally by structure constants. Immutable once built.
class JordanAlgebra {
public:
    /// Rejects empty algebras, non-symmetric constants, a unit that does not
    /// act as identity, and a star matrix of the wrong shape.
    JordanAlgebra(std::string name, std::size_t dim, std::vector<StructureEntry> entries, Vec unit, Mat star);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(dim_); }
    [[nodiscard]] const Vec& unit() const noexcept { return unit_; }
    [[nodiscard]] const Mat& star_matrix() const noexcept { return star_; }
    [[nodiscard]] const std::vector<StructureEntry>& structure() const noexcept { return *entries_; }

    /// Sparse M_{b_i}.
    [[nodiscard]] const SparseOp& basis_operator(std::size_t i) const { return (*basis_ops_)[i]; }
    [[nodiscard]] Vec basis(std::size_t i) const;
    /// b_i ∘ b_j as a sparse coordinate list.
    [[nodiscard]] const std::vector<std::pair<std::size_t, Complex>>& basis_product(std::size_t i,
                                                                                     std::size_t j) const;

    /// Center basis memoized per tolerance; shared by copies of the algebra.
    [[nodiscard]] std::optional<Mat> cached_center(double abs_eps) const;
    void store_center(double abs_eps, const Mat& center) const;

private:
    struct CenterCache {
        std::mutex lock;
        std::vector<std::pair<double, Mat>> entries;
    };

    std::string name_;
    std::size_t dim_;
    Vec unit_;
    Mat star_;
    std::shared_ptr<const std::vector<StructureEntry>> entries_;
    std::shared_ptr<const std::vector<SparseOp>> basis_ops_;
    std::shared_ptr<const std::vector<std::vector<std::pair<std::size_t, Complex>>>> basis_products_;
    std::shared_ptr<CenterCache> center_cache_ = std::make_shared<CenterCache>();
};

void require_dim(const JordanAlgebra& a, const Vec& x, const char* what);

[[nodiscard]] Vec product(const JordanAlgebra& a, const Vec& x, const Vec& y);
/// [x, a, y] = (x∘a)∘y − (y∘a)∘x.
[[nodiscard]] Vec associator(const JordanAlgebra& alg, const Vec& x, const Vec& a, const Vec& y);
/// [p, b_k, b_j] via the sparse basis operators.
void basis_associator_into(const JordanAlgebra& alg, const Vec& p, std::size_t k, std::size_t j, Vec& out,
                           Vec& scratch);
[[nodiscard]] Vec apply_sparse(const SparseOp& op, const Vec& x);
void apply_sparse_add(const SparseOp& op, const Vec& x, Complex scale, Vec& out);

[[nodiscard]] Vec power(const JordanAlgebra& a, const Vec& x, int exponent);
[[nodiscard]] Vec star(const JordanAlgebra& a, const Vec& x);

/// Column j is a ∘ b_j.
[[nodiscard]] Mat mult_operator(const JordanAlgebra& alg, const Vec& a);
/// b ↦ (a∘b)∘c + (b∘c)∘a − (a∘c)∘b.
[[nodiscard]] Mat u_operator(const JordanAlgebra& alg, const Vec& a, const Vec& c);
[[nodiscard]] Mat u_operator(const JordanAlgebra& alg, const Vec& a);

[[nodiscard]] double commutator_residual(const JordanAlgebra& alg, const Vec& a, const Vec& b);
[[nodiscard]] bool operator_commute(const JordanAlgebra& alg, const Vec& a, const Vec& b, const Tolerance& tol = {});

/// Basis of {y : [x, b_i, y] = 0 for all i}.
[[nodiscard]] std::vector<Vec> commutant(const JordanAlgebra& alg, const Vec& x, const Tolerance& tol = {});
/// Orthonormal basis of the center, as matrix columns.
[[nodiscard]] Mat center_matrix(const JordanAlgebra& alg, const Tolerance& tol = {});
[[nodiscard]] std::vector<Vec> center_basis(const JordanAlgebra& alg, const Tolerance& tol = {});

[[nodiscard]] std::optional<Vec> jordan_inverse(const JordanAlgebra& alg, const Vec& a, const Tolerance& tol = {});

[[nodiscard]] bool is_projection(const JordanAlgebra& alg, const Vec& p, const Tolerance& tol = {});
[[nodiscard]] bool is_symmetry(const JordanAlgebra& alg, const Vec& s, const Tolerance& tol = {});

/// max over basis pairs of ‖J(b_i∘b_j) − J(b_i)∘J(b_j)‖∞.
[[nodiscard]] double homomorphism_residual(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j);
/// max over basis of ‖J(b*) − J(b)*‖∞.
[[nodiscard]] double star_map_residual(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j);
[[nodiscard]] bool is_jordan_homomorphism(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j,
                                          const Tolerance& tol = {});
[[nodiscard]] bool is_star_map(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& j,
                               const Tolerance& tol = {});

/// Residuals for commutativity, Jordan identity, unit and involution on random samples.
[[nodiscard]] std::vector<CheckRecord> check_axioms(const JordanAlgebra& alg, int samples, std::uint64_t seed,
                                                    const Tolerance& tol = {});

}  // namespace jordanlab
