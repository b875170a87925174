#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jordanlab/jordan.hpp"

namespace jordanlab {

enum class Family { Matrix, Spin, Albert, Scalar, Sum };

/// Declared action U_symmetry(p_from) = p_to.
struct Exchange {
    Vec symmetry;
    std::size_t from;
    std::size_t to;
};

struct Frame {
    std::vector<Vec> projections;
    std::vector<Exchange> exchanges;
};

/// A constructed algebra together with the bookkeeping kit builders need:
/// family, order (n for matrix:n, k for spin:k), canonical frame, and for
/// direct sums the summands with their coordinate offsets.
struct ZooAlgebra {
    JordanAlgebra algebra;
    Family family;
    std::size_t order = 0;
    Frame frame;
    std::vector<ZooAlgebra> summands;
    std::vector<std::size_t> offsets;

    [[nodiscard]] const std::string& name() const noexcept { return algebra.name(); }
    [[nodiscard]] std::size_t dim() const noexcept { return algebra.dim(); }
};

/// M_n(C) with a∘b = ½(ab + ba) on the matrix units e_ij (coordinate i·n + j).
[[nodiscard]] ZooAlgebra matrix_jordan(std::size_t n);
/// Spin factor on {1, f_1, …, f_{k−1}} with f_i∘f_j = δ_ij·1 and coordinate-conjugation star.
[[nodiscard]] ZooAlgebra spin_factor(std::size_t k);
/// H_3(O): e11, e22, e33, then 8 octonion coordinates for each of (1,2), (1,3), (2,3).
[[nodiscard]] ZooAlgebra albert_algebra();
/// The one-dimensional algebra C.
[[nodiscard]] ZooAlgebra scalar_algebra();
[[nodiscard]] ZooAlgebra direct_sum(std::vector<ZooAlgebra> summands);
/// m-fold direct power, the algebra of functions on an m-point space.
[[nodiscard]] ZooAlgebra function_algebra(const ZooAlgebra& base, std::size_t m);

/// Registry lookup: matrix:n, spin:k, albert, scalar, sum:A+B(+…), func:<base>:<m>.
[[nodiscard]] ZooAlgebra make_algebra(std::string_view name);
[[nodiscard]] std::vector<std::string> registry_patterns();

[[nodiscard]] Vec central_projection(const ZooAlgebra& sum, std::size_t k);
/// π_k: dim_k × n block selector.
[[nodiscard]] Mat coordinate_projection(const ZooAlgebra& sum, std::size_t k);
/// n × dim_k block injection.
[[nodiscard]] Mat summand_embedding(const ZooAlgebra& sum, std::size_t k);
/// a ↦ (a, …, a).
[[nodiscard]] Mat constant_embedding(const ZooAlgebra& power);
/// Exchange of two equal summands of a binary direct sum.
[[nodiscard]] Mat summand_swap(const ZooAlgebra& sum);

/// Largest violation of the frame axioms (projections, orthogonality, Σp = 1, exchanges).
[[nodiscard]] double frame_residual(const JordanAlgebra& alg, const Frame& frame);

[[nodiscard]] Vec matrix_to_coords(const Mat& m);
[[nodiscard]] Mat coords_to_matrix(const Vec& coords, std::size_t n);
/// Σ_i e_{i, perm[i]} for an involutive permutation.
[[nodiscard]] Vec permutation_symmetry(const std::vector<std::size_t>& perm);

/// ⟨a|b⟩ = Σ a_i conj(b_i).
[[nodiscard]] Complex spin_inner(const Vec& a, const Vec& b);
/// ā = conj(a_0)·1 − Σ conj(a_k) f_k.
[[nodiscard]] Vec spin_bar(const Vec& a);
/// ‖a‖² = ‖a‖₂² + (‖a‖₂⁴ − |⟨a|ā⟩|²)^{1/2}.
[[nodiscard]] double spin_norm(const ZooAlgebra& v, const Vec& a);

/// Fixed symmetries: transpositions and sign flips (matrix), ±f and ±(f_i±f_j)/√2 (spin),
/// signed octonion-unit permutations (albert).
[[nodiscard]] std::vector<Vec> symmetry_catalog(const ZooAlgebra& z);

}  // namespace jordanlab
