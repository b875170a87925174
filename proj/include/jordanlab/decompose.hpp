#pragma once

#include <cstdint>
#include <vector>

#include "jordanlab/capelli.hpp"
#include "jordanlab/kit.hpp"

namespace jordanlab {

/// Symmetric bilinear map stored by its values on basis pairs.
class BilinearMap {
public:
    explicit BilinearMap(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Vec& at(std::size_t i, std::size_t j) const { return values_[i * dim_ + j]; }
    [[nodiscard]] Vec& at(std::size_t i, std::size_t j) { return values_[i * dim_ + j]; }
    [[nodiscard]] Vec eval(const Vec& x, const Vec& y) const;
    /// Σ_i x_i B(b_i, b_j) for fixed j: the map y ↦ B(x, y) as a matrix.
    [[nodiscard]] Mat partial(const Vec& x) const;
    [[nodiscard]] double symmetry_residual() const;

    template <typename F>
    [[nodiscard]] static BilinearMap from_function(std::size_t dim, F&& f) {
        BilinearMap b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                b.at(i, j) = f(i, j);
            }
        }
        return b;
    }

private:
    std::size_t dim_;
    std::vector<Vec> values_;
};

struct LinMapStandardForm {
    Vec lambda;
    Mat mu;
    double residual = 0.0;
};

struct TraceStandardForm {
    Vec lambda;
    Mat mu;
    BilinearMap nu;
    double residual = 0.0;
};

struct PreserverDecomposition {
    Vec z0;
    Mat j;
    Mat beta;
    Vec lambda;
    Mat mu1;
    double residual = 0.0;
};

struct PreserverOptions {
    /// Test-only bypass of the E2 requirement. Without E2 the quadratic term is
    /// not extractable; λ is normalised to 1 and μ₁ is read off B − ∘.
    bool allow_kit_without_e2 = false;
};

// ---- associating checks (fully polarized over basis triples) ----

[[nodiscard]] double associating_linear_residual(const JordanAlgebra& alg, const Mat& t, Exec exec = Exec::Parallel);
[[nodiscard]] bool is_associating_linear(const JordanAlgebra& alg, const Mat& t, const Tolerance& tol = {});

/// Cyclic sum [B(x,y),a,z] + [B(x,z),a,y] + [B(y,z),a,x] over basis x ≤ y ≤ z and all a.
[[nodiscard]] double trace_associating_residual(const JordanAlgebra& alg, const BilinearMap& b,
                                                Exec exec = Exec::Parallel);
[[nodiscard]] bool trace_is_associating(const JordanAlgebra& alg, const BilinearMap& b, const Tolerance& tol = {});

/// 2[B(x,y),a,y] + [B(y,y),a,x] over all basis triples.
[[nodiscard]] double bresar_polarized_residual(const JordanAlgebra& alg, const BilinearMap& b,
                                               Exec exec = Exec::Parallel);

/// The associative identity obtained from the polarized commutator identities in M_n
/// (π the identity), evaluated at one pair of matrices.
[[nodiscard]] double bresar_associative_residual(const ZooAlgebra& matrix_algebra, const BilinearMap& b,
                                                 const Mat& x, const Mat& y);

// ---- standard forms ----

[[nodiscard]] LinMapStandardForm decompose_linear(const JordanAlgebra& alg, const Mat& t, const ElementaryKit& kit,
                                                  const Tolerance& tol = {});
[[nodiscard]] TraceStandardForm decompose_trace(const JordanAlgebra& alg, const BilinearMap& b,
                                                const ElementaryKit& kit, const Tolerance& tol = {},
                                                std::uint64_t seed = 0);
/// Φ = z0∘J + β for a bijection Φ: from → to, using a kit on the codomain.
[[nodiscard]] PreserverDecomposition decompose_preserver(const JordanAlgebra& from, const JordanAlgebra& to,
                                                         const Mat& phi, const ElementaryKit& kit,
                                                         const Tolerance& tol = {}, PreserverOptions options = {});

/// λ∘(x∘y) + ½(μ(x)∘y + μ(y)∘x) + ν(x,y).
[[nodiscard]] BilinearMap trace_from_parameters(const JordanAlgebra& alg, const Vec& lambda, const Mat& mu,
                                                const BilinearMap& nu);
/// B(x,y) = Φ(Φ⁻¹x ∘ Φ⁻¹y) on the codomain.
[[nodiscard]] BilinearMap induced_trace(const JordanAlgebra& from, const JordanAlgebra& to, const Mat& phi,
                                        const Mat& phi_inverse);

// ---- ♯-symmetry ----

/// F♯(x) = F(x*)*.
[[nodiscard]] Mat sharp(const Mat& phi, const JordanAlgebra& from, const JordanAlgebra& to);
[[nodiscard]] bool is_symmetric_map(const Mat& phi, const JordanAlgebra& from, const JordanAlgebra& to,
                                    const Tolerance& tol = {});
[[nodiscard]] std::vector<CheckRecord> symmetric_preserver_check(const PreserverDecomposition& d,
                                                                 const JordanAlgebra& from, const JordanAlgebra& to,
                                                                 const Tolerance& tol = {});

// ---- sampled preservation, center checks ----

struct PreservationStats {
    std::size_t total = 0;
    std::size_t passed = 0;
    double worst_residual = 0.0;
};

/// Commuting pairs (x, p(x)), (x, z) with z central, and (p∘x, q∘y) for central projections
/// p, q = 1 − p from `central_projections`; images are tested forward and through Φ⁻¹.
[[nodiscard]] PreservationStats opcomm_preservation_sampled(const JordanAlgebra& from, const JordanAlgebra& to,
                                                            const Mat& phi, int samples, std::uint64_t seed,
                                                            const Tolerance& tol = {},
                                                            const std::vector<Vec>& central_projections = {});

/// True iff {c ∈ Z : c∘b_i ∈ Z for all i} = {0}.
[[nodiscard]] bool central_annihilator_check(const JordanAlgebra& alg, const Tolerance& tol = {});

/// max column distance of M_p T M_q from the center.
[[nodiscard]] double cross_block_residual(const JordanAlgebra& alg, const Mat& t, const Vec& p,
                                          const Tolerance& tol = {});

/// Residuals of p∘B(p∘x, q∘x) = μ(x)∘x + ν(x,x) with μ(x) = p∘E1(B(p∘u, q∘x)),
/// ν(x,x) = p∘E0(B(p∘x, q∘x)) − μ(x)∘E0(p∘x), plus center-valuedness of μ and ν.
struct MixedProductResiduals {
    double identity = 0.0;
    double central = 0.0;
};
[[nodiscard]] MixedProductResiduals mixed_product_residuals(const JordanAlgebra& alg, const BilinearMap& b,
                                                            const ElementaryKit& kit, const Vec& p, int samples,
                                                            std::uint64_t seed, const Tolerance& tol = {});

/// Φ(z∘a) − α(z)∘Φ(a) ∈ Z for central z and basis a, α the restriction of J to the center.
[[nodiscard]] double central_isomorphism_residual(const JordanAlgebra& from, const JordanAlgebra& to,
                                                  const Mat& phi, const Mat& j, const Tolerance& tol = {});

}  // namespace jordanlab
