#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jordanlab/zoo.hpp"

namespace jordanlab {

/// Distinguished element u with elementary operators satisfying E_i(u^j) = δ_ij·1.
/// E2 is absent on spin-type kits.
struct ElementaryKit {
    std::string algebra;
    Vec u;
    std::optional<Vec> v;
    Mat e0;
    Mat e1;
    std::optional<Mat> e2;
    std::vector<std::string> log;

    [[nodiscard]] bool has_e2() const noexcept { return e2.has_value(); }
    [[nodiscard]] int order() const noexcept { return has_e2() ? 3 : 2; }
    [[nodiscard]] const Mat& op(int i) const;
};

/// p1..p4 pairwise orthogonal, summing to 1; U_s p1 = p2, U_s1 p1 = p3, U_s2 p1 = p4.
struct Case1Frame {
    Vec p1, p2, p3, p4;
    Vec s, s1, s2;
};

/// Leftover projection q moved under p2 by the symmetry t: U_t q = r with r ≤ p2.
struct LeftoverPart {
    Vec q, r, t;
};

/// p1, p2, p3 (+ leftovers) summing to 1; U_s p1 = p2, U_s1 p1 = p3.
struct Case2Frame {
    Vec p1, p2, p3;
    Vec s, s1;
    std::optional<LeftoverPart> q1;
    std::optional<LeftoverPart> q2;
};

/// p1 + p2 = 1 in a spin factor (or M_2) with U_s p1 = p2.
struct SpinFrame {
    Vec p1, p2, s;
};

[[nodiscard]] ElementaryKit build_kit_case1(const JordanAlgebra& alg, const Case1Frame& frame,
                                            const Tolerance& tol = {});
[[nodiscard]] ElementaryKit build_kit_case2(const JordanAlgebra& alg, const Case2Frame& frame,
                                            const Tolerance& tol = {});
[[nodiscard]] ElementaryKit build_kit_spin(const JordanAlgebra& alg, const SpinFrame& frame,
                                           const Tolerance& tol = {});
/// Block-diagonal gluing over a direct sum; E2 survives only if every part has it.
[[nodiscard]] ElementaryKit glue_kits(const std::vector<ElementaryKit>& parts, const ZooAlgebra& sum);

[[nodiscard]] Case1Frame matrix_case1_frame(std::size_t n, int variant = 0);
[[nodiscard]] Case2Frame matrix_case2_frame(std::size_t n, int variant = 0);
[[nodiscard]] Case2Frame albert_case2_frame(int variant = 0);
[[nodiscard]] SpinFrame spin_frame(const ZooAlgebra& z, int variant = 0);

/// Builds a kit from the zoo bookkeeping. `variant` selects an independent frame
/// (relabelled indices, or Case II instead of Case I where both apply).
/// Throws FrameInvalid for algebras with a one-dimensional summand.
[[nodiscard]] ElementaryKit build_kit(const ZooAlgebra& z, int variant = 0, const Tolerance& tol = {});

/// max_{i,j} ‖E_i(u^j) − δ_ij·1‖∞.
[[nodiscard]] double kronecker_residual(const JordanAlgebra& alg, const ElementaryKit& kit);
/// Kronecker table, norm estimates, symmetry E(x*) = E(x)* and central linearity.
[[nodiscard]] std::vector<CheckRecord> verify_kit(const JordanAlgebra& alg, const ElementaryKit& kit,
                                                  const Tolerance& tol = {}, std::uint64_t seed = 0);

inline constexpr double kKitNormBound = 10.0;

}  // namespace jordanlab
