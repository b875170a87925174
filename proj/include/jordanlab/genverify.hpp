#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jordanlab/decompose.hpp"

namespace jordanlab {

struct GenConfig {
    std::uint64_t master_seed = 0;
    int samples = 100;
    double magnitude = 1.0;
    /// Share of bulk-suite cells replaced by a negative control. 0 keeps suites clean.
    double adversarial_rate = 0.0;

    void validate() const;
};

struct Report {
    std::string suite;
    GenConfig config;
    std::vector<CheckRecord> records;

    [[nodiscard]] bool passed() const { return all_pass(records); }
};

// ---- elements ----

[[nodiscard]] Vec random_element(const JordanAlgebra& alg, std::uint64_t seed, double magnitude = 1.0);

/// Central projections of the simple summands; their span is the center.
[[nodiscard]] std::vector<Vec> central_units(const ZooAlgebra& z);

/// Combination of the central units; self-adjoint when `self_adjoint` is set.
[[nodiscard]] Vec random_central(const ZooAlgebra& z, std::uint64_t seed, double magnitude = 1.0,
                                 bool self_adjoint = false);
/// Resamples until the Jordan inverse exists with ‖z⁻¹‖∞ ≤ 10.
[[nodiscard]] Vec random_central_invertible(const ZooAlgebra& z, std::uint64_t seed, double magnitude = 1.0,
                                            bool self_adjoint = false);

/// One symmetry: catalog entries, plus 2p − 1 for unitarily rotated projections
/// on matrix algebras and unit vectors of the f-span on spin factors.
[[nodiscard]] Vec random_symmetry(const ZooAlgebra& z, Rng& rng);
/// U_{s_k} ⋯ U_{s_1}; the identity for word_length = 0.
[[nodiscard]] Mat random_inner_automorphism(const ZooAlgebra& z, int word_length, std::uint64_t seed);

// ---- standard-form generators ----

struct AssociatingMapSample {
    Mat map;
    Vec lambda;
    Mat mu;
};

/// `lambda`, `mu`, `nu` are what a decomposition must return. On spin-type
/// algebras the injected λ₀∘x² is folded into μ and ν and `lambda` is zero.
struct AssociatingTraceSample {
    BilinearMap trace;
    Vec lambda;
    Mat mu;
    BilinearMap nu;
    Vec injected_lambda;
};

struct PreserverSample {
    Mat phi;
    Vec z0;
    Mat j;
    Mat beta;
};

struct PreserverShape {
    bool symmetric = false;
    /// Compose J with the exchange of two equal summands.
    bool swap_summands = false;
    int word_length = 3;
};

[[nodiscard]] AssociatingMapSample make_associating_map(const ZooAlgebra& z, std::uint64_t seed,
                                                        double magnitude = 1.0);
[[nodiscard]] AssociatingTraceSample make_associating_trace(const ZooAlgebra& z, std::uint64_t seed,
                                                            double magnitude = 1.0);
[[nodiscard]] PreserverSample make_standard_preserver(const ZooAlgebra& z, std::uint64_t seed,
                                                      PreserverShape shape = {}, double magnitude = 1.0);

/// True when every square lies in span{1, x}: spin factors and M_2.
[[nodiscard]] bool is_spin_type(const ZooAlgebra& z);

// ---- negative controls ----

enum class AdversarialKind { NonAssociating, NonCentralMu, NonAssociatingTrace, SpinGenericBijection, BrokenJ };

[[nodiscard]] std::string to_string(AdversarialKind kind);
[[nodiscard]] AdversarialKind adversarial_kind_from_string(std::string_view text);

struct AdversarialSample {
    AdversarialKind kind;
    Mat map;
    std::optional<BilinearMap> trace;
    /// Generator parameters of the unperturbed preserver (BrokenJ only).
    std::optional<PreserverSample> reference;
    /// Size of the defect the construction guarantees.
    double witness = 0.0;
};

[[nodiscard]] AdversarialSample make_adversarial(AdversarialKind kind, const ZooAlgebra& z, std::uint64_t seed);

// ---- suites ----

[[nodiscard]] const std::vector<std::string>& suite_names();
[[nodiscard]] Report run_suite(std::string_view name, const GenConfig& config, const Tolerance& tol = {});

}  // namespace jordanlab
