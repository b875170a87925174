#pragma once

#include <cstdint>
#include <vector>

#include "jordanlab/numerics.hpp"

namespace jordanlab {

enum class Exec { Serial, Parallel };

inline constexpr std::size_t kCapelliMaxArity = 9;

/// c_n(a; x) = Σ_σ sign(σ) a_σ(1) x_1 a_σ(2) x_2 … x_{n−1} a_σ(n).
/// Requires n = a.size() ≤ 9 and x.size() = n − 1, all square of one size.
[[nodiscard]] Mat capelli_eval(const std::vector<Mat>& a, const std::vector<Mat>& x, Exec exec = Exec::Parallel);

/// Independent as soon as one of `trials` seeded plug-ins gives ‖c_n‖_max > abs_eps.
[[nodiscard]] bool independence_capelli(const std::vector<Mat>& a, int trials, std::uint64_t seed,
                                        const Tolerance& tol = {});

/// Numerical rank of the Gram matrix of the vectorized tuple equals its length.
[[nodiscard]] bool independence_gram(const std::vector<Mat>& a, const Tolerance& tol = {});

}  // namespace jordanlab
