#pragma once

#include <array>

#include "jordanlab/numerics.hpp"

namespace jordanlab {

/// Complex octonion over e0..e7, e0 the unit.
struct Octonion {
    std::array<Complex, 8> coeffs{};

    [[nodiscard]] static Octonion unit(int k);
    [[nodiscard]] static Octonion scalar(Complex c);

    Octonion& operator+=(const Octonion& other);
    Octonion& operator-=(const Octonion& other);
    Octonion& operator*=(Complex c);
    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator*(Complex c, Octonion a) { return a *= c; }
    friend bool operator==(const Octonion&, const Octonion&) = default;
};

struct SignedIndex {
    int sign;
    int index;
    friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

using OctonionTable = std::array<std::array<SignedIndex, 8>, 8>;

[[nodiscard]] Octonion oct_mul(const Octonion& a, const Octonion& b);
[[nodiscard]] Octonion oct_conj(const Octonion& a);
/// Complex-bilinear quadratic form Σ coeffs².
[[nodiscard]] Complex oct_norm(const Octonion& a);
[[nodiscard]] double oct_max_abs(const Octonion& a);
/// e_i e_j = sign · e_index.
[[nodiscard]] const OctonionTable& oct_table_dump();

}  // namespace jordanlab
