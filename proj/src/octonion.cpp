#include "jordanlab/octonion.hpp"

#include <algorithm>

namespace jordanlab {

namespace {

// Cayley-Dickson doubling of the quaternions with (a,b)(c,d) = (ac - d̄b, da + bc̄),
// basis e4 = (0,1) and e5..e7 = (0, i..k).
constexpr OctonionTable kTable = {{
    {{{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}}},
    {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}, {1, 5}, {-1, 4}, {-1, 7}, {1, 6}}},
    {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}, {1, 6}, {1, 7}, {-1, 4}, {-1, 5}}},
    {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}, {1, 7}, {-1, 6}, {1, 5}, {-1, 4}}},
    {{{1, 4}, {-1, 5}, {-1, 6}, {-1, 7}, {-1, 0}, {1, 1}, {1, 2}, {1, 3}}},
    {{{1, 5}, {1, 4}, {-1, 7}, {1, 6}, {-1, 1}, {-1, 0}, {-1, 3}, {1, 2}}},
    {{{1, 6}, {1, 7}, {1, 4}, {-1, 5}, {-1, 2}, {1, 3}, {-1, 0}, {-1, 1}}},
    {{{1, 7}, {-1, 6}, {1, 5}, {1, 4}, {-1, 3}, {-1, 2}, {1, 1}, {-1, 0}}},
}};

}  // namespace

Octonion Octonion::unit(int k) {
    Octonion o;
    o.coeffs.at(static_cast<std::size_t>(k)) = 1.0;
    return o;
}

Octonion Octonion::scalar(Complex c) {
    Octonion o;
    o.coeffs[0] = c;
    return o;
}

Octonion& Octonion::operator+=(const Octonion& other) {
    for (std::size_t k = 0; k < 8; ++k) {
        coeffs[k] += other.coeffs[k];
    }
    return *this;
}

Octonion& Octonion::operator-=(const Octonion& other) {
    for (std::size_t k = 0; k < 8; ++k) {
        coeffs[k] -= other.coeffs[k];
    }
    return *this;
}

Octonion& Octonion::operator*=(Complex c) {
    for (auto& x : coeffs) {
        x *= c;
    }
    return *this;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
    Octonion out;
    for (std::size_t i = 0; i < 8; ++i) {
        if (a.coeffs[i] == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; j < 8; ++j) {
            const auto [sign, k] = kTable[i][j];
            out.coeffs[static_cast<std::size_t>(k)] += static_cast<double>(sign) * a.coeffs[i] * b.coeffs[j];
        }
    }
    return out;
}

Octonion oct_conj(const Octonion& a) {
    Octonion out = a;
    for (std::size_t k = 1; k < 8; ++k) {
        out.coeffs[k] = -out.coeffs[k];
    }
    return out;
}

Complex oct_norm(const Octonion& a) {
    Complex n{};
    for (const auto& c : a.coeffs) {
        n += c * c;
    }
    return n;
}

double oct_max_abs(const Octonion& a) {
    double m = 0.0;
    for (const auto& c : a.coeffs) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

const OctonionTable& oct_table_dump() { return kTable; }

}  // namespace jordanlab
