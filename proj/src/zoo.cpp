#include "jordanlab/zoo.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "jordanlab/errors.hpp"
#include "jordanlab/octonion.hpp"

namespace jordanlab {

namespace {

Vec unit_vector(Eigen::Index n, Eigen::Index i) {
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

// ---- Albert algebra helpers ----

constexpr std::array<std::array<std::size_t, 2>, 3> kOffDiagonal = {{{0, 1}, {0, 2}, {1, 2}}};

using OctMatrix = std::array<std::array<Octonion, 3>, 3>;

std::size_t off_diagonal_slot(std::size_t a, std::size_t b) {
    for (std::size_t p = 0; p < 3; ++p) {
        if (kOffDiagonal[p][0] == a && kOffDiagonal[p][1] == b) {
            return p;
        }
    }
    throw JordanError(ErrorKind::InvalidArgument, "not an upper off-diagonal position");
}

OctMatrix albert_to_matrix(const Vec& x) {
    OctMatrix m{};
    for (std::size_t i = 0; i < 3; ++i) {
        m[i][i] = Octonion::scalar(x(static_cast<Eigen::Index>(i)));
    }
    for (std::size_t p = 0; p < 3; ++p) {
        Octonion o;
        for (std::size_t k = 0; k < 8; ++k) {
            o.coeffs[k] = x(static_cast<Eigen::Index>(3 + 8 * p + k));
        }
        const auto [a, b] = kOffDiagonal[p];
        m[a][b] = o;
        m[b][a] = oct_conj(o);
    }
    return m;
}

Vec albert_from_matrix(const OctMatrix& m) {
    Vec x = Vec::Zero(27);
    for (std::size_t i = 0; i < 3; ++i) {
        x(static_cast<Eigen::Index>(i)) = m[i][i].coeffs[0];
    }
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [a, b] = kOffDiagonal[p];
        for (std::size_t k = 0; k < 8; ++k) {
            x(static_cast<Eigen::Index>(3 + 8 * p + k)) = m[a][b].coeffs[k];
        }
    }
    return x;
}

OctMatrix oct_matrix_product(const OctMatrix& x, const OctMatrix& y) {
    OctMatrix z{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t l = 0; l < 3; ++l) {
            for (std::size_t m = 0; m < 3; ++m) {
                z[i][l] += oct_mul(x[i][m], y[m][l]);
            }
        }
    }
    return z;
}

Vec albert_symmetric_product(const Vec& x, const Vec& y) {
    const OctMatrix mx = albert_to_matrix(x);
    const OctMatrix my = albert_to_matrix(y);
    const OctMatrix xy = oct_matrix_product(mx, my);
    const OctMatrix yx = oct_matrix_product(my, mx);
    OctMatrix sum{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            sum[i][j] = 0.5 * (xy[i][j] + yx[i][j]);
        }
    }
    return albert_from_matrix(sum);
}

Vec albert_off_diagonal(std::size_t a, std::size_t b, std::size_t k) {
    return unit_vector(27, static_cast<Eigen::Index>(3 + 8 * off_diagonal_slot(a, b) + k));
}

std::size_t parse_count(std::string_view text, std::string_view full) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw JordanError(ErrorKind::UnknownAlgebra, "cannot parse size in '" + std::string(full) + "'");
    }
    return value;
}

std::vector<std::string> split_summands(std::string text) {
    const std::string circled = "\xe2\x8a\x95";  // ⊕
    for (auto pos = text.find(circled); pos != std::string::npos; pos = text.find(circled)) {
        text.replace(pos, circled.size(), "+");
    }
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos = text.find('+'); pos != std::string::npos; pos = text.find('+', start)) {
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    parts.push_back(text.substr(start));
    return parts;
}

ZooAlgebra direct_sum_named(std::vector<ZooAlgebra> summands, std::string name) {
    if (summands.empty()) {
        throw JordanError(ErrorKind::InvalidArgument, "direct_sum needs at least one summand");
    }
    std::size_t n = 0;
    std::vector<std::size_t> offsets;
    for (const auto& s : summands) {
        offsets.push_back(n);
        n += s.dim();
    }
    const auto size = static_cast<Eigen::Index>(n);
    std::vector<StructureEntry> entries;
    Vec unit = Vec::Zero(size);
    Mat star = Mat::Zero(size, size);
    for (std::size_t s = 0; s < summands.size(); ++s) {
        const auto off = offsets[s];
        const auto& alg = summands[s].algebra;
        for (const auto& e : alg.structure()) {
            entries.push_back({e.i + off, e.j + off, e.k + off, e.value});
        }
        unit.segment(static_cast<Eigen::Index>(off), alg.size()) = alg.unit();
        star.block(static_cast<Eigen::Index>(off), static_cast<Eigen::Index>(off), alg.size(), alg.size()) =
            alg.star_matrix();
    }
    JordanAlgebra alg(std::move(name), n, std::move(entries), std::move(unit), std::move(star));
    return ZooAlgebra{std::move(alg), Family::Sum, summands.size(), Frame{}, std::move(summands),
                      std::move(offsets)};
}

}  // namespace

ZooAlgebra matrix_jordan(std::size_t n) {
    if (n < 2) {
        throw JordanError(ErrorKind::InvalidArgument, "matrix_jordan needs n >= 2");
    }
    std::vector<StructureEntry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    // e_ij ∘ e_kl = ½(δ_jk e_il + δ_li e_kj)
                    if (j == k) {
                        entries.push_back({i * n + j, k * n + l, i * n + l, 0.5});
                    }
                    if (l == i) {
                        entries.push_back({i * n + j, k * n + l, k * n + j, 0.5});
                    }
                }
            }
        }
    }
    const auto size = static_cast<Eigen::Index>(n * n);
    Vec unit = Vec::Zero(size);
    Mat star = Mat::Zero(size, size);
    for (std::size_t i = 0; i < n; ++i) {
        unit(static_cast<Eigen::Index>(i * n + i)) = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            star(static_cast<Eigen::Index>(i * n + j), static_cast<Eigen::Index>(j * n + i)) = 1.0;
        }
    }
    JordanAlgebra alg("matrix:" + std::to_string(n), n * n, std::move(entries), std::move(unit), std::move(star));

    Frame frame;
    for (std::size_t i = 0; i < n; ++i) {
        frame.projections.push_back(unit_vector(size, static_cast<Eigen::Index>(i * n + i)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<std::size_t> perm(n);
            for (std::size_t t = 0; t < n; ++t) {
                perm[t] = t;
            }
            std::swap(perm[i], perm[j]);
            frame.exchanges.push_back({permutation_symmetry(perm), i, j});
        }
    }
    return ZooAlgebra{std::move(alg), Family::Matrix, n, std::move(frame), {}, {}};
}

ZooAlgebra spin_factor(std::size_t k) {
    if (k < 3) {
        throw JordanError(ErrorKind::InvalidArgument, "spin_factor needs k >= 3");
    }
    std::vector<StructureEntry> entries;
    for (std::size_t j = 0; j < k; ++j) {
        entries.push_back({0, j, j, 1.0});
        if (j > 0) {
            entries.push_back({j, 0, j, 1.0});
            entries.push_back({j, j, 0, 1.0});
        }
    }
    const auto size = static_cast<Eigen::Index>(k);
    JordanAlgebra alg("spin:" + std::to_string(k), k, std::move(entries), unit_vector(size, 0),
                      Mat::Identity(size, size));
    const Vec one = unit_vector(size, 0);
    const Vec f1 = unit_vector(size, 1);
    Frame frame;
    frame.projections = {0.5 * (one + f1), 0.5 * (one - f1)};
    frame.exchanges.push_back({unit_vector(size, 2), 0, 1});
    return ZooAlgebra{std::move(alg), Family::Spin, k, std::move(frame), {}, {}};
}

ZooAlgebra albert_algebra() {
    std::vector<StructureEntry> entries;
    for (Eigen::Index i = 0; i < 27; ++i) {
        for (Eigen::Index j = 0; j < 27; ++j) {
            const Vec prod = albert_symmetric_product(unit_vector(27, i), unit_vector(27, j));
            for (Eigen::Index k = 0; k < 27; ++k) {
                if (prod(k) != Complex{}) {
                    entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                       static_cast<std::size_t>(k), prod(k)});
                }
            }
        }
    }
    Vec unit = Vec::Zero(27);
    unit.head(3).setOnes();
    JordanAlgebra alg("albert", 27, std::move(entries), unit, Mat::Identity(27, 27));

    Frame frame;
    for (Eigen::Index i = 0; i < 3; ++i) {
        frame.projections.push_back(unit_vector(27, i));
    }
    for (const auto& [a, b] : kOffDiagonal) {
        const std::size_t c = 3 - a - b;
        frame.exchanges.push_back({albert_off_diagonal(a, b, 0) + unit_vector(27, static_cast<Eigen::Index>(c)), a, b});
    }
    return ZooAlgebra{std::move(alg), Family::Albert, 3, std::move(frame), {}, {}};
}

ZooAlgebra scalar_algebra() {
    JordanAlgebra alg("scalar", 1, {{0, 0, 0, 1.0}}, Vec::Ones(1), Mat::Identity(1, 1));
    Frame frame;
    frame.projections.push_back(Vec::Ones(1));
    return ZooAlgebra{std::move(alg), Family::Scalar, 1, std::move(frame), {}, {}};
}

ZooAlgebra direct_sum(std::vector<ZooAlgebra> summands) {
    std::string name = "sum:";
    for (std::size_t s = 0; s < summands.size(); ++s) {
        name += (s == 0 ? "" : "+") + summands[s].name();
    }
    return direct_sum_named(std::move(summands), std::move(name));
}

ZooAlgebra function_algebra(const ZooAlgebra& base, std::size_t m) {
    if (m < 1) {
        throw JordanError(ErrorKind::InvalidArgument, "function_algebra needs m >= 1");
    }
    std::vector<ZooAlgebra> copies(m, base);
    return direct_sum_named(std::move(copies), "func:" + base.name() + ":" + std::to_string(m));
}

ZooAlgebra make_algebra(std::string_view name) {
    const std::string text(name);
    try {
        if (text == "albert") {
            return albert_algebra();
        }
        if (text == "scalar") {
            return scalar_algebra();
        }
        if (text.rfind("matrix:", 0) == 0 && text.find('+') == std::string::npos) {
            return matrix_jordan(parse_count(std::string_view(text).substr(7), name));
        }
        if (text.rfind("spin:", 0) == 0 && text.find('+') == std::string::npos) {
            return spin_factor(parse_count(std::string_view(text).substr(5), name));
        }
        if (text.rfind("func:", 0) == 0) {
            const auto colon = text.rfind(':');
            if (colon <= 5) {
                throw JordanError(ErrorKind::UnknownAlgebra, "func needs <base>:<m>");
            }
            return function_algebra(make_algebra(text.substr(5, colon - 5)),
                                    parse_count(std::string_view(text).substr(colon + 1), name));
        }
        std::string body = text;
        if (body.rfind("sum:", 0) == 0) {
            body = body.substr(4);
        }
        auto parts = split_summands(body);
        if (parts.size() >= 2 || text.rfind("sum:", 0) == 0) {
            std::vector<ZooAlgebra> summands;
            for (const auto& p : parts) {
                summands.push_back(make_algebra(p));
            }
            return direct_sum(std::move(summands));
        }
    } catch (const JordanError& e) {
        if (e.kind() == ErrorKind::UnknownAlgebra) {
            throw;
        }
        throw JordanError(ErrorKind::UnknownAlgebra, "'" + text + "': " + e.what());
    }
    throw JordanError(ErrorKind::UnknownAlgebra, "unknown algebra '" + text + "'");
}

std::vector<std::string> registry_patterns() {
    return {"matrix:<n>  (n >= 2)", "spin:<k>  (k >= 3)", "albert", "scalar", "sum:<A>+<B>[+...]",
            "func:<base>:<m>  (m >= 1)"};
}

Vec central_projection(const ZooAlgebra& sum, std::size_t k) {
    if (k >= sum.summands.size()) {
        throw JordanError(ErrorKind::InvalidArgument, "summand index out of range");
    }
    Vec p = Vec::Zero(sum.algebra.size());
    p.segment(static_cast<Eigen::Index>(sum.offsets[k]), sum.summands[k].algebra.size()) =
        sum.summands[k].algebra.unit();
    return p;
}

Mat coordinate_projection(const ZooAlgebra& sum, std::size_t k) {
    return summand_embedding(sum, k).transpose();
}

Mat summand_embedding(const ZooAlgebra& sum, std::size_t k) {
    if (k >= sum.summands.size()) {
        throw JordanError(ErrorKind::InvalidArgument, "summand index out of range");
    }
    const auto dk = sum.summands[k].algebra.size();
    Mat e = Mat::Zero(sum.algebra.size(), dk);
    e.block(static_cast<Eigen::Index>(sum.offsets[k]), 0, dk, dk).setIdentity();
    return e;
}

Mat constant_embedding(const ZooAlgebra& power) {
    if (power.summands.empty()) {
        throw JordanError(ErrorKind::InvalidArgument, "constant_embedding needs a direct power");
    }
    const auto d = power.summands.front().algebra.size();
    Mat e = Mat::Zero(power.algebra.size(), d);
    for (std::size_t k = 0; k < power.summands.size(); ++k) {
        if (power.summands[k].algebra.size() != d) {
            throw JordanError(ErrorKind::DimensionMismatch, "summands differ in dimension");
        }
        e.block(static_cast<Eigen::Index>(power.offsets[k]), 0, d, d).setIdentity();
    }
    return e;
}

Mat summand_swap(const ZooAlgebra& sum) {
    if (sum.summands.size() != 2 || sum.summands[0].name() != sum.summands[1].name()) {
        throw JordanError(ErrorKind::InvalidArgument, "summand_swap needs two equal summands");
    }
    const auto d = sum.summands[0].algebra.size();
    Mat s = Mat::Zero(2 * d, 2 * d);
    s.block(0, d, d, d).setIdentity();
    s.block(d, 0, d, d).setIdentity();
    return s;
}

double frame_residual(const JordanAlgebra& alg, const Frame& frame) {
    double worst = 0.0;
    Vec total = Vec::Zero(alg.size());
    for (std::size_t i = 0; i < frame.projections.size(); ++i) {
        const Vec& p = frame.projections[i];
        require_dim(alg, p, "frame projection");
        total += p;
        worst = std::max(worst, max_abs(Vec(product(alg, p, p) - p)));
        worst = std::max(worst, max_abs(Vec(star(alg, p) - p)));
        for (std::size_t j = i + 1; j < frame.projections.size(); ++j) {
            worst = std::max(worst, max_abs(product(alg, p, frame.projections[j])));
        }
    }
    if (!frame.projections.empty()) {
        worst = std::max(worst, max_abs(Vec(total - alg.unit())));
    }
    for (const auto& ex : frame.exchanges) {
        if (ex.from >= frame.projections.size() || ex.to >= frame.projections.size()) {
            return std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, max_abs(Vec(product(alg, ex.symmetry, ex.symmetry) - alg.unit())));
        worst = std::max(worst, max_abs(Vec(star(alg, ex.symmetry) - ex.symmetry)));
        const Vec moved = u_operator(alg, ex.symmetry) * frame.projections[ex.from];
        worst = std::max(worst, max_abs(Vec(moved - frame.projections[ex.to])));
    }
    return worst;
}

Vec matrix_to_coords(const Mat& m) {
    const auto n = m.rows();
    Vec v(n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            v(i * n + j) = m(i, j);
        }
    }
    return v;
}

Mat coords_to_matrix(const Vec& coords, std::size_t n) {
    const auto size = static_cast<Eigen::Index>(n);
    if (coords.size() != size * size) {
        throw JordanError(ErrorKind::DimensionMismatch, "coordinate vector is not n*n");
    }
    Mat m(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            m(i, j) = coords(i * size + j);
        }
    }
    return m;
}

Vec permutation_symmetry(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    Mat m = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] >= n || perm[perm[i]] != i) {
            throw JordanError(ErrorKind::InvalidArgument, "permutation is not an involution");
        }
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i])) = 1.0;
    }
    return matrix_to_coords(m);
}

Complex spin_inner(const Vec& a, const Vec& b) { return (a.array() * b.conjugate().array()).sum(); }

Vec spin_bar(const Vec& a) {
    Vec out = -a.conjugate();
    out(0) = std::conj(a(0));
    return out;
}

double spin_norm(const ZooAlgebra& v, const Vec& a) {
    if (v.family != Family::Spin) {
        throw JordanError(ErrorKind::InvalidArgument, "spin_norm needs a spin factor");
    }
    require_dim(v.algebra, a, "spin_norm");
    const double two = a.squaredNorm();
    const double inner = std::abs(spin_inner(a, spin_bar(a)));
    return std::sqrt(two + std::sqrt(std::max(0.0, two * two - inner * inner)));
}

std::vector<Vec> symmetry_catalog(const ZooAlgebra& z) {
    std::vector<Vec> out;
    const auto size = z.algebra.size();
    switch (z.family) {
        case Family::Matrix: {
            const std::size_t n = z.order;
            for (const auto& ex : z.frame.exchanges) {
                out.push_back(ex.symmetry);
            }
            for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
                Mat d = Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
                for (std::size_t i = 0; i < n; ++i) {
                    if ((mask >> i) & 1U) {
                        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = -1.0;
                    }
                }
                out.push_back(matrix_to_coords(d));
            }
            break;
        }
        case Family::Spin: {
            const double h = 1.0 / std::sqrt(2.0);
            for (Eigen::Index i = 1; i < size; ++i) {
                out.push_back(unit_vector(size, i));
                out.push_back(-unit_vector(size, i));
                for (Eigen::Index j = i + 1; j < size; ++j) {
                    out.push_back(h * (unit_vector(size, i) + unit_vector(size, j)));
                    out.push_back(h * (unit_vector(size, i) - unit_vector(size, j)));
                }
            }
            break;
        }
        case Family::Albert: {
            for (std::size_t mask = 1; mask < 8; ++mask) {
                Vec d = Vec::Zero(27);
                for (Eigen::Index i = 0; i < 3; ++i) {
                    d(i) = ((mask >> i) & 1U) ? -1.0 : 1.0;
                }
                out.push_back(d);
            }
            for (const auto& [a, b] : kOffDiagonal) {
                const auto c = static_cast<Eigen::Index>(3 - a - b);
                for (std::size_t k = 0; k < 8; ++k) {
                    for (const double outer : {1.0, -1.0}) {
                        for (const double diag : {1.0, -1.0}) {
                            out.push_back(outer * albert_off_diagonal(a, b, k) + diag * unit_vector(27, c));
                        }
                    }
                }
            }
            break;
        }
        case Family::Scalar:
        case Family::Sum:
            break;
    }
    return out;
}

}  // namespace jordanlab
