#include "jordanlab/kit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

Vec diagonal_unit(std::size_t n, std::size_t i) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n * n));
    v(static_cast<Eigen::Index>(i * n + i)) = 1.0;
    return v;
}

std::vector<std::size_t> rotation(std::size_t n, int variant) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = (i + static_cast<std::size_t>(variant)) % n;
    }
    return perm;
}

// Involutive permutation swapping each listed pair.
Vec swap_symmetry(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (const auto& [a, b] : pairs) {
        perm[a] = b;
        perm[b] = a;
    }
    return permutation_symmetry(perm);
}

void require_frame(bool ok, const std::string& what, double residual = std::numeric_limits<double>::quiet_NaN()) {
    if (!ok) {
        throw JordanError(ErrorKind::FrameInvalid, what, residual);
    }
}

double deviation(const Vec& a, const Vec& b) { return max_abs(Vec(a - b)); }

void check_projections(const JordanAlgebra& alg, const std::vector<const Vec*>& ps, const Tolerance& tol) {
    Vec total = Vec::Zero(alg.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        require_dim(alg, *ps[i], "frame");
        require_frame(is_projection(alg, *ps[i], tol), "frame element " + std::to_string(i) + " is not a projection");
        total += *ps[i];
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const double r = max_abs(product(alg, *ps[i], *ps[j]));
            require_frame(r <= tol.abs_eps, "frame projections are not orthogonal", r);
        }
    }
    const double r = deviation(total, alg.unit());
    require_frame(r <= tol.abs_eps, "frame projections do not sum to the unit", r);
}

void check_exchange(const JordanAlgebra& alg, const Vec& s, const Vec& from, const Vec& to, const Tolerance& tol,
                    const std::string& label) {
    require_dim(alg, s, "frame");
    require_frame(is_symmetry(alg, s, tol), label + " is not a symmetry");
    const double r = deviation(u_operator(alg, s) * from, to);
    require_frame(r <= tol.abs_eps, label + " does not exchange the declared projections", r);
}

std::string describe(const JordanAlgebra& alg, const std::string& label, const Vec& x) {
    std::ostringstream os;
    os << label << " in " << alg.name() << ": support {";
    bool first = true;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) != Complex{}) {
            os << (first ? "" : ",") << i;
            first = false;
        }
    }
    os << "}";
    return os.str();
}

}  // namespace

const Mat& ElementaryKit::op(int i) const {
    switch (i) {
        case 0: return e0;
        case 1: return e1;
        case 2:
            if (e2) {
                return *e2;
            }
            break;
        default: break;
    }
    throw JordanError(ErrorKind::KitMissing, "kit has no E" + std::to_string(i));
}

ElementaryKit build_kit_case1(const JordanAlgebra& alg, const Case1Frame& f, const Tolerance& tol) {
    check_projections(alg, {&f.p1, &f.p2, &f.p3, &f.p4}, tol);
    check_exchange(alg, f.s, f.p1, f.p2, tol, "s");
    check_exchange(alg, f.s1, f.p1, f.p3, tol, "s'");
    check_exchange(alg, f.s2, f.p1, f.p4, tol, "s''");

    const Mat us = u_operator(alg, f.s);
    const Mat us1 = u_operator(alg, f.s1);
    const Mat us2 = u_operator(alg, f.s2);
    const Mat up1 = u_operator(alg, f.p1);
    const Mat up3 = u_operator(alg, f.p3);

    ElementaryKit kit;
    kit.algebra = alg.name();
    kit.u = 2.0 * product(alg, f.s, f.p1);
    kit.v = 2.0 * product(alg, f.s1, f.p1);
    const Mat lifted = us1 * up3;
    kit.e0 = up3 + lifted + us * lifted + us2 * lifted;
    const Mat d = up1 - lifted;
    kit.e2 = d + us * d + us1 * d + us2 * d;
    kit.e1 = *kit.e2 * mult_operator(alg, kit.u);
    kit.log = {"case I", describe(alg, "p1", f.p1), describe(alg, "p2", f.p2), describe(alg, "p3", f.p3),
               describe(alg, "p4", f.p4), describe(alg, "s", f.s), describe(alg, "s'", f.s1),
               describe(alg, "s''", f.s2)};
    return kit;
}

ElementaryKit build_kit_case2(const JordanAlgebra& alg, const Case2Frame& f, const Tolerance& tol) {
    std::vector<const Vec*> ps = {&f.p1, &f.p2, &f.p3};
    if (f.q1) {
        ps.push_back(&f.q1->q);
    }
    if (f.q2) {
        ps.push_back(&f.q2->q);
    }
    check_projections(alg, ps, tol);
    check_exchange(alg, f.s, f.p1, f.p2, tol, "s");
    check_exchange(alg, f.s1, f.p1, f.p3, tol, "s'");

    const Mat us = u_operator(alg, f.s);
    const Mat us1 = u_operator(alg, f.s1);
    const Mat up1 = u_operator(alg, f.p1);
    const Mat up3 = u_operator(alg, f.p3);

    ElementaryKit kit;
    kit.algebra = alg.name();
    kit.u = 2.0 * product(alg, f.s, f.p1);
    kit.v = 2.0 * product(alg, f.s1, f.p1);
    const Mat lifted = us1 * up3;
    kit.e0 = up3 + lifted + us * lifted;
    const Mat d = up1 - lifted;
    Mat e2 = d + us * d + us1 * d;
    kit.log = {"case II", describe(alg, "p1", f.p1), describe(alg, "p2", f.p2), describe(alg, "p3", f.p3),
               describe(alg, "s", f.s), describe(alg, "s'", f.s1)};

    Vec leftover = Vec::Zero(alg.size());
    int index = 1;
    for (const auto* part : {&f.q1, &f.q2}) {
        if (!part->has_value()) {
            ++index;
            continue;
        }
        const LeftoverPart& q = **part;
        const std::string tag = std::to_string(index++);
        require_frame(is_projection(alg, q.r, tol), "r" + tag + " is not a projection");
        const double below = deviation(product(alg, q.r, f.p2), q.r);
        require_frame(below <= tol.abs_eps, "r" + tag + " is not below p2", below);
        check_exchange(alg, q.t, q.q, q.r, tol, "t" + tag);
        const Mat ut = u_operator(alg, q.t);
        e2 += ut * (u_operator(alg, q.r) - ut * u_operator(alg, q.q));
        leftover += q.q;
        kit.log.push_back(describe(alg, "q" + tag, q.q));
        kit.log.push_back(describe(alg, "r" + tag, q.r));
        kit.log.push_back(describe(alg, "t" + tag, q.t));
    }
    if (f.q1 || f.q2) {
        kit.e0 += u_operator(alg, leftover);
    }
    kit.e2 = std::move(e2);
    kit.e1 = *kit.e2 * mult_operator(alg, kit.u);
    return kit;
}

ElementaryKit build_kit_spin(const JordanAlgebra& alg, const SpinFrame& f, const Tolerance& tol) {
    check_projections(alg, {&f.p1, &f.p2}, tol);
    check_exchange(alg, f.s, f.p1, f.p2, tol, "s");
    const double absorb = deviation(2.0 * product(alg, f.p1, f.s), f.s);
    require_frame(absorb <= tol.abs_eps, "2 p1 ∘ s differs from s", absorb);

    ElementaryKit kit;
    kit.algebra = alg.name();
    kit.u = f.s;
    kit.e1 = mult_operator(alg, f.s) * mult_operator(alg, Vec(2.0 * f.p2)) * mult_operator(alg, Vec(2.0 * f.p1));
    kit.e0 = kit.e1 * mult_operator(alg, f.s);
    kit.log = {"spin", describe(alg, "p1", f.p1), describe(alg, "p2", f.p2), describe(alg, "s", f.s)};
    return kit;
}

ElementaryKit glue_kits(const std::vector<ElementaryKit>& parts, const ZooAlgebra& sum) {
    if (parts.size() != sum.summands.size() || parts.empty()) {
        throw JordanError(ErrorKind::DimensionMismatch, "one kit per summand is required");
    }
    const auto n = sum.algebra.size();
    const bool full = std::all_of(parts.begin(), parts.end(), [](const ElementaryKit& k) { return k.has_e2(); });
    const bool with_v = std::all_of(parts.begin(), parts.end(), [](const ElementaryKit& k) { return k.v.has_value(); });

    ElementaryKit kit;
    kit.algebra = sum.name();
    kit.u = Vec::Zero(n);
    kit.e0 = Mat::Zero(n, n);
    kit.e1 = Mat::Zero(n, n);
    if (full) {
        kit.e2 = Mat::Zero(n, n);
    }
    if (with_v) {
        kit.v = Vec::Zero(n);
    }
    kit.log.push_back("glued over " + std::to_string(parts.size()) + " summands");
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto off = static_cast<Eigen::Index>(sum.offsets[k]);
        const auto d = sum.summands[k].algebra.size();
        const ElementaryKit& part = parts[k];
        if (part.u.size() != d || part.e0.rows() != d) {
            throw JordanError(ErrorKind::DimensionMismatch, "kit does not match summand " + std::to_string(k));
        }
        kit.u.segment(off, d) = part.u;
        kit.e0.block(off, off, d, d) = part.e0;
        kit.e1.block(off, off, d, d) = part.e1;
        if (full) {
            kit.e2->block(off, off, d, d) = *part.e2;
        }
        if (with_v) {
            kit.v->segment(off, d) = *part.v;
        }
        for (const auto& line : part.log) {
            kit.log.push_back("[" + std::to_string(k) + "] " + line);
        }
    }
    return kit;
}

Case1Frame matrix_case1_frame(std::size_t n, int variant) {
    if (n < 4 || n % 4 != 0) {
        throw JordanError(ErrorKind::FrameInvalid, "case I needs n divisible by 4");
    }
    const auto perm = rotation(n, variant);
    const std::size_t blocks = n / 4;
    Case1Frame f;
    std::array<Vec*, 4> ps = {&f.p1, &f.p2, &f.p3, &f.p4};
    for (auto* p : ps) {
        *p = Vec::Zero(static_cast<Eigen::Index>(n * n));
    }
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, 3> swaps;
    for (std::size_t t = 0; t < blocks; ++t) {
        for (std::size_t r = 0; r < 4; ++r) {
            *ps[r] += diagonal_unit(n, perm[4 * t + r]);
        }
        for (std::size_t r = 1; r < 4; ++r) {
            swaps[r - 1].emplace_back(perm[4 * t], perm[4 * t + r]);
        }
    }
    f.s = swap_symmetry(n, swaps[0]);
    f.s1 = swap_symmetry(n, swaps[1]);
    f.s2 = swap_symmetry(n, swaps[2]);
    return f;
}

Case2Frame matrix_case2_frame(std::size_t n, int variant) {
    if (n < 3) {
        throw JordanError(ErrorKind::FrameInvalid, "case II needs n >= 3");
    }
    const auto perm = rotation(n, variant);
    const std::size_t blocks = n / 3;
    const std::size_t rest = n % 3;
    Case2Frame f;
    f.p1 = f.p2 = f.p3 = Vec::Zero(static_cast<Eigen::Index>(n * n));
    std::vector<std::pair<std::size_t, std::size_t>> swap12;
    std::vector<std::pair<std::size_t, std::size_t>> swap13;
    for (std::size_t t = 0; t < blocks; ++t) {
        f.p1 += diagonal_unit(n, perm[3 * t]);
        f.p2 += diagonal_unit(n, perm[3 * t + 1]);
        f.p3 += diagonal_unit(n, perm[3 * t + 2]);
        swap12.emplace_back(perm[3 * t], perm[3 * t + 1]);
        swap13.emplace_back(perm[3 * t], perm[3 * t + 2]);
    }
    f.s = swap_symmetry(n, swap12);
    f.s1 = swap_symmetry(n, swap13);
    // Leftover diagonal units are moved onto the first unit of p2 by a transposition.
    const std::size_t anchor = perm[1];
    for (std::size_t extra = 0; extra < rest; ++extra) {
        const std::size_t idx = perm[3 * blocks + extra];
        LeftoverPart part{diagonal_unit(n, idx), diagonal_unit(n, anchor), swap_symmetry(n, {{anchor, idx}})};
        (extra == 0 ? f.q1 : f.q2) = std::move(part);
    }
    return f;
}

Case2Frame albert_case2_frame(int variant) {
    const ZooAlgebra alb = albert_algebra();
    const auto perm = rotation(3, variant);
    auto exchange = [&](std::size_t a, std::size_t b) -> Vec {
        for (const auto& ex : alb.frame.exchanges) {
            if ((ex.from == a && ex.to == b) || (ex.from == b && ex.to == a)) {
                return ex.symmetry;
            }
        }
        throw JordanError(ErrorKind::FrameInvalid, "albert frame lacks an exchange");
    };
    Case2Frame f;
    f.p1 = alb.frame.projections[perm[0]];
    f.p2 = alb.frame.projections[perm[1]];
    f.p3 = alb.frame.projections[perm[2]];
    f.s = exchange(perm[0], perm[1]);
    f.s1 = exchange(perm[0], perm[2]);
    return f;
}

SpinFrame spin_frame(const ZooAlgebra& z, int variant) {
    const auto n = z.algebra.size();
    auto basis = [&](Eigen::Index i) {
        Vec v = Vec::Zero(n);
        v(i) = 1.0;
        return v;
    };
    if (z.family == Family::Spin) {
        const Eigen::Index axis = variant % 2 == 0 ? 1 : 2;
        const Eigen::Index mover = variant % 2 == 0 ? 2 : 1;
        return {0.5 * (basis(0) + basis(axis)), 0.5 * (basis(0) - basis(axis)), basis(mover)};
    }
    if (z.family == Family::Matrix && z.order == 2) {
        const Vec s = z.frame.exchanges.front().symmetry;
        if (variant % 2 == 0) {
            return {z.frame.projections[0], z.frame.projections[1], s};
        }
        return {z.frame.projections[1], z.frame.projections[0], s};
    }
    throw JordanError(ErrorKind::FrameInvalid, z.name() + " is not of spin type");
}

ElementaryKit build_kit(const ZooAlgebra& z, int variant, const Tolerance& tol) {
    switch (z.family) {
        case Family::Matrix:
            if (z.order == 2) {
                return build_kit_spin(z.algebra, spin_frame(z, variant), tol);
            }
            if (z.order % 4 == 0 && variant % 2 == 0) {
                return build_kit_case1(z.algebra, matrix_case1_frame(z.order, variant / 2), tol);
            }
            return build_kit_case2(z.algebra, matrix_case2_frame(z.order, variant), tol);
        case Family::Spin:
            return build_kit_spin(z.algebra, spin_frame(z, variant), tol);
        case Family::Albert:
            return build_kit_case2(z.algebra, albert_case2_frame(variant), tol);
        case Family::Scalar:
            throw JordanError(ErrorKind::FrameInvalid, "one-dimensional summand admits no elementary kit");
        case Family::Sum: {
            std::vector<ElementaryKit> parts;
            for (const auto& s : z.summands) {
                parts.push_back(build_kit(s, variant, tol));
            }
            return glue_kits(parts, z);
        }
    }
    throw JordanError(ErrorKind::FrameInvalid, "unsupported algebra family");
}

double kronecker_residual(const JordanAlgebra& alg, const ElementaryKit& kit) {
    require_dim(alg, kit.u, "kronecker_residual");
    const std::array<Vec, 3> powers = {alg.unit(), kit.u, product(alg, kit.u, kit.u)};
    double worst = 0.0;
    for (int i = 0; i < kit.order(); ++i) {
        for (int j = 0; j < kit.order(); ++j) {
            Vec value = kit.op(i) * powers[static_cast<std::size_t>(j)];
            if (i == j) {
                value -= alg.unit();
            }
            worst = std::max(worst, max_abs(value));
        }
    }
    return worst;
}

std::vector<CheckRecord> verify_kit(const JordanAlgebra& alg, const ElementaryKit& kit, const Tolerance& tol,
                                    std::uint64_t seed) {
    std::vector<CheckRecord> out;
    const std::string& name = alg.name();
    out.push_back(make_record("kit.kronecker", name, seed, kronecker_residual(alg, kit), tol.abs_eps));

    const Mat z_basis = center_matrix(alg, tol);
    Rng rng(seed);
    const Vec z = z_basis * rng.vector(z_basis.cols());
    const Mat mz = mult_operator(alg, z);
    const Mat& s = alg.star_matrix();
    double symmetry = 0.0;
    double central = 0.0;
    for (int i = 0; i < kit.order(); ++i) {
        const Mat& e = kit.op(i);
        const double estimate = operator_norm_estimate(e, tol.norm_trials, derive_seed(seed, static_cast<std::uint64_t>(i)));
        std::ostringstream detail;
        detail.precision(17);
        detail << "estimate=" << estimate;
        out.push_back(make_record("kit.norm.E" + std::to_string(i), name, seed,
                                  std::max(0.0, estimate - kKitNormBound), tol.abs_eps, detail.str()));
        symmetry = std::max(symmetry, max_abs(Mat(e * s - s * e.conjugate())));
        central = std::max(central, max_abs(Mat(e * mz - mz * e)));
    }
    out.push_back(make_record("kit.symmetry", name, seed, symmetry, tol.abs_eps));
    out.push_back(make_record("kit.central_linearity", name, seed, central, tol.abs_eps));
    return out;
}

}  // namespace jordanlab
