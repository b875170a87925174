#include <algorithm>
#include <cmath>

#include "jordanlab/errors.hpp"
#include "jordanlab/genverify.hpp"

namespace jordanlab {

namespace {

constexpr int kMaxRetries = 32;
constexpr double kMaxPreserverCondition = 1e3;
constexpr double kInverseBound = 10.0;

Mat central_frame(const ZooAlgebra& z) { return columns_to_matrix(central_units(z), z.algebra.size()); }

// Center-valued linear map x ↦ Σ_c z_c φ_c(x).
Mat random_center_valued(const ZooAlgebra& z, Rng& rng, double magnitude) {
    const Mat frame = central_frame(z);
    return frame * rng.matrix(frame.cols(), z.algebra.size(), magnitude);
}

BilinearMap random_center_valued_symmetric(const ZooAlgebra& z, Rng& rng, double magnitude) {
    const Mat frame = central_frame(z);
    const std::size_t n = z.dim();
    BilinearMap nu(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Vec value = frame * rng.vector(frame.cols(), magnitude);
            nu.at(i, j) = value;
            nu.at(j, i) = value;
        }
    }
    return nu;
}

// Element with no central component, normalised to max-modulus 1.
Vec random_noncentral(const ZooAlgebra& z, Rng& rng) {
    const Mat center = center_matrix(z.algebra);
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        Vec x = rng.vector(z.algebra.size());
        x -= center * (center.adjoint() * x);
        const double m = max_abs(x);
        if (m > 1e-3) {
            return x / m;
        }
    }
    throw JordanError(ErrorKind::RetriesExhausted, z.name() + " has no non-central elements");
}

// x² = 2t(x)x − d(x,x)·1 on spin-type algebras; returns (t, d) as a row and a symmetric matrix.
std::pair<Eigen::RowVectorXcd, Mat> spin_type_quadratic(const ZooAlgebra& z) {
    const auto n = z.algebra.size();
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(n);
    Mat d = Mat::Zero(n, n);
    if (z.family == Family::Spin) {
        t(0) = 1.0;
        d(0, 0) = 1.0;
        for (Eigen::Index k = 1; k < n; ++k) {
            d(k, k) = -1.0;
        }
        return {t, d};
    }
    // M_2: t = trace/2, d = polarized determinant on e11, e12, e21, e22.
    t(0) = t(3) = 0.5;
    d(0, 3) = d(3, 0) = 0.5;
    d(1, 2) = d(2, 1) = -0.5;
    return {t, d};
}

Mat checked_invertible(const Mat& m) {
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(1e-6);
    return lu.isInvertible() ? lu.inverse() : Mat();
}

// Near-singular draws amplify roundoff in every downstream inverse.
bool well_conditioned(const Mat& m, double max_condition) {
    const Eigen::JacobiSVD<Mat> svd(m);
    const auto& sigma = svd.singularValues();
    return sigma.size() > 0 && sigma(sigma.size() - 1) * max_condition >= sigma(0);
}

Vec embed_per_summand(const ZooAlgebra& z, const std::vector<Vec>& parts) {
    Vec out = Vec::Zero(z.algebra.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out.segment(static_cast<Eigen::Index>(z.offsets[k]), parts[k].size()) = parts[k];
    }
    return out;
}

}  // namespace

void GenConfig::validate() const {
    if (samples < 1) {
        throw JordanError(ErrorKind::InvalidArgument, "samples must be at least 1");
    }
    if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
        throw JordanError(ErrorKind::InvalidArgument, "magnitude must be positive");
    }
    if (!(adversarial_rate >= 0.0 && adversarial_rate <= 1.0)) {
        throw JordanError(ErrorKind::InvalidArgument, "adversarial_rate must lie in [0, 1]");
    }
}

Vec random_element(const JordanAlgebra& alg, std::uint64_t seed, double magnitude) {
    Rng rng(seed);
    return rng.vector(alg.size(), magnitude);
}

std::vector<Vec> central_units(const ZooAlgebra& z) {
    if (z.family != Family::Sum) {
        return {z.algebra.unit()};
    }
    std::vector<Vec> out;
    for (std::size_t k = 0; k < z.summands.size(); ++k) {
        const Mat embed = summand_embedding(z, k);
        for (const Vec& unit : central_units(z.summands[k])) {
            out.emplace_back(embed * unit);
        }
    }
    return out;
}

Vec random_central(const ZooAlgebra& z, std::uint64_t seed, double magnitude, bool self_adjoint) {
    Rng rng(seed);
    Vec out = Vec::Zero(z.algebra.size());
    for (const Vec& unit : central_units(z)) {
        const Complex c = self_adjoint ? Complex{rng.normal(), 0.0} : rng.complex_normal();
        out += magnitude * c * unit;
    }
    return out;
}

Vec random_central_invertible(const ZooAlgebra& z, std::uint64_t seed, double magnitude, bool self_adjoint) {
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const Vec c = random_central(z, derive_seed(seed, static_cast<std::uint64_t>(attempt)), magnitude, self_adjoint);
        const auto inverse = jordan_inverse(z.algebra, c);
        if (inverse && max_abs(*inverse) <= kInverseBound / magnitude) {
            return c;
        }
    }
    throw JordanError(ErrorKind::RetriesExhausted, "no invertible central element found on " + z.name());
}

Vec random_symmetry(const ZooAlgebra& z, Rng& rng) {
    switch (z.family) {
        case Family::Matrix: {
            if (rng.index(3) == 0) {
                const auto catalog = symmetry_catalog(z);
                return catalog[rng.index(catalog.size())];
            }
            const auto n = static_cast<Eigen::Index>(z.order);
            const Mat q = rng.unitary(n);
            const auto rank = static_cast<Eigen::Index>(1 + rng.index(z.order - 1));
            Mat diag = Mat::Zero(n, n);
            diag.topLeftCorner(rank, rank).setIdentity();
            Mat s = 2.0 * q * diag * q.adjoint() - Mat::Identity(n, n);
            s = 0.5 * (s + s.adjoint()).eval();
            return matrix_to_coords(s);
        }
        case Family::Spin: {
            if (rng.index(2) == 0) {
                const auto catalog = symmetry_catalog(z);
                return catalog[rng.index(catalog.size())];
            }
            Vec s = Vec::Zero(z.algebra.size());
            for (Eigen::Index k = 1; k < s.size(); ++k) {
                s(k) = rng.normal();
            }
            return s / s.norm();
        }
        case Family::Albert: {
            const auto catalog = symmetry_catalog(z);
            return catalog[rng.index(catalog.size())];
        }
        case Family::Scalar:
            throw JordanError(ErrorKind::CatalogEmpty, "the scalar algebra has no symmetry catalog");
        case Family::Sum: {
            std::vector<Vec> parts;
            for (const auto& summand : z.summands) {
                parts.push_back(summand.family == Family::Scalar ? summand.algebra.unit() : random_symmetry(summand, rng));
            }
            return embed_per_summand(z, parts);
        }
    }
    throw JordanError(ErrorKind::CatalogEmpty, "unsupported algebra family");
}

Mat random_inner_automorphism(const ZooAlgebra& z, int word_length, std::uint64_t seed) {
    if (word_length < 0) {
        throw JordanError(ErrorKind::InvalidArgument, "word_length must be non-negative");
    }
    if (z.family == Family::Scalar) {
        throw JordanError(ErrorKind::CatalogEmpty, "the scalar algebra has no symmetry catalog");
    }
    Rng rng(seed);
    const auto n = z.algebra.size();
    Mat j = Mat::Identity(n, n);
    for (int k = 0; k < word_length; ++k) {
        j = u_operator(z.algebra, random_symmetry(z, rng)) * j;
    }
    return j;
}

bool is_spin_type(const ZooAlgebra& z) {
    return z.family == Family::Spin || (z.family == Family::Matrix && z.order == 2);
}

AssociatingMapSample make_associating_map(const ZooAlgebra& z, std::uint64_t seed, double magnitude) {
    Rng rng(derive_seed(seed, 1));
    AssociatingMapSample s;
    s.lambda = random_central(z, derive_seed(seed, 0), magnitude);
    s.mu = random_center_valued(z, rng, magnitude);
    s.map = mult_operator(z.algebra, s.lambda) + s.mu;
    return s;
}

AssociatingTraceSample make_associating_trace(const ZooAlgebra& z, std::uint64_t seed, double magnitude) {
    Rng rng(derive_seed(seed, 1));
    const Vec lambda = random_central(z, derive_seed(seed, 0), magnitude);
    const Mat mu = random_center_valued(z, rng, magnitude);
    BilinearMap nu = random_center_valued_symmetric(z, rng, magnitude);
    BilinearMap trace = trace_from_parameters(z.algebra, lambda, mu, nu);
    if (!is_spin_type(z)) {
        return {std::move(trace), lambda, mu, std::move(nu), lambda};
    }
    // λ₀∘x² = 2l·t(x)·x − l·d(x,x)·1 moves into μ and ν.
    const Complex l = lambda(0);
    const auto [t, d] = spin_type_quadratic(z);
    const Vec& unit = z.algebra.unit();
    const Mat folded_mu = mu + 2.0 * l * unit * t;
    BilinearMap folded_nu = BilinearMap::from_function(z.dim(), [&](std::size_t i, std::size_t j) {
        return Vec(nu.at(i, j) - l * d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * unit);
    });
    return {std::move(trace), Vec::Zero(z.algebra.size()), folded_mu, std::move(folded_nu), lambda};
}

PreserverSample make_standard_preserver(const ZooAlgebra& z, std::uint64_t seed, PreserverShape shape,
                                        double magnitude) {
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(attempt));
        Rng rng(derive_seed(base, 2));
        PreserverSample s;
        s.z0 = random_central_invertible(z, derive_seed(base, 0), magnitude, shape.symmetric);
        s.j = random_inner_automorphism(z, shape.word_length, derive_seed(base, 1));
        if (shape.swap_summands) {
            s.j = summand_swap(z) * s.j;
        }
        s.beta = random_center_valued(z, rng, 0.25 * magnitude);
        if (shape.symmetric) {
            s.beta = 0.5 * (s.beta + sharp(s.beta, z.algebra, z.algebra));
        }
        s.phi = mult_operator(z.algebra, s.z0) * s.j + s.beta;
        if (well_conditioned(s.phi, kMaxPreserverCondition)) {
            return s;
        }
    }
    throw JordanError(ErrorKind::RetriesExhausted, "no well-conditioned preserver found on " + z.name());
}

std::string to_string(AdversarialKind kind) {
    switch (kind) {
        case AdversarialKind::NonAssociating: return "non_associating";
        case AdversarialKind::NonCentralMu: return "non_central_mu";
        case AdversarialKind::NonAssociatingTrace: return "non_associating_trace";
        case AdversarialKind::SpinGenericBijection: return "spin_generic_bijection";
        case AdversarialKind::BrokenJ: return "broken_J";
    }
    return "unknown";
}

AdversarialKind adversarial_kind_from_string(std::string_view text) {
    for (const auto kind : {AdversarialKind::NonAssociating, AdversarialKind::NonCentralMu,
                            AdversarialKind::NonAssociatingTrace, AdversarialKind::SpinGenericBijection,
                            AdversarialKind::BrokenJ}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw JordanError(ErrorKind::InvalidArgument, "unknown adversarial kind '" + std::string(text) + "'");
}

AdversarialSample make_adversarial(AdversarialKind kind, const ZooAlgebra& z, std::uint64_t seed) {
    const JordanAlgebra& alg = z.algebra;
    const auto n = alg.size();
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(attempt));
        Rng rng(derive_seed(base, 7));
        AdversarialSample s{kind, Mat(), std::nullopt, std::nullopt, 0.0};
        switch (kind) {
            case AdversarialKind::NonAssociating: {
                // A multiplication operator by a non-central element.
                s.map = make_associating_map(z, base).map + mult_operator(alg, random_noncentral(z, rng));
                s.witness = associating_linear_residual(alg, s.map);
                break;
            }
            case AdversarialKind::NonCentralMu: {
                // Standard form whose μ takes values outside the center.
                const AssociatingMapSample good = make_associating_map(z, base);
                const Vec off = random_noncentral(z, rng);
                const Eigen::RowVectorXcd functional = rng.vector(n).transpose();
                s.map = good.map + off * functional;
                s.witness = associating_linear_residual(alg, s.map);
                break;
            }
            case AdversarialKind::NonAssociatingTrace: {
                // ν(x,x) = φ(x)²·a with a non-central.
                AssociatingTraceSample good = make_associating_trace(z, base);
                const Vec off = random_noncentral(z, rng);
                const Vec functional = rng.vector(n);
                BilinearMap b = BilinearMap::from_function(z.dim(), [&](std::size_t i, std::size_t j) {
                    return Vec(good.trace.at(i, j) + functional(static_cast<Eigen::Index>(i)) *
                                                         functional(static_cast<Eigen::Index>(j)) * off);
                });
                s.witness = trace_associating_residual(alg, b);
                s.trace = std::move(b);
                break;
            }
            case AdversarialKind::SpinGenericBijection: {
                if (z.family != Family::Spin) {
                    throw JordanError(ErrorKind::InvalidArgument, "spin_generic_bijection needs a spin factor");
                }
                s.map = rng.matrix(n, n);
                s.witness = max_abs(Vec(s.map.col(0).tail(n - 1)));
                if (checked_invertible(s.map).size() == 0) {
                    s.witness = 0.0;
                }
                break;
            }
            case AdversarialKind::BrokenJ: {
                PreserverSample good = make_standard_preserver(z, base);
                const Mat broken = good.j + 1e-3 * rng.matrix(n, n);
                s.map = mult_operator(alg, good.z0) * broken + good.beta;
                s.witness = homomorphism_residual(alg, alg, broken);
                if (checked_invertible(s.map).size() == 0) {
                    s.witness = 0.0;
                }
                s.reference = std::move(good);
                break;
            }
        }
        if (s.witness > 1e-6) {
            return s;
        }
    }
    throw JordanError(ErrorKind::RetriesExhausted, "could not inject a " + to_string(kind) + " defect on " + z.name());
}

}  // namespace jordanlab
