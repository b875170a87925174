#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "jordanlab/errors.hpp"
#include "jordanlab/genverify.hpp"

namespace jordanlab {

namespace {

constexpr double kRecoveryBound = 1e-8;
constexpr double kSpinLambdaBound = 1e-10;

using CellFn = std::function<std::vector<CheckRecord>(const ZooAlgebra&, std::uint64_t seed, int index)>;

struct CellGroup {
    std::string algebra;
    int count;
    CellFn run;
    /// Separates the seed streams of several groups on one algebra.
    std::string stream = {};
};

std::string fmt(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

double diff(const Mat& a, const Mat& b) { return max_abs(Mat(a - b)); }

double diff(const BilinearMap& a, const BilinearMap& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            worst = std::max(worst, max_abs(Vec(a.at(i, j) - b.at(i, j))));
        }
    }
    return worst;
}

// A failed step becomes a failing record carrying the error text.
CheckRecord error_record(const std::string& name, const std::string& algebra, std::uint64_t seed,
                         const JordanError& e) {
    const double r = std::isfinite(e.residual()) ? std::max(e.residual(), 1.0) : 1.0;
    return make_record(name, algebra, seed, r, 0.0, e.what());
}

CheckRecord boolean_record(const std::string& name, const std::string& algebra, std::uint64_t seed, bool ok,
                           std::string detail, const Tolerance& tol) {
    return make_record(name, algebra, seed, ok ? 0.0 : 1.0, tol.abs_eps, std::move(detail));
}

// Each control passes when the decomposition raises one of `expected`.
template <typename F>
CheckRecord expect_error(const std::string& name, const std::string& algebra, std::uint64_t seed,
                         std::initializer_list<ErrorKind> expected, F&& attempt) {
    try {
        attempt();
    } catch (const JordanError& e) {
        const bool flagged = std::find(expected.begin(), expected.end(), e.kind()) != expected.end();
        const double r = std::isfinite(e.residual()) ? e.residual() : 0.0;
        return make_control_record(name, algebra, seed, r, flagged, e.what());
    }
    return make_control_record(name, algebra, seed, 0.0, false, "no error raised");
}

struct KitCache {
    std::map<std::string, ElementaryKit> kits;

    const ElementaryKit& get(const ZooAlgebra& z, int variant) const { return kits.at(key(z.name(), variant)); }
    void add(const ZooAlgebra& z, int variant) { kits.emplace(key(z.name(), variant), build_kit(z, variant)); }
    static std::string key(const std::string& name, int variant) { return name + "#" + std::to_string(variant); }
};

std::vector<CheckRecord> run_cells(const std::string& suite, const std::vector<CellGroup>& groups,
                                   const GenConfig& config) {
    struct Cell {
        const CellGroup* group;
        const ZooAlgebra* algebra;
        int index;
    };
    std::map<std::string, ZooAlgebra> algebras;
    std::vector<Cell> cells;
    for (const auto& g : groups) {
        if (!algebras.contains(g.algebra)) {
            algebras.emplace(g.algebra, make_algebra(g.algebra));
        }
    }
    for (const auto& g : groups) {
        for (int i = 0; i < g.count; ++i) {
            cells.push_back({&g, &algebras.at(g.algebra), i});
        }
    }
    std::vector<std::vector<CheckRecord>> results(cells.size());
    const auto total = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < total; ++c) {
        const Cell& cell = cells[static_cast<std::size_t>(c)];
        const std::uint64_t group_seed = derive_seed(config.master_seed, hash_label(suite + "/" + cell.group->algebra + cell.group->stream));
        const std::uint64_t seed = derive_seed(group_seed, static_cast<std::uint64_t>(cell.index));
        try {
            results[static_cast<std::size_t>(c)] = cell.group->run(*cell.algebra, seed, cell.index);
        } catch (const JordanError& e) {
            results[static_cast<std::size_t>(c)] = {error_record(suite + ".cell", cell.group->algebra, seed, e)};
        }
    }
    std::vector<CheckRecord> out;
    for (auto& r : results) {
        std::move(r.begin(), r.end(), std::back_inserter(out));
    }
    std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.check_name, a.algebra, a.seed) < std::tie(b.check_name, b.algebra, b.seed);
    });
    return out;
}

// Bulk cells replaced by a negative control when adversarial_rate asks for it.
bool adversarial_cell(const GenConfig& config, std::uint64_t seed) {
    if (config.adversarial_rate <= 0.0) {
        return false;
    }
    Rng rng(derive_seed(seed, 0xad));
    return rng.uniform(0.0, 1.0) < config.adversarial_rate;
}

// ---- suites ----

std::vector<CheckRecord> suite_axioms(const GenConfig& config, const Tolerance& tol) {
    const int samples = std::max(1, config.samples / 5);
    std::vector<CellGroup> groups;
    for (const char* name : {"matrix:2", "matrix:3", "matrix:4", "spin:3", "spin:4", "spin:6", "albert", "scalar",
                             "sum:matrix:3+matrix:4", "sum:matrix:2+scalar", "func:albert:2"}) {
        groups.push_back({name, 1, [samples, tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              auto records = check_axioms(z.algebra, samples, seed, tol);
                              if (!z.frame.projections.empty()) {
                                  records.push_back(make_record("axiom.frame", z.name(), seed,
                                                                frame_residual(z.algebra, z.frame), tol.abs_eps));
                              }
                              return records;
                          }});
    }
    return run_cells("axioms", groups, config);
}

std::vector<CheckRecord> suite_kits(const GenConfig& config, const Tolerance& tol) {
    std::vector<CellGroup> groups;
    for (const char* name : {"matrix:2", "matrix:3", "matrix:4", "matrix:5", "spin:3", "spin:4", "spin:6", "albert",
                             "sum:matrix:3+matrix:4", "func:albert:2"}) {
        groups.push_back({name, 2, [tol](const ZooAlgebra& z, std::uint64_t seed, int variant) {
                              const ElementaryKit kit = build_kit(z, variant, tol);
                              auto records = verify_kit(z.algebra, kit, tol, seed);
                              for (auto& r : records) {
                                  r.detail += (r.detail.empty() ? "" : " ") + std::string("variant=") +
                                              std::to_string(variant) + " " + kit.log.front();
                              }
                              return records;
                          }});
    }
    return run_cells("kits", groups, config);
}

std::vector<CheckRecord> suite_topping(const GenConfig& config, const Tolerance& tol) {
    const std::vector<std::string> names = {"matrix:2", "matrix:3", "matrix:4", "matrix:5"};
    const int random_pairs = (10 * config.samples + 3) / 4;
    const int commuting_pairs = (config.samples / 2 + 3) / 4;
    auto agreement = [tol](const ZooAlgebra& z, const Mat& x, const Mat& y, std::uint64_t seed,
                           const std::string& name) {
        const Mat xs = x / std::max(max_abs(x), 1e-300);
        const Mat ys = y / std::max(max_abs(y), 1e-300);
        const double op = commutator_residual(z.algebra, matrix_to_coords(xs), matrix_to_coords(ys));
        const double assoc = max_abs(Mat(xs * ys - ys * xs));
        const bool agree = (op <= tol.abs_eps) == (assoc <= tol.abs_eps);
        return boolean_record(name, z.name(), seed, agree, "operator=" + fmt(op) + " associative=" + fmt(assoc), tol);
    };
    std::vector<CellGroup> groups;
    for (const auto& name : names) {
        groups.push_back({name, random_pairs, [agreement](const ZooAlgebra& z, std::uint64_t seed, int) {
                              Rng rng(seed);
                              const auto n = static_cast<Eigen::Index>(z.order);
                              return std::vector{agreement(z, rng.matrix(n, n), rng.matrix(n, n), seed,
                                                           "topping.random_pair")};
                          }});
        groups.push_back({name, commuting_pairs, [agreement](const ZooAlgebra& z, std::uint64_t seed, int index) {
                             Rng rng(derive_seed(seed, 0xc0));
                             const auto n = static_cast<Eigen::Index>(z.order);
                             const Mat x = rng.matrix(n, n);
                             Mat y;
                             if (index % 2 == 0) {
                                 // A polynomial in x.
                                 y = rng.complex_normal() * Mat::Identity(n, n) + rng.complex_normal() * x +
                                     rng.complex_normal() * x * x;
                                 return std::vector{agreement(z, x, y, seed, "topping.commuting_pair")};
                             }
                             // Simultaneously diagonalizable pair.
                             const Mat q = rng.unitary(n) + 0.3 * rng.matrix(n, n);
                             const Mat q_inv = q.inverse();
                             const Mat dx = rng.vector(n).asDiagonal();
                             const Mat dy = rng.vector(n).asDiagonal();
                             return std::vector{agreement(z, q * dx * q_inv, q * dy * q_inv, seed,
                                                          "topping.commuting_pair")};
                         }, "/commuting"});
    }
    return run_cells("topping", groups, config);
}

std::vector<CheckRecord> suite_spin_commutant(const GenConfig& config, const Tolerance& tol) {
    std::vector<CellGroup> groups;
    for (const char* name : {"spin:4", "spin:6"}) {
        groups.push_back({name, config.samples, [tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              Rng rng(seed);
                              Vec x = rng.vector(z.algebra.size());
                              x /= x.norm();
                              const Mat basis = columns_to_matrix(commutant(z.algebra, x, tol), z.algebra.size());
                              const double fit = std::max(span_residual(basis, z.algebra.unit()), span_residual(basis, x));
                              const bool two = basis.cols() == 2;
                              return std::vector{make_record("spin.commutant", z.name(), seed, two ? fit : std::max(fit, 1.0),
                                                             tol.abs_eps, "dimension=" + std::to_string(basis.cols()))};
                          }});
    }
    return run_cells("spin_commutant", groups, config);
}

std::vector<CheckRecord> suite_bresar(const GenConfig& config, const Tolerance& tol) {
    const int traces = std::max(1, config.samples / 10);
    std::vector<CellGroup> groups;
    for (const char* name : {"matrix:2", "matrix:3", "spin:4", "albert", "sum:matrix:2+matrix:3"}) {
        groups.push_back({name, traces, [tol, config](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const auto sample = make_associating_trace(z, seed, config.magnitude);
                              const double cyclic = trace_associating_residual(z.algebra, sample.trace);
                              std::vector<CheckRecord> out;
                              out.push_back(make_record("bresar.cyclic", z.name(), seed, cyclic, tol.abs_eps));
                              if (cyclic <= tol.abs_eps) {
                                  out.push_back(make_record("bresar.polarized", z.name(), seed,
                                                            bresar_polarized_residual(z.algebra, sample.trace),
                                                            tol.abs_eps));
                              }
                              return out;
                          }});
    }
    for (const char* name : {"matrix:2", "matrix:3", "matrix:4"}) {
        groups.push_back({name, config.samples, [config](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const auto sample = make_associating_trace(z, seed, config.magnitude);
                              Rng rng(derive_seed(seed, 0xb0));
                              const auto n = static_cast<Eigen::Index>(z.order);
                              const double r = bresar_associative_residual(z, sample.trace, rng.matrix(n, n),
                                                                           rng.matrix(n, n));
                              return std::vector{make_record("bresar.associative", z.name(), seed, r, kRecoveryBound)};
                          }, "/associative"});
    }
    return run_cells("bresar_identities", groups, config);
}

std::vector<CheckRecord> suite_capelli(const GenConfig& config, const Tolerance& tol) {
    const int tuples = (5 * config.samples) / 2;
    std::vector<CellGroup> groups;
    for (const char* name : {"matrix:3", "matrix:4"}) {
        groups.push_back({name, tuples, [tol](const ZooAlgebra& z, std::uint64_t seed, int index) {
                              Rng rng(seed);
                              const auto n = static_cast<Eigen::Index>(z.order);
                              const std::size_t length = 2 + static_cast<std::size_t>(index % 4);
                              std::vector<Mat> tuple;
                              for (std::size_t k = 0; k < length; ++k) {
                                  tuple.push_back(rng.matrix(n, n));
                              }
                              const bool forced = index % 5 == 0;
                              if (forced) {
                                  Mat combo = Mat::Zero(n, n);
                                  for (std::size_t k = 0; k + 1 < length; ++k) {
                                      combo += rng.complex_normal() * tuple[k];
                                  }
                                  tuple.back() = combo;
                              }
                              const bool capelli = independence_capelli(tuple, 8, derive_seed(seed, 0xca), tol);
                              const bool gram = independence_gram(tuple, tol);
                              std::string detail = "length=" + std::to_string(length) +
                                                   " forced_dependent=" + (forced ? "1" : "0") +
                                                   " capelli=" + (capelli ? "1" : "0") + " gram=" + (gram ? "1" : "0");
                              return std::vector{boolean_record("capelli.agreement", z.name(), seed,
                                                                capelli == gram && gram != forced, detail, tol)};
                          }});
        groups.push_back({name, 2, [tol](const ZooAlgebra& z, std::uint64_t seed, int variant) {
                              const ElementaryKit kit = build_kit(z, variant, tol);
                              const Mat u = coords_to_matrix(kit.u, z.order);
                              const Mat v = coords_to_matrix(*kit.v, z.order);
                              auto bracket = [](const Mat& a, const Mat& b) { return Mat(a * b - b * a); };
                              const std::vector<Mat> triple = {bracket(u * u, v), bracket(u, v * v), bracket(u, v)};
                              const bool capelli = independence_capelli(triple, 8, derive_seed(seed, 0xca), tol);
                              const bool gram = independence_gram(triple, tol);
                              return std::vector{boolean_record("capelli.kit_triple", z.name(), seed, capelli && gram,
                                                                kit.log.front() + " capelli=" + (capelli ? "1" : "0") +
                                                                    " gram=" + (gram ? "1" : "0"),
                                                                tol)};
                          }, "/kit"});
    }
    return run_cells("capelli_agreement", groups, config);
}

std::vector<CheckRecord> suite_central_annihilator(const GenConfig& config, const Tolerance& tol) {
    std::vector<CellGroup> groups;
    const std::vector<std::pair<std::string, bool>> expected = {
        {"matrix:3", true},           {"spin:4", true},  {"albert", true}, {"sum:matrix:3+matrix:4", true},
        {"func:albert:2", true},      {"scalar", false}, {"sum:matrix:3+scalar", false},
        {"sum:spin:4+scalar", false},
    };
    for (const auto& [name, want] : expected) {
        groups.push_back({name, 1, [tol, want](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const bool got = central_annihilator_check(z.algebra, tol);
                              return std::vector{boolean_record("center.annihilator", z.name(), seed, got == want,
                                                                std::string("expected=") + (want ? "1" : "0") +
                                                                    " got=" + (got ? "1" : "0"),
                                                                tol)};
                          }});
    }
    return run_cells("central_annihilator", groups, config);
}

const std::vector<std::string>& roundtrip_algebras() {
    static const std::vector<std::string> names = {"matrix:3", "matrix:4", "spin:4", "spin:6", "albert",
                                                   "sum:matrix:3+matrix:4", "func:albert:2"};
    return names;
}

std::vector<CheckRecord> nonassociating_control(const ZooAlgebra& z, std::uint64_t seed) {
    const AdversarialSample bad = make_adversarial(AdversarialKind::NonAssociating, z, seed);
    const ElementaryKit kit = build_kit(z);
    return {expect_error("control.non_associating", z.name(), seed, {ErrorKind::NotAssociating},
                         [&] { (void)decompose_linear(z.algebra, bad.map, kit); })};
}

std::vector<CheckRecord> suite_linear_roundtrip(const GenConfig& config, const Tolerance& tol) {
    auto kits = std::make_shared<KitCache>();
    std::vector<CellGroup> groups;
    for (const auto& name : roundtrip_algebras()) {
        kits->add(make_algebra(name), 0);
        groups.push_back({name, config.samples, [kits, tol, config](const ZooAlgebra& z, std::uint64_t seed, int) {
                              if (adversarial_cell(config, seed)) {
                                  return nonassociating_control(z, seed);
                              }
                              const auto sample = make_associating_map(z, seed, config.magnitude);
                              std::vector<CheckRecord> out;
                              try {
                                  const auto form = decompose_linear(z.algebra, sample.map, kits->get(z, 0), tol);
                                  out.push_back(make_record("linear.lambda_error", z.name(), seed,
                                                            diff(form.lambda, sample.lambda), kRecoveryBound));
                                  out.push_back(make_record("linear.mu_error", z.name(), seed,
                                                            diff(form.mu, sample.mu), kRecoveryBound));
                                  out.push_back(make_record("linear.residual", z.name(), seed, form.residual, tol.abs_eps));
                              } catch (const JordanError& e) {
                                  out.push_back(error_record("linear.decompose", z.name(), seed, e));
                              }
                              return out;
                          }});
    }
    return run_cells("decompose_linear_roundtrip", groups, config);
}

const std::vector<std::string>& trace_algebras() {
    static const std::vector<std::string> names = {"matrix:3", "matrix:4", "spin:4", "spin:6", "albert",
                                                   "sum:matrix:3+matrix:4"};
    return names;
}

std::vector<CheckRecord> suite_trace_roundtrip(const GenConfig& config, const Tolerance& tol) {
    auto kits = std::make_shared<KitCache>();
    std::vector<CellGroup> groups;
    for (const auto& name : trace_algebras()) {
        kits->add(make_algebra(name), 0);
        groups.push_back({name, config.samples, [kits, tol, config](const ZooAlgebra& z, std::uint64_t seed, int) {
                              if (adversarial_cell(config, seed)) {
                                  const AdversarialSample bad =
                                      make_adversarial(AdversarialKind::NonAssociatingTrace, z, seed);
                                  return std::vector{expect_error(
                                      "control.non_associating_trace", z.name(), seed, {ErrorKind::NotAssociating},
                                      [&] { (void)decompose_trace(z.algebra, *bad.trace, kits->get(z, 0), tol, seed); })};
                              }
                              const auto sample = make_associating_trace(z, seed, config.magnitude);
                              std::vector<CheckRecord> out;
                              try {
                                  const auto form = decompose_trace(z.algebra, sample.trace, kits->get(z, 0), tol, seed);
                                  out.push_back(make_record("trace.lambda_error", z.name(), seed,
                                                            diff(form.lambda, sample.lambda), kRecoveryBound));
                                  out.push_back(make_record("trace.mu_error", z.name(), seed, diff(form.mu, sample.mu),
                                                            kRecoveryBound));
                                  out.push_back(make_record("trace.nu_error", z.name(), seed, diff(form.nu, sample.nu),
                                                            kRecoveryBound));
                                  out.push_back(make_record("trace.residual", z.name(), seed, form.residual, tol.abs_eps));
                                  if (is_spin_type(z)) {
                                      out.push_back(make_record("trace.spin_lambda_zero", z.name(), seed,
                                                                max_abs(form.lambda), kSpinLambdaBound,
                                                                "injected=" + fmt(max_abs(sample.injected_lambda))));
                                  }
                              } catch (const JordanError& e) {
                                  out.push_back(error_record("trace.decompose", z.name(), seed, e));
                              }
                              return out;
                          }});
    }
    return run_cells("decompose_trace_roundtrip", groups, config);
}

const std::vector<std::string>& preserver_algebras() {
    static const std::vector<std::string> names = {"matrix:3", "matrix:4", "sum:matrix:3+matrix:4", "albert",
                                                   "sum:matrix:3+matrix:3"};
    return names;
}

PreserverShape preserver_shape(const ZooAlgebra& z, bool symmetric, int index) {
    PreserverShape shape;
    shape.symmetric = symmetric;
    shape.swap_summands = z.family == Family::Sum && z.summands.size() == 2 &&
                          z.summands[0].name() == z.summands[1].name() && index % 2 == 1;
    return shape;
}

std::vector<CheckRecord> preserver_records(const ZooAlgebra& z, const PreserverSample& sample,
                                           const PreserverDecomposition& d, std::uint64_t seed, const Tolerance& tol) {
    const std::string& name = z.name();
    return {
        make_record("preserver.z0_error", name, seed, diff(d.z0, sample.z0), kRecoveryBound),
        make_record("preserver.J_error", name, seed, diff(d.j, sample.j), kRecoveryBound),
        make_record("preserver.beta_error", name, seed, diff(d.beta, sample.beta), kRecoveryBound),
        make_record("preserver.J_homomorphism", name, seed, homomorphism_residual(z.algebra, z.algebra, d.j),
                    tol.abs_eps),
        boolean_record("preserver.J_invertible", name, seed, Eigen::FullPivLU<Mat>(d.j).isInvertible(), {}, tol),
        make_record("preserver.residual", name, seed, d.residual, tol.abs_eps),
    };
}

std::vector<CheckRecord> suite_preserver_roundtrip(const GenConfig& config, const Tolerance& tol) {
    auto kits = std::make_shared<KitCache>();
    std::vector<CellGroup> groups;
    for (const auto& name : preserver_algebras()) {
        const ZooAlgebra z = make_algebra(name);
        kits->add(z, 0);
        kits->add(z, 1);
        groups.push_back({name, config.samples, [kits, tol, config](const ZooAlgebra& z, std::uint64_t seed, int index) {
                              const ElementaryKit& kit = kits->get(z, 0);
                              if (adversarial_cell(config, seed)) {
                                  const AdversarialSample bad = make_adversarial(AdversarialKind::BrokenJ, z, seed);
                                  double deviation = 0.0;
                                  auto control = expect_error(
                                      "control.broken_J", z.name(), seed,
                                      {ErrorKind::JNotMultiplicative, ErrorKind::ResidualExceeded,
                                       ErrorKind::LambdaNotInvertible},
                                      [&] {
                                          const auto d = decompose_preserver(z.algebra, z.algebra, bad.map, kit, tol);
                                          deviation = diff(d.j, bad.reference->j);
                                          if (deviation > kRecoveryBound) {
                                              throw JordanError(ErrorKind::ResidualExceeded, "J deviates", deviation);
                                          }
                                      });
                                  return std::vector{control};
                              }
                              const auto sample = make_standard_preserver(z, seed, preserver_shape(z, false, index),
                                                                          config.magnitude);
                              std::vector<CheckRecord> out;
                              try {
                                  const auto d = decompose_preserver(z.algebra, z.algebra, sample.phi, kit, tol);
                                  out = preserver_records(z, sample, d, seed, tol);
                                  const auto other = decompose_preserver(z.algebra, z.algebra, sample.phi,
                                                                         kits->get(z, 1), tol);
                                  const double unique = std::max({diff(d.z0, other.z0), diff(d.j, other.j),
                                                                  diff(d.beta, other.beta)});
                                  out.push_back(make_record("preserver.uniqueness", z.name(), seed, unique,
                                                            kRecoveryBound, kits->get(z, 1).log.front()));
                                  out.push_back(make_record("preserver.central_isomorphism", z.name(), seed,
                                                            central_isomorphism_residual(z.algebra, z.algebra,
                                                                                         sample.phi, d.j, tol),
                                                            tol.abs_eps));
                                  if (index % 10 == 0) {
                                      const auto stats = opcomm_preservation_sampled(
                                          z.algebra, z.algebra, sample.phi, 6, derive_seed(seed, 0x0c), tol,
                                          z.family == Family::Sum ? central_units(z) : std::vector<Vec>{});
                                      out.push_back(make_record(
                                          "preserver.opcomm_sampled", z.name(), seed,
                                          1.0 - static_cast<double>(stats.passed) / static_cast<double>(stats.total),
                                          0.0, "worst=" + fmt(stats.worst_residual)));
                                  }
                              } catch (const JordanError& e) {
                                  out.push_back(error_record("preserver.decompose", z.name(), seed, e));
                              }
                              return out;
                          }});
    }
    return run_cells("preserver_roundtrip", groups, config);
}

std::vector<CheckRecord> suite_preserver_symmetric(const GenConfig& config, const Tolerance& tol) {
    auto kits = std::make_shared<KitCache>();
    std::vector<CellGroup> groups;
    const int count = std::max(1, config.samples / 2);
    for (const auto& name : preserver_algebras()) {
        kits->add(make_algebra(name), 0);
        groups.push_back({name, count, [kits, tol, config](const ZooAlgebra& z, std::uint64_t seed, int index) {
                              const auto sample = make_standard_preserver(z, seed, preserver_shape(z, true, index),
                                                                          config.magnitude);
                              std::vector<CheckRecord> out;
                              out.push_back(boolean_record("symmetric.input_sharp", z.name(), seed,
                                                           is_symmetric_map(sample.phi, z.algebra, z.algebra, tol), {},
                                                           tol));
                              try {
                                  const auto d = decompose_preserver(z.algebra, z.algebra, sample.phi, kits->get(z, 0), tol);
                                  auto checks = symmetric_preserver_check(d, z.algebra, z.algebra, tol);
                                  for (auto& r : checks) {
                                      r.seed = seed;
                                      out.push_back(std::move(r));
                                  }
                                  out.push_back(make_record("symmetric.J_error", z.name(), seed, diff(d.j, sample.j),
                                                            kRecoveryBound));
                              } catch (const JordanError& e) {
                                  out.push_back(error_record("symmetric.decompose", z.name(), seed, e));
                              }
                              return out;
                          }});
    }
    return run_cells("preserver_symmetric", groups, config);
}

std::vector<CheckRecord> suite_negative_controls(const GenConfig& config, const Tolerance& tol) {
    const int count = std::max(1, config.samples / 10);
    std::vector<CellGroup> groups;
    for (const char* name : {"spin:4", "spin:6"}) {
        groups.push_back({name, count, [tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const AdversarialSample bad = make_adversarial(AdversarialKind::SpinGenericBijection, z, seed);
                              const ElementaryKit kit = build_kit(z);
                              std::vector<CheckRecord> out;
                              out.push_back(expect_error("control.spin_generic_bijection", z.name(), seed,
                                                         {ErrorKind::JNotMultiplicative}, [&] {
                                                             (void)decompose_preserver(z.algebra, z.algebra, bad.map,
                                                                                       kit, tol, {true});
                                                         }));
                              out.push_back(expect_error("control.spin_kit_missing", z.name(), seed,
                                                         {ErrorKind::KitMissing}, [&] {
                                                             (void)decompose_preserver(z.algebra, z.algebra, bad.map,
                                                                                       kit, tol);
                                                         }));
                              const auto broken = opcomm_preservation_sampled(z.algebra, z.algebra, bad.map, 20,
                                                                              derive_seed(seed, 1), tol);
                              out.push_back(make_control_record("control.spin_nonunital_breaks_opcomm", z.name(), seed,
                                                                broken.worst_residual, broken.passed < broken.total,
                                                                std::to_string(broken.passed) + "/" +
                                                                    std::to_string(broken.total)));
                              // Φ(1) = 1: preserves operator commutativity, yet no standard form exists.
                              Mat unital = bad.map;
                              unital.col(0) = z.algebra.unit();
                              if (Eigen::FullPivLU<Mat>(unital).isInvertible()) {
                                  const auto kept = opcomm_preservation_sampled(z.algebra, z.algebra, unital, 20,
                                                                                derive_seed(seed, 2), tol);
                                  out.push_back(make_record("spin.unital_bijection_preserves", z.name(), seed,
                                                            1.0 - static_cast<double>(kept.passed) /
                                                                      static_cast<double>(kept.total),
                                                            0.0, "worst=" + fmt(kept.worst_residual)));
                                  out.push_back(expect_error("control.spin_unital_bijection", z.name(), seed,
                                                             {ErrorKind::JNotMultiplicative}, [&] {
                                                                 (void)decompose_preserver(z.algebra, z.algebra, unital,
                                                                                           kit, tol, {true});
                                                             }));
                              }
                              return out;
                          }});
    }
    for (const char* name : {"sum:matrix:3+scalar", "sum:spin:4+scalar", "scalar"}) {
        groups.push_back({name, 1, [tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const bool got = central_annihilator_check(z.algebra, tol);
                              return std::vector{
                                  make_control_record("control.central_annihilator", z.name(), seed, 0.0, !got,
                                                      std::string("check=") + (got ? "true" : "false")),
                                  expect_error("control.kit_one_dim_summand", z.name(), seed, {ErrorKind::FrameInvalid},
                                               [&] { (void)build_kit(z, 0, tol); })};
                          }});
    }
    for (const char* name : {"matrix:2", "matrix:3", "spin:4", "albert"}) {
        groups.push_back({name, count, [tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const ElementaryKit kit = build_kit(z, 0, tol);
                              std::vector<CheckRecord> out;
                              for (const auto kind : {AdversarialKind::NonAssociating, AdversarialKind::NonCentralMu}) {
                                  const AdversarialSample bad = make_adversarial(kind, z, seed);
                                  out.push_back(make_control_record(
                                      "control." + to_string(kind) + ".check", z.name(), seed, bad.witness,
                                      !is_associating_linear(z.algebra, bad.map, tol)));
                                  out.push_back(expect_error("control." + to_string(kind), z.name(), seed,
                                                             {ErrorKind::NotAssociating},
                                                             [&] { (void)decompose_linear(z.algebra, bad.map, kit, tol); }));
                              }
                              const AdversarialSample trace =
                                  make_adversarial(AdversarialKind::NonAssociatingTrace, z, seed);
                              out.push_back(expect_error(
                                  "control.non_associating_trace", z.name(), seed, {ErrorKind::NotAssociating},
                                  [&] { (void)decompose_trace(z.algebra, *trace.trace, kit, tol, seed); }));
                              return out;
                          }});
    }
    for (const char* name : {"matrix:3", "albert"}) {
        groups.push_back({name, count, [tol](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const ElementaryKit kit = build_kit(z, 0, tol);
                              const AdversarialSample bad = make_adversarial(AdversarialKind::BrokenJ, z, seed);
                              std::vector<CheckRecord> out;
                              out.push_back(expect_error(
                                  "control.broken_J", z.name(), seed,
                                  {ErrorKind::JNotMultiplicative, ErrorKind::ResidualExceeded,
                                   ErrorKind::LambdaNotInvertible},
                                  [&] {
                                      const auto d = decompose_preserver(z.algebra, z.algebra, bad.map, kit, tol);
                                      const double deviation = diff(d.j, bad.reference->j);
                                      if (deviation > kRecoveryBound) {
                                          throw JordanError(ErrorKind::ResidualExceeded, "J deviates", deviation);
                                      }
                                  }));
                              Mat singular = bad.reference->phi;
                              singular.col(1) = singular.col(0);
                              out.push_back(expect_error("control.singular_preserver", z.name(), seed,
                                                         {ErrorKind::NotBijective}, [&] {
                                                             (void)decompose_preserver(z.algebra, z.algebra, singular,
                                                                                       kit, tol);
                                                         }));
                              return out;
                          }});
    }
    return run_cells("negative_controls", groups, config);
}

std::vector<CheckRecord> suite_mixed_products(const GenConfig& config, const Tolerance& tol) {
    auto kits = std::make_shared<KitCache>();
    const int count = std::max(1, config.samples / 4);
    std::vector<CellGroup> groups;
    for (const char* name : {"sum:matrix:3+matrix:4", "func:albert:2", "sum:matrix:2+matrix:3"}) {
        kits->add(make_algebra(name), 0);
        groups.push_back({name, count, [kits, tol, config](const ZooAlgebra& z, std::uint64_t seed, int) {
                              const auto map = make_associating_map(z, seed, config.magnitude);
                              const auto trace = make_associating_trace(z, derive_seed(seed, 1), config.magnitude);
                              std::vector<CheckRecord> out;
                              for (std::size_t k = 0; k < z.summands.size(); ++k) {
                                  const Vec p = central_projection(z, k);
                                  const std::string detail = "summand=" + std::to_string(k);
                                  out.push_back(make_record("mixed.cross_block", z.name(), seed,
                                                            cross_block_residual(z.algebra, map.map, p, tol),
                                                            tol.abs_eps, detail));
                                  const auto r = mixed_product_residuals(z.algebra, trace.trace, kits->get(z, 0), p, 4,
                                                                         derive_seed(seed, 2 + k), tol);
                                  out.push_back(make_record("mixed.identity", z.name(), seed, r.identity, tol.abs_eps,
                                                            detail));
                                  out.push_back(make_record("mixed.central", z.name(), seed, r.central, tol.abs_eps,
                                                            detail));
                              }
                              return out;
                          }});
    }
    return run_cells("mixed_products", groups, config);
}

using SuiteFn = std::vector<CheckRecord> (*)(const GenConfig&, const Tolerance&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"axioms", suite_axioms},
        {"kits", suite_kits},
        {"topping", suite_topping},
        {"spin_commutant", suite_spin_commutant},
        {"bresar_identities", suite_bresar},
        {"capelli_agreement", suite_capelli},
        {"central_annihilator", suite_central_annihilator},
        {"decompose_linear_roundtrip", suite_linear_roundtrip},
        {"decompose_trace_roundtrip", suite_trace_roundtrip},
        {"preserver_roundtrip", suite_preserver_roundtrip},
        {"preserver_symmetric", suite_preserver_symmetric},
        {"negative_controls", suite_negative_controls},
        {"mixed_products", suite_mixed_products},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

Report run_suite(std::string_view name, const GenConfig& config, const Tolerance& tol) {
    config.validate();
    for (const auto& [suite, fn] : registry()) {
        if (suite == name) {
            return Report{suite, config, fn(config, tol)};
        }
    }
    throw JordanError(ErrorKind::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

}  // namespace jordanlab
