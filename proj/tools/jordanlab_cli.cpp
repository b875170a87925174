#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jordanlab/errors.hpp"
#include "jordanlab/json_io.hpp"

namespace {

using namespace jordanlab;

enum Exit : int {
    kOk = 0,
    kUnknownName = 2,
    kIo = 3,
    kFrame = 4,
    kResidual = 5,
    kPrecondition = 6,
    kDecomposition = 7,
};

struct CliConfig {
    double tol_abs = 1e-9;
    std::uint64_t seed = 0;
    int trials = 256;
    std::string format = "json";
    std::string out;
    bool seed_given = false;

    [[nodiscard]] Tolerance tolerance() const { return Tolerance(tol_abs, trials); }

    [[nodiscard]] std::uint64_t effective_seed() const {
        if (seed_given) {
            return seed;
        }
        if (const char* env = std::getenv("JORDANLAB_SEED")) {
            try {
                return std::stoull(env);
            } catch (const std::exception&) {
                throw JordanError(ErrorKind::InvalidArgument, "JORDANLAB_SEED is not an unsigned integer");
            }
        }
        return seed;
    }
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw IoError("cannot write to stdout");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) {
        throw IoError("cannot write " + path);
    }
}

Json read_json(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot read " + path);
    }
    try {
        return Json::parse(file);
    } catch (const Json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

int exit_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownAlgebra:
        case ErrorKind::UnknownSuite:
        case ErrorKind::InvalidArgument:
            return kUnknownName;
        case ErrorKind::ParseError:
        case ErrorKind::DimensionMismatch:
            return kIo;
        case ErrorKind::FrameInvalid:
        case ErrorKind::KitMissing:
        case ErrorKind::CatalogEmpty:
            return kFrame;
        case ErrorKind::NotAssociating:
        case ErrorKind::NotBijective:
            return kPrecondition;
        case ErrorKind::ResidualExceeded:
        case ErrorKind::JNotMultiplicative:
        case ErrorKind::LambdaNotInvertible:
            return kDecomposition;
        default:
            return kResidual;
    }
}

Json error_json(const JordanError& e) {
    Json out = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (std::isfinite(e.residual())) {
        out["residual"] = e.residual();
    }
    return out;
}

// ---- commands ----

int cmd_zoo_list(const CliConfig& cfg) {
    std::ostringstream os;
    for (const auto& name : registry_patterns()) {
        os << name << "\n";
    }
    write_output(cfg.out, os.str());
    return kOk;
}

int cmd_zoo_export(const CliConfig& cfg, const std::string& name) {
    const ZooAlgebra z = make_algebra(name);
    write_output(cfg.out, canonical_dump(to_json(z.algebra)));
    return kOk;
}

int cmd_kit_build(const CliConfig& cfg, const std::string& name, int variant) {
    const ZooAlgebra z = make_algebra(name);
    const Tolerance tol = cfg.tolerance();
    const ElementaryKit kit = build_kit(z, variant, tol);
    const auto records = verify_kit(z.algebra, kit, tol, cfg.effective_seed());
    Json out = to_json(kit);
    out["report"] = to_json(records);
    write_output(cfg.out, canonical_dump(out));
    return all_pass(records) ? kOk : kResidual;
}

int cmd_verify(const CliConfig& cfg, const std::string& which, int samples, double adversarial_rate) {
    GenConfig config;
    config.master_seed = cfg.effective_seed();
    config.samples = samples;
    config.adversarial_rate = adversarial_rate;
    std::vector<std::string> suites;
    if (which == "all") {
        suites = suite_names();
    } else {
        suites.push_back(which);
    }
    std::vector<Report> reports;
    for (const auto& suite : suites) {
        reports.push_back(run_suite(suite, config, cfg.tolerance()));
    }
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed();
    }
    if (cfg.format == "md") {
        write_output(cfg.out, render_markdown(reports));
    } else if (reports.size() == 1) {
        write_output(cfg.out, canonical_dump(to_json(reports.front())));
    } else {
        Json all = Json::array();
        for (const auto& r : reports) {
            all.push_back(to_json(r));
        }
        write_output(cfg.out, canonical_dump(Json{{"reports", all}, {"pass", ok}}));
    }
    return ok ? kOk : kResidual;
}

// Accepts a bare operator or one wrapped as {"map": ...}, {"matrix": ...} or {"trace": ...}.
Json unwrap(const Json& input) {
    for (const char* key : {"map", "matrix", "trace"}) {
        if (input.is_object() && input.contains(key)) {
            return input.at(key);
        }
    }
    return input;
}

int cmd_decompose(const CliConfig& cfg, const std::string& mode, const std::string& name, const std::string& input,
                  const std::string& kit_path, bool allow_spin) {
    const ZooAlgebra z = make_algebra(name);
    const Tolerance tol = cfg.tolerance();
    const Json in = read_json(input);
    const ElementaryKit kit = kit_path.empty() ? build_kit(z, 0, tol) : kit_from_json(read_json(kit_path));
    if (kit.u.size() != z.algebra.size()) {
        throw JordanError(ErrorKind::DimensionMismatch, "kit does not match " + z.name());
    }
    Json out = {{"algebra", z.name()}, {"mode", mode}};
    try {
        if (mode == "linear") {
            out["decomposition"] = to_json(decompose_linear(z.algebra, mat_from_json(unwrap(in)), kit, tol));
        } else if (mode == "trace") {
            out["decomposition"] = to_json(decompose_trace(z.algebra, bilinear_from_json(unwrap(in)), kit, tol,
                                                           cfg.effective_seed()));
        } else {
            out["decomposition"] = to_json(decompose_preserver(z.algebra, z.algebra, mat_from_json(unwrap(in)),
                                                               kit, tol, PreserverOptions{allow_spin}));
        }
    } catch (const JordanError& e) {
        const int code = exit_for(e.kind());
        if (code == kPrecondition || code == kDecomposition) {
            out["error"] = error_json(e);
            write_output(cfg.out, canonical_dump(out));
            std::cerr << "jordanlab: " << e.what() << "\n";
            return code;
        }
        throw;
    }
    write_output(cfg.out, canonical_dump(out));
    return kOk;
}

int cmd_gen(const CliConfig& cfg, const std::string& mode, const std::string& name, const std::string& kind,
            bool symmetric) {
    const ZooAlgebra z = make_algebra(name);
    const std::uint64_t seed = cfg.effective_seed();
    Json out = {{"algebra", z.name()}, {"mode", mode}, {"seed", seed}};
    if (mode == "linear") {
        const auto s = make_associating_map(z, seed);
        out["map"] = to_json(s.map);
        out["parameters"] = {{"lambda", to_json(s.lambda)}, {"mu", to_json(s.mu)}};
    } else if (mode == "trace") {
        const auto s = make_associating_trace(z, seed);
        out["trace"] = to_json(s.trace);
        out["parameters"] = {{"lambda", to_json(s.lambda)},
                             {"mu", to_json(s.mu)},
                             {"nu", to_json(s.nu)},
                             {"injected_lambda", to_json(s.injected_lambda)}};
    } else if (mode == "preserver") {
        PreserverShape shape;
        shape.symmetric = symmetric;
        const auto s = make_standard_preserver(z, seed, shape);
        out["map"] = to_json(s.phi);
        out["parameters"] = {{"z0", to_json(s.z0)}, {"J", to_json(s.j)}, {"beta", to_json(s.beta)}};
    } else {
        const auto s = make_adversarial(adversarial_kind_from_string(kind), z, seed);
        out["kind"] = to_string(s.kind);
        out["witness"] = s.witness;
        if (s.trace) {
            out["trace"] = to_json(*s.trace);
        } else {
            out["map"] = to_json(s.map);
        }
    }
    write_output(cfg.out, canonical_dump(out));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional Jordan algebra toolkit"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--tol", cfg.tol_abs, "absolute tolerance")->check(CLI::PositiveNumber);
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&cfg](const std::uint64_t& s) {
                cfg.seed = s;
                cfg.seed_given = true;
            },
            "master seed (overrides JORDANLAB_SEED)");
        cmd->add_option("--trials", cfg.trials, "norm-estimate restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--out", cfg.out, "output path (default stdout)");
    };

    auto* zoo = app.add_subcommand("zoo", "list or export algebras");
    zoo->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "registry names");
    add_common(zoo_list);
    std::string export_name;
    auto* zoo_export = zoo->add_subcommand("export", "algebra JSON");
    zoo_export->add_option("name", export_name)->required();
    add_common(zoo_export);

    auto* kit = app.add_subcommand("kit", "elementary operator kits");
    kit->require_subcommand(1);
    auto* kit_build = kit->add_subcommand("build", "build and verify a kit");
    std::string kit_algebra;
    int kit_variant = 0;
    kit_build->add_option("--algebra", kit_algebra)->required();
    kit_build->add_option("--variant", kit_variant, "frame variant")->check(CLI::NonNegativeNumber);
    add_common(kit_build);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite;
    int samples = 100;
    double adversarial_rate = 0.0;
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "md"}));
    verify->add_option("--samples", samples, "samples per algebra")->check(CLI::PositiveNumber);
    verify->add_option("--adversarial-rate", adversarial_rate)->check(CLI::Range(0.0, 1.0));
    add_common(verify);

    auto* decompose = app.add_subcommand("decompose", "standard forms of maps, traces and preservers");
    std::string mode;
    std::string algebra;
    std::string input;
    std::string kit_path;
    bool allow_spin = false;
    decompose->add_option("mode", mode)->required()->check(CLI::IsMember({"linear", "trace", "preserver"}));
    decompose->add_option("--algebra", algebra)->required();
    decompose->add_option("--input", input)->required();
    decompose->add_option("--kit", kit_path, "kit JSON (default: built from the algebra)");
    decompose->add_flag("--allow-spin", allow_spin, "accept kits without E2 (diagnostic)");
    add_common(decompose);

    auto* gen = app.add_subcommand("gen", "write a generated map, trace or preserver");
    std::string gen_mode;
    std::string gen_algebra;
    std::string gen_kind = "non_associating";
    bool symmetric = false;
    gen->add_option("mode", gen_mode)->required()->check(CLI::IsMember({"linear", "trace", "preserver", "adversarial"}));
    gen->add_option("--algebra", gen_algebra)->required();
    gen->add_option("--kind", gen_kind, "adversarial kind");
    gen->add_flag("--symmetric", symmetric, "sharp-symmetric preserver");
    add_common(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kUnknownName;
    }

    try {
        if (zoo_list->parsed()) {
            return cmd_zoo_list(cfg);
        }
        if (zoo_export->parsed()) {
            return cmd_zoo_export(cfg, export_name);
        }
        if (kit_build->parsed()) {
            return cmd_kit_build(cfg, kit_algebra, kit_variant);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, suite, samples, adversarial_rate);
        }
        if (decompose->parsed()) {
            return cmd_decompose(cfg, mode, algebra, input, kit_path, allow_spin);
        }
        if (gen->parsed()) {
            return cmd_gen(cfg, gen_mode, gen_algebra, gen_kind, symmetric);
        }
    } catch (const IoError& e) {
        std::cerr << "jordanlab: " << e.what() << "\n";
        return kIo;
    } catch (const JordanError& e) {
        std::cerr << "jordanlab: " << e.what() << "\n";
        return exit_for(e.kind());
    }
    return kUnknownName;
}
