#include "jordanlab/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "jordanlab/errors.hpp"

namespace jordanlab {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void emit_scalar(std::string& out, const Json& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        return;
    }
    out += j.dump();
}

void emit(std::string& out, const Json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        // The default object type is an ordered std::map, so iteration is key-sorted.
        for (auto it = j.begin(); it != j.end(); ++it) {
            out += first ? "" : ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            emit(out, it.value(), depth + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e); });
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += i == 0 ? "" : ", ";
                emit_scalar(out, j[i]);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += (i == 0 ? "" : ",\n") + pad;
            emit(out, j[i], depth + 1);
        }
        out += "\n" + close + "]";
        return;
    }
    emit_scalar(out, j);
}

[[noreturn]] void parse_fail(const std::string& what) { throw JordanError(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        parse_fail(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T number(const Json& j, const char* what) {
    if (!j.is_number()) {
        parse_fail(std::string(what) + " is not a number");
    }
    return j.get<T>();
}

}  // namespace

std::string canonical_dump(const Json& value) {
    std::string out;
    emit(out, value, 0);
    out += "\n";
    return out;
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Vec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

Json to_json(const Mat& m) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(to_json(m(r, c)));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(entries)}};
}

Json to_json(const BilinearMap& b) {
    Json tensor = Json::array();
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            const Vec& value = b.at(i, j);
            for (std::size_t k = 0; k < b.dim(); ++k) {
                const Complex c = value(static_cast<Eigen::Index>(k));
                if (c != Complex{}) {
                    tensor.push_back(Json::array({i, j, k, c.real(), c.imag()}));
                }
            }
        }
    }
    return {{"dim", b.dim()}, {"tensor", std::move(tensor)}};
}

Json to_json(const JordanAlgebra& alg) {
    Json structure = Json::array();
    for (const auto& e : alg.structure()) {
        structure.push_back(Json::array({e.i, e.j, e.k, e.value.real(), e.value.imag()}));
    }
    return {{"name", alg.name()},
            {"dim", alg.dim()},
            {"unit", to_json(alg.unit())},
            {"star", to_json(alg.star_matrix())},
            {"structure", std::move(structure)}};
}

Json to_json(const ElementaryKit& kit) {
    Json out = {{"algebra", kit.algebra}, {"u", to_json(kit.u)}, {"E0", to_json(kit.e0)},
                {"E1", to_json(kit.e1)},  {"log", kit.log}};
    if (kit.v) {
        out["v"] = to_json(*kit.v);
    }
    out["E2"] = kit.e2 ? to_json(*kit.e2) : Json(nullptr);
    return out;
}

Json to_json(const CheckRecord& r) {
    return {{"check_name", r.check_name}, {"algebra", r.algebra},    {"seed", r.seed},
            {"residual", r.residual},     {"pass", r.pass},          {"detail", r.detail},
            {"expected_failure", r.expected_failure}};
}

Json to_json(const std::vector<CheckRecord>& records) {
    Json out = Json::array();
    for (const auto& r : records) {
        out.push_back(to_json(r));
    }
    return out;
}

Json to_json(const GenConfig& c) {
    return {{"master_seed", c.master_seed},
            {"samples", c.samples},
            {"magnitude", c.magnitude},
            {"adversarial_rate", c.adversarial_rate}};
}

Json to_json(const Report& r) {
    std::size_t passed = 0;
    for (const auto& rec : r.records) {
        passed += rec.pass ? 1 : 0;
    }
    return {{"suite", r.suite},
            {"config", to_json(r.config)},
            {"records", to_json(r.records)},
            {"summary", {{"total", r.records.size()}, {"passed", passed}}}};
}

Json to_json(const LinMapStandardForm& f) {
    return {{"lambda", to_json(f.lambda)}, {"mu", to_json(f.mu)}, {"residual", f.residual}};
}

Json to_json(const TraceStandardForm& f) {
    return {{"lambda", to_json(f.lambda)}, {"mu", to_json(f.mu)}, {"nu", to_json(f.nu)}, {"residual", f.residual}};
}

Json to_json(const PreserverDecomposition& d) {
    return {{"z0", to_json(d.z0)},         {"J", to_json(d.j)},      {"beta", to_json(d.beta)},
            {"lambda", to_json(d.lambda)}, {"mu1", to_json(d.mu1)}, {"residual", d.residual}};
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        parse_fail("complex number must be [re, im]");
    }
    return {number<double>(j[0], "real part"), number<double>(j[1], "imaginary part")};
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) {
        parse_fail("vector must be an array");
    }
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    }
    return v;
}

Mat mat_from_json(const Json& j) {
    const auto rows = number<Eigen::Index>(field(j, "rows"), "rows");
    const auto cols = number<Eigen::Index>(field(j, "cols"), "cols");
    const Json& entries = field(j, "data");
    if (rows < 0 || cols < 0 || !entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols)) {
        parse_fail("matrix data does not match rows x cols");
    }
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(entries[static_cast<std::size_t>(r * cols + c)]);
        }
    }
    return m;
}

BilinearMap bilinear_from_json(const Json& j) {
    const auto dim = number<std::size_t>(field(j, "dim"), "dim");
    const Json& tensor = field(j, "tensor");
    if (!tensor.is_array()) {
        parse_fail("bilinear tensor must be an array");
    }
    BilinearMap b(dim);
    for (const auto& e : tensor) {
        if (!e.is_array() || e.size() != 5) {
            parse_fail("tensor entry must be [i, j, k, re, im]");
        }
        const auto i = number<std::size_t>(e[0], "i");
        const auto k = number<std::size_t>(e[1], "j");
        const auto out = number<std::size_t>(e[2], "k");
        if (i >= dim || k >= dim || out >= dim) {
            parse_fail("tensor index out of range");
        }
        b.at(i, k)(static_cast<Eigen::Index>(out)) += Complex{number<double>(e[3], "re"), number<double>(e[4], "im")};
    }
    return b;
}

JordanAlgebra algebra_from_json(const Json& j) {
    const auto dim = number<std::size_t>(field(j, "dim"), "dim");
    std::vector<StructureEntry> entries;
    for (const auto& e : field(j, "structure")) {
        if (!e.is_array() || e.size() != 5) {
            parse_fail("structure entry must be [i, j, k, re, im]");
        }
        entries.push_back({number<std::size_t>(e[0], "i"), number<std::size_t>(e[1], "j"),
                           number<std::size_t>(e[2], "k"), {number<double>(e[3], "re"), number<double>(e[4], "im")}});
    }
    try {
        return JordanAlgebra(field(j, "name").get<std::string>(), dim, std::move(entries),
                             vec_from_json(field(j, "unit")), mat_from_json(field(j, "star")));
    } catch (const JordanError& e) {
        parse_fail(std::string("invalid algebra: ") + e.what());
    }
}

ElementaryKit kit_from_json(const Json& j) {
    ElementaryKit kit;
    kit.algebra = field(j, "algebra").get<std::string>();
    kit.u = vec_from_json(field(j, "u"));
    kit.e0 = mat_from_json(field(j, "E0"));
    kit.e1 = mat_from_json(field(j, "E1"));
    if (j.contains("E2") && !j.at("E2").is_null()) {
        kit.e2 = mat_from_json(j.at("E2"));
    }
    if (j.contains("v")) {
        kit.v = vec_from_json(j.at("v"));
    }
    if (j.contains("log")) {
        kit.log = j.at("log").get<std::vector<std::string>>();
    }
    const auto n = kit.u.size();
    const bool shapes = kit.e0.rows() == n && kit.e0.cols() == n && kit.e1.rows() == n && kit.e1.cols() == n &&
                        (!kit.e2 || (kit.e2->rows() == n && kit.e2->cols() == n));
    if (!shapes) {
        parse_fail("kit operators do not match the length of u");
    }
    return kit;
}

std::string render_markdown(const std::vector<Report>& reports) {
    std::ostringstream os;
    os.precision(3);
    for (const auto& report : reports) {
        std::size_t passed = 0;
        for (const auto& r : report.records) {
            passed += r.pass ? 1 : 0;
        }
        os << "## " << report.suite << "\n\n";
        os << "seed " << report.config.master_seed << ", samples " << report.config.samples << ": " << passed << "/"
           << report.records.size() << " passed\n\n";
        os << "| check | algebra | seed | residual | pass | detail |\n";
        os << "|---|---|---|---|---|---|\n";
        for (const auto& r : report.records) {
            os << "| " << r.check_name << (r.expected_failure ? " (control)" : "") << " | " << r.algebra << " | "
               << r.seed << " | " << std::scientific << r.residual << std::defaultfloat << " | "
               << (r.pass ? "yes" : "**no**") << " | " << r.detail << " |\n";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace jordanlab
