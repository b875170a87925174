#include <fstream>
#include <iomanip>
#include <sstream>

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include "jordanlab/errors.hpp"
#include "jordanlab/json_io.hpp"

using namespace jordanlab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

}  // namespace

TEST(CanonicalDump, Format) {
    Json j = {{"b", 0.1}, {"a", Json::array({1, 2})}, {"c", {{"z", true}, {"y", nullptr}}}};
    EXPECT_EQ(canonical_dump(j),
              "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": {\n    \"y\": null,\n    \"z\": true\n  }\n}\n");
    EXPECT_EQ(canonical_dump(Json(std::numeric_limits<double>::infinity())), "null\n");
    EXPECT_EQ(canonical_dump(Json::array({Json::array({1.5, -2.0})})), "[\n  [1.5, -2]\n]\n");
}

TEST(RoundTrip, MatrixAndVector) {
    Rng rng(1);
    const Mat m = rng.matrix(3, 4);
    EXPECT_EQ(mat_from_json(Json::parse(canonical_dump(to_json(m)))), m);
    const Vec v = rng.vector(5);
    EXPECT_EQ(vec_from_json(Json::parse(canonical_dump(to_json(v)))), v);
    EXPECT_TRUE(to_json(m).contains("data"));
}

TEST(RoundTrip, Algebra) {
    for (const char* name : {"matrix:3", "spin:4", "sum:matrix:2+spin:3"}) {
        const auto z = make_algebra(name);
        const auto back = algebra_from_json(Json::parse(canonical_dump(to_json(z.algebra))));
        EXPECT_EQ(back.dim(), z.dim());
        EXPECT_EQ(back.unit(), z.algebra.unit());
        EXPECT_EQ(back.star_matrix(), z.algebra.star_matrix());
        EXPECT_EQ(canonical_dump(to_json(back)), canonical_dump(to_json(z.algebra)));
    }
}

TEST(RoundTrip, KitAndBilinear) {
    const auto z = spin_factor(4);
    const auto kit = build_kit(z);
    const Json j = to_json(kit);
    EXPECT_TRUE(j.at("E2").is_null());
    const auto back = kit_from_json(Json::parse(canonical_dump(j)));
    EXPECT_FALSE(back.has_e2());
    EXPECT_EQ(back.e0, kit.e0);
    EXPECT_EQ(back.u, kit.u);

    const auto trace = make_associating_trace(z, 3).trace;
    const auto parsed = bilinear_from_json(Json::parse(canonical_dump(to_json(trace))));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_EQ(parsed.at(i, k), trace.at(i, k));
        }
    }
}

TEST(Parsing, Errors) {
    const auto kind = [](const char* text, auto parse) {
        try {
            (void)parse(Json::parse(text));
        } catch (const JordanError& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(kind(R"({"rows": 2, "cols": 2, "data": [[1,0]]})", mat_from_json), ErrorKind::ParseError);
    EXPECT_EQ(kind(R"({"rows": 1})", mat_from_json), ErrorKind::ParseError);
    EXPECT_EQ(kind(R"([[1, "x"]])", vec_from_json), ErrorKind::ParseError);
    EXPECT_EQ(kind(R"({"dim": 2, "tensor": [[0, 0, 5, 1, 0]]})", bilinear_from_json), ErrorKind::ParseError);
    EXPECT_EQ(kind(R"({"name": "x", "dim": 1, "unit": [[1,0]], "structure": [[0,0,0,2,0]],
                       "star": {"rows": 1, "cols": 1, "data": [[1,0]]}})",
                   algebra_from_json),
              ErrorKind::ParseError);
}

TEST(Fixture, AlbertBytesAndChecksum) {
    const std::string fixture = read_file(std::string(JORDANLAB_DATA_DIR) + "/albert27.json");
    ASSERT_FALSE(fixture.empty());
    EXPECT_EQ(canonical_dump(to_json(albert_algebra().algebra)), fixture);
    std::string recorded = read_file(std::string(JORDANLAB_DATA_DIR) + "/albert27.json.sha256");
    recorded = recorded.substr(0, 64);
    EXPECT_EQ(sha256_hex(fixture), recorded);
    const auto loaded = algebra_from_json(Json::parse(fixture));
    EXPECT_EQ(loaded.dim(), 27u);
    for (const auto& r : check_axioms(loaded, 50, 1, Tolerance(1e-10))) {
        EXPECT_TRUE(r.pass) << r.check_name;
    }
}

TEST(Markdown, RendersTable) {
    Report report;
    report.suite = "demo";
    report.records.push_back(make_record("check", "matrix:2", 1, 1e-12, 1e-9));
    const std::string md = render_markdown({report});
    EXPECT_NE(md.find("## demo"), std::string::npos);
    EXPECT_NE(md.find("1/1 passed"), std::string::npos);
}
