#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "jordanlab/json_io.hpp"

using namespace jordanlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
    const std::string command = env + " " + JORDANLAB_CLI + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("jordanlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ZooCommands) {
    const auto list = run("zoo list");
    EXPECT_EQ(list.code, 0);
    EXPECT_NE(list.out.find("albert"), std::string::npos);
    const auto albert = run("zoo export albert");
    EXPECT_EQ(albert.code, 0);
    EXPECT_EQ(Json::parse(albert.out).at("dim"), 27);
    EXPECT_EQ(run("zoo export matrix:1").code, 2);
    EXPECT_EQ(run("zoo export albert --out " + path("missing/a.json")).code, 3);
}

TEST_F(CliTest, KitBuild) {
    const auto m3 = run("kit build --algebra matrix:3");
    EXPECT_EQ(m3.code, 0);
    EXPECT_FALSE(Json::parse(m3.out).at("E2").is_null());
    const auto spin = run("kit build --algebra spin:4");
    EXPECT_EQ(spin.code, 0);
    EXPECT_TRUE(Json::parse(spin.out).at("E2").is_null());
    EXPECT_EQ(run("kit build --algebra sum:scalar+matrix:2").code, 4);
}

TEST_F(CliTest, Verify) {
    EXPECT_EQ(run("verify nope").code, 2);
    const auto topping = run("verify topping --samples 20");
    EXPECT_EQ(topping.code, 0);
    EXPECT_EQ(Json::parse(topping.out).at("suite"), "topping");
    const auto md = run("verify spin_commutant --samples 5 --format md");
    EXPECT_EQ(md.code, 0);
    EXPECT_NE(md.out.find("## spin_commutant"), std::string::npos);
    EXPECT_EQ(run("verify topping --tol -1").code, 2);
}

TEST_F(CliTest, DecomposeIdentity) {
    Json id = to_json(Mat(Mat::Identity(9, 9)));
    write("id.json", canonical_dump(id));
    const auto result = run("decompose linear --algebra matrix:3 --input " + path("id.json"));
    ASSERT_EQ(result.code, 0);
    const Json out = Json::parse(result.out);
    const Vec lambda = vec_from_json(out.at("decomposition").at("lambda"));
    EXPECT_LE(max_abs(lambda - matrix_jordan(3).algebra.unit()), 1e-12);
}

TEST_F(CliTest, GeneratedPreserverRoundTrip) {
    ASSERT_EQ(run("gen preserver --algebra matrix:3 --seed 4 --out " + path("phi.json")).code, 0);
    ASSERT_EQ(run("kit build --algebra matrix:3 --out " + path("kit.json")).code, 0);
    const auto result =
        run("decompose preserver --algebra matrix:3 --input " + path("phi.json") + " --kit " + path("kit.json"));
    ASSERT_EQ(result.code, 0);
    std::ifstream in(path("phi.json"));
    const Json generated = Json::parse(in);
    const Json out = Json::parse(result.out);
    EXPECT_LE(max_abs(mat_from_json(out.at("decomposition").at("J")) -
                      mat_from_json(generated.at("parameters").at("J"))),
              1e-8);
}

TEST_F(CliTest, DecomposeErrors) {
    ASSERT_EQ(run("gen adversarial --kind non_associating --algebra matrix:3 --out " + path("bad.json")).code, 0);
    EXPECT_EQ(run("decompose linear --algebra matrix:3 --input " + path("bad.json")).code, 6);
    EXPECT_EQ(run("decompose linear --algebra matrix:3 --input " + path("absent.json")).code, 3);
    write("garbage.json", "{\"rows\": 2}");
    EXPECT_EQ(run("decompose linear --algebra matrix:3 --input " + path("garbage.json")).code, 3);
}

TEST_F(CliTest, SpinGenericBijection) {
    ASSERT_EQ(
        run("gen adversarial --kind spin_generic_bijection --algebra spin:4 --out " + path("spin.json")).code, 0);
    EXPECT_EQ(run("decompose preserver --algebra spin:4 --input " + path("spin.json")).code, 4);
    const auto result = run("decompose preserver --allow-spin --algebra spin:4 --input " + path("spin.json"));
    EXPECT_EQ(result.code, 7);
    EXPECT_EQ(Json::parse(result.out).at("error").at("error"), "JNotMultiplicative");
}

TEST_F(CliTest, ByteIdenticalOutput) {
    EXPECT_EQ(run("gen trace --algebra spin:5 --seed 3").out, run("gen trace --algebra spin:5 --seed 3").out);
    EXPECT_EQ(run("verify axioms --seed 9").out, run("verify axioms --seed 9").out);
}

TEST_F(CliTest, SeedEnvironment) {
    const auto flag = run("gen linear --algebra matrix:2 --seed 5");
    const auto env = run("gen linear --algebra matrix:2", "JORDANLAB_SEED=5");
    const auto both = run("gen linear --algebra matrix:2 --seed 6", "JORDANLAB_SEED=5");
    EXPECT_EQ(flag.out, env.out);
    EXPECT_NE(both.out, env.out);
    EXPECT_EQ(Json::parse(both.out).at("seed"), 6);
}
