#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "potspec/cli.hpp"

namespace fs = std::filesystem;
using potspec::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "potspec");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("potspec_cli_" + name); }

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version") {
    CHECK(call({"--help"}).code == 0);
    const auto v = call({"--version"});
    CHECK(v.code == 0);
    CHECK_FALSE(v.out.empty());
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("analytic") {
    const auto r = call({"analytic", "newton-ball", "--p", "inf,2", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("0.40528473456935") != std::string::npos);
    CHECK(r.out.find("config_hash=") != std::string::npos);
    CHECK(call({"analytic", "log-disc", "--p", "2.5"}).code == 2);
    CHECK(call({"analytic", "log-disc", "--p", "1"}).code == 2);
    CHECK(call({"analytic", "torus"}).code == 2);
    const auto j = call({"analytic", "dirichlet-disc", "--which", "all", "--format", "json"});
    CHECK(j.code == 0);
    CHECK(j.out.find("regularized-trace") != std::string::npos);
}

TEST_CASE("repro") {
    for (const auto& id : potspec::cli::repro_ids()) CHECK(call({"repro", id}).code == 0);
    const auto bad = call({"repro", "bogus"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("newton-norm") != std::string::npos);
}

TEST_CASE("spectrum, schatten and convergence") {
    const auto disc = write_file("disc.json", R"({"shape": "disc", "params": {"radius": 1}})");
    const auto s = call({"spectrum", "--domain", disc.string(), "--h", "0.2", "--k", "3"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("index,eigenvalue,characteristic_number") != std::string::npos);
    CHECK(call({"spectrum", "--domain", disc.string()}).code == 2);
    CHECK(call({"spectrum", "--domain", disc.string(), "--h", "5"}).code == 2);
    CHECK(call({"spectrum", "--domain", disc.string(), "--h", "0.2", "--kind", "newton3d"}).code == 2);

    const auto n = call({"schatten", "--domain", disc.string(), "--p", "2,inf", "--h", "0.25,0.18"});
    CHECK(n.code == 0);
    const auto c = call({"convergence", "--domain", disc.string(), "--h", "0.4,0.2,0.1", "--k", "1"});
    CHECK(c.code == 0);
    CHECK(call({"convergence", "--domain", disc.string(), "--h", "0.4,0.3,0.1"}).code == 2);
    fs::remove(disc);
}

TEST_CASE("output is reproducible") {
    const auto a = call({"verify", "luttinger-newton", "--h", "0.5,0.4", "--format", "csv"});
    const auto b = call({"verify", "luttinger-newton", "--h", "0.5,0.4", "--format", "csv"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("inequality_holds") != std::string::npos);
}

TEST_CASE("verify exit codes") {
    const auto bad = call({"verify", "luttinger-log", "--h", "0.25,0.18", "--p", "inf"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("violated: luttinger-log") != std::string::npos);
    CHECK(call({"verify", "fermat"}).code == 2);
    CHECK(call({"verify", "rfk", "--p", "0.5"}).code == 2);
}

TEST_CASE("input and output failures") {
    const auto malformed = write_file("bad.json", R"({"shape": "disc", "params": {"radius": "one"}})");
    const auto out = scratch("never.csv");
    fs::remove(out);
    CHECK(call({"spectrum", "--domain", malformed.string(), "--h", "0.2", "--out", out.string()}).code == 2);
    CHECK_FALSE(fs::exists(out));
    fs::remove(malformed);

    CHECK(call({"spectrum", "--domain", scratch("missing.json").string(), "--h", "0.2"}).code == 3);
    CHECK(call({"analytic", "newton-ball", "--out", "/nonexistent-dir/x.txt"}).code == 3);

    const auto ok = scratch("ok.csv");
    CHECK(call({"analytic", "newton-ball", "--format", "csv", "--out", ok.string()}).code == 0);
    CHECK(slurp(ok).find("newton-ball") != std::string::npos);
    fs::remove(ok);
}

}  // TEST_SUITE
