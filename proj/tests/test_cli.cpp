#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entrocone/cli.hpp"

using entrocone::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::stringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "cli_test_" + std::to_string(counter++) + ".tmp";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("states emits entropy csv matching the stab round trip") {
    for (const std::string tag : {"R0", "R1", "R2", "R3", "R4", "R5", "R6"}) {
        auto direct = cli({"states", tag, "--entropy"});
        REQUIRE(direct.code == 0);

        auto stab_file = cli({"states", tag, "--stab"});
        REQUIRE(stab_file.code == 0);
        TempFile f(stab_file.out);
        auto via_file = cli({"entropy", f.path});
        REQUIRE(via_file.code == 0);
        CHECK(via_file.out == direct.out);
    }
}

TEST_CASE("states ray-2 column values") {
    auto r = cli({"states", "R2", "--entropy"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("party_system,a,b,c,d,e") == 0);
    CHECK(r.out.find("\nab,1*log2(2),log2(2)") != std::string::npos);
    CHECK(r.out.find("\nabcde,0,log2(2)") != std::string::npos);
}

TEST_CASE("check flags the counterexample with exit code 1") {
    auto csv = cli({"states", "quantum_counterexample", "--entropy"});
    REQUIRE(csv.code == 0);
    TempFile f(csv.out);
    auto r = cli({"check", f.path, "--family", "ingleton"});
    CHECK(r.code == 1);
    CHECK(r.out.find("violated") != std::string::npos);
    CHECK(r.out.find("-0.12255") != std::string::npos);

    auto ok = cli({"check", f.path, "--family", "matus"});
    CHECK(ok.code == 0);

    auto all = cli({"check", f.path, "--family", "all"});
    CHECK(all.code == 1);
}

TEST_CASE("check a satisfied vector returns 0") {
    auto csv = cli({"states", "R5", "--entropy"});
    TempFile f(csv.out);
    auto r = cli({"check", f.path, "--family", "all"});
    CHECK(r.code == 0);
    CHECK(r.err.find("all") != std::string::npos);
}

TEST_CASE("rays table layout") {
    auto r = cli({"rays", "quantum-ingleton-4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("23 rays in 7 orbits") != std::string::npos);
    CHECK(r.out.find("e (= abcd)") != std::string::npos);
    CHECK(r.out.find("ray0:4") != std::string::npos);
    CHECK(r.out.find("ray1:6") != std::string::npos);

    auto csv = cli({"rays", "quantum-ingleton-4", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.find("ray,a,b,ab,c") == 0);

    auto jsonl = cli({"rays", "quantum-ingleton-4", "--format", "json-lines"});
    REQUIRE(jsonl.code == 0);
    CHECK(jsonl.out.find("{\"ray\":[") == 0);
}

TEST_CASE("group subcommand") {
    // Klein four-group with the two coordinate subgroups
    TempFile f(
        "order: 4\n"
        "table:\n"
        "0 1 2 3\n"
        "1 0 3 2\n"
        "2 3 0 1\n"
        "3 2 1 0\n"
        "subgroup x: 0 1\n"
        "subgroup y: 0 2\n");
    auto r = cli({"group", f.path});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("party_system,x,y") == 0);
    CHECK(r.out.find("\nxy,2,bits") != std::string::npos);

    TempFile d(
        "parties: a b\n"
        "alphabet: 2 2\n"
        "atom 0 0 1/2\n"
        "atom 1 1 1/2\n");
    auto rd = cli({"group", d.path, "--dist"});
    REQUIRE(rd.code == 0);
    CHECK(rd.out.find("\nab,1,bits") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
    CHECK(cli({"entropy", "no_such_file"}).code == 2);
    CHECK(cli({"states", "R9"}).code == 2);
    CHECK(cli({"states", "quantum_counterexample", "--stab"}).code == 2);
    CHECK(cli({"unknown-subcommand"}).code == 2);
    CHECK(cli({"rays", "quantum-ingleton-4", "--format", "nope"}).code == 2);
    TempFile bad("prime: 4\nparties: a:1\ngen: x 1 | z 0\n");
    CHECK(cli({"entropy", bad.path}).code == 2);
}

TEST_CASE("density file input accepted for the counterexample") {
    auto density = cli({"states", "quantum_counterexample", "--density"});
    REQUIRE(density.code == 0);
    TempFile f(density.out);
    auto r = cli({"entropy", f.path});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("party_system,a,b,c,d") == 0);
}
