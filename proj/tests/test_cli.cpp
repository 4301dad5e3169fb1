#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fhs/cli.hpp"

using fhs::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".report").c_str());
        std::remove((path + ".trace").c_str());
    }
};

}  // namespace

TEST_CASE("bound subcommand") {
    const Run r = cli({"bound", "--n", "6", "--M", "2", "--l", "4", "--L", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");
    // default L = n
    CHECK(cli({"bound", "--n", "6", "--M", "2", "--l", "4"}).out == "2\n");
}

TEST_CASE("generate then verify round trip") {
    TempFile f("cli_test_uv2.fhs");
    const Run gen = cli({"generate", "--family", "uv2", "--p", "2", "--m", "2", "--w", "5",
                         "--out", f.path});
    REQUIRE(gen.code == 0);
    CHECK(gen.out.find("n=30") != std::string::npos);
    CHECK(gen.out.find("strict=yes") != std::string::npos);

    const Run ver = cli({"verify", "--in", f.path});
    CHECK(ver.code == 0);
    CHECK(ver.out.find("STRICT=yes") != std::string::npos);

    const Run per = cli({"verify", "--in", f.path, "--per-window"});
    CHECK(per.code == 0);
    CHECK(per.out.find("L=30 H=2 bound=2 MEET") != std::string::npos);

    // report and trace files exist and agree with verify
    const std::string report = slurp(f.path + ".report");
    CHECK(report.find("STRICT=yes") != std::string::npos);
    const std::string trace = slurp(f.path + ".trace");
    CHECK(trace.find("verdict=pass") != std::string::npos);
}

TEST_CASE("byte-deterministic output for identical argv") {
    TempFile a("cli_det_a.fhs"), b("cli_det_b.fhs");
    REQUIRE(cli({"generate", "--family", "d3", "--q", "2", "--m", "3", "--d", "1", "--w", "3",
                 "--out", a.path}).code == 0);
    REQUIRE(cli({"generate", "--family", "d3", "--q", "2", "--m", "3", "--d", "1", "--w", "3",
                 "--out", b.path}).code == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(slurp(a.path + ".report") == slurp(b.path + ".report"));
    CHECK(slurp(a.path + ".trace") == slurp(b.path + ".trace"));
    CHECK_FALSE(slurp(a.path).empty());
}

TEST_CASE("exit codes: usage, validation, corruption") {
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"bound", "--n", "6"}).code == 2);  // missing required options
    // validation failure in strict mode
    TempFile f("cli_bad.fhs");
    const Run bad = cli({"generate", "--family", "d3", "--q", "3", "--m", "3", "--d", "2",
                         "--w", "9", "--out", f.path});
    CHECK(bad.code == 3);
    // corrupted file: symbol >= l
    {
        std::ofstream out("cli_corrupt.fhs", std::ios::binary);
        out << "FHS n=3 M=1 l=2 lambda=1\n0 1 7\n";
    }
    CHECK(cli({"verify", "--in", "cli_corrupt.fhs"}).code == 3);
    std::remove("cli_corrupt.fhs");
    CHECK(cli({"verify", "--in", "no_such_file.fhs"}).code == 3);
}

TEST_CASE("verify exits 1 on a structurally valid but non-optimal set") {
    // 0101 hits itself completely at shift 2: H(S;2) = 2 > bound 1
    {
        std::ofstream out("cli_nonopt.fhs", std::ios::binary);
        out << "FHS n=4 M=1 l=2 lambda=2\n0 1 0 1\n";
    }
    const Run r = cli({"verify", "--in", "cli_nonopt.fhs"});
    CHECK(r.code == 1);
    CHECK(r.out.find("STRICT=no") != std::string::npos);
    std::remove("cli_nonopt.fhs");
}

TEST_CASE("catalog subcommand") {
    const Run r = cli({"catalog", "--family", "uv2", "--max-n", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("p=2 m=2 w=5 -> (30,2,2;20)") != std::string::npos);
    const Run empty = cli({"catalog", "--family", "p4", "--max-n", "10"});
    CHECK(empty.out == "total=0\n");
}

TEST_CASE("inspect subcommand") {
    TempFile f("cli_inspect.fhs");
    REQUIRE(cli({"generate", "--family", "uv2", "--p", "2", "--m", "2", "--w", "5", "--out",
                 f.path}).code == 0);
    const Run fhs_info = cli({"inspect", "--in", f.path});
    CHECK(fhs_info.code == 0);
    CHECK(fhs_info.out.find("FHS n=30 M=2 l=20") != std::string::npos);

    {
        std::ofstream out("cli_inspect.packing", std::ios::binary);
        out << "PACKING n=7 kind=CDP g=1 lambda=1 members=1\n0 1 3\n";
    }
    const Run pack_info = cli({"inspect", "--in", "cli_inspect.packing"});
    CHECK(pack_info.code == 0);
    CHECK(pack_info.out.find("nested-verified=yes") != std::string::npos);
    std::remove("cli_inspect.packing");
}
