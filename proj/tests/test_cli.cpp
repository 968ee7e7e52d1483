#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trigon/cli.hpp"

using namespace trigon;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_defs(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file(path);
    file << content;
    return path;
}

}  // namespace

TEST_CASE("catalog listing and export") {
    const CliResult list = run({"catalog", "list"});
    CHECK(list.code == 0);
    CHECK(list.out.find("weitzenbock") != std::string::npos);
    CHECK(list.out.find("schur_t") != std::string::npos);
    CHECK(list.err.empty());

    const CliResult exported = run({"catalog", "export"});
    CHECK(exported.code == 0);
    CHECK(exported.out.find("weitzenbock : triangle :") != std::string::npos);

    const CliResult bad = run({"catalog", "purge"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("check exit codes: holds, violated, usage error") {
    CHECK(run({"check", "weitzenbock", "--triangle", "3,4,5"}).code == 0);
    CHECK(run({"check", "a + b >= 3*c", "--triangle", "3,4,5"}).code == 2);
    CHECK(run({"check", "a + b >= c", "--triangle", "3,4,5"}).code == 0);

    const CliResult unknown = run({"check", "nosuch", "--triangle", "3,4,5"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("unknown entry") != std::string::npos);

    CHECK(run({"check", "weitzenbock"}).code == 1);  // missing point
    CHECK(run({"check", "weitzenbock", "--triangle", "3,4,5", "--triple", "1,2,3"}).code ==
          1);
    CHECK(run({"check", "weitzenbock", "--triangle", "1,1,5"}).code == 1);  // not a triangle
    CHECK(run({"check", "weitzenbock", "--triangle", "3,4"}).code == 1);
    CHECK(run({"check", "weitzenbock", "--triangle", "3,4,x"}).code == 1);
    CHECK(run({"check", "schur_t1", "--triple", "1,2,-3"}).code == 1);

    const CliResult text = run({"check", "finsler_hadwiger", "--triangle", "3,4,5"});
    CHECK(text.out.find("status:         holds") != std::string::npos);
}

TEST_CASE("parameterized entries flow t from the command line") {
    CHECK(run({"check", "schur_t", "--triple", "1,2,3"}).code == 1);
    CHECK(run({"check", "schur_t", "--triple", "1,2,3", "--t", "2"}).code == 0);
    CHECK(run({"scan", "schur_t", "--samples", "200", "--t", "-0.5"}).code == 0);
    CHECK(run({"minimize", "schur_t", "--t", "1"}).code == 0);
}

TEST_CASE("eval prints plain values in text mode") {
    const CliResult r = run({"eval", "cyc((s - a)*(s - b))", "--triangle", "3,4,5"});
    CHECK(r.code == 0);
    CHECK(r.out == "11\n");

    const CliResult t = run({"eval", "x^2 + t", "--triple", "1,2,3", "--t", "0.5"});
    CHECK(t.code == 0);
    CHECK(t.out == "1.5\n");

    const CliResult err = run({"eval", "a +", "--triangle", "3,4,5"});
    CHECK(err.code == 1);
    CHECK(err.err.find("at position") != std::string::npos);
}

TEST_CASE("repeated runs produce byte-identical output") {
    const std::vector<std::string> scan_args = {"--format", "json",    "scan",
                                                "weitzenbock", "--samples", "500"};
    const CliResult s1 = run(scan_args);
    const CliResult s2 = run(scan_args);
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
    CHECK(!s1.out.empty());

    const std::vector<std::string> min_args = {"--format", "json", "minimize",
                                               "refinement_1"};
    const CliResult m1 = run(min_args);
    const CliResult m2 = run(min_args);
    CHECK(m1.code == 0);
    CHECK(m1.out == m2.out);

    const std::vector<std::string> csv_args = {"--format", "csv",       "scan", "app5",
                                               "--samples", "200",      "--seed", "9"};
    const CliResult c1 = run(csv_args);
    const CliResult c2 = run(csv_args);
    CHECK(c1.code == 0);
    CHECK(c1.out == c2.out);
    CHECK(c1.out.rfind("index,v0,v1,v2,lhs,rhs,abs_gap,normalized_gap,holds\n", 0) == 0);
}

TEST_CASE("csv format is scan-only") {
    const CliResult r = run({"--format", "csv", "check", "weitzenbock", "--triangle",
                             "3,4,5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("csv") != std::string::npos);
}

TEST_CASE("seed resolution prefers the flag over the environment") {
    ::setenv("TRIGON_SEED", "777", 1);
    const CliResult env = run({"--format", "json", "scan", "app1", "--samples", "100"});
    ::unsetenv("TRIGON_SEED");
    const CliResult flag =
        run({"--format", "json", "scan", "app1", "--samples", "100", "--seed", "777"});
    CHECK(env.code == 0);
    CHECK(env.out == flag.out);

    ::setenv("TRIGON_SEED", "777", 1);
    const CliResult override_flag =
        run({"--format", "json", "scan", "app1", "--samples", "100", "--seed", "3"});
    ::unsetenv("TRIGON_SEED");
    const CliResult direct =
        run({"--format", "json", "scan", "app1", "--samples", "100", "--seed", "3"});
    CHECK(override_flag.out == direct.out);
    CHECK(override_flag.out != flag.out);
}

TEST_CASE("definition files load, scan and can violate") {
    const auto bad_path = write_defs(
        "trigon_bad_defs.txt",
        "too_strong : triangle : a^2 + b^2 + c^2 >= 19*R*r\n");
    const CliResult violated =
        run({"--defs", bad_path.string(), "scan", "too_strong", "--samples", "2000"});
    CHECK(violated.code == 2);
    CHECK(violated.out.find("violated") != std::string::npos);

    const auto mixed_path = write_defs(
        "trigon_mixed_defs.txt", "mixed : triangle : a + b + c >= S\n");
    const CliResult rejected =
        run({"--defs", mixed_path.string(), "check", "mixed", "--triangle", "3,4,5"});
    CHECK(rejected.code == 1);
    CHECK(rejected.err.find("allow-inhomogeneous") != std::string::npos);

    const CliResult allowed = run({"--defs", mixed_path.string(), "--allow-inhomogeneous",
                                   "check", "mixed", "--triangle", "3,4,5"});
    CHECK(allowed.code == 0);

    const CliResult missing =
        run({"--defs", "/nonexistent/defs.txt", "catalog", "list"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    std::filesystem::remove(bad_path);
    std::filesystem::remove(mixed_path);
}

TEST_CASE("json mode mirrors errors onto stdout") {
    const CliResult r =
        run({"--format", "json", "check", "nosuch", "--triangle", "3,4,5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(r.out.find("\"status\": \"error\"") != std::string::npos);
}

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"scan", "weitzenbock", "--no-such-flag"}).code == 1);
    CHECK(run({"scan", "weitzenbock", "--sampler", "bogus"}).code == 1);
    CHECK(run({"scan", "weitzenbock", "--samples", "0"}).code == 1);
}

TEST_CASE("identities subcommand summarizes residuals") {
    const CliResult r = run({"identities", "--samples", "500"});
    CHECK(r.code == 0);
    CHECK(r.out.find("I1") != std::string::npos);
    CHECK(r.out.find("I17") != std::string::npos);
    CHECK(r.out.find("status: holds") != std::string::npos);

    const CliResult json = run({"--format", "json", "identities", "--samples", "200"});
    CHECK(json.code == 0);
    CHECK(json.out.find("\"overall_max\"") != std::string::npos);
}

TEST_CASE("compare subcommand reports the relation") {
    const CliResult r = run({"compare", "refinement_2", "finsler_hadwiger", "--samples",
                             "2000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("first_dominates") != std::string::npos);

    const CliResult bad = run({"compare", "weitzenbock", "mitrinovic", "--samples", "10"});
    CHECK(bad.code == 1);
}
