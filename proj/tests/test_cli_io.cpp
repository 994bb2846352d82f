#include "doctest.h"
#include "tswave/cli_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tswave;

TEST_CASE("empty config gives the defaults") {
    RunConfig c = parseConfig("");
    CHECK(c.flow.M == 0.3);
    CHECK(c.flow.theta == 0.5);
    CHECK(c.flow.lambda == 0.0);
    CHECK(c.ymax == 40.0);
    CHECK(c.n == 2048);
    CHECK(c.warnings.empty());
}

TEST_CASE("config round trip is canonical") {
    const std::string text = "# test\n[flow]\nmach = 0.2\neps = 3e-9\nK = 6\n[sweep]\neps = eps=1e-10:1e-7 decades=3 per_decade=4\n"
                             "K_scan = 4, 8\n[grid]\nn = 1024\n[run]\nseed = 99\n";
    RunConfig a = parseConfig(text);
    RunConfig b = parseConfig(a.canonical());
    CHECK(a.canonical() == b.canonical());
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    CHECK(b.flow.M == 0.2);
    CHECK(b.flow.eps == 3e-9);
    CHECK(b.Kscan == RVec{4, 8});
    CHECK(b.sweep.values().size() == 13);
    CHECK(parseConfig("[flow]\nmach = 0.25\n").hash() != a.hash());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parseConfig("[flow]\nspeed = 3\n"), DomainError);
    CHECK_THROWS_AS(parseConfig("[colour]\n"), DomainError);
    CHECK_THROWS_AS(parseConfig("[flow]\nmach = fast\n"), DomainError);
    CHECK_THROWS_AS(parseConfig("[flow]\nmach = 1.2\n"), DomainError);
    CHECK_THROWS_AS(parseConfig("[grid]\nn = 100\n"), DomainError);
    CHECK_THROWS_AS(parseConfig("just text\n"), DomainError);
    CHECK_THROWS_AS(loadConfig("/nonexistent/run.cfg"), IOError);
}

TEST_CASE("Mach above 1/sqrt(3): error on mode paths, warning elsewhere") {
    CHECK_THROWS_WITH_AS(parseConfig("[flow]\nmach = 0.9\n", ConfigUse::ModePath), doctest::Contains("1/sqrt(3)"),
                         DomainError);
    RunConfig c = parseConfig("[flow]\nmach = 0.6\n", ConfigUse::General);
    CHECK(c.warnings.size() == 1);
}

TEST_CASE("sweep specification") {
    SweepSpec s = parseSweep("eps=1e-10:1e-7 decades=3 per_decade=4");
    RVec v = s.values();
    REQUIRE(v.size() == 13);
    CHECK(v.front() == 1e-10);
    CHECK(v.back() == 1e-7);
    for (size_t k = 1; k < v.size(); ++k) CHECK(std::log10(v[k] / v[k - 1]) == doctest::Approx(0.25));
    CHECK(parseSweep("1e-10:1e-7").values().size() == 13);
    CHECK_THROWS_AS(parseSweep("eps=1e-10:1e-7 decades=2"), DomainError);
    CHECK_THROWS_AS(parseSweep("eps=1e-7:1e-10"), DomainError);
}

TEST_CASE("complex parsing") {
    CHECK(parseComplex("-3.5+2i") == cplx(-3.5, 2));
    CHECK(parseComplex("0.1-0.02i") == cplx(0.1, -0.02));
    CHECK(parseComplex("2i") == cplx(0, 2));
    CHECK(parseComplex("-i") == cplx(0, -1));
    CHECK(parseComplex("1e-3") == cplx(1e-3, 0));
    CHECK(parseComplex("1e-3+1e-2i") == cplx(1e-3, 1e-2));
    CHECK_THROWS_AS(parseComplex("abc"), DomainError);
}

TEST_CASE("CSV emission") {
    Table t;
    t.columns = {"eps", "K", "flags"};
    CHECK(t.csv() == "eps,K,flags\n");
    t.add({0.1, 8LL, std::string("a,b")});
    CHECK(t.csv() == "eps,K,flags\n0.10000000000000001,8,\"a,b\"\n");
    CHECK_THROWS_AS(t.add({1.0}), DomainError);
    double x = 1.0 / 3.0;
    CHECK(std::stod(formatDouble(x)) == x);
}

TEST_CASE("manifest lists written files with digests") {
    auto dir = std::filesystem::temp_directory_path() / "tswave_manifest_test";
    std::filesystem::create_directories(dir);
    RunConfig c = parseConfig("");
    RunManifest m("test", c);
    const std::string path = (dir / "a.csv").string();
    m.write(path, "x\n1\n");
    m.timing("stage", 0.5);
    CHECK(m.files().size() == 1);
    CHECK(m.files()[0].second == hex64(fnv1a("x\n1\n")));
    CHECK(m.json().find(c.hash()) != std::string::npos);
    CHECK_THROWS_AS(m.write((dir / "missing" / "b.csv").string(), "y"), IOError);
    CHECK(m.files().size() == 1);
    std::filesystem::remove_all(dir);
}
