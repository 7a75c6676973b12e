#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& extra_env = "") {
    static int counter = 0;
    std::string errfile = "/tmp/pgl_cli_err_" + std::to_string(getpid()) + "_" +
                          std::to_string(counter++) + ".txt";
    std::string cmd = extra_env + " " + std::string(PGL_CLI_PATH) + " " + args +
                      " 2>" + errfile;
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.err = slurp(errfile);
    std::remove(errfile.c_str());
    return r;
}

std::string make_temp_dir() {
    char tmpl[] = "/tmp/pgl_cache_XXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return d;
}

std::string only_cache_file(const std::string& dir) {
    std::string found;
    std::string cmd = "ls " + dir;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[512];
    while (fgets(buf, sizeof buf, p)) {
        std::string line(buf);
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
            line.pop_back();
        if (!line.empty()) {
            REQUIRE(found.empty());
            found = dir + "/" + line;
        }
    }
    pclose(p);
    REQUIRE(!found.empty());
    return found;
}

}  // namespace

TEST_CASE("byte-identical stdout for repeated runs") {
    const std::string cmds[] = {
        "repgrowth --group S3 --p 2 --nmax 4",
        "extgrowth --group C2 --nmax 4",
        "freegrowth --d 2 --p 2 --nmax 2",
        "probgen --group C2xC2 --kmax 2 --seed 42",
        "idealgrowth --group S3 --p 2 --nmax 3",
        "verify convolution",
    };
    for (const auto& c : cmds) {
        CAPTURE(c);
        auto a = run_cli(c);
        auto b = run_cli(c);
        CHECK(a.code == 0);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("repgrowth values and uberg report") {
    auto r = run_cli("repgrowth --group S3 --p 2 --nmax 4 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == "n,r,r_star\n1,1,1\n2,1,1\n3,0,0\n4,0,0\n");

    auto t = run_cli("repgrowth --group C1 --p 2 --nmax 1 --format csv");
    CHECK(t.code == 0);
    CHECK(t.out == "n,r,r_star\n1,1,1\n");

    auto j = run_cli("repgrowth --group C6 --p 7 --nmax 1");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"r\": 6") != std::string::npos);
    CHECK(j.out.find("finite-range witness only") != std::string::npos);
    CHECK(j.out.find("\"ref\"") != std::string::npos);
}

TEST_CASE("extgrowth abelian degrees are prime powers") {
    auto r = run_cli("extgrowth --group C2 --nmax 4 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == "degree,abelian,nonabelian\n2,2,0\n3,2,0\n");
}

TEST_CASE("exit codes: invalid input") {
    CHECK(run_cli("verify no-such-suite").code == 2);
    CHECK(run_cli("verify no-such-suite").err.find("order-formulas") !=
          std::string::npos);  // error lists the available suites
    CHECK(run_cli("repgrowth --group Z9").code == 2);
    CHECK(run_cli("repgrowth --p 2").code == 2);  // missing group
    CHECK(run_cli("repgrowth --group S3 --format yaml").code == 2);
    CHECK(run_cli("nosuchcommand").code == 2);
}

TEST_CASE("exit codes: budget refusal names the violated cap") {
    auto r = run_cli("freegrowth --d 3 --p 3 --nmax 3");
    CHECK(r.code == 3);
    CHECK(r.err.find("budget") != std::string::npos);

    auto b = run_cli("repgrowth --group S3 --p 2 --budget-ms 0");
    CHECK(b.code == 3);
    CHECK(b.err.find("--budget-ms 0") != std::string::npos);
}

TEST_CASE("verify exit code reflects the report") {
    auto r = run_cli("verify prop52-chain");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    CHECK(r.out.find("\"ref\"") != std::string::npos);
}

TEST_CASE("cache: hit, corruption recovery, version invalidation") {
    std::string dir = make_temp_dir();
    std::string cmd = "repgrowth --group S3 --p 2 --cache " + dir;

    auto first = run_cli(cmd);
    CHECK(first.code == 0);
    std::string file = only_cache_file(dir);

    auto second = run_cli(cmd);
    CHECK(second.code == 0);
    CHECK(second.out == first.out);

    {
        std::ofstream f(file);
        f << "not json";
    }
    auto third = run_cli(cmd);
    CHECK(third.code == 0);
    CHECK(third.out == first.out);
    CHECK(third.err.find("corrupt") != std::string::npos);

    // stale version: silently recomputed (a miss, not a corruption)
    std::string stale = slurp(file);
    const std::string key = "\"library_version\": \"";
    auto pos = stale.find(key);
    REQUIRE(pos != std::string::npos);
    auto end = stale.find('"', pos + key.size());
    REQUIRE(end != std::string::npos);
    stale.replace(pos, end - pos + 1, key + "0\"");
    {
        std::ofstream f(file);
        f << stale;
    }
    auto fourth = run_cli(cmd);
    CHECK(fourth.code == 0);
    CHECK(fourth.out == first.out);
    CHECK(fourth.err.find("corrupt") == std::string::npos);
    CHECK(slurp(file).find("\"library_version\": \"0\"") == std::string::npos);

    std::string rm = "rm -rf " + dir;
    CHECK(std::system(rm.c_str()) == 0);
}

TEST_CASE("PGL_CACHE environment variable overrides --cache") {
    std::string dir = make_temp_dir();
    auto r = run_cli("repgrowth --group C2 --p 2", "PGL_CACHE=" + dir);
    CHECK(r.code == 0);
    only_cache_file(dir);  // asserts exactly one entry was written
    std::string rm = "rm -rf " + dir;
    CHECK(std::system(rm.c_str()) == 0);
}
