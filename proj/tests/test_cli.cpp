#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(WNF_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    while (fgets(buf.data(), (int)buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("documented example outputs") {
    auto g = run("gauss --p 3 --f 1 --char-index 0 --valx -1");
    CHECK(g.status == 0);
    CHECK(g.out.find("\"rational\":\"-1/2\"") != std::string::npos);

    auto e = run("eps --p 3 --f 1 --char-index 1 --level 1");
    CHECK(e.status == 0);
    CHECK(e.out.find("\"valuation\":\"0\"") != std::string::npos);
    CHECK(e.out.find("\"s\":1") != std::string::npos);

    auto vb = run("verify-bounds --p 3 --f 1 --cond 2 --no-timing");
    CHECK(vb.status == 0);
    CHECK(vb.out.find("\"violations\":0") != std::string::npos);
}

TEST_CASE("deterministic output for identical configuration") {
    std::string args = "verify-bounds --p 3 --f 1 --cond 2 --ctype 2a --no-timing --rows";
    auto r1 = run(args);
    auto r2 = run(args);
    CHECK(r1.status == 0);
    CHECK(r1.out == r2.out);

    auto c1 = run("verify-bounds --p 3 --f 1 --cond 2 --ctype 2a --format csv");
    auto c2 = run("verify-bounds --p 3 --f 1 --cond 2 --ctype 2a --format csv");
    CHECK(c1.out == c2.out);
    CHECK(c1.out.rfind("type,p,f,cpi,t,l,v,valuation,bound,gap,mode\n", 0) == 0);
}

TEST_CASE("config file with flag override") {
    std::string path = "/tmp/wnf_cli_config.json";
    {
        std::ofstream of(path);
        of << "{\"p\": 3, \"f\": 1, \"cond\": 2, \"mode\": \"exact\", \"t_margin\": 2}";
    }
    auto r = run("verify-bounds --config " + path + " --ctype 2a --no-timing");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"p\":3") != std::string::npos);
    // flag overrides the file's p
    auto r5 = run("verify-bounds --config " + path + " --p 5 --ctype 2a --no-timing");
    CHECK(r5.status == 0);
    CHECK(r5.out.find("\"p\":5") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("not-a-command").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("verify-bounds --p 3 --f 1 --cond 2 --ctype 9z").status == 3);
    CHECK(run("verify-bounds --p 3 --f 1 --cond 2 --mode sloppy").status == 3);
    CHECK(run("eps --p 3 --f 1 --char-index 0 --level 1").status == 3);  // unramified
    CHECK(run("enumerate-chars --p 7 --f 2 --level 4 --char-cap 50").status == 4);
    // empty sweep is not a failure
    auto empty = run("verify-bounds --p 3 --f 1 --cond 3 --ctype 2a --no-timing");
    CHECK(empty.status == 0);
    CHECK(empty.out.find("\"cells\":0") != std::string::npos);
}

TEST_CASE("decompose command round trip") {
    // g = g_{t,l,v} itself: a = 0, b = pi^t, c = -1, d = -v pi^{-l}
    auto r = run("decompose --p 3 --f 1 --n 2 --a z --b -1:1 --c 0:2 --d -1:1");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"witness_ok\":true") != std::string::npos);
    CHECK(r.out.find("\"l\":1") != std::string::npos);
}

TEST_CASE("whittaker and atkin-lehner commands") {
    auto w = run("whittaker --p 3 --f 1 --type 2a --cond 2 --rep-index 0 --t -2 --l 1 --v 1");
    CHECK(w.status == 0);
    CHECK(w.out.find("\"certainty\":\"exact\"") != std::string::npos);

    auto al = run("atkin-lehner --p 3 --f 1 --type 2a --cond 2 --rep-index 0 --t -2 --l 1 --v 1");
    CHECK(al.status == 0);
    CHECK(al.out.find("\"ok\":true") != std::string::npos);

    auto gal = run("galois-check --p 5 --f 1 --type 3a --cond 2 --rep-index 0 --t -2 --l 1 --v 2 --a 2");
    CHECK(gal.status == 0);

    auto gb = run("global-bound --k 4 --N 9 --L 3 --M 3 --p 3 --f 1 --type 2a --cond 2");
    CHECK(gb.status == 0);
    CHECK(gb.out.find("\"minimizer_u\":0") != std::string::npos);
}
