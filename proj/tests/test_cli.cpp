#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "segmatch/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run segmatch_run(std::vector<std::string> args) {
    args.insert(args.begin(), "segmatch");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = segmatch::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("segmatch_cli_" + std::to_string(std::hash<const void*>{}(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = (path / name).string();
        segmatch::write_file(p, content);
        return p;
    }
    std::string name(const std::string& n) const { return (path / n).string(); }
};

}  // namespace

TEST_CASE("coverage-max on the two-segment pair") {
    TempDir dir;
    const auto a = dir.file("a.json", R"({"horizontal":[{"y":0,"x0":0,"x1":2}]})");
    const auto b = dir.file("b.json", R"({"horizontal":[{"y":5,"x0":10,"x1":12}],"vertical":[]})");
    for (bool h : {false, true}) {
        std::vector<std::string> args{"coverage-max", "--a", a, "--b", b, "--eps", "0.5"};
        if (h) args.push_back("--horizontal-only");
        const auto r = segmatch_run(args);
        REQUIRE(r.code == 0);
        const auto j = r.doc();
        CHECK(j["schema"] == "segmatch/1");
        CHECK(j["value"].get<double>() == doctest::Approx(2.0));
        CHECK(j["params"]["eps"].get<double>() == 0.5);
        CHECK(j["params"]["horizontal_only"].get<bool>() == h);
        CHECK(j.contains("tx"));
        CHECK(j.contains("ty"));
    }
}

TEST_CASE("frechet-decide exit codes") {
    TempDir dir;
    const auto p = dir.file("p.json", R"({"vertices":[[0,0],[1,1],[2,0]]})");
    const auto q = dir.file("q.json", R"({"vertices":[[0,5],[2,5]]})");
    auto r = segmatch_run({"frechet-decide", "--p", p, "--q", p, "--eps", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.doc()["decision"] == true);
    CHECK(r.doc()["params"]["eps"].get<double>() == 0.1);
    for (const char* mode : {"--weak", "--graph"}) {
        r = segmatch_run({"frechet-decide", "--p", p, "--q", q, "--eps", "1", mode});
        CHECK(r.code == 1);
        CHECK(r.doc()["decision"] == false);
    }
    r = segmatch_run({"frechet-decide", "--p", p, "--q", q, "--eps", "6", "--norm", "linf"});
    CHECK(r.code == 0);
    CHECK(r.doc()["params"]["norm"] == "linf");
    r = segmatch_run({"frechet-decide", "--p", p, "--q", q, "--eps", "1", "--weak", "--graph"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--graph") != std::string::npos);
}

TEST_CASE("gen-lowerbound feeds coverage-eval") {
    TempDir dir;
    auto r = segmatch_run({"gen-lowerbound", "--n", "3", "--out-a", dir.name("a.json"), "--out-b", dir.name("b.json")});
    REQUIRE(r.code == 0);
    const double eps = r.doc()["eps"].get<double>();
    r = segmatch_run({"coverage-eval", "--a", dir.name("a.json"), "--b", dir.name("b.json"), "--eps",
                      std::to_string(eps), "--tx", "0", "--ty", "0"});
    REQUIRE(r.code == 0);
    CHECK(std::isfinite(r.doc()["value"].get<double>()));
}

TEST_CASE("frechet value and translation") {
    TempDir dir;
    const auto p = dir.file("p.json", R"({"vertices":[[0,0],[1,0]]})");
    const auto q = dir.file("q.json", R"({"vertices":[[3,4.5],[4,4.5]]})");
    auto r = segmatch_run({"frechet-value", "--p", p, "--q", q, "--tol", "1e-9"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["value"].get<double>() == doctest::Approx(std::hypot(3.0, 4.5)).epsilon(1e-8));
    r = segmatch_run({"frechet-value", "--p", p, "--q", q, "--tol", "0"});
    CHECK(r.code == 2);
    r = segmatch_run({"frechet-translate", "--p", p, "--q", q, "--beta", "0.25", "--tol", "1e-6"});
    REQUIRE(r.code == 0);
    const auto j = r.doc();
    CHECK(j["value"].get<double>() <= 1e-6);
    CHECK(j["tx"].get<double>() == doctest::Approx(-3.0));
    CHECK(j["ty"].get<double>() == doctest::Approx(-4.5));
}

TEST_CASE("interval-match and hausdorff-vtrans") {
    TempDir dir;
    const auto inst = dir.file("i.json", R"({"M":10,"pattern":[[[3,3]]],"text":[[[1,5]],[[7,9]]]})");
    auto r = segmatch_run({"interval-match", "--instance", inst});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["shifts"] == json::array({0}));
    const auto none = dir.file("n.json", R"({"M":10,"pattern":[[[6,6]]],"text":[[[1,5]],[[7,9]]]})");
    r = segmatch_run({"interval-match", "--instance", none, "--sparse", "--seed", "5"});
    CHECK(r.code == 1);
    CHECK(r.doc()["params"]["seed"] == 5);
    CHECK(r.doc()["params"]["sparse"] == true);

    const auto a = dir.file("a.json", R"({"horizontal":[{"y":0,"x0":0,"x1":1},{"y":2,"x0":3,"x1":4}]})");
    const auto b = dir.file("b.json", R"({"horizontal":[{"y":6.25,"x0":0,"x1":1},{"y":8.25,"x0":3,"x1":4}]})");
    r = segmatch_run({"hausdorff-vtrans", "--a", a, "--b", b, "--eps", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["delta"].get<double>() == 6.25);
    CHECK(r.doc()["mode"] == "approx");
    r = segmatch_run({"hausdorff-vtrans", "--a", a, "--b", b, "--exact"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["rho"].get<double>() == 0.0);
    CHECK(r.doc()["mode"] == "exact");
    CHECK(segmatch_run({"hausdorff-vtrans", "--a", a, "--b", b, "--eps", "1.5"}).code == 2);
    r = segmatch_run({"hausdorff-vtrans", "--a", a, "--b", b});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["params"]["eps"].get<double>() == 0.1);
}

TEST_CASE("identical runs give identical output") {
    TempDir dir;
    const auto inst =
        dir.file("i.json", R"({"M":1000,"pattern":[[[3,9]],null,[[400,410]]],"text":[[[1,50]],[[7,9]],[[300,500]],[[1,20]]]})");
    const std::vector<std::string> args{"interval-match", "--instance", inst, "--sparse", "--seed", "11"};
    CHECK(segmatch_run(args).out == segmatch_run(args).out);
    const auto a = dir.file("a.json", R"({"horizontal":[{"y":0,"x0":0,"x1":1},{"y":2.5,"x0":3,"x1":7}]})");
    const auto b = dir.file("b.json", R"({"horizontal":[{"y":1,"x0":0,"x1":2},{"y":4,"x0":2,"x1":6}]})");
    const std::vector<std::string> h{"hausdorff-vtrans", "--a", a, "--b", b, "--eps", "0.2", "--seed", "3"};
    const auto first = segmatch_run(h);
    CHECK(first.code == 0);
    CHECK(first.out == segmatch_run(h).out);
}

TEST_CASE("input errors exit with 2 and name the field") {
    TempDir dir;
    const auto bad = dir.file("bad.json", R"({"horizontal":[{"y":0,"x0":0}]})");
    const auto ok = dir.file("ok.json", R"({"horizontal":[{"y":0,"x0":0,"x1":1}]})");
    const auto broken = dir.file("broken.json", "{not json");
    auto r = segmatch_run({"coverage-max", "--a", bad, "--b", ok, "--eps", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("horizontal[0].x1") != std::string::npos);
    r = segmatch_run({"coverage-max", "--a", broken, "--b", ok, "--eps", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed JSON") != std::string::npos);
    r = segmatch_run({"coverage-max", "--a", ok, "--b", ok, "--eps", "-1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--eps") != std::string::npos);
    r = segmatch_run({"coverage-max", "--a", dir.name("missing.json"), "--b", ok, "--eps", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--a") != std::string::npos);
    CHECK(segmatch_run({"no-such-command"}).code == 2);
    CHECK(segmatch_run({}).code == 2);
    CHECK(segmatch_run({"frechet-decide", "--p", ok, "--q", ok, "--eps", "1"}).code == 2);
    const auto out_of_range = dir.file("r.json", R"({"M":5,"pattern":[[[3,9]]],"text":[[[1,5]]]})");
    CHECK(segmatch_run({"interval-match", "--instance", out_of_range}).code == 2);
    CHECK(segmatch_run({"--help"}).code == 0);
}

TEST_CASE("output options") {
    TempDir dir;
    const auto p = dir.file("p.json", R"({"vertices":[[0,0],[1,1]]})");
    auto r = segmatch_run({"--format", "text", "frechet-value", "--p", p, "--q", p});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("schema: segmatch/1\n") == 0);
    r = segmatch_run({"frechet-value", "--p", p, "--q", p, "--out", dir.name("o.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(json::parse(segmatch::read_file(dir.name("o.json")))["value"].get<double>() == 0.0);
}

TEST_CASE("bench reports slopes") {
    auto r = segmatch_run({"bench", "--algo", "interval", "--sizes", "64,128,256"});
    REQUIRE(r.code == 0);
    const auto rep = r.doc()["reports"][0];
    CHECK(rep["algorithm"] == "interval_match");
    CHECK(rep["sizes"].size() == 3);
    CHECK(rep["oracle_agreements"] == rep["oracle_checks"]);
    CHECK(rep.contains("slope"));
    r = segmatch_run({"bench", "--algo", "coverage", "--sizes", "8,16,32", "--seed", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["reports"][0]["oracle_agreements"] == 3);
    CHECK(r.doc()["params"]["seed"] == 4);
    CHECK(segmatch_run({"bench", "--algo", "interval", "--sizes", "64,128"}).code == 2);
}
