#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Workspace {
public:
    Workspace() : dir_(fs::temp_directory_path() / ("conesta_cli_" + std::to_string(::getpid())))
    {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    Run run(const std::string& args, const std::string& env = "CONESTA_LOG=error") const
    {
        const std::string out = path("stdout.txt"), err = path("stderr.txt");
        const std::string cmd = env + " " + CONESTA_CLI_PATH + " " + args + " >" + out + " 2>" + err;
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    void write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name)) << text;
    }

    // Writes <name>.data/.mask/.truth from a small one-region spec.
    void simulate(const std::string& name, double sigma = 1.0, std::uint64_t seed = 3) const
    {
        nlohmann::json spec = {{"dims", {5, 4, 3}}, {"n_per_class", 15},
                               {"regions", {{{"center", {2, 2, 1}}, {"radius", 1.2}, {"effect", 1.0}}}},
                               {"noise_sigma", sigma}, {"smoothness", 0}, {"seed", seed}};
        write(name + ".json", spec.dump());
        REQUIRE(run("simulate --spec " + path(name + ".json") + " --out-prefix " + path(name)).code == 0);
    }

private:
    fs::path dir_;
};

} // namespace

TEST_CASE("simulate")
{
    Workspace ws;
    ws.simulate("a");
    for (const char* ext : {".data", ".mask", ".truth"}) CHECK(fs::exists(ws.path(std::string("a") + ext)));
    ws.simulate("b");
    CHECK(slurp(ws.path("a.data")) == slurp(ws.path("b.data")));
    CHECK(slurp(ws.path("a.truth")) == slurp(ws.path("b.truth")));

    ws.write("bad.json", R"({"dims":[3,3,3],"n_per_class":4,"regions":[{"center":[3,0,0],"radius":1,"effect":1}]})");
    const Run bad = ws.run("simulate --spec " + ws.path("bad.json") + " --out-prefix " + ws.path("bad"));
    CHECK(bad.code == 1);
    CHECK(bad.err.find("outside the grid") != std::string::npos);

    ws.write("broken.json", "{");
    CHECK(ws.run("simulate --spec " + ws.path("broken.json") + " --out-prefix " + ws.path("x")).code == 1);
}

TEST_CASE("usage errors exit 2")
{
    Workspace ws;
    ws.simulate("s");
    const std::string base = "fit --data " + ws.path("s.data") + " --mask " + ws.path("s.mask") + " --out " + ws.path("m");
    CHECK(ws.run(base + " --bogus").code == 2);
    CHECK(ws.run(base + " --l1 -1").code == 2);
    CHECK(ws.run(base + " --init ones").code == 2);
    CHECK(ws.run("fit").code == 2);
    CHECK(ws.run("frobnicate").code == 2);
    CHECK(ws.run("").code == 2);
    CHECK(ws.run("--help").code == 0);
    CHECK_FALSE(fs::exists(ws.path("m")));
}

TEST_CASE("fit, predict and evaluate")
{
    Workspace ws;
    ws.simulate("s");
    const std::string data = " --data " + ws.path("s.data") + " --mask " + ws.path("s.mask");

    CHECK(ws.run("fit" + data + " --l2 1 --l1 0 --tv 0 --out " + ws.path("ridge.model")).code == 0);
    CHECK(ws.run("fit" + data + " --l2 0.1 --l1 0.1 --tv 0.8 --out " + ws.path("full.model")).code == 0);
    CHECK(ws.run("fit --data " + ws.path("missing.data") + " --mask " + ws.path("s.mask") + " --out " + ws.path("x")).code == 1);

    // A large lasso weight gives the zero model.
    REQUIRE(ws.run("fit" + data + " --l1 10 --out " + ws.path("zero.model")).code == 0);
    REQUIRE(ws.run("predict --model " + ws.path("zero.model") + " --data " + ws.path("s.data") + " --out " + ws.path("zero.csv")).code == 0);
    const std::string csv = slurp(ws.path("zero.csv"));
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "sample,probability,label");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find(",0.5,1") != std::string::npos);
        CHECK(line.find("sample") == std::string::npos);
        ++rows;
    }
    CHECK(rows == 30);

    // p mismatch between model and data.
    nlohmann::json other = {{"dims", {2, 2, 2}}, {"n_per_class", 3}, {"regions", nlohmann::json::array()}, {"seed", 1}};
    ws.write("o.json", other.dump());
    REQUIRE(ws.run("simulate --spec " + ws.path("o.json") + " --out-prefix " + ws.path("o")).code == 0);
    CHECK(ws.run("predict --model " + ws.path("zero.model") + " --data " + ws.path("o.data") + " --out " + ws.path("x.csv")).code == 1);
    CHECK(ws.run("fit --data " + ws.path("o.data") + " --mask " + ws.path("s.mask") + " --out " + ws.path("x")).code == 1);

    const Run same = ws.run("compare --pred-a " + ws.path("zero.csv") + " --pred-b " + ws.path("zero.csv") + " --truth " + ws.path("s.data"));
    REQUIRE(same.code == 0);
    const auto report = nlohmann::json::parse(same.out);
    CHECK(report["mcnemar"]["p_value"] == 1.0);
    CHECK(report["a"]["bcr"] == 0.5);

    ws.write("bad.csv", "sample,probability,label\n0,0.3\n");
    CHECK(ws.run("evaluate --pred-a " + ws.path("bad.csv") + " --truth " + ws.path("s.data")).code == 1);
    ws.write("short.csv", "sample,probability,label\n0,0.3,0\n");
    CHECK(ws.run("evaluate --pred-a " + ws.path("short.csv") + " --truth " + ws.path("s.data")).code == 1);
    ws.write("nohead.csv", "0,0.3,0\n");
    CHECK(ws.run("evaluate --pred-a " + ws.path("nohead.csv") + " --truth " + ws.path("s.data")).code == 1);

    const Run support = ws.run("evaluate --pred-a " + ws.path("zero.csv") + " --truth " + ws.path("s.data") +
                               " --model " + ws.path("full.model") + " --ground-truth " + ws.path("s.truth") +
                               " --out " + ws.path("report.json"));
    REQUIRE(support.code == 0);
    const auto sj = nlohmann::json::parse(slurp(ws.path("report.json")));
    CHECK(sj["support"]["dice"].get<double>() >= 0.0);
    CHECK(sj["support"]["dice"].get<double>() <= 1.0);

    REQUIRE(ws.run("slices --model " + ws.path("full.model") + " --mask " + ws.path("s.mask") +
                   " --axis y --index 0 --index 3 --out-prefix " + ws.path("w")).code == 0);
    CHECK(fs::exists(ws.path("w_y0.csv")));
    CHECK(fs::exists(ws.path("w_y3.csv")));
    CHECK(ws.run("slices --model " + ws.path("full.model") + " --mask " + ws.path("s.mask") +
                 " --axis y --index 4 --out-prefix " + ws.path("w")).code == 1);
}

TEST_CASE("noiseless training data is separated")
{
    Workspace ws;
    ws.simulate("c", 1e-6);
    REQUIRE(ws.run("fit --data " + ws.path("c.data") + " --mask " + ws.path("c.mask") +
                   " --l2 0.001 --standardize --out " + ws.path("c.model")).code == 0);
    REQUIRE(ws.run("predict --model " + ws.path("c.model") + " --data " + ws.path("c.data") + " --out " + ws.path("c.csv")).code == 0);
    const Run ev = ws.run("evaluate --pred-a " + ws.path("c.csv") + " --truth " + ws.path("c.data"));
    REQUIRE(ev.code == 0);
    CHECK(nlohmann::json::parse(ev.out)["a"]["bcr"] == 1.0);
}

TEST_CASE("fits are reproducible byte for byte")
{
    Workspace ws;
    ws.simulate("s");
    const std::string args = "fit --data " + ws.path("s.data") + " --mask " + ws.path("s.mask") +
                             " --l2 0.01 --l1 0.02 --tv 0.05 --eps 1e-4 --seed 7 --out ";
    REQUIRE(ws.run(args + ws.path("m1")).code == 0);
    REQUIRE(ws.run(args + ws.path("m2")).code == 0);
    CHECK(slurp(ws.path("m1")) == slurp(ws.path("m2")));
    CHECK_FALSE(slurp(ws.path("m1")).empty());
}

TEST_CASE("split and logging")
{
    Workspace ws;
    ws.simulate("s");
    const Run quiet = ws.run("split --data " + ws.path("s.data") + " --out-prefix " + ws.path("p"));
    CHECK(quiet.code == 0);
    CHECK(quiet.err.empty());
    CHECK(quiet.out.empty());
    CHECK(fs::exists(ws.path("p.train.data")));
    CHECK(fs::exists(ws.path("p.test.data")));
    const Run loud = ws.run("split --data " + ws.path("s.data") + " --out-prefix " + ws.path("p"), "CONESTA_LOG=info");
    CHECK(loud.err.find("train") != std::string::npos);
}

TEST_CASE("check suites")
{
    Workspace ws;
    for (const char* suite : {"gradients", "bounds", "oracles"}) {
        const Run r = ws.run(std::string("check --suite ") + suite);
        CHECK(r.code == 0);
        CHECK(r.out.find("PASS") != std::string::npos);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
    CHECK(ws.run("check --suite other").code == 2);
}
