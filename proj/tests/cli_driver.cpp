// End-to-end checks against the built CLI binary: exit codes, file outputs,
// JSON/CSV shape, reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string cli = RBRCD_CLI_PATH;
const std::string data_dir = RBRCD_DATA_DIR;

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "rbrcd_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >" + (work_dir() / "stdout.txt").string() +
                            " 2>" + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string last_stdout() { return read_file(work_dir() / "stdout.txt"); }

} // namespace

TEST_CASE("detect on the bundled two-triangles graph finds Q = 0.5") {
    const auto report = (work_dir() / "tri.json").string();
    const auto labels = (work_dir() / "tri.labels").string();
    const int rc = run("detect --graph " + data_dir + "/two_triangles.edges --k 2 --seed 7 "
                       "--out " + report + " --labels-out " + labels);
    REQUIRE(rc == 0);
    CHECK(last_stdout().find("Q=0.5") != std::string::npos);

    const json j = json::parse(read_file(report));
    CHECK(j["schema_version"] == 1);
    CHECK(j["graph"]["nodes"] == 6);
    CHECK(j["graph"]["edges"] == 6);
    CHECK(j["metrics"]["modularity"].get<double>() == doctest::Approx(0.5));
    CHECK(j["metrics"]["k0"] == 2);
    CHECK(!j["metrics"].contains("err")); // no ground truth involved
    CHECK(j["restarts"].size() == 10);

    std::ifstream lf(labels);
    int id, label, lines = 0;
    while (lf >> id >> label) ++lines;
    CHECK(lines == 6);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("detect --graph " + data_dir + "/two_triangles.edges") == 2); // missing --k
    CHECK(run("detect --k 2 --graph /does/not/exist.edges") == 2);
    CHECK(run("bench --suite nonsense --out x.csv") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("runtime errors exit with 1") {
    const auto empty = (work_dir() / "empty.edges").string();
    std::ofstream(empty) << "# nothing but comments\n";
    CHECK(run("detect --graph " + empty + " --k 2") == 1); // zero edges, lambda undefined
}

TEST_CASE("sequential detect is reproducible bit for bit") {
    const auto l1 = (work_dir() / "rep1.labels").string();
    const auto l2 = (work_dir() / "rep2.labels").string();
    const std::string base = "detect --graph " + data_dir + "/two_triangles.edges --k 2 "
                             "--seed 99 --labels-out ";
    REQUIRE(run(base + l1) == 0);
    REQUIRE(run(base + l2) == 0);
    CHECK(read_file(l1) == read_file(l2));
}

TEST_CASE("threads=8 smoke run produces a valid report") {
    const int rc = run("detect --graph " + data_dir + "/two_triangles.edges --k 2 --threads 8 "
                       "--seed 3");
    CHECK(rc == 0);
    CHECK(last_stdout().find("Q=") != std::string::npos);
}

TEST_CASE("all recovery schemes are reachable from the flag") {
    for (const std::string scheme : {"rounding", "kmeans", "wkmeans"}) {
        const int rc = run("detect --graph " + data_dir + "/two_triangles.edges --k 2 --seed 5 "
                           "--recover " + scheme);
        CHECK(rc == 0);
        CHECK(last_stdout().find("Q=0.5") != std::string::npos);
    }
}

TEST_CASE("synth writes deterministic edge and truth files") {
    const auto p1 = (work_dir() / "syn_a").string();
    const auto p2 = (work_dir() / "syn_b").string();
    const std::string base = "synth --k 2 --m 50 --q 0.1 --alpha 1.4 --seed 7 --out ";
    REQUIRE(run(base + p1) == 0);
    REQUIRE(run(base + p2) == 0);
    CHECK(read_file(p1 + ".edges") == read_file(p2 + ".edges"));
    CHECK(read_file(p1 + ".truth") == read_file(p2 + ".truth"));
    CHECK(!read_file(p1 + ".edges").empty());
}

TEST_CASE("synth rejects alpha = 1") {
    CHECK(run("synth --k 2 --m 20 --q 0.1 --alpha 1.0 --out " +
              (work_dir() / "bad").string()) == 2);
}

TEST_CASE("eval of truth against itself gives err 0; without truth err is absent") {
    const auto prefix = (work_dir() / "evalcase").string();
    REQUIRE(run("synth --k 2 --m 40 --q 0.2 --alpha 1.5 --seed 11 --out " + prefix) == 0);

    const auto report = (work_dir() / "eval.json").string();
    REQUIRE(run("eval --graph " + prefix + ".edges --labels " + prefix + ".truth --truth " +
                prefix + ".truth --out " + report) == 0);
    json j = json::parse(read_file(report));
    CHECK(j["metrics"]["err"].get<double>() == doctest::Approx(0.0));
    CHECK(j["metrics"].contains("confusion"));

    REQUIRE(run("eval --graph " + prefix + ".edges --labels " + prefix + ".truth --out " +
                report) == 0);
    j = json::parse(read_file(report));
    CHECK(!j["metrics"].contains("err"));
    CHECK(!j["metrics"].contains("confusion"));
}

TEST_CASE("eval on ideal two-triangle labels reports Q = 0.5 and S = 1") {
    const auto labels = (work_dir() / "ideal.labels").string();
    std::ofstream(labels) << "0 0\n1 0\n2 0\n3 1\n4 1\n5 1\n";
    const auto report = (work_dir() / "ideal.json").string();
    REQUIRE(run("eval --graph " + data_dir + "/two_triangles.edges --labels " + labels +
                " --out " + report) == 0);
    const json j = json::parse(read_file(report));
    CHECK(j["metrics"]["modularity"].get<double>() == doctest::Approx(0.5));
    CHECK(j["metrics"]["strength"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("eval rejects a labels file that does not cover the graph") {
    const auto labels = (work_dir() / "short.labels").string();
    std::ofstream(labels) << "0 0\n1 0\n"; // nodes 2..5 missing
    CHECK(run("eval --graph " + data_dir + "/two_triangles.edges --labels " + labels) == 1);
}

TEST_CASE("bench table2 smoke run writes the expected CSV shape") {
    const auto csv = (work_dir() / "table2.csv").string();
    REQUIRE(run("bench --suite table2 --trials 1 --seed 5 --out " + csv) == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "m,k,q,alpha,trials,err_mean,time_mean_s");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 4);
}
