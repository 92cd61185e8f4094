#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dotrace/cli.hpp"
#include "dotrace/serialize.hpp"

using namespace dotrace;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

CliResult run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv = {"dotrace"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("dotrace-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"no-such-command"}).exit_code == 2);
    CHECK(run_cli({"theory", "--p", "4", "--m", "6", "--l", "2", "--no-cache"}).exit_code == 2);
    CHECK(run_cli({"theory", "--p", "3", "--m", "6", "--l", "1", "--no-cache"}).exit_code == 2);
    CHECK(run_cli({"weight-specs", "--p", "3", "--m", "5", "--l", "1"}).exit_code == 2);  // no --weight
}

TEST_CASE("field-info") {
    auto r = run_cli({"field-info", "--p", "3", "--m", "6", "--l", "2", "--no-cache"});
    REQUIRE(r.exit_code == 0);
    auto j = r.parsed();
    CHECK(j["q"] == 729);
    CHECK(j["modulus"] == "2,2,1,0,2,0,1");
    CHECK(j["branch"] == "d'=d even");
    CHECK(j["e3_mod_n"] == 2);
}

TEST_CASE("defining-set and check-affine") {
    auto r = run_cli({"defining-set", "--p", "3", "--m", "6", "--l", "2", "--no-cache"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.parsed()["exponents"].size() == 19);

    auto r2 = run_cli(
        {"defining-set", "--p", "3", "--m", "6", "--l", "2", "--no-extended", "--no-cache"});
    CHECK(r2.parsed()["exponents"].size() == 18);

    auto r3 = run_cli({"check-affine", "--p", "3", "--m", "6", "--l", "2", "--no-cache"});
    CHECK(r3.exit_code == 0);
    CHECK(r3.parsed()["invariant"] == true);

    auto r4 = run_cli({"check-affine", "--p", "3", "--m", "6", "--l", "2", "--remove-coset", "1",
                       "--no-cache"});
    CHECK(r4.exit_code == 1);
    auto j4 = r4.parsed();
    CHECK(j4["invariant"] == false);
    CHECK(j4["witness"][0] == 1);
    CHECK(j4["witness"][1] == 2);
}

TEST_CASE("theory output and csv") {
    auto r = run_cli({"theory", "--p", "3", "--m", "6", "--l", "2", "--no-cache"});
    REQUIRE(r.exit_code == 0);
    auto j = r.parsed();
    CHECK(j["weight_distribution"]["entries"].size() == 15);
    CHECK(j["designs"].size() == 12);

    auto rc = run_cli({"theory", "--p", "3", "--m", "6", "--l", "2", "--format", "csv",
                       "--no-cache"});
    CHECK(rc.out.substr(0, 20) == "weight,multiplicity\n");
}

TEST_CASE("enumerate + compare with caching") {
    TempDir tmp;
    std::vector<std::string> common = {"--p", "5", "--m", "3", "--l", "1", "--cache-dir",
                                       tmp.path.string()};
    auto with = [&](std::vector<std::string> head) {
        for (auto& c : common) head.push_back(c);
        return head;
    };
    auto r1 = run_cli(with({"enumerate"}));
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.err.find("cache hit") == std::string::npos);
    auto r2 = run_cli(with({"enumerate"}));
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.err.find("cache hit") != std::string::npos);
    CHECK(r1.out == r2.out);  // cache hits byte-identical to cold runs

    // naive mode gives the identical primary output
    auto r3 = run_cli(with({"enumerate", "--mode", "naive", "--no-cache"}));
    CHECK(r3.out == r1.out);

    auto rc = run_cli(with({"compare"}));
    CHECK(rc.exit_code == 0);
    auto jc = rc.parsed();
    CHECK(jc["match"] == true);
    CHECK(jc["weight_diffs"].empty());
    CHECK(jc["census_diffs"].empty());
}

TEST_CASE("weight-specs and verify-design at (3,5,1)") {
    TempDir tmp;
    std::vector<std::string> common = {"--p", "3", "--m", "5", "--l", "1", "--cache-dir",
                                       tmp.path.string()};
    auto with = [&](std::vector<std::string> head) {
        for (auto& c : common) head.push_back(c);
        return head;
    };
    auto r = run_cli(with({"weight-specs", "--weight", "135"}));
    REQUIRE(r.exit_code == 0);
    auto j = r.parsed();
    CHECK(j["count"] == 65340);
    CHECK(j["specs"].size() == 65340);
    // compressed cache entry exists
    bool saw_z = false;
    for (auto& e : std::filesystem::directory_iterator(tmp.path))
        saw_z |= e.path().string().ends_with(".json.z");
    CHECK(saw_z);

    auto rv = run_cli(with({"verify-design", "--weight", "135"}));
    REQUIRE(rv.exit_code == 0);
    CHECK(rv.err.find("cache hit") != std::string::npos);  // reuses the spec list
    auto jv = rv.parsed();
    CHECK(jv["is_design"] == true);
    CHECK(jv["lambda"] == 10050);
    CHECK(jv["b"] == 32670);
    CHECK(jv["eq1_holds"] == true);

    auto re = run_cli(with({"verify-design", "--weight", "135", "--dedup", "explicit"}));
    REQUIRE(re.exit_code == 0);
    CHECK(re.parsed()["b"] == 32670);
}

TEST_CASE("--out writes the primary payload plus a metadata sidecar") {
    TempDir tmp;
    auto out = (tmp.path / "ds.json").string();
    auto r = run_cli({"defining-set", "--p", "3", "--m", "6", "--l", "2", "--no-cache", "--out",
                      out});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    json j = json::parse(f);
    CHECK(j["exponents"].size() == 19);
    CHECK(std::filesystem::exists(out + ".meta.json"));
    // reruns are byte-identical
    auto before = std::filesystem::file_size(out);
    auto r2 = run_cli({"defining-set", "--p", "3", "--m", "6", "--l", "2", "--no-cache", "--out",
                       out});
    CHECK(std::filesystem::file_size(out) == before);
}

TEST_CASE("expsum sampling") {
    auto r = run_cli({"expsum", "--p", "3", "--m", "5", "--l", "1", "--sample", "60", "--seed",
                      "7", "--no-cache"});
    REQUIRE(r.exit_code == 0);
    auto j = r.parsed();
    CHECK(j["samples"] == 60);
    CHECK(j["gauss_sum_squares"]["3"] == "-3");
    CHECK(j["gauss_sum_squares"]["5"] == "5");
    CHECK(j["gauss_sum_squares"]["7"] == "-7");
    CHECK(j["gauss_sum_squares"]["11"] == "-11");
    int total = 0;
    for (auto& [k, v] : j["class_counts"].items()) total += v.get<int>();
    CHECK(total == 60);
    // determinism for a fixed seed
    auto r2 = run_cli({"expsum", "--p", "3", "--m", "5", "--l", "1", "--sample", "60", "--seed",
                       "7", "--no-cache"});
    CHECK(r2.out == r.out);
}

TEST_CASE("text format and block emission") {
    TempDir tmp;
    auto r = run_cli({"field-info", "--p", "3", "--m", "6", "--l", "2", "--format", "text",
                      "--no-cache"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("branch: d'=d even") != std::string::npos);

    auto blocks_txt = (tmp.path / "blocks.txt").string();
    auto rv = run_cli({"verify-design", "--p", "3", "--m", "5", "--l", "1", "--weight", "135",
                       "--cache-dir", tmp.path.string(), "--blocks-out", blocks_txt});
    REQUIRE(rv.exit_code == 0);
    std::ifstream f(blocks_txt);
    std::string line;
    std::int64_t lines = 0, first_count = 0;
    while (std::getline(f, line)) {
        if (lines == 0) {
            std::istringstream is(line);
            std::uint32_t x;
            while (is >> x) ++first_count;
        }
        ++lines;
    }
    CHECK(lines == 32670);
    CHECK(first_count == 135);

    auto blocks_json = (tmp.path / "blocks.json").string();
    auto rj = run_cli({"verify-design", "--p", "3", "--m", "5", "--l", "1", "--weight", "135",
                       "--cache-dir", tmp.path.string(), "--blocks-out", blocks_json});
    REQUIRE(rj.exit_code == 0);
    std::ifstream fj(blocks_json);
    json jb = json::parse(fj);
    CHECK(jb.size() == 32670);
    CHECK(jb[0].size() == 135);
}
