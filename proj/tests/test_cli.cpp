#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path log = workdir / "cli_log.txt";
    std::ostringstream cmd;
    cmd << '"' << PLATOON_CLI_PATH << "\" " << args << " > " << log << " 2>&1";
    const int status = std::system(cmd.str().c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("platoon_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_config(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << body;
    return p;
}

}  // namespace

TEST_CASE("synthesize: happy path writes the gains artifact and echoes the seed") {
    TempDir dir;
    const fs::path cfg = write_config(dir, "ok.json", R"({"duration": 1.0, "seed": 5})");
    const CliResult result = run_cli("synthesize --config " + cfg.string() + " --out " +
                                         (dir.path / "out").string(),
                                     dir.path);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("seed: 5") != std::string::npos);
    CHECK(fs::exists(dir.path / "out" / "gains_BDL_deterministic.json"));
}

TEST_CASE("configuration errors exit with code 2") {
    TempDir dir;

    SUBCASE("unknown key") {
        const fs::path cfg = write_config(dir, "bad_key.json", R"({"quantiser": {}})");
        const CliResult result = run_cli("simulate --config " + cfg.string(), dir.path);
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("unknown key") != std::string::npos);
    }
    SUBCASE("nonpositive gamma") {
        const fs::path cfg = write_config(dir, "bad_gamma.json", R"({"gamma": -1.0})");
        const CliResult result = run_cli("synthesize --config " + cfg.string(), dir.path);
        CHECK(result.exit_code == 2);
    }
    SUBCASE("unpinned topology names the reachability condition") {
        const fs::path cfg = write_config(
            dir, "unpinned.json",
            R"({"topology": {"adjacency": [[0, 0], [1, 0]], "pinned": [0, 0]}})");
        const CliResult result = run_cli("synthesize --config " + cfg.string(), dir.path);
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("directed path") != std::string::npos);
    }
}

TEST_CASE("simulate writes a CSV with metadata comment and fixed column order") {
    TempDir dir;
    const fs::path cfg = write_config(
        dir, "small.json",
        R"({"duration": 0.5, "topology": {"kind": "PF", "followers": 2}, "seed": 11})");
    const fs::path out = dir.path / "out";
    const CliResult result =
        run_cli("simulate --config " + cfg.string() + " --out " + out.string(), dir.path);
    REQUIRE(result.exit_code == 0);

    std::ifstream csv(out / "trace_PF_deterministic.csv");
    REQUIRE(csv.good());
    std::string metadata;
    std::string header;
    std::getline(csv, metadata);
    std::getline(csv, header);
    CHECK(metadata.rfind("# config_hash=", 0) == 0);
    CHECK(metadata.find("seed=11") != std::string::npos);
    CHECK(header == "t,p1,v1,a1,u1,spacing1,p2,v2,a2,u2,spacing2,eps_norm");
}

TEST_CASE("output directory falls back to the config key") {
    TempDir dir;
    const fs::path nested = dir.path / "from_config";
    const fs::path cfg = write_config(dir, "outdir.json",
                                      R"({"duration": 0.5, "output_dir": ")" +
                                          nested.string() + R"("})");
    const CliResult result = run_cli("simulate --config " + cfg.string(), dir.path);
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(nested / "trace_BDL_deterministic.csv"));
}
