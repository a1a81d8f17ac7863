// End-to-end checks of the installed command surface: spawns the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "bufferless/graph.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int status = -1;
    std::string output; // stdout + stderr interleaved
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BUFFERLESS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("bufferless_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("missing or unknown subcommands fail with usage errors") {
    CHECK(run_cli("").status != 0);
    CHECK(run_cli("transmogrify").status != 0);
    CHECK(run_cli("simulate --no-such-flag").status != 0);
}

TEST_CASE("generate writes a loadable edge list with the requested seed") {
    const fs::path cfg = write_file("gen.cfg", "N = 80\nm = 2\ngamma = 3\n");
    const fs::path out = scratch_dir() / "g.edges";
    const CmdResult r =
        run_cli("generate --config " + cfg.string() + " --out " + out.string() + " --seed 321");
    CHECK(r.status == 0);
    std::uint64_t seed = 0;
    const bufferless::Graph g = bufferless::load_edge_list(out.string(), &seed);
    CHECK(seed == 321);
    CHECK(g.node_count() == 80);
    CHECK(g.edge_count() == 3 + 77 * 2);
    CHECK_NOTHROW(bufferless::validate_graph(g));
}

TEST_CASE("config validation failures name the field and exit nonzero") {
    const fs::path cfg = write_file("bad.cfg", "m = 2\ngamma = 3\n"); // no N
    const CmdResult r = run_cli("generate --config " + cfg.string());
    CHECK(r.status != 0);
    CHECK(r.output.find("'N'") != std::string::npos);
}

TEST_CASE("simulate with rho=0 reports zero loss and deflection") {
    const fs::path cfg = write_file(
        "idle.cfg", "N = 60\nm = 2\ngamma = 3\nrho = 0\nC = 2\nalpha = 1\nT = 30\n");
    const CmdResult r = run_cli("simulate --config " + cfg.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("eta,omega,ta,ng") != std::string::npos);
    CHECK(r.output.find("0,0,nan,0") != std::string::npos);
}

TEST_CASE("simulate accepts a pre-generated graph and writes a trace") {
    const fs::path gcfg = write_file("gen2.cfg", "N = 60\nm = 2\ngamma = 3\n");
    const fs::path graph = scratch_dir() / "g2.edges";
    REQUIRE(run_cli("generate --config " + gcfg.string() + " --out " + graph.string()).status ==
            0);

    const fs::path cfg = write_file(
        "run.cfg", "N = 60\nm = 2\ngamma = 3\nrho = 0.5\nC = 2\nalpha = 1\nT = 30\n");
    const fs::path trace = scratch_dir() / "trace.csv";
    const fs::path report = scratch_dir() / "report.csv";
    const CmdResult r = run_cli("simulate --config " + cfg.string() + " --graph " +
                                graph.string() + " --trace " + trace.string() + " --out " +
                                report.string());
    CHECK(r.status == 0);

    const std::string trace_text = slurp(trace);
    CHECK(trace_text.rfind("step,generated,arrived,dropped,deflections,in_flight\n", 0) == 0);
    CHECK(std::count(trace_text.begin(), trace_text.end(), '\n') == 31); // header + 30 steps

    const std::string report_text = slurp(report);
    CHECK(report_text.rfind("eta,omega,ta,ng\n", 0) == 0);
}

TEST_CASE("route dumps a table for an edge-list file") {
    const fs::path gcfg = write_file("gen3.cfg", "N = 20\nm = 2\ngamma = 3\n");
    const fs::path graph = scratch_dir() / "g3.edges";
    REQUIRE(run_cli("generate --config " + gcfg.string() + " --out " + graph.string()).status ==
            0);
    const fs::path dump = scratch_dir() / "table.txt";
    const CmdResult r =
        run_cli("route --graph " + graph.string() + " --alpha 1 --out " + dump.string());
    CHECK(r.status == 0);
    const std::string text = slurp(dump);
    CHECK(std::count(text.begin(), text.end(), '\n') == 20 * 19);
}

TEST_CASE("sweep emits the stable CSV schema and is reproducible") {
    const fs::path cfg = write_file("sweep.cfg",
                                    "N = 30\nm = 2\ngamma = 3\nC = 2\nalpha = 1\nT = 15\n"
                                    "reps = 2\nbase_seed = 9\nsweep = rho\nvalues = 0.2, 0.4\n");
    const fs::path out_a = scratch_dir() / "sweep_a.csv";
    const fs::path out_b = scratch_dir() / "sweep_b.csv";
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out_a.string()).status == 0);
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out_b.string()).status == 0);

    const std::string a = slurp(out_a);
    CHECK(a.rfind("swept_name,swept_value,omega_mean,omega_std,eta_mean,eta_std,ta_mean,"
                  "ta_std,ng_mean,reps\n",
                  0) == 0);
    CHECK(std::count(a.begin(), a.end(), '\n') == 3);
    CHECK(a == slurp(out_b)); // byte-identical rerun
}

TEST_CASE("the --paper preset raises replications to 100") {
    const fs::path cfg = write_file("paper.cfg",
                                    "N = 12\nm = 1\ngamma = 3\nC = 2\nalpha = 0\nT = 5\n"
                                    "reps = 2\nsweep = rho\nvalues = 0.5\n");
    const fs::path out = scratch_dir() / "paper.csv";
    CHECK(run_cli("sweep --config " + cfg.string() + " --paper --out " + out.string()).status ==
          0);
    const std::string text = slurp(out);
    CHECK(text.find(",100\n") != std::string::npos);
}
