// End-to-end checks of the command-line tool. The binary path arrives via
// the CURVATA_BIN environment variable (set by the test harness); commands
// run through the shell with stdout+stderr captured to a scratch file.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const char* bin = std::getenv("CURVATA_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "CURVATA_BIN must point at the curvata binary");
    const std::string capture = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string cmd =
        env_prefix + "\"" + std::string(bin) + "\" " + args + " > " + capture + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = read_file(capture);
    std::remove(capture.c_str());
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

} // namespace

TEST_CASE("symcheck worked examples") {
    auto res = run_cli("symcheck --kappa 1,2,3 --r 1");
    CHECK(res.code == 0);
    CHECK(contains(res.out, "newton: 5,4,3; trP1: 12; trP1A: 22; trP1A2: 48"));
    CHECK(contains(res.out, "positivity: PositiveDefinite"));

    auto umb = run_cli("symcheck --kappa 2,2 --r 0");
    CHECK(umb.code == 0);
    CHECK(contains(umb.out, "maclaurin_min_margin: 0\n"));
    CHECK(contains(umb.out, "maclaurin product:r=1: lhs=4 rhs=4 margin=0\n"));
    CHECK(contains(umb.out, "maclaurin chain:r=1: lhs=2 rhs=2 margin=0\n"));
    CHECK(contains(umb.out, "maclaurin lead:r=0: lhs=4 rhs=4 margin=0\n"));

    auto mixed = run_cli("symcheck --kappa 1,-1 --r 1");
    CHECK(mixed.code == 0);
    CHECK(contains(mixed.out, "positivity: Indefinite"));
    CHECK(contains(mixed.out, "maclaurin: not applicable"));
}

TEST_CASE("symcheck rejects malformed input") {
    CHECK(run_cli("symcheck --kappa 1,2,bogus --r 0").code == 2);
    CHECK(run_cli("symcheck --kappa 1,2, --r 0").code == 2);
    CHECK(run_cli("symcheck --kappa 1,2,3 --r 5").code == 2);
    CHECK(run_cli("symcheck --kappa 1,2,3 --r -1").code == 2);
    CHECK(run_cli("symcheck").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("nonsense-subcommand").code == 2);
}

TEST_CASE("symcheck csv row") {
    auto res = run_cli("symcheck --kappa 1,2,3 --r 1 --csv sym_cli.csv");
    CHECK(res.code == 0);
    const std::string csv = read_file("sym_cli.csv");
    CHECK(first_line(csv) == "n,r,S_r,H_r,trP,trPA,trPA2,tau_r,positivity,maclaurin_min_margin");
    CHECK(contains(csv, "3,1,6,2,12,22,48,-92,PositiveDefinite,"));
    std::remove("sym_cli.csv");
}

TEST_CASE("tube worked examples") {
    auto stable = run_cli("tube --n 3 --r 0 --c 0 --R 1 --l 2");
    CHECK(stable.code == 0);
    CHECK(first_line(stable.out) == "Stable margin=0.3132");
    CHECK(contains(stable.out, "margin: 0.3131655288436028"));
    CHECK(contains(stable.out, "deciding_mode: j=0 m=1"));

    auto unstable = run_cli("tube --n 3 --r 0 --c 0 --R 1 --l 3");
    CHECK(unstable.code == 0);
    CHECK(contains(first_line(unstable.out), "Unstable margin="));

    auto threshold = run_cli("tube --n 3 --r 1 --c 0 --R 1 --l 3.14159265358979323846");
    CHECK(threshold.code == 0);
    CHECK(contains(first_line(threshold.out), "Stable margin="));

    auto hyperbolic = run_cli("tube --n 3 --r 0 --c -1 --R 0.5 --l 4");
    CHECK(hyperbolic.code == 0);
    CHECK(contains(first_line(hyperbolic.out), "Unstable margin=-4.02"));

    CHECK(run_cli("tube --n 3 --r 0 --c 1 --R 4 --l 1").code == 2);
    CHECK(run_cli("tube --n 3 --r 2 --c 0 --R 1 --l 1").code == 2);
}

TEST_CASE("tube mode table csv") {
    auto res = run_cli("tube --n 3 --r 0 --c 0 --R 1 --l 2 --csv tube_cli.csv --jmax 1 --mmax 1");
    CHECK(res.code == 0);
    const std::string csv = read_file("tube_cli.csv");
    CHECK(first_line(csv) == "j,m,eigenvalue");
    CHECK(contains(csv, "0,0,-2\n"));
    CHECK(contains(csv, "1,0,0\n"));
    CHECK(contains(csv, "0,1,0.4674011002723395"));
    std::remove("tube_cli.csv");
}

TEST_CASE("cap indices and spectrum csv") {
    auto res = run_cli("cap --n 2 --c 0 --rho0 1 --N 1024 --lmax 2 --csv cap_cli.csv");
    CHECK(res.code == 0);
    CHECK(contains(res.out, "full_index: 1"));
    CHECK(contains(res.out, "meanzero_index: 0"));
    CHECK(contains(res.out, "multiplicity=2"));
    CHECK(contains(res.out, "lambda1: -"));

    const std::string csv = read_file("cap_cli.csv");
    CHECK(first_line(csv) == "l,k,eigenvalue,multiplicity,residual");
    CHECK(contains(csv, "\n1,0,"));
    std::remove("cap_cli.csv");

    // theta away from pi/2 needs an explicit slope
    CHECK(run_cli("cap --n 2 --c 0 --rho0 1 --theta 1.0 --N 256 --lmax 2").code == 2);
    auto forced = run_cli("cap --n 2 --c 0 --rho0 1 --theta 1.0 --robin-slope 0.8 --N 256 --lmax 2");
    CHECK(forced.code == 0);
}

TEST_CASE("sweep determinism and config validation") {
    const std::string cfg =
        "{\n"
        "  \"command\": \"tube\",\n"
        "  \"n\": 3,\n"
        "  \"r\": 0,\n"
        "  \"c\": 0.0,\n"
        "  \"R\": {\"start\": 0.2, \"stop\": 1.4, \"steps\": 4},\n"
        "  \"l\": {\"start\": 0.5, \"stop\": 5.0, \"steps\": 3},\n"
        "  \"output\": \"sweep_cli_a.csv\"\n"
        "}\n";
    write_text("sweep_cli.json", cfg);
    CHECK(run_cli("sweep sweep_cli.json", "CURVATA_THREADS=4 ").code == 0);
    const std::string a = read_file("sweep_cli_a.csv");
    CHECK(first_line(a) == "n,r,c,R,l,label,margin,cross_eigenvalue,deciding_j,deciding_m");

    // 4 x 3 grid plus header
    int lines = 0;
    for (char ch : a)
        if (ch == '\n') ++lines;
    CHECK(lines == 13);

    // byte-identical rerun on a single thread
    write_text("sweep_cli2.json",
               std::string(cfg).replace(cfg.find("sweep_cli_a.csv"), 15, "sweep_cli_b.csv"));
    CHECK(run_cli("sweep sweep_cli2.json", "CURVATA_THREADS=1 ").code == 0);
    CHECK(a == read_file("sweep_cli_b.csv"));

    // row-major order over axes in config order: R outer, l inner
    std::istringstream rows(a);
    std::string line;
    std::getline(rows, line);
    std::getline(rows, line);
    CHECK(contains(line, "3,0,0,0.2000000000000000"));
    CHECK(contains(line, ",0.5,"));

    std::remove("sweep_cli.json");
    std::remove("sweep_cli2.json");
    std::remove("sweep_cli_a.csv");
    std::remove("sweep_cli_b.csv");

    write_text("sweep_bad.json",
               "{\"command\": \"tube\", \"n\": 3, \"r\": 0,"
               " \"c\": {\"start\": 0, \"stop\": 1, \"steps\": 2},"
               " \"R\": {\"start\": 0.5, \"stop\": 1, \"steps\": 2},"
               " \"l\": {\"start\": 1, \"stop\": 2, \"steps\": 2}}");
    CHECK(run_cli("sweep sweep_bad.json").code == 2);
    write_text("sweep_bad.json",
               "{\"command\": \"tube\", \"n\": 3, \"r\": 0, \"c\": 0,"
               " \"R\": {\"start\": 0.5, \"stop\": 1, \"steps\": 0}, \"l\": 2}");
    CHECK(run_cli("sweep sweep_bad.json").code == 2);
    write_text("sweep_bad.json",
               "{\"command\": \"tube\", \"n\": 3, \"r\": 0, \"c\": 0, \"l\": 2}");
    CHECK(run_cli("sweep sweep_bad.json").code == 2);  // missing R
    write_text("sweep_bad.json",
               "{\"command\": \"tube\", \"n\": {\"start\": 2, \"stop\": 4, \"steps\": 3},"
               " \"r\": 0, \"c\": 0, \"R\": 1, \"l\": 2}");
    CHECK(run_cli("sweep sweep_bad.json").code == 2);  // integer key cannot be an axis
    write_text("sweep_bad.json", "not json at all");
    CHECK(run_cli("sweep sweep_bad.json").code == 2);
    CHECK(run_cli("sweep no_such_file.json").code == 2);
    std::remove("sweep_bad.json");
}

TEST_CASE("sweep cap command emits verdict columns") {
    write_text("sweep_cap_cli.json",
               "{\"command\": \"cap\", \"n\": 2,"
               " \"c\": {\"start\": -1.0, \"stop\": 1.0, \"steps\": 2},"
               " \"rho0\": 0.8, \"N\": 256, \"lmax\": 2}");
    auto res = run_cli("sweep sweep_cap_cli.json");
    CHECK(res.code == 0);
    CHECK(first_line(res.out) ==
          "n,c,rho0,theta,N,lmax,lambda1,lambda2,lambda2_multiplicity,zero_band,"
          "full_index,meanzero_index,resolvent_integral");
    int lines = 0;
    for (char ch : res.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 3);
    std::remove("sweep_cap_cli.json");
}
