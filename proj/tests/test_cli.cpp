#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ginv/inverses.hpp"
#include "ginv/json_io.hpp"

using namespace ginv;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(GINV_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "ginv_cli_scratch";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string write_matrix(const std::string& name, const Matrix& m) {
    const fs::path p = scratch_dir() / name;
    write_json_file(p.string(), matrix_to_json(m));
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Matrix worked_example() {
    Matrix a(3, 3);
    a << Complex(1), Complex(2), Complex(3),
         Complex(0), Complex(2), Complex(0),
         Complex(0), Complex(1), Complex(0);
    return a;
}

Matrix d20() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(2.0);
    return m;
}

}  // namespace

TEST_CASE("drazin subcommand writes the golden inverse") {
    const std::string in = write_matrix("a.json", worked_example());
    const std::string out = (scratch_dir() / "a_d.json").string();
    const RunResult r = run("drazin --in " + in + " --out " + out);
    CHECK(r.exit_code == 0);
    const Matrix got = read_matrix_file(out);
    CHECK(rel_residual(got, drazin(worked_example())) < 1e-10);
}

TEST_CASE("gd1 and onegd subcommands honour an explicit inner inverse") {
    Matrix inner(2, 2);
    inner << Complex(0.5), Complex(1.0), Complex(1.0), Complex(1.0);
    const std::string tin = write_matrix("t.json", d20());
    const std::string iin = write_matrix("ti.json", inner);

    const std::string gout = (scratch_dir() / "g.json").string();
    CHECK(run("gd1 --in " + tin + " --inner " + iin + " --out " + gout).exit_code == 0);
    Matrix gexp(2, 2);
    gexp << Complex(0.5), Complex(1.0), Complex(0.0), Complex(0.0);
    CHECK(rel_residual(read_matrix_file(gout), gexp) < 1e-12);

    const std::string hout = (scratch_dir() / "h.json").string();
    CHECK(run("onegd --in " + tin + " --inner " + iin + " --out " + hout).exit_code == 0);
    Matrix hexp(2, 2);
    hexp << Complex(0.5), Complex(0.0), Complex(1.0), Complex(0.0);
    CHECK(rel_residual(read_matrix_file(hout), hexp) < 1e-12);
}

TEST_CASE("decompose subcommands print structured json") {
    const std::string in = write_matrix("a2.json", worked_example());
    const RunResult core = run("decompose core --in " + in);
    CHECK(core.exit_code == 0);
    const Json cj = Json::parse(core.out);
    CHECK(cj.at("index").get<int>() == 1);
    CHECK(cj.contains("Q"));
    CHECK(cj.contains("T1"));
    CHECK(cj.contains("T2"));
    CHECK(cj.contains("P"));

    const RunResult cr = run("decompose closed-range --in " + in);
    CHECK(cr.exit_code == 0);
    const Json rj = Json::parse(cr.out);
    for (const char* key : {"U", "W", "A1", "A2", "D"}) CHECK(rj.contains(key));
}

TEST_CASE("inner subcommand defaults to the pseudoinverse and seeds deterministically") {
    const std::string in = write_matrix("t2.json", d20());
    const RunResult r = run("inner --in " + in);
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("provenance").get<std::string>() == "pseudoinverse");
    const Matrix x = matrix_from_json(j);
    Matrix xexp = Matrix::Zero(2, 2);
    xexp(0, 0) = Complex(0.5);
    CHECK(rel_residual(x, xexp) < 1e-12);

    const RunResult s1 = run("inner --in " + in + " --inner-seed 11");
    const RunResult s2 = run("inner --in " + in + " --inner-seed 11");
    CHECK(s1.exit_code == 0);
    CHECK(s1.out == s2.out);
    CHECK(Json::parse(s1.out).at("provenance").get<std::string>() == "free_parameter");
}

TEST_CASE("check subcommand verdicts and usage errors") {
    const std::string in = write_matrix("t3.json", d20());
    CHECK(run("check --theorem gd1-square --in " + in).exit_code == 0);
    CHECK(run("check --theorem no-such-id --in " + in).exit_code == 2);
    CHECK(run("check --theorem gd1-square --in " + in + " --extra " + in).exit_code == 2);

    const std::string sin = write_matrix("s3.json", worked_example());
    CHECK(run("check --theorem cline --in " + in + " --extra " + in).exit_code == 0);
    CHECK(run("check --theorem cline --in " + in + " --extra " + sin).exit_code == 2);
}

TEST_CASE("preorder subcommand exit codes encode the verdict") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = Complex(1.0);
    Matrix t_good = s;
    t_good(1, 1) = Complex(5.0);
    Matrix t_bad(2, 2);
    t_bad << Complex(2.0), Complex(0.0), Complex(0.0), Complex(5.0);

    const std::string sp = write_matrix("s.json", s);
    const std::string ip = write_matrix("si.json", Matrix::Identity(2, 2));
    const std::string tg = write_matrix("tg.json", t_good);
    const std::string tb = write_matrix("tb.json", t_bad);

    const RunResult hold = run("preorder --rel gd1 --s " + sp + " --t " + tg + " --inner " + ip);
    CHECK(hold.exit_code == 0);
    const Json hj = Json::parse(hold.out);
    CHECK(hj.at("preorder").at("holds").get<bool>());
    CHECK(hj.contains("membership"));

    CHECK(run("preorder --rel gd1 --s " + sp + " --t " + tb + " --inner " + ip).exit_code == 1);
    CHECK(run("preorder --rel drazin --s " + sp + " --t " + tg).exit_code == 0);
    CHECK(run("preorder --rel drazin --s " + sp + " --t " + tb).exit_code == 1);
}

TEST_CASE("malformed and missing inputs exit with code 2") {
    const std::string bad = std::string(GINV_TEST_DATA_DIR) + "/malformed.json";
    CHECK(run("drazin --in " + bad + " --out /dev/null").exit_code == 2);
    CHECK(run("drazin --in /nonexistent/nowhere.json --out /dev/null").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("fuzz --dims 4..2 --count 1 --seed 1").exit_code == 2);
    CHECK(run("fuzz --dims banana --count 1 --seed 1").exit_code == 2);

    Matrix fake(2, 2);
    fake << Complex(1.0), Complex(1.0), Complex(1.0), Complex(1.0);
    const std::string tin = write_matrix("t4.json", d20());
    const std::string fin = write_matrix("fake_inner.json", fake);
    CHECK(run("gd1 --in " + tin + " --inner " + fin + " --out /dev/null").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("fuzz reports are byte-identical across runs and respect the env seed") {
    const std::string r1 = (scratch_dir() / "rep1.json").string();
    const std::string r2 = (scratch_dir() / "rep2.json").string();
    const std::string base = "fuzz --dims 2..3 --indices 0..1 --count 3 ";
    CHECK(run(base + "--seed 7 --report " + r1).exit_code == 0);
    CHECK(run(base + "--seed 7 --report " + r2).exit_code == 0);
    CHECK(slurp(r1) == slurp(r2));

    const std::string r3 = (scratch_dir() / "rep3.json").string();
    const std::string env = "GINV_SEED=7 " + std::string(GINV_BIN_PATH) + " " + base +
                            "--report " + r3 + " 2>/dev/null >/dev/null";
    CHECK(std::system(env.c_str()) == 0);
    CHECK(slurp(r3) == slurp(r1));

    const std::string r4 = (scratch_dir() / "rep4.json").string();
    CHECK(run(base + "--seed 8 --report " + r4).exit_code == 0);
    CHECK(slurp(r4) != slurp(r1));
}

TEST_CASE("sequence-space example subcommand") {
    CHECK(run("l2-example --truncate 4").exit_code == 0);
    CHECK(run("l2-example --truncate 3").exit_code == 2);
}
