#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "amice/io.hpp"

using namespace amice;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / "amice-cli-tests";
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& capture) {
    std::string cmd = std::string(AMICE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kTwoVarMeasure =
    "# a two-variable test measure\n"
    "prime 3\n"
    "precision 4\n"
    "orders 9 5\n"
    "ring plain\n"
    "dirac 1 1 1\n";

} // namespace

TEST_CASE("measure description parsing") {
    MeasureDescription d = parse_measure_description_text(
        "prime 5\nprecision 2\norders 6 4\nring plain\nlabel demo\n"
        "dirac 2 3 1\ndirac 2 3 2\ndirac 0 1 -4\n");
    CHECK(d.ring.p == 5);
    CHECK(d.ring.capacity == 2);
    CHECK(d.arity == 2);
    CHECK(d.label == "demo");
    REQUIRE(d.diracs.has_value());
    CHECK(d.diracs->terms().size() == 2); // duplicates merged
    MeasureSeries m = realize(d);
    CHECK(moment(m, 1, 2).scalar().residue() == 4); // 3 * (2 * 3^2) = 54 = 4 mod 25

    MeasureDescription raw = parse_measure_description_text(
        "prime 3\nprecision 3\norders 4\nring plain\nraw\ncoeff 0 7\ncoeff 3 -1\n");
    REQUIRE(raw.raw.has_value());
    CHECK(raw.raw->at(0).scalar().residue() == 7);
    CHECK(raw.raw->at(3).scalar().residue() == 26);

    MeasureDescription pq = parse_measure_description_text(
        "prime 2\nprecision 3\norders 6 2\nring polyq 3\ndirac 1 0 1,0,5\n");
    CHECK(pq.ring.tag == RingTag::polyq);
    MeasureSeries mq = realize(pq);
    CHECK(mq.series.at(0, 0).qc(2).residue() == 5);
}

TEST_CASE("parser failures name the offending field") {
    auto expect_throw = [](const std::string& text, const std::string& needle) {
        try {
            parse_measure_description_text(text);
            FAIL_CHECK("no parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_throw("precision 2\norders 4\n", "prime");
    expect_throw("prime 4\nprecision 2\norders 4\n", "prime");
    expect_throw("prime 3\norders 4\n", "precision");
    expect_throw("prime 3\nprecision 2\n", "orders");
    expect_throw("prime 3\nprecision 2\norders 4\ndirac x 1\n", "dirac");
    expect_throw("prime 3\nprecision 2\norders 4\nwat 1\n", "wat");
    expect_throw("prime 3\nprecision 2\norders 4\ndirac 1 1,2\n", "q-coefficient");
    expect_throw("prime 3\nprecision 0\norders 4\n", "precision");
}

TEST_CASE("series table output is canonical") {
    RingSpec ring = RingSpec::plain(3, 2);
    DiracCombination d(ring, 1);
    d.add_int(2, 1);
    std::ostringstream out;
    write_series_table(out, amice_transform(d, 3).series, "amice transform");
    CHECK(out.str() ==
          "# amice transform\np 3\nM 2\nM_eff 2\nN_S 3\n"
          "S^0 1\nS^1 2\nS^2 1\nS^3 0\n");
}

TEST_CASE("cli: verify exits 0 and reports pass") {
    fs::path dir = scratch_dir();
    fs::path in = dir / "unit.measure";
    fs::path out = dir / "verify.out";
    write_file(in, kTwoVarMeasure);
    int rc = run_cli("verify --input " + in.string() + " --level 3", out);
    CHECK(rc == 0);
    std::string text = read_file(out);
    CHECK(text.find("RESULT pass") != std::string::npos);
    CHECK(text.find("k 0 l 0 val >=") != std::string::npos);
}

TEST_CASE("cli: moments table") {
    fs::path dir = scratch_dir();
    fs::path in = dir / "moments.measure";
    fs::path out = dir / "moments.out";
    write_file(in,
               "prime 5\nprecision 2\norders 6 6\nring plain\ndirac 2 3 1\n");
    int rc = run_cli("moments --input " + in.string() + " --level 2", out);
    CHECK(rc == 0);
    CHECK(read_file(out).find("k 1 l 2 18") != std::string::npos);
}

TEST_CASE("cli: restrict drops the off-unit mass") {
    fs::path dir = scratch_dir();
    fs::path in = dir / "restrict.measure";
    fs::path out = dir / "restrict.out";
    write_file(in, "prime 3\nprecision 3\norders 9\nring plain\ndirac 1 1\ndirac 3 1\n");
    int rc = run_cli("restrict --input " + in.string(), out);
    CHECK(rc == 0);
    std::string text = read_file(out);
    CHECK(text.find("S^0 1\nS^1 1\nS^2 0\n") != std::string::npos);
}

TEST_CASE("cli: byte-identical output across runs and worker counts") {
    fs::path dir = scratch_dir();
    fs::path in = dir / "det.measure";
    write_file(in, kTwoVarMeasure);
    fs::path o1 = dir / "det1.out", o2 = dir / "det2.out", o3 = dir / "det3.out";
    CHECK(run_cli("polylog --input " + in.string() + " --level 4 --workers 1", o1) == 0);
    CHECK(run_cli("polylog --input " + in.string() + " --level 4 --workers 1", o2) == 0);
    CHECK(run_cli("polylog --input " + in.string() + " --level 4 --workers 3", o3) == 0);
    std::string a = read_file(o1);
    CHECK(a == read_file(o2));
    CHECK(a == read_file(o3));
    CHECK(a.find("k 0 l 0 S^0") != std::string::npos);
}

TEST_CASE("cli: distinct exit codes per failure class") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "err.out";

    fs::path bad = dir / "bad.measure";
    write_file(bad, "prime 4\nprecision 2\norders 4\n");
    CHECK(run_cli("amice --input " + bad.string(), out) == 3);

    CHECK(run_cli("amice --input " + (dir / "missing.file").string(), out) == 3);

    // stabilize of a one-variable description is fine; a verify at a level
    // past the T-order is a precision failure
    fs::path thin = dir / "thin.measure";
    write_file(thin, "prime 3\nprecision 3\norders 9 1\nring plain\ndirac 1 1 1\n");
    CHECK(run_cli("verify --input " + thin.string() + " --level 4", out) == 7);
}

TEST_CASE("cli: flag overrides rebuild the ring") {
    fs::path dir = scratch_dir();
    fs::path in = dir / "override.measure";
    fs::path out = dir / "override.out";
    write_file(in, "prime 3\nprecision 2\norders 4\nring plain\ndirac 2 1\n");
    CHECK(run_cli("amice --input " + in.string() + " --precision 3 --orders 2", out) == 0);
    std::string text = read_file(out);
    CHECK(text.find("M 3") != std::string::npos);
    CHECK(text.find("N_S 2") != std::string::npos);
}
