#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hullcode/dot_access.hpp"
#include "hullcode/io.hpp"
#include "hullcode/point_set.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = HULLCODE_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hullcode_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) {
    json j;
    std::ifstream in(path);
    in >> j;
    return j;
}

} // namespace

TEST_CASE("gen writes data plus a metadata sidecar, deterministically") {
    TempDir dir;
    const auto data = dir.file("pts.csv");
    REQUIRE(run("gen klines --k 3 --n 300 --d 10 --strip 1e-3 --seed 7 --output " + data) == 0);
    REQUIRE(fs::exists(data));
    REQUIRE(fs::exists(data + ".meta.json"));
    const auto meta = load_json(data + ".meta.json");
    CHECK(meta.at("generator") == "klines");
    CHECK(meta.at("endpoints").size() == 6);

    const std::string first = slurp(data);
    REQUIRE(run("gen klines --k 3 --n 300 --d 10 --strip 1e-3 --seed 7 --output " + data) == 0);
    CHECK(slurp(data) == first);

    auto rows = hullcode::read_csv_matrix(data);
    CHECK(rows.size() == 300);
    CHECK(rows[0].size() == 10);
}

TEST_CASE("gen ball and packing obey their postconditions") {
    TempDir dir;
    const auto ball = dir.file("ball.csv");
    REQUIRE(run("gen ball --n 100 --d 20 --seed 1 --output " + ball) == 0);
    hullcode::PointSet ps(hullcode::read_csv_matrix(ball));
    REQUIRE(ps.size() == 100);
    REQUIRE(ps.dim() == 20);
    for (int i = 0; i < ps.size(); ++i) CHECK(std::sqrt(ps.norm_sq(i)) <= 1.0 + 1e-12);

    const auto pack = dir.file("pack.csv");
    REQUIRE(run("gen packing --d 3 --spacing 0.4 --seed 1 --output " + pack) == 0);
    hullcode::PointSet pk(hullcode::read_csv_matrix(pack));
    for (int i = 0; i < pk.size(); ++i)
        for (int j = i + 1; j < pk.size(); ++j) {
            double s = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double v = pk(i, c) - pk(j, c);
                s += v * v;
            }
            CHECK(std::sqrt(s) >= 0.4 - 1e-12);
        }
}

TEST_CASE("compress then eval round trip on collinear data") {
    TempDir dir;
    const auto data = dir.file("line.csv");
    {
        std::ofstream out(data);
        for (int i = 0; i <= 10; ++i) out << i * 0.3 << "," << i * 0.1 << "," << -i * 0.2 << "\n";
    }
    const auto result = dir.file("result.json");
    REQUIRE(run("compress --input " + data + " --algo cluster --eps 0.001 --output " + result) ==
            0);
    const auto r = load_json(result);
    CHECK(r.at("selected").size() == 2);
    CHECK(r.at("stats").at("eps") == 0.001);
    CHECK(r.at("codes").size() == 11);

    const auto report = dir.file("report.json");
    REQUIRE(run("eval --input " + data + " " + result + " --output " + report) == 0);
    const auto rep = load_json(report);
    CHECK(rep.at("method") == "oracle");
    CHECK(rep.at("hausdorff_one_sided").get<double>() <= 1e-9);
    CHECK(rep.at("selected_size") == 2);
}

TEST_CASE("gen, compress, eval round trip respects the cluster contract") {
    TempDir dir;
    const auto data = dir.file("klines.csv");
    REQUIRE(run("gen klines --k 3 --n 120 --d 6 --strip 1e-3 --seed 8 --output " + data) == 0);
    const auto result = dir.file("result.json");
    REQUIRE(run("compress --input " + data + " --algo cluster --engine fast --eps 0.008 "
                "--output " + result) == 0);
    const auto report = dir.file("report.json");
    REQUIRE(run("eval --input " + data + " " + result + " --output " + report) == 0);

    const auto res = load_json(result);
    const auto rep = load_json(report);
    const double bound = res.at("stats").at("bound").get<double>();
    CHECK(rep.at("hausdorff_one_sided").get<double>() <= bound + 1e-6);
    const double eps = res.at("stats").at("eps").get<double>();
    CHECK(rep.at("max_code_support").get<int>() <=
          static_cast<int>(std::ceil(16.0 / (eps * eps))));
    CHECK(rep.at("selected_size").get<int>() == static_cast<int>(res.at("selected").size()));
}

TEST_CASE("cover via the CLI keeps all four square corners") {
    TempDir dir;
    const auto data = dir.file("square.csv");
    {
        std::ofstream out(data);
        out << "1,1\n-1,1\n1,-1\n-1,-1\n";
    }
    const auto result = dir.file("result.json");
    REQUIRE(run("compress --input " + data + " --algo cover --eps 0.05 --delta 1.0 --output " +
                result) == 0);
    CHECK(load_json(result).at("selected").size() == 4);
}

TEST_CASE("identical configurations produce identical bytes") {
    TempDir dir;
    const auto data = dir.file("pts.csv");
    REQUIRE(run("gen ball --n 40 --d 4 --seed 9 --output " + data) == 0);
    const auto r1 = dir.file("r1.json");
    const auto r2 = dir.file("r2.json");
    const std::string cfg = " --algo cluster --engine fast --eps 0.05 --seed 3 --output ";
    REQUIRE(run("compress --input " + data + cfg + r1) == 0);
    REQUIRE(run("compress --input " + data + cfg + r2) == 0);
    CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("binary format and header skipping") {
    TempDir dir;
    const auto bin = dir.file("pts.bin");
    REQUIRE(run("gen ball --n 30 --d 3 --seed 2 --format bin --output " + bin) == 0);
    const auto result = dir.file("result.json");
    REQUIRE(run("compress --input " + bin + " --format bin --algo cluster --eps 0.05 --output " +
                result) == 0);
    CHECK(load_json(result).at("selected").size() >= 1);

    const auto csv = dir.file("hdr.csv");
    {
        std::ofstream out(csv);
        out << "x,y\n0,0\n1,0\n0,1\n";
    }
    const auto r2 = dir.file("r2.json");
    CHECK(run("compress --input " + csv + " --algo cluster --eps 0.1 --output " + r2) == 2);
    CHECK(run("compress --input " + csv + " --skip-header --algo cluster --eps 0.1 --output " +
              r2) == 0);
}

TEST_CASE("kernel mode selects the same subset as explicit mode") {
    TempDir dir;
    const auto data = dir.file("pts.csv");
    REQUIRE(run("gen ball --n 25 --d 4 --seed 5 --output " + data) == 0);

    // Gram of the normalized points, exactly as compress computes them
    auto rows = hullcode::read_csv_matrix(data);
    auto [ps, transform] = hullcode::normalize_to_unit_ball(rows);
    const auto gram = hullcode::gram_from_points(ps);
    const auto gram_csv = dir.file("gram.csv");
    {
        std::ostringstream out;
        for (int i = 0; i < ps.size(); ++i) {
            for (int j = 0; j < ps.size(); ++j) {
                if (j) out << ',';
                char buf[64];
                auto r = std::to_chars(buf, buf + sizeof(buf),
                                       gram[static_cast<std::size_t>(i) * ps.size() + j]);
                out << std::string(buf, r.ptr);
            }
            out << '\n';
        }
        std::ofstream f(gram_csv);
        f << out.str();
    }

    const auto r_exp = dir.file("explicit.json");
    const auto r_grm = dir.file("gram.json");
    REQUIRE(run("compress --input " + data + " --algo cluster --eps 0.05 --output " + r_exp) == 0);
    REQUIRE(run("compress --gram " + gram_csv + " --algo cluster --eps 0.05 --output " + r_grm) ==
            0);
    CHECK(load_json(r_exp).at("selected") == load_json(r_grm).at("selected"));
}

TEST_CASE("CSV with CRLF endings and padded cells parses") {
    TempDir dir;
    const auto data = dir.file("crlf.csv");
    {
        std::ofstream out(data, std::ios::binary);
        out << "0.0, 0.0\r\n1.0 ,0.0\r\n0.0,1.0\r\n";
    }
    const auto result = dir.file("r.json");
    CHECK(run("compress --input " + data + " --algo cluster --eps 0.1 --output " + result) == 0);
}

TEST_CASE("exit codes") {
    TempDir dir;
    const auto out = dir.file("out.json");

    SECTION("malformed input is exit 2") {
        const auto bad = dir.file("bad.csv");
        {
            std::ofstream f(bad);
            f << "1,2\n3,oops\n";
        }
        CHECK(run("compress --input " + bad + " --algo cluster --eps 0.1 --output " + out) == 2);
    }
    SECTION("missing file is exit 2") {
        CHECK(run("compress --input " + dir.file("nope.csv") + " --eps 0.1 --output " + out) == 2);
    }
    SECTION("bad flag values are exit 4") {
        const auto data = dir.file("ok.csv");
        {
            std::ofstream f(data);
            f << "0,0\n1,0\n";
        }
        CHECK(run("compress --input " + data + " --algo cluster --eps 1.5 --output " + out) == 4);
        CHECK(run("compress --input " + data + " --algo nonsense --eps 0.1 --output " + out) == 4);
        CHECK(run("compress --input " + data + " --algo cover --eps 0.1 --delta 7 --output " +
                  out) == 4);
        CHECK(run("compress --eps 0.1 --output " + out) == 4); // neither --input nor --gram
    }
    SECTION("dimension mismatch between dataset and result is exit 2") {
        const auto data = dir.file("pts.csv");
        REQUIRE(run("gen ball --n 10 --d 3 --seed 4 --output " + data) == 0);
        const auto result = dir.file("r.json");
        REQUIRE(run("compress --input " + data + " --algo cluster --eps 0.1 --output " + result) ==
                0);
        const auto other = dir.file("other.csv");
        REQUIRE(run("gen ball --n 10 --d 5 --seed 4 --output " + other) == 0);
        CHECK(run("eval --input " + other + " " + result + " --output " + out) == 2);
    }
}
