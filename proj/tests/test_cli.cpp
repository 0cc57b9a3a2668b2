#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "triperi/cli.hpp"
#include "triperi/metric_space.hpp"

using namespace triperi;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    fs::path path = fs::temp_directory_path() / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string current; std::getline(in, current);) {
        if (current == line) {
            return true;
        }
    }
    return false;
}

const std::string kEquilateral =
    "fms 1\npoints 3\nx y z\nexact\n0 1 1\n1 0 1\n1 1 0\n";
const std::string kAsymmetric =
    "fms 1\npoints 2\na b\nexact\n0 1\n2 0\n";
const std::string kVariantBMap = "fmap 1\nx y\ny x\nz x\n";

} // namespace

TEST_CASE("verify: pass, fail with witness, and parse errors") {
    auto good = temp_file("triperi_eq.fms", kEquilateral);
    RunResult pass = run_cli({"verify", good.string()});
    CHECK(pass.code == 0);
    CHECK(has_line(pass.out, "result: pass"));

    auto bad = temp_file("triperi_asym.fms", kAsymmetric);
    RunResult fail = run_cli({"verify", bad.string()});
    CHECK(fail.code == 1);
    CHECK(has_line(fail.out, "result: fail"));
    CHECK(has_line(fail.out, "violation: asymmetric"));
    CHECK(has_line(fail.out, "witness: a b"));

    auto malformed = temp_file("triperi_bad.fms", "fm 1\npoints 1\na\nexact\n0\n");
    RunResult parse = run_cli({"verify", malformed.string()});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 1") != std::string::npos);

    RunResult missing = run_cli({"verify", "/nonexistent/file.fms"});
    CHECK(missing.code == 2);
}

TEST_CASE("classify built-ins: examples A and B, paper space") {
    RunResult a = run_cli({"classify", "--paper-example", "A"});
    CHECK(a.code == 0);
    CHECK(has_line(a.out, "alpha_star: 2/3"));
    CHECK(has_line(a.out, "fixed_point_count: 2"));
    CHECK(has_line(a.out, "condition_i_witness: none"));

    RunResult b = run_cli({"classify", "--paper-example", "B"});
    CHECK(b.code == 1);
    CHECK(has_line(b.out, "condition_i_witness: x"));
    CHECK(has_line(b.out, "fixed_point_count: 0"));
    CHECK(has_line(b.out, "is_perimeter_contracting: true"));

    RunResult paper = run_cli({"classify", "--paper-space", "--window", "64"});
    CHECK(paper.code == 0);
    CHECK(has_line(paper.out, "alpha_star: 4/5"));
    CHECK(has_line(paper.out, "lipschitz: 1"));
    CHECK(has_line(paper.out, "is_perimeter_contracting: true"));
    CHECK(has_line(paper.out, "is_contraction: false"));
}

TEST_CASE("classify file inputs, totality and axiom failures exit 2") {
    auto space = temp_file("triperi_cls.fms", kEquilateral);
    auto map = temp_file("triperi_cls.fmap", kVariantBMap);
    RunResult b = run_cli({"classify", space.string(), map.string()});
    CHECK(b.code == 1); // variant B semantics
    CHECK(has_line(b.out, "alpha_star: 2/3"));

    auto partial = temp_file("triperi_partial.fmap", "fmap 1\nx y\ny x\n");
    RunResult not_total = run_cli({"classify", space.string(), partial.string()});
    CHECK(not_total.code == 2);

    auto bad_space = temp_file("triperi_bad2.fms", kAsymmetric);
    auto bad_map = temp_file("triperi_bad2.fmap", "fmap 1\na a\nb b\n");
    RunResult invalid = run_cli({"classify", bad_space.string(), bad_map.string()});
    CHECK(invalid.code == 2);
    CHECK(invalid.err.find("metric axioms") != std::string::npos);
}

TEST_CASE("classify rejects ambiguous or missing inputs") {
    CHECK(run_cli({"classify"}).code == 2);
    CHECK(run_cli({"classify", "--paper-space", "--paper-example", "A"}).code == 2);
    auto space = temp_file("triperi_only.fms", kEquilateral);
    CHECK(run_cli({"classify", space.string()}).code == 2);
}

TEST_CASE("solve: paper space converges, variant B exits 3, stall exits 1") {
    RunResult solved = run_cli({"solve", "--paper-space", "--start", "0", "--alpha", "7/8",
                                "--tol", "1/1000000"});
    CHECK(solved.code == 0);
    CHECK(has_line(solved.out, "status: converged"));
    CHECK(has_line(solved.out, "point: x41"));
    CHECK(has_line(solved.out, "iterations: 41"));
    CHECK(has_line(solved.out, "p0: 4"));

    RunResult fixed = run_cli({"solve", "--paper-example", "A", "--start", "z"});
    CHECK(fixed.code == 0);
    CHECK(has_line(fixed.out, "status: reached-exact-fixed-point"));
    CHECK(has_line(fixed.out, "point: x"));
    CHECK(has_line(fixed.out, "iterations: 1"));

    RunResult violation = run_cli({"solve", "--paper-example", "B", "--start", "z"});
    CHECK(violation.code == 3);
    CHECK(has_line(violation.out, "status: condition-i-violation-detected"));
    CHECK(has_line(violation.out, "condition_i_witness: x"));

    RunResult stalled = run_cli({"solve", "--paper-space", "--start", "0", "--max-iter", "3"});
    CHECK(stalled.code == 1);
    CHECK(has_line(stalled.out, "status: stalled-budget"));
}

TEST_CASE("solve validates flags with exit 2") {
    CHECK(run_cli({"solve", "--paper-space", "--start", "nowhere"}).code == 2);
    CHECK(run_cli({"solve", "--paper-space", "--start", "0", "--alpha", "oops"}).code == 2);
    CHECK(run_cli({"solve", "--paper-space", "--start", "0", "--alpha", "9/8"}).code == 2);
    CHECK(run_cli({"solve", "--paper-space", "--start", "0", "--tol", "0"}).code == 2);
    CHECK(run_cli({"solve", "--paper-space"}).code == 2); // --start required
}

TEST_CASE("solve picks a certified default alpha for file inputs") {
    auto space = temp_file("triperi_solvef.fms", kEquilateral);
    auto map = temp_file("triperi_solvef.fmap", "fmap 1\nx x\ny y\nz x\n");
    RunResult solved = run_cli({"solve", space.string(), map.string(), "--start", "z"});
    CHECK(solved.code == 0);
    CHECK(has_line(solved.out, "alpha_used: 2/3"));
    CHECK(has_line(solved.out, "status: reached-exact-fixed-point"));

    // Identity is not perimeter-contracting: no default alpha exists.
    auto id_map = temp_file("triperi_id.fmap", "fmap 1\nx x\ny y\nz z\n");
    RunResult no_alpha = run_cli({"solve", space.string(), id_map.string(), "--start", "x"});
    CHECK(no_alpha.code == 2);
    CHECK(no_alpha.err.find("--alpha") != std::string::npos);
}

TEST_CASE("paper-table rows alternate by parity and certify 7/8") {
    RunResult table = run_cli({"paper-table", "--window", "8"});
    CHECK(table.code == 0);
    for (int i = 0; i < 8; ++i) {
        std::string expect = "star_ratio x" + std::to_string(i) + ": " +
                             (i % 2 == 0 ? "3/4" : "2/3");
        CHECK(has_line(table.out, expect));
    }
    CHECK(has_line(table.out, "finite_max: 4/5"));
    CHECK(has_line(table.out, "finite_max_witness: x0 x1 x3"));
    CHECK(has_line(table.out, "alpha_bound: 7/8"));
    CHECK(has_line(table.out, "certified: true"));

    RunResult minimal = run_cli({"paper-table", "--window", "3"});
    CHECK(minimal.code == 0);
    CHECK(has_line(minimal.out, "star_ratio x2: 3/4"));
    CHECK(has_line(minimal.out, "finite_max: 4/5"));

    RunResult capacity = run_cli({"paper-table", "--window", "500"});
    CHECK(capacity.code == 2);
}

TEST_CASE("materialized spaces round-trip bit-for-bit") {
    fs::path space_path = fs::temp_directory_path() / "triperi_mat.fms";
    fs::path map_path = fs::temp_directory_path() / "triperi_mat.fmap";
    RunResult mat = run_cli({"materialize", "--paper-space", "--window", "12",
                             "--space-out", space_path.string(), "--map-out",
                             map_path.string(), "--remap-boundary-to-star"});
    REQUIRE(mat.code == 0);

    std::ifstream in(space_path);
    std::stringstream buf;
    buf << in.rdbuf();
    MetricSpace loaded = parse_fms(buf.str());
    CHECK(loaded.finite_size() == 14);
    CHECK(verify_metric_axioms(loaded).pass);
    CHECK(write_fms(loaded) == buf.str());

    RunResult verify = run_cli({"verify", space_path.string()});
    CHECK(verify.code == 0);

    // The boundary remap to x* makes the truncated shift genuinely
    // non-contracting near the boundary; classify still runs and reports it.
    RunResult classify = run_cli({"classify", space_path.string(), map_path.string()});
    CHECK(classify.code == 1);
    CHECK(has_line(classify.out, "is_perimeter_contracting: false"));
    CHECK(has_line(classify.out, "fixed_points: x*"));

    // Without the acknowledgement flag the map is refused.
    RunResult refused = run_cli({"materialize", "--paper-space", "--space-out",
                                 space_path.string(), "--map-out", map_path.string()});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("--remap-boundary-to-star") != std::string::npos);

    RunResult space_only = run_cli({"materialize", "--paper-space", "--window", "5",
                                    "--space-out", space_path.string()});
    CHECK(space_only.code == 0);
}

TEST_CASE("json and text renderings carry the same numeric values") {
    RunResult text = run_cli({"classify", "--paper-space", "--window", "16"});
    RunResult json = run_cli({"--format", "json", "classify", "--paper-space", "--window",
                              "16"});
    REQUIRE(json.code == 0);
    auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["alpha_star"] == "4/5");
    CHECK(doc["lipschitz"] == "1");
    CHECK(doc["is_perimeter_contracting"] == true);
    CHECK(doc["is_contraction"] == false);
    CHECK(doc["condition_i_witness"].is_null());
    CHECK(doc["fixed_points"] == nlohmann::json::array({"x*"}));
    CHECK(doc["window"] == 16);
    CHECK(has_line(text.out, "alpha_star: " + doc["alpha_star"].get<std::string>()));
    CHECK(has_line(text.out, "lipschitz: " + doc["lipschitz"].get<std::string>()));

    RunResult solve_json = run_cli({"--format", "json", "solve", "--paper-example", "B",
                                    "--start", "z"});
    CHECK(solve_json.code == 3);
    auto solve_doc = nlohmann::json::parse(solve_json.out);
    CHECK(solve_doc["status"] == "condition-i-violation-detected");
    CHECK(solve_doc["condition_i_witness"] == "x");

    RunResult verify_json = run_cli({"--format", "json", "verify",
                                     temp_file("triperi_vj.fms", kEquilateral).string()});
    CHECK(verify_json.code == 0);
    CHECK(nlohmann::json::parse(verify_json.out)["pass"] == true);
}

TEST_CASE("reports are byte-deterministic across repeated runs") {
    RunResult first = run_cli({"--format", "json", "classify", "--paper-space"});
    RunResult second = run_cli({"--format", "json", "classify", "--paper-space"});
    CHECK(first.out == second.out);

    RunResult t1 = run_cli({"paper-table", "--window", "10"});
    RunResult t2 = run_cli({"paper-table", "--window", "10"});
    CHECK(t1.out == t2.out);
}

TEST_CASE("malformed TRIPERI_THREADS makes enumeration commands exit 2") {
    ::setenv("TRIPERI_THREADS", "banana", 1);
    RunResult r = run_cli({"classify", "--paper-space", "--window", "8"});
    ::unsetenv("TRIPERI_THREADS");
    CHECK(r.code == 2);
    CHECK(r.err.find("TRIPERI_THREADS") != std::string::npos);

    ::setenv("TRIPERI_THREADS", "2", 1);
    RunResult ok = run_cli({"classify", "--paper-space", "--window", "8"});
    ::unsetenv("TRIPERI_THREADS");
    CHECK(ok.code == 0);
}

TEST_CASE("help is printed on request") {
    RunResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
    RunResult none = run_cli({});
    CHECK(none.code == 2);
}
