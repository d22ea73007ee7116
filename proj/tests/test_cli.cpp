#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_runner.hpp"
#include "mn/engine.hpp"

#include <filesystem>
#include <fstream>

using namespace mn;
using mntest::run_cli;

namespace {

std::filesystem::path tmp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("compute prints the pipeline invariants") {
    auto r = run_cli("compute 4_1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Delta = t^2 - 3*t + 1") != std::string::npos);
    CHECK(r.output.find("monic: yes") != std::string::npos);
    CHECK(r.output.find("q^ (degrees 0..3) = (0,0,0,0)") != std::string::npos);

    auto r52 = run_cli("compute 5_2");
    CHECK(r52.output.find("Delta = 2*t^2 - 3*t + 2") != std::string::npos);
    CHECK(r52.output.find("monic: no") != std::string::npos);
    CHECK(r52.output.find("novikov_lower_bound = 2") != std::string::npos);
}

TEST_CASE("bounds prints intervals with a cited trace") {
    auto r = run_cli("bounds \"spin(5_2)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("MN = [4, 4]") != std::string::npos);
    CHECK(r.output.find("Novikov inequality") != std::string::npos);
    CHECK(r.output.find("tunnel-number bound") != std::string::npos);
}

TEST_CASE("json output round-trips through the report parser") {
    auto r = run_cli("--json bounds \"sum(spin(5_2), spin(3_1))\"");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    BoundReport report = report_from_json(j);
    CHECK(report_to_json(report).dump(2) + "\n" == r.output);
    CHECK(report.root().expr == "sum(spin(5_2), spin(3_1))");
}

TEST_CASE("validate accepts the seed database") {
    auto r = run_cli("validate " + mntest::seed_db_path());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ok 5_2") != std::string::npos);
    CHECK(r.output.find("records validated") != std::string::npos);
}

TEST_CASE("export writes a parseable report") {
    auto path = tmp_file("mn_cli_export.json");
    std::filesystem::remove(path);
    auto r = run_cli("export \"spin(5_2)\" " + path.string());
    CHECK(r.exit_code == 0);
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("report_version") == 1);
    BoundReport report = report_from_json(j);
    CHECK(report.root().mn == Interval{4, 4});
    std::filesystem::remove(path);
}

TEST_CASE("exit codes distinguish failure kinds") {
    CHECK(run_cli("bounds \"spin[0](3_1)\"").exit_code == 2);   // parse error
    CHECK(run_cli("bogus_subcommand").exit_code == 2);          // usage
    CHECK(run_cli("compute no_such_knot").exit_code == 3);      // data error
    CHECK(run_cli("validate /nonexistent/db.ndjson").exit_code == 3);
    CHECK(run_cli("--max-minors 2 bounds 7_2").exit_code == 5); // resource cap

    // a database contradicting itself -> inconsistency exit code
    auto bad_db = tmp_file("mn_cli_bad_db.ndjson");
    {
        std::ofstream out(bad_db);
        out << R"js({"braid":"s=3; w=1,1,1,2,-1,2","dimension":1,"fibred":"no","name":"bad_5_2","tunnel_number":0})js"
            << "\n";
    }
    CHECK(run_cli("--db " + bad_db.string() + " bounds bad_5_2").exit_code == 4);
    std::filesystem::remove(bad_db);
}

TEST_CASE("validate rejects disagreeing notations") {
    // trefoil PD paired with a figure-eight braid
    auto path = tmp_file("mn_cli_mismatch.ndjson");
    {
        std::ofstream out(path);
        out << R"js({"braid":"s=3; w=1,-2,1,-2","dimension":1,"name":"frankenknot","pd":"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"})js"
            << "\n";
    }
    auto r = run_cli("validate " + path.string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("disagree") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("flags: --db and --primes") {
    auto r = run_cli("--db " + mntest::seed_db_path() + " compute 3_1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Delta = t^2 - t + 1") != std::string::npos);

    auto rp = run_cli("--primes 2 compute 5_2");
    CHECK(rp.exit_code == 0);
    CHECK(rp.output.find("fp_lower_bound = 0") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    for (const char* invocation :
         {"compute 6_3", "bounds \"spin(6_1)\"", "--json bounds \"spin[2](7_2)\""}) {
        auto first = run_cli(invocation);
        auto second = run_cli(invocation);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.output == second.output);
    }
}
