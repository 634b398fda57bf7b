#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ccdes/instance.hpp"
#include "ccdes/oracle.hpp"
#include "ccdes/report.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace ccdes;

namespace {

const std::string kCli = CCDES_CLI_PATH;
const fs::path kData = CCDES_DATA_DIR;

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("ccdes_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct RunResult {
    int code;
    std::string output;  ///< stdout and stderr interleaved
};

RunResult run(const std::string& args) {
    auto log = work_dir() / "out.txt";
    auto cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(log)};
}

std::string split_path() { return (kData / "detect_split.json").string(); }
std::string fault_path() { return (kData / "diagnose_fault.json").string(); }

}  // namespace

TEST_CASE("data files mirror the in-code fixtures") {
    auto split = load_instance(split_path());
    REQUIRE(split.ok());
    auto built = support::two_observer_split();
    CHECK(instance_to_json(split.instance->fsa, split.instance->observers) ==
          instance_to_json(built.fsa, built.observers));

    auto fault = load_instance(fault_path());
    REQUIRE(fault.ok());
    auto built2 = support::fault_diag_pair();
    CHECK(instance_to_json(fault.instance->fsa, fault.instance->observers) ==
          instance_to_json(built2.fsa, built2.observers));
}

TEST_CASE("verify exit codes follow the contract") {
    CHECK(run("verify " + split_path() + " --property co-diagnosability").code == 0);
    auto r = run("verify " + split_path() + " --property co-detectability");
    CHECK(r.code == 1);
    CHECK(r.output.find("violated") != std::string::npos);

    CHECK(run("verify " + split_path() + " --property no-such-thing").code == 2);
    CHECK(run("verify /nonexistent.json --property co-detectability").code == 2);

    auto bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run("verify " + bad.string() + " --property co-detectability").code == 2);

    // batch severity is the worst one seen
    CHECK(run("verify " + split_path() + " " + fault_path() + " --property co-predictability")
              .code == 1);
}

TEST_CASE("reports round-trip and their certificates re-validate") {
    auto rep_path = work_dir() / "split.report.json";
    auto r = run("verify " + split_path() + " --property co-detectability --pump 2 --json " +
                 rep_path.string());
    CHECK(r.code == 1);

    auto parsed = report_from_json(slurp(rep_path));
    CHECK(parsed.property == Property::co_detectability);
    CHECK_FALSE(parsed.holds);
    REQUIRE(parsed.certificate.has_value());
    REQUIRE(parsed.evidence.has_value());

    auto inst = load_instance(parsed.instance_path);
    REQUIRE(inst.ok());
    auto check = check_certificate(inst.instance->fsa, &inst.instance->observers,
                                   *parsed.certificate, &*parsed.evidence);
    CHECK(check.ok);
    CHECK(check.diagnostics.empty());
}

TEST_CASE("holds verdicts write reports without certificates") {
    auto rep_path = work_dir() / "holds.report.json";
    auto r = run("verify " + split_path() + " --property diagnosability --json " +
                 rep_path.string());
    CHECK(r.code == 0);
    auto parsed = report_from_json(slurp(rep_path));
    CHECK(parsed.holds);
    CHECK_FALSE(parsed.certificate.has_value());
}

TEST_CASE("batch json writes one report per instance into a directory") {
    auto dir = work_dir() / "reports";
    fs::create_directories(dir);
    auto r = run("verify " + split_path() + " " + fault_path() +
                 " --property co-predictability --jobs 2 --json " + dir.string());
    CHECK(r.code == 1);
    CHECK(fs::exists(dir / "detect_split.report.json"));
    CHECK(fs::exists(dir / "diagnose_fault.report.json"));
    auto parsed = report_from_json(slurp(dir / "diagnose_fault.report.json"));
    CHECK_FALSE(parsed.holds);
    REQUIRE(parsed.certificate.has_value());
    auto inst = load_instance(fault_path());
    REQUIRE(inst.ok());
    CHECK(check_certificate(inst.instance->fsa, &inst.instance->observers, *parsed.certificate)
              .ok);
}

TEST_CASE("oracle subcommand and cross-check agree with the fast path") {
    CHECK(run("oracle " + fault_path() + " --property co-diagnosability").code == 1);
    CHECK(run("oracle " + fault_path() + " --property diagnosability").code == 1);
    CHECK(run("verify " + fault_path() + " --property co-predictability --oracle").code == 1);
    CHECK(run("verify " + split_path() + " --property strong-detectability --oracle").code == 1);
}

TEST_CASE("compose emits graphs in both formats") {
    auto r = run("compose " + split_path() + " --property co-detectability");
    CHECK(r.code == 0);
    CHECK(r.output.find("digraph") != std::string::npos);
    CHECK(r.output.find("⋄") != std::string::npos);

    auto dot_path = work_dir() / "comp.dot";
    CHECK(run("compose " + split_path() + " --property co-diagnosability --dot " +
              dot_path.string())
              .code == 0);
    CHECK(slurp(dot_path).find("digraph") != std::string::npos);

    auto json_path = work_dir() / "comp.json";
    CHECK(run("compose " + fault_path() + " --property co-predictability --json " +
              json_path.string())
              .code == 0);
    CHECK(slurp(json_path).find("\"kind\"") != std::string::npos);
}

TEST_CASE("generate writes instances with provenance sidecars") {
    auto out = work_dir() / "gen.json";
    auto r = run("generate co-detectability --random 2 --seed 3 --out " + out.string());
    CHECK(r.code == 0);
    auto inst = load_instance(out);
    REQUIRE(inst.ok());
    auto sidecar = work_dir() / "gen.provenance.json";
    REQUIRE(fs::exists(sidecar));
    auto text = slurp(sidecar);
    CHECK(text.find("dfa-intersection-to-co-detectability") != std::string::npos);
    CHECK(text.find("\"property\": \"co-detectability\"") != std::string::npos);

    // byte-identical regeneration for a fixed seed
    auto out2 = work_dir() / "gen2.json";
    CHECK(run("generate co-detectability --random 2 --seed 3 --out " + out2.string()).code == 0);
    CHECK(slurp(out) == slurp(out2));

    CHECK(run("generate nonsense --random 2 --out " + (work_dir() / "x.json").string()).code ==
          2);

    auto path_out = work_dir() / "path.json";
    CHECK(run("generate path-predictability --random 5 --seed 1 --out " + path_out.string())
              .code == 0);
    CHECK(load_instance(path_out).ok());
}

TEST_CASE("verify runs generated instances against their sidecars") {
    auto out = work_dir() / "round.json";
    REQUIRE(run("generate co-predictability --random 2 --seed 11 --out " + out.string()).code ==
            0);
    auto side = nlohmann::json::parse(slurp(work_dir() / "round.provenance.json"));
    REQUIRE_FALSE(side.at("expected").is_null());
    bool expected = side.at("expected").at("holds").get<bool>();
    auto r = run("verify " + out.string() + " --property co-predictability --oracle");
    CHECK(r.code == (expected ? 0 : 1));
}

TEST_CASE("dot export is limited to a single instance") {
    auto dot = work_dir() / "v.dot";
    CHECK(run("verify " + split_path() + " " + fault_path() +
              " --property co-detectability --dot " + dot.string())
              .code == 2);
    CHECK(run("verify " + split_path() + " --property co-detectability --dot " + dot.string())
              .code == 1);
    CHECK(slurp(dot).find("digraph") != std::string::npos);
}
