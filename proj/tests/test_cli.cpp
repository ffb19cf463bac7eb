#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fwaudit/cli.hpp"
#include "fwaudit/pix.hpp"
#include "fwaudit/report_io.hpp"

using namespace fwaudit;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("fwaudit-test-" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    fs::path write(const std::string& name, const std::string& content) const
    {
        fs::path p = path / name;
        std::ofstream f(p, std::ios::binary);
        f << content;
        return p;
    }
};

struct CliRun {
    int exit_code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string pix_365_lines()
{
    std::string doc = "PIX Version 6.3(3)\n"
                      "nameif ethernet0 outside security0\n"
                      "nameif ethernet1 inside security100\n"
                      "ip address outside 203.0.113.2 255.255.255.252\n"
                      "ip address inside 10.1.0.1 255.255.0.0\n"
                      "access-list keep permit tcp any host 10.1.0.9 eq 443\n"
                      "access-group keep in interface outside\n";
    while (count_lines(doc) < 365)
        doc += "! filler\n";
    return doc;
}

const char* kPermissive = "meta vendor checkpoint\n"
                          "meta version NG R55\n"
                          "interface e0 zone external net 203.0.113.0/30\n"
                          "interface e1 zone internal:a net 10.1.0.0/16\n"
                          "rule permit src any dst any svc any\n";

const char* kAllDeny = "meta vendor checkpoint\n"
                       "interface e0 zone external net 203.0.113.0/30\n"
                       "interface e1 zone internal:a net 10.1.0.0/16\n"
                       "rule deny src any dst any svc any\n";

} // namespace

TEST_CASE("fc on a 365-line pix file prints 315")
{
    TempDir dir;
    auto file = dir.write("fw.pix", pix_365_lines());
    auto result = run({"fc", file.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("FC 315\n") == 0);
}

TEST_CASE("fc on a checkpoint file also reports RC")
{
    TempDir dir;
    auto file = dir.write("fw.fwn", kPermissive);
    auto result = run({"fc", file.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("FC ") == 0);
    CHECK(result.out.find("RC ") != std::string::npos);
    CHECK(result.out.find("predicted_errors") != std::string::npos);
}

TEST_CASE("audit gate: all-deny passes, permit-any trips exit 3")
{
    TempDir dir;
    auto quiet = dir.write("quiet.fwn", kAllDeny);
    auto result = run({"audit", quiet.string(), "--fail-on-errors", "1"});
    CHECK(result.exit_code == 0);

    auto loud = dir.write("loud.fwn", kPermissive);
    auto gated = run({"audit", loud.string(), "--fail-on-errors", "1"});
    CHECK(gated.exit_code == 3);
    // an audit with findings is still a successful audit without the gate
    auto plain = run({"audit", loud.string()});
    CHECK(plain.exit_code == 0);
    CHECK(plain.out.find("errors: 3") != std::string::npos);
    CHECK(plain.out.find("i01") != std::string::npos);
    CHECK(plain.out.find("r01") != std::string::npos);
}

TEST_CASE("json report round-trips")
{
    TempDir dir;
    auto file = dir.write("loud.fwn", kPermissive);
    auto result = run({"audit", file.string(), "--format", "json"});
    CHECK(result.exit_code == 0);
    AuditReport parsed = report_from_json(result.out);
    CHECK(parsed.error_count() == 3);
    CHECK(parsed.config_id == "loud.fwn");
    CHECK(parsed.version_category == "NG R55");
    // emitting the parsed report reproduces the bytes
    CHECK(report_to_json(parsed) == result.out);
}

TEST_CASE("usage errors exit 1, unreadable files exit 2")
{
    auto bad_flag = run({"audit", "/nonexistent", "--no-such-flag"});
    CHECK(bad_flag.exit_code == 1);
    auto no_cmd = run({});
    CHECK(no_cmd.exit_code == 1);
    auto missing = run({"audit", "/nonexistent/file.fwn"});
    CHECK(missing.exit_code == 2);
    CHECK(!missing.err.empty());
    auto malformed = run({"fc", "/dev/null"});
    CHECK(malformed.exit_code == 0); // empty pix config: 0 lines, fc floors at 1
}

TEST_CASE("corpus subcommand writes the csv bundle")
{
    TempDir dir;
    dir.write("a.fwn", kPermissive);
    dir.write("b.fwn", kAllDeny);
    dir.write("c.pix", pix_365_lines());
    fs::path out_dir = dir.path / "out";
    auto result = run({"corpus", dir.path.string(), "--out-dir", out_dir.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("records 3") != std::string::npos);
    for (const char* name : {"records.csv", "frequencies.csv", "regression.csv", "plot.csv",
                             "fc_summary.csv", "errors_by_version.csv"})
        CHECK_MESSAGE(fs::exists(out_dir / name), name);

    std::ifstream records(out_dir / "records.csv");
    std::string header;
    std::getline(records, header);
    CHECK(header.find("id,vendor,version_category,fc,error_count,i01") == 0);
}

TEST_CASE("corpus format csv streams the records table, json a summary")
{
    TempDir dir;
    dir.write("a.fwn", kPermissive);
    dir.write("b.fwn", kAllDeny);
    auto csv = run({"corpus", dir.path.string(), "--format", "csv"});
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("id,vendor,version_category,fc,error_count,i01") == 0);
    CHECK(csv.out.find("a.fwn,checkpoint") != std::string::npos);

    auto json = run({"corpus", dir.path.string(), "--format", "json"});
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"records\": 2") != std::string::npos);

    // csv is a corpus-only format
    auto rejected = run({"audit", dir.path.string() + "/a.fwn", "--format", "csv"});
    CHECK(rejected.exit_code == 1);
}

TEST_CASE("corpus keeps going past malformed files")
{
    TempDir dir;
    dir.write("good.fwn", kPermissive);
    dir.write("bad.fwn", "meta vendor checkpoint\nrule permit\n");
    auto result = run({"corpus", dir.path.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("records 1") != std::string::npos);
    CHECK(result.err.find("bad.fwn") != std::string::npos);
}

TEST_CASE("generate writes config and label files that agree")
{
    TempDir dir;
    fs::path out_dir = dir.path / "gen";
    auto result = run({"generate", "--vendor", "pix", "--target-fc", "200", "--errors",
                       "i04,o02", "--seed", "42", "--out-dir", out_dir.string()});
    CHECK(result.exit_code == 0);
    REQUIRE(fs::exists(out_dir / "pix-42.pix"));
    REQUIRE(fs::exists(out_dir / "pix-42.labels"));

    std::ifstream labels(out_dir / "pix-42.labels");
    std::string line;
    std::vector<std::string> codes;
    while (std::getline(labels, line))
        codes.push_back(line);
    CHECK(codes == std::vector<std::string>{"i04", "o02"});

    auto audited = run({"audit", (out_dir / "pix-42.pix").string(), "--format", "json"});
    CHECK(audited.exit_code == 0);
    auto report = report_from_json(audited.out);
    CHECK(report.error_count() == 2);
}

TEST_CASE("json round-trips threshold evidence too")
{
    TempDir dir;
    auto config = dir.write("web.fwn",
                            "meta vendor checkpoint\n"
                            "interface e0 zone external net 203.0.113.0/30\n"
                            "interface e1 zone internal:a net 10.1.0.0/16\n"
                            "rule permit src any dst 10.1.0.0/16 svc tcp/80\n");
    auto result = run({"audit", config.string(), "--format", "json"});
    CHECK(result.exit_code == 0);
    auto report = report_from_json(result.out);
    auto& ev = report.evidence[std::size_t(error_code_index("i08"))];
    REQUIRE(ev.count.has_value());
    CHECK(*ev.count == 65536);
    CHECK(*ev.threshold == 256);
    CHECK(report_to_json(report) == result.out);
}

TEST_CASE("generated corpus round-trips through the corpus scanner")
{
    TempDir dir;
    fs::path gen_dir = dir.path / "gen";
    for (int seed = 1; seed <= 4; ++seed) {
        auto result = run({"generate", "--vendor", seed % 2 ? "pix" : "checkpoint",
                           "--target-fc", std::to_string(100 * seed), "--errors",
                           seed % 2 ? "i04,i08" : "o02,d01,r01", "--seed",
                           std::to_string(seed), "--out-dir", gen_dir.string()});
        REQUIRE(result.exit_code == 0);
    }
    for (const auto& entry : fs::directory_iterator(gen_dir))
        if (entry.path().extension() == ".labels")
            fs::remove(entry.path());
    auto scanned = run({"corpus", gen_dir.string()});
    CHECK(scanned.exit_code == 0);
    CHECK(scanned.out.find("records 4  failures 0") != std::string::npos);
}

TEST_CASE("registry override via flag changes detection")
{
    TempDir dir;
    // i08 keys on the http entry; retarget it to port 8080 and the torrent
    // of port-80 traffic stops mattering
    auto config = dir.write("web.fwn",
                            "meta vendor checkpoint\n"
                            "interface e0 zone external net 203.0.113.0/30\n"
                            "interface e1 zone internal:a net 10.1.0.0/16\n"
                            "rule permit src any dst 10.1.0.0/16 svc tcp/80\n");
    auto without = run({"audit", config.string()});
    CHECK(without.out.find("i08") != std::string::npos);

    auto registry = dir.write("registry.txt", "service http tcp/8080\n");
    auto with = run({"audit", config.string(), "--registry", registry.string()});
    CHECK(with.exit_code == 0);
    CHECK(with.out.find("i08") == std::string::npos);
}

TEST_CASE("FWAUDIT_REGISTRY env var supplies the default registry")
{
    TempDir dir;
    auto config = dir.write("web.fwn",
                            "meta vendor checkpoint\n"
                            "interface e0 zone external net 203.0.113.0/30\n"
                            "interface e1 zone internal:a net 10.1.0.0/16\n"
                            "rule permit src any dst 10.1.0.0/16 svc tcp/80\n");
    auto registry = dir.write("registry.txt", "service http tcp/8080\n");
    setenv("FWAUDIT_REGISTRY", registry.string().c_str(), 1);
    auto result = run({"audit", config.string()});
    unsetenv("FWAUDIT_REGISTRY");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("i08") == std::string::npos);
}

TEST_CASE("threshold override flags move the boundary")
{
    TempDir dir;
    auto config = dir.write("web.fwn",
                            "meta vendor checkpoint\n"
                            "interface e0 zone external net 203.0.113.0/30\n"
                            "interface e1 zone internal:a net 10.1.0.0/16\n"
                            "rule permit src any dst 10.1.0.0/28 svc tcp/80\n");
    auto calm = run({"audit", config.string()});
    CHECK(calm.out.find("i08") == std::string::npos); // 16 <= 256
    auto strict = run({"audit", config.string(), "--address-threshold", "10"});
    CHECK(strict.out.find("i08") != std::string::npos); // 16 > 10
}

TEST_CASE("zone sidecar resolves pix security-level ties")
{
    TempDir dir;
    auto config = dir.write("tie.pix", "PIX Version 6.3(1)\n"
                                       "nameif e0 left security0\n"
                                       "nameif e1 right security0\n"
                                       "ip address left 10.1.0.1 255.255.0.0\n"
                                       "ip address right 10.2.0.1 255.255.0.0\n"
                                       "access-list a permit tcp any host 10.2.0.9 eq 23\n"
                                       "access-group a in interface left\n");
    auto fails = run({"audit", config.string()});
    CHECK(fails.exit_code == 2);
    CHECK(fails.err.find("tie") != std::string::npos);

    auto sidecar = dir.write("zones.fwn", "interface left zone external net 203.0.113.0/30\n");
    auto works = run({"audit", config.string(), "--zones", sidecar.string()});
    CHECK(works.exit_code == 0);
    CHECK(works.out.find("i04") != std::string::npos);
}

TEST_CASE("strict flag surfaces unknown pix directives as input errors")
{
    TempDir dir;
    auto config = dir.write("odd.pix", "PIX Version 6.3(1)\n"
                                       "nameif e0 outside security0\n"
                                       "nameif e1 inside security100\n"
                                       "mystery directive\n");
    auto lenient = run({"fc", config.string()});
    CHECK(lenient.exit_code == 0);
    CHECK(lenient.err.find("mystery") != std::string::npos);
    auto strict = run({"fc", config.string(), "--strict"});
    CHECK(strict.exit_code == 2);
}

TEST_SUITE_END();
