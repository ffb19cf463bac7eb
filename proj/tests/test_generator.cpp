#include <doctest.h>

#include <random>
#include <set>

#include "fwaudit/complexity.hpp"
#include "fwaudit/corpus.hpp"
#include "fwaudit/pix.hpp"

using namespace fwaudit;

TEST_SUITE_BEGIN("generator");

namespace {

AuditReport audit_generated(const GeneratedConfig& generated, Vendor vendor)
{
    ServiceRegistry registry = ServiceRegistry::defaults();
    FirewallConfig config;
    if (vendor == Vendor::Pix)
        config = parse_pix(generated.document, PixMode::Strict, registry).config;
    else
        config = parse_fwn(generated.document, registry);
    config.id = "generated";
    return audit_config(infer_zones(std::move(config)), registry);
}

std::vector<std::string> all_codes()
{
    std::vector<std::string> codes;
    for (const auto& info : error_catalogue())
        codes.emplace_back(info.code);
    return codes;
}

} // namespace

TEST_CASE("same seed gives byte-identical documents")
{
    GeneratorParams params;
    params.vendor = Vendor::Pix;
    params.target_fc = 400;
    params.seeded_errors = {"i04", "o02", "d01"};
    params.seed = 77;
    auto a = generate_synthetic(params);
    auto b = generate_synthetic(params);
    CHECK(a.document == b.document);
    CHECK(a.labels == b.labels);

    params.seed = 78;
    auto c = generate_synthetic(params);
    CHECK(a.document != c.document);
}

TEST_CASE("seeded {i04} audits to exactly {i04}")
{
    for (Vendor vendor : {Vendor::Pix, Vendor::CheckpointLike}) {
        GeneratorParams params;
        params.vendor = vendor;
        params.target_fc = 300;
        params.seeded_errors = {"i04"};
        params.seed = 5;
        auto generated = generate_synthetic(params);
        auto report = audit_generated(generated, vendor);
        CHECK(report.indicators == generated.labels);
        CHECK(report.error_count() == 1);
        CHECK(report.indicators[std::size_t(error_code_index("i04"))]);
    }
}

TEST_CASE("pix target fc controls the line count")
{
    GeneratorParams params;
    params.vendor = Vendor::Pix;
    params.target_fc = 1000;
    params.seeded_errors = {"i01", "i08"};
    params.seed = 3;
    auto generated = generate_synthetic(params);
    std::size_t lines = count_lines(generated.document);
    CHECK(lines >= 950);
    CHECK(lines <= 1150);

    auto config = parse_pix(generated.document, PixMode::Strict,
                            ServiceRegistry::defaults())
                      .config;
    std::int64_t fc = firewall_complexity(config);
    CHECK(std::llabs(fc - params.target_fc) <= params.target_fc / 10);
}

TEST_CASE("checkpoint target fc is met through object padding")
{
    GeneratorParams params;
    params.vendor = Vendor::CheckpointLike;
    params.target_fc = 500;
    params.seeded_errors = {"i02", "o04", "r01"};
    params.seed = 9;
    auto generated = generate_synthetic(params);
    auto config = parse_fwn(generated.document, ServiceRegistry::defaults());
    std::int64_t fc = firewall_complexity(config);
    CHECK(std::llabs(fc - params.target_fc) <= params.target_fc / 10);
}

TEST_CASE("every single code is individually seedable for both vendors")
{
    for (Vendor vendor : {Vendor::Pix, Vendor::CheckpointLike}) {
        for (const auto& code : all_codes()) {
            GeneratorParams params;
            params.vendor = vendor;
            params.target_fc = 250;
            params.seeded_errors = {code};
            params.seed = 11;
            auto generated = generate_synthetic(params);
            auto report = audit_generated(generated, vendor);
            std::string context = std::string(vendor_name(vendor)) + " code " + code;
            CHECK_MESSAGE(report.indicators == generated.labels, context);
        }
    }
}

TEST_CASE("random seeded sets audit to exactly their labels")
{
    std::mt19937_64 rng(2024);
    auto codes = all_codes();
    for (int trial = 0; trial < 40; ++trial) {
        Vendor vendor = trial % 2 ? Vendor::Pix : Vendor::CheckpointLike;
        std::set<std::string> chosen;
        std::size_t want = 1 + rng() % 8;
        while (chosen.size() < want)
            chosen.insert(codes[rng() % codes.size()]);
        GeneratorParams params;
        params.vendor = vendor;
        params.target_fc = 200 + std::int64_t(rng() % 800);
        params.seeded_errors.assign(chosen.begin(), chosen.end());
        params.seed = rng();
        auto generated = generate_synthetic(params);
        auto report = audit_generated(generated, vendor);
        CHECK(report.indicators == generated.labels);
    }
}

TEST_CASE("unrealizable requests are rejected")
{
    GeneratorParams params;
    params.vendor = Vendor::Pix;
    params.seeded_errors = {"d01"};
    params.internal_zones = 1;
    CHECK_THROWS_AS(generate_synthetic(params), AnalysisError);

    params.internal_zones = 2;
    params.seeded_errors = {"zzz"};
    CHECK_THROWS_AS(generate_synthetic(params), AnalysisError);

    params.seeded_errors = {"i01"};
    params.target_fc = 0;
    CHECK_THROWS_AS(generate_synthetic(params), AnalysisError);

    // a checkpoint config cannot reach fc=1 with dozens of seeded rules
    GeneratorParams big;
    big.vendor = Vendor::CheckpointLike;
    big.target_fc = 1;
    big.seeded_errors = all_codes();
    CHECK_THROWS_AS(generate_synthetic(big), AnalysisError);
}

TEST_CASE("generated corpus is monotone: spearman above 0.9")
{
    // seed progressively larger error sets with progressively larger fc
    auto codes = all_codes();
    std::vector<double> fcs, errors;
    for (int i = 1; i <= 12; ++i) {
        GeneratorParams params;
        params.vendor = i % 2 ? Vendor::Pix : Vendor::CheckpointLike;
        params.target_fc = 100 * i;
        params.seeded_errors.assign(codes.begin(), codes.begin() + i * 2);
        params.seed = std::uint64_t(i);
        auto generated = generate_synthetic(params);
        auto report = audit_generated(generated, params.vendor);
        REQUIRE(report.indicators == generated.labels);
        fcs.push_back(double(report.fc));
        errors.push_back(double(report.error_count()));
    }
    CHECK(spearman_correlation(fcs, errors) > 0.9);
}

TEST_SUITE_END();
