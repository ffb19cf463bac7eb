#include <doctest.h>

#include <cmath>
#include <random>

#include "fwaudit/corpus.hpp"
#include "fwaudit/report_io.hpp"

using namespace fwaudit;

TEST_SUITE_BEGIN("corpus");

namespace {

CorpusRecord record(const char* id, Vendor vendor, std::int64_t fc, int errors,
                    const char* category = "unknown")
{
    CorpusRecord r;
    r.id = id;
    r.vendor = vendor;
    r.version_category = category;
    r.fc = fc;
    r.error_count = errors;
    for (int c = 0; c < errors && c < kErrorCodeCount; ++c)
        r.indicators[std::size_t(c)] = true;
    return r;
}

} // namespace

TEST_CASE("five number summary uses the inclusive-median convention")
{
    auto s = five_number_summary({1, 2, 3, 4, 5});
    CHECK(s.min == 1);
    CHECK(s.q1 == 2);
    CHECK(s.median == 3);
    CHECK(s.q3 == 4);
    CHECK(s.max == 5);

    auto e = five_number_summary({1, 2, 3, 4});
    CHECK(e.q1 == 1.5);
    CHECK(e.median == 2.5);
    CHECK(e.q3 == 3.5);

    auto single = five_number_summary({7});
    CHECK(single.min == 7);
    CHECK(single.q1 == 7);
    CHECK(single.median == 7);
    CHECK(single.q3 == 7);
    CHECK(single.max == 7);

    CHECK_THROWS_AS(five_number_summary({}), std::invalid_argument);
}

TEST_CASE("line-count-derived FC values summarize as documented")
{
    auto s = five_number_summary({71 - 50, 365 - 50, 3259 - 50});
    CHECK(s.min == 21);
    CHECK(s.median == 315);
    CHECK(s.max == 3209);
}

TEST_CASE("frequencies are exact ratios")
{
    std::vector<CorpusRecord> records;
    CorpusRecord a = record("a", Vendor::Pix, 100, 0);
    a.indicators[std::size_t(error_code_index("i07"))] = true;
    a.error_count = 1;
    records.push_back(a);
    records.push_back(record("b", Vendor::Pix, 200, 0));
    records.push_back(record("c", Vendor::Pix, 300, 0));

    auto stats = corpus_stats(records);
    CHECK(stats.n == 3);
    auto i07 = std::size_t(error_code_index("i07"));
    CHECK(stats.code_true_counts[i07] == 1);
    CHECK(stats.code_frequency_pct[i07] == doctest::Approx(100.0 / 3.0));
    for (int c = 0; c < kErrorCodeCount; ++c) {
        double expect = 100.0 * double(stats.code_true_counts[std::size_t(c)]) / 3.0;
        CHECK(stats.code_frequency_pct[std::size_t(c)] == doctest::Approx(expect));
    }
    CHECK_THROWS_AS(corpus_stats({}), std::invalid_argument);
}

TEST_CASE("stats split by vendor and version category")
{
    std::vector<CorpusRecord> records;
    records.push_back(record("a", Vendor::CheckpointLike, 100, 3, "4.1"));
    records.push_back(record("b", Vendor::CheckpointLike, 400, 5, "4.1"));
    records.push_back(record("c", Vendor::CheckpointLike, 900, 9, "NG R55"));
    records.push_back(record("d", Vendor::Pix, 300, 2, "6.3-7.0"));

    auto stats = corpus_stats(records);
    CHECK(stats.fc_by_vendor.at("checkpoint").median == 400);
    CHECK(stats.fc_by_vendor.at("pix").median == 300);
    CHECK(stats.median_errors_by_vendor.at("checkpoint") == 5);
    CHECK(stats.median_errors_by_vendor.at("pix") == 2);
    CHECK(stats.errors_by_version.count("checkpoint/4.1") == 1);
    CHECK(stats.errors_by_version.count("checkpoint/NG R55") == 1);
    CHECK(stats.errors_by_version.count("pix/6.3-7.0") == 1);
    CHECK(stats.errors_by_version.at("checkpoint/4.1").median == 4);
}

TEST_CASE("points exactly on a known line recover its coefficients")
{
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
        double fc = 10 + i * 37;
        x.push_back(std::log10(fc));
        y.push_back(8.0 * std::log10(fc) - 10.0);
    }
    auto fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(fit.residual_std == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.correlation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two points define the interpolating line")
{
    auto fit = fit_line({1.0, 3.0}, {2.0, 8.0});
    CHECK(fit.slope == doctest::Approx(3.0));
    CHECK(fit.intercept == doctest::Approx(-1.0));
    CHECK(fit.residual_std == 0.0);
    CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_line({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("fit matches the closed-form solution on random data")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 3 + rng() % 40;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = double(rng() % 10000) / 100.0;
            y[i] = double(rng() % 10000) / 100.0;
        }
        x[0] += 0.001; // guard against a degenerate all-equal draw
        auto fit = fit_line(x, y);

        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        long double denom = (long double)(n)*sxx - sx * sx;
        long double slope = ((long double)(n)*sxy - sx * sy) / denom;
        long double intercept = (sy - slope * sx) / (long double)(n);
        CHECK(fit.slope == doctest::Approx(double(slope)).epsilon(1e-9));
        CHECK(fit.intercept == doctest::Approx(double(intercept)).epsilon(1e-9));
    }
}

TEST_CASE("noisy regression recovers the generating coefficients")
{
    // own Box-Muller keeps the draw deterministic across platforms
    std::mt19937_64 rng(99);
    auto gaussian = [&rng]() {
        double u1 = (double(rng() % 1000000) + 0.5) / 1000000.0;
        double u2 = (double(rng() % 1000000) + 0.5) / 1000000.0;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    };
    std::vector<double> x, y;
    for (int i = 0; i < 200; ++i) {
        double xi = 1.0 + 3.0 * double(i) / 200.0; // log10(fc) in [1, 4]
        x.push_back(xi);
        y.push_back(8.0 * xi - 10.0 + gaussian());
    }
    auto fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(8.0).epsilon(0.0625));        // within 8 +/- 0.5
    CHECK(std::fabs(fit.intercept - (-10.0)) < 1.5);
    CHECK(fit.residual_std == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("per-vendor fits and the vendor gap at the pooled median")
{
    std::vector<CorpusRecord> records;
    // checkpoint sits 5 errors above pix at every x: gap must be 5
    for (int i = 0; i < 20; ++i) {
        std::int64_t fc = 100 + i * 100;
        double y = 8.0 * std::log10(double(fc)) - 10.0;
        records.push_back(record(("c" + std::to_string(i)).c_str(), Vendor::CheckpointLike, fc,
                                 int(std::lround(y + 5))));
        records.push_back(
            record(("p" + std::to_string(i)).c_str(), Vendor::Pix, fc, int(std::lround(y))));
    }
    auto reg = fit_regression_by_vendor(records);
    REQUIRE(reg.checkpoint);
    REQUIRE(reg.pix);
    REQUIRE(reg.vendor_gap);
    CHECK(*reg.vendor_gap == doctest::Approx(5.0).epsilon(0.05));
    CHECK(reg.checkpoint->slope == doctest::Approx(reg.pix->slope).epsilon(0.05));
}

TEST_CASE("records below fc=1 are excluded from the regression")
{
    std::vector<CorpusRecord> records;
    records.push_back(record("bad", Vendor::CheckpointLike, 0, 1));
    records.push_back(record("a", Vendor::Pix, 10, 1));
    records.push_back(record("b", Vendor::Pix, 100, 2));
    auto fit = fit_regression(records);
    CHECK(fit.n == 2);
    CHECK_THROWS_AS(fit_regression({record("only", Vendor::Pix, 0, 1)}),
                    std::invalid_argument);
}

TEST_CASE("spearman correlation on monotone, anti-monotone and tied data")
{
    CHECK(spearman_correlation({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman_correlation({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
    CHECK(spearman_correlation({1, 2, 3, 4}, {5, 5, 5, 5}) == 0.0);
    // monotone in rank though nonlinear in value
    CHECK(spearman_correlation({1, 10, 100, 1000}, {1, 2, 3, 1000}) == doctest::Approx(1.0));
}

TEST_CASE("scan tolerates malformed files and keeps going")
{
    std::vector<ScanInput> inputs;
    inputs.push_back({"good.fwn", "meta vendor checkpoint\n"
                                  "interface e0 zone external net 203.0.113.0/30\n"
                                  "interface e1 zone internal:a net 10.1.0.0/16\n"
                                  "rule permit src any dst 10.1.1.1 svc tcp/23\n"});
    inputs.push_back({"broken.fwn", "meta vendor checkpoint\nrule permit\n"});
    auto result = scan_corpus(inputs, ServiceRegistry::defaults());
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].id == "good.fwn");
    CHECK(result.records[0].error_count == 1);
    REQUIRE(result.failures.size() == 1);
    CHECK(result.failures[0].first == "broken.fwn");

    auto empty = scan_corpus({}, ServiceRegistry::defaults());
    CHECK(empty.records.empty());
    CHECK(empty.failures.empty());
}

TEST_CASE("csv emitters are deterministic and carry the full schema")
{
    std::vector<CorpusRecord> records;
    records.push_back(record("a", Vendor::CheckpointLike, 100, 2, "4.1"));
    records.push_back(record("b", Vendor::Pix, 300, 4, "6.0-6.2"));
    auto stats = corpus_stats(records);
    auto reg = fit_regression_by_vendor(records);

    auto csv = records_csv(records);
    CHECK(csv.find("id,vendor,version_category,fc,error_count,i01,") == 0);
    CHECK(csv.find("a,checkpoint,4.1,100,2,1,1,0") != std::string::npos);
    CHECK(records_csv(records) == csv);

    auto freq = frequencies_csv(stats);
    CHECK(freq.find("i01,inbound,2,100.0000") != std::string::npos);
    CHECK(freq.find("r01,risky,0,0.0000") != std::string::npos);

    auto plot = plot_csv(records, reg);
    CHECK(plot.find("log10_fc") != std::string::npos);
    CHECK(fc_summary_csv(stats).find("checkpoint,") != std::string::npos);
    CHECK(errors_by_version_csv(stats).find("pix/6.0-6.2,") != std::string::npos);
}

TEST_SUITE_END();
