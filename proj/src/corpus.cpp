#include "fwaudit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fwaudit/pix.hpp"

namespace fwaudit {

CorpusRecord make_record(const AuditReport& report)
{
    CorpusRecord rec;
    rec.id = report.config_id;
    rec.vendor = report.vendor;
    rec.version_category = report.version_category;
    rec.fc = report.fc;
    rec.error_count = report.error_count();
    rec.indicators = report.indicators;
    return rec;
}

ScanResult scan_corpus(const std::vector<ScanInput>& inputs, const ServiceRegistry& registry,
                       const AuditOptions& options, const std::string* zone_sidecar)
{
    ScanResult result;
    for (const auto& input : inputs) {
        try {
            FirewallConfig config;
            bool is_fwn = input.text.find("meta vendor checkpoint") != std::string::npos;
            if (is_fwn) {
                config = parse_fwn(input.text, registry);
            } else {
                config = parse_pix(input.text, PixMode::Lenient, registry).config;
            }
            config.id = input.id;
            config = infer_zones(std::move(config), zone_sidecar);
            AuditReport report = audit_config(config, registry, options);
            result.records.push_back(make_record(report));
        } catch (const std::exception& e) {
            result.failures.emplace_back(input.id, e.what());
        }
    }
    // aggregation must not depend on completion order
    std::sort(result.records.begin(), result.records.end(),
              [](const CorpusRecord& a, const CorpusRecord& b) { return a.id < b.id; });
    std::sort(result.failures.begin(), result.failures.end());
    return result;
}

namespace {

double median_of(const std::vector<double>& sorted, std::size_t lo, std::size_t hi)
{
    std::size_t n = hi - lo;
    if (n % 2 == 1)
        return sorted[lo + n / 2];
    return (sorted[lo + n / 2 - 1] + sorted[lo + n / 2]) / 2.0;
}

} // namespace

FiveNumberSummary five_number_summary(std::vector<double> values)
{
    if (values.empty())
        throw std::invalid_argument("five_number_summary of empty sample");
    std::sort(values.begin(), values.end());
    FiveNumberSummary s;
    s.min = values.front();
    s.max = values.back();
    s.median = median_of(values, 0, values.size());
    // inclusive convention: odd-length samples put the median in both halves
    std::size_t half = (values.size() + 1) / 2;
    s.q1 = median_of(values, 0, half);
    s.q3 = median_of(values, values.size() - half, values.size());
    return s;
}

CorpusStats corpus_stats(const std::vector<CorpusRecord>& records)
{
    if (records.empty())
        throw std::invalid_argument("corpus_stats of empty corpus");
    CorpusStats stats;
    stats.n = records.size();

    std::map<std::string, std::vector<double>> fc_values;
    std::map<std::string, std::vector<double>> err_values;
    std::map<std::string, std::vector<double>> version_errors;
    for (const auto& rec : records) {
        for (int c = 0; c < kErrorCodeCount; ++c)
            if (rec.indicators[c])
                ++stats.code_true_counts[c];
        std::string vendor(vendor_name(rec.vendor));
        fc_values[vendor].push_back(double(rec.fc));
        err_values[vendor].push_back(double(rec.error_count));
        version_errors[vendor + "/" + rec.version_category].push_back(
            double(rec.error_count));
    }
    for (int c = 0; c < kErrorCodeCount; ++c)
        stats.code_frequency_pct[c] = 100.0 * double(stats.code_true_counts[c]) / double(stats.n);
    for (auto& [vendor, values] : fc_values)
        stats.fc_by_vendor.emplace(vendor, five_number_summary(values));
    for (auto& [vendor, values] : err_values)
        stats.median_errors_by_vendor.emplace(vendor, five_number_summary(values).median);
    for (auto& [key, values] : version_errors)
        stats.errors_by_version.emplace(key, five_number_summary(values));
    return stats;
}

RegressionFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("fit_line: size mismatch");
    std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("fit_line needs at least 2 points");

    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0)
        throw std::invalid_argument("fit_line: x values are all equal");

    RegressionFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ssr += r * r;
    }
    fit.residual_std = n > 2 ? std::sqrt(ssr / double(n - 2)) : 0.0;
    fit.correlation = syy == 0 ? 0.0 : sxy / std::sqrt(sxx * syy);
    return fit;
}

namespace {

void regression_points(const std::vector<CorpusRecord>& records, std::vector<double>& x,
                       std::vector<double>& y)
{
    for (const auto& rec : records) {
        if (rec.fc < 1)
            continue; // log10 undefined below 1
        x.push_back(std::log10(double(rec.fc)));
        y.push_back(double(rec.error_count));
    }
}

} // namespace

RegressionFit fit_regression(const std::vector<CorpusRecord>& records)
{
    std::vector<double> x, y;
    regression_points(records, x, y);
    return fit_line(x, y);
}

VendorRegression fit_regression_by_vendor(const std::vector<CorpusRecord>& records)
{
    VendorRegression out;
    std::vector<CorpusRecord> cp, pix;
    for (const auto& rec : records)
        (rec.vendor == Vendor::CheckpointLike ? cp : pix).push_back(rec);

    auto try_fit = [](const std::vector<CorpusRecord>& recs) -> std::optional<RegressionFit> {
        try {
            return fit_regression(recs);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };
    out.overall = try_fit(records);
    out.checkpoint = try_fit(cp);
    out.pix = try_fit(pix);

    if (out.checkpoint && out.pix) {
        std::vector<double> x, y;
        regression_points(records, x, y);
        std::sort(x.begin(), x.end());
        if (!x.empty()) {
            double m = median_of(x, 0, x.size());
            out.gap_at_log10_fc = m;
            out.vendor_gap = out.checkpoint->at(m) - out.pix->at(m);
        }
    }
    return out;
}

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman_correlation needs matched samples of size >= 2");

    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(v.size());
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]])
                ++j;
            double avg = (double(i) + double(j)) / 2.0 + 1.0; // average rank for ties
            for (std::size_t k = i; k <= j; ++k)
                rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };

    auto rx = ranks(x);
    auto ry = ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / double(rx.size());
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / double(ry.size());
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
        sxy += (rx[i] - mx) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0)
        return 0.0; // constant sample: correlation undefined, report none
    return sxy / std::sqrt(sxx * syy);
}

} // namespace fwaudit
