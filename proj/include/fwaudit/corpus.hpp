#ifndef FWAUDIT_CORPUS_HPP
#define FWAUDIT_CORPUS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwaudit/audit.hpp"

namespace fwaudit {

struct CorpusRecord {
    std::string id;
    Vendor vendor = Vendor::CheckpointLike;
    std::string version_category;
    std::int64_t fc = 0;
    int error_count = 0;
    std::array<bool, kErrorCodeCount> indicators{};

    bool operator==(const CorpusRecord&) const = default;
};

CorpusRecord make_record(const AuditReport& report);

struct ScanResult {
    std::vector<CorpusRecord> records;           // sorted by id
    std::vector<std::pair<std::string, std::string>> failures; // (file, reason)
};

struct ScanInput {
    std::string id;
    std::string text; // sniffed: FWN if a `meta vendor checkpoint` line exists, else PIX
};

ScanResult scan_corpus(const std::vector<ScanInput>& inputs, const ServiceRegistry& registry,
                       const AuditOptions& options = {}, const std::string* zone_sidecar = nullptr);

// min/q1/median/q3/max with the inclusive-median quartile convention: for
// odd n the median element belongs to both halves.
struct FiveNumberSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;

    bool operator==(const FiveNumberSummary&) const = default;
};

FiveNumberSummary five_number_summary(std::vector<double> values); // throws on empty

struct CorpusStats {
    std::size_t n = 0;
    std::array<std::uint64_t, kErrorCodeCount> code_true_counts{};
    std::array<double, kErrorCodeCount> code_frequency_pct{};
    std::map<std::string, FiveNumberSummary> fc_by_vendor;
    std::map<std::string, double> median_errors_by_vendor;
    // keyed "<vendor>/<version_category>"
    std::map<std::string, FiveNumberSummary> errors_by_version;
};

CorpusStats corpus_stats(const std::vector<CorpusRecord>& records); // throws on empty

struct RegressionFit {
    double slope = 0;
    double intercept = 0;
    double residual_std = 0; // sqrt(SSR / (n - 2)); 0 when n <= 2
    double correlation = 0;  // Pearson r of x and y
    std::size_t n = 0;

    double at(double x) const { return slope * x + intercept; }
};

// Ordinary least squares of y on x. Requires n >= 2 and distinct x values.
RegressionFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// error_count regressed on log10(fc); records with fc < 1 are skipped.
RegressionFit fit_regression(const std::vector<CorpusRecord>& records);

struct VendorRegression {
    std::optional<RegressionFit> overall;
    std::optional<RegressionFit> checkpoint;
    std::optional<RegressionFit> pix;
    // checkpoint minus pix predicted errors at the pooled median log10(fc)
    std::optional<double> vendor_gap;
    std::optional<double> gap_at_log10_fc;
};

VendorRegression fit_regression_by_vendor(const std::vector<CorpusRecord>& records);

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);

// --- synthetic rule-set generation ------------------------------------

struct GeneratorParams {
    Vendor vendor = Vendor::Pix;
    std::int64_t target_fc = 500;
    std::vector<std::string> seeded_errors; // codes, e.g. {"i04", "o02"}
    std::uint64_t seed = 1;
    int internal_zones = 2; // d-codes require at least 2
};

struct GeneratedConfig {
    std::string document;                          // FWN or PIX text
    std::array<bool, kErrorCodeCount> labels{};    // ground truth
};

// Deterministic for a fixed seed (byte-identical documents). The emitted
// document parses with the matching parser and audits to exactly `labels`
// under the default registry and thresholds; achieved FC is within 10% of
// target_fc. Throws AnalysisError for unrealizable requests.
GeneratedConfig generate_synthetic(const GeneratorParams& params);

} // namespace fwaudit

#endif
