#include "fwaudit/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fwaudit {

using ordered_json = nlohmann::ordered_json;

std::string format_decimal(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    // avoid "-0.0000"
    if (std::string_view(buf) == "-0.0000")
        return "0.0000";
    return buf;
}

std::string report_to_json(const AuditReport& report)
{
    ordered_json j;
    ordered_json config;
    config["id"] = report.config_id;
    config["vendor"] = std::string(vendor_name(report.vendor));
    config["version_category"] = report.version_category;
    ordered_json counts;
    counts["rules"] = report.rules;
    counts["objects"] = report.objects;
    counts["interfaces"] = report.interfaces;
    if (report.vendor == Vendor::Pix)
        counts["lines"] = report.lines;
    config["counts"] = counts;
    j["config"] = config;
    j["fc"] = report.fc;

    ordered_json errors = ordered_json::array();
    const auto& catalogue = error_catalogue();
    for (int c = 0; c < kErrorCodeCount; ++c) {
        if (!report.indicators[std::size_t(c)])
            continue;
        ordered_json e;
        e["code"] = std::string(catalogue[std::size_t(c)].code);
        e["category"] = std::string(error_category_name(catalogue[std::size_t(c)].category));
        ordered_json ev;
        ordered_json rules = ordered_json::array();
        for (const auto& r : report.evidence[std::size_t(c)].rules) {
            ordered_json rule;
            rule["index"] = r.index;
            rule["line"] = r.line;
            rules.push_back(rule);
        }
        ev["rules"] = rules;
        if (report.evidence[std::size_t(c)].count)
            ev["count"] = *report.evidence[std::size_t(c)].count;
        if (report.evidence[std::size_t(c)].threshold)
            ev["threshold"] = *report.evidence[std::size_t(c)].threshold;
        e["evidence"] = ev;
        errors.push_back(e);
    }
    j["errors"] = errors;
    j["error_count"] = report.error_count();
    return j.dump(2) + "\n";
}

AuditReport report_from_json(const std::string& json_text)
{
    ordered_json j = ordered_json::parse(json_text);
    AuditReport report;
    const auto& config = j.at("config");
    report.config_id = config.at("id").get<std::string>();
    report.vendor =
        config.at("vendor").get<std::string>() == "pix" ? Vendor::Pix : Vendor::CheckpointLike;
    report.version_category = config.at("version_category").get<std::string>();
    const auto& counts = config.at("counts");
    report.rules = counts.at("rules").get<std::size_t>();
    report.objects = counts.at("objects").get<std::size_t>();
    report.interfaces = counts.at("interfaces").get<std::size_t>();
    if (counts.contains("lines"))
        report.lines = counts.at("lines").get<std::size_t>();
    report.fc = j.at("fc").get<std::int64_t>();

    for (const auto& e : j.at("errors")) {
        int c = error_code_index(e.at("code").get<std::string>());
        if (c < 0)
            throw std::invalid_argument("unknown error code in report JSON");
        report.indicators[std::size_t(c)] = true;
        auto& evidence = report.evidence[std::size_t(c)];
        for (const auto& r : e.at("evidence").at("rules")) {
            EvidenceRule rule;
            rule.index = r.at("index").get<std::size_t>();
            rule.line = r.at("line").get<std::size_t>();
            evidence.rules.push_back(rule);
        }
        if (e.at("evidence").contains("count"))
            evidence.count = e.at("evidence").at("count").get<std::uint64_t>();
        if (e.at("evidence").contains("threshold"))
            evidence.threshold = e.at("evidence").at("threshold").get<std::uint64_t>();
    }
    return report;
}

void write_report_text(std::ostream& out, const AuditReport& report)
{
    out << "config: " << report.config_id << "\n";
    out << "vendor: " << vendor_name(report.vendor)
        << "  version: " << report.version_category << "\n";
    out << "counts: rules=" << report.rules << " objects=" << report.objects
        << " interfaces=" << report.interfaces;
    if (report.vendor == Vendor::Pix)
        out << " lines=" << report.lines;
    out << "\n";
    out << "fc: " << report.fc << "\n";
    out << "errors: " << report.error_count() << "\n";
    const auto& catalogue = error_catalogue();
    for (int c = 0; c < kErrorCodeCount; ++c) {
        if (!report.indicators[std::size_t(c)])
            continue;
        const auto& info = catalogue[std::size_t(c)];
        const auto& ev = report.evidence[std::size_t(c)];
        out << "  " << info.code << "  " << error_category_name(info.category) << "  "
            << info.summary;
        if (ev.count)
            out << " (count " << *ev.count << " > " << *ev.threshold << ")";
        out << "  rules";
        for (std::size_t i = 0; i < ev.rules.size(); ++i)
            out << (i ? "," : " ") << ev.rules[i].index;
        out << "\n";
    }
}

std::string corpus_summary_json(const ScanResult& scan, const CorpusStats& stats,
                                const VendorRegression& reg)
{
    ordered_json j;
    j["records"] = stats.n;
    j["failures"] = scan.failures.size();
    ordered_json medians;
    for (const auto& [vendor, median] : stats.median_errors_by_vendor)
        medians[vendor] = median;
    j["median_errors"] = medians;
    auto fit_json = [](const RegressionFit& fit) {
        ordered_json f;
        f["n"] = fit.n;
        f["slope"] = fit.slope;
        f["intercept"] = fit.intercept;
        f["residual_std"] = fit.residual_std;
        f["correlation"] = fit.correlation;
        return f;
    };
    ordered_json fits;
    if (reg.overall)
        fits["overall"] = fit_json(*reg.overall);
    if (reg.checkpoint)
        fits["checkpoint"] = fit_json(*reg.checkpoint);
    if (reg.pix)
        fits["pix"] = fit_json(*reg.pix);
    j["fits"] = fits;
    if (reg.vendor_gap) {
        j["vendor_gap"] = *reg.vendor_gap;
        j["gap_at_log10_fc"] = *reg.gap_at_log10_fc;
    }
    return j.dump(2) + "\n";
}

std::string records_csv(const std::vector<CorpusRecord>& records)
{
    std::ostringstream out;
    out << "id,vendor,version_category,fc,error_count";
    for (const auto& info : error_catalogue())
        out << "," << info.code;
    out << "\n";
    for (const auto& rec : records) {
        out << rec.id << "," << vendor_name(rec.vendor) << "," << rec.version_category << ","
            << rec.fc << "," << rec.error_count;
        for (bool b : rec.indicators)
            out << "," << (b ? 1 : 0);
        out << "\n";
    }
    return out.str();
}

std::string frequencies_csv(const CorpusStats& stats)
{
    std::ostringstream out;
    out << "code,category,true_count,frequency_pct\n";
    const auto& catalogue = error_catalogue();
    for (int c = 0; c < kErrorCodeCount; ++c) {
        out << catalogue[std::size_t(c)].code << ","
            << error_category_name(catalogue[std::size_t(c)].category) << ","
            << stats.code_true_counts[std::size_t(c)] << ","
            << format_decimal(stats.code_frequency_pct[std::size_t(c)]) << "\n";
    }
    return out.str();
}

namespace {

void fit_row(std::ostringstream& out, const char* scope, const std::optional<RegressionFit>& fit)
{
    if (!fit)
        return;
    out << scope << "," << fit->n << "," << format_decimal(fit->slope) << ","
        << format_decimal(fit->intercept) << "," << format_decimal(fit->residual_std) << ","
        << format_decimal(fit->correlation) << ",,\n";
}

} // namespace

std::string regression_csv(const VendorRegression& reg)
{
    std::ostringstream out;
    out << "scope,n,slope,intercept,residual_std,correlation,gap_at_log10_fc,vendor_gap\n";
    fit_row(out, "overall", reg.overall);
    fit_row(out, "checkpoint", reg.checkpoint);
    fit_row(out, "pix", reg.pix);
    if (reg.vendor_gap)
        out << "gap,,,,,," << format_decimal(*reg.gap_at_log10_fc) << ","
            << format_decimal(*reg.vendor_gap) << "\n";
    return out.str();
}

std::string plot_csv(const std::vector<CorpusRecord>& records, const VendorRegression& reg)
{
    std::ostringstream out;
    out << "id,vendor,log10_fc,error_count,fit,fit_minus_sigma,fit_plus_sigma\n";
    for (const auto& rec : records) {
        if (rec.fc < 1)
            continue;
        double x = std::log10(double(rec.fc));
        out << rec.id << "," << vendor_name(rec.vendor) << "," << format_decimal(x) << ","
            << rec.error_count;
        if (reg.overall) {
            double fit = reg.overall->at(x);
            out << "," << format_decimal(fit) << ","
                << format_decimal(fit - reg.overall->residual_std) << ","
                << format_decimal(fit + reg.overall->residual_std);
        } else {
            out << ",,,";
        }
        out << "\n";
    }
    return out.str();
}

namespace {

void summary_row(std::ostringstream& out, const std::string& key, const FiveNumberSummary& s)
{
    out << key << "," << format_decimal(s.min) << "," << format_decimal(s.q1) << ","
        << format_decimal(s.median) << "," << format_decimal(s.q3) << ","
        << format_decimal(s.max) << "\n";
}

} // namespace

std::string fc_summary_csv(const CorpusStats& stats)
{
    std::ostringstream out;
    out << "vendor,min,q1,median,q3,max\n";
    for (const auto& [vendor, summary] : stats.fc_by_vendor)
        summary_row(out, vendor, summary);
    return out.str();
}

std::string errors_by_version_csv(const CorpusStats& stats)
{
    std::ostringstream out;
    out << "vendor_version,min,q1,median,q3,max\n";
    for (const auto& [key, summary] : stats.errors_by_version)
        summary_row(out, key, summary);
    return out.str();
}

} // namespace fwaudit
