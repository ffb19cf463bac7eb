#ifndef FWAUDIT_REPORT_IO_HPP
#define FWAUDIT_REPORT_IO_HPP

#include <iosfwd>
#include <string>

#include "fwaudit/audit.hpp"
#include "fwaudit/corpus.hpp"

namespace fwaudit {

// JSON report schema:
//   {config: {id, vendor, version_category, counts}, fc,
//    errors: [{code, category, evidence: {rules: [...], count?, threshold?}}],
//    error_count}
// Key order and number formatting are stable; parse(emit(r)) == r.
std::string report_to_json(const AuditReport& report);
AuditReport report_from_json(const std::string& json_text);

void write_report_text(std::ostream& out, const AuditReport& report);

// Fixed-width decimal used for every floating value we print (4 places).
std::string format_decimal(double value);

std::string corpus_summary_json(const ScanResult& scan, const CorpusStats& stats,
                                const VendorRegression& reg);

// Corpus CSV emitters; byte-deterministic for fixed inputs.
std::string records_csv(const std::vector<CorpusRecord>& records);
std::string frequencies_csv(const CorpusStats& stats);
std::string regression_csv(const VendorRegression& reg);
std::string plot_csv(const std::vector<CorpusRecord>& records, const VendorRegression& reg);
std::string fc_summary_csv(const CorpusStats& stats);
std::string errors_by_version_csv(const CorpusStats& stats);

} // namespace fwaudit

#endif
