#include "fwaudit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fwaudit/complexity.hpp"
#include "fwaudit/corpus.hpp"
#include "fwaudit/pix.hpp"
#include "fwaudit/report_io.hpp"

namespace fs = std::filesystem;

namespace fwaudit {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitGate = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw AnalysisError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool sniff_fwn(const std::string& text)
{
    return text.find("meta vendor checkpoint") != std::string::npos;
}

struct CommonOptions {
    std::string registry_path;
    std::string zones_path;
    std::string format = "text";
    std::uint64_t address_threshold = 256;
    std::uint64_t port_threshold = 2000;
    bool strict = false;
};

ServiceRegistry load_registry(const CommonOptions& opts)
{
    ServiceRegistry registry = ServiceRegistry::defaults();
    std::string path = opts.registry_path;
    if (path.empty()) {
        if (const char* env = std::getenv("FWAUDIT_REGISTRY"))
            path = env;
    }
    if (!path.empty())
        registry.apply_overrides(read_file(path));
    return registry;
}

FirewallConfig load_config(const std::string& path, const CommonOptions& opts,
                           const ServiceRegistry& registry, std::ostream& err)
{
    std::string text = read_file(path);
    FirewallConfig config;
    if (sniff_fwn(text)) {
        config = parse_fwn(text, registry);
    } else {
        auto result = parse_pix(text, opts.strict ? PixMode::Strict : PixMode::Lenient, registry);
        for (const auto& d : result.diagnostics)
            err << path << ":" << d.loc.line << ": note: " << d.message << "\n";
        config = std::move(result.config);
    }
    config.id = fs::path(path).filename().string();

    std::optional<std::string> sidecar;
    if (!opts.zones_path.empty())
        sidecar = read_file(opts.zones_path);
    return infer_zones(std::move(config), sidecar ? &*sidecar : nullptr);
}

int cmd_audit(const std::string& path, const CommonOptions& opts, std::optional<int> fail_on,
              std::ostream& out, std::ostream& err)
{
    ServiceRegistry registry = load_registry(opts);
    FirewallConfig config = load_config(path, opts, registry, err);
    AuditOptions audit_opts;
    audit_opts.address_threshold = opts.address_threshold;
    audit_opts.port_threshold = opts.port_threshold;
    AuditReport report = audit_config(config, registry, audit_opts);

    if (opts.format == "json")
        out << report_to_json(report);
    else
        write_report_text(out, report);

    if (fail_on && report.error_count() >= *fail_on)
        return kExitGate;
    return kExitOk;
}

int cmd_fc(const std::string& path, const CommonOptions& opts, std::ostream& out,
           std::ostream& err)
{
    ServiceRegistry registry = load_registry(opts);
    std::string text = read_file(path);
    FirewallConfig config;
    if (sniff_fwn(text)) {
        config = parse_fwn(text, registry);
    } else {
        auto result = parse_pix(text, opts.strict ? PixMode::Strict : PixMode::Lenient, registry);
        for (const auto& d : result.diagnostics)
            err << path << ":" << d.loc.line << ": note: " << d.message << "\n";
        config = std::move(result.config);
    }
    config.id = fs::path(path).filename().string();

    std::int64_t fc = firewall_complexity(config);
    std::optional<std::int64_t> rc;
    if (config.vendor == Vendor::CheckpointLike)
        rc = legacy_rc(config);
    auto prediction = predicted_errors(double(fc < 1 ? 1 : fc));

    if (opts.format == "json") {
        std::ostringstream j;
        j << "{\n  \"id\": \"" << config.id << "\",\n  \"vendor\": \""
          << vendor_name(config.vendor) << "\",\n  \"fc\": " << fc;
        if (rc)
            j << ",\n  \"rc\": " << *rc;
        j << ",\n  \"predicted_errors\": {\"raw\": " << format_decimal(prediction.raw)
          << ", \"display\": " << format_decimal(prediction.display) << "}\n}\n";
        out << j.str();
    } else {
        out << "FC " << fc << "\n";
        if (rc)
            out << "RC " << *rc << "\n";
        out << "predicted_errors " << format_decimal(prediction.raw) << " (display "
            << format_decimal(prediction.display) << ")\n";
    }
    return kExitOk;
}

std::vector<std::string> collect_paths(const std::vector<std::string>& inputs)
{
    std::vector<std::string> paths;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file())
                    paths.push_back(entry.path().string());
        } else {
            paths.push_back(input);
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

int cmd_corpus(const std::vector<std::string>& inputs, const CommonOptions& opts,
               const std::string& out_dir, std::ostream& out, std::ostream& err)
{
    ServiceRegistry registry = load_registry(opts);
    AuditOptions audit_opts;
    audit_opts.address_threshold = opts.address_threshold;
    audit_opts.port_threshold = opts.port_threshold;

    std::optional<std::string> sidecar;
    if (!opts.zones_path.empty())
        sidecar = read_file(opts.zones_path);

    std::vector<ScanInput> scan_inputs;
    for (const auto& path : collect_paths(inputs)) {
        ScanInput si;
        si.id = fs::path(path).filename().string();
        try {
            si.text = read_file(path);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        scan_inputs.push_back(std::move(si));
    }

    ScanResult scan = scan_corpus(scan_inputs, registry, audit_opts,
                                  sidecar ? &*sidecar : nullptr);
    for (const auto& [file, reason] : scan.failures)
        err << file << ": " << reason << "\n";
    if (scan.records.empty()) {
        err << "error: no analyzable configurations\n";
        return kExitInput;
    }

    CorpusStats stats = corpus_stats(scan.records);
    VendorRegression reg = fit_regression_by_vendor(scan.records);

    if (opts.format == "csv") {
        out << records_csv(scan.records);
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        auto write = [&](const char* name, const std::string& content) {
            std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
            f << content;
        };
        write("records.csv", records_csv(scan.records));
        write("frequencies.csv", frequencies_csv(stats));
        write("regression.csv", regression_csv(reg));
        write("plot.csv", plot_csv(scan.records, reg));
        write("fc_summary.csv", fc_summary_csv(stats));
        write("errors_by_version.csv", errors_by_version_csv(stats));
    }
    if (opts.format == "csv")
        return kExitOk;
    if (opts.format == "json") {
        out << corpus_summary_json(scan, stats, reg);
        return kExitOk;
    }

    out << "records " << stats.n << "  failures " << scan.failures.size() << "\n";
    for (const auto& [vendor, median] : stats.median_errors_by_vendor)
        out << "median_errors " << vendor << " " << format_decimal(median) << "\n";
    auto fit_line_out = [&](const char* scope, const std::optional<RegressionFit>& fit) {
        if (!fit)
            return;
        out << "fit " << scope << " n " << fit->n << " slope " << format_decimal(fit->slope)
            << " intercept " << format_decimal(fit->intercept) << " residual_std "
            << format_decimal(fit->residual_std) << " r " << format_decimal(fit->correlation)
            << "\n";
    };
    fit_line_out("overall", reg.overall);
    fit_line_out("checkpoint", reg.checkpoint);
    fit_line_out("pix", reg.pix);
    if (reg.vendor_gap)
        out << "vendor_gap " << format_decimal(*reg.vendor_gap) << " at_log10_fc "
            << format_decimal(*reg.gap_at_log10_fc) << "\n";
    return kExitOk;
}

int cmd_generate(const GeneratorParams& params, const std::string& out_dir, std::ostream& out,
                 std::ostream& err)
{
    GeneratedConfig generated = generate_synthetic(params);
    if (out_dir.empty()) {
        out << generated.document;
        return kExitOk;
    }
    fs::create_directories(out_dir);
    std::string stem = std::string(vendor_name(params.vendor)) + "-" +
                       std::to_string(params.seed);
    std::string config_name = stem + (params.vendor == Vendor::Pix ? ".pix" : ".fwn");
    {
        std::ofstream f(fs::path(out_dir) / config_name, std::ios::binary);
        if (!f) {
            err << "error: cannot write to '" << out_dir << "'\n";
            return kExitInput;
        }
        f << generated.document;
    }
    {
        std::ofstream f(fs::path(out_dir) / (stem + ".labels"), std::ios::binary);
        const auto& catalogue = error_catalogue();
        for (int c = 0; c < kErrorCodeCount; ++c)
            if (generated.labels[std::size_t(c)])
                f << catalogue[std::size_t(c)].code << "\n";
    }
    out << "wrote " << config_name << "\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"firewall rule-set auditor"};
    app.require_subcommand(1);

    CommonOptions common;
    std::optional<int> fail_on;
    std::string out_dir;
    std::string input_path;
    std::vector<std::string> corpus_inputs;

    auto add_common = [&common](CLI::App* cmd, bool thresholds = true, bool csv = false) {
        cmd->add_option("--registry", common.registry_path,
                        "service registry override document");
        cmd->add_option("--zones", common.zones_path, "zone sidecar document");
        cmd->add_option("--format", common.format, "output format")
            ->check(csv ? CLI::IsMember({"text", "json", "csv"})
                        : CLI::IsMember({"text", "json"}));
        cmd->add_flag("--strict", common.strict, "strict PIX parsing");
        if (thresholds) {
            cmd->add_option("--address-threshold", common.address_threshold,
                            "address reach bound (strictly over triggers)");
            cmd->add_option("--port-threshold", common.port_threshold,
                            "TCP port reach bound (strictly over triggers)");
        }
    };

    CLI::App* audit_cmd = app.add_subcommand("audit", "audit one configuration");
    audit_cmd->add_option("file", input_path, "configuration file")->required();
    add_common(audit_cmd);
    int fail_bound = 0;
    CLI::Option* fail_opt =
        audit_cmd->add_option("--fail-on-errors", fail_bound,
                              "exit 3 when the error count reaches this bound");

    CLI::App* fc_cmd = app.add_subcommand("fc", "complexity measures for one configuration");
    fc_cmd->add_option("file", input_path, "configuration file")->required();
    add_common(fc_cmd, false);

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "aggregate statistics over many files");
    corpus_cmd->add_option("inputs", corpus_inputs, "files or directories")->required();
    corpus_cmd->add_option("--out-dir", out_dir, "directory for CSV outputs");
    add_common(corpus_cmd, true, true);

    CLI::App* gen_cmd = app.add_subcommand("generate", "emit a synthetic rule-set with labels");
    GeneratorParams gen_params;
    std::string gen_vendor = "pix";
    std::string gen_errors;
    gen_cmd->add_option("--vendor", gen_vendor, "checkpoint or pix")
        ->check(CLI::IsMember({"checkpoint", "pix"}));
    gen_cmd->add_option("--target-fc", gen_params.target_fc, "complexity to aim for");
    gen_cmd->add_option("--errors", gen_errors, "comma-separated error codes to seed");
    gen_cmd->add_option("--seed", gen_params.seed, "generator seed");
    gen_cmd->add_option("--internal-zones", gen_params.internal_zones, "1 or 2");
    gen_cmd->add_option("--out-dir", out_dir, "directory for the config and label files");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend()); // CLI11 convention
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (audit_cmd->parsed()) {
            if (*fail_opt)
                fail_on = fail_bound;
            return cmd_audit(input_path, common, fail_on, out, err);
        }
        if (fc_cmd->parsed())
            return cmd_fc(input_path, common, out, err);
        if (corpus_cmd->parsed())
            return cmd_corpus(corpus_inputs, common, out_dir, out, err);
        if (gen_cmd->parsed()) {
            gen_params.vendor = gen_vendor == "pix" ? Vendor::Pix : Vendor::CheckpointLike;
            if (!gen_errors.empty()) {
                std::istringstream ss(gen_errors);
                std::string code;
                while (std::getline(ss, code, ','))
                    if (!code.empty())
                        gen_params.seeded_errors.push_back(code);
            }
            return cmd_generate(gen_params, out_dir, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}

} // namespace fwaudit
