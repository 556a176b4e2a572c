#include "dunkel/app/pipeline.hpp"
#include "dunkel/reporting.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace dunkel;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRuntimeFailure = 2;

/// Column mapping flags shared by every subcommand that reads a series file.
struct MappingOptions {
    std::string timestamp = "timestamp";
    std::string value = "value";
    std::string technology = "technology";
    std::string region = "region";
    std::string default_technology;
    std::string default_region;
    long long step_minutes = 60;
    std::size_t max_gap_fill = 0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--timestamp-column", timestamp, "Timestamp column")->capture_default_str();
        cmd.add_option("--value-column", value, "Value column")->capture_default_str();
        cmd.add_option("--technology-column", technology, "Technology column (empty: none)")->capture_default_str();
        cmd.add_option("--region-column", region, "Region column (empty: none)")->capture_default_str();
        cmd.add_option("--default-technology", default_technology, "Technology when the file has no such column");
        cmd.add_option("--default-region", default_region, "Region when the file has no such column");
        cmd.add_option("--step-minutes", step_minutes, "Sampling step in minutes")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd.add_option("--max-gap-fill", max_gap_fill, "Longest run of missing steps to forward-fill")
            ->capture_default_str();
    }

    CsvMapping mapping(ValueKind kind) const {
        CsvMapping m;
        m.timestamp_column = timestamp;
        m.value_column = value;
        m.technology_column = technology;
        m.region_column = region;
        m.default_technology = default_technology;
        m.default_region = default_region;
        m.step = std::chrono::minutes(step_minutes);
        m.max_gap_fill = max_gap_fill;
        m.kind = kind;
        return m;
    }
};

void print_log(const std::vector<std::string>& log) {
    for (const auto& line : log) {
        std::cerr << "note: " << line << '\n';
    }
}

const TimeSeries& pick_series(const IngestResult& ingested, const std::string& id) {
    if (id.empty()) {
        if (ingested.series.size() != 1) {
            throw InputError(fmt::format("file holds {} series; select one with --series", ingested.series.size()));
        }
        return ingested.series.begin()->second;
    }
    const auto it = ingested.series.find(app::parse_series_key(id));
    if (it == ingested.series.end()) {
        throw LookupError(fmt::format("no series '{}' in input", id));
    }
    return it->second;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        write_file_atomic(out_path, content);
    }
}

std::string render_events(const std::vector<ShortageEvent>& events, const Calendar& cal, const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        write_events_json(out, events, cal);
    } else {
        write_events_csv(out, events, cal);
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Detect and characterise renewable energy droughts and positive residual load events"};
    cli.require_subcommand(1);
    cli.set_version_flag("--version", "dunkel 0.3.0");

    // ingest-check
    auto* ingest = cli.add_subcommand("ingest-check", "Validate a long-format CSV and summarise each series");
    std::string ingest_path;
    std::string ingest_kind = "availability";
    MappingOptions ingest_map;
    ingest->add_option("file", ingest_path, "Input CSV")->required();
    ingest->add_option("--kind", ingest_kind, "availability or power")
        ->check(CLI::IsMember({"availability", "power"}))
        ->capture_default_str();
    ingest_map.attach(*ingest);

    // droughts
    auto* droughts = cli.add_subcommand("droughts", "Detect energy droughts in one availability series");
    std::string dr_path, dr_series, dr_method = "cbt", dr_kind = "mean_fraction", dr_out, dr_format = "csv";
    std::string dr_basis = "moving_average";
    double dr_threshold = 0.5;
    std::size_t dr_intdur = 24, dr_window = 24, dr_step = 1;
    std::optional<std::size_t> dr_start;
    MappingOptions dr_map;
    droughts->add_option("file", dr_path, "Availability CSV")->required();
    droughts->add_option("--series", dr_series, "Series id technology/region");
    droughts->add_option("--method", dr_method, "window, cbt, fmbt, vmbt or spa")
        ->check(CLI::IsMember({"window", "cbt", "fmbt", "vmbt", "spa"}, CLI::ignore_case))
        ->capture_default_str();
    droughts->add_option("--threshold-kind", dr_kind, "absolute, mean_fraction, percentile or max_fraction")
        ->capture_default_str();
    droughts->add_option("--threshold", dr_threshold, "Threshold parameter")->capture_default_str();
    droughts->add_option("--intdur", dr_intdur, "FMBT averaging interval in steps")->capture_default_str();
    droughts->add_option("--deficit-basis", dr_basis, "FMBT deficit basis")
        ->check(CLI::IsMember({"moving_average", "original"}))
        ->capture_default_str();
    droughts->add_option("--window-len", dr_window, "WINDOW length in steps")->capture_default_str();
    droughts->add_option("--intdur-start", dr_start, "VMBT longest interval (default: series length)");
    droughts->add_option("--step", dr_step, "VMBT interval decrement")->capture_default_str();
    droughts->add_option("--out", dr_out, "Output file (default: stdout)");
    droughts->add_option("--format", dr_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    dr_map.attach(*droughts);

    // prl
    auto* prl = cli.add_subcommand("prl", "Detect positive residual load events");
    std::string prl_path, prl_series, prl_method = "caz", prl_out, prl_format = "csv";
    std::size_t prl_intdur = 24, prl_step = 1;
    std::optional<std::size_t> prl_start;
    double prl_eff = 1.0;
    bool prl_literal = false;
    MappingOptions prl_map;
    prl->add_option("file", prl_path, "Residual load CSV")->required();
    prl->add_option("--series", prl_series, "Series id technology/region");
    prl->add_option("--method", prl_method, "caz, fmaz, vmaz or spa")
        ->check(CLI::IsMember({"caz", "fmaz", "vmaz", "spa"}, CLI::ignore_case))
        ->capture_default_str();
    prl->add_option("--intdur", prl_intdur, "FMAZ averaging interval in steps")->capture_default_str();
    prl->add_option("--intdur-start", prl_start, "VMAZ longest interval (default: series length)");
    prl->add_option("--step", prl_step, "VMAZ interval decrement")->capture_default_str();
    prl->add_option("--eff", prl_eff, "Storage round-trip efficiency for spa")->capture_default_str();
    prl->add_flag("--literal-division", prl_literal, "Divide surplus by eff instead of multiplying");
    prl->add_option("--out", prl_out, "Output file (default: stdout)");
    prl->add_option("--format", prl_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    prl_map.attach(*prl);

    // portfolio
    auto* portfolio = cli.add_subcommand("portfolio", "Compose a weighted availability portfolio");
    std::string pf_path, pf_name = "portfolio", pf_out;
    std::vector<std::string> pf_weights;
    MappingOptions pf_map;
    portfolio->add_option("file", pf_path, "Availability CSV")->required();
    portfolio->add_option("--weight", pf_weights, "technology/region=weight, repeatable")->required();
    portfolio->add_option("--name", pf_name, "Portfolio name")->capture_default_str();
    portfolio->add_option("--out", pf_out, "Output long CSV (default: stdout)");
    pf_map.attach(*portfolio);

    // report
    auto* report = cli.add_subcommand("report", "Frequency-duration distribution and yearly extremes of an event file");
    std::string rp_events, rp_series_path, rp_series, rp_kind = "availability", rp_out_dir;
    MappingOptions rp_map;
    report->add_option("events", rp_events, "Event CSV written by droughts, prl or run")->required();
    report->add_option("--series-file", rp_series_path, "Series CSV the events were detected on")->required();
    report->add_option("--series", rp_series, "Series id technology/region");
    report->add_option("--kind", rp_kind, "availability or power")->check(CLI::IsMember({"availability", "power"}));
    report->add_option("--out-dir", rp_out_dir, "Directory for fdd.csv and yearly.csv (default: stdout)");
    rp_map.attach(*report);

    // run
    auto* run = cli.add_subcommand("run", "Run every combination described by a config file");
    std::string run_config_path;
    std::optional<std::size_t> run_parallelism;
    std::optional<std::string> run_output_dir;
    run->add_option("--config", run_config_path, "JSON config")->required();
    run->add_option("--parallelism", run_parallelism, "Worker count (overrides the config)")
        ->check(CLI::PositiveNumber);
    run->add_option("--output-dir", run_output_dir, "Output directory (overrides the config)");

    // wide-to-long
    auto* wide = cli.add_subcommand("wide-to-long", "Convert a wide CSV to the long format");
    std::string wide_in, wide_out;
    char wide_sep = '/';
    wide->add_option("input", wide_in, "Wide CSV")->required();
    wide->add_option("output", wide_out, "Long CSV (default: stdout)");
    wide->add_option("--separator", wide_sep, "Technology/region separator in column names")->capture_default_str();

    CLI11_PARSE(cli, argc, argv);

    try {
        if (*ingest) {
            const auto kind = ingest_kind == "power" ? ValueKind::power : ValueKind::availability;
            const IngestResult result = ingest_csv(fs::path(ingest_path), ingest_map.mapping(kind));
            print_log(result.log);
            for (const auto& [key, s] : result.series) {
                const SeriesStats stats = summary_stats(s);
                fmt::print("{}: {} samples from {} to {}, mean {:.6g}, min {:.6g}, max {:.6g}\n", key.id(), s.size(),
                           format_iso8601(s.start()), format_iso8601(s.time_at(s.size() - 1)), stats.mean,
                           stats.min, stats.max);
            }
        } else if (*droughts) {
            const IngestResult result = ingest_csv(fs::path(dr_path), dr_map.mapping(ValueKind::availability));
            print_log(result.log);
            const TimeSeries& s = pick_series(result, dr_series);
            const AvailabilitySeries avail(s);
            const ResolvedThreshold thres =
                resolve_threshold(ThresholdSpec::from_tagged(dr_kind, dr_threshold), avail);
            std::vector<ShortageEvent> events;
            switch (parse_method(dr_method)) {
            case Method::window:
                events = detect_windows(avail, thres, dr_window);
                break;
            case Method::fmbt:
                events = detect_fmbt(avail, thres, dr_intdur,
                                     dr_basis == "original" ? DeficitBasis::original : DeficitBasis::moving_average);
                break;
            case Method::vmbt:
                events = detect_vmbt(avail, thres, {dr_start, dr_step});
                break;
            case Method::spa:
                events = detect_spa_drought(avail, thres);
                break;
            default:
                events = detect_cbt(avail, thres);
                break;
            }
            emit(render_events(events, s.calendar(), dr_format), dr_out);
        } else if (*prl) {
            const IngestResult result = ingest_csv(fs::path(prl_path), prl_map.mapping(ValueKind::power));
            print_log(result.log);
            const ResidualLoadSeries rl(pick_series(result, prl_series));
            std::vector<ShortageEvent> events;
            std::string method = prl_method;
            std::transform(method.begin(), method.end(), method.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (method == "fmaz") {
                events = detect_fmaz(rl, prl_intdur);
            } else if (method == "vmaz") {
                events = detect_vmaz(rl, {prl_start, prl_step});
            } else if (method == "spa") {
                events = detect_spa_prl(rl, StorageEfficiency(prl_eff),
                                        prl_literal ? SurplusAdjustment::literal_division
                                                    : SurplusAdjustment::discount);
            } else {
                events = detect_caz(rl);
            }
            emit(render_events(events, rl.series().calendar(), prl_format), prl_out);
        } else if (*portfolio) {
            const IngestResult result = ingest_csv(fs::path(pf_path), pf_map.mapping(ValueKind::availability));
            print_log(result.log);
            PortfolioSpec spec;
            spec.name = pf_name;
            for (const auto& w : pf_weights) {
                const auto eq = w.rfind('=');
                if (eq == std::string::npos) {
                    throw InputError(fmt::format("--weight '{}' must look like technology/region=weight", w));
                }
                double weight = 0.0;
                try {
                    weight = std::stod(w.substr(eq + 1));
                } catch (const std::exception&) {
                    throw InputError(fmt::format("--weight '{}' has no numeric weight", w));
                }
                spec.entries.push_back({app::parse_series_key(w.substr(0, eq)), weight});
            }
            const AvailabilitySeries composed = compose_weighted(as_availability(result), spec);
            std::ostringstream out;
            write_long_csv(out, {{composed.key(), composed.series()}});
            emit(out.str(), pf_out);
        } else if (*report) {
            const auto kind = rp_kind == "power" ? ValueKind::power : ValueKind::availability;
            const IngestResult result = ingest_csv(fs::path(rp_series_path), rp_map.mapping(kind));
            const Calendar cal = pick_series(result, rp_series).calendar();
            const auto events = import_events(rp_events, cal, ExportFormat::csv);
            std::ostringstream fdd, yearly;
            write_distribution_csv(fdd, frequency_duration_distribution(events));
            write_yearly_csv(yearly, yearly_extremes(events, cal));
            if (rp_out_dir.empty()) {
                std::cout << fdd.str() << '\n' << yearly.str();
            } else {
                fs::create_directories(rp_out_dir);
                write_file_atomic(fs::path(rp_out_dir) / "fdd.csv", fdd.str());
                write_file_atomic(fs::path(rp_out_dir) / "yearly.csv", yearly.str());
            }
        } else if (*run) {
            app::RunConfig config = app::load_run_config(run_config_path);
            if (run_parallelism) {
                config.parallelism = *run_parallelism;
            }
            if (run_output_dir) {
                config.output_dir = *run_output_dir;
            }
            const app::RunSummary summary = app::run_config(config);
            print_log(summary.log);
            fmt::print("{} combination(s), {} file(s); manifest {}\n", summary.combinations, summary.files.size(),
                       summary.manifest.string());
        } else if (*wide) {
            std::ifstream in(wide_in, std::ios::binary);
            if (!in) {
                throw IoError(fmt::format("cannot open '{}'", wide_in));
            }
            std::ostringstream out;
            wide_to_long(in, out, wide_sep);
            emit(out.str(), wide_out);
        }
    } catch (const app::RunFailure& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kRuntimeFailure;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kInputError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kRuntimeFailure;
    }
    return kOk;
}
