#include "dunkel/app/pipeline.hpp"

#include "dunkel/reporting.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace dunkel::app {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string_view role_name(InputRole role) {
    switch (role) {
    case InputRole::availability:
        return "availability";
    case InputRole::load:
        return "load";
    case InputRole::residual_load:
        return "residual_load";
    }
    return "unknown";
}

std::string slug(std::string_view text) {
    std::string out;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        out.push_back(std::isalnum(u) || c == '-' || c == '.' ? c : '_');
    }
    return out.empty() ? std::string("series") : out;
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

/// One (series, threshold, method, parameters) combination.
struct Job {
    std::string stem;
    std::string series_id;
    bool prl = false;
    Method method = Method::cbt;
    std::size_t length_param = 0; // intdur or window length
    DeficitBasis basis = DeficitBasis::moving_average;
    VariableIntervalOptions variable;
    double efficiency = 1.0;
    SurplusAdjustment adjustment = SurplusAdjustment::discount;
    std::optional<ResolvedThreshold> threshold;
    ordered_json parameters = ordered_json::object();
};

struct JobResult {
    std::vector<ShortageEvent> events;
    std::vector<fs::path> files;
};

void require_range(std::size_t value, std::size_t n, const char* what, const std::string& combo) {
    if (value < 1 || value > n) {
        throw InputError(fmt::format("{}: {} {} must lie in [1, {}]", combo, what, value, n));
    }
}

std::vector<Job> plan_jobs(const RunConfig& config, const LoadedSeries& loaded) {
    std::vector<Job> jobs;

    std::vector<std::string> drought_ids;
    if (config.drought_series) {
        drought_ids = *config.drought_series;
    } else if (!config.drought_methods.empty()) {
        for (const auto& [id, s] : loaded.availability) {
            drought_ids.push_back(id);
        }
    }
    for (const auto& id : drought_ids) {
        const auto it = loaded.availability.find(id);
        if (it == loaded.availability.end()) {
            throw InputError(fmt::format("drought series '{}' is not defined by any input or portfolio", id));
        }
        const AvailabilitySeries& series = it->second;
        const std::size_t n = series.size();
        for (const auto& spec : config.thresholds) {
            ResolvedThreshold thres;
            try {
                thres = resolve_threshold(spec, series);
            } catch (const ParameterError& err) {
                throw InputError(err.what());
            }
            const std::string thres_tag =
                fmt::format("{}_{}", to_string(spec.kind()), format_number(spec.parameter()));
            for (const auto& m : config.drought_methods) {
                Job base;
                base.series_id = id;
                base.method = m.method;
                base.threshold = thres;
                const std::string prefix = fmt::format("{}__{}", slug(id), lower(to_string(m.method)));
                switch (m.method) {
                case Method::cbt:
                case Method::spa:
                    base.stem = fmt::format("{}__{}", prefix, thres_tag);
                    jobs.push_back(base);
                    break;
                case Method::window:
                    for (std::size_t len : m.window_lengths) {
                        Job j = base;
                        j.stem = fmt::format("{}_len{}__{}", prefix, len, thres_tag);
                        require_range(len, n, "window_len", j.stem);
                        j.length_param = len;
                        j.parameters["window_len"] = len;
                        jobs.push_back(j);
                    }
                    break;
                case Method::fmbt:
                    for (std::size_t d : m.intdurs) {
                        Job j = base;
                        j.stem = fmt::format("{}_intdur{}{}__{}", prefix, d,
                                             m.deficit_basis == DeficitBasis::original ? "_orig" : "", thres_tag);
                        require_range(d, n, "intdur", j.stem);
                        j.length_param = d;
                        j.basis = m.deficit_basis;
                        j.parameters["intdur"] = d;
                        j.parameters["deficit_basis"] =
                            m.deficit_basis == DeficitBasis::original ? "original" : "moving_average";
                        jobs.push_back(j);
                    }
                    break;
                case Method::vmbt: {
                    Job j = base;
                    const std::size_t start = m.variable.intdur_start.value_or(n);
                    j.stem = fmt::format("{}_start{}_step{}__{}", prefix, start, m.variable.step, thres_tag);
                    require_range(start, n, "intdur_start", j.stem);
                    if (m.variable.step < 1) {
                        throw InputError(fmt::format("{}: step must be at least 1", j.stem));
                    }
                    j.variable = m.variable;
                    j.parameters["intdur_start"] = start;
                    j.parameters["step"] = m.variable.step;
                    jobs.push_back(j);
                    break;
                }
                default:
                    throw InputError(fmt::format("method {} is not a drought method", to_string(m.method)));
                }
            }
        }
    }

    std::vector<std::string> prl_ids;
    if (config.prl_series) {
        prl_ids = *config.prl_series;
    } else if (!config.prl_methods.empty()) {
        for (const auto& [id, s] : loaded.residual_loads) {
            prl_ids.push_back(id);
        }
    }
    for (const auto& id : prl_ids) {
        const auto it = loaded.residual_loads.find(id);
        if (it == loaded.residual_loads.end()) {
            throw InputError(fmt::format("residual-load series '{}' is not defined", id));
        }
        const std::size_t n = it->second.size();
        for (const auto& m : config.prl_methods) {
            Job base;
            base.series_id = id;
            base.prl = true;
            base.method = m.method;
            const std::string prefix = fmt::format("{}__{}", slug(id), lower(to_string(m.method)));
            switch (m.method) {
            case Method::caz:
                base.stem = prefix;
                jobs.push_back(base);
                break;
            case Method::fmaz:
                for (std::size_t d : m.intdurs) {
                    Job j = base;
                    j.stem = fmt::format("{}_intdur{}", prefix, d);
                    require_range(d, n, "intdur", j.stem);
                    j.length_param = d;
                    j.parameters["intdur"] = d;
                    jobs.push_back(j);
                }
                break;
            case Method::vmaz: {
                Job j = base;
                const std::size_t start = m.variable.intdur_start.value_or(n);
                j.stem = fmt::format("{}_start{}_step{}", prefix, start, m.variable.step);
                require_range(start, n, "intdur_start", j.stem);
                if (m.variable.step < 1) {
                    throw InputError(fmt::format("{}: step must be at least 1", j.stem));
                }
                j.variable = m.variable;
                j.parameters["intdur_start"] = start;
                j.parameters["step"] = m.variable.step;
                jobs.push_back(j);
                break;
            }
            case Method::spa_prl:
                for (double eff : m.efficiencies) {
                    Job j = base;
                    const bool literal = m.adjustment == SurplusAdjustment::literal_division;
                    j.method = eff == 1.0 ? Method::spa_prl : Method::spa_adj;
                    j.stem = fmt::format("{}__{}_eff{}{}", slug(id), lower(to_string(j.method)), format_number(eff),
                                         literal ? "_literal" : "");
                    try {
                        static_cast<void>(StorageEfficiency(eff));
                    } catch (const ParameterError& err) {
                        throw InputError(fmt::format("{}: {}", j.stem, err.what()));
                    }
                    j.efficiency = eff;
                    j.adjustment = m.adjustment;
                    j.parameters["eff"] = eff;
                    j.parameters["literal_division"] = literal;
                    jobs.push_back(j);
                }
                break;
            default:
                throw InputError(fmt::format("method {} is not a residual-load method", to_string(m.method)));
            }
        }
    }

    std::set<std::string> seen;
    for (const auto& j : jobs) {
        if (!seen.insert(j.stem).second) {
            throw InputError(fmt::format("combination '{}' is listed more than once", j.stem));
        }
    }
    return jobs;
}

std::vector<ShortageEvent> detect(const Job& job, const LoadedSeries& loaded) {
    if (job.prl) {
        const ResidualLoadSeries& rl = loaded.residual_loads.at(job.series_id);
        switch (job.method) {
        case Method::caz:
            return detect_caz(rl);
        case Method::fmaz:
            return detect_fmaz(rl, job.length_param);
        case Method::vmaz:
            return detect_vmaz(rl, job.variable);
        default:
            return detect_spa_prl(rl, StorageEfficiency(job.efficiency), job.adjustment);
        }
    }
    const AvailabilitySeries& avail = loaded.availability.at(job.series_id);
    const ResolvedThreshold& thres = *job.threshold;
    switch (job.method) {
    case Method::window:
        return detect_windows(avail, thres, job.length_param);
    case Method::cbt:
        return detect_cbt(avail, thres);
    case Method::fmbt:
        return detect_fmbt(avail, thres, job.length_param, job.basis);
    case Method::vmbt:
        return detect_vmbt(avail, thres, job.variable);
    default:
        return detect_spa_drought(avail, thres);
    }
}

Calendar calendar_of(const Job& job, const LoadedSeries& loaded) {
    return job.prl ? loaded.residual_loads.at(job.series_id).series().calendar()
                   : loaded.availability.at(job.series_id).series().calendar();
}

JobResult execute(const Job& job, const LoadedSeries& loaded, const RunConfig& config,
                  const std::function<void(const fs::path&)>& on_written) {
    JobResult result;
    result.events = detect(job, loaded);
    const Calendar cal = calendar_of(job, loaded);

    auto emit = [&](const std::string& suffix, const std::string& content) {
        const fs::path path = config.output_dir / (job.stem + suffix);
        write_file_atomic(path, content);
        on_written(path);
        result.files.push_back(path);
    };
    if (config.formats.csv) {
        std::ostringstream out;
        write_events_csv(out, result.events, cal);
        emit(".events.csv", out.str());
    }
    if (config.formats.json) {
        std::ostringstream out;
        write_events_json(out, result.events, cal);
        emit(".events.json", out.str());
    }
    {
        std::ostringstream out;
        write_distribution_csv(out, frequency_duration_distribution(result.events));
        emit(".fdd.csv", out.str());
    }
    {
        std::ostringstream out;
        const auto years = yearly_extremes(result.events, cal);
        write_yearly_csv(out, years);
        emit(".yearly.csv", out.str());
    }
    return result;
}

ordered_json manifest_json(const RunConfig& config, const LoadedSeries& loaded, const std::vector<Job>& jobs,
                           const std::vector<JobResult>& results) {
    ordered_json m;
    m["tool"] = "dunkel";
    ordered_json inputs = ordered_json::array();
    for (const auto& in : config.inputs) {
        inputs.push_back({{"path", in.path.filename().string()},
                          {"role", role_name(in.role)},
                          {"step_seconds", in.mapping.step.count()},
                          {"max_gap_fill", in.mapping.max_gap_fill}});
    }
    m["inputs"] = inputs;
    ordered_json series = ordered_json::array();
    auto describe = [&](const std::string& id, const TimeSeries& s, std::string_view role) {
        series.push_back({{"id", id},
                          {"role", role},
                          {"start", format_iso8601(s.start())},
                          {"step_seconds", s.step().count()},
                          {"length", s.size()}});
    };
    for (const auto& [id, s] : loaded.availability) {
        describe(id, s.series(), "availability");
    }
    for (const auto& [id, s] : loaded.residual_loads) {
        describe(id, s.series(), "residual_load");
    }
    m["series"] = series;
    m["ingest_log"] = loaded.log;
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        ordered_json r;
        r["id"] = j.stem;
        r["series"] = j.series_id;
        r["method"] = to_string(j.method);
        r["parameters"] = j.parameters;
        if (j.threshold) {
            r["threshold"] = {{"kind", to_string(j.threshold->spec.kind())},
                              {"param", j.threshold->spec.parameter()},
                              {"value", j.threshold->value}};
        } else {
            r["threshold"] = {{"kind", "zero_line"}, {"param", 0.0}, {"value", 0.0}};
        }
        r["event_count"] = results[i].events.size();
        ordered_json files = ordered_json::array();
        for (const auto& f : results[i].files) {
            files.push_back(f.filename().string());
        }
        r["files"] = files;
        runs.push_back(std::move(r));
    }
    m["runs"] = runs;
    return m;
}

} // namespace

LoadedSeries load_series(const RunConfig& config) {
    LoadedSeries loaded;
    AvailabilitySet avail_set;
    std::map<SeriesKey, TimeSeries> load_set;
    for (const auto& in : config.inputs) {
        IngestResult ingested = ingest_csv(in.path, in.mapping);
        loaded.log.insert(loaded.log.end(), ingested.log.begin(), ingested.log.end());
        for (auto& [key, series] : ingested.series) {
            const std::string id = key.id();
            switch (in.role) {
            case InputRole::availability:
                avail_set.emplace(key, AvailabilitySeries(series, key.technology, key.region));
                loaded.availability.emplace(id, AvailabilitySeries(series, key.technology, key.region));
                break;
            case InputRole::load:
                load_set.emplace(key, series);
                loaded.loads.emplace(id, series);
                break;
            case InputRole::residual_load:
                loaded.residual_loads.emplace(id, ResidualLoadSeries(series, id));
                break;
            }
        }
    }
    for (const auto& p : config.portfolios) {
        if (loaded.availability.count(p.name) != 0) {
            throw InputError(fmt::format("portfolio name '{}' clashes with an input series", p.name));
        }
        loaded.availability.emplace(p.name, compose_weighted(avail_set, p));
    }
    for (const auto& r : config.residual_loads) {
        const auto it = load_set.find(r.load);
        if (it == load_set.end()) {
            throw LookupError(fmt::format("residual load '{}': no load series '{}'", r.name, r.load.id()));
        }
        loaded.residual_loads.emplace(r.name, residual_load_from_profiles(it->second, avail_set, r.capacities, r.name));
    }
    return loaded;
}

RunSummary run_config(const RunConfig& config) {
    const LoadedSeries loaded = load_series(config);
    const std::vector<Job> jobs = plan_jobs(config, loaded);

    std::error_code ec;
    const bool created_dir = !fs::exists(config.output_dir);
    fs::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create output directory '{}'", config.output_dir.string()));
    }

    std::mutex written_mutex;
    std::vector<fs::path> written;
    auto on_written = [&](const fs::path& p) {
        std::lock_guard lock(written_mutex);
        written.push_back(p);
    };

    std::vector<JobResult> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) {
                return;
            }
            try {
                results[i] = execute(jobs[i], loaded, config, on_written);
            } catch (...) {
                errors[i] = std::current_exception();
                failed.store(true);
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.parallelism, jobs.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    auto cleanup = [&] {
        for (const auto& p : written) {
            fs::remove(p, ec);
        }
        if (created_dir) {
            fs::remove(config.output_dir, ec);
        }
    };

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (errors[i]) {
            cleanup();
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& err) {
                throw RunFailure(fmt::format("combination '{}' failed: {}", jobs[i].stem, err.what()));
            }
        }
    }

    RunSummary summary;
    summary.combinations = jobs.size();
    summary.log = loaded.log;
    for (const auto& r : results) {
        summary.files.insert(summary.files.end(), r.files.begin(), r.files.end());
    }
    summary.manifest = config.output_dir / "manifest.json";
    try {
        write_file_atomic(summary.manifest, manifest_json(config, loaded, jobs, results).dump(2) + "\n");
    } catch (const std::exception& err) {
        cleanup();
        throw RunFailure(fmt::format("writing manifest failed: {}", err.what()));
    }
    return summary;
}

} // namespace dunkel::app
