#include "dunkel/app/config.hpp"

#include "dunkel/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dunkel::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return j.at(key).get<T>();
}

/// Accepts a scalar or an array of scalars.
template <typename T>
std::vector<T> scalar_or_list(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return {};
    }
    const json& v = j.at(key);
    if (v.is_array()) {
        return v.get<std::vector<T>>();
    }
    return {v.get<T>()};
}

SeriesKey key_from(const json& j) {
    return {get_or<std::string>(j, "technology", ""), get_or<std::string>(j, "region", "")};
}

InputSpec parse_input(const json& j, const fs::path& base) {
    InputSpec in;
    in.path = resolve(base, j.at("path").get<std::string>());
    in.role = parse_input_role(get_or<std::string>(j, "role", "availability"));
    CsvMapping& m = in.mapping;
    if (j.contains("columns")) {
        const json& c = j.at("columns");
        m.timestamp_column = get_or<std::string>(c, "timestamp", m.timestamp_column);
        m.value_column = get_or<std::string>(c, "value", m.value_column);
        m.technology_column = get_or<std::string>(c, "technology", m.technology_column);
        m.region_column = get_or<std::string>(c, "region", m.region_column);
    }
    m.default_technology = get_or<std::string>(j, "default_technology", "");
    m.default_region = get_or<std::string>(j, "default_region", "");
    const auto minutes = get_or<long long>(j, "step_minutes", 60);
    if (minutes <= 0) {
        throw InputError(fmt::format("input '{}': step_minutes must be positive", in.path.string()));
    }
    m.step = std::chrono::minutes(minutes);
    m.max_gap_fill = get_or<std::size_t>(j, "max_gap_fill", 0);
    m.kind = in.role == InputRole::availability ? ValueKind::availability : ValueKind::power;
    return in;
}

std::vector<ThresholdSpec> parse_thresholds(const json& arr) {
    std::vector<ThresholdSpec> out;
    for (const json& t : arr) {
        const auto kind = t.at("kind").get<std::string>();
        if (t.contains("sweep")) {
            for (double v : t.at("sweep").get<std::vector<double>>()) {
                out.push_back(ThresholdSpec::from_tagged(kind, v));
            }
        } else if (kind == "mean_fraction" && !t.contains("value")) {
            for (const auto& s : default_mean_fraction_sweep()) {
                out.push_back(s);
            }
        } else {
            out.push_back(ThresholdSpec::from_tagged(kind, t.at("value").get<double>()));
        }
    }
    return out;
}

VariableIntervalOptions parse_variable(const json& j) {
    VariableIntervalOptions v;
    if (j.contains("intdur_start") && !j.at("intdur_start").is_null()) {
        v.intdur_start = j.at("intdur_start").get<std::size_t>();
    }
    v.step = get_or<std::size_t>(j, "step", 1);
    return v;
}

DroughtMethodSpec parse_drought_method(const json& j) {
    DroughtMethodSpec m;
    m.method = parse_method(j.at("method").get<std::string>());
    switch (m.method) {
    case Method::window:
        m.window_lengths = scalar_or_list<std::size_t>(j, "window_len");
        if (m.window_lengths.empty()) {
            throw InputError("window method requires window_len");
        }
        break;
    case Method::fmbt: {
        m.intdurs = scalar_or_list<std::size_t>(j, "intdur");
        if (m.intdurs.empty()) {
            throw InputError("fmbt method requires intdur");
        }
        const auto basis = get_or<std::string>(j, "deficit_basis", "moving_average");
        if (basis == "moving_average") {
            m.deficit_basis = DeficitBasis::moving_average;
        } else if (basis == "original") {
            m.deficit_basis = DeficitBasis::original;
        } else {
            throw InputError(fmt::format("unknown deficit_basis '{}'", basis));
        }
        break;
    }
    case Method::vmbt:
        m.variable = parse_variable(j);
        break;
    case Method::cbt:
    case Method::spa:
        break;
    default:
        throw InputError(fmt::format("method {} is not a drought method", to_string(m.method)));
    }
    return m;
}

PrlMethodSpec parse_prl_method(const json& j) {
    PrlMethodSpec m;
    auto name = j.at("method").get<std::string>();
    if (name == "spa" || name == "SPA" || name == "spa_adj" || name == "SPA_ADJ") {
        name = "SPA_PRL";
    }
    m.method = parse_method(name);
    switch (m.method) {
    case Method::caz:
        break;
    case Method::fmaz:
        m.intdurs = scalar_or_list<std::size_t>(j, "intdur");
        if (m.intdurs.empty()) {
            throw InputError("fmaz method requires intdur");
        }
        break;
    case Method::vmaz:
        m.variable = parse_variable(j);
        break;
    case Method::spa_prl:
        m.efficiencies = scalar_or_list<double>(j, "eff");
        if (m.efficiencies.empty()) {
            m.efficiencies = {1.0};
        }
        m.adjustment = get_or<bool>(j, "literal_division", false) ? SurplusAdjustment::literal_division
                                                             : SurplusAdjustment::discount;
        break;
    default:
        throw InputError(fmt::format("method {} is not a residual-load method", to_string(m.method)));
    }
    return m;
}

} // namespace

InputRole parse_input_role(const std::string& name) {
    if (name == "availability") {
        return InputRole::availability;
    }
    if (name == "load") {
        return InputRole::load;
    }
    if (name == "residual_load") {
        return InputRole::residual_load;
    }
    throw InputError(fmt::format("unknown input role '{}' (expected availability, load or residual_load)", name));
}

SeriesKey parse_series_key(const std::string& id) {
    const auto pos = id.find('/');
    if (pos == std::string::npos) {
        return {id, {}};
    }
    return {id.substr(0, pos), id.substr(pos + 1)};
}

RunConfig parse_run_config(const std::string& json_text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw InputError(fmt::format("config is not valid JSON: {}", err.what()));
    }
    RunConfig cfg;
    try {
        for (const json& in : root.at("inputs")) {
            cfg.inputs.push_back(parse_input(in, base_dir));
        }
        if (root.contains("portfolios")) {
            for (const json& p : root.at("portfolios")) {
                PortfolioSpec spec;
                spec.name = p.at("name").get<std::string>();
                for (const json& e : p.at("entries")) {
                    spec.entries.push_back({key_from(e), e.at("weight").get<double>()});
                }
                cfg.portfolios.push_back(std::move(spec));
            }
        }
        if (root.contains("residual_loads")) {
            for (const json& r : root.at("residual_loads")) {
                ResidualLoadSpec spec;
                spec.name = r.at("name").get<std::string>();
                spec.load = key_from(r.at("load"));
                for (const json& c : r.at("capacities")) {
                    spec.capacities[key_from(c)] = c.at("capacity").get<double>();
                }
                cfg.residual_loads.push_back(std::move(spec));
            }
        }
        if (root.contains("droughts")) {
            const json& d = root.at("droughts");
            if (d.contains("series")) {
                cfg.drought_series = d.at("series").get<std::vector<std::string>>();
            }
            cfg.thresholds = d.contains("thresholds") ? parse_thresholds(d.at("thresholds"))
                                                      : default_mean_fraction_sweep();
            for (const json& m : d.at("methods")) {
                cfg.drought_methods.push_back(parse_drought_method(m));
            }
        }
        if (root.contains("prl")) {
            const json& p = root.at("prl");
            if (p.contains("series")) {
                cfg.prl_series = p.at("series").get<std::vector<std::string>>();
            }
            for (const json& m : p.at("methods")) {
                cfg.prl_methods.push_back(parse_prl_method(m));
            }
        }
        cfg.output_dir = resolve(base_dir, get_or<std::string>(root, "output_dir", "dunkel-out"));
        if (root.contains("formats")) {
            cfg.formats = {false, false};
            for (const auto& f : root.at("formats").get<std::vector<std::string>>()) {
                if (f == "csv") {
                    cfg.formats.csv = true;
                } else if (f == "json") {
                    cfg.formats.json = true;
                } else {
                    throw InputError(fmt::format("unknown output format '{}'", f));
                }
            }
        }
        cfg.parallelism = get_or<std::size_t>(root, "parallelism", 1);
    } catch (const json::exception& err) {
        throw InputError(fmt::format("config: {}", err.what()));
    } catch (const ParameterError& err) {
        throw InputError(fmt::format("config: {}", err.what()));
    }
    if (cfg.inputs.empty()) {
        throw InputError("config: at least one input is required");
    }
    if (cfg.parallelism == 0) {
        throw InputError("config: parallelism must be at least 1");
    }
    return cfg;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open config '{}'", path.string()));
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str(), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

} // namespace dunkel::app
