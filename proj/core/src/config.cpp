#include "catdiv/config.hpp"

#include "catdiv/csv.hpp"
#include "catdiv/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace catdiv {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    if (line == 0) throw Error(ErrorCode::ParseError, what);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, std::size_t line, std::string_view key) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        parse_error(line, std::string(key) + ": expected a finite number, got '" +
                              std::string(s) + "'");
    }
    return v;
}

std::uint64_t to_u64(std::string_view s, std::size_t line, std::string_view key) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        // Accept integral values written in floating notation, e.g. 1e4.
        double d = 0.0;
        const auto [p2, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
        if (ec2 == std::errc() && p2 == s.data() + s.size() && d >= 0.0 && d < 0x1p64 &&
            std::floor(d) == d) {
            return static_cast<std::uint64_t>(d);
        }
        parse_error(line, std::string(key) + ": expected a non-negative integer, got '" +
                              std::string(s) + "'");
    }
    return v;
}

bool to_bool(std::string_view s, std::size_t line, std::string_view key) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    parse_error(line, std::string(key) + ": expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> to_list(std::string_view s, std::size_t line, std::string_view key) {
    std::vector<double> out;
    for (auto part : split(s, ',')) out.push_back(to_double(part, line, key));
    return out;
}

[[noreturn]] void validation_error(const std::string& what) {
    throw Error(ErrorCode::ValidationError, what);
}

constexpr std::array kKnownKeys{"mu",          "sigma2",      "c",           "k",
                                "levy",        "beta",        "s",           "dt",
                                "horizon",     "n_paths",     "seed",        "antithetic",
                                "x_grid",      "sweep_param", "sweep_range", "sweep_outputs"};

}  // namespace

LevyMeasure load_levy_table(const std::filesystem::path& path, double tail_rate) {
    const auto table = csv::parse_csv(csv::read_file(path), false);
    std::vector<double> z;
    std::vector<double> density;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != 2) {
            throw Error(ErrorCode::ParseError, path.string() + ": record " +
                                                   std::to_string(r + 1) + " needs 2 fields");
        }
        const auto* a = std::get_if<double>(&row[0]);
        const auto* b = std::get_if<double>(&row[1]);
        if (!a || !b) {
            if (r == 0) continue;  // header
            throw Error(ErrorCode::ParseError,
                        path.string() + ": record " + std::to_string(r + 1) + " is not numeric");
        }
        z.push_back(*a);
        density.push_back(*b);
    }
    return LevyMeasure::tabulated(std::move(z), std::move(density), tail_rate);
}

LevyMeasure parse_levy(std::string_view value, const std::filesystem::path& base_dir) {
    value = trim(value);
    auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (value.size() > prefix.size() + 1 && value.substr(0, prefix.size()) == prefix &&
            value.back() == ')') {
            return trim(value.substr(prefix.size(), value.size() - prefix.size() - 1));
        }
        return std::nullopt;
    };
    if (auto args = inner("exp(")) {
        return LevyMeasure::exponential(to_double(*args, 0, "levy exp rate"));
    }
    if (auto args = inner("table(")) {
        const auto comma = args->rfind(',');
        if (comma == std::string_view::npos) {
            throw Error(ErrorCode::ParseError, "levy table needs table(path, tail_rate)");
        }
        std::filesystem::path path(std::string(trim(args->substr(0, comma))));
        const double tail = to_double(args->substr(comma + 1), 0, "levy tail_rate");
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        return load_levy_table(path, tail);
    }
    throw Error(ErrorCode::ParseError,
                "levy must be exp(t) or table(path, tail_rate), got '" + std::string(value) + "'");
}

void parse_range(std::string_view text, double& lo, double& hi, std::size_t& n) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw Error(ErrorCode::ParseError, "range must be LO:HI:N, got '" + std::string(text) + "'");
    }
    lo = to_double(parts[0], 0, "range lo");
    hi = to_double(parts[1], 0, "range hi");
    n = static_cast<std::size_t>(to_u64(parts[2], 0, "range n"));
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    struct Entry {
        std::string value;
        std::size_t line;
    };
    std::map<std::string, Entry, std::less<>> entries;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_error(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) parse_error(line_no, "missing key");
        if (value.empty()) parse_error(line_no, std::string(key) + ": missing value");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            parse_error(line_no, "unknown key '" + std::string(key) + "'");
        }
        if (auto it = entries.find(key); it != entries.end()) {
            parse_error(line_no, "duplicate key '" + std::string(key) + "' (first on line " +
                                     std::to_string(it->second.line) + ")");
        }
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }

    std::vector<std::string> missing;
    for (const char* key : {"mu", "sigma2", "c", "k", "levy"}) {
        if (!entries.count(key)) missing.emplace_back(key);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        parse_error(0, "missing required keys: " + list);
    }

    auto number = [&](const char* key, double fallback) {
        const auto it = entries.find(key);
        return it == entries.end() ? fallback : to_double(it->second.value, it->second.line, key);
    };

    RunConfig cfg;
    cfg.model.mu = number("mu", 0.0);
    cfg.model.sigma2 = number("sigma2", 0.0);
    cfg.model.c = number("c", 0.0);
    cfg.model.k = number("k", 0.0);
    cfg.model.beta = number("beta", 0.8);
    cfg.model.s = number("s", 0.0);
    {
        const auto& e = entries.at("levy");
        try {
            cfg.model.levy = parse_levy(e.value, base_dir);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::ParseError) parse_error(e.line, err.detail());
            if (err.code() == ErrorCode::IoError) throw;
            validation_error(std::string("levy: ") + err.what());
        }
    }
    try {
        cfg.model = validate_params(std::move(cfg.model));
    } catch (const Error& err) {
        validation_error(err.what());
    }

    cfg.sim.dt = number("dt", 1e-3);
    cfg.sim.horizon = number("horizon", 20.0 / cfg.model.c);
    if (const auto it = entries.find("n_paths"); it != entries.end()) {
        cfg.sim.n_paths = static_cast<std::size_t>(to_u64(it->second.value, it->second.line, "n_paths"));
    }
    if (const auto it = entries.find("seed"); it != entries.end()) {
        cfg.sim.seed = to_u64(it->second.value, it->second.line, "seed");
    }
    if (const auto it = entries.find("antithetic"); it != entries.end()) {
        cfg.sim.antithetic = to_bool(it->second.value, it->second.line, "antithetic");
    }
    if (!(cfg.sim.dt > 0.0)) validation_error("dt must be > 0");
    if (!(cfg.model.c * cfg.sim.horizon >= 18.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "c * horizon = " << cfg.model.c * cfg.sim.horizon << " must be >= 18";
        validation_error(msg.str());
    }
    if (cfg.sim.n_paths == 0) validation_error("n_paths must be >= 1");
    if (cfg.sim.antithetic && cfg.sim.n_paths % 2 != 0) {
        validation_error("antithetic sampling needs an even n_paths");
    }

    if (const auto it = entries.find("x_grid"); it != entries.end()) {
        cfg.x_grid = to_list(it->second.value, it->second.line, "x_grid");
        for (double x : cfg.x_grid) {
            if (x < 0.0) validation_error("x_grid entries must be >= 0");
        }
    }

    const bool has_range = entries.count("sweep_range") > 0;
    const bool has_outputs = entries.count("sweep_outputs") > 0;
    if (const auto it = entries.find("sweep_param"); it != entries.end()) {
        SweepSpec spec;
        try {
            spec.parameter = parse_sweep_param(it->second.value);
        } catch (const Error& err) {
            parse_error(it->second.line, err.detail());
        }
        spec.fixed = cfg.model;
        if (!has_range) parse_error(it->second.line, "sweep_param needs sweep_range");
        const auto& r = entries.at("sweep_range");
        try {
            parse_range(r.value, spec.lo, spec.hi, spec.n_points);
        } catch (const Error& err) {
            parse_error(r.line, err.detail());
        }
        if (has_outputs) {
            const auto& o = entries.at("sweep_outputs");
            spec.outputs.clear();
            for (auto name : split(o.value, ',')) {
                try {
                    spec.outputs.push_back(parse_sweep_output(name));
                } catch (const Error& err) {
                    parse_error(o.line, err.detail());
                }
            }
        }
        if (!cfg.x_grid.empty()) spec.x_grid = cfg.x_grid;
        validate_sweep(spec);
        cfg.sweep = std::move(spec);
    } else if (has_range || has_outputs) {
        const auto& e = entries.at(has_range ? "sweep_range" : "sweep_outputs");
        parse_error(e.line, "sweep settings given without sweep_param");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(csv::read_file(path), path.parent_path());
}

}  // namespace catdiv
