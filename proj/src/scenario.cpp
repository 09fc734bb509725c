#include "qvcz/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qvcz {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t begin = 0;
    while (true) {
        const size_t at = s.find(sep, begin);
        parts.push_back(trim(s.substr(begin, at == std::string_view::npos ? std::string_view::npos : at - begin)));
        if (at == std::string_view::npos) break;
        begin = at + 1;
    }
    return parts;
}

double parse_double(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::ConfigError, "expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ConfigError, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

/// Splits "<body> L" into body and whether the L suffix was present.
std::pair<std::string_view, bool> strip_length_unit(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.back() == 'L') {
        return {trim(text.substr(0, text.size() - 1)), true};
    }
    return {text, false};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_range(const Range& r) {
    return format_double(r.start) + ":" + format_double(r.stop) + ":" + format_double(r.step);
}

struct Entry {
    int line;
    std::string value;
};

[[noreturn]] void fail_at(int line, const std::string& key, const std::string& message) {
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": field '" + key + "': " + message);
}

}  // namespace

std::vector<double> Range::values() const {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || stop < start) {
        throw Error(ErrorCode::ConfigError, "range must satisfy start <= stop and step > 0");
    }
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (long i = 0; i < count; ++i) {
        out[i] = start + i * step;
    }
    return out;
}

Range parse_range(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() == 2) {
        return {parse_double(parts[0]), parse_double(parts[1]), 1.0};
    }
    if (parts.size() != 3) {
        throw Error(ErrorCode::ConfigError, "expected start:stop:step, got '" + std::string(text) + "'");
    }
    const Range r{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
    (void)r.values();
    return r;
}

std::vector<ElementIndex> parse_element_list(std::string_view text) {
    text = trim(text);
    if (text == "all") {
        return {all_elements().begin(), all_elements().end()};
    }
    std::set<int> seen;
    for (std::string_view part : split(text, ',')) {
        if (part.empty()) continue;
        try {
            seen.insert(ElementIndex::parse(part).ordinal());
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
    }
    if (seen.empty()) {
        throw Error(ErrorCode::ConfigError, "element list is empty");
    }
    std::vector<ElementIndex> out;
    for (int n : seen) out.push_back(ElementIndex::from_ordinal(n));
    return out;
}

Scenario::Scenario() : elements(all_elements().begin(), all_elements().end()) {}

std::vector<double> Scenario::nu_values() const {
    if (!geometry) {
        return nu.values();
    }
    std::vector<double> out;
    for (double dx : geometry->delta_x.values()) {
        out.push_back(nu_of(Geometry{1.0, geometry->lambda, geometry->z, dx}));
    }
    return out;
}

void Scenario::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorCode::ConfigError, what);
    };
    require(!elements.empty(), "element list is empty");
    require(L > 0.0 && std::isfinite(L), "L must be positive");
    require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
    require(compare_tol > 0.0, "compare_tol must be positive");
    try {
        quadrature.validate();
        const auto grid = nu_values();
        require(!grid.empty(), "nu range is empty");
        for (double v : grid) require(std::isfinite(v), "nu range is not finite");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        throw Error(ErrorCode::ConfigError, e.what());
    }
    require(stats.n_max >= 0, "n_max must be non-negative");
    require(stats.display_cutoff >= 0, "display_cutoff must be non-negative");
    require(stats.total_mean_photons >= 0.0, "total_mean_photons must be non-negative");
    require(stats.source_samples >= 2, "source_samples must be at least 2");
    require(!stats.z.empty(), "stats_z is empty");
    for (double z : stats.z) require(z >= 0.0 && std::isfinite(z), "stats_z entries must be non-negative");
    require(search.lo < search.hi, "search interval must satisfy lo < hi");
}

bool Scenario::operator==(const Scenario& o) const {
    return source == o.source && elements == o.elements && nu == o.nu && geometry == o.geometry &&
           quadrature.nodes_per_axis == o.quadrature.nodes_per_axis &&
           quadrature.target_abs_tol == o.quadrature.target_abs_tol && compare_tol == o.compare_tol && L == o.L &&
           lambda == o.lambda && stats == o.stats && search_element == o.search_element && search.lo == o.search.lo &&
           search.hi == o.search.hi;
}

Scenario parse_scenario(std::string_view text) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": missing key");
        }
        if (value.empty()) fail_at(line_no, key, "missing value");
        if (!entries.emplace(key, Entry{line_no, value}).second) fail_at(line_no, key, "duplicate key");
    }

    Scenario s;
    auto with = [&](const std::string& key, auto&& apply) {
        const auto it = entries.find(key);
        if (it == entries.end()) return false;
        try {
            apply(it->second.value);
        } catch (const Error& e) {
            fail_at(it->second.line, key, e.what());
        }
        entries.erase(it);
        return true;
    };

    // L first: every other length may be given relative to it.
    with("L", [&](const std::string& v) {
        s.L = parse_double(v);
        if (!(s.L > 0.0)) throw Error(ErrorCode::ConfigError, "must be positive");
    });
    auto length = [&](std::string_view v) {
        const auto [body, in_l] = strip_length_unit(v);
        const double x = parse_double(body);
        return in_l ? x : x / s.L;
    };

    with("source", [&](const std::string& v) {
        try {
            s.source = parse_source_kind(v);
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
    });
    with("elements", [&](const std::string& v) { s.elements = parse_element_list(v); });
    with("nu", [&](const std::string& v) {
        s.nu = parse_range(v);
        (void)s.nu.values();
    });
    with("nodes", [&](const std::string& v) { s.quadrature.nodes_per_axis = parse_int(v); });
    with("target_abs_tol", [&](const std::string& v) { s.quadrature.target_abs_tol = parse_double(v); });
    with("compare_tol", [&](const std::string& v) { s.compare_tol = parse_double(v); });
    with("lambda", [&](const std::string& v) { s.lambda = length(v); });

    std::optional<double> z;
    int z_line = 0;
    if (auto it = entries.find("z"); it != entries.end()) z_line = it->second.line;
    with("z", [&](const std::string& v) { z = length(v); });
    const bool has_dx = with("delta_x", [&](const std::string& v) {
        const auto [body, in_l] = strip_length_unit(v);
        Range r = parse_range(body);
        if (!in_l) {
            r = {r.start / s.L, r.stop / s.L, r.step / s.L};
        }
        (void)r.values();
        s.geometry = GeometrySweep{0.0, 0.0, r};
    });
    if (has_dx) {
        if (!z) {
            throw Error(ErrorCode::ConfigError, "field 'delta_x': geometry sweep requires 'z'");
        }
        s.geometry->lambda = s.lambda;
        s.geometry->z = *z;
    } else if (z) {
        fail_at(z_line, "z", "only meaningful together with 'delta_x'");
    }

    with("stats_x", [&](const std::string& v) { s.stats.x = length(v); });
    with("stats_z", [&](const std::string& v) {
        const auto [body, in_l] = strip_length_unit(v);
        s.stats.z.clear();
        for (std::string_view part : split(body, ',')) {
            const double x = parse_double(part);
            s.stats.z.push_back(in_l ? x : x / s.L);
        }
    });
    with("total_mean_photons", [&](const std::string& v) { s.stats.total_mean_photons = parse_double(v); });
    with("n_max", [&](const std::string& v) { s.stats.n_max = parse_int(v); });
    with("display_cutoff", [&](const std::string& v) { s.stats.display_cutoff = parse_int(v); });
    with("source_samples", [&](const std::string& v) { s.stats.source_samples = parse_int(v); });
    with("search_element", [&](const std::string& v) {
        try {
            s.search_element = ElementIndex::parse(v);
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
    });
    with("search", [&](const std::string& v) {
        const Range r = parse_range(v);
        s.search = {r.start, r.stop};
    });

    if (!entries.empty()) {
        const auto& [key, entry] = *entries.begin();
        fail_at(entry.line, key, "unknown key");
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string dump_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "source = " << to_string(s.source) << "\n";
    out << "elements = ";
    if (s.elements.size() == 16) {
        out << "all";
    } else {
        for (size_t i = 0; i < s.elements.size(); ++i) out << (i ? "," : "") << s.elements[i].str();
    }
    out << "\n";
    out << "nu = " << format_range(s.nu) << "\n";
    out << "nodes = " << s.quadrature.nodes_per_axis << "\n";
    out << "target_abs_tol = " << format_double(s.quadrature.target_abs_tol) << "\n";
    out << "compare_tol = " << format_double(s.compare_tol) << "\n";
    out << "L = " << format_double(s.L) << "\n";
    out << "lambda = " << format_double(s.lambda) << " L\n";
    if (s.geometry) {
        out << "z = " << format_double(s.geometry->z) << " L\n";
        out << "delta_x = " << format_range(s.geometry->delta_x) << " L\n";
    }
    out << "stats_x = " << format_double(s.stats.x) << " L\n";
    out << "stats_z = ";
    for (size_t i = 0; i < s.stats.z.size(); ++i) out << (i ? ", " : "") << format_double(s.stats.z[i]);
    out << " L\n";
    out << "total_mean_photons = " << format_double(s.stats.total_mean_photons) << "\n";
    out << "n_max = " << s.stats.n_max << "\n";
    out << "display_cutoff = " << s.stats.display_cutoff << "\n";
    out << "source_samples = " << s.stats.source_samples << "\n";
    out << "search_element = " << s.search_element.str() << "\n";
    out << "search = " << format_double(s.search.lo) << ":" << format_double(s.search.hi) << "\n";
    return out.str();
}

}  // namespace qvcz
