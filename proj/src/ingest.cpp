#include "trendnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "trendnet/error.hpp"

namespace trendnet {

namespace {

struct Record {
    std::string actor;
    std::string object;
    std::optional<double> value;
    double raw_time{};
};

[[noreturn]] void malformed(std::size_t lineno, const std::string& what) {
    throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t lineno, const char* what) {
    double value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) malformed(lineno, std::string("invalid ") + what);
    if (!std::isfinite(value)) malformed(lineno, std::string(what) + " is not finite");
    return value;
}

} // namespace

EdgeList parse_interactions(std::istream& in, const IngestConfig& config) {
    if (config.min_actor_activity < 0)
        throw Error(ErrorCode::config, "min_actor_activity must be >= 0");

    const int max_col = std::max({config.col_source, config.col_target,
                                  config.col_value, config.col_time});
    if (config.col_source < 0 || config.col_target < 0 || config.col_time < 0)
        throw Error(ErrorCode::config, "source, target and time columns are required");

    std::vector<Record> records;
    std::string line;
    std::size_t lineno = 0;
    bool header_pending = config.has_header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line, config.delimiter);
        if (static_cast<int>(fields.size()) <= max_col)
            malformed(lineno, "expected at least " + std::to_string(max_col + 1) + " fields, got " +
                                  std::to_string(fields.size()));
        Record rec;
        rec.actor = std::string(fields[config.col_source]);
        rec.object = std::string(fields[config.col_target]);
        if (rec.actor.empty()) malformed(lineno, "empty source id");
        if (rec.object.empty()) malformed(lineno, "empty target id");
        if (config.col_value >= 0) {
            const auto field = fields[config.col_value];
            if (!field.empty()) rec.value = parse_number(field, lineno, "rating");
        }
        rec.raw_time = parse_number(fields[config.col_time], lineno, "timestamp");
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw Error(ErrorCode::empty_dataset, "input holds no records");

    // Days are relative to the earliest parsed record, before any filter.
    double min_raw = std::numeric_limits<double>::infinity();
    for (const auto& rec : records) min_raw = std::min(min_raw, rec.raw_time);

    std::erase_if(records, [&](const Record& rec) {
        if (rec.value && !(*rec.value > config.rating_threshold)) return true;
        if (config.exclude_self_links && rec.actor == rec.object) return true;
        return false;
    });

    std::unordered_map<std::string, std::int64_t> activity;
    for (const auto& rec : records) ++activity[rec.actor];
    std::erase_if(records,
                  [&](const Record& rec) { return activity[rec.actor] < config.min_actor_activity; });

    if (records.empty())
        throw Error(ErrorCode::empty_dataset, "no records survive the ingest filters");

    const double scale = config.time_unit == IngestConfig::TimeUnit::epoch_seconds ? 86400.0 : 1.0;
    std::vector<StringEdge> rows;
    rows.reserve(records.size());
    for (const auto& rec : records)
        rows.push_back({rec.actor, rec.object, (rec.raw_time - min_raw) / scale});

    std::stable_sort(rows.begin(), rows.end(), [](const StringEdge& a, const StringEdge& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    return make_edge_list(rows);
}

EdgeList parse_interactions(const std::string& path, const IngestConfig& config) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    try {
        return parse_interactions(in, config);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::parse) throw Error(ErrorCode::parse, "'" + path + "' " + e.what());
        throw;
    }
}

} // namespace trendnet
