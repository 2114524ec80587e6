#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "trendnet/types.hpp"

namespace trendnet {

/// Settings for parsing a delimiter-separated interaction log.
/// col_value < 0 means the input carries no rating column; the rating
/// threshold then never applies.
struct IngestConfig {
    char delimiter = '\t';
    bool has_header = false;
    int col_source = 0;
    int col_target = 1;
    int col_value = -1;
    int col_time = 2;
    double rating_threshold = 2.0;        // keep records rated strictly greater
    std::int64_t min_actor_activity = 20; // keep actors with at least this many surviving records
    enum class TimeUnit { days, epoch_seconds };
    TimeUnit time_unit = TimeUnit::days;
    bool exclude_self_links = true;
};

/// Parses raw interactions into canonical edges.
///
/// Times are rebased to fractional days from the dataset's minimum
/// timestamp (divided by 86400 first when the unit is epoch seconds).
/// Filters, in order: rating <= threshold dropped (only for records that
/// carry a value), self-links dropped when configured, then actors with
/// fewer than min_actor_activity surviving records dropped. Output is
/// sorted by day, ties by (source, target) id order. Malformed records
/// raise parse errors naming the line; an empty result raises an
/// empty-dataset error.
EdgeList parse_interactions(const std::string& path, const IngestConfig& config);
EdgeList parse_interactions(std::istream& in, const IngestConfig& config);

} // namespace trendnet
