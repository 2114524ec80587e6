#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "trendnet/types.hpp"

namespace trendnet {

/// Writes content through a temp file + rename so an interrupted run never
/// leaves a truncated file at path.
void atomic_write_file(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

/// Canonical edge file: one "source<TAB>target<TAB>day" row per link event,
/// day printed with 6 decimals.
std::string format_edge_file(std::span<const TemporalEdge> edges, std::span<const std::string> ids);
std::string format_edge_file(const EdgeList& list);
void write_edge_file(const std::string& path, const EdgeList& list);
EdgeList read_edge_file(const std::string& path);

/// FNV-1a 64 over the canonical serialization; used as the dataset
/// fingerprint in run manifests.
std::uint64_t edge_fingerprint(std::span<const TemporalEdge> edges, std::span<const std::string> ids);

} // namespace trendnet
