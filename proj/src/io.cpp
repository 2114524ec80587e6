#include "trendnet/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "trendnet/error.hpp"

namespace trendnet {

EdgeList make_edge_list(const std::vector<StringEdge>& rows) {
    EdgeList list;
    list.edges.reserve(rows.size());
    std::unordered_map<std::string, NodeIndex> index;
    index.reserve(rows.size());
    auto intern = [&](const std::string& id) {
        auto [it, inserted] = index.try_emplace(id, static_cast<NodeIndex>(list.ids.size()));
        if (inserted) list.ids.push_back(id);
        return it->second;
    };
    for (const auto& row : rows) {
        const NodeIndex s = intern(row.source);
        const NodeIndex t = intern(row.target);
        list.edges.push_back({s, t, row.time});
    }
    return list;
}

void atomic_write_file(const std::string& path, std::string_view content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io, "cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorCode::io, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::io, "rename '" + tmp + "' -> '" + path + "': " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string format_edge_file(std::span<const TemporalEdge> edges, std::span<const std::string> ids) {
    std::string out;
    out.reserve(edges.size() * 24);
    char buf[64];
    for (const auto& e : edges) {
        out += ids[e.source];
        out += '\t';
        out += ids[e.target];
        out += '\t';
        const int len = std::snprintf(buf, sizeof(buf), "%.6f", e.time);
        out.append(buf, static_cast<std::size_t>(len));
        out += '\n';
    }
    return out;
}

std::string format_edge_file(const EdgeList& list) {
    return format_edge_file(list.edges, list.ids);
}

void write_edge_file(const std::string& path, const EdgeList& list) {
    atomic_write_file(path, format_edge_file(list));
}

EdgeList read_edge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    std::vector<StringEdge> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw Error(ErrorCode::parse,
                        "'" + path + "' line " + std::to_string(lineno) + ": expected 3 tab-separated fields");
        StringEdge row;
        row.source = line.substr(0, tab1);
        row.target = line.substr(tab1 + 1, tab2 - tab1 - 1);
        const char* first = line.data() + tab2 + 1;
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, row.time);
        if (ec != std::errc{} || ptr != last || !(row.time >= 0.0))
            throw Error(ErrorCode::parse,
                        "'" + path + "' line " + std::to_string(lineno) + ": bad day value");
        if (row.source.empty() || row.target.empty())
            throw Error(ErrorCode::parse,
                        "'" + path + "' line " + std::to_string(lineno) + ": empty node id");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::empty_dataset, "'" + path + "' holds no edges");
    return make_edge_list(rows);
}

std::uint64_t edge_fingerprint(std::span<const TemporalEdge> edges, std::span<const std::string> ids) {
    const std::string bytes = format_edge_file(edges, ids);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace trendnet
