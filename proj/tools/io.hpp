#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "efalloc/core.hpp"
#include "efalloc/gen.hpp"

namespace efalloc::io {

/// Insertion-ordered, so agents stay ascending and output is stable.
using json = nlohmann::ordered_json;

// Instance documents:
//   {"model": "lottery"|"compact"|"joint"|"pairwise",
//    "agents": n, "houses": [names...], "prefs": ...}
// lottery  : per agent, [{"weight": "1/2", "order": [names]}, ...]
// joint    : [{"weight": "1/2", "order": [[names] per agent]}, ...]
// compact  : per agent, [[names tied], [names tied], ...] best class first
// pairwise : per agent, {"a>b": "3/4", ...}, one entry per unordered pair
// Weights are "num/den", integer or decimal strings; JSON floats are
// refused so nothing passes through binary floating point.

/// Throws Error(ParseError) on malformed documents, and the validation
/// kinds of validate_instance() on well-formed but invalid data.
Instance instance_from_json(const json& doc);
json instance_to_json(const Instance& inst);

/// {"0": "house", "1": "house", ...}; every agent exactly once.
Allocation allocation_from_json(const json& doc, const Instance& inst);
json allocation_to_json(const Instance& inst, const Allocation& w);

/// {"vertices": 3, "edges": [[0, 1], ...]}
Graph graph_from_json(const json& doc);
/// {"ground": 6, "subsets": [[0, 1, 2], ...]}
R3xcInput r3xc_from_json(const json& doc);

/// Reads and parses a JSON file. Throws Error(ParseError).
json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline, so equal instances give equal
/// bytes.
std::string dump_instance(const Instance& inst);
void write_text(const std::filesystem::path& path, const std::string& text);

Instance read_instance(const std::filesystem::path& path);

/// "sha256:" followed by the hex digest of the compact canonical form.
std::string digest(const Instance& inst);

}  // namespace efalloc::io
