// Instance file I/O. An instance is one automaton plus its observation
// points, stored as a strict JSON object: unknown fields are rejected, all
// references must resolve, and identifiers must be unique.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccdes/fsa.hpp"

namespace ccdes {

struct Instance {
    Fsa fsa;
    ObserverSet observers;
};

struct LoadResult {
    std::optional<Instance> instance;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return instance.has_value(); }
};

/// Parses and validates instance JSON text. All violations are collected,
/// not just the first.
LoadResult parse_instance(const std::string& json_text);

/// parse_instance over the file's bytes; file-system problems come back as errors.
LoadResult load_instance(const std::filesystem::path& path);

/// Canonical serialization: sorted keys, every field present, 2-space indent.
/// Identical inputs serialize to identical bytes.
std::string instance_to_json(const Fsa& fsa, const ObserverSet& observers);

}  // namespace ccdes
