// Machine-readable run reports: verdict, certificate, evidence, assumption
// diagnostics, and an input digest, serialized deterministically so repeated
// runs differ only in timing.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ccdes/fsa.hpp"
#include "ccdes/gadgets.hpp"
#include "ccdes/verify.hpp"

namespace ccdes {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a over the raw bytes, used to fingerprint input files.
std::uint64_t fnv1a(std::string_view bytes);

struct Report {
    std::string instance_path;
    std::uint64_t digest = 0;
    Property property = Property::strong_detectability;
    bool holds = true;
    AssumptionReport assumptions{};
    std::optional<Certificate> certificate;  ///< present exactly when the property fails
    std::optional<PumpEvidence> evidence;
    std::optional<std::string> note;
    double timing_ms = 0.0;  ///< the only field that varies between identical runs
};

std::string report_to_json(const Report& report);

/// The verdict-bearing fields of a previously written report, for
/// re-validating its certificate against the instance it names.
struct ParsedReport {
    std::string instance_path;
    Property property = Property::strong_detectability;
    bool holds = true;
    std::optional<Certificate> certificate;
    std::optional<PumpEvidence> evidence;
};

/// Throws std::invalid_argument on malformed input.
ParsedReport report_from_json(const std::string& text);

/// Sidecar for generated instances: reduction, sources, expected verdict.
std::string provenance_to_json(const Provenance& prov);

}  // namespace ccdes
