#pragma once

namespace avsa {

inline constexpr int kVersionMajor = 1;
inline constexpr int kVersionMinor = 0;
inline constexpr int kVersionPatch = 0;
inline constexpr const char* kVersionString = "1.0.0";

// Bumped whenever the AVSF tensor layout or the report schemas change.
inline constexpr unsigned kAvsfFormatVersion = 1;
inline constexpr unsigned kReportSchemaVersion = 1;

}  // namespace avsa
