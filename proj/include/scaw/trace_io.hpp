#pragma once

#include <stdexcept>
#include <string>

#include "scaw/cpa.hpp"
#include "scaw/leakage.hpp"

namespace scaw {

/*
 * SCTR trace files: fixed little-endian layout, byte-exact round-trip,
 * portable across platforms. docs/trace_format.md is the byte-level
 * reference. Keys are never stored — only a fingerprint.
 */

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File does not start with "SCTR".
class BadMagicError : public TraceFormatError {
public:
    using TraceFormatError::TraceFormatError;
};

/// Recognized container, unsupported version number.
class BadVersionError : public TraceFormatError {
public:
    using TraceFormatError::TraceFormatError;
};

/// Payload shorter or longer than the header-declared counts.
class TruncatedFileError : public TraceFormatError {
public:
    using TraceFormatError::TraceFormatError;
};

/// Filesystem-level failure (cannot open/write destination).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint16_t kTraceFormatVersion = 1;

/// Writes the set; returns the byte count. Throws std::invalid_argument on an
/// empty set, IoError on filesystem failure.
std::size_t write_trace_set(const TraceSet& ts, const std::string& path);

/// Reads and validates; throws BadMagicError / BadVersionError /
/// TruncatedFileError / IoError.
TraceSet read_trace_set(const std::string& path);

/// One row per trace, header row of event labels (label_k per extra sample
/// when samples_per_event > 1).
void export_csv(const TraceSet& ts, const std::string& path);

/// One row per guess, header row of absolute sample indices; degenerate
/// cells export as "nan".
void export_csv(const CorrelationMatrix& cm, const std::string& path);

} // namespace scaw
