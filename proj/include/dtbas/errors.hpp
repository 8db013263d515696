#pragma once

#include <stdexcept>

namespace dtbas {

/// Precondition or value-range violation.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Protocol-level violation (replay, misrouting).
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Required data not yet present (incomplete interval, missing aggregator).
struct AvailabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed external input (config files, CSV).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dtbas
