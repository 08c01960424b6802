#pragma once

#include <stdexcept>
#include <string>

namespace kdekit {

//! Error codes for every failure mode the library can signal.
enum class errc {
  invalid_argument,
  invalid_bandwidth,
  degenerate_sample,
  degenerate_bandwidth,
  unsupported_operation,
  domain_violation,
  out_of_range,
  numeric_overflow,
  plugin_failure,
  criterion_failure,
  invalid_icv_params,
  parse_failure,
  ingestion_failure,
};

const char* errc_name(errc code);

//! Exception carrying a machine-readable code plus a human-readable message.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message)
    , code_(code)
  {
  }

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

inline const char* errc_name(errc code)
{
  switch (code) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::invalid_bandwidth: return "invalid_bandwidth";
    case errc::degenerate_sample: return "degenerate_sample";
    case errc::degenerate_bandwidth: return "degenerate_bandwidth";
    case errc::unsupported_operation: return "unsupported_operation";
    case errc::domain_violation: return "domain_violation";
    case errc::out_of_range: return "out_of_range";
    case errc::numeric_overflow: return "numeric_overflow";
    case errc::plugin_failure: return "plugin_failure";
    case errc::criterion_failure: return "criterion_failure";
    case errc::invalid_icv_params: return "invalid_icv_params";
    case errc::parse_failure: return "parse_failure";
    case errc::ingestion_failure: return "ingestion_failure";
  }
  return "unknown";
}

}  // namespace kdekit
