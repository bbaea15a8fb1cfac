#include "trispec/error.hpp"

namespace trispec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_substitution: return "invalid substitution";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::resource: return "resource limit";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::inconsistency: return "numerical inconsistency";
    case ErrorCode::insufficient_resolution: return "insufficient resolution";
    case ErrorCode::io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace trispec
