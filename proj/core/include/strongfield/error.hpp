#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strongfield {

enum class ErrorCode {
  kInvalidArgument,
  kNonConverged,       // quadrature doubling test failed at the resolution cap
  kEmptyResult,        // no saddle point survived
  kSaddleCoalescence,  // isolated-saddle prefactor is degenerate
  kNotBound,           // radial Hamiltonian has no state below zero
  kBracketFail,        // effective-charge search has no sign change
  kUnstable,           // propagation norm grew
  kNoPeaks,            // too few peaks for a spectrum comparison
  kConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace strongfield
