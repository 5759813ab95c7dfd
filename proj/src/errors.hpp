#pragma once

#include <stdexcept>
#include <string>

namespace vlift {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition or domain violation (bad config, mismatched shapes, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// Interaction too strong: a modified squared frequency is non-positive.
struct FrequencyCollapseError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Sampling box does not contain the state to the required boundary decay.
struct BoxTooSmallError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Quadrature / iteration failed to converge.
struct NumericError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace vlift
