#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracsolve {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// --- special functions ---

/// Gamma evaluated at zero or a negative integer.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Result exceeds the floating-point range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Series did not meet its tail bound within the term cap.
class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Cancellation destroyed too many digits; the result would be silently wrong.
class PrecisionLoss : public Error {
public:
  using Error::Error;
};

/// Mittag-Leffler parameters violate their invariants.
class InvalidParams : public Error {
public:
  using Error::Error;
};

// --- fractional operators ---

class InvalidOrder : public Error {
public:
  using Error::Error;
};

// --- spectral ---

/// Space grid too coarse for the requested truncation (M < 2K).
class GridTooCoarse : public Error {
public:
  using Error::Error;
};

// --- direct problem ---

/// Source fails every admissible compatibility profile and no waiver was given.
class IncompatibleSource : public Error {
public:
  using Error::Error;
};

// --- inverse problem ---

/// A reconstruction denominator fell below the configured floor.
class DegenerateDenominator : public Error {
public:
  DegenerateDenominator(const std::string& msg, std::vector<int> offending)
      : Error(msg), modes(std::move(offending)) {}

  std::vector<int> modes;
};

// --- configuration ---

class ParseError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace fracsolve
