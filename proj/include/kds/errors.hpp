#pragma once

#include <stdexcept>
#include <string>

namespace kds {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// |<D>| too small for a normalized squeezing factor to exist.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class NotAnExtremumTime : public Error {
 public:
  using Error::Error;
};

class AsymmetricAmplitudes : public Error {
 public:
  using Error::Error;
};

class TruncationTooSevere : public Error {
 public:
  using Error::Error;
};

class NormDrift : public Error {
 public:
  using Error::Error;
};

/// Population leaked into the top Fock shells; the cutoff is too small for the requested time.
class TailOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace kds
