#pragma once

#include <stdexcept>
#include <string>

namespace msets {

// Base class for every domain failure reported by the library. Bad numeric
// parameters (k = 0, negative ranks, ...) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInLattice : public Error {
 public:
  using Error::Error;
};

class NotSublattice : public Error {
 public:
  using Error::Error;
};

class NotFullSublattice : public Error {
 public:
  using Error::Error;
};

class PrimeDividesIndex : public Error {
 public:
  using Error::Error;
};

class DescriptorError : public Error {
 public:
  using Error::Error;
};

class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

class MissingClassifyingMap : public Error {
 public:
  using Error::Error;
};

class CollapseNotJustified : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedCondition : public Error {
 public:
  using Error::Error;
};

class Cancelled : public Error {
 public:
  Cancelled() : Error("operation cancelled") {}
};

}  // namespace msets
