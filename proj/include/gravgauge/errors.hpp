#pragma once

#include <stdexcept>
#include <string>

namespace gravgauge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Stencil would leave the chart.
class BoundaryMarginError : public Error {
 public:
  using Error::Error;
};

class NumericDomainError : public Error {
 public:
  using Error::Error;
};

// Vielbein not invertible where it is needed.
class RegularityError : public Error {
 public:
  using Error::Error;
};

class TranslatedFieldSingular : public RegularityError {
 public:
  using RegularityError::RegularityError;
};

class SkewnessError : public Error {
 public:
  using Error::Error;
};

class IsometryError : public Error {
 public:
  using Error::Error;
};

class AntisymmetryError : public Error {
 public:
  using Error::Error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class OrientationError : public Error {
 public:
  using Error::Error;
};

class FlowSingularError : public Error {
 public:
  FlowSingularError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace gravgauge
