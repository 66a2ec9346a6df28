#pragma once

#include <stdexcept>
#include <string>

namespace imcflab {

enum class ErrorKind {
  Order,           // curvature order outside the admissible range
  Dimension,       // bad dimension / vector length
  Domain,          // non-finite or otherwise invalid input value
  Index,           // index list length mismatch
  ConeViolation,   // input outside the cone an operation requires
  Discretization,  // grid too coarse or malformed
  Sampling,        // rejection sampler could not produce a usable draw
  Series,          // monitor series too short / irregular
  Hypothesis,      // flow start violates the requested convexity class
  FlowBreakdown,   // H <= threshold somewhere on the surface
  Instability,     // non-finite state after a time step
  Parse,           // malformed config or surface file
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Order: return "order";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Index: return "index";
    case ErrorKind::ConeViolation: return "cone violation";
    case ErrorKind::Discretization: return "discretization";
    case ErrorKind::Sampling: return "sampling";
    case ErrorKind::Series: return "series";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::FlowBreakdown: return "flow breakdown";
    case ErrorKind::Instability: return "instability";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace imcflab
