#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

// Base for everything thrown by this library. std::invalid_argument is used
// directly for bad arguments; the types below carry failure modes that
// callers are expected to branch on.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input is structurally valid but exceeds what the implementation enumerates
// (e.g. a support set with more than 2^20 vertices).
struct capacity_error : error {
  explicit capacity_error(const std::string& what) : error(what) {}
};

// Rejection or search loops gave up after the attempt budget.
struct exhaustion_error : error {
  explicit exhaustion_error(const std::string& what) : error(what) {}
};

// A construction that should exist degenerated to zero or collapsed.
struct degenerate_error : error {
  explicit degenerate_error(const std::string& what) : error(what) {}
};

// A quantitative bound is vacuous for the requested parameters.
struct degenerate_bound_error : error {
  explicit degenerate_bound_error(const std::string& what) : error(what) {}
};

// Requested operation is not available for this space or dimension.
struct unsupported_error : error {
  explicit unsupported_error(const std::string& what) : error(what) {}
};

// File or stream failure while reading configs or writing reports.
struct io_error : error {
  explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace ortho
