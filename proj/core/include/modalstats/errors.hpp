#pragma once

#include <stdexcept>
#include <string>

namespace modalstats {

/// Bad values or mismatched dimensions on an operation input.
class invalid_input_error : public std::runtime_error {
public:
  explicit invalid_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A series with zero spread where a normalized statistic is requested.
class degenerate_series_error : public std::runtime_error {
public:
  explicit degenerate_series_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Elementwise division by a structurally zero statistic.
class singular_statistic_error : public std::runtime_error {
public:
  explicit singular_statistic_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation applied to an object in the wrong state (e.g. normalizing twice).
class invalid_state_error : public std::runtime_error {
public:
  explicit invalid_state_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation defined only for a specific component count (e.g. 2D rotation).
class unsupported_dimension_error : public std::runtime_error {
public:
  explicit unsupported_dimension_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation hit an exact singularity or failed to converge.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or unreadable file content.
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace modalstats
