#ifndef LEVYGAS_ERRORS_HPP
#define LEVYGAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace levygas {

// Requested time lies beyond the simulated collision-time horizon.
class horizon_error : public std::runtime_error {
public:
  explicit horizon_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Local-time field and subordinator field were built on different grids.
class grid_error : public std::runtime_error {
public:
  explicit grid_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Stable-scale calibration could not reach the requested KS ceiling.
class calibration_error : public std::runtime_error {
public:
  explicit calibration_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid experiment configuration; message carries field-level diagnostics.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace levygas

#endif
