#pragma once

#include <stdexcept>
#include <string>

namespace smallball {

// Requested statistics cannot be resolved at the configured sample size
// (e.g. every epsilon in a small-ball run is projected to produce < 10 hits).
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smallball
