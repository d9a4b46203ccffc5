#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semrel {

/// Malformed or inconsistent input data (files, datasets, caches).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  DataError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace semrel
