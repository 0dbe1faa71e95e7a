#pragma once

#include <stdexcept>
#include <string>

namespace xyz {

/// Thrown when a request exceeds a configured memory/enumeration budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xyz
