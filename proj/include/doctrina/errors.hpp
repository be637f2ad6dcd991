#pragma once

#include <stdexcept>
#include <string>

namespace doctrina {

/// Base class for every error the engine raises deliberately.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data: dangling ids, duplicate names, bad references.
struct StructuralError : Error {
  using Error::Error;
};

/// A required chosen product (or tuple of products) is not in the window.
struct ProductUndefinedError : Error {
  using Error::Error;
};

/// The elementary structure delta is missing where an operation needs it.
struct DeltaMissingError : Error {
  using Error::Error;
};

/// A construction exceeded the configured window budget.
struct BudgetError : Error {
  using Error::Error;
};

/// A fact the engine relies on (provable from the construction) failed;
/// either the engine is wrong or the input window is too small to carry
/// the construction. The message says which.
struct EngineInvariantError : Error {
  using Error::Error;
};

} // namespace doctrina
