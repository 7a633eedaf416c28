#pragma once

#include <stdexcept>
#include <string>

namespace chm {

/// Invalid map parameters, malformed input files, unknown gallery names.
class InvalidSystemError : public std::runtime_error {
public:
    explicit InvalidSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource limit (point budget, subdivision node budget) was hit.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::size_t limit, std::size_t requested)
        : std::runtime_error(what), limit(limit), requested(requested) {}
    std::size_t limit;
    std::size_t requested;
};

/// Geometry bracketing failed (refinement depth too shallow for the contraction ratios).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chm
