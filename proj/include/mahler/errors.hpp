#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mahler {

/// Polynomial/point dimensions (nvars) that do not line up.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation that is undefined for the zero polynomial received one.
class ZeroPolynomial : public std::domain_error {
public:
    ZeroPolynomial() : std::domain_error("operation undefined for the zero polynomial") {}
};

/// An iterative method hit its iteration cap before meeting its tolerance.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial expression; `position` is a 0-based byte offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace mahler
