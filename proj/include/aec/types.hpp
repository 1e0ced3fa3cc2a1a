#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace aec {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Colour = std::int32_t;

inline constexpr Colour kUncoloured = -1;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid arguments or violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed graph or colouring files.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A bounded generator or search ran out of attempts.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace aec
