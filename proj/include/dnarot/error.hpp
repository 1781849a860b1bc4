#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnarot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or argument. Line is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Fewer than two symbols with a nonzero count.
class DegenerateSourceError : public Error {
public:
    using Error::Error;
};

/// A symbol has no codeword. Position is the index in the source sequence.
class CoverageError : public Error {
public:
    CoverageError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Corrupt or truncated nucleotide stream. Offset is the first failing nucleotide.
class DecodeError : public Error {
public:
    DecodeError(const std::string& what, std::size_t offset)
        : Error(what + " at nucleotide " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace dnarot
