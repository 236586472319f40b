#pragma once

#include <stdexcept>
#include <string>

namespace mango {

// Shape or index mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the operation's domain (NaN/Inf entries, |alpha| > 1, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed file content; message names the byte offset.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss; message carries epoch/batch/term.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mango
