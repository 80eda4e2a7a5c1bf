#pragma once

#include <stdexcept>
#include <string>

namespace eqcoh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
public:
    explicit RingMismatch(const std::string& what) : Error("ring mismatch: " + what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/// A matrix entry whose degree disagrees with the shift bookkeeping.
class InhomogeneousEntry : public Error {
public:
    InhomogeneousEntry(std::size_t row, std::size_t col, long expected, const std::string& found)
        : Error("inhomogeneous entry at (" + std::to_string(row) + ", " + std::to_string(col) +
                "): expected degree " + std::to_string(expected) + ", found " + found),
          row_(row), col_(col), expected_(expected) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    long expected_degree() const noexcept { return expected_; }

private:
    std::size_t row_;
    std::size_t col_;
    long expected_;
};

class InvalidComplex : public Error {
public:
    explicit InvalidComplex(const std::string& what) : Error("invalid complex: " + what) {}
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& what) : Error("invalid spec: " + what) {}
};

class NotAField : public Error {
public:
    explicit NotAField(const std::string& what)
        : Error("operation requires field coefficients: " + what) {}
};

}  // namespace eqcoh
