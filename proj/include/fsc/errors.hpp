#pragma once

#include <stdexcept>
#include <string>

namespace fsc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A conditional-probability row does not sum to one.
struct RowSumError : Error {
    std::string row_id;
    std::string actual_sum;  // exact rational, lowest terms
    RowSumError(std::string row, std::string sum)
        : Error("row " + row + " sums to " + sum + ", expected 1"),
          row_id(std::move(row)),
          actual_sum(std::move(sum)) {}
};

struct NegativeEntryError : Error {
    explicit NegativeEntryError(const std::string& where)
        : Error("negative probability entry at " + where) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("shape error: " + msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

struct ParamRange : Error {
    explicit ParamRange(const std::string& msg) : Error("parameter out of range: " + msg) {}
};

struct NotADistribution : Error {
    explicit NotADistribution(const std::string& msg)
        : Error("not a probability distribution: " + msg) {}
};

/// Enumeration over input blocks would exceed the configured cap.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error("enumeration budget exceeded: " + msg) {}
};

/// A caller-supplied monotone sequence regressed (caller bug).
struct MonotonicityViolation : Error {
    explicit MonotonicityViolation(const std::string& msg)
        : Error("monotonicity violation: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

}  // namespace fsc
