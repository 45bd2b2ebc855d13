#pragma once

#include <stdexcept>
#include <string>

namespace bpst {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// p divides the denominator of a result that was required to stay in Z_(p).
struct NonPLocalResult : Error {
    explicit NonPLocalResult(const std::string& what) : Error("result not p-local: " + what) {}
};

struct NonzeroConstantTerm : Error {
    NonzeroConstantTerm() : Error("series substitution requires zero constant term") {}
};

struct NotReversible : Error {
    NotReversible() : Error("series reversion requires leading coefficient 1 in degree 1") {}
};

struct MismatchedContext : Error {
    explicit MismatchedContext(const std::string& what) : Error("mismatched context: " + what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error("index out of range: " + what) {}
};

struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& what) : Error("truncation too small: " + what) {}
};

struct UnsupportedContext : Error {
    explicit UnsupportedContext(const std::string& what) : Error("unsupported context: " + what) {}
};

struct NonUnitParameter : Error {
    explicit NonUnitParameter(const std::string& what) : Error("parameter must be a p-local unit: " + what) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
};

} // namespace bpst
