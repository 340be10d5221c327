#pragma once

#include <stdexcept>
#include <string>

namespace carlitz {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct TowerMismatch : Error {
    explicit TowerMismatch(const std::string& msg) : Error(msg) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg) : Error(msg) {}
};

struct DivergentEvaluation : Error {
    int term_index;
    explicit DivergentEvaluation(const std::string& msg, int idx = -1)
        : Error(msg), term_index(idx) {}
};

struct OutOfRegion : Error {
    explicit OutOfRegion(const std::string& msg) : Error(msg) {}
};

struct NotReducible : Error {
    explicit NotReducible(const std::string& msg) : Error(msg) {}
};

struct DepthInsufficient : Error {
    int suggested_depth;
    explicit DepthInsufficient(const std::string& msg, int suggested = -1)
        : Error(msg), suggested_depth(suggested) {}
};

struct SingularRecursion : Error {
    explicit SingularRecursion(const std::string& msg) : Error(msg) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace carlitz
