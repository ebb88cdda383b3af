#ifndef QBL_ERRORS_HPP
#define QBL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbl {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& w = "matrix is singular") : Error(w) {}
};

struct NotCompanion : Error {
    explicit NotCompanion(const std::string& w) : Error(w) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& w) : Error(w) {}
};

struct TailTooFat : Error {
    explicit TailTooFat(const std::string& w) : Error(w) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error(w) {}
};

struct KindMismatch : Error {
    explicit KindMismatch(const std::string& w = "mixing exact and floating series") : Error(w) {}
};

struct NotNilpotent : Error {
    explicit NotNilpotent(const std::string& w = "element has a unit component") : Error(w) {}
};

struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& w = "operands live over different algebras") : Error(w) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(w) {}
};

struct InvalidDimension : Error {
    explicit InvalidDimension(const std::string& w) : Error(w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(w) {}
};

struct PrecisionLoss : Error {
    explicit PrecisionLoss(const std::string& w) : Error(w) {}
};

} // namespace qbl

#endif
