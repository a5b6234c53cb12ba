#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oamix {

enum class ErrorKind {
    InvalidPermutation,
    SupportMismatch,
    InconsistentPWO,
    EmptySupport,
    AlreadyExpanded,
    InvalidAmount,
    KindMismatch,
    SpecError,
    Unsupported,
    SingularMatrix,
    DimensionMismatch,
    NothingToCheck,
    InsufficientDF,
    SchemaError,
    EmptyDesign,
    ValidationError,
    IOError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when an information matrix cannot be inverted. `columns` names the
/// model columns found to be linearly dependent on earlier ones, when known.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what, std::vector<std::string> columns = {})
        : Error(ErrorKind::SingularMatrix, what), columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }

private:
    std::vector<std::string> columns_;
};

}  // namespace oamix
