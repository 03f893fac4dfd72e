#pragma once

#include <stdexcept>
#include <string>

namespace longdoc {

// Values double as process exit codes for the command-line tool.
enum class ErrorKind : int {
    Internal = 1,
    Input = 2,     // unreadable or malformed input files
    Contract = 3,  // config validation, vocabulary and data-shape contracts
    Remote = 4,    // remote embedding provider failures
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(ErrorKind::Contract, what) {}
};

enum class RemoteFailure { Transport, ResponseShape, DimMismatch };

class RemoteError : public Error {
public:
    RemoteError(RemoteFailure failure, const std::string& what)
        : Error(ErrorKind::Remote, what), failure_(failure) {}
    RemoteFailure failure() const noexcept { return failure_; }

private:
    RemoteFailure failure_;
};

}  // namespace longdoc
