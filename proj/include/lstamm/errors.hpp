#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lstamm {

// Argument outside the mathematical domain of an operation (nonpositive
// liquidity, zero reserves, p_a >= p_b, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation called in a mode it does not support, e.g. the deterministic
// path with nonzero volatility.
class MisuseError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double last_residual)
        : std::runtime_error(what + " (last relative residual " + std::to_string(last_residual) + ")"),
          last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

class InsufficientLiquidity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input file. line/column are 1-based; 0 means
// "whole file" or "whole line".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string file, std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(format(file, line, column, message)),
          file_(std::move(file)), line_(line), column_(column) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& file, std::size_t line, std::size_t column,
                              const std::string& message) {
        std::string out = file;
        if (line > 0) out += ":" + std::to_string(line);
        if (column > 0) out += ":" + std::to_string(column);
        return out + ": " + message;
    }

    std::string file_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace lstamm
