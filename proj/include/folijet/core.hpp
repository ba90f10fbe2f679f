#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace folijet {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

// Absolute plus relative tolerance. Passed explicitly to every routine that
// compares numbers; there is no global default instance.
struct ToleranceConfig {
    double abs = 1e-12;
    double rel = 1e-9;
};

bool close(Complex a, Complex b, const ToleranceConfig& tol);
bool negligible(Complex a, double scale, const ToleranceConfig& tol);

// Rejects NaN and infinite parts.
Complex checked(Complex z, const char* what = "value");

enum class ErrorKind {
    input = 2,
    degenerate = 3,
    non_generic = 4,
    verification = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(ErrorKind::degenerate, msg) {}
};

struct NonGenericError : Error {
    explicit NonGenericError(const std::string& msg) : Error(ErrorKind::non_generic, msg) {}
};

struct VerificationError : Error {
    explicit VerificationError(const std::string& msg) : Error(ErrorKind::verification, msg) {}
};

// Raised when a truncated Laurent expansion is asked for a coefficient it
// does not know. Treated as a degenerate configuration by the CLI.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(ErrorKind::degenerate, msg) {}
};

}  // namespace folijet
