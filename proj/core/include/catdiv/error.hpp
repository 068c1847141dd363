/**
 * @file error.hpp
 * @brief Error type shared by every catdiv module
 */

#ifndef CATDIV_ERROR_HPP
#define CATDIV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace catdiv {

enum class ErrorCode {
    InvalidK,
    InvalidMeasure,
    InvalidFraction,
    InvalidParameter,
    DivergentIntegral,
    QuadratureFailure,
    NoRoot,
    BarrierConditionViolated,
    DegenerateLog,
    SignViolation,
    NegativeSurplus,
    ConfigInvalid,
    ParseError,
    ValidationError,
    IoError,
};

/// Stable identifier for an error code ("InvalidK", "NoRoot", ...).
std::string_view to_string(ErrorCode code) noexcept;

/**
 * Exception carrying a machine-checkable code next to the message.
 *
 * what() is prefixed with the code name so CLI output and sweep tables
 * stay greppable.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace catdiv

#endif  // CATDIV_ERROR_HPP
