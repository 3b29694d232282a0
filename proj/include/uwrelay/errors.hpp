#pragma once

#include <stdexcept>
#include <string>

namespace uwrelay {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation (f <= 0, l <= 0, ...).
class DomainError : public Error {
   public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// The attenuation-noise minimum sits on the edge of the frequency search window.
class BoundaryMinimizerError : public Error {
   public:
    explicit BoundaryMinimizerError(const std::string& msg) : Error(msg) {}
};

/// A 3-dB band edge could not be bracketed inside the search window.
class BandTruncationError : public Error {
   public:
    explicit BandTruncationError(const std::string& msg) : Error(msg) {}
};

/// Least-squares design matrix does not have full column rank.
class RankError : public Error {
   public:
    explicit RankError(const std::string& msg) : Error(msg) {}
};

/// A fitted model violates the admissible parameter ranges.
class ValidationError : public Error {
   public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Inconsistent inputs, e.g. a model fitted at a different target SNR.
class ConfigurationError : public Error {
   public:
    explicit ConfigurationError(const std::string& msg) : Error(msg) {}
};

/// A threshold sweep found no transition inside the supplied grid.
class BracketError : public Error {
   public:
    explicit BracketError(const std::string& msg) : Error(msg) {}
};

}  // namespace uwrelay
