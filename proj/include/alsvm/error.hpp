#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alsvm {

// Root of every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input text. line() is 1-based, 0 when not tied to a line.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line, const std::string& source = {})
        : Error(compose(what, line, source)), message_(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }
    // Description without the location prefix.
    const std::string& message() const noexcept { return message_; }

private:
    static std::string compose(const std::string& what, std::size_t line, const std::string& source) {
        std::string loc = source;
        if (line != 0) loc += (loc.empty() ? "line " : ":") + std::to_string(line);
        return loc.empty() ? what : loc + ": " + what;
    }

    std::string message_;
    std::size_t line_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Raised when a neg/pos ratio is requested with an empty class.
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

}  // namespace alsvm
