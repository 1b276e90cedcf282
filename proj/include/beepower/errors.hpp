#pragma once

#include <stdexcept>
#include <string>

namespace beepower {

// Base for everything this library throws on bad input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed trace files or scenario config; carries file/line context in the message.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::string& file, std::size_t line, const std::string& msg)
        : Error(file + ":" + std::to_string(line) + ": " + msg) {}
};

// Contract violations against a model: unknown task/peripheral/link, invalid parameters.
class ModelError : public Error {
public:
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

// A computed result violated an internal invariant; indicates a bug, mapped to exit code 3.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace beepower
