#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wlpower {

/// Malformed textual input (graph6, JSON edge lists, spec files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), message_(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t offset_;
};

/// A node or tuple argument that does not belong to its host graph.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An inconsistent GFWL spec or selector/arity combination.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured budget (states, nodes, time, search leaves) was exhausted.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t work_done = 0)
        : std::runtime_error(what), work_done_(work_done) {}

    std::size_t work_done() const noexcept { return work_done_; }

private:
    std::size_t work_done_;
};

/// A file that cannot be opened or read.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wlpower
