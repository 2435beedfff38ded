#pragma once

#include <stdexcept>
#include <string>

namespace genbound {

// Malformed polynomial text; carries a character position when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    explicit parse_error(const std::string& what)
        : std::runtime_error(what), pos(std::string::npos) {}
    std::size_t pos;
};

// Argument outside a function's mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A check was requested beyond the range the norm table covers.
class coverage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent evaluation routes disagreed; a numeric or logic fault.
class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A resource budget (memory, table size) would be exceeded.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace genbound
