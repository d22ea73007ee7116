#pragma once

#include <stdexcept>
#include <string>

namespace mn {

// Error categories map 1:1 onto CLI exit codes (see tools/mn.cpp):
//   parse_error -> 2, data_error -> 3, inconsistency_error -> 4, resource_error -> 5.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct inconsistency_error : std::runtime_error {
    explicit inconsistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an enumeration exceeds a configured cap (e.g. minor counts);
// carries the offending count so callers can report it.
struct resource_error : std::runtime_error {
    resource_error(const std::string& msg, unsigned long long count)
        : std::runtime_error(msg), count(count) {}
    unsigned long long count;
};

} // namespace mn
