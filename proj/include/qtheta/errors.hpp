#pragma once

#include <stdexcept>
#include <string>

namespace qtheta {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation
// (|q| too close to 1, nonpositive base of a fractional power, k >= 1 in K, ...).
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// The requested accuracy cannot be certified: recomputation at higher
// precision disagreed, or a search lacks the digits to certify its answer.
struct precision_error : error {
    explicit precision_error(const std::string& msg) : error(msg) {}
};

// A built-in consistency check failed (two independent routes to the same
// quantity disagreed, or a root selection found no match).
struct verification_error : error {
    explicit verification_error(const std::string& msg) : error(msg) {}
};

// Malformed expression or corpus text; position is a 0-based offset.
struct parse_error : error {
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Filesystem trouble while reading a corpus or writing a report.
struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

// Cooperative cancellation observed by a long-running search.
struct cancelled_error : error {
    cancelled_error() : error("operation cancelled") {}
};

} // namespace qtheta
