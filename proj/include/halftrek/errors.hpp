#pragma once

#include <stdexcept>
#include <string>

namespace halftrek {

// Malformed graph or parameter input.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// Input exceeds a size bound of an exhaustive routine.
class capability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (e.g. cyclic input where acyclic is required).
class precondition_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A flow or witness that fails its own consistency checks.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear system at a parameter point that is not generic enough to solve reliably.
class nongeneric_error : public std::runtime_error {
public:
    nongeneric_error(int node, const std::string& what)
        : std::runtime_error(what), node_(node) {}
    // 0-based node whose system was singular, -1 if not node-specific.
    int node() const noexcept { return node_; }

private:
    int node_;
};

}  // namespace halftrek
