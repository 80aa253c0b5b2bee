#pragma once

#include <stdexcept>
#include <string>

namespace trycolor {

// Invalid algorithm or generator parameters (bad Δ, d, k, ε, ...).
class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A run hit the engine round cap with nodes still undecided; carries the
// partial trace counters for diagnosis.
class TimeoutError : public std::runtime_error {
public:
    TimeoutError(const std::string& what, int rounds_executed, int still_active,
                 long long messages_sent = 0, int max_message_bits = 0)
        : std::runtime_error(what),
          rounds_executed_(rounds_executed),
          still_active_(still_active),
          messages_sent_(messages_sent),
          max_message_bits_(max_message_bits) {}
    int rounds_executed() const { return rounds_executed_; }
    int still_active() const { return still_active_; }
    long long messages_sent() const { return messages_sent_; }
    int max_message_bits() const { return max_message_bits_; }

private:
    int rounds_executed_;
    int still_active_;
    long long messages_sent_;
    int max_message_bits_;
};

// A state the underlying theory rules out; always an implementation bug.
class ContradictionError : public std::logic_error {
public:
    explicit ContradictionError(const std::string& what) : std::logic_error(what) {}
};

// Request exceeds a capacity bound (polynomial space, config-graph cap, ...).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Exact solver ran out of its configured expansion budget (verdict unknown,
// never wrong).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally inconsistent inputs (orientation over a non-edge, coloring of
// the wrong length, improper input coloring, ...).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trycolor
