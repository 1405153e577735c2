#pragma once

#include <stdexcept>
#include <string>

namespace bd3 {

// Error categories mirror the CLI exit codes and the C-API status codes:
// io_error -> 1, precondition_error -> 2, internal_error -> 3.

// Finer-grained cause carried by io_error so the C API can report distinct
// codes for file, parse, version and format problems.
enum class IoCode { File = 0, Parse, Version, Format };

class io_error : public std::runtime_error {
public:
    io_error(IoCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    IoCode code() const { return code_; }

private:
    IoCode code_;
};

class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bd3
