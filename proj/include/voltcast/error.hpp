#pragma once

#include <stdexcept>
#include <string>

namespace voltcast {

/// Failure categories, mapped to CLI exit codes (usage=2, data=3, convergence=4).
enum class ErrorKind { usage, data, convergence };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error usage_error(const std::string& what) { return Error(ErrorKind::usage, what); }
inline Error data_error(const std::string& what) { return Error(ErrorKind::data, what); }
inline Error convergence_error(const std::string& what) { return Error(ErrorKind::convergence, what); }

}  // namespace voltcast
