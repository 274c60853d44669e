#ifndef QREES_ERROR_HPP
#define QREES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qrees {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorCode {
    Parse,
    UnsupportedCharacteristic,
    ChartSplitRequired,
    NotTerminated,
    Precondition,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorCode::Precondition, what);
}

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return "PARSE_ERROR";
        case ErrorCode::UnsupportedCharacteristic: return "UNSUPPORTED_CHARACTERISTIC";
        case ErrorCode::ChartSplitRequired: return "CHART_SPLIT_REQUIRED";
        case ErrorCode::NotTerminated: return "NOT_TERMINATED";
        case ErrorCode::Precondition: return "PRECONDITION_VIOLATION";
    }
    return "UNKNOWN";
}

}  // namespace qrees

#endif
