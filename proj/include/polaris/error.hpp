#pragma once
/* Error codes shared across the library.  Every throwing operation uses Error
   with a stable code string so the CLI can render "ERROR <cmd> <code>: <msg>". */

#include <stdexcept>
#include <string>

namespace polaris {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace polaris
