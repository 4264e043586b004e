#ifndef KURANISHI_ERROR_HPP
#define KURANISHI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kuranishi {

/// Library error with a stable machine-readable code (e.g. "RingMismatch",
/// "NotAUnit"). The CLI maps codes to exit status 2; tests match on them.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what)
: std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what)
{
    throw Error(std::move(code), what);
}

} // namespace kuranishi

#endif
