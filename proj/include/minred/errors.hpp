#pragma once

#include <stdexcept>
#include <string>

namespace minred {

// Domain-level failures that the CLI maps to exit code 2. The kind string is
// stable and appears verbatim in machine-readable error output.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace errkind {
inline constexpr const char* instability = "instability";
inline constexpr const char* non_convergence = "non_convergence";
inline constexpr const char* degenerate_roots = "degenerate_roots";
inline constexpr const char* repeated_root = "repeated_root";
inline constexpr const char* inexact_division = "inexact_division";
inline constexpr const char* zero_resultant = "zero_resultant";
inline constexpr const char* no_stable_form = "no_stable_form";
inline constexpr const char* factorization_failure = "factorization_failure";
inline constexpr const char* unsupported_constants = "unsupported_constants";
inline constexpr const char* degree_too_small = "degree_too_small";
}  // namespace errkind

}  // namespace minred
