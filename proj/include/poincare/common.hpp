#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace poincare {

// Two tolerance regimes: point-level predicates accumulate little error,
// combinatorial decisions (cell incidence, essentiality) sit downstream of
// matrix products and LP margins.
struct Tolerances {
    double point = 1e-9;
    double combinatorial = 1e-7;
};

class error : public std::runtime_error {
public:
    error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw error(code, what);
}

inline void require(bool cond, const std::string& code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace poincare
