#ifndef ERW_ERRORS_HPP
#define ERW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace erw {

// Input outside a documented precondition (bad parameter, parity mismatch,
// horizon mismatch, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a configured size cap and no override was given.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter lies in a regime the requested analysis does not support
// (p in {0, 1/2} or p > 3/4 for the normal-approximation diagnostics).
class unsupported_regime_error : public std::domain_error {
public:
    explicit unsupported_regime_error(const std::string& what) : std::domain_error(what) {}
};

// The estimator is undefined at the observed data point (S_n = 0).
class undefined_estimate_error : public std::domain_error {
public:
    explicit undefined_estimate_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace erw

#endif
