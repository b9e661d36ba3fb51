#pragma once

#include <stdexcept>
#include <string>

namespace gts {

// Caller broke a precondition (bad arm index, reward outside [0,1], ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An experiment or session was configured inconsistently.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ContractViolation(what);
}

}  // namespace gts
