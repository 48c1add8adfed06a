#pragma once

#include <stdexcept>
#include <string>

namespace velsps {

// Invalid argument to a mathematical operation (negative time, zero distance, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inputs are individually valid but the collision model cannot represent them,
// for example a selection window longer than the reservation period.
class ModelDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace velsps
