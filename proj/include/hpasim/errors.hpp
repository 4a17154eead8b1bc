#pragma once

#include <stdexcept>
#include <string>

namespace hpasim {

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario configuration violates an invariant. `field()` names the
/// offending field (e.g. "threshold", "demand_weight").
class ConfigError : public SimError {
public:
    ConfigError(std::string field, const std::string& message)
        : SimError(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public SimError {
public:
    IoError(std::string path, const std::string& message)
        : SimError(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class TargetUnreachable : public SimError {
public:
    using SimError::SimError;
};

class CapacityInversion : public SimError {
public:
    using SimError::SimError;
};

class ZeroReplicas : public SimError {
public:
    using SimError::SimError;
};

/// Replica-bound or conservation invariant broken inside the engine.
class InvariantViolation : public SimError {
public:
    using SimError::SimError;
};

}  // namespace hpasim
