#pragma once

#include <stdexcept>

namespace phaserank {

// Error taxonomy shared across the library. The CLI maps these onto its
// exit-code contract: ConfigError -> 2, IoError -> 3, partial results -> 1.

struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct FormationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyTraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentRecordingsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UndefinedMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phaserank
