#pragma once

#include <stdexcept>
#include <string>

namespace netload {

// Error families map onto the CLI exit-code contract:
// ConfigError -> 1, DataError -> 2, TrainError -> 3, EvalError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct TrainError : Error {
    using Error::Error;
};
struct EvalError : Error {
    using Error::Error;
};

// dataio
struct FileNotFound : DataError {
    using DataError::DataError;
};
struct SchemaMismatch : DataError {
    using DataError::DataError;
};
struct EmptySeries : DataError {
    using DataError::DataError;
};
struct TimestampMismatch : DataError {
    using DataError::DataError;
};
struct EmptyInput : DataError {
    using DataError::DataError;
};
struct MissingWeatherColumn : DataError {
    using DataError::DataError;
};

// models
struct DimensionMismatch : DataError {
    using DataError::DataError;
};
struct EmptyTrainSet : TrainError {
    using TrainError::TrainError;
};
struct DivergenceDetected : TrainError {
    using TrainError::TrainError;
};
struct InvalidHyperparameter : TrainError {
    using TrainError::TrainError;
};

// attack
struct UnknownColumn : DataError {
    using DataError::DataError;
};
struct InvalidTarget : DataError {
    using DataError::DataError;
};
struct DegenerateStats : EvalError {
    using EvalError::EvalError;
};

// metrics
struct LengthMismatch : EvalError {
    using EvalError::EvalError;
};
struct AllPointsExcluded : EvalError {
    using EvalError::EvalError;
};
struct ZeroDenominator : EvalError {
    using EvalError::EvalError;
};

} // namespace netload
