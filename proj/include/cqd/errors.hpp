#pragma once

#include <stdexcept>
#include <string>

namespace cqd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CQD_DEFINE_ERROR(Name)           \
    class Name : public Error {          \
    public:                              \
        using Error::Error;              \
    }

// core
CQD_DEFINE_ERROR(EmptyPopulation);
CQD_DEFINE_ERROR(InvalidGenome);
CQD_DEFINE_ERROR(FeasibilityMismatch);

// fi2pop
CQD_DEFINE_ERROR(NotInfeasible);
CQD_DEFINE_ERROR(EmptyRun);
CQD_DEFINE_ERROR(InitFailure);

// sifa
CQD_DEFINE_ERROR(NoOffspringYet);
CQD_DEFINE_ERROR(NoData);
CQD_DEFINE_ERROR(FeatureDimError);
CQD_DEFINE_ERROR(NonFiniteTarget);

// qd
CQD_DEFINE_ERROR(InvalidBehavior);
CQD_DEFINE_ERROR(EmptyGrid);

// domains
CQD_DEFINE_ERROR(InvalidStructure);
CQD_DEFINE_ERROR(GenomeMismatch);

// harness
CQD_DEFINE_ERROR(SeedMismatch);
CQD_DEFINE_ERROR(IoError);

/// Invalid experiment configuration; `field()` is the dotted path of the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

#undef CQD_DEFINE_ERROR

}  // namespace cqd
