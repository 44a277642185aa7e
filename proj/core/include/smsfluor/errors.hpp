#pragma once

#include <stdexcept>
#include <string>

namespace smsfluor {

// Base class for every failure raised by the library. The CLI maps
// InvalidModel to a configuration error and everything else to a
// numerical failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* code() const noexcept { return "Error"; }
};

class InvalidModel : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "InvalidModel"; }
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "DimensionMismatch"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "InvalidArgument"; }
};

// The generator has a null space of dimension != 1 (reducible or
// disconnected configurational space).
class NullSpaceDegenerate : public Error {
public:
    NullSpaceDegenerate(const std::string& what, int nullity)
        : Error(what), nullity_(nullity) {}
    const char* code() const noexcept override { return "NullSpaceDegenerate"; }
    int nullity() const noexcept { return nullity_; }

private:
    int nullity_;
};

class SingularShift : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "SingularShift"; }
};

class ZeroIntensity : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "ZeroIntensity"; }
};

class ZeroCounts : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "ZeroCounts"; }
};

class NumericalFailure : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "NumericalFailure"; }
};

}  // namespace smsfluor
