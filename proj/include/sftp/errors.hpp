#pragma once

#include <stdexcept>
#include <string>

namespace sftp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class SingularTransform : public Error {
public:
    SingularTransform(const std::string& what, double determinant)
        : Error(what + " (det = " + std::to_string(determinant) + ")"), determinant_(determinant) {}
    double determinant() const { return determinant_; }

private:
    double determinant_;
};

class PointAtInfinity : public Error {
public:
    using Error::Error;
};

class UndefinedPhase : public Error {
public:
    using Error::Error;
};

// Raised when peak geometry cannot pin down the requested unknowns.
class Underdetermined : public Error {
public:
    using Error::Error;
};

}  // namespace sftp
