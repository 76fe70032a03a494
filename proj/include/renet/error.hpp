#pragma once

#include <stdexcept>
#include <string>

namespace renet {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PosetError : public Error {
public:
    using Error::Error;
};

/// Raised when the single-round quotient of a pushout leaves a cycle in the order.
class AntisymmetryViolation : public PosetError {
public:
    using PosetError::PosetError;
};

class MapError : public Error {
public:
    using Error::Error;
};

class InvalidCube : public Error {
public:
    using Error::Error;
};

class NetError : public Error {
public:
    using Error::Error;
};

class UnknownTransition : public NetError {
public:
    using NetError::NetError;
};

class NotEnabled : public NetError {
public:
    using NetError::NetError;
};

class NotEnabledParallel : public NetError {
public:
    using NetError::NetError;
};

class InvalidMorphism : public NetError {
public:
    using NetError::NetError;
};

class InvalidRule : public NetError {
public:
    using NetError::NetError;
};

class GluingViolated : public NetError {
public:
    using NetError::NetError;
};

class ComplementNotPushout : public NetError {
public:
    using NetError::NetError;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace renet
