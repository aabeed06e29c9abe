#pragma once

#include <stdexcept>
#include <string>

namespace seqrac {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Two states with (numerically) identical Bloch vectors have no Helstrom axis.
class DegeneratePair : public Error {
public:
    using Error::Error;
};

class DegenerateThreshold : public Error {
public:
    using Error::Error;
};

class ZeroProbabilityBranch : public Error {
public:
    using Error::Error;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

class AxisError : public Error {
public:
    using Error::Error;
};

class SearchExhausted : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace seqrac
