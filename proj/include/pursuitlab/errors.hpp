#pragma once

#include <stdexcept>
#include <string>

namespace pursuitlab {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shapes disagree, or a count is outside the range the operation supports.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A column set that must be full rank is not.
class RankDeficient : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

// A candidate column lies (numerically) in the span of the selected set.
class DegenerateColumn : public Error {
public:
    using Error::Error;
};

// Subset enumeration would exceed the configured guard.
class TooLarge : public Error {
public:
    using Error::Error;
};

class NotUnitColumns : public Error {
public:
    using Error::Error;
};

// The probed index already belongs to the subset it is probed against.
class IndexInSet : public Error {
public:
    using Error::Error;
};

// A column with (numerically) zero norm cannot be normalized.
class ZeroColumn : public Error {
public:
    using Error::Error;
};

// Scalar argument outside its documented domain (step sizes, rho, L, delta,
// scale factors, empty grids, ...). The message says which one.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed input file; message carries file and line.
class ParseError : public Error {
public:
    using Error::Error;
};

}
