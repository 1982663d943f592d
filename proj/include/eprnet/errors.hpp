// Exception hierarchy for eprnet. Every library error derives from
// eprnet::Error so callers can catch one type at the boundary.
#pragma once

#include <stdexcept>
#include <string>

namespace eprnet {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input matrix is not unitary within the repairable tolerance.
class NonUnitaryInput : public Error {
public:
    using Error::Error;
};

// Quadrature-form matrix fails the orthogonality or symplectic invariant.
class NonSymplecticInput : public Error {
public:
    using Error::Error;
};

// The feedback interconnection has no solution: (I - S22) is singular.
class IllPosedFeedback : public Error {
public:
    using Error::Error;
};

// (iwI - A) is singular at the requested frequency.
class ResonantFrequency : public Error {
public:
    using Error::Error;
};

// Gradient or line-search evaluation requested at a point where the
// closed-loop model cannot be built or A is singular.
class InfeasiblePoint : public Error {
public:
    using Error::Error;
};

// Retraction input is rank deficient; no nearest unitary is defined.
class RankDeficient : public Error {
public:
    using Error::Error;
};

// Optimizer start point fails the feasibility guard.
class InfeasibleStart : public Error {
public:
    using Error::Error;
};

// Malformed matrix / factor / config file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace eprnet
