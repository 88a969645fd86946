#pragma once

#include <stdexcept>
#include <string>

namespace sdnapl {

// Caller-supplied input violated a precondition (bad table, malformed file
// content, out-of-range argument).  The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NegativeValueError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonNormalizedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyTableError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Branching ratio z2/z1 <= 1: the shell expansion has no growing solution.
class DegenerateBranchingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InfeasibleSequenceError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Filesystem trouble (open/read/write).  CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Defensive conditions that cannot occur on valid connected inputs.
// CLI exit code 4.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sdnapl
