#pragma once

#include <stdexcept>
#include <string>

namespace l2stokes {

/// Bad inputs: invalid parameters, unsupported models, out-of-range degrees.
/// The CLI maps these to exit code 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class unsupported_model_error : public validation_error {
public:
    using validation_error::validation_error;
};

class degree_error : public validation_error {
public:
    using validation_error::validation_error;
};

class parameter_error : public validation_error {
public:
    using validation_error::validation_error;
};

/// Failures of the numerical machinery itself: non-convergent quadrature,
/// zero bracketing, singular evaluations. The CLI maps these to exit code 3.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class quadrature_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class singular_evaluation_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class bracketing_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class mode_budget_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

/// A cross-check between two internal routes disagreed. Signals a bug in
/// this library, not new mathematics.
class inconsistency_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

} // namespace l2stokes
