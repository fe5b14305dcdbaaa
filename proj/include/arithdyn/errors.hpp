// Exception types shared by all modules. The CLI maps them to exit codes.
#ifndef ARITHDYN_ERRORS_HPP
#define ARITHDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arithdyn {

// A bounded search ran out of budget without deciding the question.
class unresolved_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested accuracy exceeds what the working precision can certify.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter sits within the decision resolution of a threshold.
class boundary_undecided : public unresolved_error {
public:
    using unresolved_error::unresolved_error;
};

} // namespace arithdyn

#endif
