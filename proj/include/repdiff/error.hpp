#pragma once

#include <stdexcept>
#include <string>

namespace repdiff {

// Raised when a certified decision (sign, floor, comparison, ...) cannot be
// made from the current enclosure.  Retry loops catch this and re-evaluate at
// doubled precision; see refine() in ball.hpp.  Derives from std::domain_error
// because an enclosure touching a function's domain boundary is the common way
// this arises.
class undecidable_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The adaptive precision policy ran out of headroom without reaching a
// certified decision.
class precision_exhausted_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No usable continued-fraction convergent produced a positive reduction gap;
// the instance needs a different treatment than the implemented lemma.
class reduction_failed_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected configuration or argument values.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace repdiff
