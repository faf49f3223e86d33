#ifndef NSTRATA_ERRORS_HPP
#define NSTRATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nstrata
{

// Malformed textual input (group specs, rationals, torus points).
class ParseError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally well-formed input that violates a mathematical constraint,
// e.g. a Cartan block that is not a Cartan matrix, or an invalid Levi index.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An operation's precondition does not hold (e.g. codim with nu not <= mu).
class PreconditionError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// An enumeration guard was exceeded (orbit size, box size, subset count).
class ResourceLimitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Seeing this indicates a bug.
class InvariantViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace nstrata

#endif
