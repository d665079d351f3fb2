#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace projconn {

// All numeric failure modes carry a message naming the offending quantity.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMetric : Error {
    using Error::Error;
};
struct DegenerateSigma : Error {
    using Error::Error;
};
struct NullDirection : Error {
    using Error::Error;
};
struct VerticalTangent : Error {
    using Error::Error;
};
struct BadParam : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct ZeroAction : Error {
    using Error::Error;
};
struct OnEigenspace : Error {
    using Error::Error;
};
struct ExceptionalPoint : Error {
    using Error::Error;
};
struct NoSolution : Error {
    using Error::Error;
};
struct NoRealRoot : Error {
    using Error::Error;
};
struct AtVerticalTangent : Error {
    using Error::Error;
};

// Raised when an integration run hits the chart boundary or the singular
// locus before the requested endpoint; carries the last in-chart record.
struct LeftChart : Error {
    double at = 0.0;
    std::vector<double> state;

    LeftChart(const std::string& what, double at_, std::vector<double> state_)
        : Error(what), at(at_), state(std::move(state_)) {}
};

struct StepUnderflow : Error {
    using Error::Error;
};

}  // namespace projconn
