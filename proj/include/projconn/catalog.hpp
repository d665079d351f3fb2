#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "projconn/geometry.hpp"
#include "projconn/special_functions.hpp"

namespace projconn {

struct ParamSpec {
    std::string name;
    double value = 0.0;  // default
    std::string range;
};

struct EntrySchema {
    std::string label;
    std::vector<ParamSpec> params;
    Chart chart;
    std::string singular_locus;
    std::string notes;
};

struct CatalogEntry {
    std::string label;
    std::map<std::string, double> params;
    Metric2 metric;
    std::optional<VectorField2> projective_field;
    std::string dini_partner;
    std::string notes;
    // largest |Im g_ij| left over by the complex-variable construction;
    // null for entries built in real arithmetic
    std::function<double(double, double)> imag_residual;
};

// Construct a catalog metric by label.  Omitted parameters take their
// documented defaults; unknown labels, unknown parameter names, and
// forbidden parameter values raise BadParam naming the violated constraint.
CatalogEntry make(const std::string& label, const std::map<std::string, double>& params = {});

std::vector<EntrySchema> list();

// Pair templates with user-supplied one-variable closures (which = 1 or 2
// selects the member of the pair).  The Jordan template needs Y' alongside Y
// because the metric coefficients contain the derivative explicitly.
CatalogEntry make_dini_liouville(int which, SmoothFn1 X, SmoothFn1 Y, double eps, Chart chart);
CatalogEntry make_dini_jordan(int which, SmoothFn1 Y, SmoothFn1 Yprime, Chart chart);
CatalogEntry make_dini_complex(int which, SmoothCFn1 h, Chart chart);

// Basis (sigma, sigma_bar, sigma_hat) of the degree-3 family at a point of
// the parameter sphere, as linear combinations of the sigmas of the three
// generator metrics.
std::array<SigmaField, 3> spherical_sigma(double theta, double phi);

}  // namespace projconn
