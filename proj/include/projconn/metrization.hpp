#pragma once

#include <array>
#include <vector>

#include "projconn/geometry.hpp"

namespace projconn {

// Normalized action of the symmetry on a two-dimensional metrization space,
// written on coefficient pairs: du/dt = N u after dividing X by `scale` and
// changing basis by P (M/scale = P N P^{-1}).  The generators are
//   kind 1: N = diag(lambda, 1), |lambda| >= 1
//   kind 2: N = [[1,0],[1,1]]            (flow u1' = e^t u1, u2' = t e^t u1 + e^t u2)
//   kind 3: N = [[lambda,-1],[1,lambda]], lambda >= 0
struct LieAction {
    int kind = 0;
    double lambda = 0.0;
    double scale = 1.0;
    Mat2 P;
    Mat2 N;
};

// Distinguished coordinates on a component of the essential space: s moves
// with the flow (s -> s + t, mod 2pi for kind 3), u labels the orbit.
struct OrbitCoords {
    double s = 0.0;
    double u = 0.0;
    int component = 0;
};

LieAction classify(const Mat2& M);

// exp(tN) applied to a coefficient pair in the normalized basis
Vec2 pullback_flow(const LieAction& a, const Vec2& u, double t);

OrbitCoords distinguished_coords(const LieAction& a, const Vec2& u);
Vec2 coefficients_from_distinguished(const LieAction& a, const OrbitCoords& c);

SigmaField sigma_from_distinguished(const LieAction& a, const OrbitCoords& c,
                                    const SigmaField& s1, const SigmaField& s2);

bool orbit_equivalent(const LieAction& a, const Vec2& p, const Vec2& q, double tol = 1e-9);

int component_count(const LieAction& a);

// flow invariant |ui|^{lj} / |uj|^{li} of a pair of coefficient components
// carrying eigenvalues li, lj
double pairwise_invariant(double ui, double uj, double li, double lj);

// Coefficient triple of the degree-3 family at flow time r from the sphere
// point (theta, phi); the six axis points are homothetic and rejected.
std::array<double, 3> dom3_parametrize(double r, double theta, double phi);

std::array<double, 3> dom3_eigenvalues();

// Least-squares fit of a polynomial field X (total degree <= degree per
// component) from lie_derivative_sigma(sk, X) = eigs[k] sk, collocated on a
// 7x7 grid over basis[0].chart.  Throws NoSolution if the relative residual
// exceeds 1e-6.
VectorField2 recover_projective_field(const std::vector<SigmaField>& basis,
                                      const std::vector<double>& eigs, int degree,
                                      double* relative_residual = nullptr);

}  // namespace projconn
