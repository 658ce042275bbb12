#pragma once

#include "wft/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wft {

enum class FieldType { GenuinelyNonlinear, LinearlyDegenerate };

/// Eigen-structure of A(u) = Dg(u)⁻¹Df(u). Column i of `right` is r_{i+1}, row i of `left` is l_{i+1}.
///
/// Normalization: genuinely nonlinear fields have Dλ·r = 1, linearly degenerate fields unit ℓ²
/// norm with the first nonzero component positive. Left eigenvectors satisfy l_i·r_j = δ_ij.
struct EigenData {
  State lambdas;
  Matrix right;
  Matrix left;
};

using VectorField = std::function<State(const State&)>;
using MatrixField = std::function<Matrix(const State&)>;
using EigenField = std::function<EigenData(const State&)>;
/// (u, family, parameter) -> state. Family indices are 1-based throughout the public API.
using CurveFn = std::function<State(const State&, int, double)>;

/// One conservation law ∂ₜg(u) + ∂ₓf(u) = 0 written in physical variables u.
struct SystemDef {
  std::string name;
  int n = 0;
  VectorField g;
  VectorField f;
  MatrixField dg;         // analytic Dg; empty -> central differences
  MatrixField df;         // analytic Df; empty -> central differences
  VectorField g_inverse;  // closed form; empty -> damped Newton from the domain center
  EigenField eigen;       // analytic eigen-structure; empty -> numerical
  std::vector<FieldType> fields;
  /// Closed-form rarefaction branch for genuinely nonlinear families, parametrized by the
  /// λ-increment. Empty -> RK4 integration of the integral curve.
  CurveFn rarefaction;
  /// Closed-form Hugoniot locus S(τ) with S(τ) = u + τ r_i(u) + O(τ²). Empty -> RH continuation.
  CurveFn hugoniot;
  /// Riemann coordinates z(u) with z_i increasing along r_i; present only for rich systems.
  VectorField riemann_coordinates;
  /// Physical admissibility of a state (e.g. ρ > 0); the domain box is the stricter run check.
  std::function<bool(const State&)> admissible;
  DomainBox domain{make_state({-1.0}), make_state({1.0}), make_state({0.0})};
  /// Upper bound on |λ| over the domain (1.2 × sampled maximum).
  double lambda_hat = 1.0;

  bool rich() const { return static_cast<bool>(riemann_coordinates); }
  bool genuinely_nonlinear(int family) const {
    return fields.at(static_cast<std::size_t>(family - 1)) == FieldType::GenuinelyNonlinear;
  }
};

struct SystemPair {
  SystemDef left;
  SystemDef right;
  std::string label;

  double lambda_hat() const { return std::max(left.lambda_hat, right.lambda_hat); }
};

State to_conserved(const SystemDef& sys, const State& u);
/// Inverts g; closed form when registered, otherwise damped Newton (tol 1e-12, 50 iterations).
State from_conserved(const SystemDef& sys, const State& w);

Matrix jacobian_g(const SystemDef& sys, const State& u);
Matrix jacobian_f(const SystemDef& sys, const State& u);
/// Central-difference Jacobian with step 1e-6·(1 + ‖u‖∞).
Matrix fd_jacobian(const VectorField& fn, const State& u, int rows);

/// A(u) = Dg(u)⁻¹Df(u). Throws SingularJacobian when cond(Dg) > 1e12.
Matrix char_matrix(const SystemDef& sys, const State& u);

EigenData eigen(const SystemDef& sys, const State& u);
/// Numerical eigen-structure of A(u), normalized as EigenData documents.
EigenData eigen_numeric(const SystemDef& sys, const State& u);
double characteristic_speed(const SystemDef& sys, const State& u, int family);
/// Gradient of λ_family by central differences.
State lambda_gradient(const SystemDef& sys, const State& u, int family);

/// max over `samples` deterministic domain points of ‖A(u) − Ã(u)‖∞.
double char_matrix_mismatch(const SystemPair& pair, int samples);

/// Compares the eigen-structure of DF(w), F = f∘g⁻¹, with (λ_i(u), Dg(u) r_i(u)) at w = g(u).
double conjugate_eigen_check(const SystemDef& sys, const State& u);

/// 1.2 × max |λ_i| over a grid of the domain box.
double estimate_lambda_hat(const SystemDef& sys);

/// Deterministic sample points of the box: corners, center, then a low-discrepancy sequence.
std::vector<State> sample_domain(const DomainBox& box, int count);

} // namespace wft
