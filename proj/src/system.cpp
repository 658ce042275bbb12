#include "wft/system.hpp"
#include "wft/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wft {

namespace {

double fd_step(const State& u, double scale) { return scale * (1.0 + u.cwiseAbs().maxCoeff()); }

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

State sorted_real_eigenvalues(const Matrix& a, Matrix* vectors) {
  Eigen::EigenSolver<Matrix> solver(a, vectors != nullptr);
  const auto values = solver.eigenvalues();
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  std::vector<int> order(static_cast<std::size_t>(a.rows()));
  std::iota(order.begin(), order.end(), 0);
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (std::abs(values(k).imag()) > 1e-10 * scale)
      throw Error(ErrorCode::NotStrictlyHyperbolic, "A(u) has complex eigenvalues");
  std::sort(order.begin(), order.end(), [&](int x, int y) { return values(x).real() < values(y).real(); });
  State out(a.rows());
  if (vectors) vectors->resize(a.rows(), a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    out(k) = values(order[static_cast<std::size_t>(k)]).real();
    if (vectors) vectors->col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]).real();
  }
  return out;
}

void check_gap(const State& lambdas) {
  for (Eigen::Index k = 1; k < lambdas.size(); ++k)
    if (lambdas(k) - lambdas(k - 1) < 1e-8)
      throw Error(ErrorCode::NotStrictlyHyperbolic, "eigenvalue gap below 1e-8");
}

Eigen::Index first_nonzero(const State& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (std::abs(v(k)) > 1e-12 * v.cwiseAbs().maxCoeff()) return k;
  return 0;
}

} // namespace

State to_conserved(const SystemDef& sys, const State& u) { return sys.g(u); }

State from_conserved(const SystemDef& sys, const State& w) {
  if (sys.g_inverse) return sys.g_inverse(w);

  State u = sys.domain.center();
  State res = sys.g(u) - w;
  const double target = 1e-14 * (1.0 + w.cwiseAbs().maxCoeff());
  for (int it = 0; it < 50 && res.cwiseAbs().maxCoeff() > target; ++it) {
    const Matrix jac = jacobian_g(sys, u);
    const State step = jac.colPivHouseholderQr().solve(res);
    double damping = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, damping *= 0.5) {
      const State trial = u - damping * step;
      if (sys.admissible && !sys.admissible(trial)) continue;
      const State trial_res = sys.g(trial) - w;
      if (trial_res.cwiseAbs().maxCoeff() < res.cwiseAbs().maxCoeff()) {
        u = trial;
        res = trial_res;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(res.cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + w.cwiseAbs().maxCoeff())))
    throw Error(ErrorCode::NonInvertible, "Newton inversion of g did not converge in " + sys.name);
  return u;
}

Matrix fd_jacobian(const VectorField& fn, const State& u, int rows) {
  const double h = fd_step(u, 1e-6);
  Matrix jac(rows, u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    State up = u, dn = u;
    up(j) += h;
    dn(j) -= h;
    jac.col(j) = (fn(up) - fn(dn)) / (2.0 * h);
  }
  return jac;
}

Matrix jacobian_g(const SystemDef& sys, const State& u) { return sys.dg ? sys.dg(u) : fd_jacobian(sys.g, u, sys.n); }

Matrix jacobian_f(const SystemDef& sys, const State& u) { return sys.df ? sys.df(u) : fd_jacobian(sys.f, u, sys.n); }

Matrix char_matrix(const SystemDef& sys, const State& u) {
  const Matrix dg = jacobian_g(sys, u);
  Eigen::JacobiSVD<Matrix> svd(dg);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > 1e12)
    throw Error(ErrorCode::SingularJacobian, "Dg(u) is numerically singular in " + sys.name);
  return dg.partialPivLu().solve(jacobian_f(sys, u));
}

EigenData eigen_numeric(const SystemDef& sys, const State& u) {
  const Matrix a = char_matrix(sys, u);
  Matrix vectors;
  EigenData out;
  out.lambdas = sorted_real_eigenvalues(a, &vectors);
  check_gap(out.lambdas);
  out.right = vectors;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    State r = out.right.col(i);
    r /= r.norm();
    if (sys.fields.at(static_cast<std::size_t>(i)) == FieldType::GenuinelyNonlinear) {
      const double h = fd_step(u, 1e-6);
      const double lp = sorted_real_eigenvalues(char_matrix(sys, u + h * r), nullptr)(i);
      const double lm = sorted_real_eigenvalues(char_matrix(sys, u - h * r), nullptr)(i);
      const double dlr = (lp - lm) / (2.0 * h);
      if (std::abs(dlr) < 1e-10)
        throw Error(ErrorCode::NotStrictlyHyperbolic, "genuinely nonlinear field with vanishing Dλ·r");
      r /= dlr;
    } else if (r(first_nonzero(r)) < 0.0) {
      r = -r;
    }
    out.right.col(i) = r;
  }
  out.left = out.right.inverse();
  return out;
}

EigenData eigen(const SystemDef& sys, const State& u) {
  if (!sys.eigen) return eigen_numeric(sys, u);
  EigenData out = sys.eigen(u);
  check_gap(out.lambdas);
  return out;
}

double characteristic_speed(const SystemDef& sys, const State& u, int family) {
  return eigen(sys, u).lambdas(family - 1);
}

State lambda_gradient(const SystemDef& sys, const State& u, int family) {
  const double h = fd_step(u, 1e-6);
  State grad(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    State up = u, dn = u;
    up(j) += h;
    dn(j) -= h;
    grad(j) = (characteristic_speed(sys, up, family) - characteristic_speed(sys, dn, family)) / (2.0 * h);
  }
  return grad;
}

std::vector<State> sample_domain(const DomainBox& box, int count) {
  static constexpr int kPrimes[] = {2, 3, 5};
  const int n = box.dim();
  std::vector<State> pts;
  pts.push_back(box.center());
  for (int mask = 0; mask < (1 << n); ++mask) {
    State t(n);
    for (int k = 0; k < n; ++k) t(k) = (mask >> k) & 1;
    pts.push_back(box.point(t));
  }
  for (int idx = 1; static_cast<int>(pts.size()) < count; ++idx) {
    State t(n);
    for (int k = 0; k < n; ++k) t(k) = halton(idx, kPrimes[k]);
    pts.push_back(box.point(t));
  }
  pts.resize(static_cast<std::size_t>(std::max(count, 1)));
  return pts;
}

double char_matrix_mismatch(const SystemPair& pair, int samples) {
  if (samples < 1) throw Error(ErrorCode::BadConfig, "char_matrix_mismatch needs at least one sample");
  double worst = 0.0;
  for (const auto& u : sample_domain(pair.left.domain, samples)) {
    const Matrix diff = char_matrix(pair.left, u) - char_matrix(pair.right, u);
    worst = std::max(worst, diff.cwiseAbs().rowwise().sum().maxCoeff());
  }
  return worst;
}

double conjugate_eigen_check(const SystemDef& sys, const State& u) {
  const State w = sys.g(u);
  const VectorField flux_of_w = [&](const State& x) { return sys.f(from_conserved(sys, x)); };
  const double h = 1e-5 * (1.0 + w.cwiseAbs().maxCoeff());
  Matrix dF(sys.n, sys.n);
  for (int j = 0; j < sys.n; ++j) {
    State up = w, dn = w;
    up(j) += h;
    dn(j) -= h;
    dF.col(j) = (flux_of_w(up) - flux_of_w(dn)) / (2.0 * h);
  }
  Matrix vectors;
  const State big_lambda = sorted_real_eigenvalues(dF, &vectors);
  const EigenData ed = eigen(sys, u);
  const Matrix dg = jacobian_g(sys, u);
  double residual = 0.0;
  for (int i = 0; i < sys.n; ++i) {
    residual = std::max(residual, std::abs(big_lambda(i) - ed.lambdas(i)));
    State expected = dg * ed.right.col(i);
    expected /= expected.norm();
    State got = vectors.col(i);
    got /= got.norm();
    const double mismatch = std::min((got - expected).cwiseAbs().maxCoeff(), (got + expected).cwiseAbs().maxCoeff());
    residual = std::max(residual, mismatch);
  }
  return residual;
}

double estimate_lambda_hat(const SystemDef& sys) {
  double top = 0.0;
  for (const auto& u : sample_domain(sys.domain, 256)) top = std::max(top, eigen(sys, u).lambdas.cwiseAbs().maxCoeff());
  return top > 0.0 ? 1.2 * top : 1.0;
}

} // namespace wft
