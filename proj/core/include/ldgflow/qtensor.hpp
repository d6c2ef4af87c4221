#pragma once

// Algebra of symmetric traceless d x d tensors (d = 2 or 3) expressed in an
// orthonormal matrix basis, the modified Landau-de Gennes bulk potential with
// its first two derivatives, and pointwise diagnostics (largest eigenpair,
// biaxiality).

#include <array>
#include <cstddef>
#include <span>
#include <utility>

namespace ldg {

// Number of independent coefficients of a symmetric traceless d x d tensor.
constexpr int coeff_count(int dim) noexcept { return dim == 2 ? 2 : 5; }

// Coefficient vector of a symmetric traceless tensor: Q = sum_i c[i] E^i.
// Fixed capacity 5, active length 2 (d=2) or 5 (d=3). Because the basis is
// orthonormal in the Frobenius inner product, |Q|_F equals the Euclidean norm
// of the coefficients.
class QCoeffs {
public:
  QCoeffs() = default;
  explicit QCoeffs(int dim) : n_(coeff_count(dim)) {}

  int size() const { return n_; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double* data() { return c_.data(); }
  const double* data() const { return c_.data(); }
  std::span<double> span() { return {c_.data(), static_cast<std::size_t>(n_)}; }
  std::span<const double> span() const {
    return {c_.data(), static_cast<std::size_t>(n_)};
  }

  double norm() const;
  double dot(const QCoeffs& other) const;

private:
  std::array<double, 5> c_{};
  int n_ = 0;
};

// Orthonormal basis {E^i} of the symmetric traceless d x d tensors, with the
// precomputed trace products tr(E^i E^j E^k) used by the bulk potential.
//
// d = 2: diag(1,-1)/sqrt2, offdiag(1,1)/sqrt2.
// d = 3: diag(1,-1,0)/sqrt2, diag(1,1,-2)/sqrt6, and the three symmetric
//        off-diagonal pairs with entries 1/sqrt2.
class Basis {
public:
  static const Basis& get(int dim);

  int dim() const { return dim_; }
  int coeffs() const { return nc_; }

  // Row-major dim x dim matrix of E^i.
  const double* matrix(int i) const { return mats_[static_cast<std::size_t>(i)].data(); }

  // tr(E^i E^j E^k); fully symmetric in (i,j,k). Identically zero for d = 2.
  double triple(int i, int j, int k) const {
    return triple_[static_cast<std::size_t>((i * nc_ + j) * nc_ + k)];
  }

  // Q = sum_i c[i] E^i as a row-major dim x dim matrix (m has dim*dim entries).
  void to_matrix(std::span<const double> c, double* m) const;

  // Frobenius projection c[i] = M : E^i. Requires |tr(M)| < 1e-10 and
  // ||M - M^T||_max < 1e-10; throws std::invalid_argument otherwise.
  void from_matrix(const double* m, std::span<double> c) const;

private:
  explicit Basis(int dim);
  int dim_ = 0;
  int nc_ = 0;
  std::array<std::array<double, 9>, 5> mats_{};
  std::array<double, 125> triple_{};
};

// Coefficients of the double-well bulk density and the cutoff thresholds of
// the quadratic-growth modification. All values are non-dimensional.
struct BulkParams {
  double a0 = 1.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double b1 = 1.0;  // cutoff thresholds on tr(Q^2), 1 <= b1 < b2
  double b2 = 2.0;

  // Throws std::invalid_argument when the sign/ordering constraints fail.
  void validate() const;
};

// C^2 cutoff: 1 for r < b1, 0 for r > b2, monotone quintic blend in between.
// Derivatives are taken with respect to r. Requires r >= 0.
struct CutoffValue {
  double value;
  double d1;
  double d2;
};
CutoffValue smooth_cutoff(double r, double b1, double b2);

// Modified bulk potential
//   psi(Q) = psi~(Q) rho(tr Q^2) + a4^2 tr(Q^2) (1 - rho(tr Q^2)),
//   psi~(Q) = a0 - a2/2 tr(Q^2) - a3/3 tr(Q^3) + a4/4 (tr Q^2)^2,
// evaluated on basis coefficients. Gradient and Hessian are the Frobenius-Riesz
// representatives on the symmetric traceless subspace; expressing them in
// coefficients makes the traceless projection automatic.
class BulkPotential {
public:
  BulkPotential(int dim, BulkParams params);

  int dim() const { return basis_->dim(); }
  int coeffs() const { return nc_; }
  const Basis& basis() const { return *basis_; }
  const BulkParams& params() const { return p_; }

  double value(std::span<const double> c) const;        // psi
  double tilde_value(std::span<const double> c) const;  // psi~

  // g[i] = d psi / d c[i]
  void gradient(std::span<const double> c, std::span<double> g) const;

  // out = psi''(c)[dir], the symmetric Hessian acting on a direction.
  void hessian_apply(std::span<const double> c, std::span<const double> dir,
                     std::span<double> out) const;

  // Dense nc x nc Hessian W[i*nc+j] = d^2 psi / dc_i dc_j (row-major).
  void hessian_matrix(std::span<const double> c, double* W) const;

  // Convex splitting psi = psi_c - psi_e with psi_e = d2/2 tr(Q^2).
  std::pair<double, double> split_values(std::span<const double> c) const;

  // Stabilization constant d2 = 2 (a2 + a3 sqrt(b2) + 3 a4 b2).
  double stabilization() const { return d2_; }

private:
  const Basis* basis_;
  BulkParams p_;
  int nc_;
  double d2_;
};

// Q = s (n otimes n - I/d) as basis coefficients. Requires |n| = 1 +- 1e-12.
QCoeffs uniaxial(double s, std::span<const double> n, int dim);

// Largest eigenvalue and a unit eigenvector, sign-normalized so the first
// component above 1e-9 in magnitude is positive. Closed form: 2x2 analytic,
// 3x3 trigonometric solve of the characteristic cubic. Q = 0 yields
// (0, e_1) by convention.
struct EigMax {
  double value;
  std::array<double, 3> vector;  // first dim entries used
};
EigMax max_eigenpair(const QCoeffs& q);

// Normalized biaxiality 1 - 6 (tr Q^3)^2 / (tr Q^2)^3 in [0,1] for d = 3;
// 0 at Q = 0 by convention. Every 2x2 traceless symmetric tensor is uniaxial,
// so the measure is identically 0 for d = 2.
double biaxiality(const QCoeffs& q);

}  // namespace ldg
