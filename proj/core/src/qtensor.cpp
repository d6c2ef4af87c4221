#include "ldgflow/qtensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt6 = 2.4494897427831780982;

}  // namespace

double QCoeffs::norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
  return std::sqrt(s);
}

double QCoeffs::dot(const QCoeffs& other) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += c_[static_cast<std::size_t>(i)] * other[i];
  return s;
}

Basis::Basis(int dim) : dim_(dim), nc_(coeff_count(dim)) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("Basis: dim must be 2 or 3");
  for (auto& m : mats_) m.fill(0.0);
  if (dim == 2) {
    // diag(1,-1)/sqrt2
    mats_[0][0] = 1.0 / kSqrt2;
    mats_[0][3] = -1.0 / kSqrt2;
    // offdiag(1,1)/sqrt2
    mats_[1][1] = 1.0 / kSqrt2;
    mats_[1][2] = 1.0 / kSqrt2;
  } else {
    // diag(1,-1,0)/sqrt2
    mats_[0][0] = 1.0 / kSqrt2;
    mats_[0][4] = -1.0 / kSqrt2;
    // diag(1,1,-2)/sqrt6
    mats_[1][0] = 1.0 / kSqrt6;
    mats_[1][4] = 1.0 / kSqrt6;
    mats_[1][8] = -2.0 / kSqrt6;
    // (e1 e2^T + e2 e1^T)/sqrt2
    mats_[2][1] = 1.0 / kSqrt2;
    mats_[2][3] = 1.0 / kSqrt2;
    // (e1 e3^T + e3 e1^T)/sqrt2
    mats_[3][2] = 1.0 / kSqrt2;
    mats_[3][6] = 1.0 / kSqrt2;
    // (e2 e3^T + e3 e2^T)/sqrt2
    mats_[4][5] = 1.0 / kSqrt2;
    mats_[4][7] = 1.0 / kSqrt2;
  }

  // Trace products tr(E^i E^j E^k).
  const int d = dim_;
  for (int i = 0; i < nc_; ++i) {
    for (int j = 0; j < nc_; ++j) {
      for (int k = 0; k < nc_; ++k) {
        double t = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              t += mats_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * d + b)] *
                   mats_[static_cast<std::size_t>(j)][static_cast<std::size_t>(b * d + c)] *
                   mats_[static_cast<std::size_t>(k)][static_cast<std::size_t>(c * d + a)];
        triple_[static_cast<std::size_t>((i * nc_ + j) * nc_ + k)] = t;
      }
    }
  }
}

const Basis& Basis::get(int dim) {
  static const Basis basis2(2);
  static const Basis basis3(3);
  if (dim == 2) return basis2;
  if (dim == 3) return basis3;
  throw std::invalid_argument("Basis::get: dim must be 2 or 3");
}

void Basis::to_matrix(std::span<const double> c, double* m) const {
  const int dd = dim_ * dim_;
  for (int e = 0; e < dd; ++e) m[e] = 0.0;
  for (int i = 0; i < nc_; ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    const double* ei = mats_[static_cast<std::size_t>(i)].data();
    for (int e = 0; e < dd; ++e) m[e] += ci * ei[e];
  }
}

void Basis::from_matrix(const double* m, std::span<double> c) const {
  const int d = dim_;
  double trace = 0.0;
  for (int a = 0; a < d; ++a) trace += m[a * d + a];
  double asym = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      asym = std::max(asym, std::abs(m[a * d + b] - m[b * d + a]));
  if (std::abs(trace) >= 1e-10)
    throw std::invalid_argument("from_matrix: input is not traceless");
  if (asym >= 1e-10)
    throw std::invalid_argument("from_matrix: input is not symmetric");

  const int dd = d * d;
  for (int i = 0; i < nc_; ++i) {
    const double* ei = mats_[static_cast<std::size_t>(i)].data();
    double s = 0.0;
    for (int e = 0; e < dd; ++e) s += m[e] * ei[e];
    c[static_cast<std::size_t>(i)] = s;
  }
}

void BulkParams::validate() const {
  if (!(a0 > 0.0)) throw std::invalid_argument("BulkParams: a0 must be positive");
  if (!(a2 > 0.0)) throw std::invalid_argument("BulkParams: a2 must be positive");
  if (a3 < 0.0) throw std::invalid_argument("BulkParams: a3 must be nonnegative");
  if (!(a4 > 0.0)) throw std::invalid_argument("BulkParams: a4 must be positive");
  if (!(b1 >= 1.0 && b1 < b2)) throw std::invalid_argument("BulkParams: need 1 <= b1 < b2");
}

CutoffValue smooth_cutoff(double r, double b1, double b2) {
  if (r < 0.0) throw std::invalid_argument("smooth_cutoff: r must be nonnegative");
  if (r <= b1) return {1.0, 0.0, 0.0};
  if (r >= b2) return {0.0, 0.0, 0.0};
  const double w = b2 - b1;
  const double t = (r - b1) / w;
  // 1 - smoothstep5(t): C^2 at both ends.
  const double value = 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  const double d1 = -30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
  const double d2 = -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) / (w * w);
  return {value, d1, d2};
}

BulkPotential::BulkPotential(int dim, BulkParams params)
    : basis_(&Basis::get(dim)), p_(params), nc_(coeff_count(dim)) {
  p_.validate();
  d2_ = 2.0 * (p_.a2 + p_.a3 * std::sqrt(p_.b2) + 3.0 * p_.a4 * p_.b2);
}

namespace {

// Shared scalar pieces of psi~ at a coefficient vector: p = tr Q^2, q = tr Q^3,
// S_k = tr(Q^2 E^k).
struct TildeEval {
  double p = 0.0;
  double q = 0.0;
  std::array<double, 5> s{};
};

TildeEval eval_tilde_terms(const Basis& basis, std::span<const double> c) {
  TildeEval ev;
  const int nc = basis.coeffs();
  for (int i = 0; i < nc; ++i) ev.p += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
  if (basis.dim() == 3) {
    for (int k = 0; k < nc; ++k) {
      double sk = 0.0;
      for (int i = 0; i < nc; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        if (ci == 0.0) continue;
        for (int j = 0; j < nc; ++j)
          sk += basis.triple(i, j, k) * ci * c[static_cast<std::size_t>(j)];
      }
      ev.s[static_cast<std::size_t>(k)] = sk;
      ev.q += sk * c[static_cast<std::size_t>(k)];
    }
  }
  return ev;
}

}  // namespace

double BulkPotential::tilde_value(std::span<const double> c) const {
  const TildeEval ev = eval_tilde_terms(*basis_, c);
  return p_.a0 - 0.5 * p_.a2 * ev.p - p_.a3 / 3.0 * ev.q + 0.25 * p_.a4 * ev.p * ev.p;
}

double BulkPotential::value(std::span<const double> c) const {
  const TildeEval ev = eval_tilde_terms(*basis_, c);
  const double tilde =
      p_.a0 - 0.5 * p_.a2 * ev.p - p_.a3 / 3.0 * ev.q + 0.25 * p_.a4 * ev.p * ev.p;
  const CutoffValue rho = smooth_cutoff(ev.p, p_.b1, p_.b2);
  return tilde * rho.value + p_.a4 * p_.a4 * ev.p * (1.0 - rho.value);
}

void BulkPotential::gradient(std::span<const double> c, std::span<double> g) const {
  const TildeEval ev = eval_tilde_terms(*basis_, c);
  const double tilde =
      p_.a0 - 0.5 * p_.a2 * ev.p - p_.a3 / 3.0 * ev.q + 0.25 * p_.a4 * ev.p * ev.p;
  const CutoffValue rho = smooth_cutoff(ev.p, p_.b1, p_.b2);
  const double a4sq = p_.a4 * p_.a4;
  // g = rho * psi~'(c) + s c,  s = 2 psi~ rho' + 2 a4^2 (1 - rho - p rho').
  const double s = 2.0 * tilde * rho.d1 + 2.0 * a4sq * (1.0 - rho.value - ev.p * rho.d1);
  for (int i = 0; i < nc_; ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    const double gt = -p_.a2 * ci - p_.a3 * ev.s[static_cast<std::size_t>(i)] + p_.a4 * ev.p * ci;
    g[static_cast<std::size_t>(i)] = rho.value * gt + s * ci;
  }
}

void BulkPotential::hessian_matrix(std::span<const double> c, double* W) const {
  const TildeEval ev = eval_tilde_terms(*basis_, c);
  const double tilde =
      p_.a0 - 0.5 * p_.a2 * ev.p - p_.a3 / 3.0 * ev.q + 0.25 * p_.a4 * ev.p * ev.p;
  const CutoffValue rho = smooth_cutoff(ev.p, p_.b1, p_.b2);
  const double a4sq = p_.a4 * p_.a4;
  const double s = 2.0 * tilde * rho.d1 + 2.0 * a4sq * (1.0 - rho.value - ev.p * rho.d1);
  const double mu = 4.0 * (tilde * rho.d2 - a4sq * (2.0 * rho.d1 + ev.p * rho.d2));

  std::array<double, 5> gt{};
  for (int i = 0; i < nc_; ++i)
    gt[static_cast<std::size_t>(i)] = -p_.a2 * c[static_cast<std::size_t>(i)] -
                                      p_.a3 * ev.s[static_cast<std::size_t>(i)] +
                                      p_.a4 * ev.p * c[static_cast<std::size_t>(i)];

  // W = rho W~ + 2 rho' (g~ c^T + c g~^T) + mu c c^T + s I,
  // W~ = -a2 I - 2 a3 G + a4 (2 c c^T + p I), G_ij = sum_k tr(EiEjEk) c_k.
  for (int i = 0; i < nc_; ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    for (int j = 0; j <= i; ++j) {
      const double cj = c[static_cast<std::size_t>(j)];
      double gij = 0.0;
      if (basis_->dim() == 3) {
        for (int k = 0; k < nc_; ++k) gij += basis_->triple(i, j, k) * c[static_cast<std::size_t>(k)];
      }
      double wt = -2.0 * p_.a3 * gij + 2.0 * p_.a4 * ci * cj;
      if (i == j) wt += -p_.a2 + p_.a4 * ev.p;
      double w = rho.value * wt +
                 2.0 * rho.d1 * (gt[static_cast<std::size_t>(i)] * cj + ci * gt[static_cast<std::size_t>(j)]) +
                 mu * ci * cj;
      if (i == j) w += s;
      W[i * nc_ + j] = w;
      W[j * nc_ + i] = w;
    }
  }
}

void BulkPotential::hessian_apply(std::span<const double> c, std::span<const double> dir,
                                  std::span<double> out) const {
  std::array<double, 25> W;
  hessian_matrix(c, W.data());
  for (int i = 0; i < nc_; ++i) {
    double s = 0.0;
    for (int j = 0; j < nc_; ++j)
      s += W[static_cast<std::size_t>(i * nc_ + j)] * dir[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
}

std::pair<double, double> BulkPotential::split_values(std::span<const double> c) const {
  double p = 0.0;
  for (int i = 0; i < nc_; ++i) p += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
  const double expansive = 0.5 * d2_ * p;
  return {value(c) + expansive, expansive};
}

QCoeffs uniaxial(double s, std::span<const double> n, int dim) {
  double nn = 0.0;
  for (int i = 0; i < dim; ++i) nn += n[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(i)];
  if (std::abs(std::sqrt(nn) - 1.0) > 1e-12)
    throw std::invalid_argument("uniaxial: director must be a unit vector");

  double m[9];
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      m[a * dim + b] = s * (n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)] -
                            (a == b ? 1.0 / dim : 0.0));
  QCoeffs q(dim);
  Basis::get(dim).from_matrix(m, q.span());
  return q;
}

namespace {

void sign_normalize(double* v, int d) {
  for (int i = 0; i < d; ++i) {
    if (std::abs(v[i]) > 1e-9) {
      if (v[i] < 0.0)
        for (int j = 0; j < d; ++j) v[j] = -v[j];
      return;
    }
  }
}

void cross3(const double* a, const double* b, double* out) {
  out[0] = a[1] * b[2] - a[2] * b[1];
  out[1] = a[2] * b[0] - a[0] * b[2];
  out[2] = a[0] * b[1] - a[1] * b[0];
}

}  // namespace

EigMax max_eigenpair(const QCoeffs& q) {
  EigMax r{0.0, {1.0, 0.0, 0.0}};
  const int dim = q.size() == 2 ? 2 : 3;
  const Basis& basis = Basis::get(dim);
  double m[9];
  basis.to_matrix(q.span(), m);

  if (dim == 2) {
    const double a = m[0];
    const double b = m[1];
    const double lam = std::sqrt(a * a + b * b);
    r.value = lam;
    if (lam < 1e-300) return r;
    // (Q - lam I) v = 0; pick the better-conditioned null vector.
    double v1[2] = {b, lam - a};
    double v2[2] = {lam + a, b};
    const double n1 = v1[0] * v1[0] + v1[1] * v1[1];
    const double n2 = v2[0] * v2[0] + v2[1] * v2[1];
    double* v = (n1 > n2) ? v1 : v2;
    const double nn = std::sqrt(std::max(n1, n2));
    r.vector = {v[0] / nn, v[1] / nn, 0.0};
    sign_normalize(r.vector.data(), 2);
    return r;
  }

  // Traceless symmetric 3x3: lambda^3 - (p/2) lambda - det = 0.
  const double p = q.dot(q);
  if (p < 1e-300) return r;
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                     m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  const double mm = 2.0 * std::sqrt(p / 6.0);
  const double cos3phi = std::clamp(4.0 * det / (mm * mm * mm), -1.0, 1.0);
  const double phi = std::acos(cos3phi) / 3.0;
  const double lam = mm * std::cos(phi);
  r.value = lam;

  // Null vector of (Q - lam I) via row cross products.
  double rows[3][3] = {{m[0] - lam, m[1], m[2]},
                       {m[3], m[4] - lam, m[5]},
                       {m[6], m[7], m[8] - lam}};
  double best[3] = {0.0, 0.0, 0.0};
  double best_norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    double cr[3];
    cross3(rows[i], rows[(i + 1) % 3], cr);
    const double n2 = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2];
    if (n2 > best_norm) {
      best_norm = n2;
      best[0] = cr[0];
      best[1] = cr[1];
      best[2] = cr[2];
    }
  }
  if (best_norm > 1e-24 * p * p * p) {
    const double nn = std::sqrt(best_norm);
    r.vector = {best[0] / nn, best[1] / nn, best[2] / nn};
  } else {
    // Repeated largest eigenvalue: (Q - lam I) has rank 1, any vector in the
    // orthogonal complement of its dominant row is an eigenvector.
    int ir = 0;
    double rn = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double n2 = rows[i][0] * rows[i][0] + rows[i][1] * rows[i][1] + rows[i][2] * rows[i][2];
      if (n2 > rn) {
        rn = n2;
        ir = i;
      }
    }
    if (rn < 1e-300) {
      r.vector = {1.0, 0.0, 0.0};
    } else {
      const double axis[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      double bestv[3] = {0, 0, 0};
      double bn = -1.0;
      for (int k = 0; k < 3; ++k) {
        double cr[3];
        cross3(rows[ir], axis[k], cr);
        const double n2 = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2];
        if (n2 > bn) {
          bn = n2;
          bestv[0] = cr[0];
          bestv[1] = cr[1];
          bestv[2] = cr[2];
        }
      }
      const double nn = std::sqrt(bn);
      r.vector = {bestv[0] / nn, bestv[1] / nn, bestv[2] / nn};
    }
  }
  sign_normalize(r.vector.data(), 3);
  return r;
}

double biaxiality(const QCoeffs& q) {
  const int dim = q.size() == 2 ? 2 : 3;
  if (dim == 2) return 0.0;
  const Basis& basis = Basis::get(dim);
  const TildeEval ev = eval_tilde_terms(basis, q.span());
  if (ev.p < 1e-30) return 0.0;
  const double beta = 1.0 - 6.0 * ev.q * ev.q / (ev.p * ev.p * ev.p);
  return std::clamp(beta, 0.0, 1.0);
}

}  // namespace ldg
