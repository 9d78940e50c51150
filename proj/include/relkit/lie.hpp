#pragma once

// Lie algebra of the inhomogeneous Lorentz group in the {J, K, P, E} basis,
// the general bilinear-form generator construction, Inonu-Wigner contraction,
// the mass central extension, and the matrix exponential.

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relkit {

// Exact scalar for structure-constant tables with rational inputs.
using Rat = boost::rational<long long>;

using Mat5 = Eigen::Matrix<double, 5, 5>;

// Basis indices for the physical ten-dimensional algebra.
inline constexpr int kJ1 = 0, kJ2 = 1, kJ3 = 2;
inline constexpr int kK1 = 3, kK2 = 4, kK3 = 5;
inline constexpr int kP1 = 6, kP2 = 7, kP3 = 8;
inline constexpr int kE = 9;
inline constexpr int kCentral = 10;  // extended table only

// Element of the deformation family: rotations J, boosts K, space
// translations P, time translation E.  mu = 1/c^2 >= 0 is the deformation
// parameter; mu = 0 is the Galilei point.  m, when present, is the
// coefficient of the central element of the extended mu = 0 algebra.
struct LieVector {
  std::array<double, 10> coeff{};
  double mu = 1.0;
  std::optional<double> m;

  Eigen::Vector3d j() const { return {coeff[kJ1], coeff[kJ2], coeff[kJ3]}; }
  Eigen::Vector3d k() const { return {coeff[kK1], coeff[kK2], coeff[kK3]}; }
  Eigen::Vector3d p() const { return {coeff[kP1], coeff[kP2], coeff[kP3]}; }
  double e() const { return coeff[kE]; }
};

namespace detail {

inline void require_valid(const LieVector& x) {
  if (!(x.mu >= 0.0))
    throw std::invalid_argument("LieVector: deformation parameter must be >= 0");
  if (x.m.has_value() && x.mu != 0.0)
    throw std::invalid_argument("LieVector: central coefficient requires mu == 0");
}

template <typename S>
S sabs(const S& x) {
  return x < S(0) ? -x : x;
}

}  // namespace detail

// Lie bracket of the family.  The K-K bracket closes on J scaled by -mu and
// the K-P bracket on E scaled by mu; at the extended mu = 0 point the K-P
// bracket lands on the central element instead.
inline LieVector bracket(const LieVector& x, const LieVector& y) {
  detail::require_valid(x);
  detail::require_valid(y);
  if (x.mu != y.mu)
    throw std::invalid_argument("bracket: operands from different deformation points");
  if (x.m.has_value() != y.m.has_value())
    throw std::invalid_argument("bracket: operands from different extensions");

  const Eigen::Vector3d xj = x.j(), xk = x.k(), xp = x.p();
  const Eigen::Vector3d yj = y.j(), yk = y.k(), yp = y.p();
  const bool extended = x.m.has_value();

  LieVector z;
  z.mu = x.mu;
  const Eigen::Vector3d zj = xj.cross(yj) - x.mu * xk.cross(yk);
  const Eigen::Vector3d zk = xj.cross(yk) - yj.cross(xk);
  const Eigen::Vector3d zp =
      xj.cross(yp) - yj.cross(xp) + y.e() * xk - x.e() * yk;
  for (int i = 0; i < 3; ++i) {
    z.coeff[kJ1 + i] = zj[i];
    z.coeff[kK1 + i] = zk[i];
    z.coeff[kP1 + i] = zp[i];
  }
  z.coeff[kE] = x.mu * (xk.dot(yp) - yk.dot(xp));
  if (extended) z.m = xk.dot(yp) - yk.dot(xp);
  return z;
}

// Defining representation on the affine embedding: index 0 is the affine
// slot, indices 1..4 the spacetime coordinates.  For mu > 0 these are
// (ct, x, y, z); at mu = 0 the Galilei matrices act on (t, x, y, z).
// Commutators of the images reproduce bracket().  The central charge of the
// extended algebra has no image here.
inline Mat5 defining_rep(const LieVector& x) {
  detail::require_valid(x);
  if (x.m.has_value())
    throw std::invalid_argument(
        "defining_rep: extended algebra has no faithful affine image");

  Mat5 m = Mat5::Zero();
  // Rotations: (J_i)^a_b = -eps_{iab} on the spatial block.
  static constexpr int eps[3][3][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        m(2 + a, 2 + b) -= x.coeff[kJ1 + i] * eps[i][a][b];

  if (x.mu > 0.0) {
    const double c = 1.0 / std::sqrt(x.mu);
    for (int i = 0; i < 3; ++i) {
      m(2 + i, 1) += x.coeff[kK1 + i] / c;
      m(1, 2 + i) += x.coeff[kK1 + i] / c;
    }
    m(1, 0) += c * x.coeff[kE];
  } else {
    for (int i = 0; i < 3; ++i) m(2 + i, 1) += x.coeff[kK1 + i];
    m(1, 0) += x.coeff[kE];
  }
  for (int i = 0; i < 3; ++i) m(2 + i, 0) += x.coeff[kP1 + i];
  return m;
}

// Dense structure-constant table C^k_{ab} over a named basis.
template <typename S>
struct BasicStructureConstants {
  int dimension = 0;
  int epsilon = +1;            // symmetry of the underlying bilinear form
  std::vector<std::string> names;
  std::vector<int> signature;  // diagonal of the form when diagonal, else empty
  std::vector<S> c;            // dense dimension^3

  explicit BasicStructureConstants(int n = 0)
      : dimension(n), names(static_cast<std::size_t>(n)),
        c(static_cast<std::size_t>(n) * n * n, S(0)) {}

  S get(int a, int b, int k) const {
    return c[static_cast<std::size_t>((a * dimension + b) * dimension + k)];
  }
  void add(int a, int b, int k, const S& v) {
    c[static_cast<std::size_t>((a * dimension + b) * dimension + k)] += v;
  }
  // Installs C^k_{ab} = v and C^k_{ba} = -v.
  void set_pair(int a, int b, int k, const S& v) {
    add(a, b, k, v);
    add(b, a, k, -v);
  }

  std::vector<S> bracket_coeffs(const std::vector<S>& x,
                                const std::vector<S>& y) const {
    const int n = dimension;
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
      throw std::invalid_argument("bracket_coeffs: coefficient size mismatch");
    std::vector<S> z(static_cast<std::size_t>(n), S(0));
    for (int a = 0; a < n; ++a) {
      if (x[a] == S(0)) continue;
      for (int b = 0; b < n; ++b) {
        if (y[b] == S(0)) continue;
        for (int k = 0; k < n; ++k) z[k] += get(a, b, k) * x[a] * y[b];
      }
    }
    return z;
  }

  bool antisymmetric() const {
    for (int a = 0; a < dimension; ++a)
      for (int b = 0; b < dimension; ++b)
        for (int k = 0; k < dimension; ++k)
          if (get(a, b, k) != -get(b, a, k)) return false;
    return true;
  }

  // max |[[X_a,X_b],X_c] + [[X_b,X_c],X_a] + [[X_c,X_a],X_b]| over components.
  S jacobi_max_residual() const {
    const int n = dimension;
    S worst(0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int cc = b + 1; cc < n; ++cc)
          for (int e = 0; e < n; ++e) {
            S r(0);
            for (int d = 0; d < n; ++d)
              r += get(a, b, d) * get(d, cc, e) + get(b, cc, d) * get(d, a, e) +
                   get(cc, a, d) * get(d, b, e);
            r = detail::sabs(r);
            if (worst < r) worst = r;
          }
    return worst;
  }
};

using StructureConstants = BasicStructureConstants<Rat>;
using StructureConstantsD = BasicStructureConstants<double>;

// Canonical table of the ten-dimensional family at deformation mu = 1/c^2.
inline StructureConstants poincare_table(const Rat& mu) {
  if (mu < Rat(0))
    throw std::domain_error("poincare_table: mu must be >= 0");
  StructureConstants t(10);
  t.names = {"J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "E"};
  t.epsilon = +1;
  t.signature = {1, -1, -1, -1};
  static constexpr int cyc[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    const int a = cyc[i][0], b = cyc[i][1];
    t.set_pair(kJ1 + a, kJ1 + b, kJ1 + i, Rat(1));   // [J,J] = J
    t.set_pair(kJ1 + a, kK1 + b, kK1 + i, Rat(1));   // [J,K] = K
    t.set_pair(kJ1 + b, kK1 + a, kK1 + i, Rat(-1));
    t.set_pair(kK1 + a, kK1 + b, kJ1 + i, -mu);      // [K,K] = -mu J
    t.set_pair(kJ1 + a, kP1 + b, kP1 + i, Rat(1));   // [J,P] = P
    t.set_pair(kJ1 + b, kP1 + a, kP1 + i, Rat(-1));
  }
  for (int i = 0; i < 3; ++i) {
    t.set_pair(kK1 + i, kP1 + i, kE, mu);            // [K_i,P_i] = mu E
    t.set_pair(kK1 + i, kE, kP1 + i, Rat(1));        // [K_i,E] = P_i
  }
  return t;
}

inline StructureConstants galilei_table() { return poincare_table(Rat(0)); }

// Eleven-dimensional central extension of the mu = 0 table: the K-P bracket
// closes on the central element scaled by m, E is replaced by E0.
inline StructureConstants central_extend_mass(const Rat& m) {
  StructureConstants t(11);
  t.names = {"J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "E0", "M"};
  t.epsilon = +1;
  t.signature = {1, -1, -1, -1};
  const StructureConstants base = galilei_table();
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int k = 0; k < 10; ++k) t.add(a, b, k, base.get(a, b, k));
  for (int i = 0; i < 3; ++i) t.set_pair(kK1 + i, kP1 + i, kCentral, m);
  return t;
}

// Guarded overload: the extension only exists over the mu = 0 table.
inline StructureConstants central_extend_mass(const StructureConstants& base,
                                              const Rat& m) {
  const StructureConstants g = galilei_table();
  if (base.dimension != g.dimension || base.c != g.c)
    throw std::invalid_argument(
        "central_extend_mass: base must be the mu = 0 table");
  return central_extend_mass(m);
}

// Rescales the generators outside the kept span by eps.  eps = 0 takes the
// limit, which exists only when the kept generators close under bracket;
// otherwise the inverse-eps terms obstruct it.  The limit leaves the kept
// subalgebra intact and makes the complement an Abelian ideal.
template <typename S>
BasicStructureConstants<S> contract(const BasicStructureConstants<S>& sc,
                                    const std::vector<bool>& keep,
                                    const S& eps) {
  const int n = sc.dimension;
  if (static_cast<int>(keep.size()) != n)
    throw std::invalid_argument("contract: mask size mismatch");
  BasicStructureConstants<S> t(n);
  t.names = sc.names;
  t.epsilon = sc.epsilon;
  t.signature = sc.signature;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        const S v = sc.get(a, b, k);
        if (v == S(0)) continue;
        // eps exponent of the term in the rescaled basis
        const int power = (keep[a] ? 0 : 1) + (keep[b] ? 0 : 1) - (keep[k] ? 0 : 1);
        if (eps == S(0)) {
          if (power < 0)
            throw std::domain_error(
                "contract: kept generators do not close under bracket, "
                "inverse-scale terms obstruct the limit");
          if (power == 0) t.add(a, b, k, v);
        } else {
          S w = v;
          for (int q = 0; q < power; ++q) w *= eps;
          for (int q = 0; q > power; --q) w /= eps;
          t.add(a, b, k, w);
        }
      }
  return t;
}

// General construction for a nondegenerate bilinear form omega with
// omega(v,w) = epsilon * omega(w,v): generators M_ab = e_a (x) eta_b -
// epsilon e_b (x) eta_a together with n translations T_a, of total dimension
// n(n+2-epsilon)/2.
template <typename S>
BasicStructureConstants<S> build_general_algebra(
    const std::vector<std::vector<S>>& omega, int epsilon) {
  const int n = static_cast<int>(omega.size());
  if (n == 0) throw std::invalid_argument("build_general_algebra: empty form");
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("build_general_algebra: epsilon must be +1 or -1");
  for (const auto& row : omega)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("build_general_algebra: form must be square");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (omega[a][b] != S(epsilon) * omega[b][a])
        throw std::invalid_argument(
            "build_general_algebra: form symmetry does not match epsilon");

  // Nondegeneracy via elimination with pivoting.
  {
    auto work = omega;
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (detail::sabs(work[piv][col]) < detail::sabs(work[r][col])) piv = r;
      std::swap(work[col], work[piv]);
      if (work[col][col] == S(0))
        throw std::invalid_argument("build_general_algebra: degenerate form");
      for (int r = col + 1; r < n; ++r) {
        const S f = work[r][col] / work[col][col];
        for (int cc = col; cc < n; ++cc) work[r][cc] -= f * work[col][cc];
      }
    }
  }

  // Basis: M_ab with a < b (epsilon = +1) or a <= b (epsilon = -1), then T_a.
  std::vector<std::array<int, 2>> mpairs;
  for (int a = 0; a < n; ++a)
    for (int b = (epsilon == 1 ? a + 1 : a); b < n; ++b)
      mpairs.push_back({a, b});
  const int nm = static_cast<int>(mpairs.size());
  const int dim = nm + n;

  auto mindex = [&](int a, int b) -> int {
    for (int i = 0; i < nm; ++i)
      if (mpairs[i][0] == a && mpairs[i][1] == b) return i;
    return -1;
  };
  // Reduce M_ab to the canonical pair, using M_ba = -epsilon M_ab.
  auto add_m = [&](std::vector<S>& out, int a, int b, S f) {
    if (a > b) {
      std::swap(a, b);
      f *= S(-epsilon);
    }
    if (a == b && epsilon == 1) return;  // M_aa vanishes for symmetric forms
    out[static_cast<std::size_t>(mindex(a, b))] += f;
  };

  BasicStructureConstants<S> t(dim);
  t.epsilon = epsilon;
  bool diagonal = true;
  for (int a = 0; a < n && diagonal; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && omega[a][b] != S(0)) { diagonal = false; break; }
  if (diagonal) {
    t.signature.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      t.signature[static_cast<std::size_t>(a)] =
          omega[a][a] > S(0) ? 1 : (omega[a][a] < S(0) ? -1 : 0);
  }
  for (int i = 0; i < nm; ++i)
    t.names[static_cast<std::size_t>(i)] = "M" + std::to_string(mpairs[i][0]) +
                                           std::to_string(mpairs[i][1]);
  for (int a = 0; a < n; ++a)
    t.names[static_cast<std::size_t>(nm + a)] = "T" + std::to_string(a);

  for (int i = 0; i < dim; ++i)
    for (int jj = i + 1; jj < dim; ++jj) {
      std::vector<S> out(static_cast<std::size_t>(dim), S(0));
      if (i < nm && jj < nm) {
        const int a = mpairs[i][0], b = mpairs[i][1];
        const int cc = mpairs[jj][0], d = mpairs[jj][1];
        add_m(out, b, cc, omega[a][d]);
        add_m(out, a, d, omega[b][cc]);
        add_m(out, b, d, S(-epsilon) * omega[a][cc]);
        add_m(out, a, cc, S(-epsilon) * omega[b][d]);
      } else if (i < nm) {
        const int a = mpairs[i][0], b = mpairs[i][1];
        const int cc = jj - nm;
        out[static_cast<std::size_t>(nm + a)] += omega[b][cc];
        out[static_cast<std::size_t>(nm + b)] -= S(epsilon) * omega[a][cc];
      }
      for (int k = 0; k < dim; ++k)
        if (out[static_cast<std::size_t>(k)] != S(0))
          t.set_pair(i, jj, k, out[static_cast<std::size_t>(k)]);
    }
  return t;
}

// Row rank by exact elimination; meant for exact scalar types.
template <typename S>
int exact_row_rank(std::vector<std::vector<S>> rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != S(0)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
    const auto& prow = rows[static_cast<std::size_t>(rank)];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)] == S(0)) continue;
      const S f = row[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      for (int cc = col; cc < cols; ++cc)
        row[static_cast<std::size_t>(cc)] -= f * prow[static_cast<std::size_t>(cc)];
    }
    ++rank;
  }
  return rank;
}

// Span of all basis-pair brackets, one coefficient row per pair.
template <typename S>
std::vector<std::vector<S>> bracket_image(const BasicStructureConstants<S>& sc) {
  std::vector<std::vector<S>> rows;
  for (int a = 0; a < sc.dimension; ++a)
    for (int b = a + 1; b < sc.dimension; ++b) {
      std::vector<S> row(static_cast<std::size_t>(sc.dimension));
      for (int k = 0; k < sc.dimension; ++k)
        row[static_cast<std::size_t>(k)] = sc.get(a, b, k);
      rows.push_back(std::move(row));
    }
  return rows;
}

// Scaling-and-squaring exponential, Taylor order 18 after halving the norm
// below 1/2.  Works for real and complex square matrices.
template <typename Derived>
typename Derived::PlainObject mat_exp(const Eigen::MatrixBase<Derived>& x) {
  using M = typename Derived::PlainObject;
  using Scalar = typename M::Scalar;
  if (x.rows() != x.cols())
    throw std::invalid_argument("mat_exp: matrix must be square");
  const double nrm = x.derived().norm();
  int s = 0;
  if (std::isfinite(nrm)) {
    double h = nrm;
    while (h > 0.5 && s < 64) {
      h *= 0.5;
      ++s;
    }
  }
  M a = x.derived() / Scalar(std::ldexp(1.0, s));
  M result = M::Identity(x.rows(), x.cols());
  M term = M::Identity(x.rows(), x.cols());
  for (int k = 1; k <= 18; ++k) {
    term = (term * a) / Scalar(k);
    result += term;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

// Relative residual of det(exp X) against exp(trace X).
template <typename Derived>
double det_exp_trace_check(const Eigen::MatrixBase<Derived>& x) {
  const auto e = mat_exp(x);
  const auto d = e.determinant();
  const auto t = std::exp(x.derived().trace());
  return std::abs(d - t) / std::max(1.0, std::abs(t));
}

// Unit-determinant 2x2 complex matrix outside the image of exp on traceless
// matrices: both eigenvalues are -1 yet the matrix is not minus the identity,
// so it is not diagonalizable and admits no traceless logarithm.
struct ExpImageWitness {
  Eigen::Matrix2cd matrix;
  std::array<std::complex<double>, 2> eigenvalues;
  bool is_minus_identity = false;
  double path_det_deviation = 0.0;  // max |det - 1| along the connecting path
  double path_endpoint_gap = 0.0;   // distance of the path end from the matrix
  bool valid = false;
};

inline ExpImageWitness exp_image_witness(double a) {
  if (a == 0.0)
    throw std::invalid_argument("exp_image_witness: a = 0 is minus the identity");
  ExpImageWitness w;
  w.matrix << -1.0, a, 0.0, -1.0;

  const std::complex<double> tr = w.matrix.trace();
  const std::complex<double> det = w.matrix.determinant();
  const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  w.eigenvalues = {(tr + disc) / 2.0, (tr - disc) / 2.0};
  w.is_minus_identity =
      (w.matrix + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0;

  // Path through the unit-determinant group from the identity to the matrix.
  constexpr int kSamples = 100;
  const std::complex<double> ipi(0.0, M_PI);
  Eigen::Matrix2cd at;
  for (int i = 0; i < kSamples; ++i) {
    const double s = static_cast<double>(i) / (kSamples - 1);
    at << std::exp(ipi * s), s * a, 0.0, std::exp(-ipi * s);
    w.path_det_deviation =
        std::max(w.path_det_deviation, std::abs(at.determinant() - 1.0));
  }
  w.path_endpoint_gap = (at - w.matrix).cwiseAbs().maxCoeff();

  w.valid = !w.is_minus_identity &&
            std::abs(w.eigenvalues[0] + 1.0) == 0.0 &&
            std::abs(w.eigenvalues[1] + 1.0) == 0.0 &&
            w.path_det_deviation < 1e-12 && w.path_endpoint_gap < 1e-12;
  return w;
}

}  // namespace relkit
