#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

/// Dense polynomial with complex coefficients; index k holds the coefficient of z^k.
///
/// Trailing coefficients with modulus at or below `trailing_tolerance` are stripped
/// on construction, so `degree()` is the index of the leading nonzero coefficient.
/// The zero polynomial is stored as the single coefficient 0 and has degree 0.
class Polynomial {
 public:
  static constexpr double trailing_tolerance = 1e-14;

  Polynomial() : coeffs_{cplx{0.0}} {}

  explicit Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial monomial(cplx c, std::size_t k) {
    std::vector<cplx> v(k + 1, cplx{0.0});
    v[k] = c;
    return Polynomial(std::move(v));
  }

  /// lead * prod (z - r) expanded without stripping.
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0) {
    std::vector<cplx> v{lead};
    for (const cplx r : roots) {
      v.push_back(cplx{0.0});
      for (std::size_t k = v.size() - 1; k > 0; --k) v[k] = v[k - 1] - r * v[k];
      v[0] = -r * v[0];
    }
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
  std::span<const cplx> coefficients() const { return coeffs_; }
  cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{0.0}; }
  cplx leading() const { return coeffs_.back(); }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const cplx c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0});
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(cplx s, const Polynomial& p) {
    std::vector<cplx> v = p.coeffs_;
    for (cplx& c : v) c *= s;
    return Polynomial(std::move(v));
  }

 private:
  void normalize() {
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= trailing_tolerance) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
    if (coeffs_.size() == 1 && std::abs(coeffs_[0]) <= trailing_tolerance) coeffs_[0] = cplx{0.0};
  }

  std::vector<cplx> coeffs_;
};

/// Horner evaluation.
inline cplx poly_eval(const Polynomial& p, cplx z) {
  const auto c = p.coefficients();
  cplx acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

/// Value and first derivative in one Horner pass.
inline std::pair<cplx, cplx> poly_eval_with_derivative(const Polynomial& p, cplx z) {
  const auto c = p.coefficients();
  cplx val = c.back();
  cplx der{0.0};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    der = der * z + val;
    val = val * z + c[k];
  }
  return {val, der};
}

/// sum_k |c_k| max(1,|z|)^k, the scale against which |p(z)| is judged.
/// k-th derivative of p.
inline Polynomial poly_derivative(const Polynomial& p, int k = 1) {
  std::vector<cplx> c(p.coefficients().begin(), p.coefficients().end());
  for (int step = 0; step < k && c.size() > 1; ++step) {
    for (std::size_t j = 1; j < c.size(); ++j) c[j - 1] = static_cast<double>(j) * c[j];
    c.pop_back();
  }
  if (k > 0 && p.degree() < k) return Polynomial{};
  return Polynomial(std::move(c));
}

inline double poly_eval_scale(const Polynomial& p, cplx z) {
  const double r = std::max(1.0, std::abs(z));
  const auto c = p.coefficients();
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + std::abs(c[k]);
  return acc;
}

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division p = q * d + r with deg r < deg d. Forward (highest-first) order.
inline PolyDivision poly_divide(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  const int dp = p.degree();
  const int dd = d.degree();
  if (dp < dd) return {Polynomial(), p};
  std::vector<cplx> rem(p.coefficients().begin(), p.coefficients().end());
  std::vector<cplx> quo(static_cast<std::size_t>(dp - dd + 1), cplx{0.0});
  const cplx lead = d.leading();
  for (int k = dp - dd; k >= 0; --k) {
    const cplx q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

enum class DiskLocation { inside_disk, boundary_band, outside_disk };

inline const char* to_string(DiskLocation loc) noexcept {
  switch (loc) {
    case DiskLocation::inside_disk: return "inside_disk";
    case DiskLocation::boundary_band: return "boundary_band";
    case DiskLocation::outside_disk: return "outside_disk";
  }
  return "unknown";
}

inline DiskLocation classify_against_circle(cplx r, double eps_bdry) {
  const double m = std::abs(r);
  if (std::abs(m - 1.0) <= eps_bdry) return DiskLocation::boundary_band;
  return m < 1.0 ? DiskLocation::inside_disk : DiskLocation::outside_disk;
}

struct Root {
  cplx value;
  int multiplicity = 1;
  DiskLocation location = DiskLocation::outside_disk;
};

struct RootSet {
  std::vector<Root> roots;
  /// max over roots of |p(r)| / sum_k |c_k| max(1,|r|)^k.
  double residual_bound = 0.0;

  int total_multiplicity() const {
    int m = 0;
    for (const Root& r : roots) m += r.multiplicity;
    return m;
  }

  /// Root values repeated by multiplicity, optionally restricted to one location.
  std::vector<cplx> expanded() const {
    std::vector<cplx> out;
    for (const Root& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
    return out;
  }

  std::vector<cplx> expanded(DiskLocation where) const {
    std::vector<cplx> out;
    for (const Root& r : roots)
      if (r.location == where) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
    return out;
  }

  RootSet restricted_to(DiskLocation where) const {
    RootSet out;
    out.residual_bound = residual_bound;
    for (const Root& r : roots)
      if (r.location == where) out.roots.push_back(r);
    return out;
  }
};

namespace detail {

// Aberth-Ehrlich simultaneous iteration with Gauss-Seidel updates.
// Returns false when the iteration budget runs out before every
// approximation reaches the roundoff-level backward error.
inline bool aberth(const Polynomial& p, std::vector<cplx>& z, int max_iterations) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const std::size_t m = z.size();
  std::vector<char> done(m, 0);
  for (int it = 0; it < max_iterations; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const auto [val, der] = poly_eval_with_derivative(p, z[i]);
      if (std::abs(val) <= 8.0 * eps * poly_eval_scale(p, z[i])) {
        done[i] = 1;
        continue;
      }
      all = false;
      cplx sum{0.0};
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      cplx w;
      if (der == cplx{0.0}) {
        w = cplx{1e-3 * std::max(1.0, std::abs(z[i])), 1e-3};
      } else {
        const cplx newton = val / der;
        w = newton / (1.0 - newton * sum);
      }
      z[i] -= w;
      if (std::abs(w) <= eps * std::abs(z[i])) done[i] = 1;
    }
    if (all) return true;
  }
  return std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
}

inline std::vector<cplx> companion_eigenvalues(const Polynomial& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = p.leading();
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "companion eigenvalue solve failed");
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

// Newton on the (m-1)-th derivative, where a root of multiplicity m is simple.
// The polished point is kept only if it stays within the cluster and improves
// that derivative's residual.
inline cplx polish_multiple(const Polynomial& p, cplx centroid, const std::vector<cplx>& members) {
  const Polynomial d = poly_derivative(p, static_cast<int>(members.size()) - 1);
  if (d.degree() < 1) return centroid;
  double spread = 0.0;
  for (const cplx v : members) spread = std::max(spread, std::abs(v - centroid));
  cplx z = centroid;
  for (int it = 0; it < 8; ++it) {
    const auto [val, der] = poly_eval_with_derivative(d, z);
    if (val == cplx{0.0} || der == cplx{0.0}) break;
    const cplx step = val / der;
    z -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) break;
  }
  if (!(std::abs(z - centroid) <= 2.0 * spread)) return centroid;
  if (std::abs(poly_eval(d, z)) > std::abs(poly_eval(d, centroid))) return centroid;
  return z;
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace detail

/// All complex roots of `p` with multiplicities, each tagged against the unit circle.
///
/// Approximations come from an Aberth-Ehrlich iteration (companion-matrix eigenvalues
/// as fallback for degree <= 20). Approximations whose Newton inclusion disks overlap,
/// or that lie within `tol` of each other, form one cluster; the cluster is reported
/// as its centroid with the cluster size as multiplicity. The centroid of a cluster
/// spawned by a multiple root is far more accurate than any single member.
///
/// Throws NonConvergence when no approximation meets `tol` in backward error.
inline RootSet poly_roots(const Polynomial& p, double tol, double eps_bdry) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "poly_roots requires degree >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "poly_roots requires tol > 0");
  if (p.degree() > 200) throw Error(ErrorKind::InvalidArgument, "poly_roots supports degree <= 200");

  const auto c = p.coefficients();
  std::size_t zero_roots = 0;
  while (c[zero_roots] == cplx{0.0}) ++zero_roots;
  const Polynomial reduced(std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(zero_roots), c.end()));
  const int m = reduced.degree();

  std::vector<cplx> approx;
  if (m == 1) {
    approx.push_back(-reduced[0] / reduced[1]);
  } else if (m > 1) {
    const double radius = std::pow(std::abs(reduced[0]) / std::abs(reduced.leading()), 1.0 / m);
    for (int k = 0; k < m; ++k)
      approx.push_back(std::polar(radius, two_pi * k / m + 0.4));
    if (!detail::aberth(reduced, approx, 2000)) {
      if (m > 20) throw Error(ErrorKind::NonConvergence, "Aberth iteration exhausted its budget");
      approx = detail::companion_eigenvalues(reduced);
    }
  }
  approx.insert(approx.end(), zero_roots, cplx{0.0});

  const std::size_t count = approx.size();
  const double deg = static_cast<double>(p.degree());
  std::vector<double> radius(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto [val, der] = poly_eval_with_derivative(p, approx[i]);
    if (val == cplx{0.0}) continue;
    radius[i] = std::abs(der) > 0.0 ? deg * std::abs(val) / std::abs(der) : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      const double d = std::abs(approx[i] - approx[j]);
      if (d <= tol || d <= radius[i] + radius[j])
        parent[detail::find_root(parent, i)] = detail::find_root(parent, j);
    }

  std::vector<std::vector<cplx>> clusters(count);
  for (std::size_t i = 0; i < count; ++i) clusters[detail::find_root(parent, i)].push_back(approx[i]);

  RootSet out;
  for (const auto& cl : clusters) {
    if (cl.empty()) continue;
    cplx centroid{0.0};
    for (const cplx v : cl) centroid += v;
    centroid /= static_cast<double>(cl.size());
    if (cl.size() > 1) centroid = detail::polish_multiple(p, centroid, cl);
    out.roots.push_back({centroid, static_cast<int>(cl.size()), classify_against_circle(centroid, eps_bdry)});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma < mb;
    return std::arg(a.value) < std::arg(b.value);
  });

  for (const Root& r : out.roots)
    out.residual_bound = std::max(out.residual_bound, std::abs(poly_eval(p, r.value)) / poly_eval_scale(p, r.value));
  if (out.residual_bound > tol)
    throw Error(ErrorKind::NonConvergence,
                "root residual " + std::to_string(out.residual_bound) + " exceeds tolerance " + std::to_string(tol));
  return out;
}

}  // namespace exflat
