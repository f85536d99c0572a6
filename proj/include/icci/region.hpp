#pragma once

// Comprehensive rate-region polytopes in R^3_+ over (R0, R1, R2).
//
// A region is held as its listed halfspaces c . r <= rhs with c in {0,1,2}^3
// and rhs >= 0. The three nonnegativity planes r_k >= 0 are implicit: they
// take plane indices n, n+1, n+2 after the n listed halfspaces. Because every
// coefficient is nonnegative the region is downward comprehensive and always
// contains the origin.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "icci/info_bounds.hpp"

namespace icci {

template <class Scalar = double>
using RateTriple = Eigen::Matrix<Scalar, 3, 1>;

inline constexpr double kMembershipTol = 1e-9;
// Every nonsingular triple of plane normals is an integer matrix with
// |det| >= 1, so copies of one vertex from different triples agree to ~1e-13.
// Genuinely distinct vertices can sit a few 1e-9 apart.
inline constexpr double kDedupRadius = 1e-11;
inline constexpr double kPivotThreshold = 1e-12;

template <class Scalar = double>
struct HalfSpace {
  Eigen::Vector3i coeffs{Eigen::Vector3i::Zero()};
  Scalar rhs{0};

  RateTriple<Scalar> normal() const { return coeffs.template cast<Scalar>(); }
  Scalar slack(const RateTriple<Scalar>& p) const { return rhs - normal().dot(p); }
};

enum class RegionLabel { inner, outer, gdof, symmetric_gdof, custom };

constexpr std::string_view to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::inner: return "inner";
    case RegionLabel::outer: return "outer";
    case RegionLabel::gdof: return "gdof";
    case RegionLabel::symmetric_gdof: return "symmetric-gdof";
    case RegionLabel::custom: return "custom";
  }
  return "custom";
}

template <class Scalar = double>
struct RateRegion {
  std::vector<HalfSpace<Scalar>> halfspaces;
  RegionLabel label{RegionLabel::custom};

  std::size_t plane_count() const { return halfspaces.size() + 3; }

  // Plane k as (normal, rhs); k >= n are the nonnegativity planes -r <= 0.
  std::pair<RateTriple<Scalar>, Scalar> plane(std::size_t k) const {
    if (k < halfspaces.size()) return {halfspaces[k].normal(), halfspaces[k].rhs};
    RateTriple<Scalar> n = RateTriple<Scalar>::Zero();
    n(static_cast<Eigen::Index>(k - halfspaces.size())) = Scalar(-1);
    return {n, Scalar(0)};
  }
};

template <class Scalar = double>
struct Vertex {
  RateTriple<Scalar> point;
  std::vector<int> active;  // plane indices with |slack| <= tol
};

template <class Scalar = double>
struct VertexSet {
  std::vector<Vertex<Scalar>> vertices;
};

namespace detail {

template <class Scalar>
HalfSpace<Scalar> hs(int c0, int c1, int c2, Scalar rhs) {
  return {Eigen::Vector3i(c0, c1, c2), rhs};
}

// The thirteen constraints shared by the inner and outer regions, in the
// fixed listing order; only the coefficient values differ between sides.
template <class Scalar>
std::vector<HalfSpace<Scalar>> rate_constraints(const BoundCoeffs<Scalar>& c) {
  return {
      hs(1, 1, 0, c.g1p),                 // R0 + R1
      hs(1, 0, 1, c.g2p),                 // R0 + R2
      hs(0, 1, 0, c.d1),                  // R1
      hs(0, 0, 1, c.d2),                  // R2
      hs(0, 1, 1, c.e1 + c.e2),           // R1 + R2
      hs(0, 1, 1, c.a1 + c.g2),           // R1 + R2
      hs(0, 1, 1, c.a2 + c.g1),           // R1 + R2
      hs(1, 1, 1, c.a1 + c.g2p),          // R0 + R1 + R2
      hs(1, 1, 1, c.a2 + c.g1p),          // R0 + R1 + R2
      hs(0, 2, 1, c.a1 + c.g1 + c.e2),    // 2R1 + R2
      hs(0, 1, 2, c.a2 + c.g2 + c.e1),    // R1 + 2R2
      hs(1, 2, 1, c.a1 + c.g1p + c.e2),   // R0 + 2R1 + R2
      hs(1, 1, 2, c.a2 + c.g2p + c.e1),   // R0 + R1 + 2R2
  };
}

// Solves the 3x3 system by Gaussian elimination with partial pivoting.
// Returns nullopt when a pivot falls below `pivot_tol` in magnitude.
template <class Scalar>
std::optional<RateTriple<Scalar>> solve3(Eigen::Matrix<Scalar, 3, 3> a,
                                         RateTriple<Scalar> b, Scalar pivot_tol) {
  using std::abs;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (abs(a(r, col)) > abs(a(piv, col))) piv = r;
    }
    if (abs(a(piv, col)) < pivot_tol) return std::nullopt;
    if (piv != col) {
      a.row(col).swap(a.row(piv));
      std::swap(b(col), b(piv));
    }
    for (int r = col + 1; r < 3; ++r) {
      const Scalar f = a(r, col) / a(col, col);
      a.row(r) -= f * a.row(col);
      b(r) -= f * b(col);
    }
  }
  RateTriple<Scalar> x;
  for (int r = 2; r >= 0; --r) {
    Scalar s = b(r);
    for (int c = r + 1; c < 3; ++c) s -= a(r, c) * x(c);
    x(r) = s / a(r, r);
  }
  return x;
}

}  // namespace detail

template <class Scalar>
RateRegion<Scalar> build_inner(const BoundCoeffs<Scalar>& c) {
  if (c.side != Side::inner) throw std::invalid_argument("build_inner needs inner coefficients");
  return {detail::rate_constraints(c), RegionLabel::inner};
}

template <class Scalar>
RateRegion<Scalar> build_outer(const BoundCoeffs<Scalar>& c) {
  if (c.side != Side::outer) throw std::invalid_argument("build_outer needs outer coefficients");
  return {detail::rate_constraints(c), RegionLabel::outer};
}

template <class Scalar>
Scalar min_slack(const RateRegion<Scalar>& region, const RateTriple<Scalar>& p,
                 int* worst_index = nullptr) {
  Scalar worst = std::numeric_limits<Scalar>::infinity();
  for (std::size_t k = 0; k < region.plane_count(); ++k) {
    const auto [n, rhs] = region.plane(k);
    const Scalar s = rhs - n.dot(p);
    if (s < worst) {
      worst = s;
      if (worst_index) *worst_index = static_cast<int>(k);
    }
  }
  return worst;
}

template <class Scalar>
bool contains(const RateRegion<Scalar>& region, const RateTriple<Scalar>& p,
              Scalar tol = Scalar(kMembershipTol)) {
  if (tol < Scalar(0)) throw std::invalid_argument("tol must be >= 0");
  return min_slack(region, p) >= -tol;
}

// Extreme points by brute force over every triple of planes (at most
// C(16,3) = 560 systems): solve, keep the feasible solutions, merge points
// closer than `dedup` in max-norm. Singular triples are skipped.
template <class Scalar>
VertexSet<Scalar> vertices(const RateRegion<Scalar>& region,
                           Scalar tol = Scalar(kMembershipTol),
                           Scalar dedup = Scalar(kDedupRadius),
                           Scalar pivot_tol = Scalar(kPivotThreshold)) {
  const std::size_t n = region.plane_count();
  std::vector<std::pair<RateTriple<Scalar>, Scalar>> planes;
  planes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) planes.push_back(region.plane(k));

  VertexSet<Scalar> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Eigen::Matrix<Scalar, 3, 3> a;
        a.row(0) = planes[i].first.transpose();
        a.row(1) = planes[j].first.transpose();
        a.row(2) = planes[k].first.transpose();
        const RateTriple<Scalar> b(planes[i].second, planes[j].second, planes[k].second);
        const auto x = detail::solve3(a, b, pivot_tol);
        if (!x || min_slack(region, *x) < -tol) continue;
        const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const auto& v) {
          return (v.point - *x).cwiseAbs().maxCoeff() <= dedup;
        });
        if (!seen) out.vertices.push_back({*x, {}});
      }
    }
  }
  for (auto& v : out.vertices) {
    for (std::size_t k = 0; k < n; ++k) {
      using std::abs;
      if (abs(planes[k].second - planes[k].first.dot(v.point)) <= tol) {
        v.active.push_back(static_cast<int>(k));
      }
    }
  }
  return out;
}

// max of w . r over the enumerated vertices.
template <class Scalar>
Scalar max_over_vertices(const VertexSet<Scalar>& vs, const RateTriple<Scalar>& w) {
  Scalar best = -std::numeric_limits<Scalar>::infinity();
  for (const auto& v : vs.vertices) best = std::max(best, w.dot(v.point));
  return best;
}

// Number of enumerated vertices at which each listed halfspace is active.
template <class Scalar>
std::vector<int> constraint_activity(const RateRegion<Scalar>& region, const VertexSet<Scalar>& vs) {
  std::vector<int> counts(region.halfspaces.size(), 0);
  for (const auto& v : vs.vertices) {
    for (int k : v.active) {
      if (k < static_cast<int>(counts.size())) ++counts[static_cast<std::size_t>(k)];
    }
  }
  return counts;
}

template <class Scalar>
RateTriple<Scalar> clipped_shift(const RateTriple<Scalar>& v, Scalar b) {
  return (v.array() - b).cwiseMax(Scalar(0)).matrix();
}

template <class Scalar = double>
struct WithinBitsReport {
  bool holds{true};
  Scalar worst_slack{std::numeric_limits<Scalar>::infinity()};
  RateTriple<Scalar> worst_vertex{RateTriple<Scalar>::Zero()};
  int worst_constraint{-1};  // plane index in `cover`
};

// Whether `cover` is within b bits of `target`: every point r of target has
// some r' in cover with r - r' <= b componentwise.
//
// Since cover is downward comprehensive, r is b-covered iff its clipped shift
// (r - b)^+ is a member of cover: any witness r' >= 0 with r' >= r - b
// dominates (r - b)^+. For a fixed constraint c . r' <= rhs with c >= 0, the
// map r -> c . (r - b)^+ is convex, so its maximum over the polytope target is
// attained at a vertex. Checking the vertices of target is therefore both
// sound and complete.
template <class Scalar>
WithinBitsReport<Scalar> within_bits_report(const RateRegion<Scalar>& cover,
                                            const RateRegion<Scalar>& target, Scalar b,
                                            Scalar tol = Scalar(kMembershipTol)) {
  if (b < Scalar(0)) throw std::invalid_argument("b must be >= 0");
  WithinBitsReport<Scalar> report;
  for (const auto& v : vertices(target).vertices) {
    int idx = -1;
    const Scalar s = min_slack(cover, clipped_shift(v.point, b), &idx);
    if (s < report.worst_slack) {
      report.worst_slack = s;
      report.worst_vertex = v.point;
      report.worst_constraint = idx;
    }
  }
  report.holds = report.worst_slack >= -tol;
  return report;
}

template <class Scalar>
bool within_bits(const RateRegion<Scalar>& cover, const RateRegion<Scalar>& target, Scalar b,
                 Scalar tol = Scalar(kMembershipTol)) {
  return within_bits_report(cover, target, b, tol).holds;
}

// Smallest slack of any vertex of `inner` against `outer`.
template <class Scalar>
WithinBitsReport<Scalar> containment_report(const RateRegion<Scalar>& outer,
                                            const RateRegion<Scalar>& inner,
                                            Scalar tol = Scalar(kMembershipTol)) {
  return within_bits_report(outer, inner, Scalar(0), tol);
}

}  // namespace icci
