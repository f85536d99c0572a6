#pragma once

// Generalized degrees of freedom: the GDoF polytope for link exponents
// |h_ij|^2 = P^{alpha_ij}, its symmetric two-dimensional slice, the per-user
// DoF curves with and without the common message, and the finite-P
// multiplexing-gain ratios of the outer-bound coefficients.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "icci/channel.hpp"
#include "icci/info_bounds.hpp"
#include "icci/region.hpp"

namespace icci {

template <class Scalar = double>
struct GdofCoeffs {
  Scalar a1{0}, a2{0};
  Scalar d1{0}, d2{0};
  Scalar e1{0}, e2{0};
  Scalar g1{0}, g2{0};
};

template <class Scalar>
GdofCoeffs<Scalar> gdof_coeffs(const GdofExponents<Scalar>& x) {
  validate(x);
  const Scalar zero(0);
  return {
      std::max(zero, x.a11 - x.a21),   std::max(zero, x.a22 - x.a12),
      x.a11,                           x.a22,
      std::max(x.a11 - x.a21, x.a12),  std::max(x.a22 - x.a12, x.a21),
      std::max(x.a11, x.a12),          std::max(x.a22, x.a21),
  };
}

template <class Scalar>
RateRegion<Scalar> build_gdof_region(const GdofCoeffs<Scalar>& c) {
  using detail::hs;
  return {{
              hs(1, 1, 0, c.g1),
              hs(1, 0, 1, c.g2),
              hs(0, 1, 0, c.d1),
              hs(0, 0, 1, c.d2),
              hs(0, 1, 1, c.e1 + c.e2),
              hs(1, 1, 1, c.a1 + c.g2),
              hs(1, 1, 1, c.a2 + c.g1),
              hs(1, 2, 1, c.a1 + c.g1 + c.e2),
              hs(1, 1, 2, c.a2 + c.g2 + c.e1),
          },
          RegionLabel::gdof};
}

// ---------------------------------------------------------------------------
// Symmetric slice: alpha11 = alpha22 = 1, alpha12 = alpha21 = alpha, d2 = d1.

template <class Scalar = double>
struct SymmetricGdofPoint {
  Scalar d0{0};
  Scalar d1{0};  // d2 = d1
};

// n . (d0, d1) <= rhs.
template <class Scalar = double>
struct HalfPlane {
  Eigen::Matrix<Scalar, 2, 1> normal{Eigen::Matrix<Scalar, 2, 1>::Zero()};
  Scalar rhs{0};
};

template <class Scalar>
std::vector<HalfPlane<Scalar>> symmetric_region(Scalar alpha) {
  if (!(alpha >= Scalar(0))) throw DomainError("alpha must be >= 0");
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  const Scalar one(1);
  const Scalar top = std::max(one, alpha);
  return {
      {Vec2(1, 1), top},
      {Vec2(0, 1), std::min(one, std::max(alpha, one - alpha))},
      {Vec2(1, 2), top + std::max(Scalar(0), one - alpha)},
  };
}

// Substitutes d2 = d1 into a three-dimensional region.
template <class Scalar>
std::vector<HalfPlane<Scalar>> restrict_symmetric(const RateRegion<Scalar>& region) {
  std::vector<HalfPlane<Scalar>> out;
  out.reserve(region.halfspaces.size());
  for (const auto& h : region.halfspaces) {
    out.push_back({Eigen::Matrix<Scalar, 2, 1>(Scalar(h.coeffs(0)), Scalar(h.coeffs(1) + h.coeffs(2))),
                   h.rhs});
  }
  return out;
}

template <class Scalar = double>
struct Lp2Result {
  Scalar value{-std::numeric_limits<Scalar>::infinity()};
  SymmetricGdofPoint<Scalar> argmax;
};

// Maximizes w . (d0, d1) over the listed halfplanes and d0, d1 >= 0 by
// enumerating every pairwise boundary intersection. The feasible set is
// bounded whenever some listed row bounds each coordinate, which holds for
// every region built here.
template <class Scalar>
Lp2Result<Scalar> lp2_max(const std::vector<HalfPlane<Scalar>>& rows,
                          const Eigen::Matrix<Scalar, 2, 1>& w,
                          Scalar tol = Scalar(kMembershipTol)) {
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  std::vector<HalfPlane<Scalar>> planes = rows;
  planes.push_back({Vec2(-1, 0), Scalar(0)});
  planes.push_back({Vec2(0, -1), Scalar(0)});

  auto feasible = [&](const Vec2& p) {
    return std::all_of(planes.begin(), planes.end(),
                       [&](const auto& h) { return h.normal.dot(p) <= h.rhs + tol; });
  };

  Lp2Result<Scalar> best;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      Eigen::Matrix<Scalar, 2, 2> a;
      a.row(0) = planes[i].normal.transpose();
      a.row(1) = planes[j].normal.transpose();
      const Scalar det = a.determinant();
      using std::abs;
      if (abs(det) < Scalar(kPivotThreshold)) continue;
      const Vec2 p = a.inverse() * Vec2(planes[i].rhs, planes[j].rhs);
      if (!feasible(p)) continue;
      const Scalar v = w.dot(p);
      if (v > best.value) best = {v, {p(0), p(1)}};
    }
  }
  return best;
}

// Per-user DoF without the common message (five-piece W curve). Intervals are
// half-open on the right: alpha = 1/2 takes the second case, and so on.
template <class Scalar>
Scalar d_ic(Scalar alpha) {
  if (!(alpha >= Scalar(0))) throw DomainError("alpha must be >= 0");
  const Scalar one(1), two(2);
  if (alpha < Scalar(0.5)) return one - alpha;
  if (alpha < two / Scalar(3)) return alpha;
  if (alpha < one) return one - alpha / two;
  if (alpha < two) return alpha / two;
  return one;
}

// Per-user DoF with the common message. Each case is d_ic plus the uplift,
// folded to one expression per interval:
//   [0,1/2): (1-a) + a/2,  [1/2,2/3): a + (2-3a)/2,  [2/3,1): 1 - a/2,
//   [1,2): a/2,            [2,inf): 1 + (a-2)/2.
template <class Scalar>
Scalar d_icci(Scalar alpha) {
  if (!(alpha >= Scalar(0))) throw DomainError("alpha must be >= 0");
  const Scalar one(1), two(2);
  if (alpha < one) return one - alpha / two;
  return alpha / two;
}

template <class Scalar>
Scalar d_uplift(Scalar alpha) {
  return d_icci(alpha) - d_ic(alpha);
}

template <class Scalar>
Lp2Result<Scalar> d_icci_lp_solution(Scalar alpha) {
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  return lp2_max(symmetric_region(alpha), Vec2(Scalar(0.5), Scalar(1)));
}

// max (d0 + 2 d1)/2 over the symmetric slice.
template <class Scalar>
Scalar d_icci_lp(Scalar alpha) {
  return d_icci_lp_solution(alpha).value;
}

// Same objective with d0 pinned to 0.
template <class Scalar>
Scalar d_ic_lp(Scalar alpha) {
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  auto rows = symmetric_region(alpha);
  rows.push_back({Vec2(1, 0), Scalar(0)});
  return lp2_max(rows, Vec2(Scalar(0.5), Scalar(1))).value;
}

template <class Scalar = double>
struct DofCurveSample {
  Scalar alpha{0};
  Scalar d_ic{0};
  Scalar d_icci{0};
  Scalar d_uplift{0};
  Scalar d_icci_lp{0};
};

template <class Scalar>
DofCurveSample<Scalar> dof_curve_sample(Scalar alpha) {
  const Scalar ic = d_ic(alpha);
  const Scalar icci = d_icci(alpha);
  return {alpha, ic, icci, icci - ic, d_icci_lp(alpha)};
}

// Grid alpha_k = lo + k * step for k = 0..round((hi - lo)/step).
template <class Scalar>
std::vector<DofCurveSample<Scalar>> dof_curve(Scalar lo, Scalar hi, Scalar step) {
  if (!(lo >= Scalar(0)) || !(hi >= lo) || !(step > Scalar(0))) {
    throw DomainError("need 0 <= alpha-min <= alpha-max and step > 0");
  }
  using std::round;
  const auto n = static_cast<long long>(round((hi - lo) / step));
  std::vector<DofCurveSample<Scalar>> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long long k = 0; k <= n; ++k) {
    out.push_back(dof_curve_sample(lo + static_cast<Scalar>(k) * step));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite-P multiplexing gain of the outer-bound coefficients.

template <class Scalar = double>
struct MultiplexingGain {
  Scalar power{0};
  std::array<Scalar, 10> ratio{};   // outer coefficient / log2 P, kCoeffNames order
  std::array<Scalar, 10> target{};  // a1 a2 d1 d2 e1 e2 g1 g2 g1 g2

  Scalar deviation(std::size_t k) const {
    using std::abs;
    return abs(ratio[k] - target[k]);
  }
  Scalar max_deviation() const {
    Scalar m(0);
    for (std::size_t k = 0; k < ratio.size(); ++k) m = std::max(m, deviation(k));
    return m;
  }
};

template <class Scalar>
MultiplexingGain<Scalar> multiplexing_gain(const GdofExponents<Scalar>& x, Scalar power) {
  if (!(power > Scalar(1)) || !std::isfinite(power)) throw DomainError("P must be > 1");
  using std::log2;
  const Scalar scale = log2(power);
  const auto outer = outer_coeffs(realize(x, power)).values();
  const auto t = gdof_coeffs(x);
  MultiplexingGain<Scalar> mg;
  mg.power = power;
  for (std::size_t k = 0; k < outer.size(); ++k) mg.ratio[k] = outer[k] / scale;
  mg.target = {t.a1, t.a2, t.d1, t.d2, t.e1, t.e2, t.g1, t.g2, t.g1, t.g2};
  return mg;
}

}  // namespace icci
