#pragma once

// Closed-form rate coefficients for the inner bound (independent Gaussian
// signalling with the private layer at the cross receiver's noise floor) and
// for the outer bound, plus the per-coefficient outer-minus-inner deltas.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string_view>
#include <type_traits>

#include "icci/channel.hpp"

namespace icci {

enum class Side { inner, outer };

constexpr std::string_view to_string(Side s) {
  return s == Side::inner ? "inner" : "outer";
}

// Gaussian capacity in bits, log2(1 + p), via log1p so small p keeps precision.
template <class Scalar>
Scalar capacity(Scalar p) {
  using std::log1p;
  if constexpr (std::is_floating_point_v<Scalar>) {
    return log1p(p) / std::numbers::ln2_v<Scalar>;
  } else {
    using std::log;
    return log1p(p) / log(Scalar(2));
  }
}

inline constexpr std::array<std::string_view, 10> kCoeffNames = {
    "A1", "A2", "D1", "D2", "E1", "E2", "G1", "G2", "G1p", "G2p"};

template <class Scalar = double>
struct BoundCoeffs {
  Side side{Side::inner};
  Scalar a1{0}, a2{0};
  Scalar d1{0}, d2{0};
  Scalar e1{0}, e2{0};
  Scalar g1{0}, g2{0};
  Scalar g1p{0}, g2p{0};

  // Same order as kCoeffNames.
  std::array<Scalar, 10> values() const {
    return {a1, a2, d1, d2, e1, e2, g1, g2, g1p, g2p};
  }
};

template <class Scalar = double>
struct GapDeltas {
  Scalar dA1{0}, dA2{0};
  Scalar dD1{0}, dD2{0};
  Scalar dE1{0}, dE2{0};
  Scalar dG1{0}, dG2{0};
  Scalar dG1p{0}, dG2p{0};

  std::array<Scalar, 10> values() const {
    return {dA1, dA2, dD1, dD2, dE1, dE2, dG1, dG2, dG1p, dG2p};
  }
};

template <class Scalar = double>
struct PowerSplit {
  Scalar x12{1};
  Scalar x21{1};
};

// x_ij = min(1, 1/|h_ij|^2), taken as 1 when |h_ij| = 0.
template <class Scalar>
PowerSplit<Scalar> power_split(const ChannelGains<Scalar>& g) {
  auto floor_split = [](const Scalar& m) -> Scalar {
    const Scalar p = m * m;
    if (p <= Scalar(1)) return Scalar(1);
    return Scalar(1) / p;
  };
  return {floor_split(g.m12), floor_split(g.m21)};
}

namespace detail {

// One receiver's five inner coefficients. `direct`/`cross` are |h_ii|^2 and
// |h_ij|^2; `own_split` is x_ji (own private power) and `cross_split` is x_ij.
template <class Scalar>
std::array<Scalar, 5> inner_row(Scalar direct, Scalar cross, Scalar own_split,
                                Scalar cross_split) {
  const Scalar one(1);
  const Scalar floor = one + cross * cross_split;
  const Scalar cross_public = cross * (one - cross_split);
  return {
      capacity<Scalar>(direct * own_split / floor),
      capacity<Scalar>(direct / floor),
      capacity<Scalar>((direct * own_split + cross_public) / floor),
      capacity<Scalar>((direct + cross_public) / floor),
      // (1 + direct + cross)/floor - 1, written without the cancellation.
      capacity<Scalar>((direct + cross_public) / floor),
  };
}

// |h_ii|, |h_ij|, |h_ji| for receiver i (h_ji is the gain from Tx i to Rx j).
template <class Scalar>
std::array<Scalar, 5> outer_row(Scalar direct, Scalar cross, Scalar leak) {
  const Scalar one(1);
  const Scalar d = direct * direct;
  const Scalar c = cross * cross;
  const Scalar l = leak * leak;
  const Scalar sum = direct + cross;
  return {
      capacity<Scalar>(d / (one + l)),
      capacity<Scalar>(d),
      capacity<Scalar>(c + d / (one + l)),
      capacity<Scalar>(d + c),
      capacity<Scalar>(sum * sum),
  };
}

}  // namespace detail

template <class Scalar>
BoundCoeffs<Scalar> inner_coeffs(const ChannelGains<Scalar>& g) {
  const auto [x12, x21] = power_split(g);
  const auto r1 = detail::inner_row(g.m11 * g.m11, g.m12 * g.m12, x21, x12);
  const auto r2 = detail::inner_row(g.m22 * g.m22, g.m21 * g.m21, x12, x21);
  return {Side::inner, r1[0], r2[0], r1[1], r2[1], r1[2],
          r2[2],       r1[3], r2[3], r1[4], r2[4]};
}

template <class Scalar>
BoundCoeffs<Scalar> outer_coeffs(const ChannelGains<Scalar>& g) {
  const auto r1 = detail::outer_row(g.m11, g.m12, g.m21);
  const auto r2 = detail::outer_row(g.m22, g.m21, g.m12);
  return {Side::outer, r1[0], r2[0], r1[1], r2[1], r1[2],
          r2[2],       r1[3], r2[3], r1[4], r2[4]};
}

template <class Scalar>
GapDeltas<Scalar> gap_deltas(const ChannelGains<Scalar>& g) {
  const auto in = inner_coeffs(g);
  const auto out = outer_coeffs(g);
  return {out.a1 - in.a1,   out.a2 - in.a2,  out.d1 - in.d1, out.d2 - in.d2,
          out.e1 - in.e1,   out.e2 - in.e2,  out.g1 - in.g1, out.g2 - in.g2,
          out.g1p - in.g1p, out.g2p - in.g2p};
}

// dA, dD, dE < 1, dG <= 1 (+tol), dG' < 2 on both indices.
//
// dG_i = log2(1 + |h_ij|^2 x_ij) equals exactly 1 whenever |h_ij| >= 1, so the
// non-strict bound gets `tol` of rounding room; the strict ones get none.
template <class Scalar>
bool delta_inequalities_hold(const GapDeltas<Scalar>& d, Scalar tol = Scalar(1e-9)) {
  const Scalar one(1), two(2);
  return d.dA1 < one && d.dA2 < one && d.dD1 < one && d.dD2 < one &&
         d.dE1 < one && d.dE2 < one && d.dG1 <= one + tol &&
         d.dG2 <= one + tol && d.dG1p < two && d.dG2p < two;
}

// 50 significant digits.
using WideScalar = boost::multiprecision::cpp_bin_float_50;

// The strict bounds can hold by margins far below double resolution: with
// |h12|, |h21| ~ 1e3 and |h22| ~ 1e-3, 1 - dE2 is about 1e-21. The deltas are
// therefore re-evaluated in WideScalar before the inequalities are tested.
inline bool deltas_certified(const ChannelGains<double>& g, double tol = 1e-9) {
  return delta_inequalities_hold(gap_deltas(g.cast<WideScalar>()), WideScalar(tol));
}

}  // namespace icci
