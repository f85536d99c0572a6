#pragma once

// Gaussian interference channel with common information: channel descriptors.
//
//   Y1 = h11 X1 + h12 X2 + Z1
//   Y2 = h21 X1 + h22 X2 + Z2,    Zi ~ CN(0,1), E|Xi|^2 <= 1
//
// Only the magnitudes |h_ij| enter any of the rate formulas, so phases are
// not represented. Magnitudes up to 1e6 (powers up to 1e12) are the supported
// envelope; squares overflow double only beyond ~1e154, and beyond ~1e8 the
// unit term in 1 + |h|^2 is lost to rounding.

#include <cmath>
#include <stdexcept>
#include <string>

namespace icci {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class Scalar = double>
struct ChannelGains {
  Scalar m11{0};
  Scalar m12{0};
  Scalar m21{0};
  Scalar m22{0};

  bool operator==(const ChannelGains&) const = default;

  template <class To>
  ChannelGains<To> cast() const {
    return {To(m11), To(m12), To(m21), To(m22)};
  }
};

// Linear power ratios: snr_i = |h_ii|^2, inr_i = |h_ij|^2 (j != i).
template <class Scalar = double>
struct SnrView {
  Scalar snr1{0};
  Scalar snr2{0};
  Scalar inr1{0};
  Scalar inr2{0};
};

// |h_ij|^2 = P^{alpha_ij}.
template <class Scalar = double>
struct GdofExponents {
  Scalar a11{0};
  Scalar a12{0};
  Scalar a21{0};
  Scalar a22{0};
};

namespace detail {

template <class Scalar>
void require_nonnegative(Scalar v, const char* what) {
  if (!std::isfinite(v) || v < Scalar(0)) {
    throw DomainError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace detail

template <class Scalar>
void validate(const ChannelGains<Scalar>& g) {
  detail::require_nonnegative(g.m11, "m11");
  detail::require_nonnegative(g.m12, "m12");
  detail::require_nonnegative(g.m21, "m21");
  detail::require_nonnegative(g.m22, "m22");
}

template <class Scalar>
void validate(const GdofExponents<Scalar>& e) {
  detail::require_nonnegative(e.a11, "a11");
  detail::require_nonnegative(e.a12, "a12");
  detail::require_nonnegative(e.a21, "a21");
  detail::require_nonnegative(e.a22, "a22");
}

template <class Scalar>
bool is_symmetric(const ChannelGains<Scalar>& g) {
  return g.m11 == g.m22 && g.m12 == g.m21;
}

template <class Scalar>
SnrView<Scalar> snr_view(const ChannelGains<Scalar>& g) {
  return {g.m11 * g.m11, g.m22 * g.m22, g.m12 * g.m12, g.m21 * g.m21};
}

template <class Scalar>
ChannelGains<Scalar> from_snr(const SnrView<Scalar>& v) {
  detail::require_nonnegative(v.snr1, "snr1");
  detail::require_nonnegative(v.snr2, "snr2");
  detail::require_nonnegative(v.inr1, "inr1");
  detail::require_nonnegative(v.inr2, "inr2");
  using std::sqrt;
  return {sqrt(v.snr1), sqrt(v.inr1), sqrt(v.inr2), sqrt(v.snr2)};
}

// m_ij = P^{alpha_ij / 2}.
template <class Scalar>
ChannelGains<Scalar> realize(const GdofExponents<Scalar>& e, Scalar power) {
  if (!(power > Scalar(0)) || !std::isfinite(power)) {
    throw DomainError("P must be finite and > 0");
  }
  validate(e);
  using std::pow;
  const Scalar half(0.5);
  return {pow(power, half * e.a11), pow(power, half * e.a12),
          pow(power, half * e.a21), pow(power, half * e.a22)};
}

template <class Scalar>
GdofExponents<Scalar> symmetric_exponents(Scalar alpha) {
  return {Scalar(1), alpha, alpha, Scalar(1)};
}

// h11 = h22 = sqrt(P), h12 = h21 = sqrt(P^alpha).
template <class Scalar>
ChannelGains<Scalar> symmetric(Scalar alpha, Scalar power) {
  return realize(symmetric_exponents(alpha), power);
}

}  // namespace icci
