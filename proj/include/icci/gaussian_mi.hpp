#pragma once

// Mutual-information oracle for the independent Gaussian input
//
//   U0 = 0,  Ui ~ CN(0, 1 - x_ji),  Ui,pr ~ CN(0, x_ji),  Xi = Ui + Ui,pr,
//
// evaluated from analytically assembled covariances. For circularly-symmetric
// complex Gaussians h(Y | C) = log2 det(pi e Sigma_{Y|C}), so
//
//   I(A; Y | C) = log2 det Sigma_{Y|C} - log2 det Sigma_{Y|A,C},
//
// with conditioning carried out by sequential Schur complements.
//
// Also: the alpha = 0.6 successive-decoding example, where a common layer is
// slotted into signal levels that a plain rate-split scheme leaves unused.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "icci/channel.hpp"
#include "icci/info_bounds.hpp"

namespace icci {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kCholeskyPivotTol = 1e-12;

template <class Scalar = double>
struct GaussianInputSpec {
  Scalar pub_power_1{1}, priv_power_1{0};
  Scalar pub_power_2{1}, priv_power_2{0};
  Scalar u0_power{0};

  static GaussianInputSpec noise_floor(const ChannelGains<Scalar>& g) {
    const auto [x12, x21] = power_split(g);
    return {Scalar(1) - x21, x21, Scalar(1) - x12, x12, Scalar(0)};
  }
};

template <class Scalar = double>
struct MiTerms {
  Scalar a1{0}, a2{0};
  Scalar d1{0}, d2{0};
  Scalar e1{0}, e2{0};
  Scalar g1{0}, g2{0};
  Scalar g1p{0}, g2p{0};

  std::array<Scalar, 10> values() const {
    return {a1, a2, d1, d2, e1, e2, g1, g2, g1p, g2p};
  }
};

// Jointly Gaussian vector (U1, U2, U1pr, U2pr, X1, X2, Y1, Y2), written as
// loadings on the independent sources (U1, U2, U1pr, U2pr, Z1, Z2).
template <class Scalar = double>
class GaussianIcModel {
 public:
  enum Var : int { U1 = 0, U2, U1pr, U2pr, X1, X2, Y1, Y2, kVars };

  GaussianIcModel(const ChannelGains<Scalar>& g, const GaussianInputSpec<Scalar>& in)
      : u0_degenerate_(in.u0_power == Scalar(0)) {
    Eigen::Matrix<Scalar, kVars, 6> load = Eigen::Matrix<Scalar, kVars, 6>::Zero();
    load(U1, 0) = 1;
    load(U2, 1) = 1;
    load(U1pr, 2) = 1;
    load(U2pr, 3) = 1;
    load.row(X1) = load.row(U1) + load.row(U1pr);
    load.row(X2) = load.row(U2) + load.row(U2pr);
    load.row(Y1) = g.m11 * load.row(X1) + g.m12 * load.row(X2);
    load(Y1, 4) = 1;
    load.row(Y2) = g.m21 * load.row(X1) + g.m22 * load.row(X2);
    load(Y2, 5) = 1;

    Eigen::Matrix<Scalar, 6, 1> var;
    var << in.pub_power_1, in.pub_power_2, in.priv_power_1, in.priv_power_2, 1, 1;
    cov_ = load * var.asDiagonal() * load.transpose();
  }

  const Eigen::Matrix<Scalar, kVars, kVars>& covariance() const { return cov_; }

  // Var(target | given). Conditioning variables whose residual variance is
  // at or below the pivot tolerance (relative to their prior variance) are
  // already determined and are skipped.
  Scalar conditional_variance(Var target, const std::vector<Var>& given) const {
    std::vector<int> idx;
    for (Var v : given) idx.push_back(v);
    idx.push_back(target);
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> s(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) s(r, c) = cov_(idx[r], idx[c]);

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const Scalar pivot = s(k, k);
      if (pivot <= Scalar(kCholeskyPivotTol) * std::max(Scalar(1), cov_(idx[k], idx[k]))) continue;
      const auto tail = n - k - 1;
      s.bottomRightCorner(tail, tail) -=
          s.col(k).tail(tail) * s.row(k).tail(tail) / pivot;
    }
    const Scalar result = s(n - 1, n - 1);
    if (!(result > Scalar(kCholeskyPivotTol))) {
      throw NumericalError("conditional covariance is not positive definite");
    }
    return result;
  }

  // I(about; target | given) in bits.
  Scalar mutual_information(Var target, const std::vector<Var>& about,
                            const std::vector<Var>& given) const {
    std::vector<Var> both = given;
    both.insert(both.end(), about.begin(), about.end());
    using std::log2;
    return log2(conditional_variance(target, given)) - log2(conditional_variance(target, both));
  }

  // U0 is the constant 0 under this input; conditioning on it changes nothing.
  void condition_on_u0() const { assert(u0_degenerate_); }

 private:
  Eigen::Matrix<Scalar, kVars, kVars> cov_;
  bool u0_degenerate_;
};

// The ten rate terms
//   a_i  = I(X_i; Y_i | U0, U_i, U_j)     d_i  = I(X_i; Y_i | U0, U_j)
//   e_i  = I(X_i, U_j; Y_i | U0, U_i)     g_i  = I(X_i, U_j; Y_i | U0)
//   g_i' = I(U0, X_i, U_j; Y_i)
// under the noise-floor Gaussian input.
template <class Scalar>
MiTerms<Scalar> mi_terms_pg(const ChannelGains<Scalar>& gains) {
  validate(gains);
  using M = GaussianIcModel<Scalar>;
  const M model(gains, GaussianInputSpec<Scalar>::noise_floor(gains));
  model.condition_on_u0();

  struct Row {
    Scalar a, d, e, g, gp;
  };
  auto row = [&](typename M::Var x, typename M::Var ui, typename M::Var uj, typename M::Var y) {
    Row r;
    r.a = model.mutual_information(y, {x}, {ui, uj});
    r.d = model.mutual_information(y, {x}, {uj});
    r.e = model.mutual_information(y, {x, uj}, {ui});
    r.g = model.mutual_information(y, {x, uj}, {});
    // I(U0; Y) = 0 for constant U0, so g' reduces to the unconditioned term.
    r.gp = model.mutual_information(y, {x, uj}, {});
    return r;
  };
  const Row r1 = row(M::X1, M::U1, M::U2, M::Y1);
  const Row r2 = row(M::X2, M::U2, M::U1, M::Y2);
  return {r1.a, r2.a, r1.d, r2.d, r1.e, r2.e, r1.g, r2.g, r1.gp, r2.gp};
}

// ---------------------------------------------------------------------------
// Successive decoding at alpha = 0.6.

template <class Scalar = double>
struct DecodeStage {
  std::string label;  // M1pu, M0, M2pu, M1pr
  Scalar sinr{0};     // at receiver 1
  Scalar rate{0};     // bits; the minimum over every receiver that decodes it
  Scalar dof_ratio{0};
};

template <class Scalar = double>
struct DecodeChainReport {
  Scalar power{0};
  bool with_common{true};
  std::vector<DecodeStage<Scalar>> stages;  // receiver-1 decode order

  Scalar ratio_of(const std::string& label) const {
    for (const auto& s : stages)
      if (s.label == label) return s.dof_ratio;
    return Scalar(0);
  }
  Scalar individual_ratio() const { return ratio_of("M1pu") + ratio_of("M1pr"); }
  Scalar common_ratio() const { return ratio_of("M0"); }
};

namespace detail {

template <class Scalar>
struct Layer {
  std::string label;
  Scalar signal{0};     // received power of the layer being decoded
  Scalar companion{0};  // noise while decoding, cancelled along with it
};

// Stage SINRs for in-order decoding: undecoded layers count as noise,
// decoded ones are cancelled.
template <class Scalar>
std::vector<Scalar> sic_sinrs(const std::vector<Layer<Scalar>>& order, Scalar residual) {
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    Scalar noise = residual + order[k].companion;
    for (std::size_t l = k + 1; l < order.size(); ++l) noise += order[l].signal + order[l].companion;
    out.push_back(order[k].signal / noise);
  }
  return out;
}

}  // namespace detail

// Receiver i sees its own transmitter at power P and the other at P^0.6.
// Per transmitter: common U0i at P^-0.2, public at 1, private at P^-0.6,
// scaled together to unit total power. Decode order at receiver i:
// own public -> M0 -> other public -> own private; U0j is noise while M0 is
// decoded from U0i, then both common layers are cancelled.
template <class Scalar>
DecodeChainReport<Scalar> decode_chain_alpha06(Scalar power, bool with_common = true) {
  if (!(power >= Scalar(1e3)) || !std::isfinite(power)) {
    throw DomainError("P must be >= 1e3 for the signal levels to separate");
  }
  using std::pow;
  using std::log2;
  const Scalar alpha(0.6);
  const Scalar direct = power;
  const Scalar cross = pow(power, alpha);
  const Scalar common = with_common ? pow(power, Scalar(-0.2)) : Scalar(0);
  const Scalar priv = pow(power, Scalar(-0.6));
  const Scalar total = common + Scalar(1) + priv;
  const Scalar pc = common / total, pu = Scalar(1) / total, pp = priv / total;

  auto receiver = [&](const std::string& own, const std::string& other) {
    std::vector<detail::Layer<Scalar>> layers = {
        {"M" + own + "pu", direct * pu, 0},
        {"M0", direct * pc, cross * pc},
        {"M" + other + "pu", cross * pu, 0},
        {"M" + own + "pr", direct * pp, 0},
    };
    const Scalar residual = cross * pp + Scalar(1);
    const auto sinr = detail::sic_sinrs(layers, residual);
    std::vector<std::pair<std::string, Scalar>> out;
    for (std::size_t k = 0; k < layers.size(); ++k) out.emplace_back(layers[k].label, sinr[k]);
    return out;
  };
  const auto rx1 = receiver("1", "2");
  const auto rx2 = receiver("2", "1");

  const Scalar scale = log2(power);
  DecodeChainReport<Scalar> report{power, with_common, {}};
  for (const auto& [label, sinr] : rx1) {
    Scalar rate = log2(Scalar(1) + sinr);
    for (const auto& [l2, s2] : rx2) {
      if (l2 == label) rate = std::min(rate, log2(Scalar(1) + s2));
    }
    report.stages.push_back({label, sinr, rate, rate / scale});
  }
  return report;
}

}  // namespace icci
