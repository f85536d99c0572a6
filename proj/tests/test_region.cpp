#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "icci/gdof.hpp"
#include "icci/region.hpp"
#include "icci/sweep.hpp"
#include "oracles.hpp"

using namespace icci;
using icci::testing::lp_max;

namespace {
constexpr double kTol = 1e-9;
const ChannelGains<double> kSym100 = from_snr(SnrView<double>{100, 100, 10, 10});
const ChannelGains<double> kUnit{1, 1, 1, 1};
const ChannelGains<double> kNoCross{std::sqrt(3.0), 0, 0, std::sqrt(3.0)};

bool has_vertex(const VertexSet<double>& vs, const RateTriple<double>& p, double tol = 1e-9) {
  return std::any_of(vs.vertices.begin(), vs.vertices.end(),
                     [&](const auto& v) { return (v.point - p).cwiseAbs().maxCoeff() <= tol; });
}

RateRegion<double> inner_of(const ChannelGains<double>& g) { return build_inner(inner_coeffs(g)); }
RateRegion<double> outer_of(const ChannelGains<double>& g) { return build_outer(outer_coeffs(g)); }
}  // namespace

TEST_CASE("build_inner lays out the thirteen constraints in order") {
  const auto c = inner_coeffs(kSym100);
  const auto r = build_inner(c);
  REQUIRE(r.halfspaces.size() == 13);
  CHECK(r.label == RegionLabel::inner);
  CHECK(r.plane_count() == 16);
  CHECK(r.halfspaces[0].coeffs == Eigen::Vector3i(1, 1, 0));
  CHECK(r.halfspaces[0].rhs == c.g1p);
  CHECK(r.halfspaces[4].rhs == c.e1 + c.e2);
  CHECK(r.halfspaces[11].coeffs == Eigen::Vector3i(1, 2, 1));
  CHECK(r.halfspaces[11].rhs == c.a1 + c.g1p + c.e2);
  CHECK(r.halfspaces[12].coeffs == Eigen::Vector3i(1, 1, 2));
  CHECK(r.halfspaces[12].rhs == c.a2 + c.g2p + c.e1);
}

TEST_CASE("wrong side tag is a usage error") {
  CHECK_THROWS_AS(build_inner(outer_coeffs(kUnit)), std::invalid_argument);
  CHECK_THROWS_AS(build_outer(inner_coeffs(kUnit)), std::invalid_argument);
}

TEST_CASE("all-zero coefficients give the single point region") {
  for (const auto& r : {inner_of(ChannelGains<double>{}), outer_of(ChannelGains<double>{})}) {
    const auto vs = vertices(r);
    REQUIRE(vs.vertices.size() == 1);
    CHECK(vs.vertices[0].point.cwiseAbs().maxCoeff() == 0.0);
    CHECK(contains(r, RateTriple<double>::Zero().eval()));
    CHECK_FALSE(contains(r, RateTriple<double>(0.1, 0, 0), 1e-9));
  }
}

TEST_CASE("R1-axis reach of the 100/10 inner region is D1") {
  const auto r = inner_of(kSym100);
  const double reach = lp_max(r, RateTriple<double>(0, 1, 0));
  CHECK(std::abs(reach - std::log2(51.0)) < kTol);
  CHECK(std::abs(max_over_vertices(vertices(r), RateTriple<double>(0, 1, 0)) - std::log2(51.0)) < kTol);

  const RateTriple<double> p(0, inner_coeffs(kSym100).d1, 0);
  CHECK(contains(r, p));
  CHECK(std::abs(r.halfspaces[2].slack(p)) < 1e-12);
}

TEST_CASE("R0-axis reach of the unit-gain outer region is log2 5") {
  const auto r = outer_of(kUnit);
  CHECK(std::abs(lp_max(r, RateTriple<double>(1, 0, 0)) - std::log2(5.0)) < kTol);
}

TEST_CASE("interference-free inner region vertices") {
  const auto vs = vertices(inner_of(kNoCross));
  CHECK(has_vertex(vs, RateTriple<double>(0, 2, 2)));
  CHECK(has_vertex(vs, RateTriple<double>(2, 0, 0)));
  CHECK(has_vertex(vs, RateTriple<double>(0, 2, 0)));
  CHECK(has_vertex(vs, RateTriple<double>(0, 0, 2)));
  for (const auto& v : vs.vertices) CHECK(v.active.size() >= 3);
}

TEST_CASE("GDoF region at alpha = 0.6 has the (0.2, 0.6, 0.6) vertex") {
  const auto r = build_gdof_region(gdof_coeffs(GdofExponents<double>{1, 0.6, 0.6, 1}));
  CHECK(has_vertex(vertices(r), RateTriple<double>(0.2, 0.6, 0.6)));
}

TEST_CASE("within_bits examples") {
  const auto in = inner_of(kSym100);
  const auto out = outer_of(kSym100);
  CHECK(within_bits(in, in, 0.0));
  CHECK(within_bits(out, out, 0.0));

  // The outer R0-axis vertex (min(G1p, G2p), 0, 0) can shed only one bit, on
  // R0 alone, while the R0 + R1 bound differs by dG1p = 1.65 bits.
  const auto one_bit = within_bits_report(in, out, 1.0);
  CHECK_FALSE(one_bit.holds);
  CHECK(one_bit.worst_vertex(1) == 0);
  CHECK(one_bit.worst_vertex(2) == 0);
  CHECK(one_bit.worst_slack == doctest::Approx(1.0 - gap_deltas(kSym100).dG1p));
  CHECK(within_bits(in, out, 2.0));

  const auto rep = within_bits_report(inner_of(kUnit), outer_of(kUnit), 0.0);
  CHECK_FALSE(rep.holds);
  CHECK(rep.worst_slack < -1.0);
  CHECK(rep.worst_constraint >= 0);

  CHECK_THROWS_AS(within_bits(in, out, -0.5), std::invalid_argument);
}

TEST_CASE("every 100/10 inner vertex lies in the outer region") {
  const auto out = outer_of(kSym100);
  for (const auto& v : vertices(inner_of(kSym100)).vertices) CHECK(contains(out, v.point));
}

TEST_CASE("property: vertex set invariants and LP duality") {
  SplitMix64 rng(314);
  for (int i = 0; i < 100; ++i) {
    const auto g = sample_channel(rng, 1e-3, 1e3);
    for (const auto& r : {inner_of(g), outer_of(g)}) {
      const auto vs = vertices(r);
      REQUIRE_FALSE(vs.vertices.empty());
      for (std::size_t a = 0; a < vs.vertices.size(); ++a) {
        const auto& v = vs.vertices[a];
        CHECK(contains(r, v.point));
        CHECK(v.active.size() >= 3);
        for (std::size_t b = a + 1; b < vs.vertices.size(); ++b) {
          CHECK((v.point - vs.vertices[b].point).cwiseAbs().maxCoeff() > kDedupRadius);
        }
      }
      for (int k = 0; k < 10; ++k) {
        const RateTriple<double> w(rng.uniform(), rng.uniform(), rng.uniform());
        const double lp = lp_max(r, w);
        CHECK(std::abs(lp - max_over_vertices(vs, w)) <= 1e-9 * std::max(1.0, lp));
      }
    }
  }
}

TEST_CASE("property: downward comprehensiveness") {
  SplitMix64 rng(77);
  const auto g = sample_channel(rng, 1e-3, 1e3);
  const auto r = inner_of(g);
  const auto vs = vertices(r);
  int tested = 0;
  while (tested < 1000) {
    // Random convex combination of vertices is a member.
    RateTriple<double> p = RateTriple<double>::Zero();
    double total = 0;
    for (const auto& v : vs.vertices) {
      const double w = rng.uniform();
      p += w * v.point;
      total += w;
    }
    p /= total;
    REQUIRE(contains(r, p));
    const RateTriple<double> q(p(0) * rng.uniform(), p(1) * rng.uniform(), p(2) * rng.uniform());
    CHECK(contains(r, q));
    ++tested;
  }
}

TEST_CASE("property: containment, two-bit cover, monotone in b") {
  SplitMix64 rng(4242);
  for (int i = 0; i < 500; ++i) {
    const auto g = sample_channel(rng, 1e-3, 1e3);
    const auto in = inner_of(g);
    const auto out = outer_of(g);
    CHECK(containment_report(out, in).holds);
    CHECK(within_bits(in, out, 2.0));
    // One bit per coordinate falls short by at most one further bit.
    CHECK(within_bits_report(in, out, 1.0).worst_slack > -1.0);
    // A smaller budget may fail, but once it holds it keeps holding.
    const double b = 2.0 * rng.uniform();
    if (within_bits(in, out, b)) CHECK(within_bits(in, out, b + 0.25));
  }
}
