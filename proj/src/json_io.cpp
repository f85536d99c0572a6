#include "icci/json_io.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace icci {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, res.ptr};
}

Json to_json(const ChannelGains<double>& g) {
  return {{"m11", g.m11}, {"m12", g.m12}, {"m21", g.m21}, {"m22", g.m22}};
}

Json to_json(const BoundCoeffs<double>& c) {
  Json j;
  const auto vals = c.values();
  for (std::size_t k = 0; k < vals.size(); ++k) j[std::string(kCoeffNames[k])] = vals[k];
  j["side"] = std::string(to_string(c.side));
  return j;
}

Json to_json(const GapDeltas<double>& d) {
  Json j;
  const auto vals = d.values();
  for (std::size_t k = 0; k < vals.size(); ++k) j["d" + std::string(kCoeffNames[k])] = vals[k];
  return j;
}

Json to_json(const MiTerms<double>& m) {
  static constexpr const char* names[] = {"a1", "a2", "d1", "d2", "e1", "e2", "g1", "g2", "g1p", "g2p"};
  Json j;
  const auto vals = m.values();
  for (std::size_t k = 0; k < vals.size(); ++k) j[names[k]] = vals[k];
  return j;
}

// Adding 0.0 folds the -0.0 that elimination can leave on inactive axes.
Json to_json(const RateTriple<double>& p) { return Json::array({p(0) + 0.0, p(1) + 0.0, p(2) + 0.0}); }

Json to_json(const RateRegion<double>& r, const VertexSet<double>& v) {
  Json hs = Json::array();
  for (const auto& h : r.halfspaces) {
    hs.push_back({{"c", Json::array({h.coeffs(0), h.coeffs(1), h.coeffs(2)})}, {"rhs", h.rhs}});
  }
  Json vs = Json::array();
  for (const auto& x : v.vertices) vs.push_back(to_json(x.point));
  return {{"label", std::string(to_string(r.label))},
          {"halfspaces", hs},
          {"vertices", vs},
          {"activity", constraint_activity(r, v)}};
}

Json to_json(const DecodeChainReport<double>& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"label", s.label}, {"sinr", s.sinr}, {"rate", s.rate}, {"dof_ratio", s.dof_ratio}});
  }
  return {{"P", r.power},
          {"with_common", r.with_common},
          {"stages", stages},
          {"individual_ratio", r.individual_ratio()},
          {"common_ratio", r.common_ratio()}};
}

ChannelGains<double> channel_from_json(const Json& j) {
  auto get = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
      throw std::invalid_argument(std::string("channel descriptor needs numeric \"") + key + "\"");
    }
    return j.at(key).get<double>();
  };
  ChannelGains<double> g{get("m11"), get("m12"), get("m21"), get("m22")};
  validate(g);
  return g;
}

}  // namespace icci
