#pragma once

// JSON encodings of the channel descriptor and the report types, plus
// shortest round-trip number formatting for text and CSV output.

#include <json.hpp>

#include <string>

#include "icci/channel.hpp"
#include "icci/gaussian_mi.hpp"
#include "icci/info_bounds.hpp"
#include "icci/region.hpp"

namespace icci {

using Json = nlohmann::ordered_json;

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

Json to_json(const ChannelGains<double>& g);
Json to_json(const BoundCoeffs<double>& c);
Json to_json(const GapDeltas<double>& d);
Json to_json(const MiTerms<double>& m);
Json to_json(const RateRegion<double>& r, const VertexSet<double>& v);
Json to_json(const DecodeChainReport<double>& r);
Json to_json(const RateTriple<double>& p);

// Reads {"m11","m12","m21","m22"}; throws std::invalid_argument on a missing
// or non-numeric key and DomainError on a negative or non-finite value.
ChannelGains<double> channel_from_json(const Json& j);

}  // namespace icci
