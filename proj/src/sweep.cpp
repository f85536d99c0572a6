#include "icci/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "icci/json_io.hpp"

namespace icci {

ChannelGains<double> sample_channel(SplitMix64& rng, double lo, double hi) {
  const double llo = std::log(lo);
  const double span = std::log(hi) - llo;
  auto draw = [&] { return std::exp(llo + span * rng.uniform()); };
  ChannelGains<double> g;
  g.m11 = draw();
  g.m12 = draw();
  g.m21 = draw();
  g.m22 = draw();
  return g;
}

void validate(const SweepConfig& c) {
  if (c.samples < 1) throw DomainError("samples must be >= 1");
  if (!(c.mag_min > 0) || !(c.mag_max >= c.mag_min) || !std::isfinite(c.mag_max)) {
    throw DomainError("need 0 < mag-min <= mag-max");
  }
  if (!(c.bits >= 0) || !std::isfinite(c.bits)) throw DomainError("bits must be >= 0");
  if (!(c.tol >= 0)) throw DomainError("tol must be >= 0");
  if (c.fixed_channel) validate(*c.fixed_channel);
}

ChannelCheck check_channel(const ChannelGains<double>& gains, double bits, double tol) {
  ChannelCheck out;
  out.gains = gains;
  out.deltas = gap_deltas(gains);
  out.deltas_ok = deltas_certified(gains, tol);
  const auto inner = build_inner(inner_coeffs(gains));
  const auto outer = build_outer(outer_coeffs(gains));
  out.containment = containment_report(outer, inner, tol);
  out.gap = within_bits_report(inner, outer, bits, tol);
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ICCI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepReport run_gap_sweep(const SweepConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t n = config.samples;
  std::vector<ChannelCheck> results(n);

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(config.threads), n));
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < n; i += workers) {
      ChannelGains<double> g;
      if (config.fixed_channel) {
        g = *config.fixed_channel;
      } else {
        auto rng = SplitMix64::substream(config.seed, i);
        g = sample_channel(rng, config.mag_min, config.mag_max);
      }
      results[i] = check_channel(g, config.bits, config.tol);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  SweepReport rep;
  rep.samples = n;
  bool first = true;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto& r = results[i];
    if (r.passed()) {
      ++rep.pass_count;
    } else {
      ++rep.fail_count;
      rep.failures.push_back({i, r});
    }
    if (first || r.gap.worst_slack < rep.worst_slack) {
      first = false;
      rep.worst_index = i;
      rep.worst_channel = r.gains;
      rep.worst_constraint = r.gap.worst_constraint;
      rep.worst_slack = r.gap.worst_slack;
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

std::string failure_reasons(const ChannelCheck& c) {
  std::string s;
  auto add = [&](const char* r) {
    if (!s.empty()) s += ",";
    s += r;
  };
  if (!c.deltas_ok) add("deltas");
  if (!c.containment.holds) add("containment");
  if (!c.gap.holds) add("within-bits");
  return s;
}

}  // namespace

std::string render_text(const SweepReport& r, const SweepConfig& c) {
  std::ostringstream os;
  os << "sweep seed=" << c.seed << " samples=" << r.samples
     << " mag=[" << format_double(c.mag_min) << "," << format_double(c.mag_max) << "]"
     << " bits=" << format_double(c.bits) << " tol=" << format_double(c.tol) << "\n";
  os << "pass=" << r.pass_count << " fail=" << r.fail_count << "\n";
  os << "worst sample=" << r.worst_index << " constraint=" << r.worst_constraint
     << " slack=" << format_double(r.worst_slack) << " channel=" << to_json(r.worst_channel).dump()
     << "\n";
  for (const auto& f : r.failures) {
    os << "FAIL sample=" << f.index << " reasons=" << failure_reasons(f.check)
       << " channel=" << to_json(f.check.gains).dump()
       << " vertex=" << to_json(f.check.gap.worst_vertex).dump()
       << " slack=" << format_double(f.check.gap.worst_slack) << "\n";
  }
  return os.str();
}

std::string render_json(const SweepReport& r, const SweepConfig& c) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"sample", f.index},
                        {"reasons", failure_reasons(f.check)},
                        {"channel", to_json(f.check.gains)},
                        {"deltas", to_json(f.check.deltas)},
                        {"vertex", to_json(f.check.gap.worst_vertex)},
                        {"constraint", f.check.gap.worst_constraint},
                        {"slack", f.check.gap.worst_slack}});
  }
  Json j = {{"seed", c.seed},
            {"samples", r.samples},
            {"mag_min", c.mag_min},
            {"mag_max", c.mag_max},
            {"bits", c.bits},
            {"tol", c.tol},
            {"pass_count", r.pass_count},
            {"fail_count", r.fail_count},
            {"worst_case",
             {{"sample", r.worst_index},
              {"channel", to_json(r.worst_channel)},
              {"constraint", r.worst_constraint},
              {"slack", r.worst_slack}}},
            {"failures", failures}};
  return j.dump(2) + "\n";
}

}  // namespace icci
