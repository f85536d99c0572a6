#include "icci/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "icci/gaussian_mi.hpp"
#include "icci/gdof.hpp"
#include "icci/info_bounds.hpp"
#include "icci/json_io.hpp"
#include "icci/region.hpp"
#include "icci/sweep.hpp"

namespace icci {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChannelArgs {
  double m11{0}, m12{0}, m21{0}, m22{0};
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--m11", m11, "|h11|");
    app->add_option("--m12", m12, "|h12|");
    app->add_option("--m21", m21, "|h21|");
    app->add_option("--m22", m22, "|h22|");
    app->add_option("--channel", file, "JSON channel descriptor {m11,m12,m21,m22}");
  }

  ChannelGains<double> resolve() const {
    if (file.empty()) {
      ChannelGains<double> g{m11, m12, m21, m22};
      validate(g);
      return g;
    }
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw IoError(file + ": " + e.what());
    }
    return channel_from_json(j);
  }
};

// Writes `text` to `path`, or to `out` when path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

std::string fixed(double v, int prec = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

int run_bounds(const ChannelGains<double>& g, bool json, std::ostream& out) {
  const auto in = inner_coeffs(g);
  const auto ou = outer_coeffs(g);
  const auto dl = gap_deltas(g);
  const bool ok = deltas_certified(g);
  if (json) {
    Json j = {{"channel", to_json(g)},
              {"inner", to_json(in)},
              {"outer", to_json(ou)},
              {"deltas", to_json(dl)},
              {"delta_inequalities", ok}};
    out << j.dump(2) << "\n";
  } else {
    out << "channel " << to_json(g).dump() << "\n";
    out << std::left << std::setw(6) << "coeff" << std::right << std::setw(14) << "inner"
        << std::setw(14) << "outer" << std::setw(14) << "delta" << "\n";
    const auto a = in.values(), b = ou.values(), d = dl.values();
    for (std::size_t k = 0; k < a.size(); ++k) {
      out << std::left << std::setw(6) << kCoeffNames[k] << std::right << std::setw(14)
          << fixed(a[k]) << std::setw(14) << fixed(b[k]) << std::setw(14) << fixed(d[k]) << "\n";
    }
    out << "delta inequalities: " << (ok ? "hold" : "VIOLATED") << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_gap(const ChannelGains<double>& g, double bits, double tol, bool json, std::ostream& out) {
  const auto inner = build_inner(inner_coeffs(g));
  const auto outer = build_outer(outer_coeffs(g));
  const auto rep = within_bits_report(inner, outer, bits, tol);
  if (json) {
    Json j = {{"channel", to_json(g)},
              {"bits", bits},
              {"pass", rep.holds},
              {"worst_slack", rep.worst_slack},
              {"worst_vertex", to_json(rep.worst_vertex)},
              {"constraint", rep.worst_constraint}};
    out << j.dump() << "\n";
  } else {
    out << to_json(g).dump() << " " << (rep.holds ? "PASS" : "FAIL")
        << " worst_slack=" << format_double(rep.worst_slack)
        << " vertex=" << to_json(rep.worst_vertex).dump()
        << " constraint=" << rep.worst_constraint << "\n";
  }
  return rep.holds ? kExitOk : kExitCheckFailed;
}

int run_curve(double lo, double hi, double step, const std::string& path, std::ostream& out) {
  const auto curve = dof_curve(lo, hi, step);
  std::string csv = "alpha,d_ic,d_icci,d_uplift,d_icci_lp\n";
  bool ok = true;
  for (const auto& s : curve) {
    csv += format_double(s.alpha) + "," + format_double(s.d_ic) + "," + format_double(s.d_icci) +
           "," + format_double(s.d_uplift) + "," + format_double(s.d_icci_lp) + "\n";
    ok = ok && std::abs(s.d_icci_lp - s.d_icci) <= kMembershipTol;
  }
  emit(csv, path, out);
  return ok ? kExitOk : kExitCheckFailed;
}

int run_verify_mi(std::uint64_t samples, std::uint64_t seed, double lo, double hi, double tol,
                  bool json, std::ostream& out) {
  double worst = 0;
  std::uint64_t worst_index = 0;
  std::size_t worst_term = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto rng = SplitMix64::substream(seed, i);
    const auto g = sample_channel(rng, lo, hi);
    const auto mi = mi_terms_pg(g).values();
    const auto cf = inner_coeffs(g).values();
    for (std::size_t k = 0; k < mi.size(); ++k) {
      const double d = std::abs(mi[k] - cf[k]);
      if (d > worst) {
        worst = d;
        worst_index = i;
        worst_term = k;
      }
    }
  }
  const bool ok = worst <= tol;
  if (json) {
    Json j = {{"samples", samples}, {"seed", seed},
              {"max_abs_discrepancy", worst}, {"worst_sample", worst_index},
              {"worst_term", std::string(kCoeffNames[worst_term])}, {"tol", tol}, {"pass", ok}};
    out << j.dump(2) << "\n";
  } else {
    out << "verify-mi samples=" << samples << " seed=" << seed << "\n"
        << "max |MI - closed form| = " << format_double(worst) << " (term "
        << kCoeffNames[worst_term] << ", sample " << worst_index << ")\n"
        << (ok ? "PASS" : "FAIL") << " tol=" << format_double(tol) << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_alpha06(double p, bool with_common, bool json, std::ostream& out) {
  const auto rep = decode_chain_alpha06(p, with_common);
  if (!json) {
    out << "decode chain at receiver 1, alpha=0.6, P=" << format_double(p)
        << (with_common ? "" : " (no common message)") << "\n";
    out << std::left << std::setw(6) << "stage" << std::right << std::setw(16) << "sinr"
        << std::setw(12) << "rate" << std::setw(12) << "dof" << "\n";
    for (const auto& s : rep.stages) {
      out << std::left << std::setw(6) << s.label << std::right << std::setw(16)
          << fixed(s.sinr, 3) << std::setw(12) << fixed(s.rate, 4) << std::setw(12)
          << fixed(s.dof_ratio, 4) << "\n";
    }
    out << "individual dof=" << fixed(rep.individual_ratio(), 4)
        << " common dof=" << fixed(rep.common_ratio(), 4) << "\n";
  }
  out << to_json(rep).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity-region bounds for the Gaussian interference channel with common information",
               "icci"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output")->configurable(false);

  ChannelArgs bounds_ch;
  auto* bounds = app.add_subcommand("bounds", "inner/outer coefficients and their deltas");
  bounds_ch.attach(bounds);
  bounds->add_flag("--json", json, "JSON output");

  ChannelArgs region_ch;
  std::string region_side = "inner";
  std::string region_out;
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  auto* region = app.add_subcommand("region", "halfspaces and vertices of a region (JSON)");
  region_ch.attach(region);
  region->add_option("--side", region_side, "inner | outer | gdof")
      ->check(CLI::IsMember({"inner", "outer", "gdof"}));
  region->add_option("--a11", a11, "GDoF exponent (gdof side)");
  region->add_option("--a12", a12, "GDoF exponent (gdof side)");
  region->add_option("--a21", a21, "GDoF exponent (gdof side)");
  region->add_option("--a22", a22, "GDoF exponent (gdof side)");
  region->add_option("--out", region_out, "write to file instead of stdout");
  region->add_flag("--json", json, "accepted for uniformity; output is always JSON");

  ChannelArgs gap_ch;
  double gap_bits = 1.0, gap_tol = kMembershipTol;
  auto* gap = app.add_subcommand("gap", "within-bits certificate for one channel");
  gap_ch.attach(gap);
  gap->add_option("--bits", gap_bits, "gap budget in bits")->check(CLI::NonNegativeNumber);
  gap->add_option("--tol", gap_tol, "membership tolerance")->check(CLI::NonNegativeNumber);
  gap->add_flag("--json", json, "JSON output");

  double lo = 0, hi = 3, step = 0.01;
  std::string curve_out;
  auto* curve = app.add_subcommand("gdof-curve", "per-user DoF curves as CSV");
  curve->add_option("--alpha-min", lo, "first alpha");
  curve->add_option("--alpha-max", hi, "last alpha");
  curve->add_option("--step", step, "grid step");
  curve->add_option("--out", curve_out, "CSV path (stdout when omitted)");

  std::uint64_t mi_samples = 1000, mi_seed = 42;
  double mi_lo = 1e-2, mi_hi = 1e2, mi_tol = 1e-9;
  auto* vmi = app.add_subcommand("verify-mi", "log-det MI terms against the closed forms");
  vmi->add_option("--samples", mi_samples, "random channels")->check(CLI::PositiveNumber);
  vmi->add_option("--seed", mi_seed, "generator seed");
  vmi->add_option("--mag-min", mi_lo, "smallest magnitude")->check(CLI::PositiveNumber);
  vmi->add_option("--mag-max", mi_hi, "largest magnitude")->check(CLI::PositiveNumber);
  vmi->add_option("--tol", mi_tol, "allowed discrepancy in bits")->check(CLI::NonNegativeNumber);
  vmi->add_flag("--json", json, "JSON output");

  double power = 1e10;
  bool no_common = false;
  auto* ex = app.add_subcommand("example-alpha06", "successive-decoding chain at alpha = 0.6");
  ex->add_option("--p", power, "power P (>= 1e3)");
  ex->add_flag("--no-common", no_common, "set the common-message layers to zero");
  ex->add_flag("--json", json, "JSON only");

  SweepConfig sweep_cfg;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "seeded random-channel gap sweep");
  sweep->add_option("--samples", sweep_cfg.samples, "channels to draw")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_cfg.seed, "generator seed");
  sweep->add_option("--mag-min", sweep_cfg.mag_min, "smallest magnitude")->check(CLI::PositiveNumber);
  sweep->add_option("--mag-max", sweep_cfg.mag_max, "largest magnitude")->check(CLI::PositiveNumber);
  sweep->add_option("--bits", sweep_cfg.bits, "gap budget in bits")->check(CLI::NonNegativeNumber);
  sweep->add_option("--tol", sweep_cfg.tol, "membership tolerance")->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", sweep_out, "report path (stdout when omitted)");
  sweep->add_flag("--json", json, "JSON report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*bounds) return run_bounds(bounds_ch.resolve(), json, out);
    if (*region) {
      RateRegion<double> r;
      if (region_side == "gdof") {
        r = build_gdof_region(gdof_coeffs(GdofExponents<double>{a11, a12, a21, a22}));
      } else {
        const auto g = region_ch.resolve();
        r = region_side == "inner" ? build_inner(inner_coeffs(g)) : build_outer(outer_coeffs(g));
      }
      emit(to_json(r, vertices(r)).dump(2) + "\n", region_out, out);
      return kExitOk;
    }
    if (*gap) return run_gap(gap_ch.resolve(), gap_bits, gap_tol, json, out);
    if (*curve) return run_curve(lo, hi, step, curve_out, out);
    if (*vmi) return run_verify_mi(mi_samples, mi_seed, mi_lo, mi_hi, mi_tol, json, out);
    if (*ex) return run_alpha06(power, !no_common, json, out);
    if (*sweep) {
      const auto rep = run_gap_sweep(sweep_cfg);
      emit(json ? render_json(rep, sweep_cfg) : render_text(rep, sweep_cfg), sweep_out, out);
      err << "elapsed " << fixed(rep.elapsed_seconds, 3) << " s\n";
      return rep.fail_count == 0 ? kExitOk : kExitCheckFailed;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace icci
