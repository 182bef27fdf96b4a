// facetlab: Monte-Carlo laboratory for extremal facets of random
// spherical polytopes. Subcommands: simulate, fit, verify, bounds, caps.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "facetlab/bounds.hpp"
#include "facetlab/cap.hpp"
#include "facetlab/extremal.hpp"
#include "facetlab/hull.hpp"
#include "facetlab/simplex_law.hpp"
#include "facetlab/special.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// FNV-1a over the canonical config string; excludes output path and
// thread count so reruns with different parallelism hash identically.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct Output {
  std::ostream* os = &std::cout;
  std::ofstream file;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    os = &file;
  }
};

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

struct CheckLine {
  std::string name;
  bool ok = false;
  bool inconclusive = false;
  json detail;
};

json report_json(const std::string& suite, std::uint64_t seed, std::uint64_t hash,
                 const std::vector<CheckLine>& checks) {
  json rep;
  rep["suite"] = suite;
  rep["seed"] = seed;
  rep["config_hash"] = hash;
  rep["version"] = kVersion;
  rep["checks"] = json::array();
  bool all_ok = true;
  for (const CheckLine& c : checks) {
    json jc = c.detail;
    jc["name"] = c.name;
    jc["ok"] = c.ok;
    if (c.inconclusive) jc["inconclusive"] = true;
    rep["checks"].push_back(jc);
    all_ok = all_ok && (c.ok || c.inconclusive);
  }
  rep["ok"] = all_ok;
  return rep;
}

json bound_report_json(const ftl::BoundReport& r) {
  json j;
  j["bound"] = r.bound_name;
  j["n"] = r.n;
  j["scale"] = r.scale;
  j["t"] = r.t;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["empirical"] = r.empirical;
  j["stderr"] = r.empirical_stderr;
  j["events"] = r.events;
  j["satisfied"] = r.satisfied;
  j["inconclusive"] = r.inconclusive;
  return j;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::vector<int>& n_list, const std::vector<long>& N_list,
                 long trials, std::uint64_t seed, const std::string& out,
                 const std::string& format) {
  const std::string canonical = "simulate|n=" + [&] {
    std::string s;
    for (int n : n_list) s += std::to_string(n) + ",";
    s += "|N=";
    for (long N : N_list) s += std::to_string(N) + ",";
    s += "|trials=" + std::to_string(trials) + "|seed=" + std::to_string(seed);
    return s;
  }();
  const std::uint64_t hash = fnv1a(canonical);
  Output o;
  o.open(out);

  std::vector<ftl::AggregateStat> aggs;
  for (int n : n_list) {
    for (long N : N_list) aggs.push_back(ftl::aggregate(seed, n, N, trials));
  }

  const auto rows_of = [](const ftl::AggregateStat& a) {
    std::vector<std::pair<std::string, ftl::StatMoments>> rows = {
        {"min_facet", a.min_facet},
        {"max_facet", a.max_facet},
        {"max_cap_height", a.max_cap_height},
    };
    if (a.n == 2) {
      rows.push_back({"min_arc_gap", a.min_arc_gap});
      rows.push_back({"max_arc_gap", a.max_arc_gap});
    }
    return rows;
  };

  if (format == "json") {
    json doc;
    doc["seed"] = seed;
    doc["config_hash"] = hash;
    doc["version"] = kVersion;
    doc["rows"] = json::array();
    for (const auto& a : aggs) {
      for (const auto& [stat, m] : rows_of(a)) {
        doc["rows"].push_back({{"n", a.n},
                               {"N", a.N},
                               {"trials", a.trials},
                               {"stat", stat},
                               {"mean", m.mean},
                               {"stderr", m.stderr_}});
      }
    }
    *o.os << doc.dump(2) << "\n";
  } else {
    *o.os << "# seed=" << seed << "\n# config_hash=" << hash << "\n# version=" << kVersion
          << "\n";
    *o.os << "n,N,trials,stat,mean,stderr\n";
    for (const auto& a : aggs) {
      for (const auto& [stat, m] : rows_of(a)) {
        *o.os << a.n << "," << a.N << "," << a.trials << "," << stat << "," << fmt(m.mean)
              << "," << fmt(m.stderr_) << "\n";
      }
    }
  }
  return 0;
}

// --------------------------------------------------------------------- fit

struct CsvRow {
  int n;
  long N;
  long trials;
  std::string stat;
  double mean;
  double stderr_;
};

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<CsvRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "n,N,trials,stat,mean,stderr") {
        throw std::runtime_error("malformed CSV header in " + path);
      }
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    CsvRow r;
    try {
      std::getline(ss, field, ',');
      r.n = std::stoi(field);
      std::getline(ss, field, ',');
      r.N = std::stol(field);
      std::getline(ss, field, ',');
      r.trials = std::stol(field);
      std::getline(ss, r.stat, ',');
      std::getline(ss, field, ',');
      r.mean = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::runtime_error("short row");
      r.stderr_ = std::stod(field);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed CSV row in " + path + ": " + line);
    }
    rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("missing CSV header in " + path);
  return rows;
}

// Exponent windows for the min-facet power fits; max-facet growth is
// checked as a log N/N ratio spread instead.
bool expected_window(int n, double* lo, double* hi) {
  if (n == 2) {
    *lo = -2.15;
    *hi = -1.85;
  } else if (n == 3) {
    *lo = -1.75;
    *hi = -1.45;
  } else {
    *lo = -1.65;
    *hi = -1.35;
  }
  return true;
}

int cmd_fit(const std::string& in_path, const std::string& model_name,
            const std::string& stat, const std::string& out, std::uint64_t seed_hint) {
  const ftl::FitModel model =
      model_name == "log_over_n" ? ftl::FitModel::log_over_N : ftl::FitModel::power;
  std::vector<CsvRow> rows = read_csv(in_path);
  std::map<int, std::vector<ftl::FitPoint>> by_n;
  for (const CsvRow& r : rows) {
    if (r.stat == stat) {
      by_n[r.n].push_back({static_cast<double>(r.N), r.mean, r.stderr_});
    }
  }
  if (by_n.empty()) throw std::runtime_error("no rows with stat '" + stat + "' in " + in_path);

  json doc;
  doc["input"] = in_path;
  doc["stat"] = stat;
  doc["model"] = model_name;
  doc["seed"] = seed_hint;
  doc["config_hash"] = fnv1a("fit|" + in_path + "|" + model_name + "|" + stat);
  doc["version"] = kVersion;
  doc["fits"] = json::array();
  bool all_ok = true;
  for (const auto& [n, pts] : by_n) {
    if (pts.size() < 4) throw std::runtime_error("need >= 4 N points for n=" + std::to_string(n));
    const ftl::ScalingFit fit = ftl::fit_scaling(pts, model);
    json jf;
    jf["n"] = n;
    jf["alpha"] = fit.alpha;
    jf["c"] = fit.c;
    jf["rms"] = fit.rms;
    jf["residuals"] = fit.residuals;
    bool ok = true;
    if (model == ftl::FitModel::power) {
      double lo, hi;
      expected_window(n, &lo, &hi);
      jf["expected_window"] = {lo, hi};
      ok = fit.alpha >= lo && fit.alpha <= hi;
    } else {
      jf["ratios"] = fit.ratios;
      jf["ratio_spread"] = fit.ratio_spread;
      ok = fit.ratio_spread < 2.0;
    }
    jf["ok"] = ok;
    all_ok = all_ok && ok;
    doc["fits"].push_back(jf);
  }
  doc["ok"] = all_ok;
  Output o;
  o.open(out);
  *o.os << doc.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------ verify

std::vector<CheckLine> suite_caps(std::uint64_t seed, long samples) {
  std::vector<CheckLine> checks;
  // Cap hit-fraction vs analytic area over an (n, p) grid.
  for (int n : {2, 3, 4, 5}) {
    for (double p : {-0.5, 0.0, 0.3, 0.8}) {
      ftl::RngStream rng(seed, 0x900000 + n * 16 + static_cast<int>((p + 1) * 4));
      long hits = 0;
      std::vector<double> x(n);
      for (long i = 0; i < samples; ++i) {
        ftl::sample_sphere_point(rng, n, x.data());
        if (x[0] >= p) ++hits;
      }
      const double frac = static_cast<double>(hits) / samples;
      const double expect = ftl::cap_area(n, p) / ftl::sphere_area(n);
      const double se = std::sqrt(expect * (1.0 - expect) / samples);
      CheckLine c;
      c.name = "cap_area_hit_fraction_n" + std::to_string(n) + "_p" + fmt(p);
      c.ok = std::fabs(frac - expect) <= 4.0 * se;
      c.detail = {{"empirical", frac}, {"expected", expect}, {"stderr", se}};
      checks.push_back(c);
    }
  }
  // Closed form for n = 3.
  {
    CheckLine c;
    c.name = "cap_area_n3_closed_form";
    c.ok = std::fabs(ftl::cap_area(3, 0.25) - 2.0 * M_PI * 0.75) < 1e-12;
    checks.push_back(c);
  }
  // Area sandwich for n >= 4.
  for (int n : {4, 5, 6}) {
    bool ok = true;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const ftl::CapAreaBounds b = ftl::cap_area_bounds(n, p);
      const double a = ftl::cap_area(n, p);
      ok = ok && b.lower <= a * (1 + 1e-12) && a <= b.upper * (1 + 1e-12);
    }
    CheckLine c;
    c.name = "cap_area_sandwich_n" + std::to_string(n);
    c.ok = ok;
    checks.push_back(c);
  }
  // Angle sandwich.
  for (int n : {2, 3, 4, 5}) {
    bool ok = true;
    for (double R : {10.0, 100.0, 1000.0}) {
      const ftl::CapAngle a = ftl::cap_angle_from_fraction(n, R);
      ok = ok && a.lower <= a.phi * (1 + 1e-12) + 1e-10 &&
           a.phi <= a.upper * (1 + 1e-12) + 1e-10;
    }
    CheckLine c;
    c.name = "cap_angle_sandwich_n" + std::to_string(n);
    c.ok = ok;
    checks.push_back(c);
  }
  // Packing counts.
  for (int n : {2, 3, 4}) {
    for (double R : {10.0, 100.0, 1000.0}) {
      CheckLine c;
      c.name = "cap_packing_n" + std::to_string(n) + "_R" + fmt(R);
      try {
        ftl::RngStream rng(seed, 0xA00000 + n * 16 + static_cast<int>(R));
        const ftl::CapPacking pk = ftl::build_cap_packing(rng, n, R);
        const double k = static_cast<double>(pk.caps.size());
        c.ok = k >= std::pow(3.0, -n) * R && k <= R;
        c.detail = {{"k", pk.caps.size()}, {"delta", pk.delta}};
      } catch (const ftl::PackingFailure& e) {
        c.ok = false;
        c.detail = {{"error", e.what()}};
      }
      checks.push_back(c);
    }
  }
  return checks;
}

std::vector<CheckLine> suite_simplex(std::uint64_t seed, long samples) {
  std::vector<CheckLine> checks;
  for (int n : {2, 3, 4}) {
    const ftl::MomentEstimate m = ftl::estimate_moment(seed, n, 1, samples);
    const double miles = ftl::miles_expected_volume(n);
    CheckLine c;
    c.name = "miles_vs_monte_carlo_n" + std::to_string(n);
    c.ok = std::fabs(m.value - miles) <= 5.0 * m.stderr_;
    c.detail = {{"monte_carlo", m.value}, {"miles", miles}, {"stderr", m.stderr_}};
    checks.push_back(c);
  }
  for (int n : {2, 3}) {
    const std::vector<double> grid = n == 2 ? std::vector<double>{0.01, 0.1, 1.0}
                                            : std::vector<double>{0.001, 0.01, 0.1};
    const ftl::SandwichReport rep = ftl::verify_cdf_sandwich(seed, n, grid, samples);
    CheckLine c;
    c.name = "cdf_sandwich_n" + std::to_string(n);
    c.ok = rep.ok;
    c.detail["entries"] = json::array();
    for (const auto& e : rep.entries) {
      c.detail["entries"].push_back({{"t", e.t},
                                     {"empirical", e.empirical},
                                     {"lower", e.lower},
                                     {"upper", e.upper},
                                     {"ok", e.ok}});
    }
    checks.push_back(c);
  }
  for (int n : {2, 3}) {
    const ftl::SecondMomentReport rep = ftl::verify_second_moment_bound(seed, n, samples);
    CheckLine c;
    c.name = "second_moment_bound_n" + std::to_string(n);
    c.ok = rep.ok;
    c.detail = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"slack", rep.slack}};
    checks.push_back(c);
  }
  return checks;
}

std::vector<CheckLine> suite_bp(std::uint64_t seed, int n, long samples) {
  const ftl::BpReport rep = ftl::verify_blaschke_petkantschin(seed, n, samples);
  CheckLine c;
  c.name = "blaschke_petkantschin_n" + std::to_string(n);
  c.ok = rep.ok;
  c.detail = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"stderr", rep.stderr_}};
  return {c};
}

std::vector<CheckLine> suite_tails(std::uint64_t seed, const std::vector<int>& n_list,
                                   long trials) {
  std::vector<CheckLine> checks;
  for (int n : n_list) {
    for (long N : {50L, 200L}) {
      const std::vector<ftl::TrialSummary> ts = ftl::run_trials(seed, n, N, trials);
      // t-grid spanning the observed range of max facet volumes.
      double tmax = 0.0;
      for (const auto& s : ts) tmax = std::max(tmax, s.max_facet_vol);
      long lemma8_viol = 0;
      for (const auto& s : ts) lemma8_viol += s.cap_volume_violations;
      bool ok = true;
      json entries = json::array();
      for (int i = 0; i < 8; ++i) {
        const double t = tmax * (i + 1) / 9.0;
        long cnt = 0;
        for (const auto& s : ts) {
          if (s.max_facet_vol >= t) ++cnt;
        }
        const double emp = static_cast<double>(cnt) / trials;
        const double se = std::sqrt(emp * (1.0 - emp) / trials);
        const double bound = ftl::max_facet_tail_bound(n, N, t).clamped;
        const bool pt_ok = emp <= bound + 4.0 * se;
        ok = ok && pt_ok;
        entries.push_back({{"t", t}, {"empirical", emp}, {"bound", bound}, {"ok", pt_ok}});
      }
      // Hausdorff tail via the cap-height proxy (max_cap_height <= d_H).
      json hentries = json::array();
      for (double delta : {0.25, 0.5, 0.75, 1.0}) {
        long cnt = 0;
        for (const auto& s : ts) {
          if (s.max_cap_height >= delta) ++cnt;
        }
        const double emp = static_cast<double>(cnt) / trials;
        const double se = std::sqrt(emp * (1.0 - emp) / trials);
        const double bound = ftl::hausdorff_tail_bound(n, N, delta).clamped;
        const bool pt_ok = emp <= bound + 4.0 * se;
        ok = ok && pt_ok;
        hentries.push_back({{"delta", delta}, {"empirical", emp}, {"bound", bound}, {"ok", pt_ok}});
      }
      CheckLine c;
      c.name = "tail_bounds_n" + std::to_string(n) + "_N" + std::to_string(N);
      c.ok = ok && lemma8_viol == 0;
      c.detail = {{"max_facet", entries},
                  {"hausdorff", hentries},
                  {"cap_volume_violations", lemma8_viol}};
      checks.push_back(c);
    }
  }
  return checks;
}

std::vector<CheckLine> suite_lemma17() {
  std::vector<CheckLine> checks;
  for (int n : {4, 5}) {
    for (long N : {10000L, 100000L}) {
      const ftl::BoundReport rep = ftl::lemma17_integral_check(n, N);
      CheckLine c;
      c.name = "integral_inequality_n" + std::to_string(n) + "_N" + std::to_string(N);
      c.ok = rep.satisfied;
      c.detail = {{"lhs", rep.empirical}, {"rhs", rep.upper}};
      checks.push_back(c);
    }
  }
  return checks;
}

std::vector<CheckLine> suite_events(std::uint64_t seed, long trials) {
  std::vector<CheckLine> checks;
  {
    const double R = std::pow(M_PI, 3) * 3;
    const ftl::BoundReport rep = ftl::estimate_event_H(seed, 3, R, trials);
    CheckLine c;
    c.name = "event_H_n3";
    c.ok = rep.satisfied;
    c.inconclusive = rep.inconclusive;
    c.detail = bound_report_json(rep);
    checks.push_back(c);
  }
  for (double t : {1.0, M_PI}) {
    const ftl::BoundReport rep = ftl::estimate_event_Htilde(seed, 3, 100, t, trials);
    CheckLine c;
    c.name = "event_Htilde_n3_t" + fmt(t);
    c.ok = rep.satisfied;
    c.inconclusive = rep.inconclusive;
    c.detail = bound_report_json(rep);
    checks.push_back(c);
  }
  {
    const ftl::BoundReport rep = ftl::estimate_event_Htilde(seed, 4, 100, 1.0, trials);
    CheckLine c;
    c.name = "event_Htilde_n4_t1";
    c.ok = rep.satisfied;
    c.inconclusive = rep.inconclusive;
    c.detail = bound_report_json(rep);
    checks.push_back(c);
  }
  return checks;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int n, long budget,
               const std::string& out) {
  std::vector<CheckLine> checks;
  if (suite == "caps") {
    checks = suite_caps(seed, budget > 0 ? budget : 200000);
  } else if (suite == "simplex") {
    checks = suite_simplex(seed, budget > 0 ? budget : 200000);
  } else if (suite == "bp") {
    checks = suite_bp(seed, n > 0 ? n : 3, budget > 0 ? budget : 2000000);
  } else if (suite == "tails") {
    std::vector<int> n_list = n > 0 ? std::vector<int>{n} : std::vector<int>{2};
    checks = suite_tails(seed, n_list, budget > 0 ? budget : 2000);
  } else if (suite == "lemma17") {
    checks = suite_lemma17();
  } else if (suite == "events") {
    checks = suite_events(seed, budget > 0 ? budget : 1000000);
  } else {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  const json doc = report_json(suite, seed, fnv1a("verify|" + suite + "|" + std::to_string(seed)),
                               checks);
  Output o;
  o.open(out);
  *o.os << doc.dump(2) << "\n";
  return doc["ok"].get<bool>() ? 0 : 1;
}

// ------------------------------------------------------------------ bounds

int cmd_bounds(const std::string& which, const std::vector<int>& n_list,
               const std::vector<long>& N_list, const std::vector<double>& t_list,
               const std::string& out) {
  Output o;
  o.open(out);
  *o.os << "# config_hash=" << fnv1a("bounds|" + which) << "\n# version=" << kVersion << "\n";
  *o.os << "bound,n,N,t,value_a,value_b\n";
  const auto row = [&](int n, long N, double t, double a, double b) {
    *o.os << which << "," << n << "," << N << "," << fmt(t) << "," << fmt(a) << "," << fmt(b)
          << "\n";
  };
  for (int n : n_list) {
    for (long N : N_list) {
      for (double t : t_list) {
        if (which == "hausdorff_tail") {
          const ftl::RawBound b = ftl::hausdorff_tail_bound(n, N, t);
          row(n, N, t, b.raw, b.clamped);
        } else if (which == "max_facet_tail") {
          const ftl::RawBound b = ftl::max_facet_tail_bound(n, N, t);
          row(n, N, t, b.raw, b.clamped);
        } else if (which == "max_facet_expectation") {
          const double b = ftl::max_facet_expectation_bound(n, N);
          row(n, N, t, b, b);
        } else if (which == "min_facet_interval") {
          const ftl::MinFacetInterval iv = ftl::min_facet_interval(n, N);
          row(n, N, t, iv.lower, iv.upper);
        } else if (which == "min_facet_existence") {
          const ftl::RawBound b = ftl::min_facet_existence_bound(n, N, t);
          row(n, N, t, b.raw, b.clamped);
        } else if (which == "lemma15") {
          const ftl::SandwichBound b = ftl::lemma15_bounds(n, N, t);
          row(n, N, t, b.lower, b.upper);
        } else if (which == "cdf") {
          const ftl::CdfBounds b = ftl::cdf_bounds(n, t);
          row(n, N, t, b.lower_applicable ? b.lower : std::nan(""), b.upper);
        } else {
          std::cerr << "unknown bound: " << which << "\n";
          return 2;
        }
      }
    }
  }
  return 0;
}

// -------------------------------------------------------------------- caps

int cmd_caps(int n, double p, double R, const std::string& out) {
  json doc;
  doc["version"] = kVersion;
  doc["n"] = n;
  if (R > 0.0) {
    p = ftl::cap_offset_from_fraction(n, R);
    const ftl::CapAngle a = ftl::cap_angle_from_fraction(n, R);
    doc["R"] = R;
    doc["angle_lower"] = a.lower;
    doc["angle_upper"] = a.upper;
  }
  doc["offset"] = p;
  doc["height"] = 1.0 - p;
  doc["angle"] = std::acos(p);
  doc["radius"] = std::sqrt(std::max(0.0, 1.0 - p * p));
  doc["area"] = ftl::cap_area(n, p);
  doc["area_fraction"] = ftl::cap_area(n, p) / ftl::sphere_area(n);
  if (n >= 4 && p > 0.0) {
    const ftl::CapAreaBounds b = ftl::cap_area_bounds(n, p);
    doc["area_lower"] = b.lower;
    doc["area_upper"] = b.upper;
  }
  Output o;
  o.open(out);
  *o.os << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"facetlab: extremal facet statistics of random spherical polytopes"};
  app.require_subcommand(1);

  std::vector<int> n_list{2};
  std::vector<long> N_list{100};
  long trials = 1000;
  std::uint64_t seed = 1234;
  int threads = 0;
  std::string out_path, format = "csv";

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo extremal facet statistics");
  sim->add_option("--n", n_list, "dimension list")->delimiter(',');
  sim->add_option("--N", N_list, "point count list")->delimiter(',');
  sim->add_option("--trials", trials, "trials per (n, N)");
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--threads", threads, "OpenMP thread count (0 = default)");
  sim->add_option("--out", out_path, "output file (default stdout)");
  sim->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string fit_in, fit_model = "power", fit_stat = "min_facet";
  auto* fitc = app.add_subcommand("fit", "scaling-exponent fits of simulate output");
  fitc->add_option("--in", fit_in, "input CSV from simulate")->required();
  fitc->add_option("--model", fit_model, "power | log_over_n")
      ->check(CLI::IsMember({"power", "log_over_n"}));
  fitc->add_option("--stat", fit_stat, "statistic to fit");
  fitc->add_option("--seed", seed, "seed recorded in the report");
  fitc->add_option("--out", out_path, "output file (default stdout)");

  std::string suite;
  int verify_n = 0;
  long budget = 0;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "caps | simplex | bp | tails | lemma17 | events")->required();
  ver->add_option("--n", verify_n, "dimension (suite dependent)");
  ver->add_option("--trials", budget, "sample/trial budget override");
  ver->add_option("--seed", seed, "master seed");
  ver->add_option("--threads", threads, "OpenMP thread count");
  ver->add_option("--out", out_path, "output file (default stdout)");

  std::string which;
  std::vector<double> t_list{1.0};
  auto* bnd = app.add_subcommand("bounds", "tabulate a bound evaluator on a grid");
  bnd->add_option("--which", which, "evaluator name")->required();
  bnd->add_option("--n", n_list, "dimension list")->delimiter(',');
  bnd->add_option("--N", N_list, "N list")->delimiter(',');
  bnd->add_option("--t", t_list, "t / delta grid")->delimiter(',');
  bnd->add_option("--out", out_path, "output file (default stdout)");

  int cap_n = 3;
  double cap_p = 0.5, cap_R = 0.0;
  auto* cap = app.add_subcommand("caps", "cap calculator");
  cap->add_option("--n", cap_n, "dimension");
  cap->add_option("--p", cap_p, "plane offset");
  cap->add_option("--R", cap_R, "area fraction denominator (overrides --p)");
  cap->add_option("--out", out_path, "output file (default stdout)");

  // Expand `--config <file>` (flat key=value lines mirroring flags) into
  // ordinary flags; explicit command-line flags take precedence.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") continue;
    if (i + 1 >= args.size()) {
      std::cerr << "error: --config requires a file argument\n";
      return 2;
    }
    std::ifstream cfg(args[i + 1]);
    if (!cfg) {
      std::cerr << "error: cannot open config file: " << args[i + 1] << "\n";
      return 2;
    }
    std::vector<std::string> expanded;
    std::string line;
    while (std::getline(cfg, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: malformed config line: " << line << "\n";
        return 2;
      }
      const std::string key = "--" + line.substr(0, eq);
      bool overridden = false;
      for (std::size_t j = 0; j < args.size(); ++j) {
        if (j != i && j != i + 1 &&
            (args[j] == key || args[j].rfind(key + "=", 0) == 0)) {
          overridden = true;
        }
      }
      if (!overridden) expanded.push_back(key + "=" + line.substr(eq + 1));
    }
    args.erase(args.begin() + i, args.begin() + i + 2);
    args.insert(args.begin() + i, expanded.begin(), expanded.end());
    --i;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  set_threads(threads);
  try {
    if (sim->parsed()) return cmd_simulate(n_list, N_list, trials, seed, out_path, format);
    if (fitc->parsed()) return cmd_fit(fit_in, fit_model, fit_stat, out_path, seed);
    if (ver->parsed()) return cmd_verify(suite, seed, verify_n, budget, out_path);
    if (bnd->parsed()) return cmd_bounds(which, n_list, N_list, t_list, out_path);
    if (cap->parsed()) return cmd_caps(cap_n, cap_p, cap_R, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
