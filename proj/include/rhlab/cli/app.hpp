#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhlab/baez_duarte.hpp"
#include "rhlab/classical.hpp"
#include "rhlab/cli/cache.hpp"
#include "rhlab/cli/output.hpp"
#include "rhlab/debruijn.hpp"
#include "rhlab/li_coefficients.hpp"
#include "rhlab/riesz_bridge.hpp"

namespace rhlab::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kNumeric = 3 };

/// Grid and table sizes beyond this are refused as usage errors.
inline constexpr std::size_t kMaxGridPoints = 1'000'000;

namespace detail {

// Options that change how a run executes but not what it writes.
inline const std::set<std::string>& execution_only() {
  static const std::set<std::string> names{"threads", "cache-dir", "no-cache"};
  return names;
}

inline nlohmann::json config_of(const CLI::App& sub) {
  nlohmann::json c = nlohmann::json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr()) continue;
    const std::string& name = opt->get_single_name();
    if (execution_only().count(name)) continue;
    if (opt->get_expected_max() == 0) {
      c[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      c[name] = joined;
    } else {
      std::string d = opt->get_default_str();
      // Vector defaults print as [a,b]; given lists are joined as a,b.
      if (d.size() >= 2 && d.front() == '[' && d.back() == ']') d = d.substr(1, d.size() - 2);
      c[name] = d;
    }
  }
  return c;
}

inline BigReal parse_number(const std::string& text, const std::string& flag, int digits) {
  try {
    return BigReal::parse(text, digits);
  } catch (const DomainError&) {
    throw DomainError("--" + flag + ": not a decimal number: '" + text + "'");
  }
}

// lo, lo + step, ..., up to hi (inclusive up to rounding of the step count).
inline std::vector<BigReal> grid(const BigReal& lo, const BigReal& hi, const BigReal& step) {
  if (!(step > 0L)) throw DomainError("grid step must be positive");
  if (hi < lo) throw DomainError("grid upper end below lower end");
  const double span = ((hi - lo) / step).to_double();
  if (span + 1 > static_cast<double>(kMaxGridPoints)) throw CapacityError("grid exceeds 1e6 points");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<BigReal> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<long>(i));
  return out;
}

}  // namespace detail

/// Options shared by every subcommand.
struct Common {
  int precision = 30;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  std::string cache_dir;
  bool no_cache = false;

  Format output_format() const { return format == "json" ? Format::kJson : Format::kCsv; }
  std::filesystem::path output_path(const std::string& command) const {
    return out.empty() ? std::filesystem::path(command + "." + format) : std::filesystem::path(out);
  }
};

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err), app_("High-precision Riemann criteria lab", "rhlab") {
    app_.set_version_flag("--version", RHLAB_VERSION);
    app_.require_subcommand(1);
    register_all();
  }

  int run(int argc, const char* const* argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e, out_, err_);
    } catch (const CLI::CallForVersion& e) {
      return app_.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app_.exit(e, out_, err_);
      return kUsage;
    }
    CLI::App* chosen = app_.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
      return handlers_.at(name)(*chosen);
    } catch (const BudgetError& e) {
      err_ << "rhlab " << name << ": " << e.what() << "\n";
      return kNumeric;
    } catch (const ConditioningError& e) {
      err_ << "rhlab " << name << ": " << e.what() << "\n";
      return kNumeric;
    } catch (const NumericError& e) {
      err_ << "rhlab " << name << ": " << e.what() << "\n";
      return kNumeric;
    } catch (const CacheError& e) {
      err_ << "rhlab " << name << ": cache: " << e.what() << "\n";
      return kNumeric;
    } catch (const std::exception& e) {
      err_ << "rhlab " << name << ": " << e.what() << "\n";
      return kUsage;
    }
  }

 private:
  using Handler = std::function<int(CLI::App&)>;

  CLI::App* add(const std::string& name, const std::string& help, int default_precision, Common& c,
                Handler handler) {
    CLI::App* sub = app_.add_subcommand(name, help);
    c.precision = default_precision;
    sub->add_option("--precision,-p", c.precision, "Decimal digits of the output")
        ->capture_default_str()
        ->check(CLI::Range(kMinDigits, 100'000));
    sub->add_option("--out,-o", c.out, "Output file (default <subcommand>.<format>)");
    sub->add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
    handlers_[name] = std::move(handler);
    return sub;
  }

  void add_cache_flags(CLI::App* sub, Common& c) {
    sub->add_option("--cache-dir", c.cache_dir, std::string("Zeta table cache directory (default $") + kCacheDirEnv + ")");
    sub->add_flag("--no-cache", c.no_cache, "Ignore the cache directory");
  }

  // Cached or freshly built table; the cache outcome is reported.
  kernel::ZetaEvenTable table_for(const Common& c, std::size_t count, int digits) {
    const auto dir = c.no_cache ? std::nullopt : cache_dir(c.cache_dir);
    if (!dir) return kernel::ZetaEvenTable::build(count, digits);
    auto cached = load_or_build(*dir / std::string(kCacheFileName), count, digits);
    out_ << "cache: " << action_name(cached.action) << " " << (*dir / std::string(kCacheFileName)).string();
    if (!cached.note.empty()) out_ << " (" << cached.note << ")";
    out_ << "\n";
    return std::move(cached.table);
  }

  void emit(const CLI::App& sub, const Common& c, const Table& t) {
    const auto path = c.output_path(sub.get_name());
    write_output(path, c.output_format(), Provenance{sub.get_name(), detail::config_of(sub)}, t);
    out_ << "wrote " << t.rows.size() << " rows to " << path.string() << "\n";
  }

  void register_all() {
    register_zeta_table();
    register_ck();
    register_riesz();
    register_bridge();
    register_identity();
    register_altsum();
    register_lagarias();
    register_koch();
    register_li();
    register_phi();
    register_hplot();
    register_zeroscan();
  }

  void register_zeta_table() {
    auto& c = common_["zeta-table"];
    auto& m = sizes_["zeta-table.M"] = 100;
    auto* sub = add("zeta-table", "zeta(2m), zeta(2m) - 1 and 1/zeta(2m) for m = 1..M", 30, c, [this, &c, &m](CLI::App& s) {
      if (m < 1) throw DomainError("--M must be at least 1");
      const auto table = table_for(c, m, c.precision);
      Table t{{"m", "zeta_2m", "zeta_2m_minus_1", "inv_zeta_2m"}, {}};
      for (std::size_t i = 1; i <= m; ++i) {
        t.add({std::to_string(i), cell(table.zeta(i), c.precision), cell(table.excess(i), c.precision),
               cell(table.inverse(i), c.precision)});
      }
      out_ << "zeta(2m) for m = 1.." << m << " at " << c.precision << " digits\n";
      emit(s, c, t);
      return kOk;
    });
    sub->add_option("--M", m, "Number of entries")->capture_default_str();
    add_cache_flags(sub, c);
  }

  void register_ck() {
    auto& c = common_["ck"];
    auto& kmin = sizes_["ck.kmin"] = 0;
    auto& kmax = sizes_["ck.kmax"] = 100;
    auto& stride = sizes_["ck.stride"] = 1;
    auto& working = sizes_["ck.working"] = 0;
    auto* sub = add("ck", "Baez-Duarte coefficients c_k", 30, c, [this, &c, &kmin, &kmax, &stride, &working](CLI::App& s) {
      const int fixed = static_cast<int>(working);
      const auto policy = fixed > 0 ? baez_duarte::PrecisionPolicy([fixed](std::size_t) { return fixed; })
                                    : baez_duarte::budget_policy(c.precision);
      const auto [size, digits] = baez_duarte::ck_range_table_shape(kmin, kmax, stride, policy);
      const auto table = table_for(c, size, digits);
      const auto series = baez_duarte::ck_range(kmin, kmax, stride, policy, table, c.threads);
      Table t{{"k", "c_k", "precision"}, {}};
      for (const auto& e : series.entries()) {
        t.add({std::to_string(e.k), cell(e.value, c.precision), std::to_string(e.precision_used)});
      }
      out_ << series.size() << " coefficients c_k for k in [" << kmin << ", " << kmax << "], stride " << stride << "\n";
      if (const auto env = series.envelope()) {
        const BigReal amplitude(baez_duarte::kEnvelopeAmplitude, 30);
        out_ << "sup |c_k| k^(3/4) over [" << env->window_low << ", " << env->window_high
             << "] = " << to_string(env->sup, 8) << " at k = " << env->argmax << " (" << to_string(env->sup / amplitude, 6)
             << " x A)\n";
      }
      emit(s, c, t);
      return kOk;
    });
    sub->add_option("--kmin", kmin, "First index")->capture_default_str();
    sub->add_option("--kmax", kmax, "Last index")->capture_default_str();
    sub->add_option("--stride", stride, "Index stride")->capture_default_str();
    sub->add_option("--working", working, "Fixed working digits instead of the budget rule (0 = budget rule)")
        ->capture_default_str()
        ->check(CLI::Range(0, 1'000'000));
    add_cache_flags(sub, c);
  }

  void register_riesz() {
    auto& c = common_["riesz"];
    auto& lo = texts_["riesz.xmin"] = "1";
    auto& hi = texts_["riesz.xmax"] = "10";
    auto& step = texts_["riesz.xstep"] = "1";
    auto* sub = add("riesz", "Riesz function R(x) on a grid", 30, c, [this, &c, &lo, &hi, &step](CLI::App& s) {
      const int d = c.precision + 10;
      const auto xs = detail::grid(detail::parse_number(lo, "xmin", d), detail::parse_number(hi, "xmax", d),
                                   detail::parse_number(step, "xstep", d));
      if (xs.front().sign() < 0) throw DomainError("--xmin must be non-negative");
      std::vector<std::optional<BigReal>> values(xs.size());
      parallel_for(xs.size(), c.threads, [&](std::size_t i) { values[i] = riesz::riesz_R(xs[i], c.precision); });
      Table t{{"x", "R"}, {}};
      for (std::size_t i = 0; i < xs.size(); ++i) t.add({grid_cell(xs[i]), cell(*values[i], c.precision)});
      out_ << "R(x) at " << xs.size() << " points in [" << lo << ", " << hi << "]\n";
      emit(s, c, t);
      return kOk;
    });
    sub->add_option("--xmin", lo, "Grid start")->capture_default_str();
    sub->add_option("--xmax", hi, "Grid end")->capture_default_str();
    sub->add_option("--xstep", step, "Grid step")->capture_default_str();
  }

  void register_bridge() {
    auto& c = common_["bridge"];
    auto& ks = lists_["bridge.k"] = {50, 100, 200, 500, 1000};
    auto* sub = add("bridge", "|R(k)/k - c_k| against (3 sqrt(pi)/16) k^(-3/2) + k^(-2)", 20, c, [this, &c, &ks](CLI::App& s) {
      const auto reports = riesz::bridge_batch(ks, c.precision, c.threads);
      Table t{{"k", "r_over_k", "c_k", "gap", "bound", "ratio", "passes", "precision"}, {}};
      std::size_t failed = 0;
      for (const auto& r : reports) {
        if (!r.passes) ++failed;
        t.add({std::to_string(r.k), cell(r.r_over_k, c.precision), cell(r.c_k, c.precision), cell(r.gap, c.precision),
               cell(r.bound, c.precision), cell(r.ratio, c.precision), r.passes ? "true" : "false",
               std::to_string(r.precision)});
      }
      out_ << reports.size() << " bridge checks, " << failed << " outside the bound\n";
      emit(s, c, t);
      return failed ? kViolation : kOk;
    });
    sub->add_option("--k", ks, "Indices, comma separated")->delimiter(',')->capture_default_str();
  }

  void register_identity() {
    auto& c = common_["identity"];
    auto& x = texts_["identity.x"] = "10";
    auto& k = sizes_["identity.K"] = 100;
    auto* sub = add("identity", "sum_{k<=K} c_k x^k/k! against e^x R(x)/x", 30, c, [this, &c, &x, &k](CLI::App& s) {
      const auto r = riesz::series_identity_check(detail::parse_number(x, "x", c.precision + 10), k, c.precision);
      Table t{{"x", "K", "lhs", "rhs", "discrepancy", "tail_bound", "adequate"}, {}};
      t.add({grid_cell(r.x), std::to_string(r.truncation), cell(r.lhs, c.precision), cell(r.rhs, c.precision),
             cell(r.discrepancy, 6), cell(r.tail_bound, 6), r.adequate ? "true" : "false"});
      const bool holds = r.discrepancy <= r.tail_bound + BigReal::pow10(-(c.precision - 2), c.precision);
      out_ << "identity at x = " << x << ", K = " << k << ": discrepancy " << to_string(r.discrepancy, 6)
           << ", tail bound " << to_string(r.tail_bound, 6) << (holds ? "" : "  VIOLATED") << "\n";
      emit(s, c, t);
      return holds ? kOk : kViolation;
    });
    sub->add_option("--x", x, "Evaluation point")->capture_default_str();
    sub->add_option("--K", k, "Truncation index")->capture_default_str();
  }

  void register_altsum() {
    auto& c = common_["altsum"];
    auto& direct = sizes_["altsum.direct"] = 0;
    auto& depth = sizes_["altsum.depth"] = 4;
    auto* sub = add("altsum", "sum_k (-1)^k c_k via sum_{k>=1} 2^-k / zeta(2k)", 16, c, [this, &c, &direct, &depth](CLI::App& s) {
      const BigReal closed = baez_duarte::alternating_sum_closed(c.precision);
      Table t{{"method", "value", "uncertainty", "terms"}, {}};
      t.add({"closed", cell(closed, c.precision), "0", ""});
      out_ << "alternating sum (closed form): " << cell(closed, c.precision) << "\n";
      if (direct > 0) {
        const auto d = baez_duarte::alternating_sum_direct(direct, depth, c.precision, c.threads);
        t.add({"direct", cell(d.value, c.precision), cell(d.uncertainty, 6), std::to_string(d.terms)});
        out_ << "alternating sum (direct, N = " << direct << ", depth " << depth << "): " << cell(d.value, c.precision)
             << " +- " << to_string(d.uncertainty, 3) << "\n";
      }
      emit(s, c, t);
      return kOk;
    });
    sub->add_option("--direct", direct, "Also sum c_0..c_N directly (0 = off)")->capture_default_str();
    sub->add_option("--depth", depth, "Averaging rounds for the direct sum")->capture_default_str();
  }

  void register_lagarias() {
    auto& c = common_["lagarias"];
    auto& n = sizes_["lagarias.N"] = 1'000'000;
    auto& band = reals_["lagarias.band"] = classical::kDefaultNearBand;
    auto& all = flags_["lagarias.all-rows"] = false;
    auto* sub = add("lagarias", "sigma(n) against H_n + exp(H_n) ln H_n for n <= N", 20, c, [this, &c, &n, &band, &all](CLI::App& s) {
      if (c.precision > classical::kScanDigits) {
        throw DomainError("--precision: the scan carries " + std::to_string(classical::kScanDigits) + " digits");
      }
      Table t{{"n", "sigma", "threshold", "ratio", "near_miss"}, {}};
      auto row = [&](const classical::ScanRow& r) {
        t.add({std::to_string(r.index), std::to_string(r.lhs.to_long()), cell(r.threshold, c.precision),
               cell(r.ratio, c.precision), r.near_miss ? "true" : "false"});
      };
      const auto report = all ? classical::lagarias_scan(n, band, c.threads, row)
                              : classical::lagarias_scan(n, band, c.threads);
      if (!all) {
        for (const auto& r : report.near_misses) row(r);
      }
      out_ << "scanned n <= " << n << ": " << report.violations.size() << " violations, " << report.near_miss_count()
           << " near misses (ratio >= 1 - " << band << "), max ratio " << to_string(report.max_ratio(), 8)
           << " at n = " << report.max_row->index << "\n";
      emit(s, c, t);
      return report.any_violation() ? kViolation : kOk;
    });
    sub->add_option("--N", n, "Scan limit")->capture_default_str();
    sub->add_option("--band", band, "Near-miss band")->capture_default_str();
    sub->add_flag("--all-rows", all, "Write every row, not only near misses");
  }

  void register_koch() {
    auto& c = common_["koch"];
    auto& lo = sizes_["koch.xmin"] = 100;
    auto& hi = sizes_["koch.xmax"] = 1'000'000;
    auto& per = sizes_["koch.per-decade"] = 100;
    auto& band = reals_["koch.band"] = classical::kDefaultNearBand;
    auto* sub = add("koch", "|pi(x) - Li(x)| against sqrt(x) ln x", 30, c, [this, &c, &lo, &hi, &per, &band](CLI::App& s) {
      const auto report = classical::koch_check(classical::koch_checkpoints(lo, hi, static_cast<unsigned>(per)),
                                                c.precision, band, c.threads);
      Table t{{"x", "pi", "li", "abs_diff", "threshold", "ratio"}, {}};
      // Rows are recorded in checkpoint order, one per point.
      std::size_t i = 0;
      for (const auto& p : report.points) {
        const BigReal xr(static_cast<unsigned long>(p.x), c.precision + 10);
        const BigReal pi(static_cast<unsigned long>(p.pi), c.precision + 10);
        const BigReal diff = abs(pi - p.li);
        const BigReal threshold = sqrt(xr) * log(xr);
        t.add({std::to_string(p.x), std::to_string(p.pi), cell(p.li, c.precision), cell(diff, c.precision),
               cell(threshold, c.precision), cell(diff / threshold, c.precision)});
        ++i;
      }
      out_ << "Koch ratio over " << i << " checkpoints in [" << lo << ", " << hi << "]: max "
           << to_string(report.scan.max_ratio(), 8) << " at x = " << report.scan.max_row->index
           << ", pi(x) < Li(x) " << (report.pi_below_li ? "throughout" : "NOT throughout") << "\n";
      emit(s, c, t);
      return report.scan.any_violation() ? kViolation : kOk;
    });
    sub->add_option("--xmin", lo, "First checkpoint")->capture_default_str();
    sub->add_option("--xmax", hi, "Last checkpoint")->capture_default_str();
    sub->add_option("--per-decade", per, "Checkpoints per decade")->capture_default_str();
    sub->add_option("--band", band, "Near-miss band")->capture_default_str();
  }

  void register_li() {
    auto& c = common_["li"];
    auto& zeros = texts_["li.zeros"];
    auto& nmax = sizes_["li.nmax"] = 20;
    auto& count = sizes_["li.count"] = 0;
    auto* sub = add("li", "Li coefficients lambda_n from a zero table", 30, c, [this, &c, &zeros, &nmax, &count](CLI::App& s) {
      auto table = li::load_zeros(zeros);
      if (count > 0) table = li::truncate(table, count);
      const auto estimates = li::li_lambda_range(nmax, table, c.precision, c.threads);
      Table t{{"n", "lambda", "tail_bound", "verdict", "zeros_used"}, {}};
      std::size_t positive = 0, negative = 0;
      for (const auto& e : estimates) {
        const bool neg = e.value + e.tail_bound < 0L;
        const char* verdict = e.positive() ? "positive" : (neg ? "negative" : "inconclusive");
        positive += e.positive();
        negative += neg;
        t.add({std::to_string(e.n), cell(e.value, c.precision), cell(e.tail_bound, 6), verdict,
               std::to_string(e.zeros_used)});
      }
      out_ << "lambda_1.." << nmax << " from " << table.count() << " zeros: " << positive << " positive, "
           << (estimates.size() - positive - negative) << " inconclusive, " << negative << " negative\n";
      emit(s, c, t);
      return negative ? kViolation : kOk;
    });
    sub->add_option("--zeros", zeros, "Zero ordinate file")->required();
    sub->add_option("--nmax", nmax, "Largest n")->capture_default_str();
    sub->add_option("--count", count, "Use the first COUNT zeros (0 = all)")->capture_default_str();
  }

  void register_phi() {
    auto& c = common_["phi"];
    auto& lo = texts_["phi.tmin"] = "0";
    auto& hi = texts_["phi.tmax"] = "1";
    auto& step = texts_["phi.tstep"] = "0.05";
    auto* sub = add("phi", "Phi(t) on a grid", 20, c, [this, &c, &lo, &hi, &step](CLI::App& s) {
      const int d = c.precision + 10;
      const auto ts = detail::grid(detail::parse_number(lo, "tmin", d), detail::parse_number(hi, "tmax", d),
                                   detail::parse_number(step, "tstep", d));
      std::vector<std::optional<debruijn::PhiProfile>> values(ts.size());
      parallel_for(ts.size(), c.threads, [&](std::size_t i) { values[i] = debruijn::phi(ts[i], c.precision); });
      Table t{{"t", "phi", "terms"}, {}};
      std::size_t nonpositive = 0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(values[i]->value > 0L)) ++nonpositive;
        t.add({grid_cell(ts[i]), cell(values[i]->value, c.precision), std::to_string(values[i]->terms_used)});
      }
      out_ << "Phi(t) at " << ts.size() << " points, " << nonpositive << " non-positive\n";
      emit(s, c, t);
      return nonpositive ? kViolation : kOk;
    });
    sub->add_option("--tmin", lo, "Grid start")->capture_default_str();
    sub->add_option("--tmax", hi, "Grid end")->capture_default_str();
    sub->add_option("--tstep", step, "Grid step")->capture_default_str();
  }

  void register_hplot() {
    auto& c = common_["hplot"];
    auto& lambda = reals_["hplot.lambda"] = 0.0;
    auto& lo = texts_["hplot.zmin"] = "0";
    auto& hi = texts_["hplot.zmax"] = "50";
    auto& step = texts_["hplot.zstep"] = "0.5";
    auto* sub = add("hplot", "H(z, lambda) on a grid", 20, c, [this, &c, &lambda, &lo, &hi, &step](CLI::App& s) {
      const int d = c.precision + 10;
      const auto zs = detail::grid(detail::parse_number(lo, "zmin", d), detail::parse_number(hi, "zmax", d),
                                   detail::parse_number(step, "zstep", d));
      const debruijn::HQuadrature quad(lambda, c.precision);
      std::vector<std::optional<debruijn::HEvaluation>> values(zs.size());
      parallel_for(zs.size(), c.threads, [&](std::size_t i) { values[i] = quad.evaluate(zs[i]); });
      Table t{{"z", "H", "quadrature_error"}, {}};
      for (std::size_t i = 0; i < zs.size(); ++i) {
        t.add({grid_cell(zs[i]), cell(values[i]->value, c.precision), cell(values[i]->quadrature_error, 3)});
      }
      out_ << "H(z, " << lambda << ") at " << zs.size() << " points";
      if (lambda == 0.0) {
        std::vector<std::optional<BigReal>> gaps(zs.size());
        parallel_for(zs.size(), c.threads, [&](std::size_t i) {
          gaps[i] = abs(values[i]->value - debruijn::xi_on_line(zs[i] / 2L, c.precision + 5) / 8L);
        });
        BigReal worst(c.precision);
        for (const auto& g : gaps) worst = max(worst, *g);
        out_ << ", max |H(z,0) - Xi(z/2)/8| = " << to_string(worst, 3);
      }
      out_ << "\n";
      emit(s, c, t);
      return kOk;
    });
    sub->add_option("--lambda", lambda, "Deformation parameter (<= 1)")->capture_default_str();
    sub->add_option("--zmin", lo, "Grid start")->capture_default_str();
    sub->add_option("--zmax", hi, "Grid end")->capture_default_str();
    sub->add_option("--zstep", step, "Grid step")->capture_default_str();
  }

  void register_zeroscan() {
    auto& c = common_["zeroscan"];
    auto& lambda = reals_["zeroscan.lambda"] = 0.0;
    auto& lo = reals_["zeroscan.zmin"] = 1.0;
    auto& hi = reals_["zeroscan.zmax"] = 100.0;
    auto& step = reals_["zeroscan.step"] = 0.5;
    auto& zeros = texts_["zeroscan.zeros"];
    auto* sub = add("zeroscan", "Real zeros of H(., lambda) by sign changes", 20, c,
                    [this, &c, &lambda, &lo, &hi, &step, &zeros](CLI::App& s) {
      const auto found = debruijn::real_zero_scan(lambda, lo, hi, step, c.precision, c.threads);
      std::vector<double> expected;
      if (!zeros.empty()) {
        const auto table = li::load_zeros(zeros);
        for (const auto& g : table.gammas) {
          const double z = 2.0 * g.to_double();
          if (z > hi) break;
          if (z >= lo) expected.push_back(z);
        }
      }
      Table t{{"index", "lo", "hi", "z", "two_gamma", "gap"}, {}};
      double worst = 0;
      char buf[64];
      auto fixed = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.10f", v);
        return std::string(buf);
      };
      for (std::size_t i = 0; i < found.size(); ++i) {
        std::string two_gamma, gap;
        if (i < expected.size()) {
          const double g = std::fabs(found[i].mid() - expected[i]);
          worst = std::max(worst, g);
          two_gamma = fixed(expected[i]);
          std::snprintf(buf, sizeof buf, "%.3e", g);
          gap = buf;
        }
        t.add({std::to_string(i + 1), fixed(found[i].lo), fixed(found[i].hi), fixed(found[i].mid()), two_gamma, gap});
      }
      out_ << found.size() << " sign changes of H(., " << lambda << ") in [" << lo << ", " << hi << "]";
      bool mismatch = false;
      if (!zeros.empty() && lambda == 0.0) {
        mismatch = found.size() != expected.size() || worst > 1e-4;
        std::snprintf(buf, sizeof buf, "%.3e", worst);
        out_ << "; table predicts " << expected.size() << ", max gap " << buf << (mismatch ? "  MISMATCH" : "");
      }
      out_ << "\n";
      emit(s, c, t);
      return mismatch ? kViolation : kOk;
    });
    sub->add_option("--lambda", lambda, "Deformation parameter (<= 1)")->capture_default_str();
    sub->add_option("--zmin", lo, "Scan start")->capture_default_str();
    sub->add_option("--zmax", hi, "Scan end")->capture_default_str();
    sub->add_option("--step", step, "Sampling step")->capture_default_str();
    sub->add_option("--zeros", zeros, "Zero table to compare with 2 gamma_k (lambda = 0)");
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_;
  std::map<std::string, Handler> handlers_;
  // Option storage; std::map keeps references stable.
  std::map<std::string, Common> common_;
  std::map<std::string, std::size_t> sizes_;
  std::map<std::string, std::string> texts_;
  std::map<std::string, double> reals_;
  std::map<std::string, bool> flags_;
  std::map<std::string, std::vector<std::size_t>> lists_;
};

/// Parses argv, runs one subcommand, and maps the outcome to an exit code:
/// 0 success, 1 criterion violated, 2 usage or input error, 3 numeric budget.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  App app(out, err);
  return app.run(argc, argv);
}

}  // namespace rhlab::cli
