#include "scatter/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "scatter/errors.hpp"
#include "scatter/parallel.hpp"

namespace scatter::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleWarning = 1e-2;

using Clock = std::chrono::steady_clock;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string label(Source s, std::size_t k_index, double k) {
  return std::string(to_string(s)) + " k[" + std::to_string(k_index) + "]=" + format_number(k);
}

class Evaluator {
 public:
  Evaluator(const RunConfig& cfg, const PotentialModel& p, const Kinematics& kin, Source s)
      : cfg_(cfg), p_(p), kin_(kin), source_(s) {
    if (s == Source::partial_wave) {
      auto pw = cfg.partial_wave;
      pw.threads = cfg.threads;
      shifts_ = phase_shifts(p, kin, pw);
    }
  }

  Amplitude operator()(double theta) const {
    switch (source_) {
      case Source::eikonal:
        return amplitude_eikonal(p_, kin_, theta, cfg_.quadrature, cfg_.eikonal);
      case Source::born1:
        return born1_amplitude(p_, kin_, theta, cfg_.quadrature, cfg_.eikonal.transfer);
      case Source::born_resummed: {
        auto bs = cfg_.born;
        bs.spatial = cfg_.quadrature;
        return born_resummed_amplitude(p_, kin_, theta, bs, cfg_.eikonal);
      }
      case Source::partial_wave:
        return amplitude_partial_wave(shifts_, theta);
      case Source::paper_closed:
        return amplitude_paper_closed(p_, kin_, theta);
    }
    throw Error("unknown source");
  }

  const PhaseShiftSet& shifts() const { return shifts_; }

 private:
  const RunConfig& cfg_;
  const PotentialModel& p_;
  const Kinematics& kin_;
  Source source_;
  PhaseShiftSet shifts_;
};

struct Point {
  std::optional<Amplitude> amp;
  bool degraded = false;
  bool pole = false;
  std::string error;
};

std::vector<Point> evaluate(const Evaluator& eval, const std::vector<double>& thetas, int threads) {
  std::vector<Point> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) {
    Point& pt = out[i];
    try {
      pt.amp = eval(thetas[i]);
    } catch (const ConvergenceError& e) {
      Amplitude a;
      a.theta = thetas[i];
      a.value = e.best_estimate();
      a.error_estimate = e.error_bound();
      pt.amp = a;
      pt.degraded = true;
      pt.error = e.what();
    } catch (const PoleError& e) {
      pt.pole = true;
      pt.error = e.what();
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return out;
}

// Rows from evaluated points; returns false when a non-recoverable error occurred.
bool collect(const std::vector<Point>& pts, const std::string& what,
             std::vector<CrossSectionRow>& rows, std::vector<std::string>& warnings,
             std::string& error) {
  int degraded = 0, poles = 0, loose = 0;
  double worst_ratio = 0.0;
  for (const auto& pt : pts) {
    if (!pt.amp && !pt.pole) {
      error = pt.error;
      return false;
    }
    if (pt.pole) {
      ++poles;
      continue;
    }
    if (pt.degraded) ++degraded;
    const auto& a = *pt.amp;
    if (a.error_target > 0.0 && a.error_estimate > 10.0 * a.error_target) {
      ++loose;
      worst_ratio = std::max(worst_ratio, a.error_estimate / a.error_target);
    }
    rows.push_back(make_row(a));
  }
  if (degraded)
    warnings.push_back(what + ": " + std::to_string(degraded) +
                       " points did not converge, best estimates used");
  if (loose)
    warnings.push_back(what + ": " + std::to_string(loose) +
                       " points with error estimate > 10x target (worst " + sci(worst_ratio) +
                       "x)");
  if (poles)
    warnings.push_back(what + ": " + std::to_string(poles) + " points on a pole, rows omitted");
  return true;
}

std::vector<double> totals_grid(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = kPi * i / (n - 1);
  t.back() = kPi;
  return t;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string csv_text(const CrossSectionTable& t) {
  std::string s = "theta_rad,q,re_f,im_f,dsigma_domega\n";
  for (const auto& r : t.rows) {
    s += format_csv(r.theta) + "," + format_csv(r.q) + "," + format_csv(r.re_f) + "," +
         format_csv(r.im_f) + "," + format_csv(r.dsigma_domega) + "\n";
  }
  return s;
}

std::string optional_csv(const std::optional<double>& v) { return v ? format_csv(*v) : ""; }

std::vector<std::pair<Source, Source>> default_pairs(const std::vector<Source>& sources) {
  std::vector<std::pair<Source, Source>> out;
  bool has_pw = false;
  for (auto s : sources) has_pw = has_pw || s == Source::partial_wave;
  if (has_pw) {
    for (auto s : sources)
      if (s != Source::partial_wave) out.emplace_back(s, Source::partial_wave);
    return out;
  }
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = i + 1; j < sources.size(); ++j) out.emplace_back(sources[i], sources[j]);
  return out;
}

double relative(double a, double b) {
  if (b == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::abs(b);
}

ComparisonSettings comparison_settings(const RunConfig& cfg) {
  ComparisonSettings cs;
  cs.mass = cfg.mass;
  cs.hbar = cfg.hbar;
  if (cfg.potential.kind == PotentialSpec::Kind::yukawa) cs.mu = cfg.potential.mu;
  if (cfg.potential.kind == PotentialSpec::Kind::gauss) cs.alpha = cfg.potential.alpha;
  cs.quadrature = cfg.quadrature;
  return cs;
}

}  // namespace

std::string_view version() { return "0.1.0"; }

int RunManifest::exit_code() const {
  std::size_t failed = 0;
  for (const auto& o : outcomes) failed += o.ok ? 0 : 1;
  if (outcomes.empty() || failed == outcomes.size()) return 1;
  return failed ? 2 : 0;
}

RunManifest run_scan(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  const auto start = Clock::now();
  RunManifest m;
  m.version = std::string(version());
  m.config_echo = to_text(cfg);

  const auto& dir = cfg.output_directory;
  std::filesystem::create_directories(dir);

  std::optional<PotentialModel> potential;
  std::string potential_error;
  try {
    potential = cfg.potential.build();
  } catch (const std::exception& e) {
    potential_error = e.what();
  }

  const auto thetas = cfg.theta.values();
  const auto full = totals_grid(cfg.total_points);

  for (std::size_t ki = 0; ki < cfg.k.size(); ++ki) {
    const Kinematics kin(cfg.mass, cfg.k[ki], cfg.hbar);
    for (Source src : cfg.sources) {
      SourceOutcome o;
      o.source = src;
      o.k_index = ki;
      o.k = cfg.k[ki];
      o.table.source = src;
      const std::string what = label(src, ki, o.k);
      const auto t0 = Clock::now();
      try {
        if (!potential) throw ConfigError(potential_error);
        const Evaluator eval(cfg, *potential, kin, src);
        const auto pts = evaluate(eval, thetas, cfg.threads);
        std::string error;
        if (!collect(pts, what, o.table.rows, m.warnings, error)) throw Error(error);
        o.ok = true;

        if (cfg.totals) {
          const auto tp = evaluate(eval, full, cfg.threads);
          std::vector<CrossSectionRow> rows;
          std::vector<std::string> notes;
          std::string terr;
          const bool complete = collect(tp, what + " totals grid", rows, notes, terr) &&
                                rows.size() == full.size();
          m.warnings.insert(m.warnings.end(), notes.begin(), notes.end());
          if (complete) {
            try {
              o.table.total_integrated = total_integrated(rows, 1e-4).value;
            } catch (const ConvergenceError& e) {
              o.table.total_integrated = e.best_estimate().real();
              m.warnings.push_back(what + ": total_integrated degraded: " + e.what());
            }
            o.table.total_optical = total_optical(*tp.front().amp, o.k);
          } else {
            m.warnings.push_back(what + ": total_integrated unavailable" +
                                 (terr.empty() ? std::string(" (pole on the [0, pi] grid)")
                                               : ": " + terr));
          }
        }
        if (!o.table.total_optical) {
          try {
            o.table.total_optical = total_optical(eval(0.0), o.k);
          } catch (const std::exception& e) {
            m.warnings.push_back(what + ": total_optical unavailable: " + e.what());
          }
        }
        if (src == Source::paper_closed) {
          try {
            o.total_closed_form = paper_totals(*potential, kin);
          } catch (const std::exception& e) {
            m.warnings.push_back(what + ": closed-form total unavailable: " + e.what());
          }
          if (const auto* y = std::get_if<Yukawa>(&*potential)) {
            const double mu2 = y->mu() * y->mu();
            for (double th : thetas) {
              const double kt = o.k * th;
              if (std::abs(mu2 - kt * kt) < kPoleWarning * mu2) {
                m.warnings.push_back(what + ": theta grid passes within 1% of the pole k theta = mu");
                break;
              }
            }
            if (std::abs(mu2 - 4.0 * o.k * o.k) < kPoleWarning * mu2)
              m.warnings.push_back(what + ": closed-form total within 1% of its pole mu^2 = 4 k^2");
          }
        }
      } catch (const std::exception& e) {
        o.ok = false;
        o.error = e.what();
        o.table.rows.clear();
      }
      o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      if (o.ok) {
        o.csv = std::string(to_string(src)) + "_k" + std::to_string(ki) + ".csv";
        write_file(dir / o.csv, csv_text(o.table));
        m.files.push_back(o.csv);
      }
      if (log)
        *log << what << ": " << (o.ok ? "ok" : "failed: " + o.error) << " (" << sci(o.seconds)
             << " s)\n";
      m.outcomes.push_back(std::move(o));
    }
  }

  // summary.csv
  {
    std::string s = "k,source,total_integrated,total_optical,total_closed_form\n";
    for (const auto& o : m.outcomes) {
      if (!o.ok) continue;
      s += format_csv(o.k) + "," + std::string(to_string(o.source)) + "," +
           optional_csv(o.table.total_integrated) + "," + optional_csv(o.table.total_optical) +
           "," + optional_csv(o.total_closed_form) + "\n";
    }
    write_file(dir / "summary.csv", s);
    m.files.push_back("summary.csv");
  }

  // report.txt
  {
    m.formulas = compare_paper_formulas(comparison_settings(cfg));
    const auto pairs = cfg.report.pairs.empty() ? default_pairs(cfg.sources) : cfg.report.pairs;
    std::ostringstream r;
    r << "# scatter comparison report\n";
    r << "# relative deviation |a - b| / |b| of dsigma/dOmega; verdict over theta <= "
      << format_number(cfg.report.theta_max) << " at tolerance "
      << format_number(cfg.report.tolerance) << "\n";
    auto find = [&](std::size_t ki, Source s) -> const SourceOutcome* {
      for (const auto& o : m.outcomes)
        if (o.k_index == ki && o.source == s) return &o;
      return nullptr;
    };
    for (std::size_t ki = 0; ki < cfg.k.size(); ++ki) {
      for (const auto& [a, b] : pairs) {
        const auto* oa = find(ki, a);
        const auto* ob = find(ki, b);
        r << "\n[pair " << to_string(a) << " vs " << to_string(b) << ", k = "
          << format_number(cfg.k[ki]) << "]\n";
        if (!oa || !ob || !oa->ok || !ob->ok) {
          r << "skipped: source not available\n";
          continue;
        }
        const bool printed = (a == Source::paper_closed || b == Source::paper_closed) && potential;
        const Source other = a == Source::paper_closed ? b : a;
        r << "theta_rad,dsigma_a,dsigma_b,rel_dev";
        if (printed) r << ",printed_dsigma,rel_dev_printed_vs_" << to_string(other);
        r << "\n";
        std::map<double, const CrossSectionRow*> rows_b;
        for (const auto& row : ob->table.rows) rows_b[row.theta] = &row;
        PairResult pr;
        pr.k_index = ki;
        pr.a = a;
        pr.b = b;
        for (std::size_t i = 0; i < oa->table.rows.size(); ++i) {
          const auto& ra = oa->table.rows[i];
          const auto it = rows_b.find(ra.theta);
          if (it == rows_b.end()) continue;
          const double dev = relative(ra.dsigma_domega, it->second->dsigma_domega);
          if (ra.theta <= cfg.report.theta_max) pr.max_deviation = std::max(pr.max_deviation, dev);
          r << format_csv(ra.theta) << "," << format_csv(ra.dsigma_domega) << ","
            << format_csv(it->second->dsigma_domega) << "," << sci(dev);
          if (printed) {
            try {
              const Kinematics kin(cfg.mass, cfg.k[ki], cfg.hbar);
              const double pd = paper_differential(*potential, kin, ra.theta);
              const double ref = (other == a ? ra : *it->second).dsigma_domega;
              r << "," << format_csv(pd) << "," << sci(relative(pd, ref));
            } catch (const std::exception&) {
              r << ",,";
            }
          }
          r << "\n";
        }
        pr.verdict = classify(pr.max_deviation, std::numeric_limits<double>::infinity(),
                              cfg.report.tolerance);
        r << "max_rel_dev = " << sci(pr.max_deviation) << "\nverdict = " << to_string(pr.verdict)
          << "\n";
        m.pairs.push_back(pr);
      }
    }
    r << "\n[printed closed forms at weak coupling]\n";
    r << "name,reference,literal_dev,variant,variant_dev,ratio,verdict\n";
    for (const auto& f : m.formulas) {
      r << f.name << "," << f.reference << "," << sci(f.literal_deviation) << "," << f.variant
        << "," << sci(f.variant_deviation) << "," << (f.ratio ? format_number(*f.ratio) : "")
        << "," << to_string(f.verdict) << "\n";
    }
    write_file(dir / "report.txt", r.str());
    m.files.push_back("report.txt");
  }

  if (cfg.emit_plot_script) {
    std::ostringstream g;
    g << "# gnuplot script; run from this directory\n";
    g << "set datafile separator ','\nset logscale y\nset xlabel 'theta (rad)'\n"
         "set ylabel 'dsigma/dOmega'\nset key top right\n";
    for (std::size_t ki = 0; ki < cfg.k.size(); ++ki) {
      std::vector<const SourceOutcome*> ok;
      for (const auto& o : m.outcomes)
        if (o.k_index == ki && o.ok && !o.table.rows.empty()) ok.push_back(&o);
      if (ok.empty()) continue;
      g << "\nset title 'k = " << format_number(cfg.k[ki]) << "'\nplot ";
      for (std::size_t i = 0; i < ok.size(); ++i) {
        g << (i ? ", \\\n     " : "") << "'" << ok[i]->csv << "' every ::1 using 1:5 with lines title '"
          << to_string(ok[i]->source) << "'";
      }
      g << "\npause -1\n";
    }
    write_file(dir / "plot.gp", g.str());
    m.files.push_back("plot.gp");
  }

  m.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();

  std::ostringstream mf;
  mf << "tool = scatter\nversion = " << m.version << "\nwall_clock_s = " << sci(m.wall_seconds)
     << "\nexit_code = " << m.exit_code() << "\n";
  mf << "\n[config]\n" << m.config_echo;
  mf << "\n[sources]\n";
  for (const auto& o : m.outcomes) {
    mf << label(o.source, o.k_index, o.k) << " = " << (o.ok ? "ok" : "failed") << ", "
       << sci(o.seconds) << " s";
    if (!o.ok) mf << ", error: " << o.error;
    mf << "\n";
  }
  mf << "\n[files]\n";
  for (const auto& f : m.files) mf << f << "\n";
  mf << "\n[warnings]\n";
  for (const auto& w : m.warnings) mf << w << "\n";
  mf << "\n[verdicts]\n";
  for (const auto& p : m.pairs)
    mf << "pair " << to_string(p.a) << ":" << to_string(p.b) << " k[" << p.k_index
       << "] = " << to_string(p.verdict) << " (max_rel_dev " << sci(p.max_deviation) << ")\n";
  for (const auto& f : m.formulas)
    mf << f.name << " = " << to_string(f.verdict) << " (literal " << sci(f.literal_deviation)
       << ", variant " << sci(f.variant_deviation) << ": " << f.variant << ")\n";
  write_file(dir / "manifest.txt", mf.str());
  return m;
}

}  // namespace scatter::cli
