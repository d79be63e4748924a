#include "scatter/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "scatter/errors.hpp"

namespace scatter::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string where(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

ConfigError bad_value(const std::string& section, const std::string& key, std::string_view v,
                      const char* expected) {
  return ConfigError(where(section, key) + ": unknown value '" + std::string(v) + "', expected " +
                     expected);
}

double to_double(const std::string& section, const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x))
    throw ConfigError(where(section, key) + ": '" + v + "' is not a finite number");
  return x;
}

int to_int(const std::string& section, const std::string& key, const std::string& v) {
  int x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(where(section, key) + ": '" + v + "' is not an integer");
  return x;
}

bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(where(section, key) + ": '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(std::string_view list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <typename T>
std::string auto_or(const std::optional<T>& v) {
  if (!v) return "auto";
  if constexpr (std::is_same_v<T, int>)
    return std::to_string(*v);
  else
    return format_number(*v);
}

using Handler = void (*)(RunConfig&, const std::string&, const std::string&,
                         const std::filesystem::path&);

#define KEY(sec, name, body)                                                              \
  {std::string(sec) + "." + name,                                                         \
   [](RunConfig & c, [[maybe_unused]] const std::string& s, const std::string& v,         \
      [[maybe_unused]] const std::filesystem::path& base) {                               \
     [[maybe_unused]] const std::string k = name;                                         \
     body;                                                                                \
   }}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      KEY("potential", "type",
          {
            if (v == "yukawa")
              c.potential.kind = PotentialSpec::Kind::yukawa;
            else if (v == "gauss")
              c.potential.kind = PotentialSpec::Kind::gauss;
            else if (v == "tabulated")
              c.potential.kind = PotentialSpec::Kind::tabulated;
            else
              throw bad_value(s, k, v, "yukawa, gauss or tabulated");
          }),
      KEY("potential", "g", c.potential.g = to_double(s, k, v)),
      KEY("potential", "mu", c.potential.mu = to_double(s, k, v)),
      KEY("potential", "alpha", c.potential.alpha = to_double(s, k, v)),
      KEY("potential", "file",
          {
            std::filesystem::path f(v);
            c.potential.file = f.is_relative() && !base.empty() ? base / f : f;
          }),
      KEY("potential", "interpolation",
          {
            if (v == "pchip")
              c.potential.interpolation = Interpolation::pchip;
            else if (v == "linear")
              c.potential.interpolation = Interpolation::linear;
            else
              throw bad_value(s, k, v, "pchip or linear");
          }),
      KEY("kinematics", "mass", c.mass = to_double(s, k, v)),
      KEY("kinematics", "hbar", c.hbar = to_double(s, k, v)),
      KEY("kinematics", "k",
          {
            c.k.clear();
            for (const auto& item : split_list(v)) c.k.push_back(to_double(s, k, item));
          }),
      KEY("theta", "min", c.theta.min = to_double(s, k, v)),
      KEY("theta", "max", c.theta.max = to_double(s, k, v)),
      KEY("theta", "count", c.theta.count = to_int(s, k, v)),
      KEY("theta", "spacing",
          {
            if (v == "linear")
              c.theta.spacing = Spacing::linear;
            else if (v == "log")
              c.theta.spacing = Spacing::log;
            else
              throw bad_value(s, k, v, "linear or log");
          }),
      KEY("sources", "list", c.sources = parse_source_list(v)),
      KEY("quadrature", "rel_tol", c.quadrature.rel_tol = to_double(s, k, v)),
      KEY("quadrature", "abs_tol", c.quadrature.abs_tol = to_double(s, k, v)),
      KEY("quadrature", "max_subdivisions", c.quadrature.max_subdivisions = to_int(s, k, v)),
      KEY("quadrature", "tail_cut", c.quadrature.tail_cut = to_double(s, k, v)),
      KEY("quadrature", "oscillatory_blocks", c.quadrature.oscillatory_blocks = to_int(s, k, v)),
      KEY("quadrature", "max_blocks", c.quadrature.max_blocks = to_int(s, k, v)),
      KEY("eikonal", "transfer",
          {
            if (v == "exact")
              c.eikonal.transfer = MomentumTransfer::exact;
            else if (v == "small_angle")
              c.eikonal.transfer = MomentumTransfer::small_angle;
            else
              throw bad_value(s, k, v, "exact or small_angle");
          }),
      KEY("eikonal", "phase",
          {
            if (v == "closed_form")
              c.eikonal.phase = PhaseMethod::closed_form_when_available;
            else if (v == "quadrature")
              c.eikonal.phase = PhaseMethod::quadrature;
            else
              throw bad_value(s, k, v, "closed_form or quadrature");
          }),
      KEY("born", "lambda_nodes", c.born.lambda_nodes = to_int(s, k, v)),
      KEY("born", "numeric_lambda", c.born.numeric_lambda = to_bool(s, k, v)),
      KEY("partial_wave", "l_max",
          {
            if (v == "auto")
              c.partial_wave.l_max.reset();
            else
              c.partial_wave.l_max = to_int(s, k, v);
          }),
      KEY("partial_wave", "r_max",
          {
            if (v == "auto")
              c.partial_wave.r_max.reset();
            else
              c.partial_wave.r_max = to_double(s, k, v);
          }),
      KEY("partial_wave", "dr",
          {
            if (v == "auto")
              c.partial_wave.dr.reset();
            else
              c.partial_wave.dr = to_double(s, k, v);
          }),
      KEY("partial_wave", "tail_tolerance", c.partial_wave.tail_tolerance = to_double(s, k, v)),
      KEY("partial_wave", "l_cap", c.partial_wave.l_cap = to_int(s, k, v)),
      KEY("output", "directory",
          {
            std::filesystem::path d(v);
            c.output_directory = d.is_relative() && !base.empty() ? base / d : d;
          }),
      KEY("output", "plot_script", c.emit_plot_script = to_bool(s, k, v)),
      KEY("output", "totals", c.totals = to_bool(s, k, v)),
      KEY("output", "total_points", c.total_points = to_int(s, k, v)),
      KEY("report", "pairs",
          {
            c.report.pairs.clear();
            for (const auto& item : split_list(v)) {
              const auto colon = item.find(':');
              if (colon == std::string::npos)
                throw ConfigError(where(s, k) + ": pair '" + item + "' must be a:b");
              c.report.pairs.emplace_back(parse_source(item.substr(0, colon)),
                                          parse_source(item.substr(colon + 1)));
            }
          }),
      KEY("report", "tolerance", c.report.tolerance = to_double(s, k, v)),
      KEY("report", "theta_max", c.report.theta_max = to_double(s, k, v)),
      KEY("run", "threads", c.threads = to_int(s, k, v)),
  };
  return table;
}

#undef KEY

void require(bool ok, const std::string& field, const std::string& constraint) {
  if (!ok) throw ConfigError(field + ": " + constraint);
}

}  // namespace

PotentialModel PotentialSpec::build() const {
  switch (kind) {
    case Kind::yukawa:
      return Yukawa(g, mu);
    case Kind::gauss:
      return Gauss(g, alpha);
    case Kind::tabulated:
      return read_tabulated(file, interpolation);
  }
  throw ConfigError("potential.type: unknown kind");
}

std::vector<double> ThetaGrid::values() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = spacing == Spacing::linear ? min + (max - min) * t
                                        : min * std::pow(max / min, t);
  }
  out.back() = max;
  return out;
}

void RunConfig::validate() const {
  using Kind = PotentialSpec::Kind;
  require(std::isfinite(potential.g), "potential.g", "must be finite");
  if (potential.kind == Kind::yukawa) require(potential.mu > 0.0, "potential.mu", "must be > 0");
  if (potential.kind == Kind::gauss)
    require(potential.alpha > 0.0, "potential.alpha", "must be > 0");
  if (potential.kind == Kind::tabulated)
    require(!potential.file.empty(), "potential.file", "required for tabulated potentials");
  require(mass > 0.0, "kinematics.mass", "must be > 0");
  require(hbar > 0.0, "kinematics.hbar", "must be > 0");
  require(!k.empty(), "kinematics.k", "at least one value required");
  for (double kv : k) require(kv > 0.0, "kinematics.k", "every value must be > 0");
  require(theta.min >= 0.0, "theta.min", "must be >= 0");
  require(theta.max < std::numbers::pi, "theta.max", "must be < pi");
  require(theta.min < theta.max, "theta.min", "must be < theta.max");
  require(theta.count >= 2, "theta.count", "must be >= 2");
  if (theta.spacing == Spacing::log)
    require(theta.min > 0.0, "theta.min", "must be > 0 for log spacing");
  require(!sources.empty(), "sources.list", "at least one source required");
  std::set<Source> seen;
  for (auto s : sources)
    require(seen.insert(s).second, "sources.list",
            "duplicate source '" + std::string(to_string(s)) + "'");
  try {
    quadrature.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  require(born.lambda_nodes >= 4, "born.lambda_nodes", "must be >= 4");
  if (partial_wave.l_max) require(*partial_wave.l_max >= 0, "partial_wave.l_max", "must be >= 0");
  if (partial_wave.r_max) require(*partial_wave.r_max > 0.0, "partial_wave.r_max", "must be > 0");
  if (partial_wave.dr) require(*partial_wave.dr > 0.0, "partial_wave.dr", "must be > 0");
  require(partial_wave.tail_tolerance > 0.0, "partial_wave.tail_tolerance", "must be > 0");
  require(partial_wave.l_cap >= 1, "partial_wave.l_cap", "must be >= 1");
  require(!output_directory.empty(), "output.directory", "must not be empty");
  require(total_points >= 5, "output.total_points", "must be >= 5");
  require(report.tolerance > 0.0, "report.tolerance", "must be > 0");
  require(report.theta_max > 0.0, "report.theta_max", "must be > 0");
  require(threads >= 1, "run.threads", "must be >= 1");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  static const std::set<std::string> sections{"potential", "kinematics", "theta",  "sources",
                                              "quadrature", "eikonal",   "born",   "partial_wave",
                                              "output",    "report",     "run"};
  std::set<std::string> assigned;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto cut = raw.find_first_of("#;");
    const std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(at + "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!sections.count(section)) throw ConfigError(at + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(at + "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) throw ConfigError(at + "key '" + key + "' outside any section");
    const std::string full = section + "." + key;
    const auto h = handlers().find(full);
    if (h == handlers().end()) throw ConfigError(at + "unknown key '" + key + "' in [" + section + "]");
    if (!assigned.insert(full).second) throw ConfigError(at + "duplicate key '" + full + "'");
    if (value.empty()) throw ConfigError(at + "empty value for '" + full + "'");
    h->second(cfg, section, value, base_dir);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::vector<Source> parse_source_list(std::string_view list) {
  std::vector<Source> out;
  for (const auto& item : split_list(list)) out.push_back(parse_source(item));
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_csv(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  const auto& p = c.potential;
  o << "[potential]\n";
  switch (p.kind) {
    case PotentialSpec::Kind::yukawa:
      o << "type = yukawa\ng = " << format_number(p.g) << "\nmu = " << format_number(p.mu) << "\n";
      break;
    case PotentialSpec::Kind::gauss:
      o << "type = gauss\ng = " << format_number(p.g) << "\nalpha = " << format_number(p.alpha)
        << "\n";
      break;
    case PotentialSpec::Kind::tabulated:
      o << "type = tabulated\nfile = " << p.file.string() << "\ninterpolation = "
        << (p.interpolation == Interpolation::pchip ? "pchip" : "linear") << "\n";
      break;
  }
  o << "\n[kinematics]\nmass = " << format_number(c.mass) << "\nhbar = " << format_number(c.hbar)
    << "\nk = ";
  for (std::size_t i = 0; i < c.k.size(); ++i) o << (i ? ", " : "") << format_number(c.k[i]);
  o << "\n\n[theta]\nmin = " << format_number(c.theta.min)
    << "\nmax = " << format_number(c.theta.max) << "\ncount = " << c.theta.count
    << "\nspacing = " << (c.theta.spacing == Spacing::linear ? "linear" : "log") << "\n";
  o << "\n[sources]\nlist = ";
  for (std::size_t i = 0; i < c.sources.size(); ++i) o << (i ? ", " : "") << to_string(c.sources[i]);
  const auto& q = c.quadrature;
  o << "\n\n[quadrature]\nrel_tol = " << format_number(q.rel_tol)
    << "\nabs_tol = " << format_number(q.abs_tol) << "\nmax_subdivisions = " << q.max_subdivisions
    << "\ntail_cut = " << format_number(q.tail_cut)
    << "\noscillatory_blocks = " << q.oscillatory_blocks << "\nmax_blocks = " << q.max_blocks
    << "\n";
  o << "\n[eikonal]\ntransfer = "
    << (c.eikonal.transfer == MomentumTransfer::exact ? "exact" : "small_angle") << "\nphase = "
    << (c.eikonal.phase == PhaseMethod::quadrature ? "quadrature" : "closed_form") << "\n";
  o << "\n[born]\nlambda_nodes = " << c.born.lambda_nodes
    << "\nnumeric_lambda = " << (c.born.numeric_lambda ? "true" : "false") << "\n";
  const auto& pw = c.partial_wave;
  o << "\n[partial_wave]\nl_max = " << auto_or(pw.l_max) << "\nr_max = " << auto_or(pw.r_max)
    << "\ndr = " << auto_or(pw.dr) << "\ntail_tolerance = " << format_number(pw.tail_tolerance)
    << "\nl_cap = " << pw.l_cap << "\n";
  o << "\n[output]\ndirectory = " << c.output_directory.string()
    << "\nplot_script = " << (c.emit_plot_script ? "true" : "false")
    << "\ntotals = " << (c.totals ? "true" : "false") << "\ntotal_points = " << c.total_points
    << "\n";
  o << "\n[report]\n";
  if (!c.report.pairs.empty()) {
    o << "pairs = ";
    for (std::size_t i = 0; i < c.report.pairs.size(); ++i)
      o << (i ? ", " : "") << to_string(c.report.pairs[i].first) << ":"
        << to_string(c.report.pairs[i].second);
    o << "\n";
  }
  o << "tolerance = " << format_number(c.report.tolerance)
    << "\ntheta_max = " << format_number(c.report.theta_max) << "\n";
  o << "\n[run]\nthreads = " << c.threads << "\n";
  return o.str();
}

}  // namespace scatter::cli
