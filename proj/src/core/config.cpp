#include "core/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "core/oracle.hpp"

namespace minkflow {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"domain", {"kind", "radius", "a", "b", "mean_radius", "cos", "sin", "center", "n_samples"}},
      {"alpha", {"kind", "value", "cos", "sin"}},
      {"initial", {"kind", "a", "beta", "seed", "max_slope", "modes"}},
      {"grid", {"n_r", "n_theta"}},
      {"solver", {"sigma", "eps_space", "t_end", "trans_tol", "trans_window", "snapshot_every",
                  "monitor_every"}},
      {"output", {"dir"}},
      {"checks", {"enabled", "tolerance"}},
  };
  return s;
}

struct Entry {
  std::string value;
  std::size_t line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string text(const std::string& key, std::string fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second.value;
  }

  double number(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return to_double(key, it->second.value, it->second.line);
  }

  std::vector<double> list(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return {};
    std::vector<double> out;
    std::istringstream is(it->second.value);
    std::string tok;
    while (is >> tok) out.push_back(to_double(key, tok, it->second.line));
    return out;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& v = it->second.value;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size()) {
      throw ConfigError(ErrorCode::Parse,
                        "line " + std::to_string(it->second.line) + ": " + key +
                            " expects a non-negative integer, got '" + v + "'",
                        it->second.line, key);
    }
    return x;
  }

  bool boolean(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second.value == "true") return true;
    if (it->second.value == "false") return false;
    throw ConfigError(ErrorCode::Parse,
                      "line " + std::to_string(it->second.line) + ": " + key +
                          " expects true or false",
                      it->second.line, key);
  }

  [[noreturn]] void bad_choice(const std::string& key) const {
    const Entry& e = entries_.at(key);
    throw ConfigError(ErrorCode::Parse,
                      "line " + std::to_string(e.line) + ": unsupported " + key + " '" + e.value +
                          "'",
                      e.line, key);
  }

 private:
  static double to_double(const std::string& key, const std::string& v, std::size_t line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
      throw ConfigError(ErrorCode::Parse,
                        "line " + std::to_string(line) + ": " + key + " expects a number, got '" +
                            v + "'",
                        line, key);
    }
    return x;
  }

  std::map<std::string, Entry> entries_;
};

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw ConfigError(ErrorCode::Validation, field + ": " + why, 0, field);
}

}  // namespace

void RunConfig::validate() const {
  switch (domain.kind) {
    case DomainKind::Disk:
      if (!(domain.radius > 0.0)) invalid("domain.radius", "must be positive");
      break;
    case DomainKind::Ellipse:
      if (!(domain.semi_a > 0.0)) invalid("domain.a", "must be positive");
      if (!(domain.semi_b > 0.0)) invalid("domain.b", "must be positive");
      break;
    case DomainKind::RadialFourier:
      if (!(domain.mean_radius > 0.0)) invalid("domain.mean_radius", "must be positive");
      if (domain.cos_coeffs.size() > kMaxFourierOrder) invalid("domain.cos", "order > 16");
      if (domain.sin_coeffs.size() > kMaxFourierOrder) invalid("domain.sin", "order > 16");
      break;
  }
  if (n_samples < 64) invalid("domain.n_samples", "must be >= 64");
  if (alpha.source != AlphaSource::Compatible && !std::isfinite(alpha.value)) {
    invalid("alpha.value", "must be finite");
  }
  if (alpha.cos_coeffs.size() > kMaxFourierOrder) invalid("alpha.cos", "order > 16");
  if (alpha.sin_coeffs.size() > kMaxFourierOrder) invalid("alpha.sin", "order > 16");
  if (alpha.source == AlphaSource::Compatible && initial.kind != InitialKind::Plane) {
    invalid("alpha.kind", "compatible requires initial.kind = plane");
  }
  if (initial.kind == InitialKind::Plane && !(norm(initial.slope) < 1.0)) {
    invalid("initial.a", "|a| must be < 1");
  }
  if (initial.kind == InitialKind::Bump && !(std::abs(initial.beta) <= 0.3)) {
    invalid("initial.beta", "|beta| must be <= 0.3");
  }
  if (initial.kind == InitialKind::Fourier) {
    if (!(initial.max_slope > 0.0 && initial.max_slope <= 0.8)) {
      invalid("initial.max_slope", "must lie in (0, 0.8]");
    }
    if (initial.modes < 1 || initial.modes > kMaxFourierOrder) {
      invalid("initial.modes", "must lie in [1, 16]");
    }
  }
  if (n_r < 8) invalid("grid.n_r", "must be >= 8");
  if (n_theta < 16 || n_theta % 2 != 0) invalid("grid.n_theta", "must be even and >= 16");
  try {
    solver.validate();
  } catch (const Error& e) {
    const std::string msg = e.what();
    invalid(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
  }
  if (!(check_tol >= 0.0)) invalid("checks.tolerance", "must be >= 0");
  if (output_dir.empty()) invalid("output.dir", "must not be empty");
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto parse_error = [&](const std::string& what, const std::string& field) {
      throw ConfigError(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what,
                        line_no, field);
    };
    if (line.front() == '[') {
      if (line.back() != ']') parse_error("unterminated section header", "");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) parse_error("unknown section '" + section + "'", section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_error("expected key = value", "");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) parse_error("key '" + key + "' outside of any section", key);
    const std::string field = section + "." + key;
    if (!schema().at(section).count(key)) parse_error("unknown key '" + key + "' in [" + section + "]", field);
    if (sections[section].count(key)) parse_error("duplicate key '" + field + "'", field);
    sections[section][key] = {value, line_no};
  }

  auto reader = [&](const std::string& name) {
    std::map<std::string, Entry> prefixed;
    for (auto& [k, v] : sections[name]) prefixed[name + "." + k] = v;
    return Reader(std::move(prefixed));
  };

  RunConfig cfg;
  cfg.source_text = std::string(text);

  const Reader d = reader("domain");
  const std::string kind = d.text("domain.kind", "disk");
  const auto center = d.list("domain.center");
  Vec2 c{};
  if (d.has("domain.center")) {
    if (center.size() != 2) invalid("domain.center", "expects two numbers");
    c = {center[0], center[1]};
  }
  if (kind == "disk") {
    cfg.domain = DomainSpec::disk(d.number("domain.radius", 1.0), c);
  } else if (kind == "ellipse") {
    cfg.domain = DomainSpec::ellipse(d.number("domain.a", 2.0), d.number("domain.b", 1.0), c);
  } else if (kind == "radial-fourier") {
    cfg.domain = DomainSpec::radial_fourier(d.number("domain.mean_radius", 1.0),
                                            d.list("domain.cos"), d.list("domain.sin"), c);
  } else {
    d.bad_choice("domain.kind");
  }
  cfg.n_samples = d.integer("domain.n_samples", 1024);

  const Reader a = reader("alpha");
  const std::string akind = a.text("alpha.kind", "constant");
  if (akind == "constant") {
    cfg.alpha.source = AlphaSource::Constant;
  } else if (akind == "fourier") {
    cfg.alpha.source = AlphaSource::Fourier;
  } else if (akind == "compatible") {
    cfg.alpha.source = AlphaSource::Compatible;
  } else {
    a.bad_choice("alpha.kind");
  }
  cfg.alpha.value = a.number("alpha.value", 0.0);
  cfg.alpha.cos_coeffs = a.list("alpha.cos");
  cfg.alpha.sin_coeffs = a.list("alpha.sin");

  const Reader i = reader("initial");
  const std::string ikind = i.text("initial.kind", "zero");
  if (ikind == "zero") {
    cfg.initial.kind = InitialKind::Zero;
  } else if (ikind == "plane") {
    cfg.initial.kind = InitialKind::Plane;
  } else if (ikind == "bump") {
    cfg.initial.kind = InitialKind::Bump;
  } else if (ikind == "fourier") {
    cfg.initial.kind = InitialKind::Fourier;
  } else {
    i.bad_choice("initial.kind");
  }
  if (i.has("initial.a")) {
    const auto s = i.list("initial.a");
    if (s.size() != 2) invalid("initial.a", "expects two numbers");
    cfg.initial.slope = {s[0], s[1]};
  }
  cfg.initial.beta = i.number("initial.beta", 0.2);
  cfg.initial.seed = i.integer("initial.seed", 1);
  cfg.initial.max_slope = i.number("initial.max_slope", 0.8);
  cfg.initial.modes = static_cast<int>(i.integer("initial.modes", 4));

  const Reader g = reader("grid");
  cfg.n_r = g.integer("grid.n_r", 48);
  cfg.n_theta = g.integer("grid.n_theta", 96);

  const Reader s = reader("solver");
  cfg.solver.sigma = s.number("solver.sigma", cfg.solver.sigma);
  cfg.solver.eps_space = s.number("solver.eps_space", cfg.solver.eps_space);
  cfg.solver.t_end = s.number("solver.t_end", cfg.solver.t_end);
  cfg.solver.trans_tol = s.number("solver.trans_tol", cfg.solver.trans_tol);
  cfg.solver.trans_window = s.number("solver.trans_window", cfg.solver.trans_window);
  cfg.solver.snapshot_every = s.number("solver.snapshot_every", cfg.solver.snapshot_every);
  cfg.solver.monitor_every = s.number("solver.monitor_every", cfg.solver.monitor_every);

  cfg.output_dir = reader("output").text("output.dir", cfg.output_dir);

  const Reader ch = reader("checks");
  cfg.checks = ch.boolean("checks.enabled", true);
  cfg.check_tol = ch.number("checks.tolerance", 0.05);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

AnglePrescription make_angle(const RunConfig& cfg) {
  switch (cfg.alpha.source) {
    case AlphaSource::Constant: return AnglePrescription::constant(cfg.alpha.value);
    case AlphaSource::Fourier:
      return AnglePrescription::fourier(cfg.alpha.value, cfg.alpha.cos_coeffs,
                                        cfg.alpha.sin_coeffs);
    case AlphaSource::Compatible: return compatible_plane(cfg.initial.slope).alpha;
  }
  return AnglePrescription::constant(0.0);
}

Field make_initial_field(const InitialSpec& spec, const Grid& grid) {
  const Vec2 c = grid.center();
  switch (spec.kind) {
    case InitialKind::Zero: return Field(grid.n_r(), grid.n_theta());
    case InitialKind::Plane: {
      const Vec2 a = spec.slope;
      return grid.sample([a](Vec2 x) { return dot(a, x); });
    }
    case InitialKind::Bump: {
      Field u(grid.n_r(), grid.n_theta());
      for (std::size_t j = 0; j < grid.n_r(); ++j) {
        const double r2 = grid.radius(j) * grid.radius(j);
        for (std::size_t k = 0; k < grid.n_theta(); ++k) {
          u(j, k) = spec.beta * (1.0 - r2) * (1.0 - r2);
        }
      }
      return u;
    }
    case InitialKind::Fourier: {
      // sum of plane waves cos/sin(pi (m X + n Y) / L), amplitude ~ 1 / (m^2 + n^2)
      double extent = 0.0;
      for (std::size_t k = 0; k < grid.n_theta(); ++k) {
        extent = std::max(extent, norm(grid.position(grid.n_r(), k) - c));
      }
      struct Wave {
        double kx, ky, ca, sa;
      };
      std::vector<Wave> waves;
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> coeff(-1.0, 1.0);
      for (int m = 0; m <= spec.modes; ++m) {
        for (int n = -spec.modes; n <= spec.modes; ++n) {
          if (m == 0 && n <= 0) continue;
          const double scale = 1.0 / static_cast<double>(m * m + n * n);
          const double ca = coeff(rng) * scale;
          const double sa = coeff(rng) * scale;
          waves.push_back({kPi * m / extent, kPi * n / extent, ca, sa});
        }
      }
      auto value = [&](Vec2 x) {
        const Vec2 d = x - c;
        double s = 0.0;
        for (const auto& w : waves) {
          const double ph = w.kx * d.x + w.ky * d.y;
          s += w.ca * std::cos(ph) + w.sa * std::sin(ph);
        }
        return s;
      };
      auto slope = [&](Vec2 x) {
        const Vec2 d = x - c;
        Vec2 g{};
        for (const auto& w : waves) {
          const double ph = w.kx * d.x + w.ky * d.y;
          const double dph = -w.ca * std::sin(ph) + w.sa * std::cos(ph);
          g = g + dph * Vec2{w.kx, w.ky};
        }
        return norm(g);
      };
      double max_slope = 0.0;
      for (std::size_t j = 0; j <= grid.n_r(); ++j)
        for (std::size_t k = 0; k < grid.n_theta(); ++k)
          max_slope = std::max(max_slope, slope(grid.position(j, k)));
      const double factor = max_slope > 0.0 ? spec.max_slope / max_slope : 0.0;
      return grid.sample([&](Vec2 x) { return factor * value(x); });
    }
  }
  return Field(grid.n_r(), grid.n_theta());
}

}  // namespace minkflow
