#include "trefftz/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "trefftz/error.hpp"

namespace trefftz {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Shortest representation that reads back to the same double.
std::string fmt_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a real number, got '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> parse_reals(std::string_view s) {
  std::vector<double> out;
  for (auto item : split(s, ',')) out.push_back(parse_real(item));
  return out;
}

std::vector<int> parse_ints(std::string_view s) {
  std::vector<int> out;
  for (auto item : split(s, ',')) {
    // a:b inclusive integer range
    if (auto colon = item.find(':'); colon != std::string_view::npos) {
      const int lo = parse_int(item.substr(0, colon));
      const int hi = parse_int(item.substr(colon + 1));
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    } else {
      out.push_back(parse_int(item));
    }
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt_real(v[i]);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct KeyEntry {
  const char* key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define REAL_KEY(name, field)                                                          \
  KeyEntry {                                                                           \
    name, [](ExperimentConfig& c, std::string_view v) { c.field = parse_real(v); },    \
        [](const ExperimentConfig& c) { return fmt_real(c.field); }                    \
  }
#define INT_KEY(name, field)                                                           \
  KeyEntry {                                                                           \
    name, [](ExperimentConfig& c, std::string_view v) { c.field = parse_int(v); },     \
        [](const ExperimentConfig& c) { return std::to_string(c.field); }              \
  }
#define STRING_KEY(name, field)                                                        \
  KeyEntry {                                                                           \
    name, [](ExperimentConfig& c, std::string_view v) { c.field = std::string(v); },   \
        [](const ExperimentConfig& c) { return c.field; }                              \
  }
#define REALS_KEY(name, field)                                                         \
  KeyEntry {                                                                           \
    name, [](ExperimentConfig& c, std::string_view v) { c.field = parse_reals(v); },   \
        [](const ExperimentConfig& c) { return join(c.field); }                        \
  }
#define INTS_KEY(name, field)                                                          \
  KeyEntry {                                                                           \
    name, [](ExperimentConfig& c, std::string_view v) { c.field = parse_ints(v); },    \
        [](const ExperimentConfig& c) { return join(c.field); }                        \
  }

const std::vector<KeyEntry>& registry() {
  static const std::vector<KeyEntry> keys = {
      REAL_KEY("domain.x_l", domain.x_l),
      REAL_KEY("domain.x_r", domain.x_r),
      REAL_KEY("domain.t_final", domain.t_final),
      REAL_KEY("mesh.hx", hx),
      REAL_KEY("mesh.ht", ht),
      REALS_KEY("mesh.slab_heights", slab_heights),
      KeyEntry{"mesh.partitions",
               [](ExperimentConfig& c, std::string_view v) {
                 c.partitions.clear();
                 for (auto part : split(v, ';')) c.partitions.push_back(parse_reals(part));
               },
               [](const ExperimentConfig& c) {
                 std::string s;
                 for (std::size_t i = 0; i < c.partitions.size(); ++i) s += (i ? ";" : "") + join(c.partitions[i]);
                 return s;
               }},
      REALS_KEY("materials.breakpoints", materials.breakpoints),
      REALS_KEY("materials.eps", materials.eps),
      REALS_KEY("materials.mu", materials.mu),
      KeyEntry{"basis.family",
               [](ExperimentConfig& c, std::string_view v) {
                 v = trim(v);
                 if (v == "trefftz") {
                   c.family = BasisFamily::TrefftzTransport;
                 } else if (v == "full") {
                   c.family = BasisFamily::FullPolynomial;
                 } else {
                   throw std::invalid_argument("expected trefftz or full, got '" + std::string(v) + "'");
                 }
               },
               [](const ExperimentConfig& c) { return std::string(to_string(c.family)); }},
      INT_KEY("basis.degree", degree),
      INTS_KEY("basis.degrees", degrees),
      REAL_KEY("flux.alpha", flux.alpha),
      REAL_KEY("flux.beta", flux.beta),
      REAL_KEY("flux.delta", flux.delta),
      KeyEntry{"flux.per_face_scaling",
               [](ExperimentConfig& c, std::string_view v) { c.flux.per_face_scaling = parse_bool(v); },
               [](const ExperimentConfig& c) { return std::string(c.flux.per_face_scaling ? "true" : "false"); }},
      STRING_KEY("bc.kind", bc_kind),
      STRING_KEY("bc.left", bc_left),
      STRING_KEY("bc.right", bc_right),
      STRING_KEY("ic.kind", ic_kind),
      REAL_KEY("ic.center", ic_center),
      REAL_KEY("ic.width", ic_width),
      REAL_KEY("ic.amplitude_E", ic_amplitude_e),
      REAL_KEY("ic.amplitude_H", ic_amplitude_h),
      REALS_KEY("ic.coeffs_E", ic_coeffs_e),
      REALS_KEY("ic.coeffs_H", ic_coeffs_h),
      STRING_KEY("ic.table", ic_table),
      STRING_KEY("source.kind", source_kind),
      REAL_KEY("source.value", source_value),
      STRING_KEY("experiment.kind", experiment),
      STRING_KEY("experiment.reference", reference),
      REALS_KEY("sweep.h", sweep_h),
      INTS_KEY("sweep.p", sweep_p),
      REALS_KEY("sweep.alpha", sweep_alpha),
      REALS_KEY("sweep.beta", sweep_beta),
      INT_KEY("quadrature.face_points", face_points),
      INT_KEY("quadrature.data_points", data_points),
      STRING_KEY("output.dir", output_dir),
      STRING_KEY("output.csv", output_csv),
      STRING_KEY("output.plot", output_plot),
      STRING_KEY("output.svg", output_svg),
  };
  return keys;
}

const KeyEntry* find_key(std::string_view key) {
  for (const auto& k : registry()) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

// Number of cells when `h` tiles `length`, or 0 when it does not.
std::size_t cells(double length, double h) {
  if (!(h > 0.0)) return 0;
  const double n = std::round(length / h);
  if (n < 1.0 || std::abs(n * h - length) > 1e-9 * length) return 0;
  return static_cast<std::size_t>(n);
}

std::vector<double> uniform_points(double a, double b, std::size_t n) {
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  x.back() = b;
  return x;
}

// Slab heights and per-slab partitions as they will be meshed.
void mesh_layout(const ExperimentConfig& cfg, std::vector<double>& heights, std::vector<std::vector<double>>& parts) {
  const auto& d = cfg.domain;
  if (!cfg.slab_heights.empty()) {
    heights = cfg.slab_heights;
  } else {
    const auto nt = cells(d.t_final, cfg.ht);
    heights.assign(nt, nt ? d.t_final / static_cast<double>(nt) : 0.0);
  }
  if (!cfg.partitions.empty()) {
    parts = cfg.partitions;
  } else {
    const auto nx = cells(d.length(), cfg.hx);
    parts = nx ? std::vector<std::vector<double>>{uniform_points(d.x_l, d.x_r, nx)} : std::vector<std::vector<double>>{};
  }
}

SpaceFunction polynomial(std::vector<double> c) {
  return [c](double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
  };
}

SpaceFunction polynomial_slope(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return polynomial(std::move(d));
}

// x E H rows, linearly interpolated and clamped outside the table.
InitialData table_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "ic.table: cannot open '" + path + "'");
  auto xs = std::make_shared<std::vector<double>>();
  auto es = std::make_shared<std::vector<double>>();
  auto hs = std::make_shared<std::vector<double>>();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, e, h;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    if (!(ls >> x >> e >> h)) {
      throw Error(ErrorCode::ConfigParse, path + ":" + std::to_string(lineno) + ": expected 'x E H'");
    }
    if (!xs->empty() && !(x > xs->back())) {
      throw Error(ErrorCode::ConfigParse, path + ":" + std::to_string(lineno) + ": x must increase");
    }
    xs->push_back(x);
    es->push_back(e);
    hs->push_back(h);
  }
  if (xs->size() < 2) throw Error(ErrorCode::ConfigParse, path + ": table needs at least two rows");
  auto interp = [xs](std::shared_ptr<std::vector<double>> ys, bool slope) {
    return [xs, ys, slope](double x) {
      const auto& X = *xs;
      const auto& Y = *ys;
      if (x <= X.front()) return slope ? 0.0 : Y.front();
      if (x >= X.back()) return slope ? 0.0 : Y.back();
      const auto j = static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), x) - X.begin()) - 1;
      const double m = (Y[j + 1] - Y[j]) / (X[j + 1] - X[j]);
      return slope ? m : Y[j] + m * (x - X[j]);
    };
  };
  InitialData d;
  d.e0 = interp(es, false);
  d.h0 = interp(hs, false);
  d.de0 = interp(es, true);
  d.dh0 = interp(hs, true);
  return d;
}

}  // namespace

namespace {

std::function<double(double)> parse_function_or_throw(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "zero") return {};
  const auto colon = text.find(':');
  const auto name = trim(text.substr(0, colon));
  const auto args = colon == std::string_view::npos ? std::vector<double>{} : parse_reals(text.substr(colon + 1));
  if (name == "const" && args.size() == 1) {
    const double v = args[0];
    return [v](double) { return v; };
  }
  if (name == "poly" && !args.empty()) return polynomial(args);
  if (name == "gaussian" && args.size() == 3) {
    const double c = args[0], w = args[1], a = args[2];
    if (!(w > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    return [c, w, a](double s) { return a * std::exp(-(s - c) * (s - c) / w); };
  }
  throw std::invalid_argument("unknown function '" + std::string(text) +
                              "' (expected zero, const:v, poly:c0,c1,..., gaussian:center,width,amp)");
}

}  // namespace

std::function<double(double)> parse_function(std::string_view text) {
  try {
    return parse_function_or_throw(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
}

void set_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  const auto* entry = find_key(trim(key));
  if (!entry) throw Error(ErrorCode::ConfigParse, "unknown key '" + std::string(trim(key)) + "'");
  try {
    entry->set(cfg, trim(value));
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParse, std::string(entry->key) + ": " + e.what());
  }
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::ConfigParse, "override '" + std::string(assignment) + "' is not key=value");
  }
  set_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::istream& in, const std::string& source_name) {
  ExperimentConfig cfg;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto where = source_name + ":" + std::to_string(lineno) + ": ";
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw Error(ErrorCode::ConfigParse, where + "unterminated section header");
      section = std::string(trim(s.substr(1, s.size() - 2)));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::ConfigParse, where + "expected key = value");
    const auto key = trim(s.substr(0, eq));
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    try {
      set_value(cfg, full, s.substr(eq + 1));
    } catch (const Error& e) {
      std::string msg = e.what();
      // drop the code prefix added by Error
      if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
      throw Error(ErrorCode::ConfigParse, where + msg);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.emplace_back(k.key);
  return out;
}

std::string to_manifest(const ExperimentConfig& cfg) {
  std::string out = "# resolved configuration, trefftz " TREFFTZ_VERSION_STRING "\n";
  for (const auto& k : registry()) out += std::string(k.key) + " = " + k.get(cfg) + "\n";
  return out;
}

std::vector<double> flux_grid(const std::vector<double>& given) {
  if (!given.empty()) return given;
  std::vector<double> g;
  for (int k = 0; k <= 10; ++k) g.push_back(k / 10.0);
  return g;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> diag;
  const auto& d = cfg.domain;
  if (!(d.x_l < d.x_r)) diag.emplace_back("domain.x_l must be smaller than domain.x_r");
  if (!(d.t_final > 0.0)) diag.emplace_back("domain.t_final must be positive");

  const bool domain_ok = d.x_l < d.x_r && d.t_final > 0.0;
  std::vector<double> heights;
  std::vector<std::vector<double>> parts;
  if (domain_ok) {
    if (cfg.slab_heights.empty() && cells(d.t_final, cfg.ht) == 0) {
      diag.emplace_back("mesh.ht must be positive and divide domain.t_final");
    }
    if (cfg.partitions.empty() && cells(d.length(), cfg.hx) == 0) {
      diag.emplace_back("mesh.hx must be positive and divide the domain length");
    }
    mesh_layout(cfg, heights, parts);
    double sum = 0.0;
    for (double h : heights) {
      if (!(h > 0.0)) diag.emplace_back("mesh.slab_heights must all be positive");
      sum += h;
    }
    if (!cfg.slab_heights.empty() && std::abs(sum - d.t_final) > 1e-10 * d.t_final) {
      diag.emplace_back("mesh.slab_heights sum to " + fmt_real(sum) + ", expected domain.t_final");
    }
    if (!cfg.partitions.empty() && parts.size() != 1 && parts.size() != heights.size()) {
      diag.emplace_back("mesh.partitions needs 1 or " + std::to_string(heights.size()) + " partitions");
    }
  }

  const auto& m = cfg.materials;
  const auto n_int = m.breakpoints.size() + 1;
  if (m.eps.size() != n_int) diag.emplace_back("materials.eps needs " + std::to_string(n_int) + " values");
  if (m.mu.size() != n_int) diag.emplace_back("materials.mu needs " + std::to_string(n_int) + " values");
  for (double e : m.eps) {
    if (!(e > 0.0)) diag.emplace_back("materials.eps must be positive");
  }
  for (double v : m.mu) {
    if (!(v > 0.0)) diag.emplace_back("materials.mu must be positive");
  }
  for (std::size_t i = 0; i < m.breakpoints.size(); ++i) {
    const double bp = m.breakpoints[i];
    if (!(bp > d.x_l && bp < d.x_r)) diag.emplace_back("materials.breakpoints: " + fmt_real(bp) + " is outside the domain");
    if (i > 0 && !(bp > m.breakpoints[i - 1])) diag.emplace_back("materials.breakpoints must increase");
  }
  if (domain_ok && !parts.empty()) {
    const double tol = 1e-12 * std::max({1.0, std::abs(d.x_l), std::abs(d.x_r)});
    const std::size_t n_slabs = parts.size() == 1 ? heights.size() : parts.size();
    for (double bp : m.breakpoints) {
      for (std::size_t s = 0; s < n_slabs; ++s) {
        const auto& part = parts.size() == 1 ? parts.front() : parts[s];
        const bool on_grid = std::any_of(part.begin(), part.end(), [&](double x) { return std::abs(x - bp) <= tol; });
        if (!on_grid) {
          diag.emplace_back("material breakpoint x=" + fmt_real(bp) + " is not on the x-partition of slab " +
                            std::to_string(s));
          break;
        }
      }
    }
  }

  if (cfg.degree < 0) diag.emplace_back("basis.degree must be non-negative");
  for (int p : cfg.degrees) {
    if (p < 0) diag.emplace_back("basis.degrees must be non-negative");
  }
  if (!cfg.degrees.empty() && domain_ok && !parts.empty()) {
    std::size_t n_el = 0;
    for (std::size_t s = 0; s < heights.size(); ++s) n_el += (parts.size() == 1 ? parts[0] : parts[std::min(s, parts.size() - 1)]).size() - 1;
    if (cfg.degrees.size() != n_el) {
      diag.emplace_back("basis.degrees has " + std::to_string(cfg.degrees.size()) + " entries for " +
                        std::to_string(n_el) + " elements");
    }
  }

  for (auto& v : cfg.flux.violations()) diag.push_back(v);

  if (cfg.bc_kind != "pec" && cfg.bc_kind != "dirichlet" && cfg.bc_kind != "robin") {
    diag.emplace_back("bc.kind must be pec, dirichlet or robin");
  }
  for (const auto& [key, text] : {std::pair{"bc.left", cfg.bc_left}, std::pair{"bc.right", cfg.bc_right}}) {
    try {
      parse_function_or_throw(text);
    } catch (const std::invalid_argument& e) {
      diag.push_back(std::string(key) + ": " + e.what());
    }
  }
  if (cfg.bc_kind == "pec" && (trim(cfg.bc_left) != "zero" || trim(cfg.bc_right) != "zero")) {
    diag.emplace_back("bc.kind = pec takes no boundary data; use bc.kind = dirichlet");
  }

  if (cfg.ic_kind == "gaussian") {
    if (!(cfg.ic_width > 0.0)) diag.emplace_back("ic.width must be positive");
  } else if (cfg.ic_kind == "table") {
    if (cfg.ic_table.empty() || !std::ifstream(cfg.ic_table)) diag.emplace_back("ic.table: cannot open '" + cfg.ic_table + "'");
  } else if (cfg.ic_kind != "polynomial") {
    diag.emplace_back("ic.kind must be gaussian, polynomial or table");
  }

  if (cfg.source_kind != "none" && cfg.source_kind != "const") diag.emplace_back("source.kind must be none or const");
  if (cfg.source_kind != "none" && cfg.family == BasisFamily::TrefftzTransport) {
    diag.emplace_back(
        "source.kind: the Trefftz space only covers the homogeneous problem (J = 0); use basis.family = full");
  }

  static const char* kinds[] = {"run", "sweep_h", "sweep_p", "sweep_flux", "spectrum", "energy"};
  if (std::none_of(std::begin(kinds), std::end(kinds), [&](const char* k) { return cfg.experiment == k; })) {
    diag.emplace_back("experiment.kind must be one of run, sweep_h, sweep_p, sweep_flux, spectrum, energy");
  }
  if (cfg.reference != "auto" && cfg.reference != "free-space") {
    diag.emplace_back("experiment.reference must be auto or free-space");
  }
  for (double h : cfg.sweep_h) {
    if (!(h > 0.0) || (cfg.experiment == "sweep_h" && domain_ok && (cells(d.length(), h) == 0 || cells(d.t_final, h) == 0))) {
      diag.emplace_back("sweep.h: " + fmt_real(h) + " does not tile the domain");
    }
  }
  for (int p : cfg.sweep_p) {
    if (p < 0) diag.emplace_back("sweep.p must be non-negative");
  }
  for (double a : cfg.sweep_alpha) {
    if (!(a >= 0.0)) diag.emplace_back("sweep.alpha values must be non-negative");
  }
  for (double b : cfg.sweep_beta) {
    if (!(b >= 0.0)) diag.emplace_back("sweep.beta values must be non-negative");
  }
  if (cfg.face_points != 0 && cfg.face_points < cfg.degree + 1) {
    diag.emplace_back("quadrature.face_points must be at least basis.degree + 1");
  }
  if (cfg.face_points < 0 || cfg.data_points < 0) diag.emplace_back("quadrature point counts must be non-negative");
  return diag;
}

Mesh build_mesh(const ExperimentConfig& cfg) {
  std::vector<double> heights;
  std::vector<std::vector<double>> parts;
  cfg.domain.validate();
  mesh_layout(cfg, heights, parts);
  if (heights.empty() || parts.empty()) throw Error(ErrorCode::InvalidArgument, "mesh.hx / mesh.ht do not tile the domain");
  return Mesh::build(cfg.domain, cfg.materials, heights, parts);
}

BasisSpec build_basis(const ExperimentConfig& cfg) {
  BasisSpec spec;
  spec.family = cfg.family;
  spec.degree = cfg.degree;
  spec.element_degrees = cfg.degrees;
  return spec;
}

ProblemData build_problem(const ExperimentConfig& cfg) {
  ProblemData data;
  data.flux = cfg.flux;
  try {
    if (cfg.bc_kind == "pec") {
      data.bc = BoundaryCondition::pec();
    } else if (cfg.bc_kind == "dirichlet") {
      data.bc = BoundaryCondition::dirichlet(parse_function(cfg.bc_left), parse_function(cfg.bc_right));
    } else if (cfg.bc_kind == "robin") {
      data.bc = BoundaryCondition::robin(parse_function(cfg.bc_left), parse_function(cfg.bc_right));
    } else {
      throw Error(ErrorCode::ConfigParse, "bc.kind: unknown kind '" + cfg.bc_kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParse, std::string("bc: ") + e.what());
  }

  if (cfg.ic_kind == "gaussian") {
    data.initial = InitialData::gaussian(cfg.ic_center, cfg.ic_width, cfg.ic_amplitude_e, cfg.ic_amplitude_h);
  } else if (cfg.ic_kind == "polynomial") {
    data.initial.e0 = polynomial(cfg.ic_coeffs_e);
    data.initial.h0 = polynomial(cfg.ic_coeffs_h);
    data.initial.de0 = polynomial_slope(cfg.ic_coeffs_e);
    data.initial.dh0 = polynomial_slope(cfg.ic_coeffs_h);
  } else if (cfg.ic_kind == "table") {
    data.initial = table_data(cfg.ic_table);
  } else {
    throw Error(ErrorCode::ConfigParse, "ic.kind: unknown kind '" + cfg.ic_kind + "'");
  }

  if (cfg.source_kind == "const") {
    const double j = cfg.source_value;
    data.source = [j](double, double) { return j; };
  }
  return data;
}

AssemblyOptions build_assembly_options(const ExperimentConfig& cfg) {
  AssemblyOptions o;
  o.face_points = cfg.face_points;
  o.data_points = cfg.data_points;
  return o;
}

}  // namespace trefftz
