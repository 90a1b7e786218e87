#include "prh/io.hpp"

#include "prh/version.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace prh {

namespace {

using json = nlohmann::json;

std::string c_to_string(double c) {
  return std::isinf(c) ? "inf" : format_double(c);
}

// std::stod throws out_of_range on subnormal results; strtod parses them.
double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw IoError("malformed number '" + s + "'");
  return v;
}

double c_from_string(const std::string& s) {
  if (s == "inf") return infinite_c;
  return parse_double(s);
}

std::string kind_to_string(ProblemKind k) {
  return k == ProblemKind::action ? "action" : "energy";
}

ProblemKind kind_from_string(const std::string& s) {
  if (s == "action") return ProblemKind::action;
  if (s == "energy") return ProblemKind::energy;
  throw IoError("unknown problem kind '" + s + "'");
}

std::string hash_line(const std::string& body) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(body));
  return std::string("hash = fnv1a:") + buf + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << body;
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Splits off and checks the trailing hash line, returns the covered body.
std::string checked_body(const std::string& text,
                         const std::filesystem::path& path) {
  const size_t pos = text.rfind("hash = fnv1a:");
  if (pos == std::string::npos)
    throw IoError("missing hash footer in '" + path.string() + "'");
  std::string body = text.substr(0, pos);
  const std::string footer = text.substr(pos);
  if (hash_line(body) != footer)
    throw IoError("hash mismatch in '" + path.string() +
                  "' (file corrupted or edited)");
  return body;
}

struct ParsedBlock {
  std::map<std::string, std::string> header;
  std::vector<std::vector<double>> blocks;
};

// header lines `key = value` until the first `values = N` line; then one or
// more N-value blocks separated by `block` lines.
ParsedBlock parse_profile_text(const std::string& body,
                               const std::filesystem::path& path) {
  ParsedBlock out;
  std::istringstream is(body);
  std::string line;
  int n_values = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find(" = ");
    if (eq == std::string::npos)
      throw IoError("malformed header line in '" + path.string() + "': " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    out.header[key] = value;
    if (key == "values") {
      n_values = std::stoi(value);
      break;
    }
  }
  if (n_values < 0)
    throw IoError("missing 'values' count in '" + path.string() + "'");
  std::vector<double> block;
  block.reserve(n_values);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("block", 0) == 0) {
      if (static_cast<int>(block.size()) != n_values)
        throw IoError("short value block in '" + path.string() + "'");
      out.blocks.push_back(std::move(block));
      block.clear();
      block.reserve(n_values);
      continue;
    }
    block.push_back(parse_double(line));
  }
  if (!block.empty()) {
    if (static_cast<int>(block.size()) != n_values)
      throw IoError("short value block in '" + path.string() + "'");
    out.blocks.push_back(std::move(block));
  }
  if (out.blocks.empty())
    throw IoError("no value blocks in '" + path.string() + "'");
  return out;
}

std::string require(const ParsedBlock& p, const std::string& key,
                    const std::filesystem::path& path) {
  auto it = p.header.find(key);
  if (it == p.header.end())
    throw IoError("missing header key '" + key + "' in '" + path.string() + "'");
  return it->second;
}

void append_result_header(std::ostringstream& os, const GroundStateResult& r) {
  os << "kind = " << kind_to_string(r.kind) << "\n";
  os << "m = " << format_double(r.params.m) << "\n";
  os << "lambda = " << format_double(r.params.lambda) << "\n";
  os << "c = " << c_to_string(r.params.c) << "\n";
  os << "grid_n = " << r.profile.grid().size() << "\n";
  os << "grid_r = " << format_double(r.profile.grid().radius()) << "\n";
  os << "level = " << format_double(r.level) << "\n";
  os << "multiplier = " << format_double(r.multiplier) << "\n";
  os << "residual_l2 = " << format_double(r.residual_l2) << "\n";
  os << "iterations = " << r.iterations << "\n";
  os << "converged = " << (r.converged ? 1 : 0) << "\n";
}

GroundStateResult result_from_parsed(const ParsedBlock& p,
                                     const std::filesystem::path& path,
                                     const std::vector<double>& values) {
  PhysicalParams params;
  params.m = parse_double(require(p, "m", path));
  params.lambda = parse_double(require(p, "lambda", path));
  params.c = c_from_string(require(p, "c", path));
  const int n = std::stoi(require(p, "grid_n", path));
  const double radius = parse_double(require(p, "grid_r", path));
  GridPtr grid = RadialGrid::create(n, radius);
  return GroundStateResult{RadialField(grid, values),
                           kind_from_string(require(p, "kind", path)),
                           params,
                           parse_double(require(p, "level", path)),
                           parse_double(require(p, "multiplier", path)),
                           parse_double(require(p, "residual_l2", path)),
                           std::stoi(require(p, "iterations", path)),
                           std::stoi(require(p, "converged", path)) != 0,
                           0.0};
}

void append_values(std::ostringstream& os, std::span<const double> values) {
  for (double v : values) os << format_double(v) << "\n";
}

} // namespace

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_profile(const std::filesystem::path& path,
                  const GroundStateResult& result) {
  std::ostringstream os;
  os << "format = prh-profile/1\n";
  os << "version = " << version_string << "\n";
  append_result_header(os, result);
  os << "values = " << result.profile.size() << "\n";
  append_values(os, result.profile.values());
  const std::string body = os.str();
  write_text(path, body + hash_line(body));
}

GroundStateResult load_profile(const std::filesystem::path& path) {
  const std::string body = checked_body(read_text(path), path);
  const ParsedBlock p = parse_profile_text(body, path);
  if (require(p, "format", path) != "prh-profile/1")
    throw IoError("not a profile file: '" + path.string() + "'");
  if (p.blocks.size() != 1)
    throw IoError("profile must contain exactly one value block");
  return result_from_parsed(p, path, p.blocks[0]);
}

void save_series(const std::filesystem::path& path, const ExpansionSeries& s) {
  std::ostringstream os;
  os << "format = prh-series/1\n";
  os << "version = " << version_string << "\n";
  os << "order = " << s.order << "\n";
  append_result_header(os, s.base);
  {
    std::ostringstream a, b;
    for (size_t i = 0; i < s.a.size(); ++i)
      a << (i ? " " : "") << format_double(s.a[i]);
    for (size_t i = 0; i < s.b.size(); ++i)
      b << (i ? " " : "") << format_double(s.b[i]);
    os << "a = " << a.str() << "\n";
    os << "b = " << b.str() << "\n";
  }
  os << "values = " << s.base.profile.size() << "\n";
  append_values(os, s.base.profile.values());
  for (int j = 0; j < s.order; ++j) {
    os << "block correction_" << (j + 1) << "\n";
    append_values(os, s.corrections[j].values());
  }
  const std::string body = os.str();
  write_text(path, body + hash_line(body));
}

ExpansionSeries load_series(const std::filesystem::path& path) {
  const std::string body = checked_body(read_text(path), path);
  const ParsedBlock p = parse_profile_text(body, path);
  if (require(p, "format", path) != "prh-series/1")
    throw IoError("not a series file: '" + path.string() + "'");
  const int order = std::stoi(require(p, "order", path));
  if (static_cast<int>(p.blocks.size()) != order + 1)
    throw IoError("series block count does not match order");
  GroundStateResult base = result_from_parsed(p, path, p.blocks[0]);
  ExpansionSeries s{base.kind, base, {}, {}, {}, order};
  const GridPtr grid = base.profile.grid_ptr();
  for (int j = 1; j <= order; ++j)
    s.corrections.emplace_back(grid, p.blocks[j]);
  auto parse_list = [](const std::string& text) {
    std::vector<double> out;
    std::istringstream ls(text);
    double v;
    while (ls >> v) out.push_back(v);
    return out;
  };
  s.a = parse_list(require(p, "a", path));
  s.b = parse_list(require(p, "b", path));
  return s;
}

namespace {

std::vector<std::string> csv_columns(const SweepReport& rep) {
  std::vector<std::string> cols = {"c", "converged", "iterations", "level",
                                   "multiplier"};
  if (rep.config.kind == ProblemKind::energy)
    cols.push_back("pohozaev");
  else
    cols.push_back("t_c");
  for (int n = 0; n <= rep.config.order; ++n)
    for (double s : rep.config.s_values)
      cols.push_back(residual_quantity_name(n, s));
  if (rep.config.kind == ProblemKind::energy) {
    for (int k = 0; k <= rep.config.order; ++k)
      cols.push_back("e_resid_n" + std::to_string(k));
    for (int k = 0; k <= rep.config.order; ++k)
      cols.push_back("omega_resid_n" + std::to_string(k));
  }
  return cols;
}

} // namespace

void save_report_csv(const std::filesystem::path& path, const SweepReport& rep) {
  std::ostringstream os;
  os << "# prhartree sweep report\n";
  os << "# version = " << version_string << "\n";
  os << "# kind = " << kind_to_string(rep.config.kind) << "\n";
  os << "# m = " << format_double(rep.config.m) << "\n";
  os << "# lambda = " << format_double(rep.config.lambda) << "\n";
  os << "# grid_n = " << rep.config.grid_n << "\n";
  os << "# grid_r = " << format_double(rep.config.grid_r) << "\n";
  os << "# order = " << rep.config.order << "\n";
  os << "# base_level = " << format_double(rep.series.base.level) << "\n";
  os << "# base_multiplier = " << format_double(rep.series.base.multiplier)
     << "\n";
  const auto cols = csv_columns(rep);
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const SweepRecord& r : rep.records) {
    os << format_double(r.c) << "," << (r.converged ? 1 : 0) << ","
       << r.iterations << "," << format_double(r.level) << ","
       << format_double(r.multiplier) << ",";
    os << format_double(rep.config.kind == ProblemKind::energy ? r.pohozaev
                                                               : r.t_c);
    for (int n = 0; n <= rep.config.order; ++n)
      for (size_t si = 0; si < rep.config.s_values.size(); ++si)
        os << "," << format_double(r.residual[n][si]);
    if (rep.config.kind == ProblemKind::energy) {
      for (int k = 0; k <= rep.config.order; ++k)
        os << "," << format_double(r.level_resid[k]);
      for (int k = 0; k <= rep.config.order; ++k)
        os << "," << format_double(r.multiplier_resid[k]);
    }
    os << "\n";
  }
  for (const SlopeFit& f : rep.fits)
    os << "# fit " << f.quantity << ": slope = " << format_double(f.fit.slope)
       << " intercept = " << format_double(f.fit.intercept)
       << " r2 = " << format_double(f.fit.r_squared)
       << " points = " << f.points_used << "\n";
  if (rep.config.kind == ProblemKind::energy) {
    os << "# energy_gap_estimate = " << format_double(rep.energy_gap_estimate)
       << " (limit " << format_double(rep.energy_gap_reference) << ")\n";
    os << "# multiplier_gap_estimate = "
       << format_double(rep.multiplier_gap_estimate) << " (limit "
       << format_double(rep.multiplier_gap_reference) << ")\n";
  }
  write_text(path, os.str());
}

std::string report_to_json(const SweepReport& rep) {
  json j;
  j["version"] = version_string;
  j["kind"] = kind_to_string(rep.config.kind);
  j["m"] = rep.config.m;
  j["lambda"] = rep.config.lambda;
  j["grid_n"] = rep.config.grid_n;
  j["grid_r"] = rep.config.grid_r;
  j["order"] = rep.config.order;
  j["s_values"] = rep.config.s_values;
  j["c_values"] = rep.config.c_values;
  j["warm_start"] = rep.config.warm_start;
  j["base"] = {{"level", rep.series.base.level},
               {"multiplier", rep.series.base.multiplier},
               {"residual_l2", rep.series.base.residual_l2}};
  if (rep.config.kind == ProblemKind::energy) {
    j["a"] = rep.series.a;
    j["b"] = rep.series.b;
    j["energy_gap_estimate"] = rep.energy_gap_estimate;
    j["energy_gap_reference"] = rep.energy_gap_reference;
    j["multiplier_gap_estimate"] = rep.multiplier_gap_estimate;
    j["multiplier_gap_reference"] = rep.multiplier_gap_reference;
  }
  json records = json::array();
  for (const SweepRecord& r : rep.records) {
    json rec;
    rec["c"] = r.c;
    rec["converged"] = r.converged;
    rec["iterations"] = r.iterations;
    rec["level"] = r.level;
    rec["multiplier"] = r.multiplier;
    if (rep.config.kind == ProblemKind::energy) {
      rec["pohozaev"] = r.pohozaev;
      rec["e_resid"] = r.level_resid;
      rec["omega_resid"] = r.multiplier_resid;
    } else {
      rec["t_c"] = r.t_c;
    }
    rec["residual"] = r.residual;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  json fits = json::array();
  for (const SlopeFit& f : rep.fits)
    fits.push_back({{"quantity", f.quantity},
                    {"slope", f.fit.slope},
                    {"intercept", f.fit.intercept},
                    {"r_squared", f.fit.r_squared},
                    {"points_used", f.points_used},
                    {"points_excluded", f.points_excluded}});
  j["fits"] = std::move(fits);
  return j.dump(2);
}

void save_report_json(const std::filesystem::path& path,
                      const SweepReport& rep) {
  write_text(path, report_to_json(rep) + "\n");
}

void save_report_svg(const std::filesystem::path& path, const SweepReport& rep) {
  // log-log plot of every field-residual series, one polyline per (n, s),
  // with the fitted line dashed.
  const double width = 760, height = 520;
  const double ml = 70, mr = 200, mt = 30, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts; // (log10 c, log10 resid)
    const SlopeFit* fit;
  };
  std::vector<Series> series;
  for (int n = 0; n <= rep.config.order; ++n)
    for (size_t si = 0; si < rep.config.s_values.size(); ++si) {
      Series s;
      s.name = residual_quantity_name(n, rep.config.s_values[si]);
      s.fit = nullptr;
      for (const SlopeFit& f : rep.fits)
        if (f.quantity == s.name) s.fit = &f;
      for (const SweepRecord& r : rep.records) {
        const double v = r.residual[n][si];
        if (v <= 0.0) continue;
        const double lx = std::log10(r.c), ly = std::log10(v);
        s.pts.emplace_back(lx, ly);
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
      if (!s.pts.empty()) series.push_back(std::move(s));
    }
  if (series.empty()) throw IoError("svg: nothing to plot");
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto px = [&](double lx) {
    return ml + (lx - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double ly) {
    return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
                                 "#7f7f7f"};
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
     << "' height='" << height << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<line x1='" << ml << "' y1='" << height - mb << "' x2='"
     << width - mr << "' y2='" << height - mb << "' stroke='black'/>\n";
  os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
     << height - mb << "' stroke='black'/>\n";
  os << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
     << "' text-anchor='middle' font-size='13'>log10 c</text>\n";
  os << "<text x='18' y='" << (mt + height - mb) / 2
     << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
     << (mt + height - mb) / 2 << ")'>log10 residual</text>\n";
  for (int lx = static_cast<int>(std::ceil(xmin)); lx <= xmax; ++lx) {
    os << "<line x1='" << px(lx) << "' y1='" << height - mb << "' x2='"
       << px(lx) << "' y2='" << height - mb + 5 << "' stroke='black'/>\n";
    os << "<text x='" << px(lx) << "' y='" << height - mb + 18
       << "' text-anchor='middle' font-size='11'>" << lx << "</text>\n";
  }
  for (int ly = static_cast<int>(std::ceil(ymin)); ly <= ymax; ++ly) {
    os << "<line x1='" << ml - 5 << "' y1='" << py(ly) << "' x2='" << ml
       << "' y2='" << py(ly) << "' stroke='black'/>\n";
    os << "<text x='" << ml - 8 << "' y='" << py(ly) + 4
       << "' text-anchor='end' font-size='11'>" << ly << "</text>\n";
  }
  for (size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % 9];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (auto [lx, ly] : series[k].pts) os << px(lx) << "," << py(ly) << " ";
    os << "'/>\n";
    for (auto [lx, ly] : series[k].pts)
      os << "<circle cx='" << px(lx) << "' cy='" << py(ly)
         << "' r='3' fill='" << color << "'/>\n";
    if (series[k].fit) {
      // fitted line in natural log, re-expressed in log10
      const double s = series[k].fit->fit.slope;
      const double b10 = series[k].fit->fit.intercept / std::log(10.0);
      const double y0 = s * xmin + b10, y1 = s * xmax + b10;
      os << "<line x1='" << px(xmin) << "' y1='" << py(y0) << "' x2='"
         << px(xmax) << "' y2='" << py(y1) << "' stroke='" << color
         << "' stroke-dasharray='5,4' stroke-width='1'/>\n";
    }
    const double lx = width - mr + 12, lyp = mt + 16 + 18 * k;
    os << "<line x1='" << lx << "' y1='" << lyp - 4 << "' x2='" << lx + 22
       << "' y2='" << lyp - 4 << "' stroke='" << color
       << "' stroke-width='2'/>\n";
    os << "<text x='" << lx + 28 << "' y='" << lyp
       << "' font-size='11'>" << series[k].name;
    if (series[k].fit) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.2f)", series[k].fit->fit.slope);
      os << buf;
    }
    os << "</text>\n";
  }
  os << "</svg>\n";
  write_text(path, os.str());
}

} // namespace prh
