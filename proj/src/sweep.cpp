#include "defbec/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace defbec {

namespace {

constexpr const char* kVersion = "defbec 1.0.0";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("bad number in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected boolean, got: " + v);
}

int effective_threads(int requested, size_t task_count) {
  int n = requested > 0 ? requested
                        : int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("DEFBEC_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit >= 1 && limit < n) n = limit;
  }
  return int(std::min<size_t>(n, task_count));
}

}  // namespace

void RunConfig::validate() const {
  if (points < 3) throw std::invalid_argument("config: points must be >= 3");
  if (kappas.empty()) throw std::invalid_argument("config: need >= 1 kappa");
  if (n_atoms.empty()) throw std::invalid_argument("config: need >= 1 natoms");
  if (!(delta_min < delta_max))
    throw std::invalid_argument("config: need delta_min < delta_max");
  if (n_e < 0) throw std::invalid_argument("config: n_e must be >= 0");
  if (photons && *photons < 0.0)
    throw std::invalid_argument("config: photons must be >= 0");
  if (intensity && *intensity < 0.0)
    throw std::invalid_argument("config: intensity must be >= 0");
  if (formats.empty()) throw std::invalid_argument("config: need >= 1 format");
  for (const auto& f : formats)
    if (f != "csv" && f != "json" && f != "svg")
      throw std::invalid_argument("config: unknown format: " + f);
  for (double n : n_atoms)
    if (n < 1.0) throw std::invalid_argument("config: natoms must be >= 1");
  preset_by_name(preset);  // throws on unknown preset
}

double RunConfig::resolved_photons(const Preset& p) const {
  if (photons) return *photons;
  if (intensity) return photon_number_from_intensity(*intensity);
  return p.n_photons;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));

    try {
      if (key == "preset") config.preset = value;
      else if (key == "kappa") config.kappas = parse_double_list(value);
      else if (key == "natoms") config.n_atoms = parse_double_list(value);
      else if (key == "eta_zero") config.eta_zero = parse_bool(value);
      else if (key == "delta_range") {
        const auto colon = value.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("expected min:max");
        config.delta_min = std::stod(value.substr(0, colon));
        config.delta_max = std::stod(value.substr(colon + 1));
      }
      else if (key == "points") config.points = std::stoi(value);
      else if (key == "photons") config.photons = std::stod(value);
      else if (key == "intensity") config.intensity = std::stod(value);
      else if (key == "n_e") config.n_e = std::stoi(value);
      else if (key == "out") config.out_dir = value;
      else if (key == "format") config.formats = split_list(value);
      else if (key == "printed_path") config.printed_path = parse_bool(value);
      else if (key == "subtract_offset")
        config.subtract_offset = parse_bool(value);
      else if (key == "timestamp") config.timestamp = parse_bool(value);
      else if (key == "threads") config.threads = std::stoi(value);
      else
        throw std::invalid_argument("unknown key: " + key);
    } catch (const std::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  config.validate();
  return config;
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  const Preset preset = preset_by_name(config.preset);
  const double n_photons = config.resolved_photons(preset);

  std::vector<double> delta_grid(config.points);
  for (int i = 0; i < config.points; ++i)
    delta_grid[i] = config.delta_min +
                    (config.delta_max - config.delta_min) * i /
                        double(config.points - 1);

  struct Family { double kappa, n; };
  std::vector<Family> families;
  for (double kappa : config.kappas)
    for (double n : config.n_atoms) families.push_back({kappa, n});

  std::vector<std::vector<SweepRecord>> blocks(families.size());
  std::vector<ZeroCrossingReport> reports(families.size());
  std::vector<std::string> errors(families.size());

  auto worker = [&](size_t f) {
    const auto& fam = families[f];
    try {
      MediumModel model =
          preset.medium(fam.kappa, fam.n, config.eta_zero,
                        config.printed_path ? ChiPath::printed
                                            : ChiPath::derived);
      model.n_e = config.n_e;
      model.n_photons = n_photons;
      model.subtract_offset = config.subtract_offset;

      const SusceptibilitySpectrum spectrum =
          chi_total(delta_grid, n_photons, model);
      std::vector<double> omega_grid(delta_grid.size());
      for (size_t i = 0; i < delta_grid.size(); ++i)
        omega_grid[i] = model.omega_p + delta_grid[i];
      const std::vector<double> ng =
          group_index(omega_grid, refractive_index(spectrum.chi_total));

      std::vector<SweepRecord>& block = blocks[f];
      block.resize(delta_grid.size());
      for (size_t i = 0; i < delta_grid.size(); ++i) {
        block[i].kappa = fam.kappa;
        block[i].n_atoms = fam.n;
        block[i].delta = delta_grid[i];
        block[i].chi1 = spectrum.chi1[i];
        block[i].chi_nl = spectrum.chi_nl[i];
        block[i].chi_total = spectrum.chi_total[i];
        block[i].n_group = ng[i];
      }
      reports[f] = group_index_zero_crossings(delta_grid, ng);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "family (kappa=" << fam.kappa << ", N=" << fam.n
          << "): " << e.what();
      errors[f] = msg.str();
    }
  };

  const int threads = effective_threads(config.threads, families.size());
  if (threads <= 1) {
    for (size_t f = 0; f < families.size(); ++f) worker(f);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (size_t f = t; f < families.size(); f += threads) worker(f);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& err : errors)
    if (!err.empty()) throw std::runtime_error("run_sweep: " + err);

  SweepResult result;
  result.config = config;
  result.ng_reports = std::move(reports);
  for (auto& block : blocks)
    result.records.insert(result.records.end(), block.begin(), block.end());
  return result;
}

std::string csv_string(const SweepResult& result) {
  std::string out =
      "kappa,n_atoms,delta_hz,chi1_re,chi1_im,chinl_re,chinl_im,"
      "chi_re,chi_im,n_group\n";
  for (const auto& r : result.records) {
    out += fmt_double(r.kappa);
    out += ',';
    out += fmt_double(r.n_atoms);
    out += ',';
    out += fmt_double(hz_from_angular(r.delta));
    out += ',';
    out += fmt_double(r.chi1.real());
    out += ',';
    out += fmt_double(r.chi1.imag());
    out += ',';
    out += fmt_double(r.chi_nl.real());
    out += ',';
    out += fmt_double(r.chi_nl.imag());
    out += ',';
    out += fmt_double(r.chi_total.real());
    out += ',';
    out += fmt_double(r.chi_total.imag());
    out += ',';
    out += fmt_double(r.n_group);
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string iso_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
  write_file(path, csv_string(result));
}

void emit_json(const SweepResult& result, const std::string& path) {
  nlohmann::json meta;
  const RunConfig& c = result.config;
  meta["version"] = kVersion;
  meta["preset"] = c.preset;
  meta["kappa"] = c.kappas;
  meta["natoms"] = c.n_atoms;
  meta["eta_zero"] = c.eta_zero;
  meta["delta_range_hz"] = {hz_from_angular(c.delta_min),
                            hz_from_angular(c.delta_max)};
  meta["points"] = c.points;
  if (c.photons) meta["photons"] = *c.photons;
  if (c.intensity) meta["intensity"] = *c.intensity;
  meta["n_e"] = c.n_e;
  meta["chi_path"] = c.printed_path ? "printed" : "derived";
  meta["subtract_offset"] = c.subtract_offset;
  if (c.timestamp) meta["generated_at"] = iso_now();

  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.records) {
    records.push_back({{"kappa", r.kappa},
                       {"n_atoms", r.n_atoms},
                       {"delta_hz", hz_from_angular(r.delta)},
                       {"chi1_re", r.chi1.real()},
                       {"chi1_im", r.chi1.imag()},
                       {"chinl_re", r.chi_nl.real()},
                       {"chinl_im", r.chi_nl.imag()},
                       {"chi_re", r.chi_total.real()},
                       {"chi_im", r.chi_total.imag()},
                       {"n_group", r.n_group}});
  }

  nlohmann::json doc;
  doc["metadata"] = meta;
  doc["records"] = records;
  write_file(path, doc.dump(2) + "\n");
}

namespace {

struct Series {
  std::string label;
  std::string dash;  // SVG stroke-dasharray, empty for solid
  std::vector<double> x, y;
};

// solid / dashed / dash-dot cycle for the series within one chart
const char* dash_style(size_t i) {
  switch (i % 3) {
    case 0: return "";
    case 1: return "14,7";
    default: return "14,5,3,5";
  }
}

std::string render_chart(const std::string& title,
                         const std::vector<Series>& series,
                         const std::string& stamp) {
  constexpr double w = 860.0, h = 520.0;
  constexpr double ml = 80.0, mr = 30.0, mt = 50.0, mb = 60.0;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto py = [&](double y) {
    return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  if (!stamp.empty()) svg << "<!-- generated " << stamp << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << w / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">"
      << title << "</text>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << fmt_double(xv) << "</text>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << fmt_double(yv) << "</text>\n";
  }
  svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">detuning (Hz)</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.4\"";
    if (!series[s].dash.empty())
      svg << " stroke-dasharray=\"" << series[s].dash << "\"";
    svg << " points=\"";
    for (size_t i = 0; i < series[s].x.size(); ++i)
      svg << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
    svg << "\"/>\n";
    // legend row
    const double ly = mt + 18.0 * s + 10.0;
    svg << "<line x1=\"" << w - mr - 170 << "\" y1=\"" << ly << "\" x2=\""
        << w - mr - 130 << "\" y2=\"" << ly
        << "\" stroke=\"black\" stroke-width=\"1.4\"";
    if (!series[s].dash.empty())
      svg << " stroke-dasharray=\"" << series[s].dash << "\"";
    svg << "/>\n";
    svg << "<text x=\"" << w - mr - 124 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << series[s].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void emit_svg(const SweepResult& result, const std::string& out_dir) {
  if (result.records.empty())
    throw std::invalid_argument("emit_svg: no records");

  struct Quantity {
    const char* file;
    const char* title;
    double (*get)(const SweepRecord&);
  };
  const Quantity quantities[] = {
      {"chi1_re.svg", "Re chi1", [](const SweepRecord& r) { return r.chi1.real(); }},
      {"chi1_im.svg", "Im chi1", [](const SweepRecord& r) { return r.chi1.imag(); }},
      {"chinl_re.svg", "Re chi_nl", [](const SweepRecord& r) { return r.chi_nl.real(); }},
      {"chinl_im.svg", "Im chi_nl", [](const SweepRecord& r) { return r.chi_nl.imag(); }},
      {"chi_re.svg", "Re chi", [](const SweepRecord& r) { return r.chi_total.real(); }},
      {"chi_im.svg", "Im chi", [](const SweepRecord& r) { return r.chi_total.imag(); }},
      {"n_group.svg", "group index", [](const SweepRecord& r) { return r.n_group; }},
  };

  // family key order follows the record order (kappa outer, N middle)
  std::vector<std::pair<double, double>> keys;
  for (const auto& r : result.records) {
    const std::pair<double, double> key{r.kappa, r.n_atoms};
    if (keys.empty() || keys.back() != key) keys.push_back(key);
  }

  const std::string stamp = result.config.timestamp ? iso_now() : "";
  for (const auto& q : quantities) {
    std::vector<Series> series(keys.size());
    for (size_t k = 0; k < keys.size(); ++k) {
      std::ostringstream label;
      label << "kappa=" << keys[k].first << " N=" << keys[k].second;
      series[k].label = label.str();
      series[k].dash = dash_style(k);
    }
    for (const auto& r : result.records) {
      const std::pair<double, double> key{r.kappa, r.n_atoms};
      const size_t k = std::find(keys.begin(), keys.end(), key) - keys.begin();
      series[k].x.push_back(hz_from_angular(r.delta));
      series[k].y.push_back(q.get(r));
    }
    write_file((std::filesystem::path(out_dir) / q.file).string(),
               render_chart(q.title, series, stamp));
  }
}

std::vector<std::string> emit(const SweepResult& result) {
  if (result.records.empty()) throw std::invalid_argument("emit: no records");
  namespace fs = std::filesystem;
  fs::create_directories(result.config.out_dir);
  std::vector<std::string> written;
  for (const auto& format : result.config.formats) {
    if (format == "csv") {
      const std::string path =
          (fs::path(result.config.out_dir) / "sweep.csv").string();
      emit_csv(result, path);
      written.push_back(path);
    } else if (format == "json") {
      const std::string path =
          (fs::path(result.config.out_dir) / "sweep.json").string();
      emit_json(result, path);
      written.push_back(path);
    } else if (format == "svg") {
      emit_svg(result, result.config.out_dir);
      for (const char* f :
           {"chi1_re.svg", "chi1_im.svg", "chinl_re.svg", "chinl_im.svg",
            "chi_re.svg", "chi_im.svg", "n_group.svg"})
        written.push_back((fs::path(result.config.out_dir) / f).string());
    } else {
      throw std::invalid_argument("emit: unknown format: " + format);
    }
  }
  return written;
}

std::vector<SweepRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("parse_csv: empty input");
  if (line !=
      "kappa,n_atoms,delta_hz,chi1_re,chi1_im,chinl_re,chinl_im,"
      "chi_re,chi_im,n_group")
    throw std::invalid_argument("parse_csv: unexpected header: " + line);

  std::vector<SweepRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream row(line);
    double v[10];
    std::string cell;
    for (int i = 0; i < 10; ++i) {
      if (!std::getline(row, cell, ','))
        throw std::invalid_argument("parse_csv: short row at line " +
                                    std::to_string(lineno));
      v[i] = std::stod(cell);
    }
    if (std::getline(row, cell, ','))
      throw std::invalid_argument("parse_csv: extra column at line " +
                                  std::to_string(lineno));
    SweepRecord r;
    r.kappa = v[0];
    r.n_atoms = v[1];
    r.delta = angular_from_hz(v[2]);
    r.chi1 = {v[3], v[4]};
    r.chi_nl = {v[5], v[6]};
    r.chi_total = {v[7], v[8]};
    r.n_group = v[9];
    records.push_back(r);
  }
  return records;
}

}  // namespace defbec
