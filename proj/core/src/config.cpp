#include "waveqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace waveqed {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Document parse_document(const std::string& text,
                        const std::vector<std::string>& overrides) {
  Document doc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail("malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("expected key=value at line " + std::to_string(lineno));
    if (section.empty())
      fail("key outside any section at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    doc[section][key] = {trim(line.substr(eq + 1)), lineno};
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    const auto dot = ov.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      fail("malformed --set override '" + ov + "', want section.key=value");
    doc[trim(ov.substr(0, dot))][trim(ov.substr(dot + 1, eq - dot - 1))] = {
        trim(ov.substr(eq + 1)), 0};
  }
  return doc;
}

class Reader {
 public:
  Reader(const Document& doc, std::string section)
      : section_(std::move(section)) {
    const auto it = doc.find(section_);
    if (it != doc.end()) entries_ = it->second;
  }

  std::optional<std::string> raw(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.push_back(key);
    return it->second.value;
  }

  double number(const std::string& key, double fallback) {
    const auto v = raw(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double x = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      return x;
    } catch (...) {
      fail("value of " + path(key) + " is not a number (line " +
           std::to_string(entries_[key].line) + ")");
    }
  }

  int integer(const std::string& key, int fallback) {
    const double x = number(key, fallback);
    if (x != std::floor(x))
      fail("value of " + path(key) + " must be an integer");
    return static_cast<int>(x);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto v = raw(key);
    return v ? *v : fallback;
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string path(const std::string& key) const {
    return section_ + "." + key;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_)
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        fail("unknown key " + path(key) + " (line " +
             std::to_string(entry.line) + ")");
  }

 private:
  std::string section_;
  Section entries_;
  std::vector<std::string> used_;
};

}  // namespace

RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides) {
  const Document doc = parse_document(text, overrides);
  for (const auto& [name, _] : doc)
    if (name != "system" && name != "experiment" && name != "grid" &&
        name != "output")
      fail("unknown section [" + name + "]");

  RunConfig c;
  {
    Reader sys(doc, "system");
    const std::string preset = sys.text("preset", "");
    if (preset == "transparency") {
      const double omega = sys.number("omega", 1.0);
      if (omega <= 0.0) fail("system.omega must be > 0 for the preset");
      c.params.omega1 = omega;
      c.params.omega2 = -omega;
      c.params.gamma1 = c.params.gamma2 = 0.5 * omega;
      c.params.phase = 0.0;
      if (sys.has("gamma_r")) {
        const double gr = sys.number("gamma_r", 1.0);
        if (gr <= 0.0) fail("system.gamma_r must be > 0");
        c.params.separation = gr / c.params.gamma1;
      }
    } else if (!preset.empty()) {
      fail("unknown system.preset '" + preset + "'");
    }
    c.params.omega1 = sys.number("omega1", c.params.omega1);
    c.params.omega2 = sys.number("omega2", c.params.omega2);
    c.params.gamma1 = sys.number("gamma1", c.params.gamma1);
    c.params.gamma2 = sys.number("gamma2", c.params.gamma2);
    c.params.separation = sys.number("separation", c.params.separation);
    c.params.phase = sys.number("phase", c.params.phase);
    if (c.params.gamma1 < 0.0) fail("system.gamma1 out of range (must be >= 0)");
    if (c.params.gamma2 < 0.0) fail("system.gamma2 out of range (must be >= 0)");
    if (c.params.separation < 0.0)
      fail("system.separation out of range (must be >= 0)");
    sys.reject_unknown();
  }
  {
    Reader exp(doc, "experiment");
    const std::string type = exp.text("type", "");
    if (type == "s1") c.experiment = Experiment::s1;
    else if (type == "roots") c.experiment = Experiment::roots;
    else if (type == "density") c.experiment = Experiment::density;
    else if (type == "g2") c.experiment = Experiment::g2;
    else if (type == "ratio") c.experiment = Experiment::ratio;
    else if (type == "verify") c.experiment = Experiment::verify;
    else if (type.empty()) fail("missing required key experiment.type");
    else fail("unknown experiment.type '" + type + "'");
    const std::string mode = exp.text("mode", "exact");
    if (mode == "exact") c.mode = RunMode::exact;
    else if (mode == "markov") c.mode = RunMode::markov;
    else if (mode == "both") c.mode = RunMode::both;
    else fail("unknown experiment.mode '" + mode + "'");
    exp.reject_unknown();
  }
  {
    Reader grid(doc, "grid");
    c.energy = grid.number("energy", 0.0);
    c.delta_in = grid.number("delta_in", 0.0);
    c.k_min = grid.number("k_min", c.k_min);
    c.k_max = grid.number("k_max", c.k_max);
    c.n_k = grid.integer("n_k", c.n_k);
    c.e_min = grid.number("e_min", c.e_min);
    c.e_max = grid.number("e_max", c.e_max);
    c.n_e = grid.integer("n_e", c.n_e);
    c.delta_max = grid.number("delta_max", c.delta_max);
    c.n_delta = grid.integer("n_delta", c.n_delta);
    c.kappa_extent = grid.number("kappa_extent", c.kappa_extent);
    c.n_kappa = grid.integer("n_kappa", c.n_kappa);
    c.tau_max = grid.number("tau_max", c.tau_max);
    c.n_tau = grid.integer("n_tau", c.n_tau);
    c.tau = grid.number("tau", c.tau);
    if (c.n_k < 2 || c.n_e < 2 || c.n_delta < 3 || c.n_kappa < 3 ||
        c.n_tau < 2)
      fail("grid.n_* out of range (too few points)");
    if (c.k_max <= c.k_min) fail("grid.k_max out of range (<= k_min)");
    if (c.e_max <= c.e_min) fail("grid.e_max out of range (<= e_min)");
    grid.reject_unknown();
  }
  {
    Reader outp(doc, "output");
    c.output_path = outp.text("path", c.output_path);
    outp.reject_unknown();
  }
  c.params.validate();
  return c;
}

}  // namespace waveqed
