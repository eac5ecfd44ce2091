#include "ndschaos/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "ndschaos/catalog.hpp"
#include "ndschaos/dynamics.hpp"

namespace ndschaos {

namespace {

struct Value {
  enum class Type { String, Int, Float, Bool, Array } type = Type::String;
  std::string s;
  std::int64_t i = 0;
  double f = 0.0;
  bool b = false;
  std::vector<Value> a;
};

const char* type_name(Value::Type t) {
  switch (t) {
    case Value::Type::String: return "string";
    case Value::Type::Int: return "integer";
    case Value::Type::Float: return "float";
    case Value::Type::Bool: return "boolean";
    case Value::Type::Array: return "array";
  }
  return "?";
}

// Single-line TOML values: strings, integers, floats, booleans, flat arrays.
class ValueParser {
 public:
  ValueParser(const std::string& s, std::size_t pos) : s_(s), pos_(pos) {}

  Value parse() {
    Value v = value();
    skip();
    if (pos_ != s_.size()) throw at("trailing characters after value");
    return v;
  }

  std::size_t pos() const { return pos_; }

  struct Failure {
    std::size_t pos;
    std::string message;
  };

 private:
  Failure at(std::string msg) const { return {pos_, std::move(msg)}; }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Value value() {
    skip();
    if (pos_ >= s_.size()) throw at("missing value");
    const char c = s_[pos_];
    if (c == '"') return string();
    if (c == '[') return array();
    return scalar();
  }

  Value string() {
    Value v;
    ++pos_;
    while (true) {
      if (pos_ >= s_.size()) throw at("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        v.s += c;
        continue;
      }
      if (pos_ >= s_.size()) throw at("unterminated escape");
      switch (s_[pos_++]) {
        case '"': v.s += '"'; break;
        case '\\': v.s += '\\'; break;
        case 'n': v.s += '\n'; break;
        case 't': v.s += '\t'; break;
        default: --pos_; throw at("unsupported escape");
      }
    }
    return v;
  }

  Value array() {
    Value v;
    v.type = Value::Type::Array;
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      Value item = value();
      if (item.type == Value::Type::Array) throw at("nested arrays are not supported");
      v.a.push_back(std::move(item));
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        skip();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return v;
        }
        continue;
      }
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      throw at("expected ',' or ']' in array");
    }
  }

  Value scalar() {
    const std::size_t b = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ' ' && s_[pos_] != '\t') ++pos_;
    const std::string tok = s_.substr(b, pos_ - b);
    Value v;
    if (tok == "true" || tok == "false") {
      v.type = Value::Type::Bool;
      v.b = tok == "true";
      return v;
    }
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (*first == '+') ++first;
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(first, last, iv);
    if (ec == std::errc() && p == last) {
      v.type = Value::Type::Int;
      v.i = iv;
      return v;
    }
    double dv = 0.0;
    auto [q, ec2] = std::from_chars(first, last, dv);
    if (ec2 == std::errc() && q == last && std::isfinite(dv) && tok.find_first_of("0123456789") != std::string::npos) {
      v.type = Value::Type::Float;
      v.f = dv;
      return v;
    }
    pos_ = b;
    throw at("invalid value '" + tok + "'");
  }

  const std::string& s_;
  std::size_t pos_;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '\t') {
      out += "\\t";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

template <class T, class F>
std::string list(const std::vector<T>& v, F f) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f(v[i]);
  return s + "]";
}

// A setter returns an error message, empty on success.
struct Entry {
  ConfigKey key;
  bool is_list = false;
  bool is_string = false;
  std::function<std::string(RunConfig&, const Value&)> set;
  std::function<std::string(const RunConfig&)> get;  // TOML literal; empty when unset
};

std::string want(const char* expected, const Value& v) {
  return std::string("expected ") + expected + ", got " + type_name(v.type);
}

std::optional<double> as_real(const Value& v) {
  if (v.type == Value::Type::Float) return v.f;
  if (v.type == Value::Type::Int) return static_cast<double>(v.i);
  return std::nullopt;
}

Entry real(std::string name, std::string sec, std::string help, double RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, false, false,
          [m](RunConfig& c, const Value& v) -> std::string {
            auto r = as_real(v);
            if (!r) return want("a number", v);
            c.*m = *r;
            return {};
          },
          [m](const RunConfig& c) { return num(c.*m); }};
}

Entry integer(std::string name, std::string sec, std::string help, std::int64_t RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, false, false,
          [m](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::Int) return want("an integer", v);
            c.*m = v.i;
            return {};
          },
          [m](const RunConfig& c) { return std::to_string(c.*m); }};
}

Entry boolean(std::string name, std::string sec, std::string help, bool RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, false, false,
          [m](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::Bool) return want("true or false", v);
            c.*m = v.b;
            return {};
          },
          [m](const RunConfig& c) { return std::string(c.*m ? "true" : "false"); }};
}

Entry text(std::string name, std::string sec, std::string help, std::string RunConfig::*m,
           std::vector<std::string> allowed = {}) {
  return {{std::move(name), std::move(sec), std::move(help)}, false, true,
          [m, allowed](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::String) return want("a string", v);
            if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v.s) == allowed.end()) {
              std::string opts;
              for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
              return "'" + v.s + "' is not one of: " + opts;
            }
            c.*m = v.s;
            return {};
          },
          [m](const RunConfig& c) { return quote(c.*m); }};
}

Entry real_list(std::string name, std::string sec, std::string help, std::vector<double> RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, true, false,
          [m](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::Array) return want("an array of numbers", v);
            std::vector<double> out;
            for (const auto& e : v.a) {
              auto r = as_real(e);
              if (!r) return "array element: " + want("a number", e);
              out.push_back(*r);
            }
            c.*m = std::move(out);
            return {};
          },
          [m](const RunConfig& c) { return list(c.*m, num); }};
}

Entry int_list(std::string name, std::string sec, std::string help, std::vector<std::int64_t> RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, true, false,
          [m](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::Array) return want("an array of integers", v);
            std::vector<std::int64_t> out;
            for (const auto& e : v.a) {
              if (e.type != Value::Type::Int) return "array element: " + want("an integer", e);
              out.push_back(e.i);
            }
            c.*m = std::move(out);
            return {};
          },
          [m](const RunConfig& c) { return list(c.*m, [](std::int64_t i) { return std::to_string(i); }); }};
}

Entry text_list(std::string name, std::string sec, std::string help, std::vector<std::string> RunConfig::*m) {
  return {{std::move(name), std::move(sec), std::move(help)}, true, true,
          [m](RunConfig& c, const Value& v) -> std::string {
            if (v.type != Value::Type::Array) return want("an array of strings", v);
            std::vector<std::string> out;
            for (const auto& e : v.a) {
              if (e.type != Value::Type::String) return "array element: " + want("a string", e);
              out.push_back(e.s);
            }
            c.*m = std::move(out);
            return {};
          },
          [m](const RunConfig& c) { return list(c.*m, quote); }};
}

const std::vector<std::pair<ExperimentKind, const char*>>& experiment_names() {
  static const std::vector<std::pair<ExperimentKind, const char*>> names{
      {ExperimentKind::Simulate, "simulate"},
      {ExperimentKind::Metrics, "metrics"},
      {ExperimentKind::Classify, "classify"},
      {ExperimentKind::Kato, "kato"},
      {ExperimentKind::IterateCheck, "iterate-check"},
      {ExperimentKind::LiYorkeInvariance, "liyorke-invariance"},
      {ExperimentKind::Dc2PrimeInvariance, "dc2prime-invariance"},
      {ExperimentKind::KatoInvariance, "kato-invariance"},
      {ExperimentKind::SequenceChaos, "sequence-chaos"},
      {ExperimentKind::Dc3Counterexample, "dc3-counterexample"},
      {ExperimentKind::OpenQuestion, "open-question"},
  };
  return names;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    std::vector<std::string> exp_names;
    for (const auto& [k, n] : experiment_names()) exp_names.emplace_back(n);
    t.push_back({{"experiment", "run", "what to run"}, false, true,
                 [exp_names](RunConfig& c, const Value& v) -> std::string {
                   if (v.type != Value::Type::String) return want("a string", v);
                   for (const auto& [k, n] : experiment_names())
                     if (v.s == n) {
                       c.experiment = k;
                       return {};
                     }
                   std::string opts;
                   for (const auto& a : exp_names) opts += (opts.empty() ? "" : ", ") + a;
                   return "'" + v.s + "' is not one of: " + opts;
                 },
                 [](const RunConfig& c) { return quote(to_string(c.experiment)); }});
    t.push_back({{"seed", "run", "seed for every sampler"}, false, false,
                 [](RunConfig& c, const Value& v) -> std::string {
                   if (v.type != Value::Type::Int || v.i < 0) return "expected a non-negative integer";
                   c.seed = static_cast<std::uint64_t>(v.i);
                   return {};
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    t.push_back(text("output", "run", "output directory", &RunConfig::output));
    t.push_back(boolean("svg", "run", "also write SVG charts per pair", &RunConfig::svg));
    t.push_back(boolean("strict_hypotheses", "run", "exit 3 when a hypothesis is unmet", &RunConfig::strict_hypotheses));

    t.push_back(text("space", "system", "interval, square, shift-one-sided or shift-two-sided", &RunConfig::space,
                     {"interval", "square", "shift-one-sided", "shift-two-sided"}));
    t.push_back(text("kind", "system", "how f_n is generated", &RunConfig::kind,
                     {"autonomous", "list", "family", "moving-bump", "counterexample"}));
    t.push_back(text("map", "system", "map expression (autonomous map, bump limit, counterexample F)", &RunConfig::map));
    t.push_back(text_list("maps", "system", "map expressions for kind = list", &RunConfig::maps));
    t.push_back(text("tail", "system", "list continuation", &RunConfig::tail, {"repeat-last", "cycle"}));
    t.push_back(text("family", "system", "parametric family", &RunConfig::family, {"logistic", "tent"}));
    t.push_back(text("decay", "system", "parameter rule", &RunConfig::decay, {"harmonic", "geometric", "constant"}));
    t.push_back(real("limit", "system", "limit parameter", &RunConfig::limit));
    t.push_back(real("scale", "system", "parameter(n) = limit + scale/n or limit + scale*ratio^n", &RunConfig::scale));
    t.push_back(real("ratio", "system", "geometric ratio", &RunConfig::ratio));
    t.push_back(real("target", "system", "moving-bump target value", &RunConfig::target));
    t.push_back(integer("iterate", "system", "run on the k-th iterate system", &RunConfig::iterate));

    t.push_back(integer("horizon", "orbits", "orbit length N", &RunConfig::horizon));
    t.push_back(integer("pairs", "orbits", "sampled pairs", &RunConfig::pairs));
    t.push_back(real_list("x", "orbits", "explicit first point (coordinates)", &RunConfig::x));
    t.push_back(real_list("y", "orbits", "explicit second point (coordinates)", &RunConfig::y));
    t.push_back(int_list("k", "orbits", "iterate orders", &RunConfig::k));
    t.push_back(integer("candidates", "orbits", "points for the scrambled-set scan (0 = off)", &RunConfig::candidates));

    t.push_back(real("t_min", "grid", "smallest t", &RunConfig::t_min));
    t.push_back(real("t_max", "grid", "largest t", &RunConfig::t_max));
    t.push_back(integer("t_points", "grid", "grid size", &RunConfig::t_points));
    t.push_back(text("t_scale", "grid", "log or linear", &RunConfig::t_scale, {"log", "linear"}));
    t.push_back(real("window", "grid", "tail fraction for liminf/limsup", &RunConfig::window));
    t.push_back(int_list("checkpoints", "grid", "explicit n values instead of the tail window", &RunConfig::checkpoints));

    t.push_back(real("eps_zero", "thresholds", "lower <= eps_zero counts as 0", &RunConfig::eps_zero));
    t.push_back(real("one_tol", "thresholds", "upper >= 1 - one_tol counts as 1", &RunConfig::one_tol));
    t.push_back(real("gap", "thresholds", "DC3 margin", &RunConfig::gap));
    t.push_back(text("dc3_variant", "thresholds", "literal or conventional", &RunConfig::dc3_variant,
                     {"literal", "conventional"}));
    t.push_back(real("eps_prox", "thresholds", "Li-Yorke proximity", &RunConfig::eps_prox));
    t.push_back(real("eps_sep", "thresholds", "Li-Yorke separation", &RunConfig::eps_sep));
    t.push_back(real("min_rate", "thresholds", "required preservation rate", &RunConfig::min_rate));
    t.push_back(text("scan_flag", "thresholds", "flag for the scrambled-set scan", &RunConfig::scan_flag,
                     {"liyorke", "dc1", "dc2", "dc2prime", "dc3"}));

    t.push_back(real("delta", "kato", "sensitivity constant", &RunConfig::delta));
    t.push_back(real("epsilon", "kato", "accessibility constant", &RunConfig::epsilon));
    t.push_back(integer("probe_count", "kato", "open-set probes", &RunConfig::probe_count));
    t.push_back({{"probe_radius", "kato", "probe radius (unset: space default)"}, false, false,
                 [](RunConfig& c, const Value& v) -> std::string {
                   auto r = as_real(v);
                   if (!r) return want("a number", v);
                   c.probe_radius = *r;
                   return {};
                 },
                 [](const RunConfig& c) { return c.probe_radius ? num(*c.probe_radius) : std::string(); }});
    t.push_back(integer("sens_horizon", "kato", "sensitivity horizon", &RunConfig::sens_horizon));
    t.push_back(integer("sens_samples", "kato", "samples per probe for sensitivity", &RunConfig::sens_samples));
    t.push_back(integer("access_horizon", "kato", "accessibility horizon", &RunConfig::access_horizon));
    t.push_back(integer("access_samples", "kato", "samples per probe for accessibility", &RunConfig::access_samples));

    t.push_back(integer("count", "experiments", "selector points in the sequence construction", &RunConfig::count));
    t.push_back(real("r0", "experiments", "first nested-ball radius", &RunConfig::r0));
    t.push_back(int_list("pair_blocks", "experiments", "block starts of the counterexample witness pair",
                         &RunConfig::pair_blocks));
    t.push_back(integer("identity_n", "experiments", "largest n for the even-composition identity",
                        &RunConfig::identity_n));
    t.push_back(integer("modulus_probe_n", "experiments", "maps probed for the modulus", &RunConfig::modulus_probe_n));
    t.push_back(real_list("s_grid", "experiments", "s values for the modulus relation", &RunConfig::s_grid));
    t.push_back(integer("artifact_pairs", "experiments", "pairs kept for CSV output", &RunConfig::artifact_pairs));
    return t;
  }();
  return table;
}

const Entry* find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.key.name == name) return &e;
  return nullptr;
}

const std::vector<std::string>& section_order() {
  static const std::vector<std::string> s{"run", "system", "orbits", "grid", "thresholds", "kato", "experiments"};
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

bool bare_key(const std::string& k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string unknown_key_message(const std::string& key) {
  std::string msg = "unknown key '" + key + "'";
  if (auto s = suggest_key(key)) msg += "; did you mean '" + *s + "'?";
  return msg;
}

void issue(std::vector<ConfigIssue>& out, const std::string& field, const std::string& msg) {
  out.push_back({ErrorKind::ValidationError, field, msg});
}

}  // namespace

const char* to_string(ExperimentKind k) {
  for (const auto& [kind, name] : experiment_names())
    if (kind == k) return name;
  return "?";
}

bool exploratory(ExperimentKind k) { return k == ExperimentKind::OpenQuestion; }

std::string ConfigIssue::describe() const {
  return std::string(to_string(kind)) + " at " + where + ": " + message;
}

namespace {
std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string s = std::to_string(issues.size()) + " configuration problem(s)";
  for (const auto& i : issues) s += "\n  " + i.describe();
  return s;
}
}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(issues.empty() || issues.front().kind == ErrorKind::ParseError ? ErrorKind::ParseError
                                                                            : ErrorKind::ValidationError,
            join_issues(issues)),
      issues_(std::move(issues)) {}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const auto& e : entries()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::optional<std::string> suggest_key(const std::string& unknown) {
  std::optional<std::string> best;
  std::size_t best_d = 3;
  for (const auto& e : entries()) {
    const std::size_t d = edit_distance(unknown, e.key.name);
    if (d < best_d) {
      best_d = d;
      best = e.key.name;
    }
  }
  return best;
}

void merge_config_text(RunConfig& cfg, const std::string& text, std::vector<ConfigIssue>& issues) {
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::map<std::string, int> seen;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = strip_comment(raw);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::string loc = std::to_string(line_no);
    if (body.front() == '[') {
      if (body.back() != ']') {
        issues.push_back({ErrorKind::ParseError, loc + ":1", "unterminated section header"});
        continue;
      }
      section = trim(body.substr(1, body.size() - 2));
      if (std::find(section_order().begin(), section_order().end(), section) == section_order().end())
        issues.push_back({ErrorKind::ParseError, loc + ":1", "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back({ErrorKind::ParseError, loc + ":1", "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    if (!bare_key(key)) {
      issues.push_back({ErrorKind::ParseError, loc + ":1", "invalid key '" + key + "'"});
      continue;
    }
    Value v;
    try {
      v = ValueParser(line, eq + 1).parse();
    } catch (const ValueParser::Failure& f) {
      issues.push_back({ErrorKind::ParseError, loc + ":" + std::to_string(f.pos + 1), f.message});
      continue;
    }
    const Entry* e = find_entry(key);
    if (!e) {
      issues.push_back({ErrorKind::ValidationError, key, unknown_key_message(key) + " (line " + loc + ")"});
      continue;
    }
    // Keys before any header may come from any section.
    if (!section.empty() && section != e->key.section) {
      issues.push_back({ErrorKind::ValidationError, key,
                        "belongs in [" + e->key.section + "], found in [" + section + "] (line " + loc + ")"});
      continue;
    }
    if (seen[key]++) {
      issues.push_back({ErrorKind::ParseError, loc + ":1", "duplicate key '" + key + "'"});
      continue;
    }
    if (auto err = e->set(cfg, v); !err.empty()) issue(issues, key, err + " (line " + loc + ")");
  }
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& raw, std::vector<ConfigIssue>& issues) {
  const Entry* e = find_entry(key);
  if (!e) {
    issue(issues, key, unknown_key_message(key));
    return;
  }
  std::string text = trim(raw);
  if (e->is_list && (text.empty() || text.front() != '[')) {
    std::string items;
    std::istringstream parts(text);
    std::string part;
    while (std::getline(parts, part, ',')) {
      part = trim(part);
      if (e->is_string && (part.empty() || part.front() != '"')) part = quote(part);
      items += (items.empty() ? "" : ", ") + part;
    }
    text = "[" + items + "]";
  } else if (!e->is_list && e->is_string && (text.empty() || text.front() != '"')) {
    text = quote(text);
  }
  Value v;
  try {
    v = ValueParser(text, 0).parse();
  } catch (const ValueParser::Failure& f) {
    issue(issues, key, f.message);
    return;
  }
  if (auto err = e->set(cfg, v); !err.empty()) issue(issues, key, err);
}

NDSystem build_system(const RunConfig& cfg) {
  const Space space = cfg.space == "interval"          ? Space::unit_interval()
                      : cfg.space == "square"          ? Space::unit_square()
                      : cfg.space == "shift-one-sided" ? Space::shift_one_sided()
                                                       : Space::shift_two_sided();
  Generator gen;
  if (cfg.kind == "autonomous") {
    gen = Autonomous{parse_map(cfg.map)};
  } else if (cfg.kind == "list") {
    ExplicitList l;
    for (const auto& m : cfg.maps) l.maps.push_back(parse_map(m));
    l.tail = cfg.tail == "cycle" ? TailRule::Cycle : TailRule::RepeatLast;
    gen = std::move(l);
  } else if (cfg.kind == "family") {
    ParameterRule rule;
    rule.decay = cfg.decay == "harmonic" ? ParamDecay::Harmonic
                 : cfg.decay == "geometric" ? ParamDecay::Geometric
                                            : ParamDecay::Constant;
    rule.limit = cfg.limit;
    rule.scale = cfg.scale;
    rule.ratio = cfg.ratio;
    gen = ParametricFamily{cfg.family == "tent" ? FamilyKind::Tent : FamilyKind::Logistic, rule};
  } else if (cfg.kind == "moving-bump") {
    gen = MovingBump{parse_map(cfg.map), cfg.target};
  } else {
    gen = CounterexampleAlternating{parse_map(cfg.map)};
  }
  return iterate_system(NDSystem(space, std::move(gen)), cfg.iterate);
}

std::vector<double> t_grid(const RunConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.t_points);
  return cfg.t_scale == "log" ? log_grid(cfg.t_min, cfg.t_max, n) : linear_grid(cfg.t_min, cfg.t_max, n);
}

Window estimate_window(const RunConfig& cfg) {
  return cfg.checkpoints.empty() ? Window::tail_fraction(cfg.window) : Window::at(cfg.checkpoints);
}

Thresholds thresholds(const RunConfig& cfg) {
  Thresholds t;
  t.eps_zero = cfg.eps_zero;
  t.one_tol = cfg.one_tol;
  t.gap = cfg.gap;
  t.dc3_literal = cfg.dc3_variant == "literal";
  return t;
}

LiYorkeParams li_yorke_params(const RunConfig& cfg) { return {cfg.eps_prox, cfg.eps_sep, cfg.window, std::nullopt}; }

KatoParams kato_params(const RunConfig& cfg, const Space& space) {
  KatoParams p;
  p.delta = cfg.delta;
  p.eps = cfg.epsilon;
  p.horizon = cfg.sens_horizon;
  p.sens_samples = static_cast<std::size_t>(cfg.sens_samples);
  p.access_horizon = cfg.access_horizon;
  p.access_samples = static_cast<std::size_t>(cfg.access_samples);
  p.probes = probe_grid(space, static_cast<std::size_t>(cfg.probe_count),
                        cfg.probe_radius ? *cfg.probe_radius : default_probe_radius(space));
  return p;
}

void validate(const RunConfig& c, std::vector<ConfigIssue>& out) {
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0)) issue(out, name, "must be positive, got " + num(v));
  };
  auto at_least = [&](const char* name, std::int64_t v, std::int64_t lo) {
    if (v < lo) issue(out, name, "must be >= " + std::to_string(lo) + ", got " + std::to_string(v));
  };
  auto unit = [&](const char* name, double v) {
    if (!(v > 0.0 && v <= 1.0)) issue(out, name, "must lie in (0, 1], got " + num(v));
  };
  for (auto [n, v] : {std::pair{"eps_zero", c.eps_zero}, {"one_tol", c.one_tol}, {"gap", c.gap},
                      {"eps_prox", c.eps_prox}, {"eps_sep", c.eps_sep}, {"delta", c.delta},
                      {"epsilon", c.epsilon}, {"r0", c.r0}, {"t_min", c.t_min}})
    positive(n, v);
  unit("window", c.window);
  unit("min_rate", c.min_rate);
  if (c.eps_prox > c.eps_sep) issue(out, "eps_prox", "must not exceed eps_sep");
  if (!(c.t_max > c.t_min)) issue(out, "t_max", "must exceed t_min");
  if (c.probe_radius && !(*c.probe_radius > 0.0)) issue(out, "probe_radius", "must be positive");
  for (auto [n, v, lo] : {std::tuple{"horizon", c.horizon, 1}, {"pairs", c.pairs, 1}, {"t_points", c.t_points, 2},
                          {"iterate", c.iterate, 1}, {"probe_count", c.probe_count, 1},
                          {"sens_horizon", c.sens_horizon, 1}, {"sens_samples", c.sens_samples, 2},
                          {"access_horizon", c.access_horizon, 1}, {"access_samples", c.access_samples, 1},
                          {"count", c.count, 2}, {"identity_n", c.identity_n, 1},
                          {"modulus_probe_n", c.modulus_probe_n, 1}, {"artifact_pairs", c.artifact_pairs, 0},
                          {"candidates", c.candidates, 0}})
    at_least(n, v, lo);
  if (c.candidates == 1) issue(out, "candidates", "must be 0 or >= 2");
  if (c.k.empty()) issue(out, "k", "must not be empty");
  for (auto v : c.k)
    if (v < 1) issue(out, "k", "entries must be >= 1, got " + std::to_string(v));
  for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
    if (c.checkpoints[i] < 1 || c.checkpoints[i] > c.horizon ||
        (i > 0 && c.checkpoints[i] <= c.checkpoints[i - 1])) {
      issue(out, "checkpoints", "must be strictly increasing within [1, horizon]");
      break;
    }
  }
  if (c.pair_blocks.size() < 2 || c.pair_blocks[0] != 0 ||
      !std::is_sorted(c.pair_blocks.begin(), c.pair_blocks.end(), std::less_equal<>()))
    issue(out, "pair_blocks", "must start at 0 and strictly increase, with at least two blocks");
  for (double s : c.s_grid)
    if (!(s > 0.0)) issue(out, "s_grid", "entries must be positive");
  if (c.s_grid.empty()) issue(out, "s_grid", "must not be empty");
  if (c.x.empty() != c.y.empty()) issue(out, c.x.empty() ? "x" : "y", "x and y must be given together");
  if (!(c.target >= 0.0 && c.target <= 1.0)) issue(out, "target", "must lie in [0, 1]");
  if (c.kind == "list" && c.maps.empty()) issue(out, "maps", "kind = \"list\" needs at least one map");

  std::optional<NDSystem> sys;
  try {
    sys = build_system(c);
  } catch (const Error& e) {
    issue(out, "system", e.what());
  }
  if (sys && !c.x.empty()) {
    const int dim = sys->space().symbolic() ? 0 : sys->space().dimension();
    for (const auto* v : {&c.x, &c.y}) {
      if (static_cast<int>(v->size()) != dim) {
        issue(out, v == &c.x ? "x" : "y", "needs " + std::to_string(dim) + " coordinate(s) on " + c.space);
      } else if (std::any_of(v->begin(), v->end(), [](double u) { return !(u >= 0.0 && u <= 1.0); })) {
        issue(out, v == &c.x ? "x" : "y", "coordinates must lie in [0, 1]");
      }
    }
  }
  if (sys && c.experiment == ExperimentKind::Kato) {
    try {
      kato_params(c, sys->space());
    } catch (const Error& e) {
      issue(out, "probe_count", e.what());
    }
  }
  switch (c.experiment) {
    case ExperimentKind::Dc3Counterexample:
      if (c.horizon < 720) issue(out, "horizon", "the counterexample experiment needs horizon >= 720");
      if (c.checkpoints.empty()) issue(out, "checkpoints", "the counterexample experiment needs checkpoints");
      break;
    case ExperimentKind::SequenceChaos:
      if (c.horizon < 24) {
        issue(out, "horizon", "the sequence construction needs horizon >= 24");
      } else {
        const auto blocks = BlockLayout::factorial(c.horizon).blocks_within(c.horizon);
        if (blocks < 64 && c.count > (std::int64_t{1} << (blocks - 1)))
          issue(out, "count", "at most " + std::to_string(std::int64_t{1} << (blocks - 1)) +
                                  " distinct selector words fit in " + std::to_string(blocks) + " blocks");
      }
      break;
    case ExperimentKind::LiYorkeInvariance:
    case ExperimentKind::OpenQuestion:
      if (sys && sys->space().symbolic()) issue(out, "space", "pair sampling for this experiment needs a real space");
      break;
    case ExperimentKind::Dc2PrimeInvariance:
      if (sys && sys->space().symbolic()) issue(out, "space", "the modulus estimate needs a real space");
      for (auto v : c.k)
        if (v > c.horizon) issue(out, "k", "iterate order exceeds the horizon");
      break;
    default: break;
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::vector<ConfigIssue> issues;
  merge_config_text(cfg, text, issues);
  validate(cfg, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string to_toml(const RunConfig& cfg) {
  std::string out;
  for (const auto& sec : section_order()) {
    out += (out.empty() ? "" : "\n") + std::string("[") + sec + "]\n";
    for (const auto& e : entries()) {
      if (e.key.section != sec) continue;
      const std::string v = e.get(cfg);
      out += v.empty() ? "# " + e.key.name + " unset\n" : e.key.name + " = " + v + "\n";
    }
  }
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"counterexample", "sequence-chaos", "logistic-invariance", "identity",
                                              "open-question"};
  return names;
}

std::string preset_text(const std::string& name) {
  if (name == "counterexample")
    return R"toml(experiment = "dc3-counterexample"
[system]
space = "shift-two-sided"
kind = "counterexample"
map = "shift"
[orbits]
horizon = 5040
[grid]
t_min = 1e-9
t_max = 1.0
t_points = 60
checkpoints = [300, 5040]
)toml";
  if (name == "sequence-chaos")
    return R"toml(experiment = "sequence-chaos"
[system]
space = "shift-one-sided"
kind = "autonomous"
map = "shift"
[orbits]
horizon = 5040
[grid]
t_min = 1e-6
t_max = 1.0
t_points = 40
[experiments]
count = 30
r0 = 0.25
)toml";
  if (name == "logistic-invariance")
    return R"toml(experiment = "liyorke-invariance"
[system]
kind = "family"
family = "logistic"
decay = "harmonic"
limit = 4.0
scale = -1.0
[orbits]
horizon = 100000
pairs = 200
k = [2, 3]
[experiments]
artifact_pairs = 1
)toml";
  if (name == "identity")
    return R"toml(experiment = "classify"
[system]
kind = "autonomous"
map = "identity"
[orbits]
horizon = 2000
pairs = 20
)toml";
  if (name == "open-question")
    return R"toml(experiment = "open-question"
[system]
kind = "moving-bump"
map = "logistic(4)"
target = 0.3
[orbits]
horizon = 20000
pairs = 4
k = [2, 3]
)toml";
  throw Error(ErrorKind::ValidationError, "unknown preset '" + name + "'");
}

}  // namespace ndschaos
