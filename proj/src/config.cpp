#include "sh/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "sh/errors.hpp"

namespace sh {

namespace {

struct RawValue {
  std::string text;
  int line = 0;
};

using RawMap = std::map<std::string, RawValue>;

constexpr const char* kKnownKeys[] = {
    "dim",     "L",       "M",       "tau",     "steps",
    "g",       "eps",     "ic",      "amplitude", "seed",
    "ic_file", "forcing", "abs_tol", "max_newton_iters",
    "max_inner_iters", "linear_mode", "sign_mode", "snapshot_every",
    "checkpoint_every", "output_dir", "study",   "ns",
    "ms",      "T",
};

bool known_key(const std::string& k) {
  for (const char* name : kKnownKeys)
    if (k == name) return true;
  return false;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

RawMap split_lines(const std::string& text) {
  RawMap raw;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "expected key = value");
    if (!known_key(key))
      throw ConfigError(line_no, "unknown key '" + key + "'");
    if (raw.contains(key))
      throw ConfigError(line_no, "duplicate key '" + key + "'");
    raw[key] = {value, line_no};
  }
  return raw;
}

const RawValue* find(const RawMap& raw, const std::string& key) {
  auto it = raw.find(key);
  return it == raw.end() ? nullptr : &it->second;
}

const RawValue& need(const RawMap& raw, const std::string& key) {
  const RawValue* v = find(raw, key);
  if (!v) throw ConfigError(0, "missing required key '" + key + "'");
  return *v;
}

double parse_real(const RawValue& v, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.text.c_str(), &end);
  if (v.text.empty() || end != v.text.c_str() + v.text.size() || errno != 0 ||
      !std::isfinite(x))
    throw ConfigError(v.line, key + " expects a real number, got '" + v.text +
                                  "'");
  return x;
}

long long parse_integer(const RawValue& v, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.text.c_str(), &end, 10);
  if (v.text.empty() || end != v.text.c_str() + v.text.size() || errno != 0)
    throw ConfigError(v.line,
                      key + " expects an integer, got '" + v.text + "'");
  return x;
}

std::uint64_t parse_unsigned(const RawValue& v, const std::string& key) {
  if (!v.text.empty() && v.text[0] == '-')
    throw ConfigError(v.line, key + " expects a nonnegative integer, got '" +
                                  v.text + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.text.c_str(), &end, 10);
  if (v.text.empty() || end != v.text.c_str() + v.text.size() || errno != 0)
    throw ConfigError(v.line, key + " expects a nonnegative integer, got '" +
                                  v.text + "'");
  return x;
}

bool parse_toggle(const RawValue& v, const std::string& key) {
  if (v.text == "on") return true;
  if (v.text == "off") return false;
  throw ConfigError(v.line, key + " expects on or off, got '" + v.text + "'");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const RawValue& v, const std::string& key,
                          Parse parse_one) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(v.text);
  while (std::getline(in, item, ',')) {
    const RawValue part{trim(item), v.line};
    out.push_back(parse_one(part, key));
  }
  if (out.empty())
    throw ConfigError(v.line, key + " expects a comma-separated list");
  return out;
}

[[noreturn]] void reject(const RawValue& v, const std::string& msg) {
  throw ConfigError(v.line, msg);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  const RawMap raw = split_lines(text);
  RunConfig c;

  if (const RawValue* v = find(raw, "dim")) {
    const long long d = parse_integer(*v, "dim");
    if (d != 2 && d != 3) reject(*v, "dim must be 2 or 3");
    c.dim = static_cast<int>(d);
  }

  const RawValue& box = need(raw, "L");
  c.length = parse_real(box, "L");
  if (!(c.length > 0.0)) reject(box, "L must be positive");

  const bool studying = raw.contains("study");
  if (studying) {
    const RawValue& v = need(raw, "study");
    StudySpec s;
    if (v.text == "temporal")
      s.kind = StudySpec::Kind::temporal;
    else if (v.text == "spatial")
      s.kind = StudySpec::Kind::spatial;
    else
      reject(v, "study expects temporal or spatial, got '" + v.text + "'");
    const RawValue& horizon = need(raw, "T");
    s.horizon = parse_real(horizon, "T");
    if (!(s.horizon > 0.0)) reject(horizon, "T must be positive");
    if (s.kind == StudySpec::Kind::temporal) {
      if (const RawValue* bad = find(raw, "tau"))
        reject(*bad, "a temporal study derives tau from T and ns");
      if (const RawValue* bad = find(raw, "steps"))
        reject(*bad, "a temporal study derives steps from ns");
      if (const RawValue* bad = find(raw, "ms"))
        reject(*bad, "ms belongs to a spatial study");
      const RawValue& ns = need(raw, "ns");
      s.ns = parse_list<long>(ns, "ns", [](const RawValue& p,
                                           const std::string& k) {
        const long long n = parse_integer(p, k);
        if (n < 1) throw ConfigError(p.line, k + " entries must be positive");
        return static_cast<long>(n);
      });
      if (!std::is_sorted(s.ns.begin(), s.ns.end()) ||
          std::adjacent_find(s.ns.begin(), s.ns.end()) != s.ns.end())
        reject(ns, "ns must be strictly increasing");
    } else {
      if (const RawValue* bad = find(raw, "M"))
        reject(*bad, "a spatial study derives M from ms");
      if (const RawValue* bad = find(raw, "steps"))
        reject(*bad, "a spatial study derives steps from T and tau");
      if (const RawValue* bad = find(raw, "ns"))
        reject(*bad, "ns belongs to a temporal study");
      const RawValue& ms = need(raw, "ms");
      s.ms = parse_list<int>(ms, "ms", [](const RawValue& p,
                                          const std::string& k) {
        const long long m = parse_integer(p, k);
        if (m < 4) throw ConfigError(p.line, k + " entries must be at least 4");
        return static_cast<int>(m);
      });
      if (!std::is_sorted(s.ms.begin(), s.ms.end()) ||
          std::adjacent_find(s.ms.begin(), s.ms.end()) != s.ms.end())
        reject(ms, "ms must be strictly increasing");
    }
    c.study = s;
  } else {
    for (const char* key : {"ns", "ms", "T"})
      if (const RawValue* bad = find(raw, key))
        reject(*bad, std::string(key) + " requires a study");
  }

  const bool needs_m =
      !studying || c.study->kind == StudySpec::Kind::temporal;
  if (needs_m) {
    const RawValue& m = need(raw, "M");
    const long long points = parse_integer(m, "M");
    if (points < 4) reject(m, "M must be at least 4");
    if (points > 1 << 14) reject(m, "M is beyond the supported range");
    c.points = static_cast<int>(points);
  }

  const bool needs_tau =
      !studying || c.study->kind == StudySpec::Kind::spatial;
  if (needs_tau) {
    const RawValue& t = need(raw, "tau");
    c.tau = parse_real(t, "tau");
    if (!(c.tau > 0.0)) reject(t, "tau must be positive");
  }

  if (!studying) {
    const RawValue& st = need(raw, "steps");
    const long long n = parse_integer(st, "steps");
    if (n < 1) reject(st, "steps must be positive");
    c.steps = static_cast<long>(n);
  }

  const RawValue& g = need(raw, "g");
  c.params.g = parse_real(g, "g");
  if (c.params.g < 0.0) reject(g, "g must be nonnegative");

  const RawValue& eps = need(raw, "eps");
  c.params.eps = parse_real(eps, "eps");
  if (!(c.params.eps > 0.0)) reject(eps, "eps must be positive");

  const RawValue& ic = need(raw, "ic");
  if (ic.text == "zero")
    c.ic = InitialKind::zero;
  else if (ic.text == "example1")
    c.ic = InitialKind::example1;
  else if (ic.text == "example2")
    c.ic = InitialKind::example2;
  else if (ic.text == "random")
    c.ic = InitialKind::random;
  else if (ic.text == "file")
    c.ic = InitialKind::file;
  else
    reject(ic, "ic expects zero, example1, example2, random or file, got '" +
                   ic.text + "'");

  if (const RawValue* v = find(raw, "amplitude")) {
    if (c.ic != InitialKind::random)
      reject(*v, "amplitude applies only to ic = random");
    c.amplitude = parse_real(*v, "amplitude");
    if (!(c.amplitude > 0.0)) reject(*v, "amplitude must be positive");
  }
  if (const RawValue* v = find(raw, "seed")) {
    if (c.ic != InitialKind::random)
      reject(*v, "seed applies only to ic = random");
    c.seed = parse_unsigned(*v, "seed");
  }
  if (const RawValue* v = find(raw, "ic_file")) {
    if (c.ic != InitialKind::file)
      reject(*v, "ic_file applies only to ic = file");
    if (v->text.empty()) reject(*v, "ic_file expects a path");
    c.ic_file = v->text;
  }
  if (c.ic == InitialKind::file && c.ic_file.empty())
    throw ConfigError(0, "missing required key 'ic_file'");

  if (const RawValue* v = find(raw, "forcing")) c.forcing = parse_toggle(*v, "forcing");

  if (const RawValue* v = find(raw, "abs_tol")) {
    c.solve.abs_tol = parse_real(*v, "abs_tol");
    if (!(c.solve.abs_tol > 0.0)) reject(*v, "abs_tol must be positive");
  }
  if (const RawValue* v = find(raw, "max_newton_iters")) {
    const long long n = parse_integer(*v, "max_newton_iters");
    if (n < 1) reject(*v, "max_newton_iters must be positive");
    c.solve.max_newton_iters = static_cast<int>(n);
  }
  if (const RawValue* v = find(raw, "max_inner_iters")) {
    const long long n = parse_integer(*v, "max_inner_iters");
    if (n < 1) reject(*v, "max_inner_iters must be positive");
    c.solve.max_inner_iters = static_cast<int>(n);
  }
  if (const RawValue* v = find(raw, "linear_mode")) {
    if (v->text == "fourier_direct")
      c.solve.linear_mode = LinearMode::fourier_direct;
    else if (v->text == "iterative")
      c.solve.linear_mode = LinearMode::iterative;
    else
      reject(*v, "linear_mode expects fourier_direct or iterative, got '" +
                     v->text + "'");
  }
  if (const RawValue* v = find(raw, "sign_mode")) {
    if (v->text == "corrected")
      c.sign_mode = StartupSign::corrected;
    else if (v->text == "uncorrected")
      c.sign_mode = StartupSign::uncorrected;
    else
      reject(*v, "sign_mode expects corrected or uncorrected, got '" +
                     v->text + "'");
  }
  if (const RawValue* v = find(raw, "snapshot_every")) {
    const long long n = parse_integer(*v, "snapshot_every");
    if (n < 0) reject(*v, "snapshot_every must be nonnegative");
    c.snapshot_every = static_cast<long>(n);
  }
  if (const RawValue* v = find(raw, "checkpoint_every")) {
    const long long n = parse_integer(*v, "checkpoint_every");
    if (n < 0) reject(*v, "checkpoint_every must be nonnegative");
    c.checkpoint_every = static_cast<long>(n);
  }
  if (const RawValue* v = find(raw, "output_dir")) {
    if (v->text.empty()) reject(*v, "output_dir expects a path");
    c.output_dir = v->text;
  }

  if ((c.ic == InitialKind::example1 || c.ic == InitialKind::example2) &&
      c.dim != 2)
    throw ConfigError(0, "ic " + std::string(c.ic == InitialKind::example1
                                                 ? "example1"
                                                 : "example2") +
                             " requires dim = 2");
  if (c.forcing) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    if (c.dim != 2 || std::abs(c.length - kTwoPi) > 1e-9 * kTwoPi)
      throw ConfigError(0, "forcing requires dim = 2 and L = 2*pi");
  }

  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string print_config(const RunConfig& c) {
  std::ostringstream out;
  out << "dim = " << c.dim << "\n";
  out << "L = " << format_real(c.length) << "\n";
  const bool temporal =
      c.study && c.study->kind == StudySpec::Kind::temporal;
  const bool spatial = c.study && c.study->kind == StudySpec::Kind::spatial;
  if (!spatial) out << "M = " << c.points << "\n";
  if (!temporal) out << "tau = " << format_real(c.tau) << "\n";
  if (!c.study) out << "steps = " << c.steps << "\n";
  out << "g = " << format_real(c.params.g) << "\n";
  out << "eps = " << format_real(c.params.eps) << "\n";
  const char* ic = "zero";
  switch (c.ic) {
    case InitialKind::zero: ic = "zero"; break;
    case InitialKind::example1: ic = "example1"; break;
    case InitialKind::example2: ic = "example2"; break;
    case InitialKind::random: ic = "random"; break;
    case InitialKind::file: ic = "file"; break;
  }
  out << "ic = " << ic << "\n";
  if (c.ic == InitialKind::random) {
    out << "amplitude = " << format_real(c.amplitude) << "\n";
    out << "seed = " << c.seed << "\n";
  }
  if (c.ic == InitialKind::file) out << "ic_file = " << c.ic_file << "\n";
  out << "forcing = " << (c.forcing ? "on" : "off") << "\n";
  out << "sign_mode = "
      << (c.sign_mode == StartupSign::corrected ? "corrected" : "uncorrected")
      << "\n";
  out << "abs_tol = " << format_real(c.solve.abs_tol) << "\n";
  out << "max_newton_iters = " << c.solve.max_newton_iters << "\n";
  out << "max_inner_iters = " << c.solve.max_inner_iters << "\n";
  out << "linear_mode = "
      << (c.solve.linear_mode == LinearMode::fourier_direct ? "fourier_direct"
                                                            : "iterative")
      << "\n";
  out << "snapshot_every = " << c.snapshot_every << "\n";
  out << "checkpoint_every = " << c.checkpoint_every << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  if (c.study) {
    out << "study = " << (temporal ? "temporal" : "spatial") << "\n";
    if (temporal) {
      out << "ns = ";
      for (std::size_t i = 0; i < c.study->ns.size(); ++i)
        out << (i ? "," : "") << c.study->ns[i];
      out << "\n";
    } else {
      out << "ms = ";
      for (std::size_t i = 0; i < c.study->ms.size(); ++i)
        out << (i ? "," : "") << c.study->ms[i];
      out << "\n";
    }
    out << "T = " << format_real(c.study->horizon) << "\n";
  }
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t config_digest(const RunConfig& c) {
  return fnv1a64(print_config(c));
}

}  // namespace sh
