#include "plap/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "plap/csv.hpp"

namespace plap {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

double parse_number(const std::string& v, int line) {
  const char* s = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw ConfigError(line, "expected a number, got '" + v + "'");
  return x;
}

long parse_integer(const std::string& v, int line) {
  const double x = parse_number(v, line);
  if (x != std::floor(x) || std::abs(x) > 1e15)
    throw ConfigError(line, "expected an integer, got '" + v + "'");
  return static_cast<long>(x);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, "expected true or false, got '" + v + "'");
}

std::string parse_string(const std::string& v, int line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return v.substr(1, v.size() - 2);
  if (!v.empty() && v.find_first_of(" \t\"[],") == std::string::npos) return v;
  throw ConfigError(line, "expected a string, got '" + v + "'");
}

// One-line [x, y, ...]; empty [] allowed.
std::vector<double> parse_array(const std::string& v, int line) {
  if (v.empty() || v.front() != '[' || v.back() != ']')
    throw ConfigError(line, "expected [ ... ], got '" + v + "'");
  std::vector<double> out;
  const std::string body = trim(v.substr(1, v.size() - 2));
  if (body.empty()) return out;
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ','))
    out.push_back(parse_number(trim(item), line));
  return out;
}

// One-line [[alpha, s], [alpha, s], ...]; empty [] allowed.
std::vector<Monomial> parse_pairs(const std::string& v, int line) {
  if (v.empty() || v.front() != '[' || v.back() != ']')
    throw ConfigError(line, "expected [ ... ], got '" + v + "'");
  std::vector<Monomial> out;
  const char* s = v.c_str() + 1;
  const auto skip = [&] {
    while (*s == ' ' || *s == '\t') ++s;
  };
  const auto number = [&] {
    char* end = nullptr;
    const double x = std::strtod(s, &end);
    if (end == s) throw ConfigError(line, "expected a number in pair list");
    s = end;
    return x;
  };
  skip();
  while (*s != ']') {
    if (*s != '[')
      throw ConfigError(line, "expected [alpha, s] pair");
    ++s;
    skip();
    Monomial m;
    m.alpha = number();
    skip();
    if (*s != ',') throw ConfigError(line, "expected comma inside pair");
    ++s;
    skip();
    m.s = number();
    skip();
    if (*s != ']') throw ConfigError(line, "unterminated pair");
    ++s;
    skip();
    if (*s == ',') {
      ++s;
      skip();
    } else if (*s != ']') {
      throw ConfigError(line, "expected comma between pairs");
    }
    out.push_back(m);
  }
  if (trim(s + 1) != "")
    throw ConfigError(line, "trailing characters after pair list");
  return out;
}

ForcingMode parse_mode(const std::string& v, int line) {
  const std::string m = parse_string(v, line);
  if (m == "full") return ForcingMode::full;
  if (m == "pure_power") return ForcingMode::pure_power;
  if (m == "constant") return ForcingMode::constant_rhs;
  throw ConfigError(line, "mode must be full, pure_power or constant");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"problem",  "scan",   "continue",
                                    "sweep",    "mu_probe", "blowup",
                                    "integrator", "verify", "output", "run"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError(line_no, "expected key = value");
    if (section.empty())
      throw ConfigError(line_no, "key '" + key + "' outside any section");

    const std::string id = section + "." + key;
    if (id == "problem.dim") {
      cfg.problem.dim_n = static_cast<int>(parse_integer(val, line_no));
    } else if (id == "problem.p") {
      cfg.problem.p = parse_number(val, line_no);
    } else if (id == "problem.q") {
      cfg.problem.q = parse_number(val, line_no);
    } else if (id == "problem.delta") {
      cfg.problem.delta = parse_number(val, line_no);
    } else if (id == "problem.lambda") {
      cfg.problem.lambda = parse_number(val, line_no);
    } else if (id == "problem.eps") {
      cfg.problem.eps = parse_number(val, line_no);
    } else if (id == "problem.mu") {
      cfg.problem.mu = parse_number(val, line_no);
    } else if (id == "problem.radius") {
      cfg.problem.radius = parse_number(val, line_no);
    } else if (id == "problem.mode") {
      cfg.problem.mode = parse_mode(val, line_no);
    } else if (id == "problem.constant_c") {
      cfg.problem.constant_c = parse_number(val, line_no);
    } else if (id == "problem.c0") {
      cfg.problem.f.c0 = parse_number(val, line_no);
    } else if (id == "problem.f") {
      cfg.problem.f.monomials = parse_pairs(val, line_no);
    } else if (id == "problem.relax_exponent_window") {
      cfg.problem.relax_exponent_window = parse_bool(val, line_no);
    } else if (id == "scan.a_min") {
      cfg.scan.a_min = parse_number(val, line_no);
    } else if (id == "scan.a_max") {
      cfg.scan.a_max = parse_number(val, line_no);
    } else if (id == "scan.points") {
      cfg.scan.points = static_cast<int>(parse_integer(val, line_no));
    } else if (id == "continue.eps0") {
      cfg.continuation.eps0 = parse_number(val, line_no);
    } else if (id == "continue.factor") {
      cfg.continuation.factor = parse_number(val, line_no);
    } else if (id == "continue.steps") {
      cfg.continuation.steps = static_cast<int>(parse_integer(val, line_no));
    } else if (id == "continue.tol_rel") {
      cfg.continue_tol_rel = parse_number(val, line_no);
    } else if (id == "sweep.lambdas") {
      cfg.sweep_lambdas = parse_array(val, line_no);
    } else if (id == "mu_probe.mus") {
      cfg.mu_values = parse_array(val, line_no);
    } else if (id == "blowup.amplitudes") {
      cfg.blowup_amplitudes = parse_array(val, line_no);
    } else if (id == "blowup.lambda_free") {
      cfg.blowup_lambda_free = parse_bool(val, line_no);
    } else if (id == "integrator.abs_tol") {
      cfg.integrator.abs_tol = parse_number(val, line_no);
    } else if (id == "integrator.rel_tol") {
      cfg.integrator.rel_tol = parse_number(val, line_no);
    } else if (id == "integrator.uniform_points") {
      cfg.integrator.uniform_points =
          static_cast<std::size_t>(parse_integer(val, line_no));
    } else if (id == "integrator.max_steps") {
      cfg.integrator.max_steps =
          static_cast<std::size_t>(parse_integer(val, line_no));
    } else if (id == "integrator.divergence_u") {
      cfg.integrator.divergence_u = parse_number(val, line_no);
    } else if (id == "verify.test_count") {
      cfg.verify_test_count = static_cast<int>(parse_integer(val, line_no));
    } else if (id == "output.dir") {
      cfg.output_dir = parse_string(val, line_no);
    } else if (id == "run.threads") {
      cfg.threads = static_cast<int>(parse_integer(val, line_no));
    } else {
      throw ConfigError(line_no,
                        "unknown key '" + key + "' in [" + section + "]");
    }
  }

  // the continuation fallback scan follows the main scan settings
  cfg.continuation.scan = cfg.scan;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string default_config_text() {
  return R"(# Reference configuration: singular forcing on the unit ball.
# Solved problem:
#   -div(|grad u|^(p-2) grad u) = lambda((u+eps)^(-delta) + u^q + f(u)) + mu
# on the ball of the given radius, u > 0 inside, u = 0 on the boundary.

[problem]
dim = 3
p = 2.0
q = 3.0
delta = 0.5
lambda = 0.05
eps = 0.0                    # 0 selects the singular problem
mu = 0.0
radius = 1.0
mode = "full"                # full | pure_power | constant
constant_c = 0.0             # right-hand side in constant mode
c0 = 0.5                     # sign condition f(t) + c0 t^q >= 0
f = []                       # perturbation terms [[alpha, s], ...]
relax_exponent_window = false

[scan]                       # shooting scan for solution brackets
a_min = 1e-3
a_max = 1e3
points = 64

[continue]                   # regularization path eps_k = eps0 * factor^k
eps0 = 0.1
factor = 0.25
steps = 12
tol_rel = 1e-6               # Cauchy tail tolerance, relative to sup norm

[sweep]
lambdas = [0.01, 0.02, 0.05, 0.1, 0.2, 0.5]

[mu_probe]
mus = [0, 1, 10, 100, 1000, 10000]

[blowup]
amplitudes = [10, 100, 1000]
lambda_free = true           # also report the lambda-absorbing rescale

[integrator]
abs_tol = 1e-10
rel_tol = 1e-8
uniform_points = 2048
max_steps = 500000
divergence_u = 1e12

[verify]
test_count = 8               # interior test bumps per residual check

[output]
dir = "out"

[run]
threads = 1
)";
}

}  // namespace plap
