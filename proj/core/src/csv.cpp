#include "plap/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plap {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_row(int line_no, const char* what) {
  throw std::runtime_error("profile csv: line " + std::to_string(line_no) +
                           ": " + what);
}

// Parses exactly `count` comma-separated doubles.
void parse_row(const std::string& line, int line_no, double* out, int count) {
  const char* s = line.c_str();
  for (int i = 0; i < count; ++i) {
    char* end = nullptr;
    out[i] = std::strtod(s, &end);
    if (end == s) bad_row(line_no, "expected a number");
    s = end;
    while (*s == ' ' || *s == '\t') ++s;
    if (i + 1 < count) {
      if (*s != ',') bad_row(line_no, "expected a comma");
      ++s;
    }
  }
  while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
  if (*s != '\0') bad_row(line_no, "trailing characters");
}

}  // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string profile_to_csv(const RadialProfile& profile) {
  std::string out = "r,u,du\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += fmt17(profile.r[i]);
    out += ',';
    out += fmt17(profile.u[i]);
    out += ',';
    out += fmt17(profile.du[i]);
    out += '\n';
  }
  return out;
}

std::string scan_to_csv(const BracketScan& scan) {
  std::string out = "a,miss,terminated\n";
  for (const auto& s : scan.samples) {
    out += fmt17(s.a);
    out += ',';
    out += fmt17(s.miss);
    out += ',';
    out += to_string(s.terminated);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const LambdaSweepResult& sweep) {
  std::string out = "lambda,branch,a_star,sup_norm,converged,weak_residual\n";
  for (const auto& r : sweep.records) {
    out += fmt17(r.param_value);
    out += ',';
    out += std::to_string(r.branch);
    out += ',';
    out += fmt17(r.a_star);
    out += ',';
    out += fmt17(r.sup_norm);
    out += ',';
    out += r.converged ? '1' : '0';
    out += ',';
    out += fmt17(r.weak_residual);
    out += '\n';
  }
  return out;
}

std::string mu_probe_to_csv(const MuProbeResult& probe) {
  std::string out = "mu,exists,k,lambda1\n";
  for (const auto& r : probe.rows) {
    out += fmt17(r.mu);
    out += ',';
    out += r.exists ? '1' : '0';
    out += ',';
    out += fmt17(r.k);
    out += ',';
    out += fmt17(r.lambda1);
    out += '\n';
  }
  return out;
}

std::string eps_path_to_csv(const EpsPath& path) {
  std::string out = "eps,a_star,sup_norm,cauchy_increment\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += fmt17(path.eps_values[i]);
    out += ',';
    out += fmt17(path.a_stars[i]);
    out += ',';
    out += fmt17(path.profiles[i].sup_norm());
    out += ',';
    out += fmt17(path.cauchy_increments[i]);
    out += '\n';
  }
  return out;
}

std::string eigen_to_csv(const EigenPair& eigen) {
  std::string out = "lambda1,";
  out += fmt17(eigen.lambda1);
  out += "\nr,phi,dphi\n";
  const RadialProfile& prof = eigen.phi1;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    out += fmt17(prof.r[i]);
    out += ',';
    out += fmt17(prof.u[i]);
    out += ',';
    out += fmt17(prof.du[i]);
    out += '\n';
  }
  return out;
}

RadialProfile profile_from_csv(const std::string& text,
                               const ProblemParams& params) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "r,u,du")
    throw std::runtime_error("profile csv: missing r,u,du header");

  RadialProfile prof;
  prof.params = params;
  int line_no = 1;
  double row[3];
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    parse_row(line, line_no, row, 3);
    if (!prof.r.empty() && !(row[0] > prof.r.back()))
      bad_row(line_no, "grid must increase strictly");
    prof.r.push_back(row[0]);
    prof.u.push_back(row[1]);
    prof.du.push_back(row[2]);
  }
  if (prof.size() < 2)
    throw std::runtime_error("profile csv: needs at least 2 rows");

  prof.center_value = prof.u.front();
  prof.uniform_idx.resize(prof.size());
  std::iota(prof.uniform_idx.begin(), prof.uniform_idx.end(), 0);
  if (prof.r.back() >= params.radius * (1.0 - 1e-9)) {
    prof.terminated = Termination::reached_r;
  } else {
    prof.terminated = Termination::hit_zero;
    prof.r_cross = prof.r.back();
  }
  return prof;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace plap
