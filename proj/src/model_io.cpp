#include "torfit/model_io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace torfit {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.flush()) throw input_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw input_error("rename to '" + path + "' failed");
}

std::string expect_key(std::istream& in, const std::string& key) {
  std::string k;
  if (!(in >> k) || k != key)
    throw input_error("model file: expected '" + key + "', got '" + k + "'");
  std::string rest;
  std::getline(in, rest);
  std::istringstream line(rest);
  std::string value, extra, out;
  while (line >> value) {
    if (!out.empty()) out += ' ';
    out += value;
  }
  return out;
}

}  // namespace

void save_model(const FittedModel& model, const std::string& path) {
  std::string body;
  body += "torfit-model v1\n";
  body += "m " + std::to_string(model.spec.m) + "\n";
  body += "k " + std::to_string(model.spec.k) + "\n";
  body += "lambda " + fmt17(model.spec.lambda) + "\n";
  if (model.spec.omega) {
    body += "omega";
    for (Eigen::Index i = 0; i < model.spec.omega->size(); ++i)
      body += ' ' + std::to_string((*model.spec.omega)[i]);
    body += '\n';
  } else if (model.spec.trunc.fixed_radius) {
    body += "omega full radius " + std::to_string(model.spec.trunc.R) + "\n";
  } else {
    body += "omega full tol " + fmt17(model.spec.trunc.tol) + "\n";
  }
  body += "n " + std::to_string(model.n()) + "\n";
  body += "points\n";
  for (const auto& p : model.points) {
    for (int a = 0; a < p.dim(); ++a) {
      if (a) body += ' ';
      body += fmt17(p[a]);
    }
    body += '\n';
  }
  body += "coeffs\n";
  for (Eigen::Index i = 0; i < model.coeffs.size(); ++i)
    body += fmt17(model.coeffs[i]) + "\n";

  std::string hash_input = body;
  char ts[64];
  std::time_t now = std::time(nullptr);
  std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  char hash[20];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(hash_input)));
  body += "created " + std::string(ts) + "\n";
  body += "config_hash " + std::string(hash) + "\n";
  atomic_write(path, body);
}

FittedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open model file '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != "torfit-model v1")
    throw input_error("model file: unsupported header '" + line + "'");

  int m = std::stoi(expect_key(in, "m"));
  int k = std::stoi(expect_key(in, "k"));
  double lambda = std::stod(expect_key(in, "lambda"));
  std::string omega_line = expect_key(in, "omega");

  std::optional<IVec> omega;
  TruncationPolicy trunc = TruncationPolicy::tolerance(1e-10);
  {
    std::istringstream os(omega_line);
    std::string first;
    os >> first;
    if (first == "full") {
      std::string kind;
      os >> kind;
      if (kind == "radius") {
        int R;
        os >> R;
        trunc = TruncationPolicy::radius(R);
      } else if (kind == "tol") {
        double tol;
        os >> tol;
        trunc = TruncationPolicy::tolerance(tol);
      } else {
        throw input_error("model file: bad truncation spec '" + omega_line + "'");
      }
    } else {
      std::vector<int> w;
      w.push_back(std::stoi(first));
      int v;
      while (os >> v) w.push_back(v);
      if (static_cast<int>(w.size()) != m)
        throw input_error("model file: omega size != m");
      omega = IVec(m);
      for (int i = 0; i < m; ++i) (*omega)[i] = w[i];
    }
  }

  int n = std::stoi(expect_key(in, "n"));
  if (n < 1) throw input_error("model file: n must be >= 1");
  while (std::getline(in, line) && line.empty()) {
  }
  if (line != "points") throw input_error("model file: expected 'points'");

  std::vector<TorusPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw input_error("model file: truncated points");
    std::istringstream ls(line);
    Vec x(m);
    for (int a = 0; a < m; ++a)
      if (!(ls >> x[a])) throw input_error("model file: bad point line");
    points.emplace_back(x);
  }
  while (std::getline(in, line) && line.empty()) {
  }
  if (line != "coeffs") throw input_error("model file: expected 'coeffs'");
  Vec coeffs(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw input_error("model file: truncated coeffs");
    coeffs[i] = std::stod(line);
  }
  KernelSpec spec(m, k, lambda, omega, trunc);
  return FittedModel{std::move(points), std::move(coeffs), spec};
}

ScatteredData load_sites(const std::string& path, int m) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open sites file '" + path + "'");
  ScatteredData data;
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Vec x(m);
    double first;
    if (!(ls >> first)) continue;  // blank or comment-only line
    x[0] = first;
    for (int a = 1; a < m; ++a)
      if (!(ls >> x[a]))
        throw input_error("sites file line " + std::to_string(lineno) +
                          ": expected " + std::to_string(m + 1) + " numbers");
    double q;
    if (!(ls >> q))
      throw input_error("sites file line " + std::to_string(lineno) +
                        ": missing value after coordinates");
    double extra;
    if (ls >> extra)
      throw input_error("sites file line " + std::to_string(lineno) +
                        ": too many numbers");
    data.points.emplace_back(x);
    vals.push_back(q);
  }
  if (data.points.empty()) throw input_error("sites file '" + path + "' has no data");
  data.values = Eigen::Map<Vec>(vals.data(), vals.size());
  data.validate();
  return data;
}

}  // namespace torfit
