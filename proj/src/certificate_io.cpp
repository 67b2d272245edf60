#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "liouville/certify.hpp"

namespace liouville::certify {

namespace {

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(const std::string& key, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("bad number for " + key + ": " + s);
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

} // namespace

std::string serialize(const Certificate& c) {
  std::ostringstream out;
  auto put = [&](const std::string& k, double v) { out << k << " = " << hex(v) << '\n'; };
  out << "problem.n = " << c.problem.n() << '\n';
  put("problem.p", c.problem.p());
  put("problem.q", c.problem.q());
  out << "regime = " << name(c.regime) << '\n';
  put("params.gamma", c.params.gamma);
  put("params.S", c.params.S);
  put("params.Q", c.params.Q);
  put("params.alpha", c.params.alpha);
  put("params.P", c.params.P);
  put("params.eps1", c.params.eps1);
  put("params.eps", c.params.eps);
  put("coeffs.a1", c.coeffs.a1);
  put("coeffs.a2", c.coeffs.a2);
  put("coeffs.a3", c.coeffs.a3);
  put("coeffs.a4", c.coeffs.a4);
  put("coeffs.b1", c.coeffs.b1);
  put("coeffs.b2", c.coeffs.b2);
  put("coeffs.D", c.coeffs.D);
  put("coeffs.E", c.coeffs.E);
  put("coeffs.T", c.coeffs.T);
  put("delta", c.delta);
  put("young.A", c.young.A);
  put("young.B", c.young.B);
  put("young.p1", c.young.p1);
  put("young.q1", c.young.q1);
  put("young.sigma1", c.young.sigma1);
  put("young.inv_p1", c.young.inv_p1);
  put("young.inv_q1", c.young.inv_q1);
  put("young.inv_sigma1", c.young.inv_sigma1);
  for (const auto& ch : c.checks) {
    out << "check." << ch.name << " = " << (ch.satisfied ? "pass" : "fail") << ' ' << hex(ch.residual) << '\n';
  }
  return out.str();
}

Certificate deserialize(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::vector<std::pair<std::string, std::string>> checks;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("missing '=' in line: " + t);
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.rfind("check.", 0) == 0) {
      checks.emplace_back(key.substr(6), value);
    } else if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("duplicate key: " + key);
    }
  }
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument("missing key: " + k);
    return it->second;
  };
  auto num = [&](const std::string& k) { return parse_double(k, get(k)); };

  int n = 0;
  try {
    n = std::stoi(get("problem.n"));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad problem.n");
  }
  Certificate c{ProblemPoint(n, num("problem.p"), num("problem.q")), regime_from_name(get("regime")), {}, {}, 0.0, {}, {}};
  c.params = {num("params.gamma"), num("params.S"), num("params.Q"), num("params.alpha"),
              num("params.P"), num("params.eps1"), num("params.eps")};
  c.coeffs = {num("coeffs.a1"), num("coeffs.a2"), num("coeffs.a3"), num("coeffs.a4"), num("coeffs.b1"),
              num("coeffs.b2"), num("coeffs.D"), num("coeffs.E"), num("coeffs.T")};
  c.delta = num("delta");
  c.young = {num("young.A"), num("young.B"), num("young.p1"), num("young.q1"), num("young.sigma1"),
             num("young.inv_p1"), num("young.inv_q1"), num("young.inv_sigma1")};
  for (const auto& [nm, v] : checks) {
    const auto sp = v.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("bad check record: " + nm);
    const std::string flag = v.substr(0, sp);
    if (flag != "pass" && flag != "fail") throw std::invalid_argument("bad check flag: " + flag);
    c.checks.push_back({nm, flag == "pass", parse_double(nm, trim(std::string_view(v).substr(sp + 1)))});
  }
  return c;
}

} // namespace liouville::certify
