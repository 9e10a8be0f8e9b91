#include "ietlab/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ietlab {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

Iet<double> load_iet_json(const std::string& path) {
  json j = read_json_file(path);
  std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
  std::vector<int> pi0 = j.at("pi0").get<std::vector<int>>();
  std::vector<int> pi1 = j.at("pi1").get<std::vector<int>>();
  std::vector<double> lambda = j.at("lambda").get<std::vector<double>>();
  const double total = j.value("total_length", 1.0);
  Permutation perm(alphabet, pi0, pi1);
  double sum = 0.0;
  for (double l : lambda) sum += l;
  if (std::fabs(sum - total) > 1e-9 * std::max(1.0, total))
    throw DomainError("iet spec: lambda does not sum to total_length");
  return Iet<double>(perm, lambda);
}

std::string iet_to_json(const Iet<double>& T) {
  json j;
  j["alphabet"] = T.perm().alphabet();
  std::vector<int> pi0(T.d()), pi1(T.d());
  for (int i = 0; i < T.d(); ++i) {
    pi0[i] = T.perm().pi0(i);
    pi1[i] = T.perm().pi1(i);
  }
  j["pi0"] = pi0;
  j["pi1"] = pi1;
  j["lambda"] = T.lambda();
  j["total_length"] = T.total_length();
  return j.dump(2);
}

void save_iet_json(const Iet<double>& T, const std::string& path) {
  atomic_write(path, iet_to_json(T) + "\n");
}

CocyclePtr parse_cocycle_json(const std::string& text, const Iet<double>& T) {
  json j = json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") {
    const double v = j.at("value").get<double>();
    return std::make_shared<CallableCocycle>([v](double) { return v; },
                                             [](double) { return 0.0; });
  }
  if (kind == "log") {
    auto getv = [&](const char* key) {
      std::vector<double> v = j.at(key).get<std::vector<double>>();
      std::vector<Rational> r(v.size());
      for (size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
      return r;
    };
    PiecewisePoly smooth;
    if (j.contains("smooth") && j["smooth"].is_array())
      smooth.coeffs = j["smooth"].get<std::vector<std::vector<double>>>();
    auto form = LogSingularCocycle::Form::wrapped;
    if (j.value("form", std::string("wrapped")) == "local")
      form = LogSingularCocycle::Form::local;
    return std::make_shared<LogSingularCocycle>(T, getv("Cplus"), getv("Cminus"),
                                                smooth, form);
  }
  if (kind == "theta") {
    std::vector<std::vector<XiTerm>> pieces(T.d());
    const auto& arr = j.at("pieces");
    if (static_cast<int>(arr.size()) != T.d())
      throw DomainError("theta cocycle: pieces must have one entry per interval");
    for (int a = 0; a < T.d(); ++a) {
      for (const auto& term : arr[a]) {
        XiTerm t = zeta_singular_model(term.at("m").get<int>(),
                                       term.at("k").get<int>(),
                                       term.at("parity").get<std::string>() == "odd",
                                       term.value("const", 0.0));
        t.scale = term.value("scale", 1.0);
        pieces[a].push_back(t);
      }
    }
    PiecewisePoly smooth;
    if (j.contains("smooth") && j["smooth"].is_array())
      smooth.coeffs = j["smooth"].get<std::vector<std::vector<double>>>();
    return std::make_shared<ThetaSingularCocycle>(T, std::move(pieces), smooth);
  }
  throw DomainError("unknown cocycle kind: " + kind);
}

CocyclePtr load_cocycle_json(const std::string& path, const Iet<double>& T) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cocycle_json(ss.str(), T);
}

SaddleJet load_jet_json(const std::string& path) {
  json j = read_json_file(path);
  SaddleJet jet;
  jet.m = j.at("m").get<int>();
  if (jet.m < 2) throw DomainError("jet: multiplicity must be >= 2");
  jet.V0 = j.value("V0", 1.0);
  jet.jet.assign(jet.m - 1, {});
  const auto& arr = j.at("jet");
  if (static_cast<int>(arr.size()) != jet.m - 1)
    throw DomainError("jet: need m-1 rows (orders k = 0..m-2)");
  for (int k = 0; k <= jet.m - 2; ++k) {
    if (static_cast<int>(arr[k].size()) != k + 1)
      throw DomainError("jet: row k must have k+1 entries");
    for (int i = 0; i <= k; ++i) {
      const auto& e = arr[k][i];
      jet.jet[k].push_back(Cplx<double>(e.at(0).get<double>(), e.at(1).get<double>()));
    }
  }
  return jet;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open for writing: " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw DomainError("atomic rename failed for " + path);
}

}  // namespace ietlab
