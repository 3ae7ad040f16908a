#include "holoconv/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace holoconv {

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw SpecError(path + "/" + key + ": missing field");
  return j.at(key);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SpecError(path + ": expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SpecError(path + ": expected an integer");
  return j.get<int>();
}

}  // namespace

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw SpecError(path + ": expected a [re, im] pair");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

json vector_to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

CVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw SpecError(path + ": expected a non-empty array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        complex_from_json(j[i], path + "/" + std::to_string(i));
  return v;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json coeffs_to_nested(const std::vector<cplx>& c, int n, int depth,
                      std::size_t base, std::size_t stride) {
  json a = json::array();
  if (depth == 0) return complex_to_json(c[base]);
  for (int i = 0; i < n; ++i)
    a.push_back(coeffs_to_nested(c, n, depth - 1,
                                 base + static_cast<std::size_t>(i) * stride,
                                 stride / static_cast<std::size_t>(n)));
  return a;
}

void coeffs_from_nested(const json& j, int n, int depth, std::vector<cplx>& out,
                        const std::string& path) {
  if (depth == 0) {
    out.push_back(complex_from_json(j, path));
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw SpecError(path + ": expected an array of length " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    coeffs_from_nested(j[static_cast<std::size_t>(i)], n, depth - 1, out,
                       path + "/" + std::to_string(i));
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

json tensor_to_json(const SymTensor& A) {
  if (A.is_rank_one()) {
    return json{{"a", complex_to_json(A.coeff_a())},
                {"u", vector_to_json(A.direction())},
                {"k", A.arity()}};
  }
  const int n = A.dim();
  const std::size_t stride = ipow(static_cast<std::size_t>(n), A.arity());
  return json{{"k", A.arity()},
              {"n", n},
              {"coeffs", coeffs_to_nested(A.coeffs(), n, A.arity() + 1, 0, stride)}};
}

SymTensor tensor_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path + ": expected a tensor object");
  if (j.contains("coeffs")) {
    const int k = int_at(require(j, "k", path), path + "/k");
    const int n = int_at(require(j, "n", path), path + "/n");
    if (k < 2 || k > 6) throw SpecError(path + "/k: arity must lie in [2, 6]");
    if (n < 1 || n > 16) throw SpecError(path + "/n: dimension must lie in [1, 16]");
    std::vector<cplx> c;
    c.reserve(ipow(static_cast<std::size_t>(n), k + 1));
    coeffs_from_nested(j.at("coeffs"), n, k + 1, c, path + "/coeffs");
    return SymTensor::dense(k, n, std::move(c));
  }
  if (j.contains("a") && j.contains("u")) {
    const int k = int_at(require(j, "k", path), path + "/k");
    return SymTensor::rank_one(k, complex_from_json(j.at("a"), path + "/a"),
                               vector_from_json(j.at("u"), path + "/u"));
  }
  throw SpecError(path + ": tensor needs either \"coeffs\" or the rank-one "
                         "shorthand {\"a\", \"u\", \"k\"}");
}

json diskfn_to_json(const DiskFunction& g) {
  json j{{"name", g.json_name()}};
  switch (g.kind()) {
    case DiskFnKind::Identity:
      break;
    case DiskFnKind::ExpType:
      j["lambda"] = complex_to_json(g.lambda());
      break;
    case DiskFnKind::KoebeOrder:
      j["alpha"] = g.order();
      break;
    case DiskFnKind::PowerSeries: {
      json c = json::array();
      for (const cplx& a : g.coeffs()) c.push_back(complex_to_json(a));
      j["coeffs"] = std::move(c);
      break;
    }
  }
  return j;
}

DiskFunction diskfn_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path + ": expected a disk-function object");
  const json& nm = require(j, "name", path);
  if (!nm.is_string()) throw SpecError(path + "/name: expected a string");
  const std::string name = nm.get<std::string>();
  if (name == "identity") return DiskFunction::identity();
  if (name == "exp_type")
    return DiskFunction::exp_type(
        complex_from_json(require(j, "lambda", path), path + "/lambda"));
  if (name == "koebe_order")
    return DiskFunction::koebe_order(
        number_at(require(j, "alpha", path), path + "/alpha"));
  if (name == "power_series") {
    const json& cj = require(j, "coeffs", path);
    if (!cj.is_array()) throw SpecError(path + "/coeffs: expected an array");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < cj.size(); ++i)
      c.push_back(complex_from_json(cj[i], path + "/coeffs/" + std::to_string(i)));
    return DiskFunction::power_series(std::move(c));
  }
  throw SpecError(path + "/name: unknown disk function \"" + name + "\"");
}

json mapping_to_json(const Mapping& f) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolynomialMapping>) {
          json terms = json::array();
          for (const SymTensor& A : m.terms) terms.push_back(tensor_to_json(A));
          return json{{"type", "polynomial"}, {"n", m.n}, {"terms", std::move(terms)}};
        } else if constexpr (std::is_same_v<T, RankOneQuadratic>) {
          return json{{"type", "rank_one_quadratic"},
                      {"a", complex_to_json(m.a)},
                      {"u", vector_to_json(m.u)}};
        } else {
          json us = json::array(), gs = json::array();
          for (int j = 0; j < m.rank(); ++j) {
            us.push_back(vector_to_json(m.u.col(j)));
            gs.push_back(diskfn_to_json(m.g[static_cast<std::size_t>(j)]));
          }
          return json{{"type", "phi"}, {"u", std::move(us)}, {"g", std::move(gs)}};
        }
      },
      f);
}

Mapping mapping_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path + ": expected a mapping object");
  const json& tj = require(j, "type", path);
  if (!tj.is_string()) throw SpecError(path + "/type: expected a string");
  const std::string type = tj.get<std::string>();
  try {
    if (type == "polynomial") {
      const int n = int_at(require(j, "n", path), path + "/n");
      std::vector<SymTensor> terms;
      if (j.contains("terms")) {
        const json& ts = j.at("terms");
        if (!ts.is_array()) throw SpecError(path + "/terms: expected an array");
        for (std::size_t i = 0; i < ts.size(); ++i)
          terms.push_back(
              tensor_from_json(ts[i], path + "/terms/" + std::to_string(i)));
      }
      return PolynomialMapping(n, std::move(terms));
    }
    if (type == "rank_one_quadratic") {
      return RankOneQuadratic(
          complex_from_json(require(j, "a", path), path + "/a"),
          vector_from_json(require(j, "u", path), path + "/u"));
    }
    if (type == "phi") {
      const json& us = require(j, "u", path);
      const json& gs = require(j, "g", path);
      if (!us.is_array() || us.empty())
        throw SpecError(path + "/u: expected a non-empty array of vectors");
      if (!gs.is_array() || gs.size() != us.size())
        throw SpecError(path + "/g: expected one disk function per direction");
      const CVector first = vector_from_json(us[0], path + "/u/0");
      CMatrix U(first.size(), static_cast<Eigen::Index>(us.size()));
      U.col(0) = first;
      for (std::size_t i = 1; i < us.size(); ++i) {
        const CVector ui = vector_from_json(us[i], path + "/u/" + std::to_string(i));
        if (ui.size() != first.size())
          throw SpecError(path + "/u/" + std::to_string(i) + ": dimension mismatch");
        U.col(static_cast<Eigen::Index>(i)) = ui;
      }
      std::vector<DiskFunction> g;
      for (std::size_t i = 0; i < gs.size(); ++i)
        g.push_back(diskfn_from_json(gs[i], path + "/g/" + std::to_string(i)));
      return PhiMapping(std::move(U), std::move(g));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(path + ": " + e.what());
  }
  throw SpecError(path + "/type: unknown mapping type \"" + type + "\"");
}

Mapping load_mapping_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw SpecError("cannot open mapping spec \"" + file + "\"");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SpecError(file + ": " + e.what());
  }
  return mapping_from_json(j);
}

json witness_to_json(const Witness& w) {
  return json{{"z", vector_to_json(w.z)},       {"x", vector_to_json(w.x)},
              {"margin", w.margin},             {"alpha", w.alpha},
              {"validated", w.validated},       {"path", w.path}};
}

json certificate_to_json(const CertificateReport& rep) {
  json terms = json::array();
  for (const TermNorm& t : rep.terms)
    terms.push_back(json{{"k", t.k}, {"norm", t.norm}, {"converged", t.converged}});
  json j{{"kind", rep.kind},   {"holds", rep.holds}, {"lhs", rep.lhs},
         {"rhs", rep.rhs},     {"slack", rep.slack}, {"terms", std::move(terms)},
         {"norms_converged", rep.norms_converged},   {"bias", rep.bias}};
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

json search_outcome_to_json(const SearchOutcome& out) {
  json j{{"evaluated", out.evaluated},
         {"singular_points", out.singular_points},
         {"result", out.witness ? "witness" : "no_violation_found"}};
  if (std::isfinite(out.best_margin)) j["best_margin"] = out.best_margin;
  if (out.witness) j["witness"] = witness_to_json(*out.witness);
  return j;
}

json starlike_outcome_to_json(const StarlikeSearchOutcome& out) {
  json j{{"evaluated", out.evaluated},
         {"singular_points", out.singular_points},
         {"result", out.witness ? "witness" : "no_violation_found"}};
  if (std::isfinite(out.best_margin)) j["best_margin"] = out.best_margin;
  if (out.witness)
    j["witness"] = json{{"z", vector_to_json(out.witness->z)},
                        {"margin", out.witness->margin},
                        {"alpha", out.witness->alpha}};
  return j;
}

json growth_report_to_json(const GrowthReport& rep) {
  return json{{"samples", rep.samples},
              {"violations", rep.violations},
              {"worst_slack", rep.worst_slack},
              {"beta", rep.beta}};
}

void write_text_atomic(const std::string& text, const std::string& file) {
  const std::string tmp = file + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write \"" + tmp + "\"");
    out << text;
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace holoconv
