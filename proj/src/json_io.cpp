#include "mlspectra/json_io.hpp"

#include "mlspectra/errors.hpp"

#include <cmath>
#include <fstream>

namespace mlspectra {

namespace {

std::string where(std::size_t index) { return "basis[" + std::to_string(index) + "]"; }

Rational entry_rational(const nlohmann::json& e, const std::string& ctx) {
  try {
    if (e.is_string()) return parse_rational(e.get<std::string>());
    if (e.is_number_integer()) return Rational(e.get<std::int64_t>());
    // dump() gives the shortest round-trip decimal, so 0.1 reads as 1/10.
    if (e.is_number()) return parse_rational(e.dump());
  } catch (const std::exception& ex) {
    throw LoadError(ctx + ": " + ex.what());
  }
  throw LoadError(ctx + ": entry must be a number or a \"p/q\" string");
}

double entry_real(const nlohmann::json& e, const std::string& ctx) {
  if (e.is_number()) return e.get<double>();
  if (e.is_string()) {
    try {
      return to_double(parse_rational(e.get<std::string>()));
    } catch (const std::exception& ex) {
      throw LoadError(ctx + ": " + ex.what());
    }
  }
  throw LoadError(ctx + ": entry must be a number or a \"p/q\" string");
}

// Row-major n*n entries of a nested or flat matrix.
std::vector<nlohmann::json> flatten(const nlohmann::json& m, int n, std::size_t index) {
  if (!m.is_array()) throw LoadError(where(index) + ": matrix must be an array");
  std::vector<nlohmann::json> out;
  const bool nested = !m.empty() && m.front().is_array();
  if (nested) {
    if (int(m.size()) != n) throw LoadError(where(index) + ": expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < m.size(); ++r) {
      const auto& row = m[r];
      if (!row.is_array() || int(row.size()) != n)
        throw LoadError(where(index) + ": row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
      for (const auto& e : row) out.push_back(e);
    }
  } else {
    if (int(m.size()) != n * n)
      throw LoadError(where(index) + ": flat matrix must have " + std::to_string(n * n) + " entries");
    for (const auto& e : m) out.push_back(e);
  }
  return out;
}

std::string entry_ctx(std::size_t index, int i, int j) {
  return where(index) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Json stats_json(const StageStats& s) {
  Json j;
  j["stage"] = s.stage;
  j["seed"] = s.seed;
  j["bezout"] = s.bezout;
  j["paths"] = {{"total", s.paths.total},
                {"converged", s.paths.converged},
                {"diverged", s.paths.diverged},
                {"at_infinity", s.paths.at_infinity},
                {"singular_endpoint", s.paths.singular_endpoint}};
  j["suspected_positive_dimensional"] = s.suspected_positive_dimensional;
  j["count"] = s.count;
  j["max_residual"] = s.max_residual;
  return j;
}

Json eigen_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

LinearSubspace subspace_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw LoadError("subspace JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw LoadError("missing integer field \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1) throw LoadError("\"n\" must be at least 1");
  Field field = Field::rational;
  if (j.contains("field")) {
    if (!j["field"].is_string()) throw LoadError("\"field\" must be a string");
    const auto name = j["field"].get<std::string>();
    if (name == "rational") field = Field::rational;
    else if (name == "real") field = Field::real;
    else throw LoadError("unsupported field \"" + name + "\" (expected rational or real)");
  }
  if (!j.contains("basis") || !j["basis"].is_array()) throw LoadError("missing array field \"basis\"");
  const auto& basis = j["basis"];
  if (basis.empty()) throw LoadError("basis must contain at least one matrix");
  if (int(basis.size()) > n * (n + 1) / 2)
    throw LoadError("basis has more than n(n+1)/2 = " + std::to_string(n * (n + 1) / 2) + " elements");

  try {
    if (field == Field::rational) {
      std::vector<SymMatQ> mats;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto flat = flatten(basis[b], n, b);
        SymMatQ m(n);
        for (int i = 0; i < n; ++i)
          for (int k = i; k < n; ++k) {
            const Rational upper = entry_rational(flat[std::size_t(i * n + k)], entry_ctx(b, i, k));
            const Rational lower = entry_rational(flat[std::size_t(k * n + i)], entry_ctx(b, k, i));
            if (upper != lower)
              throw LoadError(where(b) + ": not symmetric at (" + std::to_string(i) + "," + std::to_string(k) + ")");
            m.set(i, k, upper);
          }
        mats.push_back(std::move(m));
      }
      return LinearSubspace::rational(n, std::move(mats));
    }
    std::vector<SymMatR> mats;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto flat = flatten(basis[b], n, b);
      SymMatR m(n);
      for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
          const double upper = entry_real(flat[std::size_t(i * n + k)], entry_ctx(b, i, k));
          const double lower = entry_real(flat[std::size_t(k * n + i)], entry_ctx(b, k, i));
          if (!std::isfinite(upper) || !std::isfinite(lower))
            throw LoadError(entry_ctx(b, i, k) + ": entry is not finite");
          if (std::abs(upper - lower) > 1e-12)
            throw LoadError(where(b) + ": not symmetric at (" + std::to_string(i) + "," + std::to_string(k) + ")");
          m.set(i, k, upper);
        }
      mats.push_back(std::move(m));
    }
    return LinearSubspace::real(n, std::move(mats));
  } catch (const DependentBasis& e) {
    throw LoadError(where(std::size_t(e.index())) + ": " + e.what());
  }
}

LinearSubspace load_subspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path + ": " + e.what());
  }
  return subspace_from_json(j);
}

Json to_json(const SymMatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const SymMatR& m) { return eigen_json(to_eigen(m)); }

Json to_json(const SymMatC& m) {
  double imag = 0.0;
  for (const auto& v : m.packed()) imag = std::max(imag, std::abs(v.imag()));
  const bool real = imag <= 1e-12 * std::max(frobenius_norm(m), 1e-300);
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n(); ++j) {
      if (real) row.push_back(m(i, j).real());
      else row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const LinearSubspace& L) {
  Json j;
  j["n"] = L.n();
  j["field"] = L.is_exact() ? "rational" : "real";
  Json basis = Json::array();
  for (int i = 0; i < L.k(); ++i) {
    if (L.is_exact()) basis.push_back(to_json(L.exact_basis()[std::size_t(i)]));
    else basis.push_back(to_json(L.basis()[std::size_t(i)]));
  }
  j["basis"] = basis;
  return j;
}

Json to_json(const DegreeResult& d) {
  Json j;
  j["count"] = d.count;
  Json pts = Json::array();
  for (const auto& p : d.points) pts.push_back(to_json(p));
  j["points"] = pts;
  Json draws = Json::array();
  for (const auto& s : d.draws) draws.push_back(stats_json(s));
  j["draws"] = draws;
  return j;
}

Json to_json(const TangencyResult& t) {
  Json j;
  Json ws = Json::array();
  for (std::size_t i = 0; i < t.witnesses.size(); ++i) {
    Json w;
    w["X"] = to_json(t.witnesses[i]);
    w["exact"] = t.exact[i] ? to_json(*t.exact[i]) : Json(nullptr);
    w["residual"] = t.residuals[i];
    ws.push_back(w);
  }
  j["witnesses"] = ws;
  j["candidates"] = t.candidates;
  j["stats"] = stats_json(t.stats);
  return j;
}

Json to_json(const CknResult& c) {
  Json j;
  if (c.witness) {
    const auto& w = *c.witness;
    j["witness"] = {{"X", to_json(w.X)},
                    {"Y", to_json(w.Y)},
                    {"X_exact", w.X_exact ? to_json(*w.X_exact) : Json(nullptr)},
                    {"Y_exact", w.Y_exact ? to_json(*w.Y_exact) : Json(nullptr)},
                    {"residual", w.residual},
                    {"rank_X", w.rank_X},
                    {"rank_Y", w.rank_Y}};
  } else {
    j["witness"] = nullptr;
  }
  j["candidates"] = c.candidates;
  j["best_residual"] = c.best_residual;
  j["stats"] = stats_json(c.stats);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const MLReport& r, const GeometryOptions& opts) {
  Json j;
  j["seed"] = r.seed;
  j["ml_degree"] = r.ml_degree;
  j["reciprocal_degree"] = r.reciprocal_degree;
  j["is_ml_maximal"] = r.is_ml_maximal;
  j["tolerances"] = {{"residual", opts.residual_tol},
                     {"dedup", opts.dedup_tol},
                     {"verify", opts.verify_tol},
                     {"rank", opts.rank_tol},
                     {"det", opts.det_tol}};
  j["ml"] = to_json(r.ml);
  j["reciprocal"] = to_json(r.reciprocal);
  j["tangency"] = to_json(r.tangency);
  j["ckn"] = to_json(r.ckn);
  j["violations"] = r.violations;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const PsdRankResult& p) {
  Json j;
  j["rank"] = p.rank;
  j["W"] = to_json(p.W);
  j["W_exact"] = p.W_exact ? to_json(*p.W_exact) : Json(nullptr);
  j["coefficients"] = p.coefficients;
  if (p.exact_coefficients) {
    Json c = Json::array();
    for (const auto& v : *p.exact_coefficients) c.push_back(to_string(v));
    j["exact_coefficients"] = c;
  } else {
    j["exact_coefficients"] = nullptr;
  }
  j["exact"] = p.exact;
  j["ok"] = p.ok;
  j["face_reductions"] = p.face_reductions;
  j["diagnostics"] = p.diagnostics;
  return j;
}

Json to_json(const BadCertificate& c, const BadnessOptions& opts) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["n"] = c.n;
  j["s_L"] = c.s_L;
  j["s_Lperp"] = c.s_Lperp;
  j["cond10"] = c.cond10;
  j["cond11"] = c.cond11;
  j["cond11_vacuous"] = c.cond11_vacuous;
  j["violating_matrix"] = c.violating_exact    ? to_json(*c.violating_exact)
                          : c.violating_matrix ? to_json(*c.violating_matrix)
                                               : Json(nullptr);
  j["transform"] = eigen_json(c.transform);
  j["exact"] = c.exact;
  j["tolerances"] = {{"definite", opts.definite_tol},
                     {"face", opts.face_tol},
                     {"psd", opts.psd_tol},
                     {"block", opts.block_tol}};
  j["psd_L"] = to_json(c.psd_L);
  j["psd_Lperp"] = to_json(c.psd_Lperp);
  j["diagnostics"] = c.diagnostics;
  return j;
}

Json to_json(const EpsLeadingTerm& t, const std::vector<std::string>& names) {
  auto poly_rows = [&](const EpsPolyMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < m.n(); ++k) row.push_back(m(i, k).to_string(names));
      rows.push_back(row);
    }
    return rows;
  };
  Json j;
  j["d"] = t.d;
  j["Z"] = poly_rows(t.Z);
  j["adjugate"] = poly_rows(t.adjugate);
  j["determinant"] = t.determinant.to_string(names);
  return j;
}

}  // namespace mlspectra
