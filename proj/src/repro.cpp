#include "mlspectra/repro.hpp"

#include "mlspectra/builtins.hpp"
#include <algorithm>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace mlspectra {

namespace {

struct Case {
  std::string label;
  LinearSubspace L;
  std::uint64_t seed = 0;
  std::optional<MLReport> report;
  std::string error;
};

// Lazily built corpora shared between criteria, so that e.g. the badness
// cross-check reuses the reports of the genericity sweep.
class Context {
 public:
  explicit Context(std::uint64_t seed) : seed_(seed) {}

  std::vector<Case>& builtins() {
    if (builtins_.empty()) {
      for (const char* name : {"type-c-net", "diagonal-net-polar", "diagonal-net"})
        builtins_.push_back(make(name, builtin_subspace(name), 100 + builtins_.size()));
    }
    return builtins_;
  }
  Case& builtin(const std::string& name) {
    for (auto& c : builtins())
      if (c.label == name) return c;
    throw std::logic_error("no builtin case " + name);
  }

  std::vector<Case>& generic() {
    if (generic_.empty()) {
      for (int k = 2; k <= 5; ++k)
        for (int i = 0; i < 5; ++i) {
          const auto L = sample_generic_subspace(3, k, derive_seed(seed_, 4000 + 10 * k + i));
          generic_.push_back(make("n=3 k=" + std::to_string(k) + " #" + std::to_string(i), L, 4000 + 10 * k + i));
        }
      for (int i = 0; i < 5; ++i) {
        const auto L = sample_generic_subspace(4, 2, derive_seed(seed_, 4100 + i));
        generic_.push_back(make("n=4 k=2 #" + std::to_string(i), L, 4100 + i));
      }
    }
    return generic_;
  }

  // First ten are polars of singular matrices, the last five of invertible ones.
  std::vector<Case>& polars() {
    if (polars_.empty()) {
      for (int i = 0; i < 15; ++i) {
        const bool singular = i < 10;
        const SymMatQ A = random_integer_matrix_of_rank(3, singular ? 2 : 3, derive_seed(seed_, 5000 + i));
        polars_.push_back(make((singular ? "singular A #" : "invertible A #") + std::to_string(singular ? i : i - 10),
                               polar_of(A), 5000 + i));
      }
    }
    return polars_;
  }

  std::vector<Case>& tangency() {
    if (tangency_.empty()) {
      for (int i = 0; i < 10; ++i) {
        auto t = tangency_subspace(3, 2 + i % 2, derive_seed(seed_, 6000 + i));
        tangency_X0_.push_back(t.X0);
        tangency_.push_back(make("k=" + std::to_string(2 + i % 2) + " #" + std::to_string(i), t.L, 6000 + i));
      }
    }
    return tangency_;
  }
  const std::vector<SymMatQ>& tangency_X0() {
    tangency();
    return tangency_X0_;
  }

  void ensure_report(Case& c) {
    if (c.report || !c.error.empty()) return;
    try {
      c.report = ml_report(c.L, c.seed);
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  Case make(std::string label, LinearSubspace L, std::uint64_t stream) {
    Case c;
    c.label = std::move(label);
    c.L = std::move(L);
    c.seed = derive_seed(seed_, stream);
    return c;
  }

  std::uint64_t seed_;
  std::vector<Case> builtins_, generic_, polars_, tangency_;
  std::vector<SymMatQ> tangency_X0_;
};

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string counts(const MLReport& r) {
  return "ml=" + std::to_string(r.ml_degree) + " rec=" + std::to_string(r.reciprocal_degree);
}

// Report of c, or a recorded failure.
const MLReport* report_of(Context& ctx, Case& c, Check& chk) {
  ctx.ensure_report(c);
  if (!c.report) {
    chk.failures.push_back(c.label + ": " + c.error);
    return nullptr;
  }
  for (const auto& v : c.report->violations) chk.failures.push_back(c.label + ": violation: " + v);
  return &*c.report;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// ---- criteria ----

std::string crit_type_c(Context& ctx, Check& chk) {
  const MLReport* r = report_of(ctx, ctx.builtin("type-c-net"), chk);
  if (r == nullptr) return "no report";
  chk.expect(r->ml_degree == 2, "ml_degree " + std::to_string(r->ml_degree) + " != 2");
  chk.expect(r->reciprocal_degree == 3, "reciprocal_degree " + std::to_string(r->reciprocal_degree) + " != 3");
  chk.expect(!r->is_ml_maximal, "reported ML-maximal");
  chk.expect(r->tangency.witnesses.empty(), "tangency witnesses present");
  std::string wit = "none";
  if (!r->ckn.witness) {
    chk.failures.push_back("no C_{k,n} witness");
  } else {
    const auto& w = *r->ckn.witness;
    const double ang = angular_distance(w.Y, SymMatC::unit(3, 2, 2));
    chk.expect(w.residual <= 1e-7, "witness residual " + fmt(w.residual) + " > 1e-7");
    chk.expect(ang <= 1e-6, "Y not proportional to E33 (angle " + fmt(ang) + ")");
    wit = "residual=" + fmt(w.residual) + " angle(Y,E33)=" + fmt(ang);
  }
  return counts(*r) + " maximal=" + (r->is_ml_maximal ? "yes" : "no") +
         " tangency=" + std::to_string(r->tangency.witnesses.size()) + " ckn " + wit;
}

std::string crit_polar_diag(Context& ctx, Check& chk) {
  const MLReport* r = report_of(ctx, ctx.builtin("diagonal-net-polar"), chk);
  if (r == nullptr) return "no report";
  chk.expect(r->ml_degree == 1, "ml_degree " + std::to_string(r->ml_degree) + " != 1");
  chk.expect(r->reciprocal_degree == 4, "reciprocal_degree " + std::to_string(r->reciprocal_degree) + " != 4");
  return counts(*r);
}

std::string crit_diag(Context& ctx, Check& chk) {
  const MLReport* r = report_of(ctx, ctx.builtin("diagonal-net"), chk);
  if (r == nullptr) return "no report";
  // Decoupled scalar equations 1/k_i = S_ii each have one root.
  const int oracle = 1;
  chk.expect(r->ml_degree == oracle, "ml_degree " + std::to_string(r->ml_degree) + " != 1");
  chk.expect(r->reciprocal_degree == 1, "reciprocal_degree " + std::to_string(r->reciprocal_degree) + " != 1");
  chk.expect(r->is_ml_maximal, "not ML-maximal");
  chk.expect(r->ckn.witness.has_value(), "no C_{k,n} witness");
  return counts(*r) + " maximal=" + (r->is_ml_maximal ? "yes" : "no") + " ckn=" + (r->ckn.witness ? "yes" : "no");
}

std::string crit_genericity(Context& ctx, Check& chk) {
  int ok = 0;
  auto& cases = ctx.generic();
  for (auto& c : cases) {
    const MLReport* r = report_of(ctx, c, chk);
    if (r == nullptr) continue;
    const std::size_t before = chk.failures.size();
    chk.expect(r->is_ml_maximal, c.label + ": " + counts(*r));
    chk.expect(r->tangency.witnesses.empty(), c.label + ": tangency witness present");
    chk.expect(!r->ckn.witness, c.label + ": C_{k,n} witness present");
    if (chk.failures.size() == before) ++ok;
  }
  return std::to_string(ok) + "/" + std::to_string(cases.size()) + " maximal with no tangency and no ckn witness";
}

std::string crit_nm53(Context& ctx, Check& chk) {
  int strict = 0, equal = 0;
  auto& cases = ctx.polars();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const MLReport* r = report_of(ctx, cases[i], chk);
    if (r == nullptr) continue;
    if (i < 10) {
      if (r->ml_degree < r->reciprocal_degree) ++strict;
      else chk.failures.push_back(cases[i].label + ": " + counts(*r) + " (expected ml < rec)");
    } else {
      if (r->ml_degree == r->reciprocal_degree) ++equal;
      else chk.failures.push_back(cases[i].label + ": " + counts(*r) + " (expected ml = rec)");
    }
  }
  return "singular A: " + std::to_string(strict) + "/10 with ml<rec; invertible A: " + std::to_string(equal) +
         "/5 with ml=rec";
}

std::string crit_tangency(Context& ctx, Check& chk) {
  int ok = 0;
  double worst = 0.0;
  auto& cases = ctx.tangency();
  const auto& x0 = ctx.tangency_X0();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const MLReport* r = report_of(ctx, cases[i], chk);
    if (r == nullptr) continue;
    double best = 1.0;
    for (const auto& w : r->tangency.witnesses) best = std::min(best, angular_distance(w, x0[i].cast<Complex>()));
    worst = std::max(worst, best);
    const std::size_t before = chk.failures.size();
    chk.expect(!r->is_ml_maximal, cases[i].label + ": reported ML-maximal (" + counts(*r) + ")");
    chk.expect(best <= 1e-6, cases[i].label + ": no tangency witness within 1e-6 of X0 (best " + fmt(best) + ")");
    if (chk.failures.size() == before) ++ok;
  }
  return std::to_string(ok) + "/" + std::to_string(cases.size()) +
         " non-maximal with X0 recovered; worst angle " + fmt(worst);
}

bool poly_matrix_equals(const EpsPolyMat& m, const std::vector<std::string>& expected,
                        const std::vector<std::string>& names) {
  const int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const QPoly want = parse_polynomial(expected[std::size_t(i * n + j)], names);
      if (!(m(i, j) - want).is_zero()) return false;
    }
  return true;
}

std::string crit_eps_blowup(Context&, Check& chk) {
  const auto basis = example53_basis();
  const SymMatQ X = basis[0];
  const std::vector<SymMatQ> dirs(basis.begin() + 1, basis.end());
  int matched = 0;

  const std::vector<std::string> bn{"e", "b01", "b02", "b1", "b2"};
  auto b = [&](const char* s) { return parse_polynomial(s, bn); };
  const std::vector<QPoly> bs{b("b01"), b("b02"), b("b1"), b("b2")};
  const auto first = eps_adjugate_leading_term(X, dirs, bs);
  const std::vector<std::string> pert1{"1", "e*b02", "e*b01", "e*b02", "e*b1", "e*b2", "e*b01", "e*b2", "-e*b1"};
  const std::vector<std::string> adj1{
      "-e^2*(b1^2+b2^2)",        "e^2*(b02*b1+b01*b2)", "e^2*(b02*b2-b01*b1)",
      "e^2*(b02*b1+b01*b2)",     "-e*(b1+e*b01^2)",     "-e*(b2-e*b01*b02)",
      "e^2*(b02*b2-b01*b1)",     "-e*(b2-e*b01*b02)",   "e*(b1-e*b02^2)"};
  const std::vector<std::string> z1{"0", "0", "0", "0", "-b1", "-b2", "0", "-b2", "b1"};
  chk.expect(poly_matrix_equals(perturbation(X, dirs, bs), pert1, bn), "first perturbation differs");
  chk.expect(poly_matrix_equals(first.adjugate, adj1, bn), "first adjugate differs");
  chk.expect(first.d == 1, "first leading degree " + std::to_string(first.d) + " != 1");
  chk.expect(poly_matrix_equals(first.Z, z1, bn), "first leading term differs");
  matched += int(chk.failures.empty());

  const std::vector<std::string> cn{"e", "c01", "c02", "c1", "c2"};
  auto c = [&](const char* s) { return parse_polynomial(s, cn); };
  const std::vector<QPoly> cs{c("c01"), c("c02*e"), c("c1*e"), c("c2*e")};
  const auto second = eps_adjugate_leading_term(X, dirs, cs);
  const std::vector<std::string> pert2{"1",     "e^2*c02", "e*c01",  "e^2*c02", "e^2*c1",
                                       "e^2*c2", "e*c01",  "e^2*c2", "-e^2*c1"};
  const std::vector<std::string> adj2{
      "-e^4*(c1^2+c2^2)",         "e^3*(e*c02*c1+c01*c2)", "e^3*(e*c02*c2-c01*c1)",
      "e^3*(e*c02*c1+c01*c2)",    "-e^2*(c1+c01^2)",       "-e^2*(c2-e*c01*c02)",
      "e^3*(e*c02*c2-c01*c1)",    "-e^2*(c2-e*c01*c02)",   "e^2*(c1-e^2*c02^2)"};
  const std::vector<std::string> z2{"0", "0", "0", "0", "-(c1+c01^2)", "-c2", "0", "-c2", "c1"};
  const std::size_t before = chk.failures.size();
  chk.expect(poly_matrix_equals(perturbation(X, dirs, cs), pert2, cn), "second perturbation differs");
  chk.expect(poly_matrix_equals(second.adjugate, adj2, cn), "second adjugate differs");
  chk.expect(second.d == 2, "second leading degree " + std::to_string(second.d) + " != 2");
  chk.expect(poly_matrix_equals(second.Z, z2, cn), "second leading term differs");

  const auto zc = constant_matrix(substitute_params(second.Z, {Rational(1), Rational(0), Rational(1), Rational(0)}));
  std::string inv_text = "n/a";
  if (!zc) {
    chk.failures.push_back("Z at c=(1,0,1,0) is not constant");
  } else {
    SymMatQ block(2);
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) block.set(i, j, (*zc)(i + 1, j + 1));
    SymMatQ want(2);
    want.set(0, 0, Rational(-2));
    want.set(1, 1, Rational(1));
    chk.expect(block == want, "lower-right block of Z at c=(1,0,1,0) differs from [[-2,0],[0,1]]");
    const Rational det = determinant(block);
    if (is_exact_zero(det)) {
      chk.failures.push_back("lower-right block of Z at c=(1,0,1,0) is singular");
    } else {
      SymMatQ inv = adjugate(block) * (Rational(1) / det);
      SymMatQ want_inv(2);
      want_inv.set(0, 0, Rational(-1, 2));
      want_inv.set(1, 1, Rational(1));
      chk.expect(inv == want_inv, "inverse differs from [[-1/2,0],[0,1]]");
      inv_text = "[[" + to_string(inv(0, 0)) + "," + to_string(inv(0, 1)) + "],[" + to_string(inv(1, 0)) + "," +
                 to_string(inv(1, 1)) + "]]";
    }
  }
  matched += int(chk.failures.size() == before);
  return std::to_string(matched) + "/2 perturbations reproduced exactly; d=(" + std::to_string(first.d) + "," +
         std::to_string(second.d) + "); inverse of Z block " + inv_text;
}

std::string crit_badness(Context& ctx, Check& chk) {
  std::ostringstream out;
  {
    const auto cert = pataki_certificate(builtin_subspace("nonclosed-2x2"), ctx.seed());
    chk.expect(cert.verdict == Verdict::bad, "nonclosed-2x2 verdict " + to_string(cert.verdict));
    bool prop = false;
    if (cert.violating_exact) {
      const auto& v = *cert.violating_exact;
      prop = is_exact_zero(v(0, 0)) && is_exact_zero(v(1, 1)) && !is_exact_zero(v(0, 1));
    }
    chk.expect(prop, "nonclosed-2x2 violating matrix is not a multiple of E12+E21");
    out << "nonclosed-2x2 " << to_string(cert.verdict) << " (s=" << cert.s_L << "," << cert.s_Lperp << ")";
  }
  int generic_ok = 0;
  auto& gen = ctx.generic();
  for (auto& c : gen) {
    const auto cert = pataki_certificate(c.L, c.seed);
    const MLReport* r = report_of(ctx, c, chk);
    const std::size_t before = chk.failures.size();
    chk.expect(cert.verdict == Verdict::not_bad, c.label + ": verdict " + to_string(cert.verdict));
    if (r != nullptr) chk.expect(r->is_ml_maximal, c.label + ": not_bad but not ML-maximal");
    if (chk.failures.size() == before) ++generic_ok;
  }
  out << "; generic not_bad " << generic_ok << "/" << gen.size();
  int tang_ok = 0, in_range = 0;
  auto& tan = ctx.tangency();
  for (auto& c : tan) {
    const int n = c.L.n(), k = c.L.k(), s = n - 1;
    const bool pataki = (n - s + 1) * (n - s) / 2 < k && k <= n * (n + 1) / 2 - s * (s + 1) / 2;
    if (!pataki) continue;
    ++in_range;
    const auto cert = pataki_certificate(c.L, c.seed);
    const MLReport* r = report_of(ctx, c, chk);
    const std::size_t before = chk.failures.size();
    chk.expect(cert.verdict == Verdict::bad, "tangency " + c.label + ": verdict " + to_string(cert.verdict));
    if (r != nullptr) chk.expect(!r->is_ml_maximal, "tangency " + c.label + ": bad but ML-maximal");
    if (chk.failures.size() == before) ++tang_ok;
  }
  chk.expect(in_range == int(tan.size()), "only " + std::to_string(in_range) + " tangency subspaces in the Pataki range");
  out << "; tangency bad " << tang_ok << "/" << in_range;
  for (const char* name : {"type-c-net", "diagonal-net"}) {
    Case& c = ctx.builtin(name);
    const auto cert = pataki_certificate(c.L, c.seed);
    const MLReport* r = report_of(ctx, c, chk);
    if (r != nullptr)
      chk.expect((cert.verdict == Verdict::bad) == !r->is_ml_maximal,
                 std::string(name) + ": verdict " + to_string(cert.verdict) + " but maximal=" +
                     (r->is_ml_maximal ? "yes" : "no"));
    out << "; " << name << " " << to_string(cert.verdict);
  }
  return out.str();
}

std::string crit_properties(Context& ctx, Check& chk) {
  std::ostringstream out;
  Rng rng(derive_seed(ctx.seed(), 900));

  // Adjugate identity and rank behaviour.
  int adj_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    SymMatQ m(n);
    if (i % 3 == 2 && n > 1) {
      m = random_integer_matrix_of_rank(n, n - 1 - (i % 2) * (n > 2 ? 1 : 0), derive_seed(ctx.seed(), 910 + i));
    } else {
      for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) m.set(p, q, Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5)));
    }
    const SymMatQ a = adjugate(m);
    const Rational det = determinant(m);
    Matrix<Rational> want = Matrix<Rational>::identity(n);
    for (int p = 0; p < n; ++p) want(p, p) = det;
    bool ok = m.dense() * a.dense() == want;
    const int r = exact_rank(m.dense());
    if (n > 1 && r == n - 1) ok = ok && exact_rank(a.dense()) == 1;
    if (n > 1 && r <= n - 2) ok = ok && exact_rank(a.dense()) == 0;
    if (ok) ++adj_ok;
    else chk.failures.push_back("exact adjugate identity failed at sample " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    SymMatR m(n);
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) m.set(p, q, rng.normal());
    const SymMatR a = adjugate(m);
    const double det = determinant(m);
    const Eigen::MatrixXd err = to_eigen(m) * to_eigen(a) - det * Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(frobenius_norm(m) * frobenius_norm(a), std::abs(det));
    if (err.norm() <= 1e-10 * scale) ++adj_ok;
    else chk.failures.push_back("float adjugate identity failed at sample " + std::to_string(i));
  }
  out << "adjugate " << adj_ok << "/200";

  int ann_ok = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3, N = n * (n + 1) / 2;
    const int k = 1 + int(rng.uniform_int(0, N - 1));
    const auto L = sample_generic_subspace(n, k, derive_seed(ctx.seed(), 950 + i));
    const auto P = annihilator(L);
    bool ok = L.k() + P.k() == N && same_span(annihilator(P), L);
    for (const auto& a : L.exact_basis())
      for (const auto& b : P.exact_basis()) ok = ok && is_exact_zero(trace_pairing(a, b));
    if (ok) ++ann_ok;
    else chk.failures.push_back("annihilator identities failed at sample " + std::to_string(i));
  }
  out << "; annihilator " << ann_ok << "/50";

  // Witness duality over every report in the corpus.
  std::vector<Case*> all;
  for (auto* group : {&ctx.builtins(), &ctx.generic(), &ctx.polars(), &ctx.tangency()})
    for (auto& c : *group) all.push_back(&c);
  int dual_checked = 0, dual_ok = 0;
  for (Case* c : all) {
    const MLReport* r = report_of(ctx, *c, chk);
    if (r == nullptr || !r->ckn.witness) continue;
    ++dual_checked;
    const auto P = annihilator(c->L);
    if (verify_ckn(P, r->ckn.witness->Y, r->ckn.witness->X, 1e-7)) ++dual_ok;
    else chk.failures.push_back(c->label + ": swapped witness fails for the annihilator");
  }
  // Existence on both sides for the builtins and the generic sweep.
  int exist_checked = 0, exist_ok = 0;
  for (auto* group : {&ctx.builtins(), &ctx.generic()})
    for (auto& c : *group) {
      if (!c.report) continue;
      const LinearSubspace P = annihilator(c.L);
      if (P.k() == 0) continue;
      ++exist_checked;
      try {
        const CknResult dual = ckn_witness(P, derive_seed(c.seed, 77));
        if (dual.witness.has_value() == c.report->ckn.witness.has_value()) ++exist_ok;
        else chk.failures.push_back(c.label + ": witness existence differs for the annihilator");
      } catch (const std::exception& e) {
        chk.failures.push_back(c.label + ": annihilator ckn failed: " + e.what());
      }
    }
  out << "; duality " << dual_ok << "/" << dual_checked << " swapped, " << exist_ok << "/" << exist_checked
      << " existence";

  int stable = 0, stable_checked = 0;
  for (Case* c : all) {
    if (!c->report) continue;
    ++stable_checked;
    bool ok = true;
    for (std::uint64_t extra = 1; extra <= 2; ++extra) {
      try {
        const std::uint64_t s = derive_seed(c->seed, 1000 + extra);
        ok = ok && ml_degree(c->L, derive_seed(s, 1)).count == c->report->ml_degree &&
             reciprocal_degree(c->L, derive_seed(s, 2)).count == c->report->reciprocal_degree;
      } catch (const std::exception& e) {
        ok = false;
      }
    }
    if (ok) ++stable;
    else chk.failures.push_back(c->label + ": counts differ across seeds");
  }
  out << "; seed-stable " << stable << "/" << stable_checked << " (3 seeds)";
  return out.str();
}

std::string crit_n2(Context& ctx, Check& chk) {
  int ok = 0, total = 0;
  for (int k = 1; k <= 3; ++k)
    for (int i = 0; i < 3; ++i) {
      ++total;
      const auto L = sample_generic_subspace(2, k, derive_seed(ctx.seed(), 8000 + 10 * k + i));
      try {
        const auto r = ml_report(L, derive_seed(ctx.seed(), 8100 + 10 * k + i));
        if (r.ml_degree == 1 && r.reciprocal_degree == 1) ++ok;
        else chk.failures.push_back("n=2 k=" + std::to_string(k) + " #" + std::to_string(i) + ": " + counts(r));
      } catch (const std::exception& e) {
        chk.failures.push_back("n=2 k=" + std::to_string(k) + ": " + e.what());
      }
    }
  return std::to_string(ok) + "/" + std::to_string(total) + " generic n=2 subspaces with ml=rec=1";
}

using CritFn = std::function<std::string(Context&, Check&)>;

std::map<std::string, CritFn> runners() {
  return {{"type-c-net", crit_type_c},      {"polar-diagonal-net", crit_polar_diag},
          {"diagonal-net", crit_diag},      {"genericity", crit_genericity},
          {"nm53", crit_nm53},              {"tangency", crit_tangency},
          {"eps-blowup", crit_eps_blowup},  {"badness", crit_badness},
          {"properties", crit_properties},  {"n2-sanity", crit_n2}};
}

}  // namespace

std::vector<CriterionInfo> criteria() {
  return {
      {1, "type-c-net", "Type C net: ml 2, rec 3, ckn witness Y ~ E33, no tangency", 30},
      {2, "polar-diagonal-net", "polar of the diagonal net: ml 1, rec 4", 30},
      {3, "diagonal-net", "diagonal net: ml = rec = 1, maximal, ckn witness", 10},
      {4, "genericity", "generic subspaces are ML-maximal", 300},
      {5, "nm53", "polars of singular A are non-maximal", 120},
      {6, "tangency", "constructed tangencies are recovered", 120},
      {7, "eps-blowup", "eps-adjugate leading terms of the blow-up example", 5},
      {8, "badness", "Pataki verdicts and cross-check with ML-maximality", 120},
      {9, "properties", "adjugate, annihilator, duality and seed-stability suites", 300},
      {9, "n2-sanity", "generic n = 2 subspaces have degree 1", 60},
  };
}

std::vector<CriterionResult> run_repro(const ReproOptions& opts) {
  const auto all = criteria();
  for (const auto& id : opts.only) {
    bool known = false;
    for (const auto& c : all) known = known || c.id == id;
    if (!known) throw std::invalid_argument("unknown criterion \"" + id + "\"");
  }
  const auto fns = runners();
  Context ctx(opts.seed);
  std::vector<CriterionResult> results;
  for (const auto& info : all) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), info.id) == opts.only.end()) continue;
    CriterionResult res;
    res.info = info;
    Check chk;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      res.measured = fns.at(info.id)(ctx, chk);
    } catch (const std::exception& e) {
      chk.failures.push_back(std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.seconds > info.budget_seconds)
      chk.failures.push_back("runtime " + fmt(res.seconds) + " s exceeds budget " + fmt(info.budget_seconds) + " s");
    res.failures = std::move(chk.failures);
    res.passed = res.failures.empty();
    if (opts.progress != nullptr) *opts.progress << summary_line(res) << std::endl;
    results.push_back(std::move(res));
  }
  return results;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << r.info.number << "] " << r.info.id << "  " << r.measured << "  ("
     << fmt(r.seconds) << " s, budget " << fmt(r.info.budget_seconds) << " s)";
  for (const auto& f : r.failures) os << "\n      - " << f;
  return os.str();
}

Json to_json(const CriterionResult& r) {
  Json j;
  j["criterion"] = r.info.number;
  j["id"] = r.info.id;
  j["title"] = r.info.title;
  j["passed"] = r.passed;
  j["measured"] = r.measured;
  j["budget_seconds"] = r.info.budget_seconds;
  j["failures"] = r.failures;
  return j;
}

}  // namespace mlspectra
