#include "mlspectra/polysolve.hpp"

#include "mlspectra/errors.hpp"
#include "mlspectra/parallel.hpp"
#include "mlspectra/random.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <numbers>

namespace mlspectra {

std::uint64_t PolySystem::bezout() const {
  std::uint64_t b = 1;
  for (const auto& f : equations) b *= static_cast<std::uint64_t>(std::max(0, f.total_degree()));
  return b;
}

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::diverged: return "diverged";
    case PathStatus::at_infinity: return "at_infinity";
    case PathStatus::singular_endpoint: return "singular_endpoint";
  }
  return "unknown";
}

namespace {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

constexpr double kInfinityRatio = 1e-8;
constexpr double kCorrectorTol = 1e-7;
constexpr double kStallStart = 0.95;

// One equation in homogeneous coordinates (slot 0 is the homogenizing
// variable), with terms stored flat for fast evaluation.
struct CompiledEq {
  int degree = 0;
  int width = 0;
  std::vector<Complex> coeff;
  std::vector<int> exps;

  static CompiledEq homogenized(const CPoly& f, int m) {
    CompiledEq q;
    q.degree = f.total_degree();
    q.width = m + 1;
    double scale = 0.0;
    for (const auto& [e, c] : f.terms()) scale = std::max(scale, std::abs(c));
    for (const auto& [e, c] : f.terms()) {
      int s = 0;
      for (int x : e) s += x;
      q.coeff.push_back(c / scale);
      q.exps.push_back(q.degree - s);
      for (int v = 0; v < m; ++v) q.exps.push_back(v < int(e.size()) ? e[v] : 0);
    }
    return q;
  }

  // Value and gradient; pw[v][p] = z_v^p.
  void eval(const std::vector<std::vector<Complex>>& pw, Complex& value, Complex* grad) const {
    value = 0;
    for (int v = 0; v < width; ++v) grad[v] = 0;
    std::vector<Complex> prefix(width + 1), suffix(width + 1);
    for (std::size_t t = 0; t < coeff.size(); ++t) {
      const int* e = &exps[t * width];
      prefix[0] = 1;
      for (int v = 0; v < width; ++v) prefix[v + 1] = prefix[v] * pw[v][e[v]];
      suffix[width] = 1;
      for (int v = width - 1; v >= 0; --v) suffix[v] = suffix[v + 1] * pw[v][e[v]];
      value += coeff[t] * prefix[width];
      for (int v = 0; v < width; ++v) {
        if (e[v] == 0) continue;
        grad[v] += coeff[t] * double(e[v]) * prefix[v] * pw[v][e[v] - 1] * suffix[v + 1];
      }
    }
  }
};

class Homotopy {
 public:
  Homotopy(const PolySystem& sys, Rng& rng) : m_(sys.num_vars) {
    for (const auto& f : sys.equations) {
      eqs_.push_back(CompiledEq::homogenized(f, m_));
      max_degree_ = std::max(max_degree_, eqs_.back().degree);
    }
    gamma_ = rng.unit_complex();
    for (int i = 0; i < m_; ++i) gamma_i_.push_back(rng.unit_complex());
    patch_ = VecC(m_ + 1);
    for (int v = 0; v <= m_; ++v) patch_(v) = rng.gaussian_complex();
  }

  int dim() const { return m_ + 1; }

  void evaluate(const VecC& z, double t, VecC& H, MatC& Hz, VecC& Ht) const {
    const int w = m_ + 1;
    std::vector<std::vector<Complex>> pw(w, std::vector<Complex>(max_degree_ + 1));
    for (int v = 0; v < w; ++v) {
      pw[v][0] = 1;
      for (int p = 1; p <= max_degree_; ++p) pw[v][p] = pw[v][p - 1] * z(v);
    }
    H.resize(w);
    Hz.resize(w, w);
    Ht.resize(w);
    std::vector<Complex> grad(w);
    for (int i = 0; i < m_; ++i) {
      const CompiledEq& q = eqs_[i];
      Complex f;
      q.eval(pw, f, grad.data());
      const int d = q.degree;
      const Complex gi = gamma_i_[i];
      const Complex g = pw[i + 1][d] - gi * pw[0][d];
      const Complex s = (1.0 - t) * gamma_;
      H(i) = s * g + t * f;
      Ht(i) = f - gamma_ * g;
      for (int v = 0; v < w; ++v) Hz(i, v) = t * grad[v];
      Hz(i, i + 1) += s * double(d) * pw[i + 1][d - 1];
      Hz(i, 0) -= s * gi * double(d) * pw[0][d - 1];
    }
    H(m_) = (patch_.transpose() * z)(0) - 1.0;
    for (int v = 0; v < w; ++v) Hz(m_, v) = patch_(v);
    Ht(m_) = 0;
  }

  // Start point for the multi-index encoded in path_id.
  VecC start_point(std::uint64_t path_id) const {
    VecC z(m_ + 1);
    z(0) = 1;
    for (int i = 0; i < m_; ++i) {
      const int d = eqs_[i].degree;
      const auto j = static_cast<int>(path_id % std::uint64_t(d));
      path_id /= std::uint64_t(d);
      const double arg = (std::arg(gamma_i_[i]) + 2.0 * std::numbers::pi * j) / d;
      z(i + 1) = std::polar(1.0, arg);
    }
    return z / (patch_.transpose() * z)(0);
  }

 private:
  int m_;
  int max_degree_ = 1;
  std::vector<CompiledEq> eqs_;
  Complex gamma_;
  std::vector<Complex> gamma_i_;
  VecC patch_;
};

struct PathEnd {
  VecC z;
  double t = 0.0;
  int steps = 0;
  int rejected = 0;
  bool reached = false;
  bool infinite = false;
};

bool finite(const VecC& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

bool velocity(const Homotopy& h, const VecC& z, double t, VecC& out) {
  VecC H, Ht;
  MatC Hz;
  h.evaluate(z, t, H, Hz, Ht);
  out = Hz.partialPivLu().solve(-Ht);
  return finite(out);
}

bool correct(const Homotopy& h, VecC& z, double t) {
  VecC H, Ht;
  MatC Hz;
  double first = -1.0;
  for (int it = 0; it < 3; ++it) {
    h.evaluate(z, t, H, Hz, Ht);
    const VecC dz = Hz.partialPivLu().solve(-H);
    if (!finite(dz)) return false;
    z += dz;
    const double step = dz.norm();
    const double scale = z.norm();
    if (first < 0) {
      first = step;
      if (step > 1e-3 * scale) return false;
    }
    if (step <= kCorrectorTol * scale) return true;
  }
  return false;
}

PathEnd track(const Homotopy& h, std::uint64_t path_id, int max_steps) {
  PathEnd out;
  VecC z = h.start_point(path_id);
  double t = 0.0;
  double step = 0.02;
  const double hmax = 0.1;
  const double hmin = 1e-14;
  int successes = 0;
  VecC k1, k2, k3, k4;
  while (t < 1.0) {
    if (out.steps + out.rejected >= max_steps) break;
    step = std::min(step, 1.0 - t);
    bool ok = velocity(h, z, t, k1) && velocity(h, z + 0.5 * step * k1, t + 0.5 * step, k2) &&
              velocity(h, z + 0.5 * step * k2, t + 0.5 * step, k3) &&
              velocity(h, z + step * k3, t + step, k4);
    VecC next;
    const double t_next = (1.0 - t - step) < 1e-15 ? 1.0 : t + step;
    if (ok) {
      next = z + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ok = correct(h, next, t_next);
    }
    if (ok) {
      z = next;
      t = t_next;
      ++out.steps;
      if (++successes >= 5) {
        step = std::min(2.0 * step, hmax);
        successes = 0;
      }
      if (std::abs(z(0)) < kInfinityRatio * z.norm()) {
        out.infinite = true;
        break;
      }
    } else {
      ++out.rejected;
      successes = 0;
      step *= 0.5;
      if (step < hmin) break;
    }
  }
  out.z = z;
  out.t = t;
  out.reached = t >= 1.0;
  if (!out.infinite && std::abs(z(0)) < kInfinityRatio * z.norm()) out.infinite = true;
  return out;
}

struct AffineEval {
  std::vector<Complex> value;
  std::vector<double> magnitude;
  MatC jac;
};

AffineEval affine_eval(const PolySystem& sys, std::span<const Complex> x) {
  const int m = sys.num_vars;
  AffineEval out{std::vector<Complex>(sys.equations.size()), std::vector<double>(sys.equations.size()),
                 MatC::Zero(Eigen::Index(sys.equations.size()), m)};
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    for (const auto& [e, c] : sys.equations[i].terms()) {
      Complex mono = 1;
      for (int v = 0; v < m; ++v)
        for (int p = 0; p < e[v]; ++p) mono *= x[v];
      out.value[i] += c * mono;
      out.magnitude[i] += std::abs(c * mono);
      for (int v = 0; v < m; ++v) {
        if (e[v] == 0) continue;
        Complex d = c * double(e[v]);
        for (int u = 0; u < m; ++u) {
          const int pwr = u == v ? e[u] - 1 : e[u];
          for (int p = 0; p < pwr; ++p) d *= x[u];
        }
        out.jac(Eigen::Index(i), v) += d;
      }
    }
  }
  return out;
}

double residual_of(const AffineEval& ev) {
  double r = 0.0;
  for (std::size_t i = 0; i < ev.value.size(); ++i) {
    const double denom = ev.magnitude[i] > 0 ? ev.magnitude[i] : 1.0;
    r = std::max(r, std::abs(ev.value[i]) / denom);
  }
  return r;
}

double vec_norm(std::span<const Complex> x) {
  double s = 0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

double relative_residual(const PolySystem& sys, std::span<const Complex> x) {
  return residual_of(affine_eval(sys, x));
}

std::vector<Complex> newton_refine(const PolySystem& sys, std::vector<Complex> x, int iterations,
                                   TrackedSolution* out) {
  const int m = sys.num_vars;
  double prev = -1.0;
  double contraction = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const AffineEval ev = affine_eval(sys, x);
    VecC rhs(m);
    for (int i = 0; i < m; ++i) rhs(i) = -ev.value[i];
    const VecC dx = ev.jac.partialPivLu().solve(rhs);
    if (!finite(dx)) break;
    for (int v = 0; v < m; ++v) x[v] += dx(v);
    const double step = dx.norm();
    const double noise = 1e-8 * (1.0 + vec_norm(x));
    if (prev > noise) contraction = step / prev;
    prev = step;
    if (step <= 1e-7 * noise) break;
  }
  if (out != nullptr) {
    out->residual = relative_residual(sys, x);
    out->contraction = contraction;
  }
  return x;
}

std::vector<Complex> gauss_newton(const PolySystem& sys, std::vector<Complex> x, int iterations) {
  const int m = sys.num_vars;
  for (int it = 0; it < iterations; ++it) {
    const AffineEval ev = affine_eval(sys, x);
    VecC rhs(Eigen::Index(ev.value.size()));
    for (std::size_t i = 0; i < ev.value.size(); ++i) rhs(Eigen::Index(i)) = -ev.value[i];
    const VecC dx = ev.jac.completeOrthogonalDecomposition().solve(rhs);
    if (!finite(dx)) break;
    for (int v = 0; v < m; ++v) x[v] += dx(v);
    if (dx.norm() <= 1e-15 * (1.0 + vec_norm(x))) break;
  }
  return x;
}

SolutionSet solve_total_degree(const PolySystem& sys, const SolveOptions& opts) {
  if (int(sys.equations.size()) != sys.num_vars)
    throw std::invalid_argument("solve_total_degree: system is not square (" +
                                std::to_string(sys.equations.size()) + " equations, " +
                                std::to_string(sys.num_vars) + " variables)");
  for (const auto& f : sys.equations)
    if (f.total_degree() < 1) throw std::invalid_argument("solve_total_degree: equation of degree < 1");

  SolutionSet result;
  result.bezout_bound = sys.bezout();
  result.seeds.push_back(opts.seed);
  Rng rng(opts.seed);
  const Homotopy hom(sys, rng);
  const std::size_t paths = result.bezout_bound;
  std::vector<TrackedSolution> ends(paths);
  std::vector<PathEnd> raw(paths);
  const int m = sys.num_vars;

  parallel_for(paths, [&](std::size_t p) {
    PathEnd pe = track(hom, p, opts.max_steps);
    TrackedSolution& s = ends[p];
    s.path_id = static_cast<int>(p);
    s.steps = pe.steps;
    if (pe.infinite) {
      s.status = PathStatus::at_infinity;
    } else if (!pe.reached && pe.t < kStallStart) {
      s.status = PathStatus::diverged;
    } else {
      std::vector<Complex> x(m);
      for (int v = 0; v < m; ++v) x[v] = pe.z(v + 1) / pe.z(0);
      TrackedSolution probe;
      x = newton_refine(sys, std::move(x), 12, &probe);
      s.point = x;
      s.residual = probe.residual;
      s.contraction = probe.contraction;
      const bool near_end = pe.reached || 1.0 - pe.t <= 1e-6;
      bool ok = near_end && probe.residual <= opts.residual_tol && probe.contraction < 0.5 &&
                std::isfinite(vec_norm(x)) && vec_norm(x) < 1.0 / kInfinityRatio;
      if (ok) {
        const AffineEval ev = affine_eval(sys, x);
        Eigen::JacobiSVD<MatC> svd(ev.jac);
        const auto& sv = svd.singularValues();
        ok = sv(0) > 0 && sv(sv.size() - 1) > 1e-10 * sv(0);
      }
      if (!std::isfinite(vec_norm(x)) || vec_norm(x) >= 1.0 / kInfinityRatio) {
        s.status = PathStatus::at_infinity;
      } else {
        s.status = ok ? PathStatus::converged : PathStatus::singular_endpoint;
      }
    }
    raw[p] = std::move(pe);
  });

  for (const auto& s : ends) {
    ++result.stats.total;
    switch (s.status) {
      case PathStatus::converged: ++result.stats.converged; break;
      case PathStatus::diverged: ++result.stats.diverged; break;
      case PathStatus::at_infinity: ++result.stats.at_infinity; break;
      case PathStatus::singular_endpoint: ++result.stats.singular_endpoint; break;
    }
  }

  if (opts.trace != nullptr) {
    for (std::size_t p = 0; p < paths; ++p) {
      nlohmann::ordered_json j;
      j["path_id"] = p;
      j["status"] = to_string(ends[p].status);
      j["steps"] = raw[p].steps;
      j["rejected"] = raw[p].rejected;
      j["t_end"] = raw[p].t;
      j["residual"] = ends[p].residual;
      j["contraction"] = ends[p].contraction;
      *opts.trace << j.dump() << '\n';
    }
  }

  if (result.stats.total > 0 && 5 * result.stats.diverged > result.stats.total)
    throw SolverError("solve_total_degree: " + std::to_string(result.stats.diverged) + " of " +
                      std::to_string(result.stats.total) + " paths failed");
  result.suspected_positive_dimensional = 10 * result.stats.singular_endpoint > 3 * result.stats.total;

  for (const auto& s : ends) {
    if (s.status != PathStatus::converged) continue;
    bool merged = false;
    for (auto& rep : result.solutions) {
      double d = 0;
      for (int v = 0; v < m; ++v) d += std::norm(rep.point[v] - s.point[v]);
      if (std::sqrt(d) <= opts.dedup_tol * std::max(1.0, vec_norm(rep.point))) {
        ++rep.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) result.solutions.push_back(s);
  }
  result.endpoints = std::move(ends);
  return result;
}

SolutionSet dedup_projective(const std::vector<std::vector<Complex>>& points, double tol) {
  SolutionSet out;
  std::vector<std::vector<Complex>> units;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double nrm = vec_norm(points[i]);
    if (nrm == 0.0) throw std::invalid_argument("dedup_projective: zero vector");
    std::vector<Complex> u(points[i]);
    for (auto& c : u) c /= nrm;
    bool merged = false;
    for (std::size_t r = 0; r < units.size(); ++r) {
      Complex ip = 0;
      for (std::size_t c = 0; c < u.size(); ++c) ip += std::conj(units[r][c]) * u[c];
      const double cos2 = std::min(1.0, std::norm(ip));
      if (std::sqrt(1.0 - cos2) <= tol) {
        ++out.solutions[r].multiplicity;
        merged = true;
        break;
      }
    }
    if (merged) continue;
    TrackedSolution s;
    s.point = points[i];
    s.status = PathStatus::converged;
    s.path_id = static_cast<int>(i);
    out.solutions.push_back(std::move(s));
    units.push_back(std::move(u));
  }
  return out;
}

}  // namespace mlspectra
