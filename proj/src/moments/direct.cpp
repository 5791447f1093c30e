#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "rsm/moments.hpp"

namespace rsm {

namespace {

struct Rule {
  std::vector<double> nodes, weights;
};

Rule gauss_rule(double a, double b, int panels) {
  Rule rule;
  const auto& x = gl16_nodes();
  const auto& w = gl16_weights();
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + width * (p + 0.5), h = 0.5 * width;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (double sgn : {-1.0, 1.0}) {
        rule.nodes.push_back(c + sgn * h * x[i]);
        rule.weights.push_back(h * w[i]);
      }
  }
  return rule;
}

// Runs fn(i) for i < n on up to `threads` workers; each item writes its own slot.
template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Integrand values (and error bounds) at each t node for one weight k.
struct NodeValues {
  std::vector<double> value, error;
  std::size_t terms = 0;
};

struct Integral {
  double value = 0.0, error = 0.0;
  int panels = 0;
  std::size_t terms = 0;
};

// int W1(t/T) sum_k W2((k-1)/K) f_k(t) dt with panel doubling until two
// consecutive rules agree.
template <class PerWeight>
Integral t_integral(const MomentConfig& cfg, const std::vector<int>& weights, PerWeight&& per_weight) {
  const double a = cfg.T * cfg.W1.lo(), b = cfg.T * cfg.W1.hi();
  auto evaluate = [&](int panels, double& err, std::size_t& terms) {
    const Rule rule = gauss_rule(a, b, panels);
    std::vector<NodeValues> parts(weights.size());
    parallel_for(weights.size(), cfg.threads, [&](std::size_t i) { parts[i] = per_weight(weights[i], rule.nodes); });
    CompensatedSum<double> acc;
    err = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const double w2 = cfg.family_weight > 0 ? 1.0 : cfg.W2((weights[i] - 1.0) / cfg.K);
      terms += parts[i].terms;
      for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        const double w = rule.weights[n] * cfg.W1(rule.nodes[n] / cfg.T) * w2;
        acc.add(w * parts[i].value[n]);
        err += std::abs(w) * parts[i].error[n];
      }
    }
    return acc.value();
  };
  Integral out;
  double err = 0.0;
  double prev = evaluate(cfg.t_panels, err, out.terms);
  for (int panels = 2 * cfg.t_panels;; panels *= 2) {
    double err2 = 0.0;
    const double cur = evaluate(panels, err2, out.terms);
    const double gap = std::abs(cur - prev);
    if (gap <= std::max(cfg.ctx.target_tol, 1e-6 * std::abs(cur))) {
      out.value = cur;
      out.error = err2 + gap;
      out.panels = panels;
      return out;
    }
    if (panels >= cfg.max_t_panels)
      throw Error(ErrorKind::NonConvergence, "moments", "t-quadrature did not settle by " + std::to_string(panels) + " panels");
    prev = cur;
  }
}

void check_budget(const MomentConfig& cfg, std::size_t terms) {
  if (terms > cfg.term_budget)
    throw Error(ErrorKind::BudgetExceeded, "moments",
                "AFE term count " + std::to_string(terms) + " exceeds budget " + std::to_string(cfg.term_budget));
}

}  // namespace

std::vector<int> MomentConfig::weights() const {
  if (family_weight > 0) return {family_weight};
  std::vector<int> out;
  for (int k = 2; static_cast<double>(k - 1) < K * W2.hi(); k += 2)
    if (W2((k - 1.0) / K) > 0.0) out.push_back(k);
  return out;
}

std::vector<std::string> MomentConfig::validate() const {
  auto fail = [](ErrorKind kind, const std::string& msg) { throw Error(kind, "moments", msg); };
  if (!(T >= 4.0 && K >= 4.0)) fail(ErrorKind::InvalidArgument, "T and K must be at least 4");
  for (const SmoothWindow* W : {&W1, &W2})
    if (W->lo() < 1.0 || W->hi() > 2.0) fail(ErrorKind::InvalidArgument, "windows must be supported in [1, 2]");
  if (N < 1) fail(ErrorKind::InvalidArgument, "N must be positive");
  if (N > 1 && primitive_even_characters(N).empty())
    fail(ErrorKind::InvalidArgument, "no even primitive character modulo " + std::to_string(N));
  if (chi.modulus() != N || !is_even(chi) || !is_primitive(chi))
    fail(ErrorKind::InvalidArgument, "chi must be an even primitive character modulo N");
  if (N > 1) fail(ErrorKind::InvalidArgument, "families of level N > 1 need external eigenform data");
  if (M < 1) fail(ErrorKind::InvalidArgument, "M must be positive");
  if (t_panels < 1 || max_t_panels < t_panels) fail(ErrorKind::InvalidArgument, "bad t-panel settings");
  if (threads < 1) fail(ErrorKind::InvalidArgument, "threads must be positive");
  if (family_weight < 0 || family_weight % 2 != 0) fail(ErrorKind::InvalidArgument, "family weight must be even");
  ctx.validate();
  const auto ks = weights();
  if (ks.empty()) fail(ErrorKind::InvalidArgument, "no even weight in the W2 window");
  if (g.kind() == FixedForm::Kind::holomorphic && g.weight() >= ks.front())
    fail(ErrorKind::InvalidFormCombination,
         "holomorphic g of weight " + std::to_string(g.weight()) + " collides with the family weights");
  std::vector<std::string> warnings;
  if (T < std::pow(K, 0.75) || T > std::pow(K, 1.25)) {
    std::ostringstream w;
    w << "T = " << T << " is outside [K^{3/4}, K^{5/4}] for K = " << K;
    warnings.push_back(w.str());
  }
  return warnings;
}

Estimate<double> diagonal_direct(const MomentConfig& cfg) {
  cfg.validate();
  const auto weights = cfg.weights();
  auto per_weight = [&](int k, const std::vector<double>& ts) {
    NodeValues out;
    for (double t : ts) {
      const AfeData data = afe_data_rs_shape(k, cfg.g, cfg.chi, t);
      const GWeight G = gweight_for(data, cfg.h, cfg.M);
      const double sqrtC = std::sqrt(data.C);
      // The diagonal only sees n = d1 d2 m with n^2 inside the AFE range.
      const auto n_max = static_cast<std::size_t>(std::sqrt(static_cast<double>(afe_cutoff(data, G, cfg.ctx)))) + 1;
      const auto lg = cfg.g.lambda_table(n_max);
      std::vector<cplx> c(n_max + 1, 0.0);
      for (std::size_t d1 = 1; d1 <= n_max; ++d1) {
        const cplx x1 = cfg.chi(static_cast<std::int64_t>(d1)) * std::polar(1.0 / d1, -2.0 * t * std::log(static_cast<double>(d1)));
        if (x1 == cplx(0.0)) continue;
        for (std::size_t d2 = 1; d1 * d2 <= n_max; ++d2) {
          const cplx x2 = std::conj(cfg.chi(static_cast<std::int64_t>(d2))) *
                          std::polar(1.0 / d2, 2.0 * t * std::log(static_cast<double>(d2)));
          for (std::size_t m = 1; d1 * d2 * m <= n_max; ++m) c[d1 * d2 * m] += x1 * x2 * (lg[m] * lg[m] / m);
        }
      }
      CompensatedSum<cplx> S;
      for (std::size_t n = 1; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        S.add(c[n] * G(nd * nd / sqrtC));
      }
      out.value.push_back(2.0 * S.value().real());
      out.error.push_back(0.0);
      out.terms += n_max;
    }
    return out;
  };
  const Integral I = t_integral(cfg, weights, per_weight);
  return {I.value, I.error};
}

MomentReport moment_direct(const MomentConfig& cfg, const MomentOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  MomentReport report;
  report.warnings = cfg.validate();
  report.weights = cfg.weights();
  const MomentTheorem theorem = theorem_for(cfg.g);
  const bool factored = !cfg.g.is_cuspidal();
  const double r = cfg.g.r();
  const double t_top = cfg.T * cfg.W1.hi() + (factored ? r : 0.0);

  // Eigenforms per weight with tables long enough for the largest t.
  struct Family {
    std::vector<HeckeEigenform> forms;
    std::vector<double> rho;
  };
  std::vector<Family> families(report.weights.size());
  std::size_t planned = 0;
  for (std::size_t i = 0; i < report.weights.size(); ++i) {
    const int k = report.weights[i];
    if (cusp_forms_dimension(k) == 0) continue;
    const AfeData top = factored ? afe_data_gl2(HeckeEigenform(k, {0.0, 1.0}, "probe"), t_top)
                                 : afe_data_rs_shape(k, cfg.g, cfg.chi, t_top);
    const std::size_t n_max = afe_cutoff(top, gweight_for(top, cfg.h, cfg.M), cfg.ctx) + 16;
    planned += n_max * static_cast<std::size_t>(cusp_forms_dimension(k));
    check_budget(cfg, planned * static_cast<std::size_t>(16 * 2 * cfg.t_panels));
    families[i].forms = hecke_eigenforms(k, n_max);
    families[i].rho = petersson_rho(k, cfg.ctx);
    report.forms += families[i].forms.size();
  }

  std::atomic<std::size_t> spent{0};
  auto per_weight = [&](int k, const std::vector<double>& ts) {
    NodeValues out;
    const auto idx = static_cast<std::size_t>(std::find(report.weights.begin(), report.weights.end(), k) -
                                              report.weights.begin());
    const Family& fam = families[idx];
    out.value.assign(ts.size(), 0.0);
    out.error.assign(ts.size(), 0.0);
    if (fam.forms.empty()) return out;
    for (std::size_t n = 0; n < ts.size(); ++n) {
      const double t = ts[n];
      CompensatedSum<double> acc;
      double err = 0.0;
      if (factored) {
        // |L(1/2+it, f x E_r)|^2 = |L(1/2+i(t+r), f)|^2 |L(1/2+i(t-r), f)|^2
        std::vector<double> shifts{t + r};
        if (r != 0.0) shifts.push_back(t - r);
        std::vector<AfeData> data;
        std::vector<GWeight> G;
        std::vector<double> werr;
        for (double s : shifts) {
          data.push_back(afe_data_gl2(fam.forms.front(), s));
          G.push_back(gweight_for(data.back(), cfg.h, cfg.M));
          werr.push_back(weight_approximation_error(data.back(), G.back(), cfg.ctx));
        }
        for (std::size_t j = 0; j < fam.forms.size(); ++j) {
          double prod = 1.0, prod_err = 0.0;
          for (std::size_t s = 0; s < shifts.size(); ++s) {
            AfeData d = data[s];
            const HeckeEigenform& f = fam.forms[j];
            const double shift = shifts[s];
            d.coefficients = [&f, shift](std::size_t n_max) {
              std::vector<cplx> a(n_max + 1, 0.0);
              for (std::size_t m = 1; m <= n_max; ++m)
                a[m] = f.lambda()[m] * std::polar(1.0, -shift * std::log(static_cast<double>(m)));
              return a;
            };
            const CentralValue L = afe_central_value(d, G[s], cfg.ctx, werr[s]);
            out.terms += L.terms;
            const double v = std::norm(L.value);
            const double e = 2.0 * std::abs(L.value) * L.error_bound + L.error_bound * L.error_bound;
            // r = 0 squares the single factor.
            for (int rep = 0; rep < (r == 0.0 ? 2 : 1); ++rep) {
              prod_err = prod_err * (v + e) + prod * e;
              prod *= v;
            }
          }
          acc.add(fam.rho[j] * prod);
          err += fam.rho[j] * prod_err;
        }
      } else {
        AfeData data = afe_data_rs_shape(k, cfg.g, cfg.chi, t);
        const GWeight G = gweight_for(data, cfg.h, cfg.M);
        const double werr = weight_approximation_error(data, G, cfg.ctx);
        for (std::size_t j = 0; j < fam.forms.size(); ++j) {
          const HeckeEigenform& f = fam.forms[j];
          data.coefficients = [&](std::size_t n_max) { return rs_coefficients(f, cfg.g, cfg.chi, t, n_max); };
          const CentralValue L = afe_central_value(data, G, cfg.ctx, werr);
          out.terms += L.terms;
          acc.add(fam.rho[j] * L.value.real());
          err += fam.rho[j] * (L.error_bound + std::abs(L.value.imag()));
        }
      }
      out.value[n] = acc.value();
      out.error[n] = err;
    }
    return out;
  };
  auto budgeted = [&](int k, const std::vector<double>& ts) {
    NodeValues v = per_weight(k, ts);
    check_budget(cfg, spent.fetch_add(v.terms) + v.terms);
    return v;
  };
  const Integral I = t_integral(cfg, report.weights, budgeted);

  report.i_direct = I.value;
  report.error = I.error;
  report.t_panels = I.panels;
  report.afe_terms = I.terms;
  report.main = main_term(theorem, cfg, options.unpinned);
  report.main_term = report.main.value;
  if (options.with_diagonal) report.diagonal = diagonal_direct(cfg).value;
  report.residual = report.i_direct - report.main_term;
  report.ratio = report.i_direct / report.main_term;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rsm
