#include <algorithm>
#include <cmath>
#include <mutex>

#include "rsm/afe.hpp"
#include "rsm/special.hpp"

namespace rsm {

namespace {

// Bivariate truncated series: [k][l] is the coefficient of y^k u^l.
using BiSeries = std::vector<std::vector<mpq_class>>;

BiSeries bi_zero(int M, int L) { return BiSeries(M, std::vector<mpq_class>(L + 1, 0)); }

BiSeries bi_mul(const BiSeries& a, const BiSeries& b, int M, int L) {
  BiSeries out = bi_zero(M, L);
  for (int i = 0; i < M; ++i)
    for (int j = 0; i + j < M; ++j)
      for (int l1 = 0; l1 <= L; ++l1) {
        if (a[i][l1] == 0) continue;
        for (int l2 = 0; l1 + l2 <= L; ++l2)
          if (b[j][l2] != 0) out[i + j][l1 + l2] += a[i][l1] * b[j][l2];
      }
  return out;
}

mpq_class binomial_neg(int n, int m) {
  // binom(-n, m) = (-1)^m binom(n+m-1, m)
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + m - 1), static_cast<unsigned long>(m));
  return (m % 2 == 0) ? mpq_class(b) : mpq_class(-b);
}

// S(y,u) with int_0^{t/2} (psi(eta + i tau) - log eta) d tau = -i S(1/eta, it).
BiSeries digamma_integral_series(int M, int L) {
  BiSeries S = bi_zero(M, L);
  for (int p = 1; p < M; ++p) {
    // log(1 + w/eta) part
    {
      const int l = p + 1;
      mpq_class c(p % 2 == 1 ? 1 : -1, p);
      c /= mpq_class(mpz_class(1) << l) * l;
      S[p][l] += c;
    }
    // -B_n / (n z^n) part, expanded in w/eta
    for (int n = 1; n <= p; ++n) {
      const int m = p - n, l = m + 1;
      mpq_class c = -bernoulli(static_cast<unsigned>(n)) / n * binomial_neg(n, m);
      c /= mpq_class(mpz_class(1) << l) * l;
      S[p][l] += c;
    }
  }
  for (auto& row : S)
    for (auto& c : row) c.canonicalize();
  return S;
}

BiSeries bi_exp(const BiSeries& S, int M, int L) {
  BiSeries out = bi_zero(M, L), term = bi_zero(M, L);
  out[0][0] = 1;
  term[0][0] = 1;
  for (int j = 1; j < M; ++j) {
    term = bi_mul(term, S, M, L);
    for (int k = 0; k < M; ++k)
      for (int l = 0; l <= L; ++l) {
        term[k][l] /= j;
        out[k][l] += term[k][l];
      }
  }
  return out;
}

struct VariableSeries {
  int M, L;
  BiSeries plus, minus;  // for eta_j and for conj(eta_j)
};

const VariableSeries& variable_series(int M) {
  static std::map<int, VariableSeries> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  const int L = 2 * std::max(M - 1, 0);
  const BiSeries S = digamma_integral_series(M, L);
  BiSeries S_minus = bi_zero(M, L);
  for (int k = 0; k < M; ++k)
    for (int l = 0; l <= L; ++l) S_minus[k][l] = (l % 2 == 0) ? mpq_class(-S[k][l]) : S[k][l];  // -S(y,-u)
  VariableSeries v{M, L, bi_exp(S, M, L), bi_exp(S_minus, M, L)};
  return cache.emplace(M, std::move(v)).first->second;
}

void enumerate(int vars, int budget, MultiIndex& cur, std::size_t pos, const std::function<void(const MultiIndex&)>& fn) {
  if (pos == cur.size()) {
    fn(cur);
    return;
  }
  for (int k = 0; k <= budget; ++k) {
    cur[pos] = k;
    enumerate(vars, budget - k, cur, pos + 1, fn);
  }
  cur[pos] = 0;
}

MultiIndex conjugate_index(const MultiIndex& n) {
  MultiIndex out(n);
  for (std::size_t j = 0; j + 1 < n.size(); j += 2) std::swap(out[j], out[j + 1]);
  return out;
}

}  // namespace

CorrectionTable correction_coefficients(int md, int M) {
  if (md < 1 || M < 1) throw Error(ErrorKind::InvalidArgument, "afe", "need md >= 1 and M >= 1");
  CorrectionTable table;
  if (M == 1) return table;
  const auto& vs = variable_series(M);
  MultiIndex cur(static_cast<std::size_t>(2 * md), 0);
  enumerate(2 * md, M - 1, cur, 0, [&](const MultiIndex& n) {
    int total = 0;
    for (int k : n) total += k;
    if (total == 0) return;
    std::vector<mpq_class> prod(static_cast<std::size_t>(vs.L) + 1, 0);
    prod[0] = 1;
    for (std::size_t v = 0; v < n.size(); ++v) {
      if (n[v] == 0) continue;
      const auto& R = (v % 2 == 0 ? vs.plus : vs.minus)[static_cast<std::size_t>(n[v])];
      std::vector<mpq_class> next(prod.size(), 0);
      for (std::size_t a = 0; a < prod.size(); ++a) {
        if (prod[a] == 0) continue;
        for (std::size_t b = 0; a + b < prod.size(); ++b)
          if (R[b] != 0) next[a + b] += prod[a] * R[b];
      }
      prod = std::move(next);
    }
    for (std::size_t l = 1; l < prod.size(); ++l) {
      if (prod[l] == 0) continue;
      mpq_class c = prod[l] / 2;
      if (l % 2 == 1) c = -c;
      table[{n, static_cast<int>(l)}] = c;
    }
  });
  return table;
}

CorrectionTable symmetrize(const CorrectionTable& table) {
  CorrectionTable out;
  for (const auto& [key, c] : table) {
    out[key] += c / 2;
    out[{conjugate_index(key.first), key.second}] += c / 2;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

std::vector<cplx> interleave_conjugates(const std::vector<cplx>& eta) {
  std::vector<cplx> out;
  out.reserve(2 * eta.size());
  for (const cplx& e : eta) {
    out.push_back(e);
    out.push_back(std::conj(e));
  }
  return out;
}

namespace {

std::vector<cplx> fast_polynomial(const std::vector<cplx>& vars, int M) {
  const auto& vs = variable_series(M);
  const int L = vs.L;
  // Q[e][l]: coefficient of eps^e u^l in prod_v sum_k R_{v,k}(u) (eps y_v)^k.
  std::vector<std::vector<cplx>> Q(static_cast<std::size_t>(M), std::vector<cplx>(static_cast<std::size_t>(L) + 1, 0.0));
  Q[0][0] = 1.0;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& R = v % 2 == 0 ? vs.plus : vs.minus;
    const cplx y = 1.0 / vars[v];
    std::vector<std::vector<cplx>> factor(Q.size(), std::vector<cplx>(Q[0].size(), 0.0));
    cplx ypow = 1.0;
    for (int k = 0; k < M; ++k) {
      for (int l = 0; l <= L; ++l) factor[k][l] = R[k][l].get_d() * ypow;
      ypow *= y;
    }
    std::vector<std::vector<cplx>> next(Q.size(), std::vector<cplx>(Q[0].size(), 0.0));
    for (int a = 0; a < M; ++a)
      for (int b = 0; a + b < M; ++b)
        for (int l1 = 0; l1 <= L; ++l1) {
          if (Q[a][l1] == 0.0) continue;
          for (int l2 = 0; l1 + l2 <= L; ++l2) next[a + b][l1 + l2] += Q[a][l1] * factor[b][l2];
        }
    Q = std::move(next);
  }
  std::vector<cplx> p(static_cast<std::size_t>(L) + 1, 0.0);
  p[0] = 1.0;
  for (int l = 1; l <= L; ++l) {
    cplx s = 0.0;
    for (int e = 1; e < M; ++e) s += Q[e][l];
    p[l] = (l % 2 == 0 ? 0.5 : -0.5) * s;
  }
  return p;
}

}  // namespace

std::vector<cplx> correction_polynomial(const std::vector<cplx>& vars, int M, bool symmetrized) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "afe", "M must be >= 1");
  if (vars.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "afe", "variable list must be interleaved pairs");
  for (const cplx& v : vars)
    if (v == cplx(0.0, 0.0)) throw Error(ErrorKind::InvalidArgument, "afe", "eta must be nonzero");
  if (M == 1) return {1.0};
  auto p = fast_polynomial(vars, M);
  if (symmetrized) {
    std::vector<cplx> swapped(vars);
    for (std::size_t j = 0; j + 1 < swapped.size(); j += 2) std::swap(swapped[j], swapped[j + 1]);
    const auto q = fast_polynomial(swapped, M);
    for (std::size_t l = 1; l < p.size(); ++l) p[l] = 0.5 * (p[l] + q[l]);
  }
  return p;
}

std::vector<cplx> correction_polynomial(const CorrectionTable& table, const std::vector<cplx>& vars) {
  std::vector<cplx> p(1, 1.0);
  for (const auto& [key, c] : table) {
    const auto& [n, l] = key;
    if (n.size() != vars.size()) throw Error(ErrorKind::InvalidArgument, "afe", "multi-index length mismatch");
    cplx mono = c.get_d();
    for (std::size_t v = 0; v < n.size(); ++v)
      if (n[v] > 0) mono *= std::pow(vars[v], -n[v]);
    if (p.size() <= static_cast<std::size_t>(l)) p.resize(static_cast<std::size_t>(l) + 1, 0.0);
    p[static_cast<std::size_t>(l)] += mono;
  }
  return p;
}

cplx gamma_ratio_factor(const std::vector<cplx>& eta, cplx s) {
  cplx acc = 0.0;
  for (const cplx& e : eta) {
    const cplx eb = std::conj(e);
    acc += -s * std::log(std::abs(e)) + log_gamma(e + 0.5 * s) + log_gamma(eb) - log_gamma(eb - 0.5 * s) - log_gamma(e);
  }
  return 0.5 + 0.5 * std::exp(acc);
}

double asymp_residual(const std::vector<cplx>& eta, int M, double t) {
  const auto p = correction_polynomial(interleave_conjugates(eta), M, false);
  const cplx s(0.0, t);
  cplx approx = 0.0, pw = 1.0;
  for (const cplx& c : p) {
    approx += c * pw;
    pw *= -s;
  }
  return std::abs(gamma_ratio_factor(eta, s) - approx);
}

}  // namespace rsm
