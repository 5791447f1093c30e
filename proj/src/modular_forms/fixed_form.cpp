#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rsm/modular_forms.hpp"

namespace rsm {

namespace {

Error data_error(const std::string& what) { return Error(ErrorKind::DataFormat, "modular_forms", what); }

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw data_error("bad value for '" + key + "': " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x)) throw data_error("'" + key + "' must be an integer");
  return static_cast<int>(x);
}

}  // namespace

EigenformFile parse_eigenform_text(const std::string& text) {
  EigenformFile out;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::map<std::int64_t, double> values;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (!have_header) {
      std::map<std::string, std::string> kv;
      for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw data_error("line " + std::to_string(line_no) + ": header expects key=value");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      if (kv.count("weight")) {
        out.kind = EigenformFile::Kind::holomorphic;
        out.weight = parse_int("weight", kv["weight"]);
        out.level = kv.count("level") ? parse_int("level", kv["level"]) : 1;
        out.character = kv.count("character") ? kv["character"] : "trivial";
        kv.erase("weight");
        kv.erase("level");
        kv.erase("character");
        if (out.weight < 2 || out.level < 1) throw data_error("weight must be >= 2 and level >= 1");
      } else if (kv.count("r")) {
        out.kind = EigenformFile::Kind::maass;
        out.r = parse_double("r", kv["r"]);
        out.epsilon = kv.count("epsilon") ? parse_int("epsilon", kv["epsilon"]) : 1;
        kv.erase("r");
        kv.erase("epsilon");
        if (out.epsilon != 1 && out.epsilon != -1) throw data_error("epsilon must be +1 or -1");
        if (!(out.r >= 0.0)) throw data_error("r must be nonnegative");
      } else {
        throw data_error("header must name weight/level/character or r/epsilon");
      }
      if (!kv.empty()) throw data_error("unknown header key '" + kv.begin()->first + "'");
      have_header = true;
      continue;
    }
    if (tokens.size() != 2) throw data_error("line " + std::to_string(line_no) + ": expected 'n lambda(n)'");
    const int n = parse_int("n", tokens[0]);
    if (n < 1) throw data_error("line " + std::to_string(line_no) + ": n must be positive");
    if (!values.emplace(n, parse_double("lambda", tokens[1])).second)
      throw data_error("duplicate entry for n = " + std::to_string(n));
  }
  if (!have_header) throw data_error("missing header line");
  if (values.empty()) throw data_error("no eigenvalues");
  const std::int64_t n_max = values.rbegin()->first;
  if (static_cast<std::int64_t>(values.size()) != n_max) throw data_error("eigenvalues must cover n = 1..n_max");
  out.lambda.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (auto [n, v] : values) out.lambda[static_cast<std::size_t>(n)] = v;
  if (std::abs(out.lambda[1] - 1.0) > 1e-10) throw data_error("lambda(1) must equal 1");
  for (std::int64_t m = 2; m <= n_max; ++m)
    for (std::int64_t n = m + 1; m * n <= n_max; ++n) {
      if (gcd(m, n) != 1) continue;
      const double prod = out.lambda[m] * out.lambda[n];
      if (std::abs(out.lambda[m * n] - prod) > 1e-6 * std::max(1.0, std::abs(prod)))
        throw data_error("lambda is not multiplicative at (" + std::to_string(m) + ", " + std::to_string(n) + ")");
    }
  return out;
}

EigenformFile load_eigenform_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_eigenform_text(ss.str());
}

FixedForm FixedForm::holomorphic(HeckeEigenform f) {
  FixedForm g;
  g.kind_ = Kind::holomorphic;
  g.weight_ = f.weight();
  g.table_ = f.lambda();
  g.label_ = f.weight() == 12 ? "Delta" : f.label();
  return g;
}

FixedForm FixedForm::maass(double r, int eps, std::vector<double> lambda, std::string label) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidArgument, "modular_forms", "Maass sign must be +1 or -1");
  if (lambda.size() < 2) throw Error(ErrorKind::InvalidArgument, "modular_forms", "empty Maass eigenvalue table");
  FixedForm g;
  g.kind_ = Kind::maass;
  g.r_ = r;
  g.eps_ = eps;
  g.table_ = std::move(lambda);
  g.label_ = std::move(label);
  return g;
}

FixedForm FixedForm::eisenstein(double r) {
  FixedForm g;
  g.kind_ = Kind::eisenstein;
  g.r_ = r;
  std::ostringstream ss;
  ss << "E" << r;
  g.label_ = ss.str();
  return g;
}

FixedForm FixedForm::from_file(const EigenformFile& data, std::string label) {
  if (data.kind == EigenformFile::Kind::maass) return maass(data.r, data.epsilon, data.lambda, std::move(label));
  if (data.level != 1 || data.character != "trivial")
    throw Error(ErrorKind::InvalidFormCombination, "modular_forms", "the fixed form must have level 1 and trivial character");
  return holomorphic(HeckeEigenform(data.weight, data.lambda, std::move(label)));
}

FixedForm FixedForm::from_name(const std::string& name, std::size_t n_max) {
  if (name == "Delta") return holomorphic(hecke_eigenforms(12, n_max).at(0));
  if (name.size() > 1 && name[0] == 'E') {
    double r = 0.0;
    try {
      std::size_t used = 0;
      r = std::stod(name.substr(1), &used);
      if (used != name.size() - 1) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "modular_forms", "bad Eisenstein name '" + name + "'");
    }
    if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "modular_forms", "Eisenstein r must be >= 0");
    return eisenstein(r);
  }
  if (name.rfind("holo", 0) == 0) {
    const auto colon = name.find(':');
    const int k = std::stoi(name.substr(4, colon == std::string::npos ? std::string::npos : colon - 4));
    const std::size_t j = colon == std::string::npos ? 1 : std::stoul(name.substr(colon + 1));
    auto forms = hecke_eigenforms(k, n_max);
    if (j < 1 || j > forms.size())
      throw Error(ErrorKind::InvalidArgument, "modular_forms", "no eigenform '" + name + "'");
    return holomorphic(forms[j - 1]);
  }
  if (name.rfind("file:", 0) == 0) return from_file(load_eigenform_file(name.substr(5)), name.substr(5));
  throw Error(ErrorKind::InvalidArgument, "modular_forms", "unknown form '" + name + "'");
}

std::size_t FixedForm::table_limit() const noexcept {
  return kind_ == Kind::eisenstein ? static_cast<std::size_t>(-1) : table_.size() - 1;
}

double FixedForm::lambda(std::int64_t n) const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "modular_forms", "lambda index must be positive");
  if (kind_ == Kind::eisenstein) return eisenstein_lambda(r_, n);
  if (static_cast<std::size_t>(n) >= table_.size())
    throw Error(ErrorKind::RangeExceedsEigenvalueTable, "modular_forms",
                "lambda(" + std::to_string(n) + ") beyond the table of " + label_);
  return table_[static_cast<std::size_t>(n)];
}

std::vector<double> FixedForm::lambda_table(std::size_t n_max) const {
  if (kind_ == Kind::eisenstein) return EisensteinEigenvalues(r_).table(n_max);
  if (n_max >= table_.size())
    throw Error(ErrorKind::RangeExceedsEigenvalueTable, "modular_forms",
                "table of " + label_ + " ends at " + std::to_string(table_.size() - 1));
  return {table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(n_max) + 1};
}

FormKernel FixedForm::kernel() const {
  switch (kind_) {
    case Kind::holomorphic:
      return FormKernel::holomorphic(weight_);
    case Kind::maass:
      return FormKernel::spectral(r_, eps_);
    case Kind::eisenstein:
      break;
  }
  return FormKernel::spectral(r_, 1);
}

std::array<cplx, 4> FixedForm::rs_shifts() const {
  if (kind_ == Kind::holomorphic) {
    const double w = weight_;
    return {cplx((w - 1) / 2, 0), cplx(-(w - 1) / 2, 0), cplx((w + 1) / 2, 0), cplx((3 - w) / 2, 0)};
  }
  return {cplx(0, r_), cplx(0, -r_), cplx(1, r_), cplx(1, -r_)};
}

Estimate<double> adjoint_l_one(const FixedForm& g, std::size_t p_max) {
  if (!g.is_cuspidal())
    throw Error(ErrorKind::InvalidFormCombination, "modular_forms", "L(1, Ad^2 g) has a pole for Eisenstein g");
  if (p_max < 20) throw Error(ErrorKind::InvalidArgument, "modular_forms", "p_max too small");
  const auto lambda = g.lambda_table(p_max);
  PrimeSieve sieve(p_max);
  double log_prod = 0.0;
  double lo = INFINITY, hi = -INFINITY;
  CompensatedSum<double> acc;
  for (std::uint32_t p : sieve.primes()) {
    const double x = 1.0 / p;
    const double l = lambda[p];
    // [(1 - alpha^2/p)(1 - 1/p)(1 - beta^2/p)]^{-1}, alpha + beta = lambda(p), alpha beta = 1.
    const double factor = (1.0 - (l * l - 2.0) * x + x * x) * (1.0 - x);
    acc.add(-std::log(factor));
    log_prod = acc.value();
    if (p * 10 >= p_max) {
      lo = std::min(lo, log_prod);
      hi = std::max(hi, log_prod);
    }
  }
  const double value = std::exp(log_prod);
  return {value, value * (std::exp(hi - lo) - 1.0)};
}

}  // namespace rsm
