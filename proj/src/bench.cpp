#include "dpt/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpt/approx_degree.hpp"
#include "dpt/approximant_oracle.hpp"
#include "dpt/parity_approximant.hpp"
#include "dpt/witness.hpp"

namespace dpt {

namespace {

constexpr double kSdpSlack = 1e-7;

std::string join_id(const std::string& group, const std::string& instance, const std::string& suffix) {
  std::string id = group + "/" + instance;
  if (!suffix.empty()) id += "/" + suffix;
  return id;
}

double signed_slack(double lhs, double rhs, const std::string& relation) {
  if (relation == "==") return -std::fabs(lhs - rhs);
  if (relation == "<=" || relation == "<") return rhs - lhs;
  return lhs - rhs;
}

}  // namespace

VerificationReport exact_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                const Rational& lhs, const Rational& rhs, Relation relation, std::string lhs_source,
                                std::string rhs_source, std::string mapping) {
  VerificationReport r;
  r.id = join_id(group, instance, suffix);
  r.group = group;
  r.instance = instance;
  r.exact = true;
  r.lhs_exact = to_string(lhs);
  r.rhs_exact = to_string(rhs);
  r.lhs = to_double(lhs);
  r.rhs = to_double(rhs);
  r.relation = to_string(relation);
  Rational diff = lhs - rhs;
  if (relation == Relation::eq) diff = -abs(diff);
  if (relation == Relation::le || relation == Relation::lt) diff = -diff;
  r.slack = to_double(diff);
  r.lhs_source = std::move(lhs_source);
  r.rhs_source = std::move(rhs_source);
  r.mapping = std::move(mapping);
  if ((relation == Relation::ge || relation == Relation::gt) && rhs <= 0) r.note = "right side is nonpositive";
  r.status = recompute_pass(r) ? "pass" : "fail";
  return r;
}

VerificationReport numeric_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                  double lhs, double lhs_gap, double rhs, double rhs_gap, Relation relation,
                                  std::string lhs_source, std::string rhs_source, std::string mapping) {
  VerificationReport r;
  r.id = join_id(group, instance, suffix);
  r.group = group;
  r.instance = instance;
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_gap = lhs_gap;
  r.rhs_gap = rhs_gap;
  r.relation = to_string(relation);
  r.slack = signed_slack(lhs, rhs, r.relation);
  r.tolerance = lhs_gap + rhs_gap + kSdpSlack;
  if ((relation == Relation::ge || relation == Relation::gt) && rhs <= 0) r.note = "right side is nonpositive";
  r.lhs_source = std::move(lhs_source);
  r.rhs_source = std::move(rhs_source);
  r.mapping = std::move(mapping);
  r.status = recompute_pass(r) ? "pass" : "fail";
  return r;
}

VerificationReport skipped_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                  std::string reason, std::string mapping) {
  VerificationReport r;
  r.id = join_id(group, instance, suffix);
  r.group = group;
  r.instance = instance;
  r.status = "skipped";
  r.note = std::move(reason);
  r.mapping = std::move(mapping);
  return r;
}

namespace {

Rational xor_error(int n, int k, const Rational& eps) {
  Rational half = eps / 2;
  return 2 * Rational(binomial(n, k + 1)) * pow(half, k + 1) / pow(1 - half, n);
}

std::vector<int> degrees(std::span<const PartialBooleanFunction> gs, const Rational& eps) {
  std::vector<int> d;
  for (const auto& g : gs) d.push_back(approx_degree(g, eps).degree);
  return d;
}

bool within_cap(int rows, int cols, const BenchSettings& s) { return rows <= s.norms.max_dim && cols <= s.norms.max_dim; }

PartialSignMatrix product_of(std::span<const PartialSignMatrix> fs) { return tensor_power(fs); }

struct Bounds {
  double value, lower, upper;
};

Bounds norm_bounds(const PartialSignMatrix& f, double eps, const BenchSettings& s) {
  NormCertificate c = gamma2_eps(f, eps, s.norms);
  return {c.value, c.lower, c.upper};
}

std::string rational_list(std::span<const Rational> v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + to_string(x);
  return s;
}

}  // namespace

bool recompute_pass(const VerificationReport& r) {
  if (r.status == "skipped" || r.status == "record") return false;
  const bool strict = r.relation == ">" || r.relation == "<";
  if (r.exact) {
    Rational l = parse_rational(r.lhs_exact), h = parse_rational(r.rhs_exact);
    if (r.relation == "==") return l == h;
    if (r.relation == "<=") return l <= h;
    if (r.relation == "<") return l < h;
    return strict ? l > h : l >= h;
  }
  if (strict && r.tolerance == 0) return r.slack > 0;
  return r.slack >= -r.tolerance;
}

double subset_mean_product(const std::vector<double>& v, int k) {
  const int n = static_cast<int>(v.size());
  if (k < 0 || k > n) throw std::invalid_argument("subset size out of range");
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1;
  for (double x : v)
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  return e[k] / to_double(Rational(binomial(n, k)));
}

int min_subset_sum(std::vector<int> v, int s) {
  if (s <= 0) return 0;
  std::sort(v.begin(), v.end());
  int total = 0;
  for (int i = 0; i < s && i < static_cast<int>(v.size()); ++i) total += v[i];
  return total;
}

double xor_norm_bound(const std::vector<double>& norms, double eps, double delta, int k, double c1, double c2) {
  const int n = static_cast<int>(norms.size());
  double prod = 1;
  for (double x : norms) prod *= x;
  double ratio = prod <= 0 ? 0 : prod / subset_mean_product(norms, k);
  double half = eps / 2;
  double tail = to_double(Rational(binomial(n, k + 1))) * std::pow(half, k + 1) / std::pow(1 - half, n);
  double brace = 1 - delta - (1 + delta) * tail;
  double denom = std::pow(eps, n - k) * to_double(Rational(binomial(n + k, k))) * c1 * std::pow(c2, k);
  return ratio * std::pow(1 - half, n) * brace / denom;
}

Rational xor_norm_bound_exact(const std::vector<Rational>& norms, const Rational& eps, const Rational& delta, int k) {
  const int n = static_cast<int>(norms.size());
  std::vector<Rational> e(k + 1, Rational(0));
  e[0] = 1;
  Rational prod = 1;
  for (const auto& x : norms) {
    prod *= x;
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  if (prod <= 0) return 0;
  Rational ratio = prod * Rational(binomial(n, k)) / e[k];
  Rational half = eps / 2;
  Rational tail = Rational(binomial(n, k + 1)) * pow(half, k + 1) / pow(1 - half, n);
  Rational brace = 1 - delta - (1 + delta) * tail;
  return ratio * pow(1 - half, n) * brace / (pow(eps, n - k) * Rational(binomial(n + k, k)));
}

double product_norm_bound(const std::vector<double>& norms, double eps, double sigma, double delta_q, int k, int ell,
                          double c1, double c2) {
  const int n = static_cast<int>(norms.size());
  double prod = 1;
  for (double x : norms) prod *= x;
  double ratio = prod <= 0 ? 0 : prod / subset_mean_product(norms, k + ell);
  double half = eps / 2;
  double tail = to_double(Rational(binomial(n, k + 1))) * std::pow(half, k + 1) / std::pow(1 - half, n);
  double numer = std::pow(1 - half, n) * (sigma - delta_q - 2 * tail);
  double denom = std::pow(2.0, n) * std::pow(eps, n - k - ell) * to_double(Rational(binomial(n + k, k))) *
                 std::sqrt(to_double(Rational(binomial_prefix(n, ell)))) * c1 * std::pow(c2, k + ell);
  return ratio * numer / denom;
}

std::vector<VerificationReport> check_xor_degree(std::span<const PartialBooleanFunction> gs, const Rational& eps, int k,
                                                 const std::string& instance) {
  const std::string group = "xor_degree";
  const std::string mapping =
      "deg at error 1 - 2 C(n,k+1)(eps/2)^(k+1)/(1-eps/2)^n of the XOR >= min over |S|=n-k of sum deg_(1-eps)(g_i)";
  const int n = static_cast<int>(gs.size());
  if (k < 0 || k > n - 1) throw std::invalid_argument("k out of range");
  Rational err = 1 - xor_error(n, k, eps);
  if (err <= 0) return {skipped_report(group, instance, "", "error parameter " + to_string(err) + " is not positive", mapping)};
  auto lhs = approx_degree(tensor_xor(gs), err);
  int rhs = min_subset_sum(degrees(gs, 1 - eps), n - k);
  auto r = exact_report(group, instance, "", lhs.degree, rhs, Relation::ge, "exact LP on the XOR at error " + to_string(err),
                        "exact LP degrees of the factors at error " + to_string(1 - eps), mapping);
  if (!lhs.primal_ok || !lhs.dual_ok) {
    r.status = "fail";
    r.note = "LP certificate did not verify";
  }
  return {r};
}

std::vector<VerificationReport> check_direct_sum_degree(std::span<const PartialBooleanFunction> gs,
                                                        std::span<const Rational> eps, const std::string& instance) {
  const std::string group = "direct_sum_degree";
  if (gs.size() != eps.size() || gs.empty()) throw std::invalid_argument("need one error per function");
  bool total = std::all_of(gs.begin(), gs.end(), [](const auto& g) { return g.is_total(); });
  Rational prod = 1;
  for (const auto& e : eps) {
    if (e <= 0 || e >= 1) throw std::invalid_argument("errors must lie in (0,1)");
    prod *= e;
  }
  Rational err = total ? prod : 2 * prod - 1;
  const std::string mapping = total ? "deg at error prod eps_i of the XOR >= sum deg_(eps_i)(g_i)"
                                    : "deg at error 2 prod eps_i - 1 of the XOR >= sum deg_(eps_i)(g_i)";
  if (err <= 0) return {skipped_report(group, instance, "", "error parameter " + to_string(err) + " is not positive", mapping)};
  auto lhs = approx_degree(tensor_xor(gs), err);
  int rhs = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) rhs += approx_degree(gs[i], eps[i]).degree;
  auto r = exact_report(group, instance, "", lhs.degree, rhs, Relation::ge, "exact LP on the XOR at error " + to_string(err),
                        "exact LP degrees at errors " + rational_list(eps), mapping);
  if (!lhs.primal_ok || !lhs.dual_ok) {
    r.status = "fail";
    r.note = "LP certificate did not verify";
  }
  return {r};
}

std::vector<VerificationReport> check_dpt_degree(std::span<const PartialBooleanFunction> gs, const Rational& eps, int k,
                                                 int ell, int m, const std::string& instance) {
  const std::string group = "product_degree";
  const std::string mapping =
      "least max deg of a (sigma*,m)-approximant >= min over |S|=n-k-l of sum deg_(1-eps)(g_i), "
      "sigma* = 2 C(n,k+1)(eps/2)^(k+1)/(1-eps/2)^n + achieved parity error of Q_l";
  const int n = static_cast<int>(gs.size());
  if (k < 0 || ell < 0 || k + ell > n || m < 0 || m > n) throw std::invalid_argument("need k + l <= n and 0 <= m <= n");
  auto q = parity_approximant(n, m, ell, ParityMethod::lp);
  if (!q.bounded) return {skipped_report(group, instance, "", "Q_l leaves [-1,1] on 0..n", mapping)};
  Rational sigma = xor_error(n, k, eps) + q.delta;
  if (sigma >= 1) return {skipped_report(group, instance, "", "sigma* = " + to_string(sigma) + " is at least 1", mapping)};
  int rhs = min_subset_sum(degrees(gs, 1 - eps), n - k - ell);
  ApproximantDegreeResult lhs;
  try {
    lhs = approximant_degree_oracle(gs, {sigma, m});
  } catch (const std::length_error&) {
    return {skipped_report(group, instance, "", "approximant LP exceeds the size cap", mapping)};
  }
  auto r = exact_report(group, instance, "", lhs.degree, rhs, Relation::ge, "approximant LP oracle at sigma* = " + to_string(sigma),
                        "exact LP degrees of the factors at error " + to_string(1 - eps), mapping);
  r.note = "achieved parity error " + to_string(q.delta);
  return {r};
}

std::vector<VerificationReport> check_xor_gamma2(std::span<const PartialSignMatrix> fs, const Rational& eps, int k,
                                                 const Rational& delta, const std::string& instance,
                                                 const BenchSettings& s) {
  const std::string group = "xor_gamma2";
  const std::string mapping =
      "gamma2_delta of the tensor >= prod/E_k * (1-eps/2)^n {1 - delta - (1+delta) C(n,k+1)(eps/2)^(k+1)/(1-eps/2)^n}"
      " / (eps^(n-k) C(n+k,k)), norms gamma2_(1-eps), C1 = C2 = 1";
  const int n = static_cast<int>(fs.size());
  if (k < 0 || k > n - 1) throw std::invalid_argument("k out of range");
  PartialSignMatrix prod = product_of(fs);
  std::vector<VerificationReport> out;
  if (!within_cap(prod.rows(), prod.cols(), s)) return {skipped_report(group, instance, "", "tensor exceeds the size cap", mapping)};
  double e = to_double(eps), d = to_double(delta);
  Bounds lhs = norm_bounds(prod, d, s);
  std::vector<double> val, lo, hi;
  for (const auto& f : fs) {
    Bounds b = norm_bounds(f, 1 - e, s);
    val.push_back(b.value);
    lo.push_back(b.lower);
    hi.push_back(b.upper);
  }
  double rv = xor_norm_bound(val, e, d, k);
  double rgap = std::fabs(xor_norm_bound(hi, e, d, k) - xor_norm_bound(lo, e, d, k));
  out.push_back(numeric_report(group, instance, "", lhs.value, lhs.upper - lhs.lower, rv, rgap, Relation::ge,
                               "SDP gamma2_" + to_string(delta) + " of the tensor",
                               "bound from SDP gamma2_" + to_string(1 - eps) + " of the factors", mapping));

  bool floor_applies = std::all_of(fs.begin(), fs.end(), [](const auto& f) { return f.is_total() && f.rank() >= 2; });
  if (floor_applies) {
    Bounds fl = norm_bounds(prod, 1 - e, s);
    out.push_back(numeric_report("hadamard_floor", instance, "", fl.value, fl.upper - fl.lower, e * std::pow(2.0, n / 2.0),
                                 0, Relation::ge, "SDP gamma2_" + to_string(1 - eps) + " of the tensor", "eps 2^(n/2)",
                                 "gamma2_(1-eps) of a tensor of rank >= 2 sign matrices >= eps 2^(n/2)"));
  }
  for (int i = 0; i < n; ++i) {
    if (fs[i].is_total() && fs[i].rank() == 1) {
      out.push_back(numeric_report("rank_one_factor", instance, std::to_string(i), val[i], hi[i] - lo[i], e, 0, Relation::ge,
                                   "SDP gamma2_" + to_string(1 - eps) + " of the factor", "eps",
                                   "gamma2_(1-eps)(J) = eps, lower side"));
      out.push_back(numeric_report("rank_one_factor", instance, std::to_string(i) + "/upper", e, 0, val[i], hi[i] - lo[i], Relation::ge, "eps", "SDP gamma2_" + to_string(1 - eps) + " of the factor",
                                   "gamma2_(1-eps)(J) = eps, upper side"));
    }
  }
  return out;
}

std::vector<VerificationReport> check_xor_gamma2_total(const PartialSignMatrix& f, int n, const std::string& instance,
                                                       const BenchSettings& s) {
  const std::string group = "xor_gamma2_total";
  if (!f.is_total() || f.rank() < 2)
    return {skipped_report(group, instance, "", "needs a total sign matrix of rank >= 2", "rank-1 case handled separately")};
  std::vector<PartialSignMatrix> fs(n, f);
  PartialSignMatrix prod = product_of(fs);
  if (!within_cap(prod.rows(), prod.cols(), s))
    return {skipped_report(group, instance, "", "tensor power exceeds the size cap", "")};
  double err = 1 - std::pow(0.75, n);
  Bounds lhs = norm_bounds(prod, err, s);
  Bounds q = norm_bounds(f, 0.25, s);
  double scale = std::pow(19.0, -n), ex = n / 25.0;
  std::vector<VerificationReport> out;
  out.push_back(numeric_report(group, instance, "power", lhs.value, lhs.upper - lhs.lower,
                               std::pow(q.value, ex) * scale, (std::pow(q.upper, ex) - std::pow(q.lower, ex)) * scale, Relation::gt,
                               "SDP gamma2_(1-(3/4)^n) of the tensor power", "gamma2_(1/4)(F)^(n/25) 19^-n",
                               "gamma2_(1-(3/4)^n)(F^n) > gamma2_(1/4)(F)^(n/25) 19^-n"));
  out.push_back(numeric_report(group, instance, "floor", lhs.value, lhs.upper - lhs.lower, std::pow(3 / (2 * std::sqrt(2.0)), n),
                               0, Relation::ge, "SDP gamma2_(1-(3/4)^n) of the tensor power", "(3/(2 sqrt 2))^n",
                               "gamma2_(1-(3/4)^n)(F^n) >= (3/(2 sqrt 2))^n"));
  return out;
}

std::vector<VerificationReport> check_xor_gamma2_distinct(std::span<const PartialSignMatrix> fs,
                                                          const std::string& instance, const BenchSettings& s) {
  const std::string group = "xor_gamma2_distinct";
  const int n = static_cast<int>(fs.size());
  for (const auto& f : fs)
    if (!f.is_total() || f.rank() < 2) return {skipped_report(group, instance, "", "needs total sign matrices of rank >= 2", "")};
  PartialSignMatrix prod = product_of(fs);
  if (!within_cap(prod.rows(), prod.cols(), s)) return {skipped_report(group, instance, "", "tensor exceeds the size cap", "")};
  Bounds lhs = norm_bounds(prod, 1 - std::pow(0.75, n), s);
  std::vector<Bounds> q;
  for (const auto& f : fs) q.push_back(norm_bounds(f, 0.25, s));
  std::sort(q.begin(), q.end(), [](const Bounds& a, const Bounds& b) { return a.value < b.value; });
  int size = (n + 24) / 25;
  double v = 1, lo = 1, hi = 1;
  for (int i = 0; i < size; ++i) {
    v *= q[i].value;
    lo *= q[i].lower;
    hi *= q[i].upper;
  }
  double scale = std::pow(19.0, -n);
  std::vector<VerificationReport> out;
  out.push_back(numeric_report(group, instance, "min_product", lhs.value, lhs.upper - lhs.lower, v * scale, (hi - lo) * scale, Relation::gt, "SDP gamma2_(1-(3/4)^n) of the tensor",
                               "19^-n min over |S|=ceil(n/25) of prod gamma2_(1/4)(F_i)",
                               "gamma2_(1-(3/4)^n) of the tensor > 19^-n min_S prod gamma2_(1/4)(F_i)"));
  out.push_back(numeric_report(group, instance, "floor", lhs.value, lhs.upper - lhs.lower, std::pow(3 * std::sqrt(2.0) / 4, n),
                               0, Relation::ge, "SDP gamma2_(1-(3/4)^n) of the tensor", "(3 sqrt 2/4)^n",
                               "gamma2_(1-(3/4)^n) of the tensor >= (3 sqrt 2/4)^n"));
  return out;
}

BucketResult bucket_partition(const std::vector<double>& a) {
  if (a.empty()) throw std::invalid_argument("empty input");
  double top = 0, sum = 0;
  for (double x : a) {
    if (!(x >= 0)) throw std::invalid_argument("entries must be nonnegative");
    top = std::max(top, x);
    sum += x;
  }
  if (top == 0) throw std::invalid_argument("all entries are zero");
  BucketResult r;
  r.bucket_of.assign(a.size(), 0);
  int last = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0) continue;
    int i = 1;
    while (!(a[j] > std::ldexp(top, -i))) ++i;
    r.bucket_of[j] = i;
    last = std::max(last, i);
  }
  for (int i = 1; i <= last; ++i) {
    int size = 0;
    double least = top;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (r.bucket_of[j] == i) {
        ++size;
        least = std::min(least, a[j]);
      }
    if (size > 0 && 8 * size >= i) {
      r.selected.push_back(i);
      r.lhs += size * least;
    }
  }
  r.rhs = sum / 4;
  r.pass = r.lhs >= r.rhs;
  return r;
}

std::vector<VerificationReport> check_direct_sum_gamma2(std::span<const PartialSignMatrix> fs,
                                                        const std::string& instance, const BenchSettings& s) {
  const int n = static_cast<int>(fs.size());
  std::vector<VerificationReport> out;
  PartialSignMatrix prod = product_of(fs);
  bool total = std::all_of(fs.begin(), fs.end(), [](const auto& f) { return f.is_total(); });
  const std::string tensor_group = "direct_sum_gamma2_tensor";
  if (!within_cap(prod.rows(), prod.cols(), s)) {
    out.push_back(skipped_report(tensor_group, instance, "", "tensor exceeds the size cap", ""));
  } else if (total) {
    for (double e : {0.25, 0.5}) {
      Bounds lhs = norm_bounds(prod, std::pow(e, n), s);
      double v = 1, lo = 1, hi = 1;
      for (const auto& f : fs) {
        Bounds b = norm_bounds(f, e, s);
        v *= b.value;
        lo *= b.lower;
        hi *= b.upper;
      }
      out.push_back(numeric_report(tensor_group, instance, "eps=" + to_string(from_double(e)), lhs.value,
                                   lhs.upper - lhs.lower, v, hi - lo, Relation::ge, "SDP gamma2 of the tensor at error prod eps_i",
                                   "prod of SDP gamma2_(eps_i) of the factors",
                                   "gamma2_(prod eps_i) of the tensor >= prod gamma2_(eps_i)(F_i), C1 = 1"));
    }
  } else {
    const double e = 0.75;
    double err = 2 * std::pow(e, n) - 1;
    if (err <= 0) {
      out.push_back(skipped_report(tensor_group, instance, "", "error 2 prod eps_i - 1 is not positive", ""));
    } else {
      Bounds lhs = norm_bounds(prod, err, s);
      double v = 2, lo = 2, hi = 2;
      for (const auto& f : fs) {
        Bounds b = norm_bounds(f, e, s);
        v *= b.value;
        lo *= b.lower;
        hi *= b.upper;
      }
      out.push_back(numeric_report(tensor_group, instance, "partial", lhs.value, lhs.upper - lhs.lower, v, hi - lo, Relation::ge,
                                   "SDP gamma2 of the tensor at error 2 prod eps_i - 1",
                                   "2 prod of SDP gamma2_(eps_i) of the factors",
                                   "gamma2_(2 prod eps_i - 1) of the tensor >= 2 prod gamma2_(eps_i)(F_i), C1 = 1"));
    }
  }

  const std::string bucket_group = "direct_sum_gamma2_buckets";
  std::vector<double> a;
  double log_gap = 0;
  for (const auto& f : fs) {
    if (f.is_total() && f.rank() < 2) continue;
    Bounds b = norm_bounds(f, 0.25, s);
    if (b.value < 1) continue;
    a.push_back(std::log(b.value));
    if (b.lower > 0) log_gap += std::log(b.upper) - std::log(b.lower);
  }
  if (a.empty() || *std::max_element(a.begin(), a.end()) == 0) {
    out.push_back(skipped_report(bucket_group, instance, "", "no factor with gamma2_(1/4) > 1", ""));
  } else {
    BucketResult br = bucket_partition(a);
    out.push_back(numeric_report(bucket_group, instance, "", br.lhs, log_gap, br.rhs, log_gap, Relation::ge,
                                 "sum over selected buckets of |S_i| min a_j", "(1/4) sum a_i",
                                 "bucketing of a_i = ln gamma2_(1/4)(F_i)"));
  }
  return out;
}

std::vector<VerificationReport> check_product_gamma2(std::span<const PartialSignMatrix> fs, const Rational& eps, int k,
                                                     int ell, const std::string& instance, const BenchSettings& s) {
  const std::string group = "product_gamma2";
  const std::string mapping =
      "max_z gamma2(phi_z) of the indicator system >= prod/E_(k+l) * (1-eps/2)^n (sigma - delta_Q - 2 C(n,k+1)(eps/2)^(k+1)"
      "/(1-eps/2)^n) / (2^n eps^(n-k-l) C(n+k,k) C(n,<=l)^(1/2)), C1 = C2 = 1";
  const int n = static_cast<int>(fs.size());
  if (k < 0 || ell < 0 || k + ell > n) throw std::invalid_argument("need k + l <= n");
  PartialSignMatrix prod = product_of(fs);
  if (!within_cap(prod.rows(), prod.cols(), s)) return {skipped_report(group, instance, "", "tensor exceeds the size cap", mapping)};
  auto q = parity_approximant(n, 0, ell, ParityMethod::lp);
  if (!q.bounded) return {skipped_report(group, instance, "", "Q_l leaves [-1,1] on 0..n", mapping)};

  std::vector<int> rdiv(n), cdiv(n);
  int rr = 1, cc = 1;
  for (int i = n - 1; i >= 0; --i) {
    rdiv[i] = rr;
    cdiv[i] = cc;
    rr *= fs[i].rows();
    cc *= fs[i].cols();
  }
  std::vector<Eigen::MatrixXd> phi(std::size_t{1} << n, Eigen::MatrixXd::Zero(prod.rows(), prod.cols()));
  for (int r = 0; r < prod.rows(); ++r)
    for (int c = 0; c < prod.cols(); ++c) {
      std::size_t z = 0;
      bool defined = true;
      for (int i = 0; i < n; ++i) {
        int v = fs[i].at((r / rdiv[i]) % fs[i].rows(), (c / cdiv[i]) % fs[i].cols());
        if (v == 0) defined = false;
        if (v < 0) z |= std::size_t{1} << i;
      }
      if (defined) phi[z](r, c) = 1;
    }
  double lhs = 0, lhs_gap = 0;
  for (const auto& p : phi) {
    if (p.isZero()) continue;
    NormCertificate c = gamma2(p, s.norms);
    if (c.value > lhs) lhs = c.value;
    lhs_gap = std::max(lhs_gap, c.gap);
  }
  double e = to_double(eps), dq = to_double(q.delta);
  std::vector<double> val, lo, hi;
  for (const auto& f : fs) {
    Bounds b = norm_bounds(f, 1 - e, s);
    val.push_back(b.value);
    lo.push_back(b.lower);
    hi.push_back(b.upper);
  }
  double rv = product_norm_bound(val, e, 1.0, dq, k, ell);
  double rgap = std::fabs(product_norm_bound(hi, e, 1.0, dq, k, ell) - product_norm_bound(lo, e, 1.0, dq, k, ell));
  auto r = numeric_report(group, instance, "", lhs, lhs_gap, rv, rgap, Relation::ge, "SDP gamma2 of the indicator system (sigma = 1, m = 0)",
                          "bound from SDP gamma2_" + to_string(1 - eps) + " of the factors", mapping);
  r.note = "achieved parity error " + to_string(q.delta) + "; protocol-cost step not executed";
  return {r};
}

std::vector<VerificationReport> check_composed(const PartialBooleanFunction& F, std::span<const PartialBooleanFunction> fs,
                                               const Rational& eps, const Rational& delta, int k,
                                               const std::string& instance) {
  const std::string group = "composed_degree";
  const std::string mapping =
      "deg at error delta - C(n,k+1) 2 eps^(k+1)/(1-eps)^n of F(f_1..f_n) >= min over |S|=deg_delta(F)-k of sum deg_(1-eps)(f_i)";
  const int n = static_cast<int>(fs.size());
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("k must be even and nonnegative");
  if (F.num_vars() != n) throw std::invalid_argument("outer arity differs from the number of inner functions");
  std::vector<VerificationReport> out;
  auto outer = approx_degree(F, delta);
  int D = outer.degree;
  double threshold = 30 * to_double(eps) * n;
  VerificationReport rec = numeric_report("composed_parameters", instance, "", D, 0, threshold, 0, Relation::ge,
                                          "deg_delta(F)", "30 eps n", "precondition deg_delta(F) >= 30 eps n");
  rec.status = "record";
  rec.note = D >= threshold ? "precondition holds" : "precondition does not hold";
  out.push_back(rec);
  if (D < 1) {
    out.push_back(skipped_report(group, instance, "", "deg_delta(F) = 0", mapping));
    return out;
  }
  if (k > n - 1) {
    out.push_back(skipped_report(group, instance, "", "k exceeds n - 1", mapping));
    return out;
  }
  Rational err = delta - Rational(binomial(n, k + 1)) * 2 * pow(eps, k + 1) / pow(1 - eps, n);
  if (err < 0) {
    out.push_back(skipped_report(group, instance, "", "error parameter " + to_string(err) + " is negative", mapping));
    return out;
  }
  PartialBooleanFunction composed = compose(F, fs);
  auto lhs = approx_degree(composed, err);
  std::vector<ApproxDegreeResult> inner;
  std::vector<int> degs;
  for (const auto& f : fs) {
    inner.push_back(approx_degree(f, 1 - eps));
    degs.push_back(inner.back().degree);
  }
  int rhs = min_subset_sum(degs, D - k);
  auto r = exact_report(group, instance, "", lhs.degree, rhs, Relation::ge, "exact LP on the composition at error " + to_string(err),
                        "exact LP degrees at error " + to_string(1 - eps) + " with deg_delta(F) = " + std::to_string(D), mapping);
  if (!lhs.primal_ok || !lhs.dual_ok) {
    r.status = "fail";
    r.note = "LP certificate did not verify";
  }
  out.push_back(r);

  const std::string wgroup = "composed_witness";
  bool have = outer.witness.has_value();
  std::vector<DualWitness> psis;
  for (const auto& res : inner) {
    if (!res.witness) have = false;
    else psis.push_back(*res.witness);
  }
  if (!have) {
    out.push_back(skipped_report(wgroup, instance, "", "an inner or outer function is constant at this error", ""));
    return out;
  }
  CompositeWitness z = build_zeta(*outer.witness, psis, fs, F, eps, delta, k);
  DualWitness zn = z.table.normalized();
  Rational corr = correlation(zn, composed);
  out.push_back(exact_report(wgroup, instance, "correlation", corr, err, Relation::gt, "exact correlation of the normalized zeta",
                             "error parameter", "normalized zeta correlates with F(f) above the error parameter"));
  out.push_back(exact_report(wgroup, instance, "order", zn.order(), rhs, Relation::ge, "exhaustive pure high degree of zeta",
                             "degree lower bound", "zeta is orthogonal to every polynomial of degree below the bound"));
  for (const auto& c : z.checks) {
    if (c.name == "l1 = 2^-n p_k(1-2eps)")
      out.push_back(exact_report(wgroup, instance, "mass", c.lhs, c.rhs, Relation::eq, "exact l1 of zeta",
                                 "2^-n p_k(1-2eps)", "l1 norm of zeta equals 2^-n p_k(1-2eps)"));
    if (c.name == "correlation with F(f) bound")
      out.push_back(exact_report(wgroup, instance, "correlation_bound", c.lhs, c.rhs, Relation::gt, "exact correlation of zeta",
                                 "2^-n p_k(1-2eps) {delta - 2 eps^(k+1) C(n,k+1)/(1-eps)^n}",
                                 "unnormalized zeta correlation bound"));
  }
  return out;
}

}  // namespace dpt
