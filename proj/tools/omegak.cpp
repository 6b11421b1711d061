#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "omegak/constants.hpp"
#include "omegak/distribution.hpp"
#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/factor.hpp"
#include "omegak/parallel.hpp"
#include "omegak/prime_count.hpp"
#include "omegak/selftest.hpp"
#include "omegak/series.hpp"
#include "omegak/stats.hpp"

using namespace omegak;
using nlohmann::ordered_json;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDomain = 3,
  kCapacity = 4,
  kParse = 5,
  kConstruction = 6,
  kSelftest = 7,
};

constexpr const char* kFooter = R"(Exit codes:
  0  success
  1  internal error
  2  usage error (unknown subcommand, bad or conflicting flags)
  3  domain error (argument outside the mathematical domain)
  4  capacity error (field or enumeration too large)
  5  parse error (malformed polynomial, field spec or range)
  6  construction error (composite characteristic, e = 0)
  7  selftest failure
Errors are one line on stderr: "error: <kind>: <message>".

Output columns (CSV, header first; --out json gives an array of objects
with the same keys and string values):
  field         p,e,q,modulus
  factor        irreducible,multiplicity
  pi            degree,count
  mertens       n,sum,residual
  moments       n,exact,main_term,residual,normalized_residual
  census        n,k,value,count
  series        n,coeff_num,coeff_den,main_term,normalized_residual
                (--compare-brute appends brute_num,brute_den,match)
  erdos-kac     a,ecdf,phi,gap
                (--summary instead: n,stat,provenance,sample_size,ks)
  normal-order  n,epsilon_prime,count,total,fraction
  variance      n,exact,main_term,residual,normalized_residual
  selftest      check,status,detail
  constants     JSON {name: {value, tail_bound, terms_used[, exact]}}
Polynomials are comma-separated coefficient indices, low degree first
("0,1,1" is t^2+t over F_2). Floats carry 17 significant digits,
rationals are num/den, big integers are decimal.

Environment:
  OMEGAK_TERMS    default truncation depth for constants (default 80)
  OMEGAK_THREADS  default worker cap (default: hardware concurrency)
)";

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct Output {
  std::string format = "csv";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text << std::flush;
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
  }

  void emit(const Table& t) const {
    if (format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& row : t.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      write(arr.dump(2) + "\n");
      return;
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s << (i ? "," : "") << t.columns[i];
    s << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
      s << "\n";
    }
    write(s.str());
  }

  static std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
};

// "A:B" or a single "A".
std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw omegak::ParseError("malformed range '" + text + "'");
    return v;
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, colon)), hi = to_int(text.substr(colon + 1));
  if (lo > hi) throw omegak::ParseError("empty range '" + text + "'");
  return {lo, hi};
}

std::string str(const mpz_class& x) { return x.get_str(); }
std::string str(long double x) { return format_real(x); }
std::string str(std::uint64_t x) { return std::to_string(x); }
std::string str(int x) { return std::to_string(x); }

// Hand-written so floats keep 17 significant digits (json.hpp prints the
// shortest round-trip form).
std::string constants_json(const std::vector<const ConstantValue*>& values) {
  std::ostringstream s;
  s << "{\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& c = *values[i];
    s << "  " << ordered_json(c.name).dump() << ": {\"value\": " << format_real(c.value)
      << ", \"tail_bound\": " << format_real(c.tail_bound) << ", \"terms_used\": " << c.terms_used;
    if (c.exact) s << ", \"exact\": \"" << format_rational(*c.exact) << "\"";
    s << "}" << (i + 1 < values.size() ? "," : "") << "\n";
  }
  s << "}\n";
  return s.str();
}

Statistic parse_stat(const std::string& s) { return s == "omega" ? Statistic::omega : Statistic::omega1; }

SampleMode sample_mode(const std::optional<std::uint64_t>& samples, std::uint64_t seed) {
  return samples ? SampleMode::sample(*samples, seed) : SampleMode::full();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omegak: statistics of omega_k over monic polynomials in F_q[t]"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "Worker cap (results do not depend on it)")->check(CLI::NonNegativeNumber);
  app.add_option("--output", out.path, "Write to this file instead of stdout");
  app.add_option("--out", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized splitting and sampling");

  std::string q_spec = "2";
  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", q_spec, "Field order as p or p^e")->required(); };

  // field
  auto* field_cmd = app.add_subcommand("field", "Describe F_q and its modulus");
  add_q(field_cmd);

  // factor
  std::string poly_text;
  auto* factor_cmd = app.add_subcommand("factor", "Factor a polynomial into monic irreducibles");
  add_q(factor_cmd);
  factor_cmd->add_option("--poly", poly_text, "Coefficient indices, low degree first")->required();

  // pi
  int max_degree = 0;
  auto* pi_cmd = app.add_subcommand("pi", "Exact counts of monic irreducibles per degree");
  add_q(pi_cmd);
  pi_cmd->add_option("--max-degree", max_degree, "Largest degree")->required()->check(CLI::PositiveNumber);

  // mertens
  std::string n_range;
  int terms = 0;
  auto* mertens_cmd = app.add_subcommand("mertens", "Sum of 1/|l| over irreducibles of degree <= n");
  add_q(mertens_cmd);
  mertens_cmd->add_option("--n,--n-range", n_range, "n or A:B")->required();
  mertens_cmd->add_option("--terms", terms, "Truncation depth for A_1");

  // moments
  int k = 1, order = 1;
  std::string method = "exact";
  auto* moments_cmd = app.add_subcommand("moments", "Moments of omega_k over M_n against their main terms");
  add_q(moments_cmd);
  moments_cmd->add_option("--k", k, "Multiplicity (0 means plain omega)")->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--order", order, "Moment order")->check(CLI::IsMember({1, 2}));
  moments_cmd->add_option("--n-range,--n", n_range, "n or A:B")->required();
  moments_cmd->add_option("--method", method, "Computation route")->check(CLI::IsMember({"exact", "brute", "asymptotic"}));

  // census
  int census_n = 0, value = 0;
  auto* census_cmd = app.add_subcommand("census", "Count f in M_n with omega_k(f) = value (k >= 2)");
  add_q(census_cmd);
  census_cmd->add_option("--n", census_n, "Degree")->required();
  census_cmd->add_option("--k", k, "Multiplicity")->required();
  census_cmd->add_option("--value", value, "0 or 1")->required()->check(CLI::IsMember({0, 1}));

  // constants
  std::vector<int> ks{2, 3, 4};
  auto* constants_cmd = app.add_subcommand("constants", "Main-term constants with truncation tail bounds (JSON)");
  add_q(constants_cmd);
  constants_cmd->add_option("--terms", terms, "Truncation depth R");
  constants_cmd->add_option("--ks", ks, "k values for c_k'")->delimiter(',');

  // series
  int g = -1, N = 0;
  bool compare_brute = false;
  auto* series_cmd = app.add_subcommand("series", "Coefficients of the A_{g,k} generating series");
  add_q(series_cmd);
  series_cmd->add_option("--g", g, "Constant weight")->check(CLI::IsMember({-1, 0, 1}));
  series_cmd->add_option("--k", k, "k >= 1");
  series_cmd->add_option("--N", N, "Truncation")->required()->check(CLI::PositiveNumber);
  series_cmd->add_flag("--compare-brute", compare_brute, "Also sum a_{g,k} over M_n by factoring");

  // erdos-kac
  int n = 0;
  std::optional<std::uint64_t> samples;
  std::string stat = "omega1";
  bool all_degrees = false, summary = false;
  auto* ek_cmd = app.add_subcommand("erdos-kac", "ECDF of (stat - log n)/sqrt(log n) against Phi");
  add_q(ek_cmd);
  ek_cmd->add_option("--n", n, "Degree")->required();
  auto* ek_samples = ek_cmd->add_option("--samples", samples, "Sample size (default: full enumeration)");
  ek_cmd->add_option("--stat", stat, "Statistic")->check(CLI::IsMember({"omega1", "omega"}));
  ek_cmd->add_flag("--all-degrees", all_degrees, "Aggregate degrees 2..n weighted by q^m");
  ek_cmd->add_flag("--summary", summary, "Emit only the KS distance");

  // normal-order
  long double eps = 0.3L;
  auto* no_cmd = app.add_subcommand("normal-order", "Exceptional set for the normal order of omega_1");
  add_q(no_cmd);
  no_cmd->add_option("--n", n, "Degree")->required();
  no_cmd->add_option("--epsilon-prime", eps, "Exponent in (0, 1/2)");
  auto* no_samples = no_cmd->add_option("--samples", samples, "Sample size (default: full enumeration)");

  // variance
  auto* var_cmd = app.add_subcommand("variance", "Sum of (omega_1 - log n)^2 against q^n log n + c3 q^n");
  add_q(var_cmd);
  var_cmd->add_option("--n,--n-range", n_range, "n or A:B")->required();

  // selftest
  bool corrupt = false;
  auto* self_cmd = app.add_subcommand("selftest", "Cross-oracle identity checks");
  self_cmd->add_flag("--corrupt-pi-table", corrupt, "Test hook: perturb pi_2(7) before the Gauss check");

  try {
    app.parse(argc, argv);
    // Seeds only matter for factoring and sampling.
    if (seed_opt->count() && !factor_cmd->parsed() && !(ek_cmd->parsed() && ek_samples->count()) &&
        !(no_cmd->parsed() && no_samples->count()))
      throw CLI::ValidationError("--seed", "only applies to factor and to sampled erdos-kac/normal-order runs");
    if (constants_cmd->parsed() && out.format == "csv" && !app.get_option("--out")->count()) out.format = "json";
    if (constants_cmd->parsed() && out.format != "json") throw CLI::ValidationError("--out", "constants emit JSON only");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kUsage;
  }

  auto fail = [](const char* kind, const std::exception& e, int code) {
    std::cerr << "error: " << kind << ": " << e.what() << "\n";
    return code;
  };

  try {
    if (threads > 0) set_worker_cap(threads);
    const int R = terms > 0 ? terms : default_terms();

    if (field_cmd->parsed()) {
      const auto ctx = parse_field(q_spec);
      std::string modulus;
      for (std::size_t i = 0; i < ctx.modulus().size(); ++i) modulus += (i ? "," : "") + std::to_string(ctx.modulus()[i]);
      Table t{{"p", "e", "q", "modulus"}, {}};
      t.add({str(std::uint64_t{ctx.characteristic()}), str(static_cast<int>(ctx.degree())), str(std::uint64_t{ctx.order()}),
             modulus});
      out.emit(t);
    } else if (factor_cmd->parsed()) {
      const auto ctx = parse_field(q_spec);
      const Poly f = parse_poly(ctx, poly_text);
      Table t{{"irreducible", "multiplicity"}, {}};
      for (const auto& [l, m] : factor(ctx, f, seed).factors) t.add({format_poly(l), str(m)});
      out.emit(t);
    } else if (pi_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      const auto table = prime_counts(q, max_degree);
      Table t{{"degree", "count"}, {}};
      for (int d = 1; d <= max_degree; ++d) t.add({str(d), str(table->count(d))});
      out.emit(t);
    } else if (mertens_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      const auto [lo, hi] = parse_range(n_range);
      if (lo < 1) throw DomainError("n must be >= 1");
      Table t{{"n", "sum", "residual"}, {}};
      for (int m = lo; m <= hi; ++m) t.add({str(m), format_rational(mertens_sum(q, m).exact), str(mertens_residual(q, m, R))});
      out.emit(t);
    } else if (moments_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      const auto [lo, hi] = parse_range(n_range);
      std::optional<FieldContext> ctx;
      if (method == "brute") {
        ctx = parse_field(q_spec);
        checked_count(q, hi);
      }
      const MomentMethod mm = method == "exact" ? MomentMethod::exact
                              : method == "brute" ? MomentMethod::brute
                                                  : MomentMethod::asymptotic;
      Table t{{"n", "exact", "main_term", "residual", "normalized_residual"}, {}};
      for (int m = lo; m <= hi; ++m) {
        const auto r = moment_report(q, m, k, order, mm, ctx ? &*ctx : nullptr);
        t.add({str(m), r.exact ? str(*r.exact) : "", str(r.main_term), r.exact ? str(r.residual) : "",
               r.exact ? str(r.normalized_residual) : ""});
      }
      out.emit(t);
    } else if (census_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      Table t{{"n", "k", "value", "count"}, {}};
      t.add({str(census_n), str(k), str(value), str(count_value_census(q, census_n, k, value))});
      out.emit(t);
    } else if (constants_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      const auto tc = main_term_constants(q, ks, R);
      std::vector<const ConstantValue*> values{&tc.gamma, &tc.c1, &tc.A1, &tc.L2, &tc.L3, &tc.L4, &tc.c2, &tc.c3};
      for (const auto& c : tc.c_prime) values.push_back(&c);
      out.write(constants_json(values));
    } else if (series_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      std::optional<FieldContext> ctx;
      if (compare_brute) {
        ctx = parse_field(q_spec);
        checked_count(q, N, std::uint64_t{1} << 20);
      }
      const auto rows = main_term_residuals(q, g, k, N);
      Table t{{"n", "coeff_num", "coeff_den", "main_term", "normalized_residual"}, {}};
      if (compare_brute) t.columns.insert(t.columns.end(), {"brute_num", "brute_den", "match"});
      for (int m = 1; m <= N; ++m) {
        const auto& r = rows[static_cast<std::size_t>(m)];
        std::vector<std::string> row{str(m), str(r.coeff.get_num()), str(r.coeff.get_den()), str(r.main_term),
                                     str(r.normalized_residual)};
        if (compare_brute) {
          mpq_class sum = 0;
          const std::uint64_t count = checked_count(q, m);
          for (std::uint64_t i = 0; i < count; ++i)
            sum += a_gk_value(factor(*ctx, monic_from_index(*ctx, i, m)), constant_weight(g), k);
          row.insert(row.end(), {str(sum.get_num()), str(sum.get_den()), sum == r.coeff ? "1" : "0"});
        }
        t.add(std::move(row));
      }
      out.emit(t);
    } else if (ek_cmd->parsed()) {
      const auto ctx = parse_field(q_spec);
      const auto mode = sample_mode(samples, seed);
      const Statistic s = parse_stat(stat);
      const auto e = all_degrees ? all_degrees_cdf(ctx, n, s, mode) : empirical_cdf(ctx, n, s, mode);
      if (summary) {
        Table t{{"n", "stat", "provenance", "sample_size", "ks"}, {}};
        t.add({str(n), stat, e.provenance == Provenance::full ? "full" : "sample", str(e.sample_size), str(ks_distance(e))});
        out.emit(t);
      } else {
        Table t{{"a", "ecdf", "phi", "gap"}, {}};
        for (std::size_t i = 0; i < e.points.size(); ++i) {
          const long double phi = phi_cdf(e.points[i]);
          t.add({str(e.points[i]), str(e.cumulative[i]), str(phi), str(std::fabs(e.cumulative[i] - phi))});
        }
        out.emit(t);
      }
    } else if (no_cmd->parsed()) {
      const auto ctx = parse_field(q_spec);
      const auto r = normal_order_report(ctx, n, eps, sample_mode(samples, seed));
      Table t{{"n", "epsilon_prime", "count", "total", "fraction"}, {}};
      t.add({str(r.n), str(r.epsilon_prime), str(r.count), str(r.total), str(r.fraction)});
      out.emit(t);
    } else if (var_cmd->parsed()) {
      const std::uint64_t q = parse_field_order(q_spec);
      const auto [lo, hi] = parse_range(n_range);
      Table t{{"n", "exact", "main_term", "residual", "normalized_residual"}, {}};
      for (int m = lo; m <= hi; ++m) {
        const auto r = variance_report(q, m);
        t.add({str(m), str(r.exact), str(r.main_term), str(r.residual), str(r.normalized_residual)});
      }
      out.emit(t);
    } else if (self_cmd->parsed()) {
      const auto checks = run_selftest({.corrupt_prime_table = corrupt});
      Table t{{"check", "status", "detail"}, {}};
      const SelftestCheck* first_failure = nullptr;
      for (const auto& c : checks) {
        t.add({c.name, c.passed ? "pass" : "fail", c.detail});
        if (!c.passed && !first_failure) first_failure = &c;
      }
      out.emit(t);
      if (first_failure) {
        std::cerr << "error: selftest: " << first_failure->name << ": " << first_failure->detail << "\n";
        return kSelftest;
      }
    }
  } catch (const DomainError& e) {
    return fail("domain", e, kDomain);
  } catch (const CapacityError& e) {
    return fail("capacity", e, kCapacity);
  } catch (const omegak::ParseError& e) {
    return fail("parse", e, kParse);
  } catch (const ConstructionError& e) {
    return fail("construction", e, kConstruction);
  } catch (const std::exception& e) {
    return fail("internal", e, kInternal);
  }
  return kOk;
}
