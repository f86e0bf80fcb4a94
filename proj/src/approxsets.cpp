#include "dioph/approxsets.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dioph/audit.hpp"
#include "dioph/numtheory.hpp"

namespace dioph {

namespace {

// psi values are evaluated at a fixed width so they never depend on the
// user-selected working precision.
constexpr unsigned kPsiEvalBits = 192;

const Rational kHalf(1, 2);

Rational snap_to_dyadic(const Real& x) {
  Real scaled(x);
  mpfr_mul_2ui(scaled.get(), scaled.get(), kPsiDyadicBits, MPFR_RNDN);
  Integer num;
  mpfr_get_z(num.get_mpz_t(), scaled.get(), MPFR_RNDN);
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kPsiDyadicBits);
  return make_rational(num, den);
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Rational integer_power(std::uint64_t n, const Rational& exponent) {
  Integer base = to_integer(n);
  Integer e = exponent.get_num();
  const bool negative = e < 0;
  if (negative) e = -e;
  Integer value;
  mpz_pow_ui(value.get_mpz_t(), base.get_mpz_t(), e.get_ui());
  return negative ? make_rational(Integer(1), value) : Rational(value);
}

// Sign of a value that is formally infinite: c times +infinity.
Rational clamp_value(const Rational& raw, bool clamp) {
  if (raw >= 0 && raw <= kHalf) return raw;
  if (!clamp) throw std::domain_error("psi value " + to_string(raw) + " outside [0, 1/2]");
  return raw < 0 ? Rational(0) : kHalf;
}

Rational infinite_value(const Rational& c, bool clamp) {
  if (c == 0) return Rational(0);
  if (!clamp) throw std::domain_error("psi value is infinite");
  return c > 0 ? kHalf : Rational(0);
}

std::map<std::string, std::string> parse_key_values(std::string_view body) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    const std::string_view item =
        body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw std::invalid_argument("expected key=value in '" + std::string(body) + "'");
    out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::string& require_key(const std::map<std::string, std::string>& kv, const std::string& key,
                               std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("unknown psi parameter '" + k + "'");
  }
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("missing psi parameter '" + key + "'");
  return it->second;
}

std::uint64_t parse_natural(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty natural number");
  std::uint64_t v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("malformed natural '" + std::string(text) + "'");
    const std::uint64_t digit = static_cast<std::uint64_t>(ch - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
      throw std::invalid_argument("natural out of range '" + std::string(text) + "'");
    v = v * 10 + digit;
  }
  return v;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

TablePsi read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open psi table '" + path + "'");
  TablePsi table;
  table.source = path;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("psi table row without comma: " + line);
    const std::string key = trim(line.substr(0, comma));
    const std::string value = trim(line.substr(comma + 1));
    if (first && !key.empty() && (key.front() < '0' || key.front() > '9')) {
      first = false;  // header row
      continue;
    }
    first = false;
    const std::uint64_t n = parse_natural(key);
    if (n == 0) throw std::invalid_argument("psi table index must be >= 1");
    table.values[n] = parse_rational(value);
  }
  return table;
}

std::string join_naturals(const std::set<std::uint64_t>& values) {
  std::string out;
  for (auto v : values) {
    if (!out.empty()) out += ';';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

PsiSpec PsiSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("psi spec needs 'family:params'");
  const std::string_view family = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (family == "const") return PsiSpec(ConstPsi{parse_rational(body)});
  if (family == "primes") return PsiSpec(PrimesOnlyPsi{parse_rational(body)});
  if (family == "logpow") {
    const auto kv = parse_key_values(body);
    return PsiSpec(LogPowPsi{parse_rational(require_key(kv, "c", {"c", "beta"})),
                             parse_rational(require_key(kv, "beta", {"c", "beta"}))});
  }
  if (family == "power") {
    const auto kv = parse_key_values(body);
    return PsiSpec(PowerPsi{parse_rational(require_key(kv, "c", {"c", "alpha"})),
                            parse_rational(require_key(kv, "alpha", {"c", "alpha"}))});
  }
  if (family == "indicator") {
    const auto kv = parse_key_values(body);
    IndicatorPsi ind{{}, parse_rational(require_key(kv, "c", {"c", "support"}))};
    const std::string& list = require_key(kv, "support", {"c", "support"});
    std::size_t start = 0;
    while (start <= list.size()) {
      const std::size_t semi = list.find(';', start);
      const std::uint64_t v = parse_natural(list.substr(start, semi == std::string::npos ? semi : semi - start));
      if (v == 0) throw std::invalid_argument("indicator support must be >= 1");
      ind.support.insert(v);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return PsiSpec(std::move(ind));
  }
  if (family == "table") {
    if (body.empty() || body.front() != '@') throw std::invalid_argument("table psi expects table:@FILE");
    PsiSpec spec(read_table(std::string(body.substr(1))));
    return spec;
  }
  throw std::invalid_argument("unknown psi family '" + std::string(family) + "'");
}

std::string PsiSpec::to_string() const {
  using dioph::to_string;
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstPsi>) return "const:" + to_string(f.c);
        if constexpr (std::is_same_v<T, LogPowPsi>)
          return "logpow:c=" + to_string(f.c) + ",beta=" + to_string(f.beta);
        if constexpr (std::is_same_v<T, PowerPsi>)
          return "power:c=" + to_string(f.c) + ",alpha=" + to_string(f.alpha);
        if constexpr (std::is_same_v<T, TablePsi>) return "table:@" + f.source;
        if constexpr (std::is_same_v<T, PrimesOnlyPsi>) return "primes:" + to_string(f.c);
        if constexpr (std::is_same_v<T, IndicatorPsi>)
          return "indicator:c=" + to_string(f.c) + ",support=" + join_naturals(f.support);
      },
      family_);
}

PsiSpec::PsiSpec(Family family, bool clamp) : family_(std::move(family)), clamp_(clamp) {
  if (const auto* table = std::get_if<TablePsi>(&family_))
    for (const auto& [n, v] : table->values)
      if (v != 0) table_support_.insert(n);
}

const std::set<std::uint64_t>* PsiSpec::finite_support() const {
  if (const auto* ind = std::get_if<IndicatorPsi>(&family_)) return &ind->support;
  if (std::holds_alternative<TablePsi>(family_)) return &table_support_;
  return nullptr;
}

Rational PsiSpec::operator()(std::uint64_t n) const {
  if (n == 0) throw std::domain_error("psi(0) is undefined");
  return std::visit(
      [&](const auto& f) -> Rational {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstPsi>) {
          return clamp_value(f.c, clamp_);
        } else if constexpr (std::is_same_v<T, LogPowPsi>) {
          if (n == 1) {
            if (f.beta > 0) return Rational(0);
            if (f.beta == 0) return clamp_value(f.c, clamp_);
            return infinite_value(f.c, clamp_);
          }
          Real value = pow(ln_of(n, kPsiEvalBits), f.beta) * Real(f.c, kPsiEvalBits);
          return clamp_value(snap_to_dyadic(value), clamp_);
        } else if constexpr (std::is_same_v<T, PowerPsi>) {
          if (is_integral(f.alpha)) return clamp_value(f.c * integer_power(n, f.alpha), clamp_);
          Real value = pow(Real::from_uint(n, kPsiEvalBits), f.alpha) * Real(f.c, kPsiEvalBits);
          return clamp_value(snap_to_dyadic(value), clamp_);
        } else if constexpr (std::is_same_v<T, TablePsi>) {
          const auto it = f.values.find(n);
          return it == f.values.end() ? Rational(0) : clamp_value(it->second, clamp_);
        } else if constexpr (std::is_same_v<T, PrimesOnlyPsi>) {
          return prime_table().is_prime(n) ? clamp_value(f.c, clamp_) : Rational(0);
        } else {
          return f.support.contains(n) ? clamp_value(f.c, clamp_) : Rational(0);
        }
      },
      family_);
}

Rational eval_psi(const PsiSpec& psi, std::uint64_t n) { return psi(n); }

ReductionPolicy ReductionPolicy::log_power(Rational eps) {
  if (eps <= 0) throw std::invalid_argument("log policy exponent must be positive");
  return ReductionPolicy(Kind::log_power, std::move(eps), 0);
}

ReductionPolicy ReductionPolicy::parse(std::string_view text) {
  if (text == "full") return full();
  if (text == "coprime") return coprime();
  if (text.starts_with("log:")) return log_power(parse_rational(text.substr(4)));
  if (text.starts_with("cut:")) return fixed_cut(parse_natural(text.substr(4)));
  throw std::invalid_argument("unknown reduction policy '" + std::string(text) + "'");
}

std::string ReductionPolicy::to_string() const {
  switch (kind_) {
    case Kind::full: return "full";
    case Kind::coprime: return "coprime";
    case Kind::log_power: return "log:" + dioph::to_string(eps_);
    case Kind::fixed_cut: return "cut:" + std::to_string(cut_);
  }
  return {};
}

Real log_power(std::uint64_t n, const Rational& eps) { return pow(ln_of(n), eps); }

std::uint64_t ReductionPolicy::dcut(std::uint64_t n) const {
  if (n == 0) throw std::domain_error("dcut(0)");
  switch (kind_) {
    case Kind::full: return n;
    case Kind::coprime: return 1;
    case Kind::fixed_cut: return std::max<std::uint64_t>(cut_, 1);
    case Kind::log_power: break;
  }
  if (n == 1) return 1;
  const Real d = dioph::log_power(n, eps_);
  Integer cut = floor_integer(d);
  if (near_integer(d)) {
    Real nearest(d.precision());
    mpfr_rint(nearest.get(), d.get(), MPFR_RNDN);
    const Integer rounded = floor_integer(nearest);
    if (rounded > cut) cut = rounded;
    audit::warn("dcut near-tie: (ln " + std::to_string(n) + ")^" + dioph::to_string(eps_) + " = " +
                d.to_string() + ", resolved to " + dioph::to_string(cut));
  }
  return std::max<std::uint64_t>(cut.get_ui(), 1);
}

std::vector<std::uint64_t> SupportSet::members() const {
  std::vector<std::uint64_t> out;
  out.reserve(cardinality);
  for (std::uint64_t a = 1; a <= n; ++a)
    if (std::gcd(a, n) <= cut) out.push_back(a);
  return out;
}

SupportSet support(std::uint64_t n, std::uint64_t cut) {
  if (n == 0) throw std::domain_error("support(0, cut)");
  if (cut == 0) throw std::domain_error("support cutoff must be >= 1");
  std::uint64_t count = 0;
  for (auto d : divisors_up_to(n, cut)) count += euler_phi(n / d);
  return SupportSet{n, cut, count};
}

CircleIntervalSet build_E(std::uint64_t n, const PsiSpec& psi, const ReductionPolicy& policy) {
  const Rational value = psi(n);
  if (value == 0) return {};
  const Rational radius = value / to_rational(n);
  const Rational step = make_rational(Integer(1), to_integer(n));
  std::vector<Arc> raw;
  for (auto a : support(n, policy.dcut(n)).members()) {
    const Rational center = to_rational(a) * step;
    raw.push_back({center - radius, center + radius});
  }
  return CircleIntervalSet::normalize(std::move(raw));
}

Rational measure_E(std::uint64_t n, const PsiSpec& psi, const ReductionPolicy& policy) {
  const Rational value = psi(n);
  if (value == 0) return Rational(0);
  const SupportSet s = support(n, policy.dcut(n));
  return Rational(2) * value * make_rational(to_integer(s.cardinality), to_integer(n));
}

PsiDiagnostics psi_diagnostics(const PsiSpec& psi, std::uint64_t N, const Rational& eps) {
  if (N < 2) throw std::domain_error("psi_diagnostics needs N >= 2");
  std::vector<Rational> plain;
  std::vector<Rational> weighted;
  plain.reserve(N);
  weighted.reserve(N);
  Real log_weighted(working_precision());
  for (std::uint64_t n = 2; n <= N; ++n) {
    const Rational v = psi(n);
    if (v == 0) continue;
    plain.push_back(v);
    weighted.push_back(v * make_rational(to_integer(euler_phi(n)), to_integer(n)));
    log_weighted += Real(v) / log_power(n, eps);
  }
  return PsiDiagnostics{N, eps, exact_sum(std::move(plain)), exact_sum(std::move(weighted)),
                        std::move(log_weighted)};
}

}  // namespace dioph
