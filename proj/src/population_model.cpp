#include "sievedyn/population_model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "sievedyn/cycle.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/gap_stream.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

void require_prime_above(std::size_t J, std::uint64_t p) {
  if (p <= J + 1) {
    throw ValidationError("transfer matrix needs p > J+1 (J = " + std::to_string(J) +
                          ", p = " + std::to_string(p) + ")");
  }
}

// Signed (p - J - i) as a BigInt.
BigInt shifted(std::uint64_t p, std::size_t J, std::size_t i) {
  return BigInt(p) - BigInt(J) - BigInt(i);
}

// Common-denominator integer form of a rational vector.
void to_integer_form(const std::vector<Rational>& w, std::vector<BigInt>& num, BigInt& den) {
  den = 1;
  for (const auto& x : w) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  num.clear();
  for (const auto& x : w) {
    num.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
  }
}

// One stage of the integer recurrence. counts[k] holds length j = J + k.
void step_counts(std::vector<BigInt>& counts, std::size_t J, std::uint64_t p) {
  require_prime_above(J, p);
  const std::size_t dim = counts.size();
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t j = J + k;
    counts[k] *= shifted(p, j, 1);
    if (k + 1 < dim) counts[k] += BigInt(k + 1) * counts[k + 1];
  }
}

std::vector<std::uint64_t> primes_after(std::uint64_t from, std::uint64_t to) {
  return from >= to ? std::vector<std::uint64_t>{} : primes_in_range(from + 1, to);
}

}  // namespace

TransferMatrix transfer_matrix(std::size_t J, std::size_t dim, std::uint64_t p) {
  if (dim == 0) throw ValidationError("transfer matrix dimension must be >= 1");
  require_prime_above(J, p);
  const BigInt denom = shifted(p, J, 1);
  TransferMatrix m{J, p, RationalMatrix(dim, dim)};
  for (std::size_t i = 1; i <= dim; ++i) {
    m.entries(i - 1, i - 1) = Rational(shifted(p, J, i), denom);
    if (i < dim) m.entries(i - 1, i) = Rational(BigInt(i), denom);
  }
  return m;
}

EigenSystem pascal_eigensystem(std::size_t dim) {
  if (dim == 0) throw ValidationError("eigensystem dimension must be >= 1");
  EigenSystem es{RationalMatrix(dim, dim), RationalMatrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t m = i; m < dim; ++m) {
      const BigInt c = binomial(m, i);
      es.LT(i, m) = Rational(c);
      es.R(i, m) = Rational((m - i) % 2 == 0 ? c : BigInt(-c));
    }
  }
  return es;
}

std::vector<Rational> eigenvalue_products(std::size_t J, std::size_t dim,
                                          std::span<const std::uint64_t> primes) {
  std::vector<BigInt> num(dim, 1);
  BigInt den = 1;
  for (std::uint64_t p : primes) {
    require_prime_above(J, p);
    for (std::size_t i = 1; i <= dim; ++i) num[i - 1] *= shifted(p, J, i);
    den *= shifted(p, J, 1);
  }
  std::vector<Rational> out;
  for (const auto& n : num) out.emplace_back(n, den);
  return out;
}

RationalMatrix transfer_product(std::size_t J, std::size_t dim,
                                std::span<const std::uint64_t> primes) {
  RationalMatrix out = RationalMatrix::identity(dim);
  for (std::uint64_t p : primes) out = transfer_matrix(J, dim, p).entries * out;
  return out;
}

BigInt population_normalizer(std::size_t J, std::uint64_t p) {
  BigInt out = 1;
  for (std::uint64_t q : primes_in_range(J + 2, p)) out *= (q - J - 1);
  return out;
}

std::uint64_t markov_start_prime(const Constellation& s) {
  std::uint64_t p = 3;
  while (s.span() >= 2 * next_prime_after(p)) p = next_prime_after(p);
  return p;
}

void require_markov_regime(const Constellation& s, std::uint64_t p0) {
  const std::uint64_t p1 = next_prime_after(p0);
  if (s.span() >= 2 * p1) {
    throw ValidationError("Markov regime requires |s| < 2*p1: |s| = " + std::to_string(s.span()) +
                          ", p1 = " + std::to_string(p1) + " (2*p1 = " + std::to_string(2 * p1) +
                          "); start from p0 >= " + std::to_string(markov_start_prime(s)));
  }
}

std::size_t model_dimension(const Constellation& s, std::size_t observed) {
  std::size_t dim = observed;
  try {
    dim = std::max(dim, longest_driving_term(s) - s.length() + 1);
  } catch (const BoundError&) {
    // composition space too large; rely on what the scan observed
  }
  return std::max<std::size_t>(dim, 1);
}

IntegerPopulation to_integer_population(const PopulationCount& pc, std::size_t dim) {
  IntegerPopulation n{pc.s, pc.stage_prime, {}};
  for (std::uint64_t c : pc.counts) n.counts.emplace_back(c);
  if (n.counts.size() < dim) n.counts.resize(dim, BigInt(0));
  return n;
}

IntegerPopulation advance_counts(const IntegerPopulation& n, std::uint64_t p_target) {
  if (p_target < n.stage_prime) throw ValidationError("cannot evolve backwards");
  IntegerPopulation out = n;
  for (std::uint64_t p : primes_after(n.stage_prime, p_target)) {
    step_counts(out.counts, n.s.length(), p);
    out.stage_prime = p;
  }
  return out;
}

RelativePopulation relative_population(const PopulationCount& pc, std::size_t dim) {
  const BigInt norm = population_normalizer(pc.J(), pc.stage_prime);
  RelativePopulation w{pc.s, pc.stage_prime, {}};
  for (std::uint64_t c : pc.counts) w.weights.emplace_back(BigInt(c), norm);
  if (w.weights.size() < dim) w.weights.resize(dim, Rational(0));
  return w;
}

RelativePopulation evolve(const RelativePopulation& w0, std::uint64_t p_target) {
  require_markov_regime(w0.s, w0.stage_prime);
  if (p_target < w0.stage_prime) throw ValidationError("cannot evolve backwards");
  std::vector<BigInt> num;
  BigInt den;
  to_integer_form(w0.weights, num, den);
  const std::size_t J = w0.J();
  std::uint64_t stage = w0.stage_prime;
  for (std::uint64_t p : primes_after(w0.stage_prime, p_target)) {
    step_counts(num, J, p);
    den *= shifted(p, J, 1);
    stage = p;
  }
  RelativePopulation out{w0.s, stage, {}};
  for (const auto& n : num) out.weights.emplace_back(n, den);
  return out;
}

PopulationCount scan_population(const Constellation& s, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw ValidationError("scan stage must be a prime >= 3");
  const std::uint64_t p0 = std::min<std::uint64_t>(p, kMaxBootstrapPrime);
  if (p <= 19) return count_populations(s, build_cycle(p, p0));
  GapStream stream = stream_gaps(p, p0);
  return count_populations(s, stream);
}

RelativePopulation initial_population(const Constellation& s, std::uint64_t p0,
                                      std::uint64_t max_scan_prime) {
  require_markov_regime(s, p0);
  const std::uint64_t scan_stage = markov_start_prime(s);
  if (scan_stage > max_scan_prime) {
    throw BoundError("initial conditions for " + s.to_string() + " need a scan of G(" +
                     std::to_string(scan_stage) + "#), beyond the scan limit " +
                     std::to_string(max_scan_prime));
  }
  const PopulationCount pc = scan_population(s, scan_stage);
  const RelativePopulation w = relative_population(pc, model_dimension(s, pc.counts.size()));
  return evolve(w, p0);
}

Rational lambda_param(std::size_t J, std::uint64_t p0, std::uint64_t pk) {
  if (pk < p0) throw ValidationError("lambda: pk must not precede p0");
  if (pk == p0) return Rational(1);
  const std::uint64_t p1 = next_prime_after(p0);
  if (J + 2 >= p1) {
    throw ValidationError("lambda: need J+2 < p1 (J = " + std::to_string(J) +
                          ", p1 = " + std::to_string(p1) + ")");
  }
  const auto primes = primes_after(p0, pk);
  return eigenvalue_products(J, 2, primes)[1];
}

Rational w_asymptotic_spectral(const RelativePopulation& w0) {
  require_markov_regime(w0.s, w0.stage_prime);
  Rational total = 0;
  for (const auto& w : w0.weights) total += w;
  return total;
}

Rational w_asymptotic_spectral(const Constellation& s, std::uint64_t p0) {
  return w_asymptotic_spectral(initial_population(s, p0));
}

Rational w_asymptotic_closed(const Constellation& s) {
  if (!is_admissible(s)) throw ValidationError(s.to_string() + " is not admissible");
  const std::size_t J = s.length();
  Rational out = 1;
  for (std::uint64_t q : primes_in_range(2, J + 1)) out *= (q - nu(s, q));
  for (std::uint64_t q : q_primes(s)) {
    if (q > J + 1) out *= Rational(BigInt(q - nu(s, q)), BigInt(q - J - 1));
  }
  return out;
}

// -- curve ---------------------------------------------------------------------

PopulationCurve::PopulationCurve(const RelativePopulation& start)
    : s_(start.s), stage_(start.stage_prime) {
  require_markov_regime(start.s, start.stage_prime);
  to_integer_form(start.weights, numerators_, denominator_);
}

double PopulationCurve::lambda() const { return ratio_to_double(lambda_num_, lambda_den_); }

double PopulationCurve::weight(std::size_t i) const {
  return ratio_to_double(numerators_.at(i), denominator_);
}

Rational PopulationCurve::exact_lambda() const { return Rational(lambda_num_, lambda_den_); }

Rational PopulationCurve::exact_weight(std::size_t i) const {
  return Rational(numerators_.at(i), denominator_);
}

void PopulationCurve::advance() {
  const std::uint64_t p = next_prime_after(stage_);
  const std::size_t J = s_.length();
  step_counts(numerators_, J, p);
  denominator_ *= shifted(p, J, 1);
  lambda_num_ *= shifted(p, J, 2);
  lambda_den_ *= shifted(p, J, 1);
  stage_ = p;
}

std::vector<CurvePoint> w_curve(const Constellation& s, std::uint64_t p0, std::uint64_t pk_max,
                                std::size_t stride) {
  if (pk_max < p0) throw ValidationError("curve end precedes p0");
  if (stride == 0) stride = 1;
  PopulationCurve curve(initial_population(s, p0));
  std::vector<CurvePoint> out;
  auto snapshot = [&] {
    CurvePoint pt{curve.stage_prime(), curve.exact_lambda(), {}};
    for (std::size_t i = 0; i < curve.dim(); ++i) pt.weights.push_back(curve.exact_weight(i));
    out.push_back(std::move(pt));
  };
  snapshot();
  std::size_t step = 0;
  while (next_prime_after(curve.stage_prime()) <= pk_max) {
    curve.advance();
    ++step;
    const bool last = next_prime_after(curve.stage_prime()) > pk_max;
    if (step % stride == 0 || last) snapshot();
  }
  return out;
}

void write_curve_csv(std::ostream& out, const Constellation& s, std::uint64_t p0,
                     std::uint64_t pk_max, std::size_t stride) {
  if (pk_max < p0) throw ValidationError("curve end precedes p0");
  if (stride == 0) stride = 1;
  PopulationCurve curve(initial_population(s, p0));
  out << "stage_prime,lambda";
  for (std::size_t i = 0; i < curve.dim(); ++i) out << ",w_" << s.length() + i;
  out << '\n';
  const auto old_precision = out.precision(15);
  auto row = [&] {
    out << curve.stage_prime() << ',' << curve.lambda();
    for (std::size_t i = 0; i < curve.dim(); ++i) out << ',' << curve.weight(i);
    out << '\n';
  };
  row();
  std::size_t step = 0;
  while (next_prime_after(curve.stage_prime()) <= pk_max) {
    curve.advance();
    ++step;
    if (step % stride == 0 || next_prime_after(curve.stage_prime()) > pk_max) row();
  }
  out.precision(old_precision);
}

// -- Hardy-Littlewood ------------------------------------------------------

HardyLittlewoodWeight hl_weight(const Constellation& s, std::uint64_t truncation) {
  if (!is_admissible(s)) throw ValidationError(s.to_string() + " is not admissible");
  const std::size_t J = s.length();
  HardyLittlewoodWeight out;
  out.truncation = truncation;

  Rational H = 1;
  for (std::uint64_t p : primes_in_range(2, J + 1)) {
    Rational ratio(BigInt(p), BigInt(p - 1));
    Rational factor = 1;
    for (std::size_t k = 0; k < J; ++k) factor *= ratio;
    factor *= Rational(BigInt(p - nu(s, p)), BigInt(p - 1));
    H *= factor;
  }
  for (std::uint64_t p : q_primes(s)) {
    if (p > J + 1) H *= Rational(BigInt(p - nu(s, p)), BigInt(p - J - 1));
  }
  out.H = H;

  long double log_c = 0.0L;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(truncation))) {
    if (p <= J + 1) continue;
    const long double x = 1.0L / static_cast<long double>(p - 1);
    log_c += static_cast<long double>(J) * std::log1p(x) +
             std::log1p(-static_cast<long double>(J) * x);
  }
  out.c_truncated = static_cast<double>(std::exp(log_c));
  out.g_truncated = out.c_truncated * to_double(H);
  // Each omitted factor is 1 - J(J+1)/(2p^2) + O(p^-3); sum_{p>P} p^-2 ~ 1/(P ln P).
  const double P = static_cast<double>(truncation);
  out.tail_bound = static_cast<double>(J * (J + 1)) / (2.0 * P * std::log(P));
  return out;
}

nlohmann::json asymptotics_report(const Constellation& s, std::uint64_t truncation) {
  const HardyLittlewoodWeight hl = hl_weight(s, truncation);
  nlohmann::json j;
  j["constellation"] = s.to_string();
  j["J"] = s.length();
  try {
    j["J1"] = longest_driving_term(s);
  } catch (const BoundError&) {
    j["J1"] = nullptr;
  }
  j["Q"] = q_of(s).str();
  j["w_inf"] = to_string(w_asymptotic_closed(s));
  j["H"] = to_string(hl.H);
  j["G_truncated"] = hl.g_truncated;
  j["tail_bound"] = hl.tail_bound;
  j["truncation"] = truncation;
  return j;
}

}  // namespace sievedyn
