#pragma once

// Exact Markov-chain model for the populations of a constellation s and its
// driving terms across the stages of the sieve.
//
// Once |s| < 2 p_1, every fusion of an instance lands in a separate image, so
// a driving term of length j loses its j+1 fusions independently: j+1-J of
// them are interior (the image drops to length j-1) and J+1 are boundary
// (the image is destroyed). In integer form, for each new prime p:
//
//     n_j <- (p - j - 1) * n_j + (j + 1 - J) * n_{j+1}
//
// Dividing by prod_{J+1 < q <= p} (q - J - 1) gives the relative weights
// w_{s,j}, evolved by the banded matrix M_J(p). Index i = 1 (row 0 here)
// is the constellation itself, i = j - J + 1 in general.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "sievedyn/arith.hpp"
#include "sievedyn/constellation.hpp"
#include "sievedyn/populations.hpp"
#include "sievedyn/rational_matrix.hpp"

namespace sievedyn {

struct TransferMatrix {
  std::size_t J = 0;
  std::uint64_t prime = 0;
  RationalMatrix entries;

  std::size_t dim() const { return entries.rows(); }
};

/// M_J(p): diagonal (p-J-i)/(p-J-1), super-diagonal i/(p-J-1), i = 1..dim.
/// Rejects p <= J+1.
TransferMatrix transfer_matrix(std::size_t J, std::size_t dim, std::uint64_t p);

/// Eigenvectors of every M_J(p): LT[i][m] = C(m, i) (0-based) and its inverse
/// R[i][m] = (-1)^(m-i) C(m, i).
struct EigenSystem {
  RationalMatrix R;
  RationalMatrix LT;
};

EigenSystem pascal_eigensystem(std::size_t dim);

/// a_i^k = prod over `primes` of (p-J-i)/(p-J-1), for i = 1..dim.
std::vector<Rational> eigenvalue_products(std::size_t J, std::size_t dim,
                                          std::span<const std::uint64_t> primes);

/// M_J(p_k) * ... * M_J(p_1) for primes = {p_1, ..., p_k}.
RationalMatrix transfer_product(std::size_t J, std::size_t dim,
                                std::span<const std::uint64_t> primes);

/// prod_{J+1 < q <= p} (q - J - 1).
BigInt population_normalizer(std::size_t J, std::uint64_t p);

/// Smallest bootstrap-capable prime p >= 3 with |s| < 2 * next_prime(p).
std::uint64_t markov_start_prime(const Constellation& s);

/// Throws ValidationError unless |s| < 2 p_1 for p_1 = next prime after p0.
void require_markov_regime(const Constellation& s, std::uint64_t p0);

/// Exact integer populations n_{s,j}(p#), j = J .. J + counts.size() - 1.
struct IntegerPopulation {
  Constellation s;
  std::uint64_t stage_prime = 0;
  std::vector<BigInt> counts;
};

IntegerPopulation to_integer_population(const PopulationCount& pc, std::size_t dim = 0);

/// Applies the integer recurrence for every prime in (stage, p_target].
IntegerPopulation advance_counts(const IntegerPopulation& n, std::uint64_t p_target);

struct RelativePopulation {
  Constellation s;
  std::uint64_t stage_prime = 0;
  std::vector<Rational> weights;

  std::size_t J() const { return s.length(); }
  std::size_t dim() const { return weights.size(); }
  const Rational& w_J() const { return weights.front(); }
};

/// w_{s,j} = n_{s,j} / population_normalizer(J, p), padded with zeros to dim.
RelativePopulation relative_population(const PopulationCount& pc, std::size_t dim = 0);

/// Driving-term dimension J1 - J + 1 used for s; falls back to `observed`
/// when the enumeration is too large.
std::size_t model_dimension(const Constellation& s, std::size_t observed = 1);

/// w_s(p_target#) = M_J^k w_s(p0#), exact. Requires the Markov regime at w0's
/// stage.
RelativePopulation evolve(const RelativePopulation& w0, std::uint64_t p_target);

/// Counts s and its driving terms in G(p#), materializing up to 19# and
/// streaming beyond.
PopulationCount scan_population(const Constellation& s, std::uint64_t p);

/// Relative populations at p0 for s, taken from a scan at
/// markov_start_prime(s) and carried to p0 exactly. Throws BoundError when
/// the scan stage exceeds max_scan_prime.
RelativePopulation initial_population(const Constellation& s, std::uint64_t p0,
                                      std::uint64_t max_scan_prime = 23);

/// lambda = a_2^k = prod_{p_1 <= q <= pk} (q-J-2)/(q-J-1); 1 when pk == p0.
Rational lambda_param(std::size_t J, std::uint64_t p0, std::uint64_t pk);

/// l_1 = sum_j w_{s,j}(p0#).
Rational w_asymptotic_spectral(const RelativePopulation& w0);
Rational w_asymptotic_spectral(const Constellation& s, std::uint64_t p0);

/// prod_{q <= J+1} (q - nu_q) * prod_{q | Q, q > J+1} (q - nu_q)/(q - J - 1).
Rational w_asymptotic_closed(const Constellation& s);

/// Stage-by-stage walk of the model starting at w0 (lambda = 1). Holds
/// integer numerators over a shared denominator; exact values are formed on
/// request.
class PopulationCurve {
 public:
  explicit PopulationCurve(const RelativePopulation& start);

  std::uint64_t stage_prime() const { return stage_; }
  std::size_t dim() const { return numerators_.size(); }

  double lambda() const;
  double weight(std::size_t i) const;
  Rational exact_lambda() const;
  Rational exact_weight(std::size_t i) const;

  /// Moves to the next prime stage.
  void advance();

 private:
  Constellation s_;
  std::uint64_t stage_;
  std::vector<BigInt> numerators_;
  BigInt denominator_;
  BigInt lambda_num_ = 1;
  BigInt lambda_den_ = 1;
};

struct CurvePoint {
  std::uint64_t stage_prime = 0;
  Rational lambda;
  std::vector<Rational> weights;
};

/// Exact curve points from p0 to pk_max, every `stride`-th stage plus both
/// endpoints. Exact points grow in size; use PopulationCurve for long walks.
std::vector<CurvePoint> w_curve(const Constellation& s, std::uint64_t p0, std::uint64_t pk_max,
                                std::size_t stride = 1);

/// CSV "stage_prime,lambda,w_J,w_{J+1},..." for a curve walk.
void write_curve_csv(std::ostream& out, const Constellation& s, std::uint64_t p0,
                     std::uint64_t pk_max, std::size_t stride = 1);

struct HardyLittlewoodWeight {
  Rational H;
  double c_truncated = 0.0;   // C_{J+1} over primes <= truncation
  double g_truncated = 0.0;   // C_{J+1} * H
  double tail_bound = 0.0;    // first-order relative error of the truncation
  std::uint64_t truncation = 0;
};

/// H(s) exactly, and G(s) = C_{J+1} H(s) with C truncated at the bound.
HardyLittlewoodWeight hl_weight(const Constellation& s, std::uint64_t truncation = 1'000'000);

/// {constellation, J, J1, Q, w_inf, H, G_truncated, tail_bound}.
nlohmann::json asymptotics_report(const Constellation& s, std::uint64_t truncation = 1'000'000);

}  // namespace sievedyn
