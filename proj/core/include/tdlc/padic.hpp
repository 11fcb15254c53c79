#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace tdlc {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

bool is_prime(std::int64_t p);

/// Exact p-adic valuation; nullopt stands for +infinity (x = 0).
std::optional<int> valuation(const Rational& x, std::int64_t p);

/// p^e for any integer e.
Rational prime_power(std::int64_t p, int e);

/// A rational together with the prime it is read at.
class PAdicRational {
 public:
  PAdicRational(Rational value, std::int64_t p);

  const Rational& value() const { return value_; }
  std::int64_t prime() const { return p_; }
  std::optional<int> valuation() const { return tdlc::valuation(value_, p_); }

  PAdicRational operator+(const PAdicRational& o) const;
  PAdicRational operator-(const PAdicRational& o) const;
  PAdicRational operator*(const PAdicRational& o) const;
  PAdicRational operator/(const PAdicRational& o) const;
  friend bool operator==(const PAdicRational&, const PAdicRational&) = default;

 private:
  Rational value_;
  std::int64_t p_;
};

/// A nonsingular 2x2 rational matrix read in PGL_2(Q_p).
class ProjMatrix {
 public:
  ProjMatrix(Rational a, Rational b, Rational c, Rational d, std::int64_t p);

  static ProjMatrix identity(std::int64_t p);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  std::int64_t prime() const { return p_; }
  Rational determinant() const { return a_ * d_ - b_ * c_; }

  /// Matrix product of the representatives (no rescaling).
  ProjMatrix operator*(const ProjMatrix& o) const;
  /// The exact matrix inverse.
  ProjMatrix inverse() const;
  ProjMatrix scaled(const Rational& s) const;

  /// Scaled by p^-m, m the minimal entry valuation, then divided by the first
  /// p-unit entry in the order a, b, c, d.
  ProjMatrix canonical() const;
  bool projectively_equal(const ProjMatrix& o) const { return canonical() == o.canonical(); }

  friend bool operator==(const ProjMatrix&, const ProjMatrix&) = default;
  std::string to_string() const;

 private:
  Rational a_, b_, c_, d_;
  std::int64_t p_;
};

/// g^n = diag(p^n, 1).
ProjMatrix cartan_rep(int n, std::int64_t p);
/// h_n = g^n k_n = (p^n 0; p^ceil(n/3) 1).
ProjMatrix perturbed_rep(int n, std::int64_t p);
/// g h g^-1 in canonical form.
ProjMatrix conjugate(const ProjMatrix& g, const ProjMatrix& h);

int ceil_third(int n);

/// The closed form of h_n h h_n^-1 in the entries of h.
ProjMatrix conjugation_closed_form(const ProjMatrix& h, int n);
/// h_n h h_n^-1 computed by multiplication equals the closed form entry by entry.
bool conjugation_formula_check(const ProjMatrix& h, int n);

/// Largest k with m = id mod p^k after canonical scaling; nullopt when m is
/// projectively the identity.
std::optional<int> distance_to_identity(const ProjMatrix& m);

struct UnipotentRow {
  int n = 0;
  std::optional<int> distance;
};

struct UnipotentTable {
  std::vector<UnipotentRow> rows;
  bool all_equal_n = false;
};

/// n -> distance_to_identity(g^n u g^-n) for u = (1 1; 0 1), n = 0..N.
UnipotentTable unipotent_contraction_check(int n_max, std::int64_t p);

struct PerturbedRow {
  int n = 0;
  /// Valuation of the bottom-left entry of h_n h h_n^-1 (exact product).
  std::optional<int> bottom_left;
  /// min(v(a-d) + ceil(n/3) - n, v(c) - n, v(b) + 2 ceil(n/3) - n)
  std::optional<int> term_minimum;
  std::optional<int> distance;
  /// bottom_left <= -floor(n/3)
  bool within_bound = false;
};

struct PerturbedReport {
  std::vector<PerturbedRow> rows;
  /// bottom_left(n) <= bottom_left(n-3) - 1 for every n > 3, so the
  /// valuations are unbounded below.
  bool diverges = false;
  bool all_within_bound = false;
};

/// Throws std::invalid_argument when h is projectively the identity.
PerturbedReport perturbed_triviality_evidence(const ProjMatrix& h, int n_max);

/// A nonsingular matrix with small integer entries, for sampling.
ProjMatrix random_matrix(std::mt19937_64& rng, std::int64_t p, int entry_bound = 20);

nlohmann::json to_json(const ProjMatrix& m);
nlohmann::json to_json(const UnipotentTable& t);
nlohmann::json to_json(const PerturbedReport& r);

}  // namespace tdlc
