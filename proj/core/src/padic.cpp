#include "tdlc/padic.hpp"

#include <sstream>
#include <stdexcept>

namespace tdlc {

namespace {

int integer_valuation(Integer x, std::int64_t p) {
  int v = 0;
  const Integer pp = p;
  while (x % pp == 0) {
    x /= pp;
    ++v;
  }
  return v;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

nlohmann::json rational_json(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1
             ? nlohmann::json(boost::multiprecision::numerator(x).str())
             : nlohmann::json(x.str());
}

nlohmann::json optional_json(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json("inf");
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

std::optional<int> valuation(const Rational& x, std::int64_t p) {
  require_prime(p);
  if (x == 0) return std::nullopt;
  return integer_valuation(boost::multiprecision::numerator(x), p) -
         integer_valuation(boost::multiprecision::denominator(x), p);
}

Rational prime_power(std::int64_t p, int e) {
  Integer base = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? Rational(base) : Rational(Integer(1), base);
}

int ceil_third(int n) { return n >= 0 ? (n + 2) / 3 : -((-n) / 3); }

// -------------------------------------------------------------- PAdicRational

PAdicRational::PAdicRational(Rational value, std::int64_t p) : value_(std::move(value)), p_(p) {
  require_prime(p);
}

PAdicRational PAdicRational::operator+(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("prime mismatch");
  return {value_ + o.value_, p_};
}

PAdicRational PAdicRational::operator-(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("prime mismatch");
  return {value_ - o.value_, p_};
}

PAdicRational PAdicRational::operator*(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("prime mismatch");
  return {value_ * o.value_, p_};
}

PAdicRational PAdicRational::operator/(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("prime mismatch");
  if (o.value_ == 0) throw std::invalid_argument("division by zero");
  return {value_ / o.value_, p_};
}

// ----------------------------------------------------------------- ProjMatrix

ProjMatrix::ProjMatrix(Rational a, Rational b, Rational c, Rational d, std::int64_t p)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), p_(p) {
  require_prime(p);
  if (determinant() == 0) throw std::invalid_argument("singular matrix");
}

ProjMatrix ProjMatrix::identity(std::int64_t p) { return {1, 0, 0, 1, p}; }

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  if (o.p_ != p_) throw std::invalid_argument("prime mismatch");
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_, p_};
}

ProjMatrix ProjMatrix::inverse() const {
  const Rational det = determinant();
  return {d_ / det, -b_ / det, -c_ / det, a_ / det, p_};
}

ProjMatrix ProjMatrix::scaled(const Rational& s) const {
  if (s == 0) throw std::invalid_argument("zero scalar");
  return {a_ * s, b_ * s, c_ * s, d_ * s, p_};
}

ProjMatrix ProjMatrix::canonical() const {
  std::optional<int> m;
  for (const auto* x : {&a_, &b_, &c_, &d_}) {
    auto v = valuation(*x, p_);
    if (v && (!m || *v < *m)) m = v;
  }
  const ProjMatrix integral = scaled(prime_power(p_, -*m));
  for (const auto* x : {&integral.a_, &integral.b_, &integral.c_, &integral.d_}) {
    if (valuation(*x, p_) == 0) return integral.scaled(1 / *x);
  }
  throw std::logic_error("canonical: no unit entry after scaling");
}

std::string ProjMatrix::to_string() const {
  std::ostringstream os;
  os << '(' << a_ << ' ' << b_ << "; " << c_ << ' ' << d_ << ')';
  return os.str();
}

ProjMatrix cartan_rep(int n, std::int64_t p) {
  if (n < 0) throw std::invalid_argument("cartan_rep: n must be >= 0");
  return ProjMatrix(prime_power(p, n), 0, 0, 1, p).canonical();
}

ProjMatrix perturbed_rep(int n, std::int64_t p) {
  if (n < 1) throw std::invalid_argument("perturbed_rep: n must be >= 1");
  return {prime_power(p, n), 0, prime_power(p, ceil_third(n)), 1, p};
}

ProjMatrix conjugate(const ProjMatrix& g, const ProjMatrix& h) {
  return (g * h * g.inverse()).canonical();
}

ProjMatrix conjugation_closed_form(const ProjMatrix& h, int n) {
  const std::int64_t p = h.prime();
  const int m = ceil_third(n);
  const Rational& a = h.a();
  const Rational& b = h.b();
  const Rational& c = h.c();
  const Rational& d = h.d();
  return {a - b * prime_power(p, m), b * prime_power(p, n),
          (a - d) * prime_power(p, m - n) + c * prime_power(p, -n) - b * prime_power(p, 2 * m - n),
          b * prime_power(p, m) + d, p};
}

bool conjugation_formula_check(const ProjMatrix& h, int n) {
  const auto hn = perturbed_rep(n, h.prime());
  return hn * h * hn.inverse() == conjugation_closed_form(h, n);
}

std::optional<int> distance_to_identity(const ProjMatrix& m) {
  const auto c = m.canonical();
  std::optional<int> out;
  for (const Rational& x : {Rational(c.a() - 1), c.b(), c.c(), Rational(c.d() - 1)}) {
    auto v = valuation(x, m.prime());
    if (v && (!out || *v < *out)) out = v;
  }
  return out;
}

UnipotentTable unipotent_contraction_check(int n_max, std::int64_t p) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const ProjMatrix u(1, 1, 0, 1, p);
  UnipotentTable t;
  t.all_equal_n = true;
  for (int n = 0; n <= n_max; ++n) {
    const auto gn = cartan_rep(n, p);
    auto dist = distance_to_identity(conjugate(gn, u));
    t.rows.push_back({n, dist});
    if (dist != n) t.all_equal_n = false;
  }
  return t;
}

PerturbedReport perturbed_triviality_evidence(const ProjMatrix& h, int n_max) {
  if (!distance_to_identity(h)) {
    throw std::invalid_argument("h is the identity in PGL2; no evidence to give");
  }
  const std::int64_t p = h.prime();
  const auto vad = valuation(h.a() - h.d(), p);
  const auto vc = valuation(h.c(), p);
  const auto vb = valuation(h.b(), p);
  PerturbedReport r;
  r.all_within_bound = true;
  for (int n = 1; n <= n_max; ++n) {
    const int m = ceil_third(n);
    const auto hn = perturbed_rep(n, p);
    const auto conj = hn * h * hn.inverse();
    PerturbedRow row;
    row.n = n;
    row.bottom_left = valuation(conj.c(), p);
    for (auto term : {vad ? std::optional<int>(*vad + m - n) : std::nullopt,
                      vc ? std::optional<int>(*vc - n) : std::nullopt,
                      vb ? std::optional<int>(*vb + 2 * m - n) : std::nullopt}) {
      if (term && (!row.term_minimum || *term < *row.term_minimum)) row.term_minimum = term;
    }
    row.distance = distance_to_identity(conj);
    row.within_bound = row.bottom_left && *row.bottom_left <= -(n / 3);
    if (!row.within_bound) r.all_within_bound = false;
    r.rows.push_back(row);
  }
  r.diverges = r.rows.size() > 3;
  for (std::size_t i = 3; i < r.rows.size(); ++i) {
    const auto& now = r.rows[i].bottom_left;
    const auto& before = r.rows[i - 3].bottom_left;
    if (!now || !before || *now > *before - 1) r.diverges = false;
  }
  return r;
}

ProjMatrix random_matrix(std::mt19937_64& rng, std::int64_t p, int entry_bound) {
  std::uniform_int_distribution<int> num(-entry_bound, entry_bound);
  std::uniform_int_distribution<int> den(1, entry_bound);
  while (true) {
    Rational e[4];
    for (auto& x : e) x = Rational(num(rng), den(rng));
    if (e[0] * e[3] - e[1] * e[2] != 0) return {e[0], e[1], e[2], e[3], p};
  }
}

nlohmann::json to_json(const ProjMatrix& m) {
  return {{"p", m.prime()},
          {"entries",
           {{rational_json(m.a()), rational_json(m.b())},
            {rational_json(m.c()), rational_json(m.d())}}}};
}

nlohmann::json to_json(const UnipotentTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"distance", optional_json(r.distance)}});
  return {{"rows", rows}, {"all_equal_n", t.all_equal_n}};
}

nlohmann::json to_json(const PerturbedReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"bottom_left_valuation", optional_json(row.bottom_left)},
                    {"term_minimum", optional_json(row.term_minimum)},
                    {"distance", optional_json(row.distance)},
                    {"within_bound", row.within_bound}});
  }
  return {{"rows", rows}, {"diverges", r.diverges}, {"all_within_bound", r.all_within_bound}};
}

}  // namespace tdlc
