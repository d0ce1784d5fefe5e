#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "linext/errors.hpp"

namespace linext {

/// Continued fraction [a0; a1, ..., as] with a0 >= 0 and ai >= 1 for i >= 1,
/// canonical (last quotient > 1 when s >= 1).
struct CFExpansion {
  std::vector<BigCount> quotients;

  Ratio value() const;
  BigCount qsum() const {
    BigCount s = 0;
    for (const auto& a : quotients) s += a;
    return s;
  }

  /// Small-integer view for the poset constructions.
  std::vector<long> quotients_as_long() const {
    std::vector<long> out;
    out.reserve(quotients.size());
    for (const auto& a : quotients) {
      if (!a.fits_slong_p()) throw cap_exceeded("cf quotient exceeds machine range");
      out.push_back(a.get_si());
    }
    return out;
  }
};

/// Euclidean-algorithm quotients of num/den after gcd normalization.
/// Canonical: the last quotient is > 1 unless the expansion is a single term.
inline CFExpansion cf_expand(const BigCount& num, const BigCount& den) {
  if (num < 0 || den < 1) throw precondition_violated("cf_expand: need num >= 0, den >= 1");
  BigCount g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigCount a = num / g, b = den / g;
  CFExpansion cf;
  while (b != 0) {
    BigCount q = a / b;  // floor, operands nonnegative
    cf.quotients.push_back(q);
    BigCount r = a - q * b;
    a = b;
    b = r;
  }
  if (cf.quotients.empty()) cf.quotients.push_back(0);  // num == 0
  return cf;
}

/// Exact value of [a0; a1, ..., as] by the convergent recurrence.  Accepts
/// the non-canonical trailing-1 form as well.
inline Ratio cf_value(const std::vector<BigCount>& quotients) {
  if (quotients.empty()) throw precondition_violated("cf_value: empty quotient list");
  if (quotients[0] < 0) throw precondition_violated("cf_value: a0 must be >= 0");
  for (std::size_t i = 1; i < quotients.size(); ++i)
    if (quotients[i] < 1) throw precondition_violated("cf_value: quotients a1.. must be >= 1");
  BigCount p0 = 1, q0 = 0;  // convergents: p_{-1}/q_{-1}
  BigCount p1 = quotients[0], q1 = 1;
  for (std::size_t i = 1; i < quotients.size(); ++i) {
    BigCount p2 = quotients[i] * p1 + p0;
    BigCount q2 = quotients[i] * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  Ratio r(p1, q1);
  r.canonicalize();
  return r;
}

inline Ratio CFExpansion::value() const { return cf_value(quotients); }

/// S_A(m): sum of all continued-fraction quotients of m/A (normalized first,
/// so both CF representations give the same value).
inline BigCount quotient_sum(const BigCount& m, const BigCount& A) {
  if (m < 1 || m > A) throw precondition_violated("quotient_sum: need 1 <= m <= A");
  return cf_expand(m, A).qsum();
}

/// Exact mean (1/n) * sum_{m in [n]} S_n(m).
inline Ratio yao_knuth_mean(long n) {
  if (n < 2) throw precondition_violated("yao_knuth_mean: need n >= 2");
  BigCount total = 0;
  for (long m = 1; m <= n; ++m) total += quotient_sum(m, n);
  Ratio r(total, BigCount(n));
  r.canonicalize();
  return r;
}

/// Fraction of m in [n] with S_n(m) > 2 (ln n)^2; the Markov-style tail.
inline double quotient_sum_tail_fraction(long n) {
  if (n < 2) throw precondition_violated("tail fraction: need n >= 2");
  const double bound = 2.0 * std::log(static_cast<double>(n)) * std::log(static_cast<double>(n));
  long over = 0;
  for (long m = 1; m <= n; ++m)
    if (quotient_sum(m, n).get_d() > bound) ++over;
  return static_cast<double>(over) / static_cast<double>(n);
}

struct GoodM {
  BigCount m;
  double slack = 1.0;   // 1.0 when the asymptotic bound held as stated
  long samples = 0;     // random draws spent before success or fallback
  bool scanned = false; // whether the ascending scan was needed
};

namespace detail {

inline double ln_big(const BigCount& v) {
  // log of an arbitrary-precision integer via mantissa/exponent split
  signed long exp;
  const double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace detail

/// Finds m in [B] with S_A(m) <= 2 (ln A)^2 and S_B(m) <= 2 (ln B)^2
/// (bounds multiplied by `slack`), by seeded sampling then an ascending scan.
inline GoodM find_good_m(const BigCount& A, const BigCount& B, std::uint64_t seed,
                         double slack = 1.0) {
  if (B < 1 || !(B < A) || !(A < 2 * B))
    throw precondition_violated("find_good_m: need 1 <= B < A < 2B");
  BigCount g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  if (g != 1) throw precondition_violated("find_good_m: A, B must be coprime");
  const double boundA = slack * 2.0 * detail::ln_big(A) * detail::ln_big(A);
  const double boundB = slack * 2.0 * detail::ln_big(B) * detail::ln_big(B);
  auto good = [&](const BigCount& m) {
    return quotient_sum(m, A).get_d() <= boundA && quotient_sum(m, B).get_d() <= boundB;
  };
  GoodM out;
  out.slack = slack;
  if (B.fits_slong_p()) {
    const long b = B.get_si();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, b);
    const long tries = std::min<long>(4 * b, 512);
    for (long t = 0; t < tries; ++t) {
      ++out.samples;
      BigCount m(dist(rng));
      if (good(m)) {
        out.m = m;
        return out;
      }
    }
    out.scanned = true;
    for (long m = 1; m <= b; ++m)
      if (good(BigCount(m))) {
        out.m = m;
        return out;
      }
    throw not_found("find_good_m: no m in [B] meets both bounds at slack " +
                    std::to_string(slack));
  }
  // B beyond machine range: sampling only; the scan is infeasible by design.
  std::mt19937_64 rng(seed);
  gmp_randclass grand(gmp_randinit_default);
  grand.seed(static_cast<unsigned long>(rng()));
  for (long t = 0; t < 4096; ++t) {
    ++out.samples;
    BigCount m = grand.get_z_range(B) + 1;
    if (good(m)) {
      out.m = m;
      return out;
    }
  }
  throw not_found("find_good_m: sampling failed for oversized B at slack " +
                  std::to_string(slack));
}

/// Caller-facing search with the documented slack escalation: tries the exact
/// bound first, then relaxes geometrically (needed only for inputs below the
/// asymptotic regime).  The applied slack is always reported.
inline GoodM find_good_m_with_slack(const BigCount& A, const BigCount& B, std::uint64_t seed,
                                    double max_slack = 1024.0) {
  double slack = 1.0;
  for (;;) {
    try {
      return find_good_m(A, B, seed, slack);
    } catch (const not_found&) {
      if (slack >= max_slack) throw;
      slack = std::min(max_slack, slack * 1.5);
    }
  }
}

}  // namespace linext
