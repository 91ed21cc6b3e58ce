#include "mincode/galois.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace mincode {
namespace {

using Poly = std::uint64_t;

int degree_of(Poly p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

Poly poly_mod(Poly a, Poly m) {
  const int dm = degree_of(m);
  for (int d = degree_of(a); d >= dm; d = degree_of(a)) a ^= m << (d - dm);
  return a;
}

Poly mul_mod(Poly a, Poly b, Poly m) {
  Poly result = 0;
  a = poly_mod(a, m);
  while (b) {
    if (b & 1) result ^= a;
    b >>= 1;
    a = poly_mod(a << 1, m);
  }
  return result;
}

Poly gcd(Poly a, Poly b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// x^(2^k) mod f by repeated squaring.
Poly frobenius(unsigned k, Poly f) {
  Poly x = 2;
  for (unsigned i = 0; i < k; ++i) x = mul_mod(x, x, f);
  return x;
}

// Rabin: f of degree n is irreducible iff x^(2^n) = x mod f and
// gcd(x^(2^(n/p)) - x, f) = 1 for every prime p dividing n.
bool rabin_irreducible(Poly f) {
  const auto n = static_cast<unsigned>(degree_of(f));
  if (frobenius(n, f) != poly_mod(2, f)) return false;
  for (unsigned p = 2; p <= n; ++p) {
    bool prime = true;
    for (unsigned q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
    if (!prime || n % p != 0) continue;
    if (gcd(f, frobenius(n / p, f) ^ poly_mod(2, f)) != 1) return false;
  }
  return true;
}

TEST(Galois, EveryTablePolynomialIsIrreducible) {
  for (unsigned m = 1; m <= 32; ++m) {
    const auto f = irreducible_polynomial(m);
    EXPECT_EQ(degree_of(f), static_cast<int>(m));
    EXPECT_TRUE(rabin_irreducible(f)) << "degree " << m;
  }
  EXPECT_FALSE(rabin_irreducible(0b101));  // x^2 + 1 = (x + 1)^2
  EXPECT_THROW(irreducible_polynomial(0), std::out_of_range);
  EXPECT_THROW(irreducible_polynomial(33), std::out_of_range);
}

TEST(Galois, Gf4MultiplicationTable) {
  const GaloisField f(2);
  // Elements 0, 1, x, x+1 with x^2 = x + 1.
  EXPECT_EQ(f.mul(2, 2), 3u);
  EXPECT_EQ(f.mul(2, 3), 1u);
  EXPECT_EQ(f.mul(3, 3), 2u);
  EXPECT_EQ(f.inv(2), 3u);
}

TEST(Galois, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(3);
  for (unsigned m : {1u, 3u, 8u, 16u, 31u, 32u}) {
    const GaloisField f(m);
    const std::uint64_t mask = f.size() - 1;
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = static_cast<GaloisField::Element>(rng() & mask);
      const auto b = static_cast<GaloisField::Element>(rng() & mask);
      const auto c = static_cast<GaloisField::Element>(rng() & mask);
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
      EXPECT_EQ(f.mul(a, GaloisField::add(b, c)), GaloisField::add(f.mul(a, b), f.mul(a, c)));
      EXPECT_LE(f.mul(a, b), mask);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u) << "m=" << m;
      }
    }
  }
}

TEST(Galois, MultiplicativeGroupOrder) {
  const GaloisField f(8);
  for (GaloisField::Element a = 1; a < 256; ++a) EXPECT_EQ(f.pow(a, 255), 1u);
  EXPECT_THROW(f.inv(0), std::domain_error);
}

TEST(Galois, RankOfSmallMatrices) {
  const GaloisField f(4);
  EXPECT_EQ(rank(f, {}), 0u);
  EXPECT_EQ(rank(f, {{1, 0}, {0, 1}}), 2u);
  EXPECT_EQ(rank(f, {{1, 2}, {2, f.mul(2, 2)}}), 1u);  // second row = 2 * first
  EXPECT_EQ(rank(f, {{0, 0}, {0, 0}}), 0u);
  EXPECT_EQ(rank(f, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 2u);  // char 2: row3 = row1 + row2
  EXPECT_EQ(rank(f, {{3, 7, 1}, {5, 0, 2}, {9, 9, 9}}), 3u);
}

TEST(Galois, RankMatchesBruteForceOverGf2) {
  // Over GF(2), rank r means exactly 2^r distinct row combinations.
  const GaloisField f(1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<GaloisField::Element>> rows(4, std::vector<GaloisField::Element>(5));
    for (auto& row : rows)
      for (auto& v : row) v = rng() & 1;
    std::set<std::vector<GaloisField::Element>> span;
    for (int pick = 0; pick < 16; ++pick) {
      std::vector<GaloisField::Element> sum(5, 0);
      for (int r = 0; r < 4; ++r)
        if ((pick >> r) & 1)
          for (int c = 0; c < 5; ++c) sum[c] ^= rows[r][c];
      span.insert(sum);
    }
    EXPECT_EQ(std::size_t{1} << rank(f, rows), span.size());
  }
}

}  // namespace
}  // namespace mincode
